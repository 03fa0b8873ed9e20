use nalgebra::{Matrix6, Vector6};

use super::point::{LightVector, Point4};
use super::sphere::{minkowski, InversiveSphere};
use crate::error::Result;

/// Gram matrix of the light-cone basis.
fn gram_metric() -> Matrix6<f64> {
    let mut g = Matrix6::identity();
    g[(4, 4)] = 0.0;
    g[(5, 5)] = 0.0;
    g[(4, 5)] = -0.5;
    g[(5, 4)] = -0.5;
    g
}

fn gram_metric_inv() -> Matrix6<f64> {
    let mut g = Matrix6::identity();
    g[(4, 4)] = 0.0;
    g[(5, 5)] = 0.0;
    g[(4, 5)] = -2.0;
    g[(5, 4)] = -2.0;
    g
}

/// A Möbius transformation of `S⁴` as a Lorentz matrix of `R^{5,1}`.
/// `parity` is `+1` for orientation-preserving maps and `-1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub matrix: Matrix6<f64>,
    pub parity: i8,
}

/// Reflection `v ↦ v - 2⟨v, s⟩ s`, the inversion in `s`.
pub fn inversion_in(s: &InversiveSphere) -> MoebiusMap {
    let v = s.vector();
    let gv = Vector6::new(v[0], v[1], v[2], v[3], -0.5 * v[5], -0.5 * v[4]);
    MoebiusMap {
        matrix: Matrix6::identity() - 2.0 * v * gv.transpose(),
        parity: -1,
    }
}

impl MoebiusMap {
    pub fn identity() -> Self {
        MoebiusMap {
            matrix: Matrix6::identity(),
            parity: 1,
        }
    }

    /// Rotation by `theta` in the `(x₃, x₄)` plane.
    pub fn rotation34(theta: f64) -> Self {
        let mut m = Matrix6::identity();
        let (s, c) = theta.sin_cos();
        m[(2, 2)] = c;
        m[(2, 3)] = -s;
        m[(3, 2)] = s;
        m[(3, 3)] = c;
        MoebiusMap {
            matrix: m,
            parity: 1,
        }
    }

    /// Similarity `x ↦ λ (x - c)`, `λ > 0`.
    pub fn similarity(center: [f64; 4], lambda: f64) -> Self {
        let c2: f64 = center.iter().map(|x| x * x).sum();
        let mut t = Matrix6::identity();
        for i in 0..4 {
            t[(i, 4)] = -center[i];
            t[(5, i)] = -2.0 * center[i];
        }
        t[(5, 4)] = c2;
        let d = Matrix6::from_diagonal(&Vector6::new(1.0, 1.0, 1.0, 1.0, 1.0 / lambda, lambda));
        MoebiusMap {
            matrix: d * t,
            parity: 1,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            matrix: self.matrix * other.matrix,
            parity: self.parity * other.parity,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            matrix: gram_metric_inv() * self.matrix.transpose() * gram_metric(),
            parity: self.parity,
        }
    }

    pub fn apply(&self, p: &Point4) -> Point4 {
        LightVector(self.matrix * LightVector::from_point(p).0).to_point()
    }

    pub fn map_sphere(&self, s: &InversiveSphere) -> Result<InversiveSphere> {
        InversiveSphere::from_vector(self.matrix * s.vector())
    }

    /// `max |LᵀGL - G|` relative to `|L|²`, `G` the Gram matrix of the basis.
    pub fn lorentz_defect(&self) -> f64 {
        let j = gram_metric();
        let n = self.matrix.amax().max(1.0);
        (self.matrix.transpose() * j * self.matrix - j).amax() / (n * n)
    }

    /// Largest entry of the matrix, a measure of how far the map is from
    /// an isometry of the unit sphere.
    pub fn scale(&self) -> f64 {
        self.matrix.amax()
    }

    /// Parity recomputed from the determinant.
    pub fn det_sign(&self) -> i8 {
        if self.matrix.determinant() < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn inner_preserved(&self, a: &InversiveSphere, b: &InversiveSphere) -> f64 {
        let ma = self.matrix * a.vector();
        let mb = self.matrix * b.vector();
        (minkowski(&ma, &mb) - minkowski(a.vector(), b.vector())).abs()
    }
}

/// Entrywise distance between the product of `factors` and `target`,
/// relative to the product of the factors' sizes. This is the backward
/// error of the floating-point product and is the meaningful notion of
/// "equal to the identity" for reflections in small far-away spheres,
/// whose matrices have entries many orders of magnitude above one.
pub fn product_residual(factors: &[MoebiusMap], target: &MoebiusMap) -> f64 {
    let mut prod = Matrix6::identity();
    let mut size = 1.0;
    for f in factors {
        prod *= f.matrix;
        size *= f.matrix.amax().max(1.0);
    }
    (prod - target.matrix).amax() / size.max(target.matrix.amax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{chordal_distance, sphere_from_center_radius};

    fn ball(c: [f64; 4], r: f64) -> InversiveSphere {
        sphere_from_center_radius(&Point4::Finite(c), r).unwrap()
    }

    fn close(p: &Point4, q: &Point4, tol: f64) -> bool {
        chordal_distance(p, q) <= tol
    }

    #[test]
    fn unit_inversion_halves() {
        let m = inversion_in(&ball([0.0; 4], 1.0));
        assert!(close(&m.apply(&Point4::new(2.0, 0.0, 0.0, 0.0)), &Point4::new(0.5, 0.0, 0.0, 0.0), 1e-15));
        assert_eq!(m.parity, -1);
        assert_eq!(m.det_sign(), -1);
        assert!(m.lorentz_defect() < 1e-15);
    }

    #[test]
    fn center_and_infinity_swap() {
        let c = [1.0, 2.0, -3.0, 0.5];
        let m = inversion_in(&ball(c, 0.7));
        assert_eq!(m.apply(&Point4::Finite(c)), Point4::Infinity);
        let back = m.apply(&Point4::Infinity).coords().unwrap();
        for i in 0..4 {
            assert!((back[i] - c[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn boundary_points_fixed() {
        let c = [1.0, 2.0, -3.0, 0.5];
        let r = 0.7;
        let m = inversion_in(&ball(c, r));
        for k in 0..20 {
            let t = k as f64 * 0.3;
            let u = [t.cos() * 0.6, t.sin() * 0.6, 0.8 * (2.0 * t).cos(), 0.8 * (2.0 * t).sin()];
            let len = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            let p = Point4::Finite(std::array::from_fn(|i| c[i] + r * u[i] / len));
            assert!(close(&m.apply(&p), &p, 1e-10));
        }
    }

    #[test]
    fn inverse_and_similarity() {
        let s = MoebiusMap::similarity([1.0, -2.0, 0.5, 3.0], 0.25);
        let p = Point4::new(2.0, 2.0, 2.0, 2.0);
        let q = s.apply(&p).coords().unwrap();
        assert!((q[0] - 0.25).abs() < 1e-12 && (q[3] + 0.25).abs() < 1e-12);
        assert!(close(&s.inverse().apply(&s.apply(&p)), &p, 1e-12));
        assert!(s.lorentz_defect() < 1e-14);
    }

    #[test]
    fn rotation_matches_formula() {
        let r = MoebiusMap::rotation34(std::f64::consts::FRAC_PI_2);
        let q = r.apply(&Point4::new(0.0, 0.0, 1.0, 0.0)).coords().unwrap();
        assert!(q[2].abs() < 1e-15 && (q[3] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn map_sphere_fixes_mirror() {
        let s = ball([3.0, 1.0, 0.0, 0.0], 2.0);
        let image = inversion_in(&s).map_sphere(&s).unwrap();
        assert!(image.same_as(&s, 1e-12));
    }

    #[test]
    fn orthogonal_pair_product_is_involution() {
        let a = ball([0.0; 4], 1.0);
        let b = ball([1.0, 1.0, 0.0, 0.0], 1.0);
        let ia = inversion_in(&a);
        let ib = inversion_in(&b);
        let ab = ia.compose(&ib);
        assert!(product_residual(&[ab, ab], &MoebiusMap::identity()) < 1e-12);
        let p = Point4::new(0.3, -0.2, 0.9, 4.0);
        assert!(close(&ab.apply(&ab.apply(&p)), &p, 1e-8));
    }
}

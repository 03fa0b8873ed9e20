use nalgebra::{DMatrix, Vector6};
use serde::{Deserialize, Serialize};

use super::point::{LightVector, Point4};
use crate::error::{Error, Result};

/// Default tolerance on inversive products for structural classification.
pub const DEFAULT_TAU: f64 = 1e-6;

/// Minkowski product in the light-cone basis, `x·y - (u w' + w u')/2`.
pub fn minkowski(a: &Vector6<f64>, b: &Vector6<f64>) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - 0.5 * (a[4] * b[5] + a[5] * b[4])
}

/// An oriented round 3-sphere (or hyperplane) of `S⁴`, stored as a unit
/// spacelike vector. Spheres with a finite center are normalized so that
/// `u = 1/r > 0`, which puts the bounded ball on the positive side.
///
/// Balls also keep their center and radius. Products and inversions of
/// small spheres far from the origin are evaluated from those, since the
/// vector entries grow like `|c|²/r` and lose digits to cancellation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 6]", into = "[f64; 6]")]
pub struct InversiveSphere {
    v: Vector6<f64>,
    ball: Option<([f64; 4], f64)>,
}

impl InversiveSphere {
    /// Normalizes an arbitrary spacelike vector.
    pub fn from_vector(v: Vector6<f64>) -> Result<Self> {
        let n = minkowski(&v, &v);
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotABall);
        }
        let mut v = v / n.sqrt();
        let k = v[4];
        let finite = k.abs() > 1e-14 * v.amax();
        if finite && k < 0.0 {
            v = -v;
        }
        let ball = finite.then(|| {
            let k = v[4];
            ([v[0] / k, v[1] / k, v[2] / k, v[3] / k], 1.0 / k)
        });
        Ok(InversiveSphere { v, ball })
    }

    /// The hyperplane `{x : x·n = δ}`; the positive side is `x·n < δ`.
    pub fn hyperplane(normal: [f64; 4], delta: f64) -> Result<Self> {
        let len = normal.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len == 0.0 || !len.is_finite() {
            return Err(Error::NotABall);
        }
        let n: Vec<f64> = normal.iter().map(|x| x / len).collect();
        let d = delta / len;
        Ok(InversiveSphere {
            v: Vector6::new(-n[0], -n[1], -n[2], -n[3], 0.0, -2.0 * d),
            ball: None,
        })
    }

    pub fn vector(&self) -> &Vector6<f64> {
        &self.v
    }

    pub fn is_hyperplane(&self) -> bool {
        self.ball.is_none()
    }

    /// Image under inversion in `mirror`. For two balls this uses
    /// `c' = C + R²(c - C)/P`, `r' = R² r/|P|` with `P = |c - C|² - r²`.
    pub fn inverted_in(&self, mirror: &InversiveSphere) -> Result<InversiveSphere> {
        if let (Some((c, r)), Some((cm, rm))) = (self.ball, mirror.ball) {
            let d: [f64; 4] = std::array::from_fn(|i| c[i] - cm[i]);
            let d2: f64 = d.iter().map(|x| x * x).sum();
            let p = (d2.sqrt() - r) * (d2.sqrt() + r);
            if p.abs() > 1e-12 * d2.max(r * r) {
                let k = rm * rm / p;
                let center: [f64; 4] = std::array::from_fn(|i| cm[i] + k * d[i]);
                return sphere_from_center_radius(&Point4::Finite(center), (k * r).abs());
            }
        }
        super::moebius::inversion_in(mirror).map_sphere(self)
    }

    pub fn center_radius(&self) -> Result<([f64; 4], f64)> {
        center_radius_of(self)
    }

    pub fn radius(&self) -> Result<f64> {
        Ok(center_radius_of(self)?.1)
    }

    /// Signed power-like value `⟨X, s⟩`; positive inside the ball.
    pub fn side(&self, p: &Point4) -> f64 {
        minkowski(&LightVector::from_point(p).0, &self.v)
    }

    /// Same unoriented sphere, compared with relative tolerance.
    pub fn same_as(&self, other: &InversiveSphere, tol: f64) -> bool {
        let scale = self.v.amax().max(other.v.amax()).max(1.0);
        (self.v - other.v).amax() <= tol * scale || (self.v + other.v).amax() <= tol * scale
    }
}

impl TryFrom<[f64; 6]> for InversiveSphere {
    type Error = Error;
    fn try_from(a: [f64; 6]) -> Result<Self> {
        InversiveSphere::from_vector(Vector6::from_column_slice(&a))
    }
}

impl From<InversiveSphere> for [f64; 6] {
    fn from(s: InversiveSphere) -> Self {
        let mut out = [0.0; 6];
        out.copy_from_slice(s.v.as_slice());
        out
    }
}

pub fn sphere_from_center_radius(c: &Point4, r: f64) -> Result<InversiveSphere> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    let c = c.coords().ok_or(Error::NotABall)?;
    let n2: f64 = c.iter().map(|x| x * x).sum();
    let v = Vector6::new(c[0] / r, c[1] / r, c[2] / r, c[3] / r, 1.0 / r, n2 / r - r);
    Ok(InversiveSphere { v, ball: Some((c, r)) })
}

pub fn center_radius_of(s: &InversiveSphere) -> Result<([f64; 4], f64)> {
    s.ball.ok_or(Error::NotABall)
}

/// Inversive product `⟨s₁, s₂⟩`. For two balls this is
/// `(r₁² + r₂² - d²) / (2 r₁ r₂)`, the cosine of the intersection angle.
pub fn pair_inner(s1: &InversiveSphere, s2: &InversiveSphere) -> f64 {
    match (s1.ball, s2.ball) {
        (Some((c1, r1)), Some((c2, r2))) => {
            let d2 = super::dist2(&c1, &c2);
            ((r1 - r2) * (r1 - r2) - d2) / (2.0 * r1 * r2) + 1.0
        }
        _ => minkowski(&s1.v, &s2.v),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    Orthogonal,
    Tangent,
    Disjoint,
    Overlapping,
    Equal,
}

/// Classifies two oriented balls by their inversive product `p`:
/// `|p| ≤ τ` orthogonal, `||p| - 1| ≤ τ` tangent, `p < -1` disjoint balls,
/// anything else (crossing or nested) overlapping.
pub fn classify_pair(s1: &InversiveSphere, s2: &InversiveSphere, tau: f64) -> PairClass {
    let scale = s1.v.amax().max(s2.v.amax()).max(1.0);
    if (s1.v - s2.v).amax() <= 1e-12 * scale {
        return PairClass::Equal;
    }
    let p = pair_inner(s1, s2);
    if p.abs() <= tau {
        PairClass::Orthogonal
    } else if (p.abs() - 1.0).abs() <= tau {
        PairClass::Tangent
    } else if p < -1.0 {
        PairClass::Disjoint
    } else {
        PairClass::Overlapping
    }
}

/// Gram matrix of inversive products.
pub fn gram(spheres: &[InversiveSphere]) -> DMatrix<f64> {
    let n = spheres.len();
    DMatrix::from_fn(n, n, |i, j| pair_inner(&spheres[i], &spheres[j]))
}

/// True when at most four spheres share a point of `S⁴`. Their span has a
/// null orthogonal complement exactly when the Gram matrix is positive
/// semidefinite.
pub fn common_point_exists(spheres: &[InversiveSphere], tol: f64) -> bool {
    gram(spheres).symmetric_eigenvalues().min() >= -tol
}

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::quaternion::Quaternion;
use crate::geometry::{InversiveSphere, Point4};
use crate::orbit::Word;
use crate::{Error, Result};

/// `q ↦ (aq + b)(cq + d)⁻¹`, with `q̄` in place of `q` when `conj` is set.
/// Entries are defined up to a common real factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMoebius {
    pub m: [[Quaternion; 2]; 2],
    pub conj: bool,
}

impl QMoebius {
    pub fn identity() -> Self {
        QMoebius {
            m: [[Quaternion::ONE, Quaternion::ZERO], [Quaternion::ZERO, Quaternion::ONE]],
            conj: false,
        }
    }

    pub fn apply(&self, p: &Point4) -> Point4 {
        let [[a, b], [c, d]] = self.m;
        let Some(x) = p.coords() else {
            if c.norm() <= 1e-14 * a.norm() {
                return Point4::Infinity;
            }
            return Point4::Finite((a * c.inv()).0);
        };
        let x = if self.conj { Quaternion(x).conj() } else { Quaternion(x) };
        let num = a * x + b;
        let den = c * x + d;
        if den.norm() <= 1e-14 * (c.norm() * x.norm() + d.norm()) {
            return Point4::Infinity;
        }
        Point4::Finite((num * den.inv()).0)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &QMoebius) -> QMoebius {
        let inner = if self.conj { other.bar() } else { *other };
        let mut out = QMoebius {
            m: mul2(&self.m, &inner.m),
            conj: self.conj != other.conj,
        };
        out.normalize();
        out
    }

    /// The map `N` with `N(q̄) = conj(self(q))`, ignoring `self.conj`.
    fn bar(&self) -> QMoebius {
        // conj((aq + b)(cq + d)⁻¹) = (q̄c̄ + d̄)⁻¹(q̄ā + b̄); moving to left
        // fractions gives Q (M*)⁻¹ Q⁻¹ with Q = [[0, 1], [-1, 0]].
        let star = [[self.m[0][0].conj(), self.m[1][0].conj()], [self.m[0][1].conj(), self.m[1][1].conj()]];
        let inv = inverse2(&star);
        let [[p, q], [r, s]] = inv;
        QMoebius {
            m: [[s, -r], [-q, p]],
            conj: self.conj,
        }
    }

    /// Divide by the largest entry norm.
    pub fn normalize(&mut self) {
        let big = self.m.iter().flatten().map(|q| q.norm()).fold(0.0, f64::max);
        if big > 0.0 {
            for q in self.m.iter_mut().flatten() {
                *q = q.scale(1.0 / big);
            }
        }
    }
}

fn mul2(a: &[[Quaternion; 2]; 2], b: &[[Quaternion; 2]; 2]) -> [[Quaternion; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

fn embed(m: &[[Quaternion; 2]; 2]) -> Matrix4<Complex64> {
    let mut out = Matrix4::zeros();
    for (bi, row) in m.iter().enumerate() {
        for (bj, q) in row.iter().enumerate() {
            let (z, w) = q.to_complex_pair();
            out[(2 * bi, 2 * bj)] = z;
            out[(2 * bi, 2 * bj + 1)] = w;
            out[(2 * bi + 1, 2 * bj)] = -w.conj();
            out[(2 * bi + 1, 2 * bj + 1)] = z.conj();
        }
    }
    out
}

fn unembed(c: &Matrix4<Complex64>) -> [[Quaternion; 2]; 2] {
    std::array::from_fn(|bi| {
        std::array::from_fn(|bj| Quaternion::from_complex_pair(c[(2 * bi, 2 * bj)], c[(2 * bi, 2 * bj + 1)]))
    })
}

fn inverse2(m: &[[Quaternion; 2]; 2]) -> [[Quaternion; 2]; 2] {
    let big = m.iter().flatten().map(|q| q.norm()).fold(0.0, f64::max);
    let scaled = embed(m).map(|z| z / big);
    let inv = scaled.try_inverse().unwrap_or_else(Matrix4::zeros);
    unembed(&inv)
}

/// Inversion in `s` as an anti-holomorphic quaternionic Möbius map.
pub fn inversion_as_qmoebius(s: &InversiveSphere) -> QMoebius {
    let mut q = match s.center_radius() {
        // c + r²(q̄ - c̄)⁻¹ = (cq̄ + r² - |c|²)(q̄ - c̄)⁻¹
        Ok((c, r)) => {
            let c = Quaternion(c);
            QMoebius {
                m: [[c, Quaternion::real(r * r - c.norm2())], [Quaternion::ONE, -c.conj()]],
                conj: true,
            }
        }
        // reflection in x·n = δ: -n q̄ n + 2δn = (-n q̄ + 2δ)(n̄)⁻¹
        Err(_) => {
            let v = s.vector();
            let raw = Quaternion([-v[0], -v[1], -v[2], -v[3]]);
            let len = raw.norm();
            let n = raw.scale(1.0 / len);
            let delta = -v[5] / (2.0 * len);
            QMoebius {
                m: [[-n, Quaternion::real(2.0 * delta)], [Quaternion::ZERO, n.conj()]],
                conj: true,
            }
        }
    };
    q.normalize();
    q
}

/// The product `I_{w₁} ∘ … ∘ I_{wₖ}` for a word of even length.
pub fn even_word_to_qmoebius(w: &Word, spheres: &[InversiveSphere]) -> Result<QMoebius> {
    if w.len() % 2 == 1 {
        return Err(Error::OddWord(w.len()));
    }
    Ok(w.0.iter().fold(QMoebius::identity(), |acc, &j| acc.compose(&inversion_as_qmoebius(&spheres[j]))))
}

/// The `4×4` complex matrix acting on `C⁴ = H²`, scaled to unit determinant.
pub fn qmoebius_to_complex4(q: &QMoebius) -> Result<Matrix4<Complex64>> {
    if q.conj {
        return Err(Error::NotLiftable);
    }
    let m = embed(&q.m);
    let det = m.determinant();
    // the determinant of a block quaternionic matrix is real and positive
    let scale = det.norm().powf(0.25);
    if !(scale > 0.0) {
        return Err(Error::NotLiftable);
    }
    Ok(m.map(|z| z / scale))
}

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// `x₁ + x₂i + x₃j + x₄k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion([0.0; 4]);
    pub const ONE: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);
    pub const I: Quaternion = Quaternion([0.0, 1.0, 0.0, 0.0]);
    pub const J: Quaternion = Quaternion([0.0, 0.0, 1.0, 0.0]);
    pub const K: Quaternion = Quaternion([0.0, 0.0, 0.0, 1.0]);

    pub fn real(x: f64) -> Self {
        Quaternion([x, 0.0, 0.0, 0.0])
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quaternion([a, -b, -c, -d])
    }

    pub fn norm2(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion(self.0.map(|x| x * s))
    }

    pub fn inv(&self) -> Self {
        self.conj().scale(1.0 / self.norm2())
    }

    /// `(z, w)` with `q = z + wj`.
    pub fn to_complex_pair(&self) -> (Complex64, Complex64) {
        let [a, b, c, d] = self.0;
        (Complex64::new(a, b), Complex64::new(c, d))
    }

    pub fn from_complex_pair(z: Complex64, w: Complex64) -> Self {
        Quaternion([z.re, z.im, w.re, w.im])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion(self.0.map(|x| -x))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn units() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Quaternion::ONE);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn complex_pair_convention() {
        // x₃j + x₄k = (x₃ + x₄i) j
        let q = Quaternion([1.0, 2.0, 3.0, 4.0]);
        let (z, w) = q.to_complex_pair();
        let back = Quaternion::from_complex_pair(z, Complex64::new(0.0, 0.0))
            + Quaternion::from_complex_pair(w, Complex64::new(0.0, 0.0)) * Quaternion::J;
        assert_eq!(back, q);
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-10.0f64..10.0).prop_map(Quaternion)
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(p in quat(), q in quat()) {
            let lhs = (p * q).norm();
            let rhs = p.norm() * q.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn associative(p in quat(), q in quat(), r in quat()) {
            let a = (p * q) * r;
            let b = p * (q * r);
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + p.norm() * q.norm() * r.norm()));
        }
    }
}

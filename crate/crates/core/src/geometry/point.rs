use nalgebra::Vector6;
use serde::{Deserialize, Serialize};

/// A point of `S⁴`: either four finite coordinates or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Point4 {
    Finite([f64; 4]),
    Infinity,
}

impl Point4 {
    pub const ORIGIN: Point4 = Point4::Finite([0.0; 4]);

    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Point4::Finite([x1, x2, x3, x4])
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Point4::Infinity)
    }

    pub fn coords(&self) -> Option<[f64; 4]> {
        match *self {
            Point4::Finite(c) => Some(c),
            Point4::Infinity => None,
        }
    }

    pub fn lift(&self) -> LightVector {
        LightVector::from_point(self)
    }
}

impl From<[f64; 4]> for Point4 {
    fn from(c: [f64; 4]) -> Self {
        Point4::Finite(c)
    }
}

/// A null vector of `R^{5,1}` representing a point of `S⁴`: a finite point
/// `x` lifts to `(x, 1, |x|²)` and `∞` to `(0, 0, 0, 0, 0, 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightVector(pub Vector6<f64>);

impl LightVector {
    pub fn from_point(p: &Point4) -> Self {
        match p {
            Point4::Finite(x) => {
                let n2: f64 = x.iter().map(|v| v * v).sum();
                LightVector(Vector6::new(x[0], x[1], x[2], x[3], 1.0, n2))
            }
            Point4::Infinity => LightVector(Vector6::new(0.0, 0.0, 0.0, 0.0, 0.0, 2.0)),
        }
    }

    /// Projects back to `S⁴`. The normalizing coordinate `u` degenerates at
    /// infinity; below `1e-14` of the vector's size the result is
    /// [`Point4::Infinity`].
    pub fn to_point(&self) -> Point4 {
        let v = &self.0;
        let k = v[4];
        let scale = v.amax();
        if scale == 0.0 || k.abs() <= 1e-14 * scale {
            return Point4::Infinity;
        }
        Point4::Finite([v[0] / k, v[1] / k, v[2] / k, v[3] / k])
    }
}

/// Chordal distance on the unit 4-sphere after inverse stereographic
/// projection; bounded by 2 and well defined at infinity.
pub fn chordal_distance(p: &Point4, q: &Point4) -> f64 {
    match (p, q) {
        (Point4::Infinity, Point4::Infinity) => 0.0,
        (Point4::Finite(x), Point4::Infinity) | (Point4::Infinity, Point4::Finite(x)) => {
            let n2: f64 = x.iter().map(|v| v * v).sum();
            2.0 / (1.0 + n2).sqrt()
        }
        (Point4::Finite(x), Point4::Finite(y)) => {
            let nx: f64 = x.iter().map(|v| v * v).sum();
            let ny: f64 = y.iter().map(|v| v * v).sum();
            let d = super::dist(x, y);
            2.0 * d / ((1.0 + nx) * (1.0 + ny)).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::minkowski;

    #[test]
    fn lift_is_null_and_round_trips() {
        for p in [
            Point4::ORIGIN,
            Point4::new(1.0, -2.0, 3.5, 0.25),
            Point4::new(2426.06421, 2296.89168, 550.0, 0.0),
        ] {
            let v = p.lift();
            let scale = v.0.amax().max(1.0);
            assert!(minkowski(&v.0, &v.0).abs() <= 1e-12 * scale * scale);
            let back = v.to_point().coords().unwrap();
            let orig = p.coords().unwrap();
            for i in 0..4 {
                assert!((back[i] - orig[i]).abs() < 1e-12 * (1.0 + orig[i].abs()));
            }
        }
    }

    #[test]
    fn infinity_round_trips() {
        assert_eq!(Point4::Infinity.lift().to_point(), Point4::Infinity);
    }

    #[test]
    fn chordal_distance_is_symmetric_and_bounded() {
        let a = Point4::new(1.0, 0.0, 0.0, 0.0);
        let b = Point4::new(-1.0, 0.0, 0.0, 0.0);
        assert!((chordal_distance(&a, &b) - 2.0).abs() < 1e-15);
        assert!((chordal_distance(&Point4::ORIGIN, &Point4::Infinity) - 2.0).abs() < 1e-15);
        assert_eq!(chordal_distance(&a, &b), chordal_distance(&b, &a));
    }
}

use std::f64::consts::PI;

use super::moebius::MoebiusMap;
use super::point::Point4;
use super::sphere::{center_radius_of, sphere_from_center_radius, InversiveSphere};
use crate::error::{Error, Result};

/// Angle between consecutive meridian pages of a necklace.
pub const HEXAGON_ANGLE: f64 = PI / 3.0;

/// `R_θ(x) = (x₁, x₂, x₃ cos θ, x₃ sin θ)` for `x` in the half-space `x₃ ≥ 0`.
pub fn spin_point(x: [f64; 3], theta: f64) -> Result<Point4> {
    if !(x[2] >= 0.0) {
        return Err(Error::InvalidHalfSpace(x[2]));
    }
    let (s, c) = theta.sin_cos();
    Ok(Point4::new(x[0], x[1], x[2] * c, x[2] * s))
}

/// Rotates a sphere whose center lies in the page `x₄ = 0`.
pub fn spin_sphere(s: &InversiveSphere, theta: f64) -> Result<InversiveSphere> {
    let (c, r) = center_radius_of(s)?;
    if c[3].abs() > 1e-12 * (1.0 + c[2].abs()) {
        return Err(Error::NotInPage(c[3]));
    }
    if c[2] < 0.0 {
        return Err(Error::InvalidHalfSpace(c[2]));
    }
    let p = spin_point([c[0], c[1], c[2]], theta)?;
    sphere_from_center_radius(&p, r)
}

/// The rotation `R_θ` as a Möbius map of `S⁴`.
pub fn rotate_pages(theta: f64) -> MoebiusMap {
    MoebiusMap::rotation34(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{classify_pair, dist, PairClass, DEFAULT_TAU};

    #[test]
    fn quarter_turn() {
        let p = spin_point([0.0, 0.0, 1.0], PI / 2.0).unwrap();
        let c = p.coords().unwrap();
        assert!(c[2].abs() < 1e-16 && (c[3] - 1.0).abs() < 1e-16);
        assert_eq!(spin_point([1.0, 2.0, 3.0], 0.0).unwrap(), Point4::new(1.0, 2.0, 3.0, 0.0));
        assert_eq!(spin_point([1.0, 2.0, 0.0], 1.3).unwrap().coords().unwrap()[..2], [1.0, 2.0]);
        assert!(matches!(spin_point([0.0, 0.0, -1.0], 0.0), Err(Error::InvalidHalfSpace(_))));
    }

    #[test]
    fn spin_row_six() {
        let s = sphere_from_center_radius(&Point4::new(2426.06421, 2296.89168, 550.0, 0.0), 388.9087297).unwrap();
        let t = spin_sphere(&s, HEXAGON_ANGLE).unwrap();
        let (c, r) = center_radius_of(&t).unwrap();
        assert!((r - 388.9087297).abs() < 1e-6);
        assert!((c[2] - 275.0).abs() < 1e-6);
        assert!((c[3] - 550.0 * (PI / 3.0).sin()).abs() < 1e-6);
        assert!(matches!(spin_sphere(&t, 0.1), Err(Error::NotInPage(_))));
    }

    #[test]
    fn hexagon_copies_orthogonal() {
        let z: f64 = 3.7;
        let s = sphere_from_center_radius(&Point4::new(1.0, -2.0, z, 0.0), z / 2f64.sqrt()).unwrap();
        let a = spin_sphere(&s, 2.0 * HEXAGON_ANGLE).unwrap();
        let b = spin_sphere(&s, 3.0 * HEXAGON_ANGLE).unwrap();
        assert_eq!(classify_pair(&a, &b, DEFAULT_TAU), PairClass::Orthogonal);
        let ca = center_radius_of(&a).unwrap().0;
        let cb = center_radius_of(&b).unwrap().0;
        assert!((dist(&ca, &cb) - z).abs() < 1e-12);
    }
}

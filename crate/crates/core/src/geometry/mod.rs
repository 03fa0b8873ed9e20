//! Conformal geometry of `S⁴ = R⁴ ∪ {∞}` in inversive coordinates.
//!
//! Vectors of Minkowski space `R^{5,1}` are written in the light-cone basis
//! `(x₁, x₂, x₃, x₄, u, w)` with quadratic form `|x|² - u w`. A finite point
//! `x` lifts to the null vector `(x, 1, |x|²)` and `∞` to `(0, 0, 0, 0, 0, 2)`.
//! A round sphere with center `c` and radius `r` is the unit spacelike vector
//! `(c, 1, |c|² - r²) / r`, and its ball is the side where `⟨X, s⟩ > 0`.
//! Möbius maps of `S⁴` act as Lorentz matrices, an inversion being the
//! reflection `v ↦ v - 2⟨v, s⟩ s`.
//!
//! The light-cone basis keeps `⟨s, s⟩ = 1` accurate to a few ulps even for
//! small spheres far from the origin, where the orthonormal basis loses
//! digits to cancellation.

mod moebius;
mod point;
mod sphere;
mod spin;

pub use moebius::{inversion_in, product_residual, MoebiusMap};
pub use point::{chordal_distance, LightVector, Point4};
pub use sphere::{
    center_radius_of, classify_pair, common_point_exists, gram, minkowski, pair_inner,
    sphere_from_center_radius, InversiveSphere, PairClass, DEFAULT_TAU,
};
pub use spin::{rotate_pages, spin_point, spin_sphere, HEXAGON_ANGLE};

pub(crate) fn dist2(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn dist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    dist2(a, b).sqrt()
}

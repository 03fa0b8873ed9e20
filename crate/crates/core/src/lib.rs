//! Pearl necklaces of round 3-spheres around spun knots in the 4-sphere.
//!
//! A spun knot `Spin(A)` is covered by a finite family of round balls
//! ("pearls") whose boundaries meet at right angles where they touch. The
//! group generated by inversions in those spheres is a Kleinian reflection
//! group; its limit set is a wildly embedded 2-sphere. This crate builds the
//! necklaces, the group, approximations of the limit set, the symbolic
//! presentation and monodromy, and the lift of the even subgroup to twistor
//! space `P³(C)`.
//!
//! Module map:
//!
//! * [`geometry`]: points of `S⁴ = R⁴ ∪ {∞}`, spheres as unit vectors of
//!   `R^{5,1}`, Möbius maps as Lorentz matrices, and the spinning rotation.
//! * [`necklace`]: semi-necklaces in a page, the spun necklace with pole and
//!   junction pearls, and their validation.
//! * [`orbit`]: reduced words, orbit expansion of ball images, limit-set
//!   clouds, combinatorial counts and the polyhedron check.
//! * [`topology`]: group presentation and free-group automorphisms.
//! * [`twistor`]: quaternions, quaternionic Möbius maps and the twistor
//!   projection.
//! * [`io`]: configuration documents, cloud export, checkpoints and run
//!   manifests.

// `!(x > y)` is used on purpose so NaN takes the failing branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod necklace;
pub mod orbit;
pub mod topology;
pub mod twistor;

pub use error::{Error, Result};
pub use geometry::{
    center_radius_of, classify_pair, inversion_in, pair_inner, sphere_from_center_radius,
    spin_point, spin_sphere, InversiveSphere, LightVector, MoebiusMap, PairClass, Point4,
};

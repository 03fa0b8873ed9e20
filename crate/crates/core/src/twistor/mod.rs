//! The even subgroup acting on twistor space `P³(C)`.
//!
//! `R⁴` is identified with the quaternions by
//! `x ↦ x₁ + x₂i + x₃j + x₄k = z₁ + z₂j` (`z₁ = x₁ + x₂i`, `z₂ = x₃ + x₄i`).
//! `H²` is a complex vector space under right multiplication by `i`; in the
//! coordinates `q = z₁ + z₂j ↦ (z₁, -z̄₂)` left multiplication by
//! `q = z + wj` is the complex matrix `[[z, w], [-w̄, z̄]]`. A point of
//! `P³(C)` is a complex line in `H² = C⁴`; it lies in exactly one right
//! quaternionic line `[q₁ : q₂]`, and the twistor projection sends it to
//! `q₁q₂⁻¹ ∈ H ∪ {∞} = S⁴`.
//!
//! Orientation-preserving Möbius maps are `q ↦ (aq + b)(cq + d)⁻¹` and lift
//! to `PGL(4, C)`. Inversions need `q̄` in place of `q` and do not lift, so
//! only words of even length are lifted.

mod projective;
mod qmoebius;
mod quaternion;

pub use projective::{
    equivariance_check, fiber_check, fubini_study, random_c4, right_j, right_line_defect, twistor_project,
    unit_frame, ProjectivePoint,
};
pub use qmoebius::{even_word_to_qmoebius, inversion_as_qmoebius, qmoebius_to_complex4, QMoebius};
pub use quaternion::Quaternion;

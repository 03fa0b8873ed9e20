//! Semi-necklaces in a page and the spun necklaces built from them.
//!
//! A semi-necklace is a chain of balls in the half-space `x₃ ≥ 0` of the
//! page `x₄ = 0`: consecutive balls meet orthogonally and all other pairs
//! are disjoint. Spinning it through six pages gives the meridian pearls
//! `Σᵏᵢ`; two pole pearls close the chain at its ends on the axis plane and
//! one junction pearl plugs the gap at each point where four meridian
//! pearls touch.

mod report;
mod semi;
mod solve;
mod spun;

pub use report::{validate_spun, Clause, Expectation, NecklaceReport, PairRecord};
pub use semi::{load_trefoil_table, toy_ring, validate_semi, Pearl, SemiNecklace, TREFOIL_SHA256};
pub use solve::{solve_junction_pearl, solve_pole_pearl};
pub use spun::{planar_ring, spin_necklace, EdgeLabel, PearlKind, SpunNecklace, PAGES};

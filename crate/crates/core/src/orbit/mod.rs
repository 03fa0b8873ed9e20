//! The reflection group of a necklace and its orbit of balls.
//!
//! Balls of the orbit tree are images `I_w(B_j)`; each generation sits
//! inside the previous one, and the intersection of the generations is the
//! limit set. Clouds sample it with one limit point per ball of radius
//! below `ε`.

mod checkpoint;
mod counts;
mod frontier;
mod group;
mod poincare;
mod word;

pub use checkpoint::{Checkpoint, CheckpointEntry, CHECKPOINT_FORMAT, CHECKPOINT_VERSION};
pub use counts::{count_report, formula_counts, CountReport, FormulaCounts};
pub use frontier::{cloud_of, expand_frontier, limit_set_points, shell, Expander, LeafBall, OrbitFrontier};
pub use group::{generators_from_necklace, Generators};
pub use poincare::{poincare_check, AngleRecord, PoincareReport};
pub use word::{reduce, Word};

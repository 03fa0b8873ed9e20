//! Group presentations and free-group automorphisms.

mod free;
mod presentation;

pub use free::{free_reduce, homology_matrix, power_is_inner, trefoil_monodromy, Automorphism, FreeWord};
pub use presentation::{presentation_of, Presentation};

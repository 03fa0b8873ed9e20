use std::fmt;

use crate::necklace::{EdgeLabel, SpunNecklace};

pub const PRESENTATION_VERSION: u32 = 1;

/// Coxeter presentation `⟨I₁ … Iₙ | Iⱼ², (IᵢIⱼ)² for n_ij = 2⟩`. Relators are
/// generator index sequences (zero-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<usize>>,
}

pub fn presentation_of(sn: &SpunNecklace) -> Presentation {
    let n = sn.len();
    let generators = (1..=n).map(|j| format!("I{j}")).collect();
    let mut relators: Vec<Vec<usize>> = (0..n).map(|j| vec![j, j]).collect();
    for (i, j, label) in sn.edges() {
        if label == EdgeLabel::Orthogonal {
            relators.push(vec![i, j, i, j]);
        }
    }
    Presentation { generators, relators }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# wildknot presentation v{PRESENTATION_VERSION}")?;
        writeln!(f, "generators {}", self.generators.len())?;
        writeln!(f, "{}", self.generators.join(" "))?;
        writeln!(f, "relators {}", self.relators.len())?;
        for r in &self.relators {
            let names: Vec<&str> = r.iter().map(|&j| self.generators[j].as_str()).collect();
            writeln!(f, "{}", names.join("*"))?;
        }
        Ok(())
    }
}

use rayon::prelude::*;
use serde::Serialize;

use super::spun::{EdgeLabel, PearlKind, SpunNecklace};
use crate::geometry::{classify_pair, dist, pair_inner, PairClass};

/// What a pair of pearls is required to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Orthogonal,
    Tangent,
    Disjoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub class: PairClass,
    pub expected: Expectation,
    pub residual: f64,
    pub passed: bool,
}

/// One checked condition with its worst residual and failure messages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub name: String,
    pub checked: usize,
    pub worst_residual: f64,
    pub failures: Vec<String>,
}

impl Clause {
    pub fn new(name: &str) -> Self {
        Clause {
            name: name.to_string(),
            checked: 0,
            worst_residual: 0.0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, residual: f64, passed: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if residual.is_nan() {
            self.worst_residual = f64::NAN;
        } else {
            self.worst_residual = self.worst_residual.max(residual);
        }
        if !passed {
            self.failures.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct NecklaceReport {
    /// Every unordered pair, sorted by `(i, j)`.
    pub pairs: Vec<PairRecord>,
    pub clauses: Vec<Clause>,
    /// Per-pearl `|r - x₃/√2| / r` (semi-necklaces only).
    pub hexagon: Vec<f64>,
}

impl NecklaceReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(Clause::passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.clauses
            .iter()
            .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
            .collect()
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn count(&self, expected: Expectation) -> (usize, usize) {
        let all = self.pairs.iter().filter(|p| p.expected == expected);
        let total = all.clone().count();
        (all.filter(|p| p.passed).count(), total)
    }
}

/// Exhaustive pairwise check of a spun necklace against its declared edges:
/// orthogonal edges need `|⟨sᵢ, sⱼ⟩| ≤ τ`, tangent edges `||⟨sᵢ, sⱼ⟩| - 1| ≤ τ`,
/// and every undeclared pair must be disjoint. Meridian quads are also checked
/// against the diagonal law `d = r + R` and for a common point.
pub fn validate_spun(sn: &SpunNecklace, tau: f64) -> NecklaceReport {
    let spheres = sn.spheres();
    let n = spheres.len();
    let rows: Vec<Vec<PairRecord>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| {
                    let p = pair_inner(&spheres[i], &spheres[j]);
                    let class = classify_pair(&spheres[i], &spheres[j], tau);
                    let (expected, residual, passed) = match sn.label(i, j) {
                        Some(EdgeLabel::Orthogonal) => (Expectation::Orthogonal, p.abs(), p.abs() <= tau),
                        Some(EdgeLabel::Tangent) => {
                            let r = (p.abs() - 1.0).abs();
                            (Expectation::Tangent, r, r <= tau)
                        }
                        None => (Expectation::Disjoint, p + 1.0, class == PairClass::Disjoint),
                    };
                    PairRecord { i, j, class, expected, residual, passed }
                })
                .collect()
        })
        .collect();
    let pairs: Vec<PairRecord> = rows.into_iter().flatten().collect();

    let mut orth = Clause::new("declared orthogonal pairs");
    let mut tang = Clause::new("declared tangent pairs");
    let mut disj = Clause::new("undeclared pairs disjoint");
    for p in &pairs {
        let msg = || format!("{} / {}: {:?} ({:.3e})", sn.name_of(p.i), sn.name_of(p.j), p.class, p.residual);
        match p.expected {
            Expectation::Orthogonal => orth.record(p.residual, p.passed, msg),
            Expectation::Tangent => tang.record(p.residual, p.passed, msg),
            Expectation::Disjoint => disj.record(0.0, p.passed, msg),
        }
    }

    let mut quads = Clause::new("quad diagonals equal r + R");
    let mut common = Clause::new("quad spheres share a point");
    for (a, b, c, d) in sn.quads() {
        let (ca, ra) = sn.center_radius(a);
        let (cb, rb) = sn.center_radius(b);
        let (cc, rc) = sn.center_radius(c);
        let (cd, rd) = sn.center_radius(d);
        for (x, y, cx, cy, s) in [(a, d, ca, cd, ra + rd), (b, c, cb, cc, rb + rc)] {
            let r = (dist(&cx, &cy) - s).abs() / s;
            quads.record(r, r <= tau, || format!("{} / {} residual {r:.3e}", sn.name_of(x), sn.name_of(y)));
        }
        let p: [f64; 4] = std::array::from_fn(|k| ca[k] + ra * (cd[k] - ca[k]) / dist(&ca, &cd));
        let r = [(ca, ra), (cb, rb), (cc, rc), (cd, rd)]
            .iter()
            .map(|(c, r)| (dist(&p, c) - r).abs() / r)
            .fold(0.0, f64::max);
        common.record(r, r <= tau, || format!("quad at {} residual {r:.3e}", sn.name_of(a)));
    }

    let mut junctions = Clause::new("junction pearls");
    for idx in 0..n {
        if let PearlKind::Junction { .. } = sn.kind(idx) {
            let ok = (0..n).filter(|&j| sn.label(idx, j) == Some(EdgeLabel::Orthogonal)).count() == 4;
            junctions.record(0.0, ok, || format!("{} lacks four orthogonal neighbours", sn.name_of(idx)));
        }
    }
    NecklaceReport {
        pairs,
        clauses: vec![orth, tang, disj, quads, common, junctions],
        hexagon: Vec::new(),
    }
}

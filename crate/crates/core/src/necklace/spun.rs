use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::report::{validate_spun, NecklaceReport};
use super::semi::{validate_semi, SemiNecklace};
use super::solve::{junction_parts, junction_sphere, solve_pole_pearl};
use crate::error::{Error, Result};
use crate::geometry::{
    center_radius_of, classify_pair, rotate_pages, sphere_from_center_radius, spin_sphere, InversiveSphere, PairClass, Point4, DEFAULT_TAU,
    HEXAGON_ANGLE,
};

/// Number of meridian pages.
pub const PAGES: usize = 6;

/// Tolerance on the printed table used before spinning.
const TABLE_TAU: f64 = 1e-3;

/// Role of a pearl in a necklace. Levels and pages count from zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PearlKind {
    Meridian { level: usize, page: usize },
    Pole(usize),
    Junction { level: usize, page: usize },
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Orthogonal,
    Tangent,
}

/// A finite family of pearls with its declared contact graph. Only a
/// necklace that passed [`SpunNecklace::certify`] generates a group.
#[derive(Debug, Clone)]
pub struct SpunNecklace {
    spheres: Vec<InversiveSphere>,
    kinds: Vec<PearlKind>,
    edges: HashMap<(usize, usize), EdgeLabel>,
    levels: usize,
    certified: bool,
    /// Largest center shift made while snapping the table to exact
    /// constraints, relative to the pearl radius.
    pub conditioning_shift: f64,
    /// Distance from each junction pearl's center to the quad's touching
    /// point, relative to the smallest radius of the quad.
    pub junction_offsets: Vec<f64>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl SpunNecklace {
    /// A necklace from explicit spheres and contact edges.
    pub fn from_parts(spheres: Vec<InversiveSphere>, edges: &[(usize, usize, EdgeLabel)]) -> Result<Self> {
        if spheres.is_empty() {
            return Err(Error::EmptyNecklace);
        }
        for s in &spheres {
            center_radius_of(s)?;
        }
        let mut map = HashMap::new();
        for &(i, j, l) in edges {
            if i == j || i >= spheres.len() || j >= spheres.len() {
                return Err(Error::parse("edges", format!("invalid edge ({i}, {j})")));
            }
            map.insert(key(i, j), l);
        }
        let n = spheres.len();
        Ok(SpunNecklace {
            spheres,
            kinds: vec![PearlKind::Free; n],
            edges: map,
            levels: 0,
            certified: false,
            conditioning_shift: 0.0,
            junction_offsets: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn spheres(&self) -> &[InversiveSphere] {
        &self.spheres
    }

    pub fn kind(&self, i: usize) -> PearlKind {
        self.kinds[i]
    }

    /// Number of meridian levels (zero for hand-built necklaces).
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn label(&self, i: usize, j: usize) -> Option<EdgeLabel> {
        self.edges.get(&key(i, j)).copied()
    }

    /// Declared edges sorted by index pair.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeLabel)> {
        let mut e: Vec<_> = self.edges.iter().map(|(&(i, j), &l)| (i, j, l)).collect();
        e.sort_by_key(|&(i, j, _)| (i, j));
        e
    }

    /// `n_ij = 2` for orthogonal pairs, `0` otherwise.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut m = vec![vec![0u8; n]; n];
        for (&(i, j), &l) in &self.edges {
            if l == EdgeLabel::Orthogonal {
                m[i][j] = 2;
                m[j][i] = 2;
            }
        }
        m
    }

    pub fn center_radius(&self, i: usize) -> ([f64; 4], f64) {
        center_radius_of(&self.spheres[i]).expect("necklace pearls are balls")
    }

    pub fn meridian_index(&self, level: usize, page: usize) -> usize {
        level * PAGES + page % PAGES
    }

    pub fn pole_index(&self, m: usize) -> usize {
        self.levels * PAGES + m
    }

    pub fn junction_index(&self, level: usize, page: usize) -> usize {
        self.levels * PAGES + 2 + level * PAGES + page % PAGES
    }

    /// Meridian quads `(Σᵏᵢ, Σᵏᵢ₊₁, Σᵏ⁺¹ᵢ, Σᵏ⁺¹ᵢ₊₁)`.
    pub fn quads(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.levels.saturating_sub(1) {
            for i in 0..PAGES {
                out.push((
                    self.meridian_index(k, i),
                    self.meridian_index(k, i + 1),
                    self.meridian_index(k + 1, i),
                    self.meridian_index(k + 1, i + 1),
                ));
            }
        }
        out
    }

    pub fn name_of(&self, i: usize) -> String {
        describe(self.kinds[i], i)
    }

    /// Runs [`validate_spun`] and marks the necklace usable on success.
    pub fn certify(&mut self, tau: f64) -> NecklaceReport {
        let report = validate_spun(self, tau);
        self.certified = report.passed();
        report
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

/// Spins a semi-necklace through six pages and adds pole and junction
/// pearls. The table is first snapped to exact constraints (see
/// [`SemiNecklace::conditioned`]).
/// `n` equal pearls centered on the unit circle of the `x₁x₂`-plane,
/// consecutive ones orthogonal.
pub fn planar_ring(n: usize) -> Result<SpunNecklace> {
    if n < 4 {
        return Err(Error::ConstructionInfeasible(format!("a ring needs at least 4 pearls, got {n}")));
    }
    let step = std::f64::consts::TAU / n as f64;
    let r = 2f64.sqrt() * (step / 2.0).sin();
    let spheres = (0..n)
        .map(|k| {
            let t = step * k as f64;
            sphere_from_center_radius(&Point4::new(t.cos(), t.sin(), 0.0, 0.0), r)
        })
        .collect::<Result<Vec<_>>>()?;
    let edges: Vec<_> = (0..n).map(|k| (k, (k + 1) % n, EdgeLabel::Orthogonal)).collect();
    SpunNecklace::from_parts(spheres, &edges)
}

pub fn spin_necklace(n: &SemiNecklace) -> Result<SpunNecklace> {
    let report = validate_semi(n, TABLE_TAU)?;
    if !report.passed() {
        return Err(Error::ConstructionInfeasible(report.failures().join("; ")));
    }
    let (n, shift) = n.conditioned()?;
    let l = n.len();
    let mut spheres = Vec::with_capacity(PAGES * l + 2 + PAGES * l.saturating_sub(1));
    let mut kinds = Vec::with_capacity(spheres.capacity());
    let mut edges = HashMap::new();
    let m = |k: usize, i: usize| k * PAGES + i % PAGES;

    for (k, pearl) in n.pearls.iter().enumerate() {
        let s = pearl.sphere()?;
        for i in 0..PAGES {
            spheres.push(spin_sphere(&s, i as f64 * HEXAGON_ANGLE)?);
            kinds.push(PearlKind::Meridian { level: k, page: i });
            edges.insert(key(m(k, i), m(k, i + 1)), EdgeLabel::Orthogonal);
            if k + 1 < l {
                edges.insert(key(m(k, i), m(k + 1, i)), EdgeLabel::Orthogonal);
                edges.insert(key(m(k, i), m(k + 1, i + 1)), EdgeLabel::Tangent);
                edges.insert(key(m(k, i + 1), m(k + 1, i)), EdgeLabel::Tangent);
            }
        }
    }

    let poles = n.pole_points();
    for (p, level) in [(0, 0), (1, l - 1)] {
        let ring = &spheres[m(level, 0)..m(level, 0) + PAGES];
        let s = solve_pole_pearl(ring, poles[p])
            .map_err(|e| Error::ConstructionInfeasible(format!("pole {}: {e}", p + 1)))?;
        let idx = PAGES * l + p;
        for i in 0..PAGES {
            edges.insert(key(idx, m(level, i)), EdgeLabel::Orthogonal);
        }
        spheres.push(s);
        kinds.push(PearlKind::Pole(p));
    }
    if l == 1 {
        let (a, b) = (PAGES, PAGES + 1);
        if classify_pair(&spheres[a], &spheres[b], DEFAULT_TAU) != PairClass::Orthogonal {
            return Err(Error::ConstructionInfeasible("poles of a single ring do not meet orthogonally".into()));
        }
        edges.insert((a, b), EdgeLabel::Orthogonal);
    }

    let named: Vec<(usize, String, InversiveSphere)> = spheres
        .iter()
        .enumerate()
        .map(|(i, s)| (i, describe(kinds[i], i), *s))
        .collect();
    let mut parts = Vec::with_capacity(l.saturating_sub(1));
    for k in 0..l.saturating_sub(1) {
        let quad = [m(k, 0), m(k, 1), m(k + 1, 0), m(k + 1, 1)];
        let others: Vec<(String, InversiveSphere)> = named
            .iter()
            .filter(|(i, _, _)| !quad.contains(i))
            .map(|(_, name, s)| (name.clone(), *s))
            .collect();
        let four = quad.map(|i| spheres[i]);
        let (p, e, delta) = junction_parts(four, &others).map_err(|err| match err {
            Error::OverlapViolation { offender, .. } => Error::OverlapViolation {
                candidate: format!("junction ({}, 1)", k + 1),
                offender,
            },
            Error::ConstructionInfeasible(msg) => {
                Error::ConstructionInfeasible(format!("junction ({}, 1): {msg}", k + 1))
            }
            other => other,
        })?;
        let scale = quad.iter().map(|&i| center_radius_of(&spheres[i]).map(|c| c.1)).collect::<Result<Vec<_>>>()?;
        parts.push((p, e, delta, scale.into_iter().fold(f64::INFINITY, f64::min)));
    }

    let junctions = place_junctions(&mut parts)?;
    let base = spheres.len();
    let mut offsets = Vec::with_capacity(junctions.len());
    for (k, row) in junctions.into_iter().enumerate() {
        for (i, s) in row.into_iter().enumerate() {
            let idx = base + k * PAGES + i;
            for q in [m(k, i), m(k, i + 1), m(k + 1, i), m(k + 1, i + 1)] {
                edges.insert(key(idx, q), EdgeLabel::Orthogonal);
            }
            spheres.push(s);
            kinds.push(PearlKind::Junction { level: k, page: i });
            offsets.push(parts[k].2 / parts[k].3);
        }
    }

    Ok(SpunNecklace {
        spheres,
        kinds,
        edges,
        levels: l,
        certified: false,
        conditioning_shift: shift,
        junction_offsets: offsets,
    })
}

fn describe(kind: PearlKind, i: usize) -> String {
    match kind {
        PearlKind::Meridian { level, page } => format!("meridian ({}, {})", level + 1, page + 1),
        PearlKind::Pole(m) => format!("pole {}", m + 1),
        PearlKind::Junction { level, page } => format!("junction ({}, {})", level + 1, page + 1),
        PearlKind::Free => format!("pearl {}", i + 1),
    }
}

/// Rotates each level's junction pearl into all six pages, halving the
/// radius of any level whose pearls meet another junction pearl.
fn place_junctions(parts: &mut [([f64; 4], [f64; 4], f64, f64)]) -> Result<Vec<Vec<InversiveSphere>>> {
    for _ in 0..60 {
        let rows = parts
            .iter()
            .map(|&(p, e, delta, _)| {
                let s = junction_sphere(p, e, delta)?;
                (0..PAGES)
                    .map(|i| rotate_pages(i as f64 * HEXAGON_ANGLE).map_sphere(&s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let flat: Vec<(usize, usize, InversiveSphere)> = rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(i, s)| (k, i, *s)))
            .collect();
        let mut shrink = vec![false; parts.len()];
        for a in 0..flat.len() {
            for b in a + 1..flat.len() {
                if classify_pair(&flat[a].2, &flat[b].2, DEFAULT_TAU) != PairClass::Disjoint {
                    shrink[flat[a].0] = true;
                    shrink[flat[b].0] = true;
                }
            }
        }
        if !shrink.contains(&true) {
            return Ok(rows);
        }
        for (k, s) in shrink.iter().enumerate() {
            if *s {
                parts[k].2 /= 2.0;
            }
        }
    }
    Err(Error::OverlapViolation {
        candidate: "junction pearls".into(),
        offender: "neighbouring junction pearls".into(),
    })
}

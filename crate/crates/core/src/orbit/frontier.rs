use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::checkpoint::{Checkpoint, CheckpointEntry, CHECKPOINT_FORMAT, CHECKPOINT_VERSION};
use super::group::Generators;
use super::word::Word;
use crate::error::{Error, Result};
use crate::geometry::{center_radius_of, dist, InversiveSphere};

/// Relative resolution of the duplicate index.
const DEDUP_RESOLUTION: f64 = 1e-9;

/// Image ball `I_{w₁} ∘ … ∘ I_{wₘ₋₁}(B_{wₘ})`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafBall {
    pub word: Word,
    pub sphere: InversiveSphere,
    pub radius: f64,
    pub depth: usize,
}

impl LeafBall {
    pub fn center(&self) -> [f64; 4] {
        center_radius_of(&self.sphere).expect("leaf balls are balls").0
    }

    /// `r_self - |c_self - c_other| - r_other`; non-negative when `other`
    /// lies inside `self`.
    pub fn containment_margin(&self, other: &LeafBall) -> f64 {
        self.radius - dist(&self.center(), &other.center()) - other.radius
    }
}

/// Child rules of the orbit tree. A ball whose word ends in `g` has, for
/// every clique `S ∋ g` of pairwise orthogonal pearls and every pearl `m`
/// orthogonal to no member of `S`, the child `I_w I_{S∖g}(B_m)`. The
/// children of `B_g` cover the part of the limit set in `B_g`, including
/// the lenses `B_g ∩ B_h` that plain one-letter extensions miss.
#[derive(Debug, Clone)]
pub struct Expander {
    gens: Generators,
    /// Per generator: `(S ∖ g, allowed m)` for each clique `S ∋ g`.
    rules: Vec<Vec<(Vec<usize>, Vec<usize>)>>,
    scale: f64,
}

fn cliques_through(g: usize, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let nbrs: Vec<usize> = (0..adj.len()).filter(|&h| adj[g][h]).collect();
    let mut out = vec![Vec::new()];
    fn grow(start: usize, cur: &mut Vec<usize>, nbrs: &[usize], adj: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        for k in start..nbrs.len() {
            let h = nbrs[k];
            if cur.iter().all(|&c| adj[c][h]) {
                cur.push(h);
                out.push(cur.clone());
                grow(k + 1, cur, nbrs, adj, out);
                cur.pop();
            }
        }
    }
    grow(0, &mut Vec::new(), &nbrs, adj, &mut out);
    out
}

impl Expander {
    pub fn new(gens: &Generators) -> Self {
        let n = gens.len();
        let adj: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| gens.commutes(i, j)).collect()).collect();
        let rules = (0..n)
            .map(|g| {
                cliques_through(g, &adj)
                    .into_iter()
                    .map(|others| {
                        let allowed = (0..n)
                            .filter(|&m| m != g && !others.contains(&m))
                            .filter(|&m| !adj[g][m] && others.iter().all(|&o| !adj[o][m]))
                            .collect();
                        (others, allowed)
                    })
                    .collect()
            })
            .collect();
        let scale = gens
            .spheres
            .iter()
            .filter_map(|s| center_radius_of(s).ok())
            .map(|(c, r)| c.iter().fold(r, |a, x| a.max(x.abs() + r)))
            .fold(1e-300, f64::max);
        Expander {
            gens: gens.clone(),
            rules,
            scale,
        }
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn roots(&self) -> Vec<LeafBall> {
        self.gens
            .spheres
            .iter()
            .enumerate()
            .map(|(j, s)| LeafBall {
                word: Word(vec![j]),
                sphere: *s,
                radius: center_radius_of(s).expect("pearls are balls").1,
                depth: 0,
            })
            .collect()
    }

    pub fn children(&self, ball: &LeafBall) -> Result<Vec<LeafBall>> {
        let (&g, prefix) = ball.word.0.split_last().expect("words are nonempty");
        let sp = &self.gens.spheres;
        let mut out = Vec::new();
        for (others, allowed) in &self.rules[g] {
            for &m in allowed {
                let mut s = sp[m];
                for &o in others {
                    s = s.inverted_in(&sp[o])?;
                }
                s = s.inverted_in(&sp[g])?;
                for &j in prefix.iter().rev() {
                    s = s.inverted_in(&sp[j])?;
                }
                let mut letters = ball.word.0.clone();
                letters.extend_from_slice(others);
                letters.push(m);
                let (_, radius) = center_radius_of(&s)?;
                out.push(LeafBall {
                    word: self.gens.reduce(&Word(letters)),
                    sphere: s,
                    radius,
                    depth: ball.depth + 1,
                });
            }
        }
        Ok(out)
    }

    fn key(&self, b: &LeafBall) -> [i64; 5] {
        let q = DEDUP_RESOLUTION * self.scale;
        let c = b.center();
        [
            (c[0] / q).round() as i64,
            (c[1] / q).round() as i64,
            (c[2] / q).round() as i64,
            (c[3] / q).round() as i64,
            (b.radius / q).round() as i64,
        ]
    }

    /// A point of the limit set within `tol` inside `ball`, found by
    /// descending through smallest children. `None` when every descent
    /// dies out, i.e. the ball holds no limit point of the tree.
    pub fn limit_point(&self, ball: &LeafBall, tol: f64) -> Result<Option<[f64; 4]>> {
        let mut visits = 0;
        self.descend(ball, tol, &mut visits)
    }

    fn descend(&self, ball: &LeafBall, tol: f64, visits: &mut usize) -> Result<Option<[f64; 4]>> {
        if ball.radius < tol {
            return Ok(Some(ball.center()));
        }
        *visits += 1;
        if *visits > 200 {
            return Ok(None);
        }
        let mut kids = self.children(ball)?;
        kids.sort_by(|a, b| a.radius.total_cmp(&b.radius).then_with(|| a.word.cmp(&b.word)));
        for k in &kids {
            if let Some(p) = self.descend(k, tol, visits)? {
                return Ok(Some(p));
            }
            if *visits > 200 {
                break;
            }
        }
        Ok(None)
    }
}

/// Breadth-first orbit expansion with an `ε` cutoff.
#[derive(Debug, Clone)]
pub struct OrbitFrontier {
    pub epsilon: f64,
    pub depth_limit: usize,
    /// Depth of the balls in `active`.
    pub depth: usize,
    pub active: Vec<LeafBall>,
    /// Balls that fell below `ε`, in creation order.
    pub completed: Vec<LeafBall>,
    /// Distinct balls created at each depth.
    pub counts: Vec<usize>,
    /// Every ball by depth, when recording was requested.
    pub shells: Option<Vec<Vec<LeafBall>>>,
    pub max_balls: usize,
    seen: HashSet<[i64; 5]>,
}

impl OrbitFrontier {
    /// Depth-zero frontier: the pearls themselves.
    pub fn new(ex: &Expander, epsilon: f64, depth_limit: usize) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::InvalidEpsilon(epsilon));
        }
        let mut f = OrbitFrontier {
            epsilon,
            depth_limit,
            depth: 0,
            active: Vec::new(),
            completed: Vec::new(),
            counts: Vec::new(),
            shells: None,
            max_balls: usize::MAX,
            seen: HashSet::new(),
        };
        let roots = ex.roots();
        f.admit(ex, roots);
        Ok(f)
    }

    pub fn with_budget(mut self, max_balls: usize) -> Self {
        self.max_balls = max_balls;
        self
    }

    /// Keep every generation for [`shell`](super::shell).
    pub fn recording(mut self) -> Self {
        let mut all = self.active.clone();
        all.extend(self.completed.iter().cloned());
        all.sort_by(|a, b| a.word.cmp(&b.word));
        self.shells = Some(vec![all]);
        self
    }

    fn admit(&mut self, ex: &Expander, balls: Vec<LeafBall>) {
        let mut fresh = Vec::with_capacity(balls.len());
        for b in balls {
            if self.seen.insert(ex.key(&b)) {
                fresh.push(b);
            }
        }
        self.counts.push(fresh.len());
        if let Some(sh) = &mut self.shells {
            if sh.len() < self.counts.len() {
                sh.push(fresh.clone());
            }
        }
        for b in fresh {
            if b.radius < self.epsilon {
                self.completed.push(b);
            } else {
                self.active.push(b);
            }
        }
    }

    pub fn is_done(&self) -> bool {
        self.active.is_empty() || self.depth >= self.depth_limit
    }

    /// Expands every active ball by one generation. Results are sorted by
    /// word before deduplication, so they do not depend on the number of
    /// worker threads.
    pub fn expand(&mut self, ex: &Expander) -> Result<()> {
        let kids: Vec<Vec<LeafBall>> = self.active.par_iter().map(|b| ex.children(b)).collect::<Result<_>>()?;
        let total: usize = kids.iter().map(Vec::len).sum();
        if total > self.max_balls {
            return Err(Error::BudgetExceeded {
                budget: self.max_balls,
                depth: self.depth + 1,
                checkpoint: Box::new(self.checkpoint()),
            });
        }
        let mut next: Vec<LeafBall> = kids.into_iter().flatten().collect();
        next.par_sort_by(|a, b| a.word.cmp(&b.word));
        self.active.clear();
        self.depth += 1;
        self.admit(ex, next);
        Ok(())
    }

    pub fn run(&mut self, ex: &Expander) -> Result<()> {
        while !self.is_done() {
            self.expand(ex)?;
        }
        Ok(())
    }

    pub fn checkpoint(&self) -> Checkpoint {
        let entry = |b: &LeafBall| CheckpointEntry {
            word: b.word.0.clone(),
            sphere: b.sphere.into(),
        };
        Checkpoint {
            format: CHECKPOINT_FORMAT.into(),
            version: CHECKPOINT_VERSION,
            epsilon: self.epsilon,
            depth: self.depth,
            active: self.active.iter().map(entry).collect(),
            completed: self.completed.iter().map(entry).collect(),
        }
    }

    /// Rebuilds a frontier from a checkpoint. The duplicate index is
    /// reseeded from the saved balls only.
    pub fn resume(ex: &Expander, cp: &Checkpoint, depth_limit: usize) -> Result<Self> {
        let ball = |e: &CheckpointEntry, depth: usize| -> Result<LeafBall> {
            let sphere = InversiveSphere::try_from(e.sphere)?;
            Ok(LeafBall {
                word: Word(e.word.clone()),
                radius: center_radius_of(&sphere)?.1,
                sphere,
                depth,
            })
        };
        let active = cp.active.iter().map(|e| ball(e, cp.depth)).collect::<Result<Vec<_>>>()?;
        let completed = cp.completed.iter().map(|e| ball(e, cp.depth)).collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        for b in active.iter().chain(&completed) {
            seen.insert(ex.key(b));
        }
        Ok(OrbitFrontier {
            epsilon: cp.epsilon,
            depth_limit,
            depth: cp.depth,
            active,
            completed,
            counts: Vec::new(),
            shells: None,
            max_balls: usize::MAX,
            seen,
        })
    }

    pub fn max_active_radius(&self) -> f64 {
        self.active.iter().map(|b| b.radius).fold(0.0, f64::max)
    }
}

/// Balls created at depth `k` (the shell `V_{k-1}`); needs a recording
/// frontier.
pub fn shell(f: &OrbitFrontier, k: usize) -> Result<&[LeafBall]> {
    let shells = f.shells.as_ref().ok_or(Error::InsufficientDepth {
        requested: k,
        available: 0,
    })?;
    shells.get(k).map(Vec::as_slice).ok_or(Error::InsufficientDepth {
        requested: k,
        available: shells.len().saturating_sub(1),
    })
}

/// One expansion step as a value transformation.
pub fn expand_frontier(f: &OrbitFrontier, ex: &Expander) -> Result<OrbitFrontier> {
    let mut g = f.clone();
    g.expand(ex)?;
    Ok(g)
}

/// Limit-set sample: one limit point (within `ε/1000`) inside every ball of
/// radius below `ε` reached within `depth_limit` generations, ordered by
/// the ball's word. Balls whose descent ends at an already listed point
/// add nothing.
pub fn limit_set_points(ex: &Expander, epsilon: f64, depth_limit: usize) -> Result<Vec<[f64; 4]>> {
    let mut f = OrbitFrontier::new(ex, epsilon, depth_limit)?;
    f.run(ex)?;
    cloud_of(ex, &f)
}

pub fn cloud_of(ex: &Expander, f: &OrbitFrontier) -> Result<Vec<[f64; 4]>> {
    let mut leaves: Vec<&LeafBall> = f.completed.iter().collect();
    leaves.sort_by(|a, b| a.word.cmp(&b.word));
    let tol = f.epsilon * 1e-3;
    let pts: Vec<Option<[f64; 4]>> = leaves
        .par_iter()
        .map(|b| ex.limit_point(b, tol))
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    Ok(pts
        .into_iter()
        .flatten()
        .filter(|p| seen.insert(p.map(f64::to_bits)))
        .collect())
}

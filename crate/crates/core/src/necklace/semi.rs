use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::report::{Clause, Expectation, NecklaceReport, PairRecord};
use crate::error::{Error, Result};
use crate::geometry::{classify_pair, dist, dist2, sphere_from_center_radius, InversiveSphere, Point4};

const TREFOIL_JSON: &str = include_str!("../../data/trefoil85.json");

/// SHA-256 of the bundled trefoil table document.
pub const TREFOIL_SHA256: &str = "ac0293a79c19b559559411387fe2031c54ead9a377db9fc68ee78e91dfc1a071";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pearl {
    pub center: [f64; 4],
    pub radius: f64,
}

impl Pearl {
    pub fn sphere(&self) -> Result<InversiveSphere> {
        sphere_from_center_radius(&Point4::Finite(self.center), self.radius)
    }
}

/// An ordered chain of pearls in the page `x₄ = 0`. The first and last
/// pearls mark the ends of the arc; `poles` optionally fixes where the pole
/// pearls go (by default the projections of the end centers onto the axis
/// plane `x₃ = x₄ = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct SemiNecklace {
    pub pearls: Vec<Pearl>,
    pub poles: Option<[[f64; 4]; 2]>,
}

impl SemiNecklace {
    pub fn new(pearls: Vec<Pearl>) -> Result<Self> {
        if pearls.is_empty() {
            return Err(Error::EmptyNecklace);
        }
        for (i, p) in pearls.iter().enumerate() {
            if !(p.radius > 0.0) {
                return Err(Error::InvalidRadius(p.radius));
            }
            if p.center[3] != 0.0 {
                return Err(Error::NotInPage(p.center[3]));
            }
            if !(p.center[2] >= 0.0) {
                return Err(Error::ConstructionInfeasible(format!(
                    "pearl {} has x3 = {} below the half-space",
                    i + 1,
                    p.center[2]
                )));
            }
        }
        Ok(SemiNecklace { pearls, poles: None })
    }

    pub fn len(&self) -> usize {
        self.pearls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pearls.is_empty()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (0, self.pearls.len() - 1)
    }

    /// Snaps the chain onto exact constraints with the smallest center
    /// displacement: every radius becomes `x₃/√2` and consecutive pearls
    /// become exactly orthogonal, `|cₖ - cₖ₋₁|² = (zₖ² + zₖ₋₁²)/2`. Solved by
    /// minimum-norm Gauss-Newton steps. Returns the new chain and the largest
    /// center shift relative to the pearl radius.
    pub fn conditioned(&self) -> Result<(SemiNecklace, f64)> {
        let l = self.pearls.len();
        let mut c: Vec<[f64; 3]> = self.pearls.iter().map(|p| [p.center[0], p.center[1], p.center[2]]).collect();
        let m = l.saturating_sub(1);
        for _ in 0..50 {
            let mut g = DVector::zeros(m);
            let mut jac = DMatrix::zeros(m, 3 * l);
            let mut worst: f64 = 0.0;
            for k in 1..l {
                let (a, b) = (c[k - 1], c[k]);
                let d: [f64; 3] = std::array::from_fn(|i| b[i] - a[i]);
                let target = (a[2] * a[2] + b[2] * b[2]) / 2.0;
                g[k - 1] = d.iter().map(|x| x * x).sum::<f64>() - target;
                worst = worst.max(g[k - 1].abs() / target);
                for i in 0..3 {
                    jac[(k - 1, 3 * k + i)] = 2.0 * d[i];
                    jac[(k - 1, 3 * (k - 1) + i)] = -2.0 * d[i];
                }
                jac[(k - 1, 3 * k + 2)] -= b[2];
                jac[(k - 1, 3 * (k - 1) + 2)] -= a[2];
            }
            if worst <= 1e-15 {
                break;
            }
            let jjt = &jac * jac.transpose();
            let y = jjt
                .lu()
                .solve(&g)
                .ok_or_else(|| Error::ConstructionInfeasible("orthogonality constraints are degenerate".into()))?;
            let step = jac.transpose() * y;
            for k in 0..l {
                for i in 0..3 {
                    c[k][i] -= step[3 * k + i];
                }
            }
        }
        let mut shift: f64 = 0.0;
        let mut pearls = Vec::with_capacity(l);
        for (k, orig) in self.pearls.iter().enumerate() {
            let center = [c[k][0], c[k][1], c[k][2], 0.0];
            if center[2] <= 0.0 {
                return Err(Error::ConstructionInfeasible(format!(
                    "conditioned pearl {} leaves the half-space",
                    k + 1
                )));
            }
            shift = shift.max(dist(&center, &orig.center) / orig.radius);
            pearls.push(Pearl {
                center,
                radius: center[2] / std::f64::consts::SQRT_2,
            });
        }
        Ok((
            SemiNecklace {
                pearls,
                poles: self.poles,
            },
            shift,
        ))
    }

    /// Pole points on the axis plane.
    pub fn pole_points(&self) -> [[f64; 4]; 2] {
        if let Some(p) = self.poles {
            return p;
        }
        let (a, b) = self.endpoints();
        let first = self.pearls[a].center;
        let last = self.pearls[b].center;
        let pa = [first[0], first[1], 0.0, 0.0];
        let pb = [last[0], last[1], 0.0, 0.0];
        if dist(&pa, &pb) > 1e-9 * (1.0 + first[2]) {
            return [pa, pb];
        }
        // A single ring: split the poles along x₁ so they meet orthogonally.
        let off = first[2] / std::f64::consts::SQRT_2;
        [[pa[0] - off, pa[1], 0.0, 0.0], [pa[0] + off, pa[1], 0.0, 0.0]]
    }
}

/// The bundled 85-pearl trefoil table with its printed digits.
/// One pearl of radius 1 at height `√2`. Spinning it gives a ring of six
/// pearls closed off by two poles.
pub fn toy_ring() -> SemiNecklace {
    SemiNecklace::new(vec![Pearl {
        center: [0.0, 0.0, 2f64.sqrt(), 0.0],
        radius: 1.0,
    }])
    .expect("one pearl")
}

pub fn load_trefoil_table() -> SemiNecklace {
    crate::io::parse_config(TREFOIL_JSON)
        .and_then(|c| c.semi_necklace())
        .expect("bundled trefoil table is valid")
}

/// Checks a semi-necklace against relative tolerance `tau_table`:
/// consecutive orthogonality `|d² - (r₁² + r₂²)| / (r₁² + r₂²)`, disjointness
/// `d > r₁ + r₂` for all other pairs, and hexagon readiness `|r - x₃/√2| / r`.
pub fn validate_semi(n: &SemiNecklace, tau_table: f64) -> Result<NecklaceReport> {
    if n.pearls.is_empty() {
        return Err(Error::EmptyNecklace);
    }
    let spheres = n.pearls.iter().map(Pearl::sphere).collect::<Result<Vec<_>>>()?;
    let mut report = NecklaceReport::default();
    let mut orth = Clause::new("consecutive pearls orthogonal");
    let mut disj = Clause::new("non-consecutive pearls disjoint");
    let mut hex = Clause::new("radius equals x3/sqrt(2)");
    for i in 0..n.pearls.len() {
        for j in i + 1..n.pearls.len() {
            let (a, b) = (&n.pearls[i], &n.pearls[j]);
            let d2 = dist2(&a.center, &b.center);
            let class = classify_pair(&spheres[i], &spheres[j], tau_table);
            let record = if j == i + 1 {
                let s = a.radius * a.radius + b.radius * b.radius;
                let residual = (d2 - s).abs() / s;
                let passed = residual <= tau_table;
                orth.record(residual, passed, || format!("pearls ({}, {}) residual {residual:.3e}", i + 1, j + 1));
                PairRecord { i, j, class, expected: Expectation::Orthogonal, residual, passed }
            } else {
                let sum = a.radius + b.radius;
                let residual = (sum - d2.sqrt()) / sum;
                let passed = residual < 0.0;
                disj.record(residual.max(0.0), passed, || format!("pearls ({}, {}) overlap", i + 1, j + 1));
                PairRecord { i, j, class, expected: Expectation::Disjoint, residual, passed }
            };
            report.pairs.push(record);
        }
    }
    for (i, p) in n.pearls.iter().enumerate() {
        let residual = (p.radius - p.center[2] / std::f64::consts::SQRT_2).abs() / p.radius;
        report.hexagon.push(residual);
        hex.record(residual, residual <= tau_table, || format!("pearl {} residual {residual:.3e}", i + 1));
    }
    report.clauses = vec![orth, disj, hex];
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let t = load_trefoil_table();
        assert_eq!(t.len(), 85);
        assert_eq!(t.pearls[0].center, [2426.06421, 2296.89168, 0.75966995, 0.0]);
        assert_eq!(t.pearls[0].radius, 0.537167778);
        assert_eq!(t.pearls[23].center, [390.0, 804.611533, 105.0, 0.0]);
        assert_eq!(t.pearls[23].radius, 74.24621202);
    }

    #[test]
    fn table_validates() {
        let r = validate_semi(&load_trefoil_table(), 1e-3).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
        let consecutive: Vec<_> = r.pairs.iter().filter(|p| p.j == p.i + 1).collect();
        assert_eq!(consecutive.len(), 84);
        assert_eq!(r.pairs.len(), 85 * 84 / 2);
    }

    #[test]
    fn row_six_hexagon_ready() {
        let t = load_trefoil_table();
        let p = t.pearls[5];
        assert!(((550.0 / 2f64.sqrt()) - p.radius).abs() / p.radius < 1e-7);
    }

    #[test]
    fn perturbed_radius_fails_first_pair() {
        let mut t = load_trefoil_table();
        t.pearls[0].radius *= 1.1;
        let r = validate_semi(&t, 1e-3).unwrap();
        assert!(!r.passed());
        let bad = r.pairs.iter().find(|p| p.i == 0 && p.j == 1).unwrap();
        assert!(!bad.passed);
    }

    #[test]
    fn empty_rejected() {
        let n = SemiNecklace { pearls: vec![], poles: None };
        assert!(matches!(validate_semi(&n, 1e-3), Err(Error::EmptyNecklace)));
    }

    #[test]
    fn conditioning_is_exact_and_small() {
        let (c, shift) = load_trefoil_table().conditioned().unwrap();
        assert!(shift < 1e-4, "shift {shift}");
        let r = validate_semi(&c, 1e-12).unwrap();
        assert!(r.passed(), "{:?}", r.failures());
    }
}

use serde::Serialize;

use crate::geometry::{center_radius_of, common_point_exists, dist, inversion_in, PairClass};
use crate::necklace::{EdgeLabel, SpunNecklace};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleRecord {
    pub i: usize,
    pub j: usize,
    pub declared: Option<EdgeLabel>,
    /// Intersection angle from `cos θ = (r₁² + r₂² - d²)/(2 r₁ r₂)`, `None`
    /// when the spheres do not cross.
    pub angle: Option<f64>,
    pub class: PairClass,
}

/// The checkable hypotheses of the polyhedron theorem for the complement
/// of the necklace.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct PoincareReport {
    /// Records for crossing, touching or overlapping pairs only.
    pub angles: Vec<AngleRecord>,
    /// Largest `|θ - π/2|` over declared orthogonal pairs.
    pub worst_right_angle: f64,
    /// Largest displacement of a sampled mirror point under its own
    /// inversion (relative to the radius).
    pub worst_face_pairing: f64,
    /// Pairwise orthogonal triples whose three spheres share no point.
    pub degenerate_triples: Vec<[usize; 3]>,
    pub failures: Vec<String>,
}

impl PoincareReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn poincare_check(sn: &SpunNecklace, tau: f64) -> PoincareReport {
    let n = sn.len();
    let cr: Vec<([f64; 4], f64)> = (0..n).map(|i| sn.center_radius(i)).collect();
    let mut rep = PoincareReport::default();
    for i in 0..n {
        for j in i + 1..n {
            let (c1, r1) = cr[i];
            let (c2, r2) = cr[j];
            let d = dist(&c1, &c2);
            let declared = sn.label(i, j);
            let (angle, class) = if d >= r1 + r2 {
                let touching = (d - (r1 + r2)) <= tau * (r1 + r2);
                (None, if touching { PairClass::Tangent } else { PairClass::Disjoint })
            } else if d <= (r1 - r2).abs() {
                (None, PairClass::Overlapping)
            } else {
                let cos = ((r1 * r1 + r2 * r2 - d * d) / (2.0 * r1 * r2)).clamp(-1.0, 1.0);
                let theta = cos.acos();
                let class = if (theta - std::f64::consts::FRAC_PI_2).abs() <= tau {
                    PairClass::Orthogonal
                } else {
                    PairClass::Overlapping
                };
                (Some(theta), class)
            };
            let ok = match declared {
                Some(EdgeLabel::Orthogonal) => class == PairClass::Orthogonal,
                Some(EdgeLabel::Tangent) => class == PairClass::Tangent,
                None => class == PairClass::Disjoint,
            };
            if declared == Some(EdgeLabel::Orthogonal) {
                if let Some(t) = angle {
                    rep.worst_right_angle = rep.worst_right_angle.max((t - std::f64::consts::FRAC_PI_2).abs());
                }
            }
            if !ok {
                rep.failures.push(format!(
                    "{} / {}: declared {:?}, found {:?}{}",
                    sn.name_of(i),
                    sn.name_of(j),
                    declared,
                    class,
                    angle.map(|t| format!(" at angle {t:.6}")).unwrap_or_default()
                ));
            }
            if class != PairClass::Disjoint {
                rep.angles.push(AngleRecord { i, j, declared, angle, class });
            }
        }
    }

    for (j, s) in sn.spheres().iter().enumerate() {
        let m = inversion_in(s);
        let (c, r) = center_radius_of(s).expect("pearls are balls");
        for k in 0..8 {
            let mut dir = [0.0; 4];
            dir[k % 4] = if k < 4 { 1.0 } else { -1.0 };
            let p = crate::geometry::Point4::Finite(std::array::from_fn(|i| c[i] + r * dir[i]));
            let q = m.apply(&p);
            let moved = match (p.coords(), q.coords()) {
                (Some(a), Some(b)) => dist(&a, &b) / r,
                _ => f64::INFINITY,
            };
            rep.worst_face_pairing = rep.worst_face_pairing.max(moved);
            if moved > 1e-6 {
                rep.failures.push(format!("inversion {} moves its own mirror by {moved:.3e}", j + 1));
                break;
            }
        }
    }

    let orth: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| sn.label(i, j) == Some(EdgeLabel::Orthogonal)).collect())
        .collect();
    for a in 0..n {
        for &b in orth[a].iter().filter(|&&b| b > a) {
            for &c in orth[b].iter().filter(|&&c| c > b) {
                if orth[a].contains(&c) {
                    let sp = sn.spheres();
                    if !common_point_exists(&[sp[a], sp[b], sp[c]], 1e-9) {
                        rep.degenerate_triples.push([a, b, c]);
                    }
                }
            }
        }
    }
    rep
}

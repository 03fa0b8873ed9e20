use nalgebra::Vector4;

use crate::error::{Error, Result};
use crate::geometry::{
    center_radius_of, classify_pair, common_point_exists, dist, pair_inner, sphere_from_center_radius,
    InversiveSphere, PairClass, Point4,
};

const RELATION_TOL: f64 = 1e-6;
const JUNCTION_DIRECTIONS: usize = 720;

/// Pole pearl centered at `pole`, orthogonal to every sphere of a symmetric
/// ring: radius `√(D² - r²)` with `D` the distance from the pole to the ring
/// centers. Also checks that the pole pearl and each pair of neighbouring
/// ring pearls share a point, so no hole opens between them.
pub fn solve_pole_pearl(ring: &[InversiveSphere], pole: [f64; 4]) -> Result<InversiveSphere> {
    let cr = ring.iter().map(center_radius_of).collect::<Result<Vec<_>>>()?;
    let (c0, r) = cr[0];
    let d = dist(&pole, &c0);
    for (i, (c, ri)) in cr.iter().enumerate() {
        let di = dist(&pole, c);
        if (di - d).abs() > 1e-9 * d.max(r) || (ri - r).abs() > 1e-9 * r {
            return Err(Error::ConstructionInfeasible(format!("ring pearl {} is not symmetric about the pole", i + 1)));
        }
    }
    if d <= r {
        return Err(Error::ConstructionInfeasible(format!(
            "pole lies inside the ring pearls (D = {d}, r = {r})"
        )));
    }
    let rho = ((d - r) * (d + r)).sqrt();
    let s = sphere_from_center_radius(&Point4::Finite(pole), rho)?;
    for (i, t) in ring.iter().enumerate() {
        let p = pair_inner(&s, t);
        if p.abs() > 1e-9 {
            return Err(Error::ConstructionInfeasible(format!("pole not orthogonal to ring pearl {} ({p:.3e})", i + 1)));
        }
    }
    let n = ring.len();
    if n > 1 {
        for i in 0..n {
            let j = (i + 1) % n;
            if !common_point_exists(&[s, ring[i], ring[j]], 1e-9) {
                return Err(Error::ConstructionInfeasible(format!(
                    "hole between the pole and ring pearls {} and {}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(s)
}

/// Junction pearl for the quad `a = Σᵏᵢ`, `b = Σᵏᵢ₊₁`, `c = Σᵏ⁺¹ᵢ`, `d = Σᵏ⁺¹ᵢ₊₁`.
///
/// The four spheres pass through one point `p`, where the diagonals `a, d`
/// and `b, c` touch. Every sphere orthogonal to all four passes through `p`
/// too, with its center `p + δe` for a unit `e` normal to the plane of the
/// four centers. Among those we take the direction leaving the most room
/// before any sphere of `others`, and `δ` half that room, capped at half the
/// smallest of the four radii.
pub fn solve_junction_pearl(four: [InversiveSphere; 4], others: &[(String, InversiveSphere)]) -> Result<InversiveSphere> {
    let (p, e, delta) = junction_parts(four, others)?;
    junction_sphere(p, e, delta)
}

/// Touching point, center direction and radius of a junction pearl.
pub(crate) fn junction_parts(
    four: [InversiveSphere; 4],
    others: &[(String, InversiveSphere)],
) -> Result<([f64; 4], [f64; 4], f64)> {
    let [a, b, c, d] = four;
    for (x, y, name) in [(a, b, "a-b"), (a, c, "a-c"), (b, d, "b-d"), (c, d, "c-d")] {
        let p = pair_inner(&x, &y);
        if p.abs() > RELATION_TOL {
            return Err(Error::ConstructionInfeasible(format!("pair {name} is not orthogonal ({p:.3e})")));
        }
    }
    for (x, y, name) in [(a, d, "a-d"), (b, c, "b-c")] {
        if classify_pair(&x, &y, RELATION_TOL) != PairClass::Tangent {
            return Err(Error::ConstructionInfeasible(format!(
                "diagonal {name} is not tangent ({:.3e})",
                pair_inner(&x, &y)
            )));
        }
    }
    let cr = [a, b, c, d].iter().map(center_radius_of).collect::<Result<Vec<_>>>()?;
    let [(ca, ra), (cb, rb), (cc, rc), (cd, rd)] = [cr[0], cr[1], cr[2], cr[3]];
    let p = tangency_point(ca, ra, cd);
    let q = tangency_point(cb, rb, cc);
    let scale = ra.min(rb).min(rc).min(rd);
    if dist(&p, &q) > RELATION_TOL * scale {
        return Err(Error::ConstructionInfeasible("diagonal tangency points differ".into()));
    }

    let basis = normal_plane(&[sub(&cb, &ca), sub(&cc, &ca)])
        .ok_or_else(|| Error::ConstructionInfeasible("quad centers are collinear".into()))?;
    let cap = scale / 2.0;
    let mut near = Vec::new();
    for (name, s) in others {
        let Ok((co, ro)) = center_radius_of(s) else { continue };
        let w = sub(&p, &co);
        let gap = norm(&w) - ro;
        if gap <= 0.0 {
            return Err(Error::OverlapViolation {
                candidate: "junction point".into(),
                offender: name.clone(),
            });
        }
        if gap <= 2.0 * cap {
            near.push((name, w, ro));
        }
    }

    let mut best: Option<(f64, [f64; 4])> = None;
    for k in 0..JUNCTION_DIRECTIONS {
        let t = std::f64::consts::TAU * k as f64 / JUNCTION_DIRECTIONS as f64;
        let e: [f64; 4] = std::array::from_fn(|i| t.cos() * basis[0][i] + t.sin() * basis[1][i]);
        let room = near
            .iter()
            .map(|(_, w, ro)| {
                let ew: f64 = (0..4).map(|i| e[i] * w[i]).sum();
                if ew >= *ro {
                    f64::INFINITY
                } else {
                    (norm2(w) - ro * ro) / (2.0 * (ro - ew))
                }
            })
            .fold(f64::INFINITY, f64::min);
        if best.is_none_or(|(r, _)| room > r) {
            best = Some((room, e));
        }
    }
    let (room, e) = best.expect("at least one direction");
    let delta = (room / 2.0).min(cap);
    if !(delta > 1e-12 * scale) {
        let offender = near
            .first()
            .map(|(n, _, _)| (*n).clone())
            .unwrap_or_else(|| "neighbourhood".into());
        return Err(Error::OverlapViolation {
            candidate: "junction pearl".into(),
            offender,
        });
    }
    Ok((p, e, delta))
}

pub(crate) fn junction_sphere(p: [f64; 4], e: [f64; 4], delta: f64) -> Result<InversiveSphere> {
    let center: [f64; 4] = std::array::from_fn(|i| p[i] + delta * e[i]);
    sphere_from_center_radius(&Point4::Finite(center), delta)
}

fn tangency_point(ca: [f64; 4], ra: f64, cd: [f64; 4]) -> [f64; 4] {
    let l = dist(&ca, &cd);
    std::array::from_fn(|i| ca[i] + ra * (cd[i] - ca[i]) / l)
}

fn sub(a: &[f64; 4], b: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| a[i] - b[i])
}

fn norm2(a: &[f64; 4]) -> f64 {
    a.iter().map(|x| x * x).sum()
}

fn norm(a: &[f64; 4]) -> f64 {
    norm2(a).sqrt()
}

/// Orthonormal basis of the orthogonal complement of two vectors in `R⁴`.
fn normal_plane(span: &[[f64; 4]; 2]) -> Option<[[f64; 4]; 2]> {
    let mut basis: Vec<Vector4<f64>> = Vec::with_capacity(4);
    for v in span {
        let orig = Vector4::from(*v);
        let mut v = orig;
        for b in &basis {
            v -= b * b.dot(&v);
        }
        let n = v.norm();
        if !(n > 1e-12 * orig.norm()) {
            return None;
        }
        basis.push(v / n);
    }
    let mut out = [[0.0; 4]; 2];
    for slot in &mut out {
        let best = (0..4)
            .map(|k| {
                let mut v = Vector4::zeros();
                v[k] = 1.0;
                for b in &basis {
                    v -= b * b.dot(&v);
                }
                v
            })
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .expect("four candidates");
        let v = best / best.norm();
        basis.push(v);
        *slot = [v[0], v[1], v[2], v[3]];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{spin_sphere, HEXAGON_ANGLE};

    fn ring(z: f64, x: f64) -> Vec<InversiveSphere> {
        let s = sphere_from_center_radius(&Point4::new(x, 0.0, z, 0.0), z / 2f64.sqrt()).unwrap();
        (0..6).map(|i| spin_sphere(&s, i as f64 * HEXAGON_ANGLE).unwrap()).collect()
    }

    #[test]
    fn toy_pole() {
        let r = ring(2f64.sqrt(), 0.0);
        let pole = solve_pole_pearl(&r, [1.0, 0.0, 0.0, 0.0]).unwrap();
        let (c, rho) = center_radius_of(&pole).unwrap();
        assert_eq!(c, [1.0, 0.0, 0.0, 0.0]);
        assert!((rho - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn trefoil_first_level_pole() {
        let r = ring(0.75966995, 2426.06421);
        let pole = solve_pole_pearl(&r, [2426.06421, 0.0, 0.0, 0.0]).unwrap();
        for t in &r {
            assert_eq!(classify_pair(&pole, t, 1e-9), PairClass::Orthogonal);
        }
    }

    #[test]
    fn pole_inside_ring_fails() {
        let r = ring(2f64.sqrt(), 0.0);
        assert!(matches!(
            solve_pole_pearl(&r, [0.0, 0.0, 2f64.sqrt(), 0.0]),
            Err(Error::ConstructionInfeasible(_))
        ));
    }

    fn quad() -> [InversiveSphere; 4] {
        // Two orthogonal pearls in a page, spun to two neighbouring pages.
        let z1: f64 = 1.0;
        let r1 = z1 / 2f64.sqrt();
        let z2: f64 = 2.0;
        let r2 = z2 / 2f64.sqrt();
        let dx = ((r1 * r1 + r2 * r2) - (z2 - z1) * (z2 - z1)).sqrt();
        let s1 = sphere_from_center_radius(&Point4::new(0.0, 0.0, z1, 0.0), r1).unwrap();
        let s2 = sphere_from_center_radius(&Point4::new(dx, 0.0, z2, 0.0), r2).unwrap();
        [
            s1,
            spin_sphere(&s1, HEXAGON_ANGLE).unwrap(),
            s2,
            spin_sphere(&s2, HEXAGON_ANGLE).unwrap(),
        ]
    }

    #[test]
    fn junction_orthogonal_to_quad() {
        let four = quad();
        let j = solve_junction_pearl(four, &[]).unwrap();
        for s in &four {
            assert!(pair_inner(&j, s).abs() < 1e-10);
        }
        let (c, r) = center_radius_of(&j).unwrap();
        let (ca, ra) = center_radius_of(&four[0]).unwrap();
        let (cd, _) = center_radius_of(&four[3]).unwrap();
        let p = tangency_point(ca, ra, cd);
        assert!(dist(&p, &c) < 2.0 * r);
    }

    #[test]
    fn junction_needs_tangent_diagonals() {
        let mut four = quad();
        let (c, r) = center_radius_of(&four[3]).unwrap();
        four[3] = sphere_from_center_radius(&Point4::Finite(c), r * 0.9).unwrap();
        assert!(matches!(solve_junction_pearl(four, &[]), Err(Error::ConstructionInfeasible(_))));
    }

    #[test]
    fn junction_point_inside_obstacle() {
        let four = quad();
        let (ca, ra) = center_radius_of(&four[0]).unwrap();
        let (cd, _) = center_radius_of(&four[3]).unwrap();
        let p = tangency_point(ca, ra, cd);
        let blocker = sphere_from_center_radius(&Point4::Finite(p), 0.01).unwrap();
        let err = solve_junction_pearl(four, &[("blocker".into(), blocker)]).unwrap_err();
        assert!(matches!(err, Error::OverlapViolation { ref offender, .. } if offender == "blocker"));
    }
}

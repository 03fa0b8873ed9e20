use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::qmoebius::{even_word_to_qmoebius, qmoebius_to_complex4};
use super::quaternion::Quaternion;
use crate::geometry::{chordal_distance, inversion_in, sphere_from_center_radius, InversiveSphere, Point4};
use crate::orbit::Word;
use crate::Result;

/// A point of `P³(C)`, stored as a unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint(pub Vector4<Complex64>);

impl ProjectivePoint {
    pub fn new(v: Vector4<Complex64>) -> Option<Self> {
        let n = v.norm();
        (n > 0.0 && n.is_finite()).then(|| ProjectivePoint(v / Complex64::new(n, 0.0)))
    }

    /// A point of the twistor fiber over `x`, chosen by `(a, b)` in the
    /// complex line spanned by a lift `v` and `v·j`.
    pub fn in_fiber(x: &Point4, a: Complex64, b: Complex64) -> Option<Self> {
        let v = match x.coords() {
            Some(c) => quaternion_pair(Quaternion(c), Quaternion::ONE),
            None => quaternion_pair(Quaternion::ONE, Quaternion::ZERO),
        };
        ProjectivePoint::new(v * a + right_j(&v) * b)
    }
}

fn quaternion_pair(q1: Quaternion, q2: Quaternion) -> Vector4<Complex64> {
    let (z1, z2) = q1.to_complex_pair();
    let (z3, z4) = q2.to_complex_pair();
    Vector4::new(z1, -z2.conj(), z3, -z4.conj())
}

fn quaternion_of(a: Complex64, b: Complex64) -> Quaternion {
    Quaternion::from_complex_pair(a, -b.conj())
}

/// Right multiplication by `j` on `H² = C⁴`; antilinear.
pub fn right_j(v: &Vector4<Complex64>) -> Vector4<Complex64> {
    Vector4::new(v[1].conj(), -v[0].conj(), v[3].conj(), -v[2].conj())
}

/// `[q₁ : q₂] ↦ q₁q₂⁻¹`.
pub fn twistor_project(p: &ProjectivePoint) -> Point4 {
    let v = p.0;
    let q1 = quaternion_of(v[0], v[1]);
    let q2 = quaternion_of(v[2], v[3]);
    if q2.norm() <= 1e-14 * q1.norm() {
        return Point4::Infinity;
    }
    Point4::Finite((q1 * q2.inv()).0)
}

/// Fubini–Study distance.
pub fn fubini_study(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    p.0.dotc(&q.0).norm().min(1.0).acos()
}

/// A sample from the unitary-invariant distribution on `P³(C)`.
pub fn random_c4(rng: &mut impl Rng) -> ProjectivePoint {
    loop {
        let v = Vector4::from_fn(|_, _| {
            let (a, b): (f64, f64) = (gaussian(rng), gaussian(rng));
            Complex64::new(a, b)
        });
        if let Some(p) = ProjectivePoint::new(v) {
            return p;
        }
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// How far `c` is from commuting with right multiplication by `j`,
/// relative to `‖c‖`. Zero for every lift of a quaternionic map.
pub fn right_line_defect(c: &Matrix4<Complex64>, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norm = c.norm();
    (0..samples)
        .map(|_| {
            let v = random_c4(&mut rng).0;
            (c * right_j(&v) - right_j(&(c * v))).norm() / norm
        })
        .fold(0.0, f64::max)
}

/// Spheres moved by a similarity so their balls fit in the unit ball.
pub fn unit_frame(spheres: &[InversiveSphere]) -> Result<Vec<InversiveSphere>> {
    let balls: Vec<([f64; 4], f64)> = spheres.iter().map(|s| s.center_radius()).collect::<Result<_>>()?;
    let mut lo = [f64::INFINITY; 4];
    let mut hi = [f64::NEG_INFINITY; 4];
    for (c, r) in &balls {
        for i in 0..4 {
            lo[i] = lo[i].min(c[i] - r);
            hi[i] = hi[i].max(c[i] + r);
        }
    }
    let mid: [f64; 4] = std::array::from_fn(|i| (lo[i] + hi[i]) / 2.0);
    let half = (0..4).map(|i| (hi[i] - lo[i]) / 2.0).fold(0.0, f64::max) * 2.0;
    balls
        .iter()
        .map(|(c, r)| {
            let c: [f64; 4] = std::array::from_fn(|i| (c[i] - mid[i]) / half);
            sphere_from_center_radius(&Point4::Finite(c), r / half)
        })
        .collect()
}

/// Worst chordal distance between `π(lift(w)·p)` and `w(π(p))` over
/// `samples` seeded random points of `P³(C)`.
pub fn equivariance_check(w: &Word, spheres: &[InversiveSphere], samples: usize, seed: u64) -> Result<f64> {
    let lift = qmoebius_to_complex4(&even_word_to_qmoebius(w, spheres)?)?;
    let maps: Vec<_> = w.0.iter().rev().map(|&j| inversion_in(&spheres[j])).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = random_c4(&mut rng);
        let Some(up) = ProjectivePoint::new(lift * p.0) else {
            continue;
        };
        let down = maps.iter().fold(twistor_project(&p), |x, m| m.apply(&x));
        worst = worst.max(chordal_distance(&twistor_project(&up), &down));
    }
    Ok(worst)
}

/// Worst chordal spread of the projected images of `per_fiber` points on
/// each of `fibers` random twistor fibers.
pub fn fiber_check(w: &Word, spheres: &[InversiveSphere], fibers: usize, per_fiber: usize, seed: u64) -> Result<f64> {
    let lift = qmoebius_to_complex4(&even_word_to_qmoebius(w, spheres)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..fibers {
        let base = twistor_project(&random_c4(&mut rng));
        let mut first: Option<Point4> = None;
        for _ in 0..per_fiber {
            let a = Complex64::new(gaussian(&mut rng), gaussian(&mut rng));
            let b = Complex64::new(gaussian(&mut rng), gaussian(&mut rng));
            let Some(p) = ProjectivePoint::in_fiber(&base, a, b) else {
                continue;
            };
            let Some(img) = ProjectivePoint::new(lift * p.0) else {
                continue;
            };
            let x = twistor_project(&img);
            match &first {
                None => first = Some(x),
                Some(f) => worst = worst.max(chordal_distance(f, &x)),
            }
        }
    }
    Ok(worst)
}

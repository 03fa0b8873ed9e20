//! End-to-end acceptance checks. Prints one line per criterion and exits
//! non-zero if any fails.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wildknot::geometry::{
    classify_pair, product_residual, MoebiusMap, PairClass, Point4, DEFAULT_TAU,
};
use wildknot::necklace::{load_trefoil_table, planar_ring, spin_necklace, toy_ring, NecklaceReport, SpunNecklace};
use wildknot::orbit::{
    cloud_of, formula_counts, generators_from_necklace, shell, Expander, OrbitFrontier, Word,
};
use wildknot::topology::{homology_matrix, power_is_inner, presentation_of, trefoil_monodromy};
use wildknot::twistor::{equivariance_check, fiber_check};

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if let Some(l) = limit {
        if took > l {
            o.ok = false;
            o.detail.push_str(&format!("; took {took:?}, limit {l:?}"));
        }
    }
    (o, took)
}

fn toy() -> Expander {
    let mut sn = spin_necklace(&toy_ring()).unwrap();
    assert!(sn.certify(DEFAULT_TAU).passed());
    Expander::new(&generators_from_necklace(&sn).unwrap())
}

fn table_fidelity() -> Outcome {
    let t = load_trefoil_table();
    let mut worst: f64 = 0.0;
    let mut tight = 0;
    for w in t.pearls.windows(2) {
        let d2: f64 = (0..4).map(|i| (w[0].center[i] - w[1].center[i]).powi(2)).sum();
        let s = w[0].radius.powi(2) + w[1].radius.powi(2);
        let rel = (d2 - s).abs() / s;
        worst = worst.max(rel);
        if rel <= 1e-5 {
            tight += 1;
        }
    }
    let n = t.pearls.len() - 1;
    check(
        n == 84 && worst <= 1e-3 && tight >= 80,
        format!("{n} pairs, worst {worst:.2e}, {tight} within 1e-5"),
    )
}

fn hexagon_law() -> Outcome {
    let t = load_trefoil_table();
    let worst = t
        .pearls
        .iter()
        .map(|p| (p.radius - p.center[2] / 2f64.sqrt()).abs() / p.radius)
        .fold(0.0, f64::max);
    check(t.pearls.len() == 85 && worst <= 1e-5, format!("85 rows, worst {worst:.2e}"))
}

fn quad_law(report: &NecklaceReport) -> Outcome {
    let diag = report.clause("quad diagonals equal r + R").unwrap();
    let common = report.clause("quad spheres share a point").unwrap();
    check(
        diag.passed() && common.passed() && diag.worst_residual <= 1e-6 && common.worst_residual <= 1e-6,
        format!(
            "{} quads, diagonal worst {:.2e}, common point worst {:.2e}",
            common.checked, diag.worst_residual, common.worst_residual
        ),
    )
}

fn spun_construction() -> (Outcome, SpunNecklace, NecklaceReport) {
    let mut sn = spin_necklace(&load_trefoil_table()).expect("trefoil spins");
    let report = sn.certify(DEFAULT_TAU);
    let junctions = report.clause("junction pearls").map_or(0, |c| c.checked);
    let orth = report.clause("declared orthogonal pairs").unwrap().worst_residual;
    let tan = report.clause("declared tangent pairs").unwrap().worst_residual;
    (
        check(
            report.passed() && junctions == 6 * 84,
            format!(
                "{} pearls, orthogonal worst {orth:.2e}, tangent worst {tan:.2e}, {junctions} junctions",
                sn.len()
            ),
        ),
        sn,
        report,
    )
}

fn group_axioms(sn: &SpunNecklace) -> Outcome {
    let g = generators_from_necklace(sn).unwrap();
    let id = MoebiusMap::identity();
    let squares = g.maps.iter().map(|m| product_residual(&[*m, *m], &id)).fold(0.0, f64::max);
    let mut commutators: f64 = 0.0;
    let mut expected: BTreeSet<Vec<usize>> = (0..g.len()).map(|j| vec![j, j]).collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if g.coxeter[i][j] == 2 {
                let (a, b) = (g.maps[i], g.maps[j]);
                commutators = commutators.max(product_residual(&[a, b, a, b], &id));
            }
            if classify_pair(&sn.spheres()[i], &sn.spheres()[j], DEFAULT_TAU) == PairClass::Orthogonal {
                expected.insert(vec![i, j, i, j]);
            }
        }
    }
    let emitted: BTreeSet<Vec<usize>> = presentation_of(sn).relators.into_iter().collect();
    check(
        squares <= 1e-10 && commutators <= 1e-9 && emitted == expected,
        format!(
            "squares {squares:.2e}, commutators {commutators:.2e}, {} relators{}",
            emitted.len(),
            if emitted == expected { "" } else { " (mismatch)" }
        ),
    )
}

fn snap_distance(cloud: &[[f64; 4]], cell: f64) -> impl Fn(&[f64; 4]) -> f64 + '_ {
    let key = move |p: &[f64; 4]| p.map(|x| (x / cell).floor() as i64);
    let mut grid: HashMap<[i64; 4], Vec<usize>> = HashMap::new();
    for (i, p) in cloud.iter().enumerate() {
        grid.entry(key(p)).or_default().push(i);
    }
    move |q: &[f64; 4]| {
        let k = key(q);
        let mut best = f64::INFINITY;
        for o in 0..81 {
            let d = [o % 3, (o / 3) % 3, (o / 9) % 3, o / 27].map(|x| x as i64 - 1);
            if let Some(ids) = grid.get(&[k[0] + d[0], k[1] + d[1], k[2] + d[2], k[3] + d[3]]) {
                for &i in ids {
                    let dist = (0..4).map(|a| (cloud[i][a] - q[a]).powi(2)).sum::<f64>().sqrt();
                    best = best.min(dist);
                }
            }
        }
        best
    }
}

fn limit_set_convergence() -> Outcome {
    let ex = toy();
    let mut f = OrbitFrontier::new(&ex, 1e-12, 6).unwrap().recording();
    f.run(&ex).unwrap();
    let maxima: Vec<f64> = (1..=6)
        .map(|d| shell(&f, d).unwrap().iter().map(|b| b.radius).fold(0.0, f64::max))
        .collect();
    let decreasing = maxima.windows(2).all(|w| w[1] < w[0]);
    let mut margin = f64::INFINITY;
    for d in 0..6 {
        for parent in shell(&f, d).unwrap() {
            for kid in ex.children(parent).unwrap() {
                margin = margin.min(parent.containment_margin(&kid));
            }
        }
    }
    let eps = 1e-3;
    let mut g = OrbitFrontier::new(&ex, eps, 20).unwrap();
    g.run(&ex).unwrap();
    let cloud = cloud_of(&ex, &g).unwrap();
    let snap = snap_distance(&cloud, 2.0 * eps);
    let mut invariance: f64 = 0.0;
    for m in &ex.generators().maps {
        for p in &cloud {
            match m.apply(&Point4::Finite(*p)).coords() {
                Some(q) => invariance = invariance.max(snap(&q)),
                None => invariance = f64::INFINITY,
            }
        }
    }
    check(
        decreasing && margin >= -1e-9 && !cloud.is_empty() && invariance <= 2.0 * eps,
        format!(
            "max radius by depth {:?}, worst nesting margin {margin:.2e}, {} points, invariance {invariance:.2e}",
            maxima.iter().map(|r| format!("{r:.2e}")).collect::<Vec<_>>(),
            cloud.len()
        ),
    )
}

fn count_report() -> Outcome {
    let exact = [
        formula_counts(10, 1).first_packing == Some(80),
        formula_counts(10, 2).second_packing == Some(870),
        formula_counts(10, 2).shell_pearls == Some(2 * 10 * 49),
        formula_counts(10, 2).connected_copies == Some(10 * (81 - 1) / 8 + 1),
        formula_counts(8, 3).shell_pearls == Some(2 * 8 * 125),
    ]
    .iter()
    .all(|&b| b);
    let mut lines = Vec::new();
    for (name, sn) in [("ring10", planar_ring(10).unwrap()), ("toy", spin_necklace(&toy_ring()).unwrap())] {
        let mut sn = sn;
        assert!(sn.certify(DEFAULT_TAU).passed());
        let ex = Expander::new(&generators_from_necklace(&sn).unwrap());
        let mut f = OrbitFrontier::new(&ex, f64::MIN_POSITIVE, 3).unwrap();
        f.run(&ex).unwrap();
        let n = sn.len() as u64;
        let closed = formula_counts(n, 1).first_packing.zip(formula_counts(n, 2).second_packing);
        lines.push(format!("{name} enumerated {:?} vs n(n-2), n(n^2-2n+7) = {closed:?}", f.counts));
    }
    check(exact, lines.join("; "))
}

fn monodromy() -> Outcome {
    let phi = trefoil_monodromy();
    let six = power_is_inner(&phi, 6, 8);
    let lower = (1..=5).all(|k| power_is_inner(&phi, k, 8).is_none());
    let h = homology_matrix(&phi);
    let mut p = vec![vec![1i64, 0], vec![0, 1]];
    let mut order = 0;
    for k in 1..=12 {
        p = (0..2).map(|i| (0..2).map(|j| (0..2).map(|l| p[i][l] * h[l][j]).sum()).collect()).collect();
        if p == vec![vec![1, 0], vec![0, 1]] {
            order = k;
            break;
        }
    }
    check(
        six.is_some() && lower && h == vec![vec![0, 1], vec![-1, 1]] && order == 6,
        format!(
            "conjugator {}, powers 1-5 outer: {lower}, homology {h:?} of order {order}",
            six.map(|w| w.to_string()).unwrap_or_else(|| "none".into())
        ),
    )
}

fn twistor(sn: &SpunNecklace) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst: f64 = 0.0;
    let mut fiber: f64 = 0.0;
    for k in 0..20 {
        let len = 2 * rng.gen_range(1..=3);
        let mut w = Vec::new();
        while w.len() < len {
            let j = rng.gen_range(0..sn.len());
            if w.last() != Some(&j) {
                w.push(j);
            }
        }
        let w = Word(w);
        worst = worst.max(equivariance_check(&w, sn.spheres(), 100, k).unwrap());
        fiber = fiber.max(fiber_check(&w, sn.spheres(), 50, 3, k).unwrap());
    }
    check(
        worst <= 1e-7 && fiber <= 1e-7,
        format!("20 words, equivariance worst {worst:.2e}, fiber spread worst {fiber:.2e}"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/data/toy_ring.json");
    let run = |name: &str| {
        let out = dir.path().join(name);
        let argv = [
            "wildknot",
            "limitset",
            "--config",
            config,
            "--epsilon",
            "3e-3",
            "--depth",
            "12",
            "--out",
            out.to_str().unwrap(),
            "--manifest-dir",
            dir.path().to_str().unwrap(),
        ];
        let code = wildknot::cli::dispatch(argv, &mut Vec::new(), &mut Vec::new());
        (code, std::fs::read(out).unwrap_or_default())
    };
    let (c1, a) = run("a.csv");
    let (c2, b) = run("b.csv");
    check(
        c1 == 0 && c2 == 0 && !a.is_empty() && a == b,
        format!("{} bytes, identical: {}", a.len(), a == b),
    )
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let mut results: Vec<(&str, Outcome, Duration)> = Vec::new();
    let mut record = |name, (o, t): (Outcome, Duration)| results.push((name, o, t));

    record("1 table fidelity", timed(secs(1), table_fidelity));
    record("2 hexagon law", timed(secs(1), hexagon_law));
    let start = Instant::now();
    let (o4, sn, report) = spun_construction();
    let t4 = start.elapsed();
    record("3 quad law", timed(None, || quad_law(&report)));
    let o4 = if t4 > Duration::from_secs(60) {
        check(false, format!("{}; took {t4:?}", o4.detail))
    } else {
        o4
    };
    record("4 spun construction", (o4, t4));
    record("5 group axioms", timed(None, || group_axioms(&sn)));
    record("6 limit-set convergence", timed(None, limit_set_convergence));
    record("7 count report", timed(secs(120), count_report));
    record("8 monodromy", timed(secs(10), monodromy));
    record("9 twistor equivariance", timed(None, || twistor(&sn)));
    record("10 determinism", timed(None, determinism));

    let mut failed = 0;
    for (name, o, t) in &results {
        println!("{} criterion {name}: {} ({t:.2?})", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

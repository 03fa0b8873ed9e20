use wildknot::geometry::{classify_pair, pair_inner, sphere_from_center_radius, PairClass, Point4, DEFAULT_TAU};
use wildknot::necklace::{
    load_trefoil_table, solve_pole_pearl, spin_necklace, toy_ring, validate_semi, EdgeLabel, Pearl, PearlKind,
    SemiNecklace, PAGES,
};
use wildknot::Error;

/// Columns of `m + 1` pearls growing by `2 + √3` away from the axis plane,
/// joined across the top by `h` pearls at constant height.
fn arch(m: usize, h: usize) -> SemiNecklace {
    let q = 2.0 + 3f64.sqrt();
    let top = q.powi(m as i32);
    let pearl = |x: f64, z: f64| Pearl {
        center: [x, 0.0, z, 0.0],
        radius: z / 2f64.sqrt(),
    };
    let mut pearls: Vec<Pearl> = (0..=m).map(|k| pearl(0.0, q.powi(k as i32))).collect();
    pearls.extend((1..=h).map(|j| pearl(j as f64 * top, top)));
    let right = (h + 1) as f64 * top;
    pearls.extend((0..=m).rev().map(|k| pearl(right, q.powi(k as i32))));
    SemiNecklace::new(pearls).unwrap()
}

#[test]
fn trefoil_table_validates() {
    let report = validate_semi(&load_trefoil_table(), 1e-3).unwrap();
    assert!(report.passed(), "{:?}", report.failures());
    assert_eq!(report.clause("consecutive pearls orthogonal").unwrap().checked, 84);
    assert_eq!(report.hexagon.len(), 85);
}

#[test]
fn conditioning_moves_the_table_slightly() {
    let (c, shift) = load_trefoil_table().conditioned().unwrap();
    assert!(shift < 1e-4, "{shift}");
    let report = validate_semi(&c, 1e-9).unwrap();
    assert!(report.clause("consecutive pearls orthogonal").unwrap().passed());
}

#[test]
fn perturbed_radius_is_reported() {
    let mut t = load_trefoil_table();
    t.pearls[40].radius *= 1.05;
    let report = validate_semi(&t, 1e-3).unwrap();
    assert!(!report.passed());
    assert!(report.failures().iter().any(|f| f.contains("41")), "{:?}", report.failures());
}

#[test]
fn arches_spin_and_certify() {
    for (m, h) in [(2, 0), (2, 1), (3, 2), (4, 3)] {
        let semi = arch(m, h);
        assert!(validate_semi(&semi, 1e-9).unwrap().passed());
        let n = semi.len();
        let mut sn = spin_necklace(&semi).unwrap();
        assert_eq!(sn.len(), PAGES * n + 2 + PAGES * (n - 1));
        let report = sn.certify(DEFAULT_TAU);
        assert!(report.passed(), "arch({m}, {h}): {:?}", report.failures());
    }
}

#[test]
fn equal_pearl_chain_has_tangent_poles() {
    let z = 2f64.sqrt();
    let pearls = (0..3)
        .map(|k| Pearl {
            center: [k as f64 * z, 0.0, z, 0.0],
            radius: 1.0,
        })
        .collect();
    let mut sn = spin_necklace(&SemiNecklace::new(pearls).unwrap()).unwrap();
    let report = sn.certify(DEFAULT_TAU);
    assert!(!report.passed());
    assert!(report.failures().iter().all(|f| f.contains("pole")));
}

#[test]
fn meridians_sit_in_their_pages() {
    let sn = spin_necklace(&load_trefoil_table()).unwrap();
    for level in [0, 40, 84] {
        for page in 0..PAGES {
            let i = sn.meridian_index(level, page);
            assert_eq!(sn.kind(i), PearlKind::Meridian { level, page });
            let (c, _) = sn.center_radius(i);
            let angle = c[3].atan2(c[2]);
            let expected = page as f64 * std::f64::consts::PI / 3.0;
            let diff = (angle - expected).rem_euclid(std::f64::consts::TAU);
            assert!(diff.min(std::f64::consts::TAU - diff) < 1e-12);
        }
    }
}

#[test]
fn hexagon_neighbours_are_orthogonal() {
    let sn = spin_necklace(&toy_ring()).unwrap();
    for page in 0..PAGES {
        let a = sn.meridian_index(0, page);
        let b = sn.meridian_index(0, (page + 1) % PAGES);
        assert_eq!(sn.label(a, b), Some(EdgeLabel::Orthogonal));
        assert!(pair_inner(&sn.spheres()[a], &sn.spheres()[b]).abs() < 1e-12);
        let opposite = sn.meridian_index(0, (page + 3) % PAGES);
        assert_eq!(classify_pair(&sn.spheres()[a], &sn.spheres()[opposite], DEFAULT_TAU), PairClass::Disjoint);
    }
}

#[test]
fn pole_needs_a_ring_around_it() {
    let z = 2f64.sqrt();
    let ring: Vec<_> = (0..6)
        .map(|p| {
            let t = p as f64 * std::f64::consts::PI / 3.0;
            sphere_from_center_radius(&Point4::new(0.0, 0.0, z * t.cos(), z * t.sin()), 1.0).unwrap()
        })
        .collect();
    let pole = solve_pole_pearl(&ring, [1.0, 0.0, 0.0, 0.0]).unwrap();
    for s in &ring {
        assert!(pair_inner(&pole, s).abs() < 1e-12);
    }
    assert!(matches!(
        solve_pole_pearl(&ring[..3], [1.0, 0.0, 0.0, 0.0]),
        Err(Error::ConstructionInfeasible(_))
    ));
}

#[test]
fn empty_semi_necklace_is_rejected() {
    assert!(matches!(SemiNecklace::new(Vec::new()), Err(Error::EmptyNecklace)));
}

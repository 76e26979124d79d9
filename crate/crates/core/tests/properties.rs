use lattice_order::lattice::{scale_to_unit_box, BoxTransform};
use lattice_order::persistence::{
    build_rips_filtration, compute_persistence, enclosing_radius, pairwise_distances, PersistenceDiagram,
};
use lattice_order::scores::{h0_score, h1_sum, interpret, OrderScores, ScoreConfig};
use lattice_order::{Point2, PointCloud, Unit};
use proptest::prelude::*;

fn cloud_strategy(min: usize, max: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), min..=max).prop_filter_map("duplicate points", |pts| {
        PointCloud::new(pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect(), Unit::Normalized).ok()
    })
}

fn sorted_pairs(d: &PersistenceDiagram) -> (Vec<f64>, Vec<(f64, f64)>) {
    (
        d.h0.iter().map(|p| p.death).collect(),
        d.h1.iter().map(|p| (p.birth, p.death)).collect(),
    )
}

/// L-infinity bottleneck distance between the finite pairs of two diagrams
/// (both dimensions matched separately, the larger value returned).
fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> f64 {
    let dims = [
        (a.h0.iter().map(|p| (p.birth, p.death)).collect::<Vec<_>>(), b.h0.iter().map(|p| (p.birth, p.death)).collect::<Vec<_>>()),
        (a.h1.iter().map(|p| (p.birth, p.death)).collect(), b.h1.iter().map(|p| (p.birth, p.death)).collect()),
    ];
    dims.iter().map(|(x, y)| bottleneck_1d(x, y)).fold(0.0, f64::max)
}

fn bottleneck_1d(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    // Left side: a's points then one diagonal slot per b point; right side mirrored.
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    if size == 0 {
        return 0.0;
    }
    let cost = |i: usize, j: usize| -> f64 {
        match (i < n, j < m) {
            (true, true) => (a[i].0 - b[j].0).abs().max((a[i].1 - b[j].1).abs()),
            (true, false) => (a[i].1 - a[i].0) / 2.0,
            (false, true) => (b[j].1 - b[j].0) / 2.0,
            (false, false) => 0.0,
        }
    };
    let mut candidates: Vec<f64> = (0..size).flat_map(|i| (0..size).map(move |j| (i, j))).map(|(i, j)| cost(i, j)).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let perfect = |delta: f64| -> bool {
        let mut owner: Vec<Option<usize>> = vec![None; size];
        fn augment(i: usize, size: usize, ok: &dyn Fn(usize, usize) -> bool, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
            for j in 0..size {
                if ok(i, j) && !seen[j] {
                    seen[j] = true;
                    if owner[j].is_none_or(|k| augment(k, size, ok, seen, owner)) {
                        owner[j] = Some(i);
                        return true;
                    }
                }
            }
            false
        }
        let ok = |i: usize, j: usize| cost(i, j) <= delta;
        (0..size).all(|i| {
            let mut seen = vec![false; size];
            augment(i, size, &ok, &mut seen, &mut owner)
        })
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

#[test]
fn bottleneck_oracle_sanity() {
    let mk = |h1: &[(f64, f64)]| PersistenceDiagram::from_pairs(1.0, [], h1.iter().copied(), 1);
    assert_eq!(bottleneck(&mk(&[(1.0, 2.0)]), &mk(&[(1.0, 2.0)])), 0.0);
    assert!((bottleneck(&mk(&[(1.0, 2.0)]), &mk(&[(1.1, 2.3)])) - 0.3).abs() < 1e-12);
    // unmatched point goes to the diagonal at half its lifetime
    assert_eq!(bottleneck(&mk(&[(1.0, 2.0)]), &mk(&[])), 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_at_enclosing_radius_is_lossless(cloud in cloud_strategy(3, 30)) {
        let d = pairwise_distances(&cloud);
        let at_radius = compute_persistence(&cloud, Some(enclosing_radius(&d))).unwrap();
        let full = compute_persistence(&cloud, Some(d.max_distance())).unwrap();
        prop_assert_eq!(sorted_pairs(&at_radius), sorted_pairs(&full));
        prop_assert_eq!(at_radius.infinite_h0_count, 1);
    }

    #[test]
    fn isometry_invariance(cloud in cloud_strategy(3, 25), angle in 0.0f64..std::f64::consts::TAU, tx in -5.0f64..5.0, ty in -5.0f64..5.0) {
        let (s, c) = angle.sin_cos();
        let moved: Vec<Point2> = cloud.points().iter().map(|p| Point2::new(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty)).collect();
        let moved = PointCloud::new(moved, Unit::Pixels).unwrap();
        let a = compute_persistence(&cloud, None).unwrap();
        let b = compute_persistence(&moved, None).unwrap();
        // near-ties can split or merge a vanishing pair; compare through the bottleneck distance
        prop_assert!(bottleneck(&a, &b) <= 1e-9);
    }

    #[test]
    fn scale_equivariance(cloud in cloud_strategy(3, 25), lambda in 0.1f64..10.0) {
        let scaled: Vec<Point2> = cloud.points().iter().map(|p| Point2::new(p.x * lambda, p.y * lambda)).collect();
        let scaled = PointCloud::new(scaled, Unit::Pixels).unwrap();
        let a = compute_persistence(&cloud, None).unwrap();
        let b = compute_persistence(&scaled, None).unwrap();
        let a_scaled = PersistenceDiagram::from_pairs(
            a.threshold * lambda,
            a.h0.iter().map(|p| p.death * lambda),
            a.h1.iter().map(|p| (p.birth * lambda, p.death * lambda)),
            a.infinite_h0_count,
        );
        prop_assert!(bottleneck(&a_scaled, &b) <= 1e-9 * lambda);
    }

    #[test]
    fn h1_values_are_edge_lengths(cloud in cloud_strategy(4, 25)) {
        let d = pairwise_distances(&cloud);
        let dgm = compute_persistence(&cloud, None).unwrap();
        let edges: Vec<f64> = build_rips_filtration(&d, f64::INFINITY).unwrap().edges().iter().map(|e| e.value).collect();
        for p in &dgm.h1 {
            prop_assert!(p.death > p.birth && p.birth > 0.0);
            prop_assert!(edges.contains(&p.birth));
            // a triangle enters at its longest edge
            prop_assert!(edges.contains(&p.death));
        }
    }

    #[test]
    fn scores_non_negative(cloud in cloud_strategy(4, 25)) {
        let dgm = compute_persistence(&cloud, None).unwrap();
        prop_assert!(h0_score(&dgm).unwrap() >= 0.0);
        prop_assert!(h1_sum(&dgm) >= 0.0);
    }

    #[test]
    fn unit_box_scaling_is_idempotent(cloud in cloud_strategy(3, 40)) {
        let pixels = PointCloud::new(cloud.points().iter().map(|p| Point2::new(300.0 * p.x + 17.0, 120.0 * p.y - 4.0)).collect(), Unit::Pixels).unwrap();
        let (once, _) = scale_to_unit_box(&pixels).unwrap();
        let (twice, t) = scale_to_unit_box(&once).unwrap();
        prop_assert_eq!(t, BoxTransform::IDENTITY);
        for (a, b) in once.points().iter().zip(twice.points()) {
            prop_assert!((a.x - b.x).abs() <= 1e-12 && (a.y - b.y).abs() <= 1e-12);
        }
    }

    #[test]
    fn interpretation_percentages_sum_to_100(h0_bar in 0.0f64..0.02, h1_bar in -0.5f64..2.0) {
        let s = OrderScores { n: 5, h0_var: h0_bar / 4.0, h0_bar, h1_sum: 0.0, h1_bar };
        let i = interpret(&s, &ScoreConfig::default());
        match (i.percent_square, i.percent_hexagonal) {
            (Some(a), Some(b)) => {
                prop_assert!((a + b - 100.0).abs() < 1e-12);
                prop_assert!((0.0..=100.0).contains(&a));
            }
            (None, None) => prop_assert!(h0_bar >= 0.01),
            _ => prop_assert!(false, "half-defined interpretation"),
        }
    }
}

#[test]
fn stability_under_small_displacements() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    for trial in 0..30 {
        let pts: Vec<Point2> = (0..20).map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let base = PointCloud::new(pts.clone(), Unit::Normalized).unwrap();
        let a = compute_persistence(&base, None).unwrap();
        for eps in [1e-4, 1e-3] {
            let moved: Vec<Point2> = pts
                .iter()
                .map(|p| {
                    let theta = rng.random_range(0.0..std::f64::consts::TAU);
                    let r = eps * rng.random_range(0.0..=1.0);
                    Point2::new(p.x + r * theta.cos(), p.y + r * theta.sin())
                })
                .collect();
            let b = compute_persistence(&PointCloud::new(moved, Unit::Normalized).unwrap(), None).unwrap();
            let db = bottleneck(&a, &b);
            assert!(db <= 2.0 * eps + 1e-12, "trial {trial}: bottleneck {db} > 2*{eps}");
        }
    }
}

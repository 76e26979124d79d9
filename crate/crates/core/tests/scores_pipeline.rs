use std::path::PathBuf;

use lattice_order::lattice::{gen_hexagonal, gen_square, perturb, LatticeSpec, PerturbationSpec};
use lattice_order::persistence::compute_persistence;
use lattice_order::scores::{h0_score, h1_score, OrderScores};
use lattice_order::{Point2, PointCloud, Unit};
use serde_json::json;

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compare against a stored golden file; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, value: &serde_json::Value) {
    let path = golden_path(name);
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &text).unwrap();
    }
    let stored = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stored, text, "golden mismatch for {name}");
}

#[test]
fn perturbed_square_scores_golden() {
    let square = gen_square(&LatticeSpec::square(5)).unwrap();
    let noisy = perturb(&square, &PerturbationSpec { sigma: 0.05, rng_seed: 1 }).unwrap();
    let dgm = compute_persistence(&noisy, None).unwrap();
    let scores = OrderScores::compute(&dgm, 5).unwrap();
    assert!(scores.h0_bar > 0.0);
    check_golden(
        "perturbed_square_n5_sigma0.05_seed1.json",
        &json!({
            "h0_var": scores.h0_var,
            "h0_bar": scores.h0_bar,
            "h1_sum": scores.h1_sum,
            "h1_bar": scores.h1_bar,
            "h1_pairs": dgm.h1.len(),
        }),
    );
}

#[test]
fn any_noise_breaks_zero_variance() {
    let square = gen_square(&LatticeSpec::square(5)).unwrap();
    for seed in 0..10 {
        let noisy = perturb(&square, &PerturbationSpec { sigma: 0.05, rng_seed: seed }).unwrap();
        let dgm = compute_persistence(&noisy, None).unwrap();
        assert!(h0_score(&dgm).unwrap() > 0.0);
    }
}

#[test]
fn square_to_hexagonal_interpolation_decreases_h1() {
    for n in [5, 8] {
        let sq = gen_square(&LatticeSpec::square(n)).unwrap();
        let hex = gen_hexagonal(&LatticeSpec::hexagonal(n)).unwrap();
        let scores: Vec<f64> = (0..=10)
            .map(|step| {
                let t = step as f64 / 10.0;
                let pts = sq
                    .points()
                    .iter()
                    .zip(hex.points())
                    .map(|(a, b)| Point2::new((1.0 - t) * a.x + t * b.x, (1.0 - t) * a.y + t * b.y))
                    .collect();
                let cloud = PointCloud::new(pts, Unit::Normalized).unwrap();
                h1_score(&compute_persistence(&cloud, None).unwrap(), n).unwrap()
            })
            .collect();
        assert!((scores[0] - 1.0).abs() < 1e-9, "{scores:?}");
        assert!(scores[10] < 1e-9, "{scores:?}");
        for w in scores.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "n = {n}: not monotone: {scores:?}");
        }
    }
}

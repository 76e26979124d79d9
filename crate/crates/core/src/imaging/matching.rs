use serde::{Deserialize, Serialize};

use crate::cloud::{Point2, PointCloud};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub nominal: [f64; 2],
    #[serde(rename = "true")]
    pub true_center: [f64; 2],
    pub dx: f64,
    pub dy: f64,
}

/// Nominal-to-true correspondence: matched pairs with their displacement,
/// nominal points without a partner ("missed" strikes) and true points
/// without one ("extra" detections).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub matched: Vec<MatchedPair>,
    pub missed: Vec<[f64; 2]>,
    pub extra: Vec<[f64; 2]>,
}

/// Index of the nearest point in `to` for every point of `from`; ties go to
/// the lower index.
fn nearest(from: &[Point2], to: &[Point2]) -> Vec<(usize, f64)> {
    from.iter()
        .map(|p| {
            to.iter()
                .enumerate()
                .map(|(j, q)| (j, p.dist(q)))
                .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
        })
        .collect()
}

/// Pair points that are each other's nearest neighbor and lie within `max_dist`.
pub fn match_grids(nominal: &PointCloud, true_centers: &PointCloud, max_dist: f64) -> Result<MatchReport> {
    if nominal.unit() != true_centers.unit() {
        return Err(Error::UnitMismatch(nominal.unit().to_string(), true_centers.unit().to_string()));
    }
    if max_dist.is_nan() || max_dist < 0.0 {
        return Err(Error::InvalidParameter(format!("max_dist = {max_dist} must be >= 0")));
    }
    let (a, b) = (nominal.points(), true_centers.points());
    let ab = nearest(a, b);
    let ba = nearest(b, a);
    let mut b_used = vec![false; b.len()];
    let mut matched = Vec::new();
    let mut missed = Vec::new();
    for (i, &(j, d)) in ab.iter().enumerate() {
        if ba[j].0 == i && d <= max_dist {
            b_used[j] = true;
            matched.push(MatchedPair {
                nominal: [a[i].x, a[i].y],
                true_center: [b[j].x, b[j].y],
                dx: b[j].x - a[i].x,
                dy: b[j].y - a[i].y,
            });
        } else {
            missed.push([a[i].x, a[i].y]);
        }
    }
    let extra = b
        .iter()
        .zip(&b_used)
        .filter(|(_, &used)| !used)
        .map(|(p, _)| [p.x, p.y])
        .collect();
    Ok(MatchReport { matched, missed, extra })
}

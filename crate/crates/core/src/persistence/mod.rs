//! Vietoris–Rips persistence in dimensions 0 and 1 under the Euclidean
//! distance filtration: an edge `(i, j)` enters at `d(i, j)` and a triangle at
//! the longest of its three edges.

mod distance;
mod filtration;
mod h0;
mod h1;

use serde::{Deserialize, Serialize};

use crate::cloud::PointCloud;
use crate::error::{Error, Result};

pub use distance::{enclosing_radius, pairwise_distances, DistanceMatrix};
pub use filtration::{build_rips_filtration, Edge, RipsFiltration, Simplex};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PersistencePair {
    pub dim: u8,
    pub birth: f64,
    pub death: f64,
}

impl PersistencePair {
    pub fn lifetime(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_infinite()
    }
}

/// Finite 0D and 1D pairs plus the number of 0D classes that never die.
///
/// Zero-persistence pairs are never stored. `h0` is sorted by death and `h1`
/// by `(birth, death)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram {
    pub threshold: f64,
    pub h0: Vec<PersistencePair>,
    pub h1: Vec<PersistencePair>,
    pub infinite_h0_count: usize,
}

impl PersistenceDiagram {
    /// Build from raw finite pairs, applying the drop/sort conventions.
    pub fn from_pairs(
        threshold: f64,
        h0_deaths: impl IntoIterator<Item = f64>,
        h1: impl IntoIterator<Item = (f64, f64)>,
        infinite_h0_count: usize,
    ) -> Self {
        let mut h0: Vec<PersistencePair> = h0_deaths
            .into_iter()
            .filter(|&d| d > 0.0)
            .map(|death| PersistencePair { dim: 0, birth: 0.0, death })
            .collect();
        h0.sort_by(|a, b| a.death.total_cmp(&b.death));
        let mut h1: Vec<PersistencePair> = h1
            .into_iter()
            .filter(|(b, d)| d > b)
            .map(|(birth, death)| PersistencePair { dim: 1, birth, death })
            .collect();
        h1.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        Self {
            threshold,
            h0,
            h1,
            infinite_h0_count,
        }
    }

    /// All pairs, infinite 0D bars included.
    pub fn pairs(&self) -> impl Iterator<Item = PersistencePair> + '_ {
        self.h0
            .iter()
            .copied()
            .chain((0..self.infinite_h0_count).map(|_| PersistencePair {
                dim: 0,
                birth: 0.0,
                death: f64::INFINITY,
            }))
            .chain(self.h1.iter().copied())
    }

    /// Number of 0D classes alive at parameter `t` (born at or before `t`,
    /// dying strictly after it).
    pub fn components_alive_at(&self, t: f64) -> usize {
        self.infinite_h0_count + self.h0.iter().filter(|p| p.death > t).count()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            threshold: self.threshold,
            h0: self.h0.iter().map(|p| [p.birth, p.death]).collect(),
            h0_infinite: self.infinite_h0_count,
            h1: self.h1.iter().map(|p| [p.birth, p.death]).collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        for pair in json.h0.iter().chain(&json.h1) {
            if !(pair[0].is_finite() && pair[1].is_finite() && pair[1] >= pair[0] && pair[0] >= 0.0) {
                return Err(Error::Format(format!("invalid pair {pair:?}")));
            }
        }
        if json.h0.iter().any(|p| p[0] != 0.0) {
            return Err(Error::Format("0D pairs must be born at 0".into()));
        }
        Ok(Self::from_pairs(
            json.threshold,
            json.h0.iter().map(|p| p[1]),
            json.h1.iter().map(|p| (p[0], p[1])),
            json.h0_infinite,
        ))
    }
}

/// Serialized diagram: the contract between CLI stages.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub threshold: f64,
    pub h0: Vec<[f64; 2]>,
    pub h0_infinite: usize,
    pub h1: Vec<[f64; 2]>,
}

/// 0D pairs of the full (untruncated) filtration: deaths are the Euclidean
/// MST edge weights, followed by the single infinite bar.
pub fn compute_h0(d: &DistanceMatrix) -> Vec<PersistencePair> {
    let filtration = build_rips_filtration(d, f64::INFINITY).expect("infinite threshold is valid");
    h0_pairs(&filtration).0
}

fn h0_pairs(filtration: &RipsFiltration<'_>) -> (Vec<PersistencePair>, Vec<bool>) {
    let sweep = h0::sweep(filtration.vertex_count(), filtration.edges());
    let mut pairs: Vec<PersistencePair> = sweep
        .deaths
        .iter()
        .filter(|&&d| d > 0.0)
        .map(|&death| PersistencePair { dim: 0, birth: 0.0, death })
        .collect();
    pairs.extend((0..sweep.components).map(|_| PersistencePair {
        dim: 0,
        birth: 0.0,
        death: f64::INFINITY,
    }));
    (pairs, sweep.merging)
}

/// 1D pairs of `filtration`, zero-persistence pairs dropped, sorted by
/// `(birth, death)`.
///
/// 1-cycles still alive at the threshold have no finite death and are left
/// out. When the threshold reaches the enclosing radius no such cycle can
/// exist, and finding one is reported as [`Error::UnpairedCycle`].
pub fn compute_h1(filtration: &RipsFiltration<'_>) -> Result<Vec<PersistencePair>> {
    let sweep = h0::sweep(filtration.vertex_count(), filtration.edges());
    h1_pairs(filtration, &sweep.merging)
}

fn h1_pairs(filtration: &RipsFiltration<'_>, merging: &[bool]) -> Result<Vec<PersistencePair>> {
    let reduction = h1::reduce(filtration, merging);
    let radius = enclosing_radius(filtration.distances());
    if reduction.essential > 0 && filtration.threshold() >= radius {
        return Err(Error::UnpairedCycle {
            count: reduction.essential,
            threshold: filtration.threshold(),
        });
    }
    Ok(PersistenceDiagram::from_pairs(0.0, [], reduction.pairs, 0).h1)
}

/// Full 0D/1D diagram of `cloud`. The threshold defaults to the enclosing
/// radius, which loses nothing in these dimensions.
pub fn compute_persistence(cloud: &PointCloud, threshold: Option<f64>) -> Result<PersistenceDiagram> {
    let d = pairwise_distances(cloud);
    let threshold = match threshold {
        Some(t) => t,
        None => enclosing_radius(&d),
    };
    let filtration = build_rips_filtration(&d, threshold)?;
    let (h0, merging) = h0_pairs(&filtration);
    let h1 = h1_pairs(&filtration, &merging)?;
    let infinite = h0.iter().filter(|p| p.is_infinite()).count();
    Ok(PersistenceDiagram {
        threshold,
        h0: h0.into_iter().filter(|p| !p.is_infinite()).collect(),
        h1,
        infinite_h0_count: infinite,
    })
}

use crate::cloud::PointCloud;

/// Symmetric Euclidean distance matrix stored as its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    upper: Vec<f64>,
}

impl DistanceMatrix {
    /// Build from a condensed row-major upper triangle (`d(0,1), d(0,2), ..., d(n-2,n-1)`).
    pub fn from_condensed(n: usize, upper: Vec<f64>) -> Option<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected || upper.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return None;
        }
        Some(Self { n, upper })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => 0.0,
            Less => self.upper[self.index(i, j)],
            Greater => self.upper[self.index(j, i)],
        }
    }

    /// Largest entry, or 0 for fewer than two points.
    pub fn max_distance(&self) -> f64 {
        self.upper.iter().copied().fold(0.0, f64::max)
    }

    /// Row `i` of the full matrix.
    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }
}

pub fn pairwise_distances(cloud: &PointCloud) -> DistanceMatrix {
    let pts = cloud.points();
    let n = pts.len();
    let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let dx = a.x - b.x;
            let dy = a.y - b.y;
            upper.push((dx * dx + dy * dy).sqrt());
        }
    }
    DistanceMatrix { n, upper }
}

/// `min_i max_j d(i, j)`. Above this value the Rips complex is a cone over the
/// minimizing point and carries no homology beyond dimension 0.
pub fn enclosing_radius(d: &DistanceMatrix) -> f64 {
    if d.is_empty() {
        return 0.0;
    }
    (0..d.len())
        .map(|i| (0..d.len()).map(|j| d.get(i, j)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

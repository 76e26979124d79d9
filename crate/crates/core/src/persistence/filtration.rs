//! Vietoris–Rips filtration up to dimension 2.
//!
//! Simplices are totally ordered by `(value, dimension, vertex tuple)`, which
//! is a valid filtration order: a face never has a larger value than its
//! coface, and on ties the lower dimension comes first.

use std::cmp::Ordering;

use super::distance::DistanceMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub value: f64,
    pub u: u32,
    pub v: u32,
}

impl Edge {
    pub(crate) fn cmp_order(&self, other: &Edge) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.u.cmp(&other.u))
            .then(self.v.cmp(&other.v))
    }
}

/// A simplex of the Rips complex with its appearance value. Vertices are
/// stored in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    pub value: f64,
    pub vertices: Vec<u32>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    fn cmp_order(&self, other: &Simplex) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// The Rips filtration of a distance matrix truncated at `threshold`.
///
/// Edges are materialized in filtration order; triangles are left implicit
/// (they are enumerated on demand from the distance matrix) because their
/// count grows cubically with the number of points.
#[derive(Clone, Debug)]
pub struct RipsFiltration<'a> {
    dist: &'a DistanceMatrix,
    threshold: f64,
    edges: Vec<Edge>,
}

pub fn build_rips_filtration(d: &DistanceMatrix, threshold: f64) -> Result<RipsFiltration<'_>> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::InvalidThreshold(threshold));
    }
    let n = d.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let value = d.get(u, v);
            if value <= threshold {
                edges.push(Edge {
                    value,
                    u: u as u32,
                    v: v as u32,
                });
            }
        }
    }
    edges.sort_unstable_by(Edge::cmp_order);
    Ok(RipsFiltration {
        dist: d,
        threshold,
        edges,
    })
}

impl<'a> RipsFiltration<'a> {
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn distances(&self) -> &'a DistanceMatrix {
        self.dist
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }

    /// Edges in filtration order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        self.for_each_triangle(|_, _| count += 1);
        count
    }

    fn for_each_triangle(&self, mut f: impl FnMut([u32; 3], f64)) {
        let d = self.dist;
        let n = d.len();
        for a in 0..n {
            for b in a + 1..n {
                let ab = d.get(a, b);
                if ab > self.threshold {
                    continue;
                }
                for c in b + 1..n {
                    let value = ab.max(d.get(a, c)).max(d.get(b, c));
                    if value <= self.threshold {
                        f([a as u32, b as u32, c as u32], value);
                    }
                }
            }
        }
    }

    /// Every simplex of dimension 0–2, in filtration order.
    ///
    /// This materializes all triangles; intended for small inputs and
    /// inspection rather than for the persistence computation itself.
    pub fn simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = (0..self.vertex_count() as u32)
            .map(|v| Simplex {
                value: 0.0,
                vertices: vec![v],
            })
            .collect();
        out.extend(self.edges.iter().map(|e| Simplex {
            value: e.value,
            vertices: vec![e.u, e.v],
        }));
        self.for_each_triangle(|t, value| {
            out.push(Simplex {
                value,
                vertices: t.to_vec(),
            })
        });
        out.sort_by(Simplex::cmp_order);
        out
    }
}

//! 1-dimensional persistence by implicit coboundary reduction over Z/2.
//!
//! Columns are edges taken in reverse filtration order; the entries of a
//! column are the triangles containing that edge, and its pivot is the
//! earliest such triangle. The resulting (edge, triangle) pivot pairs are the
//! persistence pairs of the boundary-matrix reduction. Triangles are never
//! stored: a column's coboundary is regenerated from the distance matrix
//! whenever it is needed, and only the (usually trivial) reduction record of
//! each column is kept. Edges that merged components in dimension 0 are
//! skipped outright (clearing); their columns always reduce to zero.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

use super::filtration::{Edge, RipsFiltration};
use super::distance::DistanceMatrix;

/// A triangle keyed by its filtration position.
#[derive(Clone, Copy, Debug)]
struct Triangle {
    value: f64,
    verts: [u32; 3],
}

impl Triangle {
    fn new(value: f64, a: u32, b: u32, c: u32) -> Self {
        let mut verts = [a, b, c];
        verts.sort_unstable();
        Self { value, verts }
    }

    fn code(&self, n: u64) -> u64 {
        let [a, b, c] = self.verts.map(u64::from);
        (a * n + b) * n + c
    }
}

impl PartialEq for Triangle {
    fn eq(&self, other: &Self) -> bool {
        self.verts == other.verts
    }
}

impl Eq for Triangle {}

impl Ord for Triangle {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.verts.cmp(&other.verts))
    }
}

impl PartialOrd for Triangle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Cofacets<'a> {
    dist: &'a DistanceMatrix,
    threshold: f64,
}

impl Cofacets<'_> {
    fn for_each(&self, e: &Edge, mut f: impl FnMut(Triangle)) {
        let (u, v) = (e.u as usize, e.v as usize);
        for k in 0..self.dist.len() {
            if k == u || k == v {
                continue;
            }
            let far = self.dist.get(u, k).max(self.dist.get(v, k));
            if far <= self.threshold {
                f(Triangle::new(e.value.max(far), e.u, e.v, k as u32));
            }
        }
    }

    fn min(&self, e: &Edge) -> Option<Triangle> {
        let mut best: Option<Triangle> = None;
        self.for_each(e, |t| {
            if best.is_none_or(|b| t < b) {
                best = Some(t);
            }
        });
        best
    }
}

/// Pops the pivot (minimum entry with odd multiplicity) and leaves it on the heap.
fn pivot(heap: &mut BinaryHeap<Reverse<Triangle>>) -> Option<Triangle> {
    while let Some(Reverse(top)) = heap.pop() {
        let mut count = 1usize;
        while heap.peek().is_some_and(|Reverse(t)| *t == top) {
            heap.pop();
            count += 1;
        }
        if count % 2 == 1 {
            heap.push(Reverse(top));
            return Some(top);
        }
    }
    None
}

/// Raw output of the reduction: finite pairs (birth, death) including
/// zero-persistence ones, plus the number of essential 1-cycles.
#[derive(Clone, Debug, Default)]
pub(crate) struct H1Reduction {
    pub pairs: Vec<(f64, f64)>,
    pub essential: usize,
}

/// `merging[i]` marks edges that killed a 0D class (those columns are cleared).
pub(crate) fn reduce(filtration: &RipsFiltration<'_>, merging: &[bool]) -> H1Reduction {
    let edges = filtration.edges();
    let dist = filtration.distances();
    let n = dist.len() as u64;
    let cofacets = Cofacets {
        dist,
        threshold: filtration.threshold(),
    };

    // triangle code -> column (edge index) owning it as pivot
    let mut owner: HashMap<u64, usize> = HashMap::new();
    // reduction record for columns that needed additions (mod-2 set of edges)
    let mut combos: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut out = H1Reduction::default();

    for col in (0..edges.len()).rev() {
        if merging[col] {
            continue;
        }
        let edge = &edges[col];
        let Some(first) = cofacets.min(edge) else {
            out.essential += 1;
            continue;
        };
        if let std::collections::hash_map::Entry::Vacant(slot) = owner.entry(first.code(n)) {
            slot.insert(col);
            out.pairs.push((edge.value, first.value));
            continue;
        }

        let mut heap = BinaryHeap::new();
        cofacets.for_each(edge, |t| heap.push(Reverse(t)));
        let mut combo = vec![col];
        let mut paired = None;
        while let Some(p) = pivot(&mut heap) {
            match owner.get(&p.code(n)) {
                None => {
                    paired = Some(p);
                    break;
                }
                Some(&other) => {
                    let other_combo = combos.get(&other).map(|c| c.as_slice());
                    let added = other_combo.unwrap_or(std::slice::from_ref(&other));
                    for &e in added {
                        cofacets.for_each(&edges[e], |t| heap.push(Reverse(t)));
                    }
                    combo.extend_from_slice(added);
                }
            }
        }
        match paired {
            Some(p) => {
                owner.insert(p.code(n), col);
                out.pairs.push((edge.value, p.value));
                combos.insert(col, reduce_mod2(combo));
            }
            None => out.essential += 1,
        }
    }
    out
}

fn reduce_mod2(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    let mut out: Vec<usize> = Vec::with_capacity(v.len());
    for x in v {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod2_cancellation() {
        assert_eq!(reduce_mod2(vec![3, 1, 3, 2, 2, 2]), vec![1, 2]);
        assert!(reduce_mod2(vec![5, 5]).is_empty());
    }

    #[test]
    fn pivot_skips_even_multiplicity() {
        let t = |v: f64, c: u32| Triangle::new(v, 0, 1, c);
        let mut heap: BinaryHeap<_> = [t(1.0, 2), t(1.0, 2), t(2.0, 3), t(3.0, 4)].into_iter().map(Reverse).collect();
        assert_eq!(pivot(&mut heap).unwrap().verts, [0, 1, 3]);
        // pivot stays on the heap
        assert_eq!(heap.len(), 2);
        let mut heap: BinaryHeap<_> = [t(1.0, 2), t(1.0, 2)].into_iter().map(Reverse).collect();
        assert!(pivot(&mut heap).is_none());
    }
}

//! 0-dimensional persistence: Kruskal over the filtration's edges.

use super::filtration::Edge;

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (ra, rb) = (self.rank[a as usize], self.rank[b as usize]);
        let (hi, lo) = if ra >= rb { (a, b) } else { (b, a) };
        self.parent[lo as usize] = hi;
        if ra == rb {
            self.rank[hi as usize] = ra.saturating_add(1);
        }
        true
    }
}

/// Result of sweeping the edges: merge values (MST edge weights, in filtration
/// order), which edges merged components, and how many components remain.
#[derive(Clone, Debug)]
pub(crate) struct ComponentSweep {
    pub deaths: Vec<f64>,
    pub merging: Vec<bool>,
    pub components: usize,
}

/// `edges` must be in filtration order.
pub(crate) fn sweep(n: usize, edges: &[Edge]) -> ComponentSweep {
    let mut uf = UnionFind::new(n);
    let mut deaths = Vec::with_capacity(n.saturating_sub(1));
    let mut merging = vec![false; edges.len()];
    let mut components = n;
    for (idx, e) in edges.iter().enumerate() {
        if components == 1 {
            break;
        }
        if uf.union(e.u, e.v) {
            deaths.push(e.value);
            merging[idx] = true;
            components -= 1;
        }
    }
    ComponentSweep {
        deaths,
        merging,
        components,
    }
}

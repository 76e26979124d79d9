//! Brute-force reference implementations for checking the persistence engine
//! on small clouds.
//!
//! Nothing here is shared with [`crate::persistence`]: distances, filtration
//! construction and the reduction are written out again in the most direct
//! form possible.

use std::collections::VecDeque;

use crate::cloud::PointCloud;
use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;

pub const MAX_ORACLE_POINTS: usize = 16;

fn distance_table(cloud: &PointCloud) -> Vec<Vec<f64>> {
    let pts = cloud.points();
    pts.iter()
        .map(|a| {
            pts.iter()
                .map(|b| {
                    let dx = a.x - b.x;
                    let dy = a.y - b.y;
                    (dx * dx + dy * dy).sqrt()
                })
                .collect()
        })
        .collect()
}

/// Complete Rips filtration (no threshold), textbook column reduction of the
/// full boundary matrix over Z/2 with no clearing or other shortcuts.
pub fn naive_persistence(cloud: &PointCloud) -> Result<PersistenceDiagram> {
    let n = cloud.len();
    if n > MAX_ORACLE_POINTS {
        return Err(Error::TooLarge {
            count: n,
            max: MAX_ORACLE_POINTS,
        });
    }
    let d = distance_table(cloud);

    let mut simplices: Vec<(f64, Vec<usize>)> = Vec::new();
    for i in 0..n {
        simplices.push((0.0, vec![i]));
    }
    for (i, row) in d.iter().enumerate() {
        for (j, &dij) in row.iter().enumerate().skip(i + 1) {
            simplices.push((dij, vec![i, j]));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = d[i][j].max(d[i][k]).max(d[j][k]);
                simplices.push((v, vec![i, j, k]));
            }
        }
    }
    simplices.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.len().cmp(&b.1.len()))
            .then(a.1.cmp(&b.1))
    });

    let position = |verts: &[usize]| simplices.iter().position(|s| s.1 == verts).unwrap();
    let mut columns: Vec<Vec<bool>> = Vec::with_capacity(simplices.len());
    for (_, verts) in &simplices {
        let mut col = vec![false; simplices.len()];
        if verts.len() > 1 {
            for skip in 0..verts.len() {
                let face: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                col[position(&face)] = true;
            }
        }
        columns.push(col);
    }

    let low = |col: &Vec<bool>| col.iter().rposition(|&x| x);
    for j in 0..columns.len() {
        while let Some(l) = low(&columns[j]) {
            let Some(k) = (0..j).find(|&k| low(&columns[k]) == Some(l)) else {
                break;
            };
            let other = columns[k].clone();
            for (x, y) in columns[j].iter_mut().zip(other) {
                *x ^= y;
            }
        }
    }

    let mut is_low = vec![false; simplices.len()];
    let mut h0 = Vec::new();
    let mut h1 = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if let Some(i) = low(col) {
            is_low[i] = true;
            match simplices[i].1.len() {
                1 => h0.push(simplices[j].0),
                2 => h1.push((simplices[i].0, simplices[j].0)),
                _ => {}
            }
        }
    }
    let infinite = (0..simplices.len())
        .filter(|&i| simplices[i].1.len() == 1 && !is_low[i] && low(&columns[i]).is_none())
        .count();
    let threshold = d.iter().flatten().copied().fold(0.0, f64::max);
    Ok(PersistenceDiagram::from_pairs(threshold, h0, h1, infinite))
}

/// Connected components of the graph with edges `d(i, j) <= t`, by breadth-first search.
pub fn components_at_threshold(cloud: &PointCloud, t: f64) -> usize {
    let d = distance_table(cloud);
    let n = d.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && d[i][j] <= t {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    count
}

//! Exhaustive counting for small graphs, used as ground truth.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Graph};

pub const DEFAULT_DIMER_CAP: usize = 16;
pub const DEFAULT_TREE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub count: BigUint,
    /// Partial configurations visited.
    pub examined: u64,
    pub elapsed: Duration,
}

/// Counts perfect matchings, with parallel edges counted separately.
/// Blacks are matched in index order; the state is the set of used whites.
pub fn enum_dimers(g: &BipartiteGraph, cap: usize) -> Result<EnumerationReport> {
    let start = Instant::now();
    let (nb, nw) = (g.num_black(), g.num_white());
    if nb + nw > 2 * cap {
        return Err(Error::SizeCap {
            size: nb + nw,
            cap: 2 * cap,
        });
    }
    if nw > 63 {
        return Err(Error::SizeCap { size: nw, cap: 63 });
    }
    if nb != nw {
        return Ok(EnumerationReport {
            count: BigUint::zero(),
            examined: 0,
            elapsed: start.elapsed(),
        });
    }
    let mult = g.multiplicities();
    let mut layer: HashMap<u64, BigUint> = HashMap::from([(0, BigUint::one())]);
    let mut examined = 0u64;
    for row in &mult {
        let mut next: HashMap<u64, BigUint> = HashMap::new();
        for (&used, ways) in &layer {
            examined += 1;
            for (w, &m) in row.iter().enumerate() {
                if m == 0 || used & (1 << w) != 0 {
                    continue;
                }
                *next.entry(used | (1 << w)).or_default() += ways * m;
            }
        }
        layer = next;
    }
    let count = layer.into_values().fold(BigUint::zero(), |a, b| a + b);
    Ok(EnumerationReport {
        count,
        examined,
        elapsed: start.elapsed(),
    })
}

/// Symmetric multiplicity matrix without loops, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Multi {
    n: usize,
    m: Vec<u32>,
}

impl Multi {
    fn at(&self, i: usize, j: usize) -> u32 {
        self.m[i * self.n + j]
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && self.at(v, u) > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Removes vertex `v` after folding its edges into `into` (contraction)
    /// or discarding them (`into == None`).
    fn without(&self, v: usize, into: Option<usize>) -> Multi {
        let mut rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j)).collect())
            .collect();
        if let Some(u) = into {
            for j in 0..self.n {
                rows[u][j] += rows[v][j];
                rows[j][u] += rows[j][v];
            }
            rows[u][u] = 0;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        let n = keep.len();
        let mut m = Vec::with_capacity(n * n);
        for &i in &keep {
            for &j in &keep {
                m.push(rows[i][j]);
            }
        }
        Multi { n, m }
    }

    fn without_edge(&self, i: usize, j: usize) -> Multi {
        let mut out = self.clone();
        out.m[i * self.n + j] = 0;
        out.m[j * self.n + i] = 0;
        out
    }
}

struct TreeCounter {
    memo: HashMap<Multi, BigUint>,
    examined: u64,
}

impl TreeCounter {
    fn count(&mut self, g: &Multi) -> BigUint {
        if g.n <= 1 {
            return BigUint::one();
        }
        if let Some(c) = self.memo.get(g) {
            return c.clone();
        }
        self.examined += 1;
        let result = if !g.connected() {
            BigUint::zero()
        } else if let Some((v, m)) = (0..g.n).find_map(|v| {
            let nbrs: Vec<usize> = (0..g.n).filter(|&u| g.at(v, u) > 0).collect();
            (nbrs.len() == 1).then(|| (v, g.at(v, nbrs[0])))
        }) {
            // pendant vertex: one of its parallel edges is in every tree
            self.count(&g.without(v, None)) * m
        } else {
            let (i, j) = (0..g.n)
                .flat_map(|i| (i + 1..g.n).map(move |j| (i, j)))
                .find(|&(i, j)| g.at(i, j) > 0)
                .expect("connected graph with two vertices has an edge");
            let m = g.at(i, j);
            self.count(&g.without_edge(i, j)) + self.count(&g.without(j, Some(i))) * m
        };
        self.memo.insert(g.clone(), result.clone());
        result
    }
}

/// Counts spanning trees by deletion-contraction on parallel classes.
pub fn enum_spanning_trees(g: &Graph, cap: usize) -> Result<EnumerationReport> {
    let start = Instant::now();
    let n = g.num_vertices();
    if n > cap {
        return Err(Error::SizeCap { size: n, cap });
    }
    if n == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut m = vec![0u32; n * n];
    for &(u, v) in g.edges() {
        if u != v {
            m[u * n + v] += 1;
            m[v * n + u] += 1;
        }
    }
    let mut counter = TreeCounter {
        memo: HashMap::new(),
        examined: 0,
    };
    let count = counter.count(&Multi { n, m });
    Ok(EnumerationReport {
        count,
        examined: counter.examined,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn grid(k: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let v = i * k + j;
                if j + 1 < k {
                    edges.push((v, v + 1));
                }
                if i + 1 < k {
                    edges.push((v, v + k));
                }
            }
        }
        Graph::new(k * k, edges).unwrap()
    }

    #[test]
    fn dimers() {
        let c4 = BipartiteGraph::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(enum_dimers(&c4, 16).unwrap().count, BigUint::from(2u32));
        let doubled: Vec<_> = c4.edges().iter().flat_map(|&e| [e, e]).collect();
        let weave = BipartiteGraph::new(2, 2, doubled).unwrap();
        assert_eq!(enum_dimers(&weave, 16).unwrap().count, BigUint::from(8u32));
        let odd = BipartiteGraph::new(2, 1, vec![(0, 0), (0, 1)]).unwrap();
        assert!(enum_dimers(&odd, 16).unwrap().count.is_zero());
        let big = BipartiteGraph::new(17, 17, vec![]).unwrap();
        assert!(matches!(enum_dimers(&big, 16), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn trees() {
        assert_eq!(enum_spanning_trees(&cycle(3), 10).unwrap().count, BigUint::from(3u32));
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(enum_spanning_trees(&k4, 10).unwrap().count, BigUint::from(16u32));
        let multi = Graph::new(2, vec![(0, 1); 5]).unwrap();
        assert_eq!(enum_spanning_trees(&multi, 10).unwrap().count, BigUint::from(5u32));
        // 3x3 grid has 192 spanning trees
        assert_eq!(enum_spanning_trees(&grid(3), 10).unwrap().count, BigUint::from(192u32));
        let split = Graph::new(3, vec![(0, 1)]).unwrap();
        assert_eq!(enum_spanning_trees(&split, 10), Err(Error::Disconnected));
        assert!(matches!(
            enum_spanning_trees(&cycle(11), 10),
            Err(Error::SizeCap { .. })
        ));
    }
}

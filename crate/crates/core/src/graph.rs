//! Finite multigraphs used by the tree counters and the enumeration oracles.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected multigraph on vertices `0..n`. Loops are allowed and never
/// belong to a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= num_vertices || v >= num_vertices)
        {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {num_vertices} vertices"
            )));
        }
        Ok(Self {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.num_vertices];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.num_vertices
    }

    /// Graph Laplacian as a dense integer matrix; loops contribute nothing.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.num_vertices;
        let mut lap = vec![vec![0i64; n]; n];
        for &(u, v) in &self.edges {
            if u == v {
                continue;
            }
            lap[u][u] += 1;
            lap[v][v] += 1;
            lap[u][v] -= 1;
            lap[v][u] -= 1;
        }
        lap
    }

    pub fn delete_edge(&self, e: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Graph {
            num_vertices: self.num_vertices,
            edges,
        }
    }

    /// Contracts edge `e`, merging its endpoints into the lower index. Other
    /// edges between the two endpoints become loops.
    pub fn contract_edge(&self, e: usize) -> Graph {
        let (a, b) = self.edges[e];
        let (keep, gone) = (a.min(b), a.max(b));
        if keep == gone {
            return self.delete_edge(e);
        }
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        Graph {
            num_vertices: self.num_vertices - 1,
            edges,
        }
    }
}

/// Finite bipartite multigraph; edges are stored as `(white, black)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    num_black: usize,
    num_white: usize,
    edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(num_black: usize, num_white: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(w, b)) = edges
            .iter()
            .find(|&&(w, b)| w >= num_white || b >= num_black)
        {
            return Err(Error::InvalidGraph(format!(
                "edge (white {w}, black {b}) out of range"
            )));
        }
        Ok(Self {
            num_black,
            num_white,
            edges,
        })
    }

    pub fn num_black(&self) -> usize {
        self.num_black
    }

    pub fn num_white(&self) -> usize {
        self.num_white
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge multiplicity matrix indexed `[black][white]`.
    pub fn multiplicities(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.num_white]; self.num_black];
        for &(w, b) in &self.edges {
            m[b][w] += 1;
        }
        m
    }
}

/// Random connected multigraph: a random tree on `num_vertices` vertices
/// plus `extra` further edges, which may be parallel edges or loops.
pub fn random_connected_multigraph<R: Rng + ?Sized>(rng: &mut R, num_vertices: usize, extra: usize) -> Graph {
    assert!(num_vertices >= 1);
    let mut edges: Vec<(usize, usize)> = (1..num_vertices).map(|v| (rng.random_range(0..v), v)).collect();
    for _ in 0..extra {
        edges.push((rng.random_range(0..num_vertices), rng.random_range(0..num_vertices)));
    }
    edges.shuffle(rng);
    Graph::new(num_vertices, edges).expect("endpoints in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_ignores_loops() {
        let g = Graph::new(2, vec![(0, 1), (0, 0), (0, 1)]).unwrap();
        assert_eq!(g.laplacian(), vec![vec![2, -2], vec![-2, 2]]);
    }

    #[test]
    fn contraction_turns_parallel_edges_into_loops() {
        let g = Graph::new(3, vec![(0, 1), (1, 0), (1, 2)]).unwrap();
        let c = g.contract_edge(0);
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.edges(), &[(0, 0), (0, 1)]);
    }

    #[test]
    fn out_of_range_edge_rejected() {
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
        assert!(BipartiteGraph::new(1, 1, vec![(1, 0)]).is_err());
    }
}

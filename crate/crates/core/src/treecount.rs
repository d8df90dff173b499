//! Spanning-tree counts, knot determinants of alternating diagrams and
//! determinant densities of growing patches.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact;
use crate::graph::Graph;
use crate::torus::{patch, ToroidalGraph};

/// Vertex count up to which exact counts are used.
pub const DEFAULT_EXACT_CAP: usize = 400;

/// Matrix-Tree theorem with the last row and column deleted.
pub fn tree_count_exact(g: &Graph, cap: usize) -> Result<BigUint> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::Disconnected);
    }
    tree_count_exact_deleting(g, cap, n - 1)
}

/// Matrix-Tree theorem with row and column `k` deleted.
pub fn tree_count_exact_deleting(g: &Graph, cap: usize, k: usize) -> Result<BigUint> {
    let n = g.num_vertices();
    if n > cap {
        return Err(Error::SizeCap { size: n, cap });
    }
    if k >= n {
        return Err(Error::InvalidArgument(format!("vertex {k} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(BigUint::one());
    }
    let lap = g.laplacian();
    let minor: Vec<Vec<i64>> = (0..n)
        .filter(|&i| i != k)
        .map(|i| (0..n).filter(|&j| j != k).map(|j| lap[i][j]).collect())
        .collect();
    Ok(exact::abs_big(exact::det_exact(&minor)))
}

/// Reverse Cuthill-McKee order of a connected graph.
fn rcm_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let bfs_last = |start: usize| -> (Vec<usize>, usize) {
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&u| !seen[u]).collect();
            next.sort_by_key(|&u| (adj[u].len(), u));
            next.dedup();
            for u in next {
                seen[u] = true;
                queue.push_back(u);
            }
        }
        let last = *order.last().expect("nonempty");
        (order, last)
    };
    let start = (0..n).min_by_key(|&v| (adj[v].len(), v)).expect("nonempty graph");
    // one sweep towards a peripheral vertex
    let (_, far) = bfs_last(start);
    let (mut order, _) = bfs_last(far);
    // vertices unreachable from the start still need a slot
    if order.len() < n {
        let mut seen = vec![false; n];
        for &v in &order {
            seen[v] = true;
        }
        order.extend((0..n).filter(|&v| !seen[v]));
    }
    order.reverse();
    order
}

/// `log τ(G)` from an LDLᵀ factorization of the reduced Laplacian in
/// reverse Cuthill-McKee order, stored as a band.
pub fn log_tree_count(g: &Graph) -> Result<f64> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(0.0);
    }
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .enumerate()
        .map(|(v, nb)| nb.into_iter().filter(|&u| u != v).collect())
        .collect();
    let order = rcm_order(&adj);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // drop the last vertex in the new order
    let m = n - 1;
    let mut bw = 0;
    for &(u, v) in g.edges() {
        let (a, b) = (pos[u], pos[v]);
        if a != b && a < m && b < m {
            bw = bw.max(a.abs_diff(b));
        }
    }
    // band[i][bw + j - i] holds entry (i, j) for i - bw <= j <= i
    let width = bw + 1;
    let mut band = vec![0.0f64; m * width];
    let at = |i: usize, j: usize| i * width + bw + j - i;
    for &(u, v) in g.edges() {
        let (a, b) = (pos[u], pos[v]);
        if a == b {
            continue;
        }
        if a < m {
            band[at(a, a)] += 1.0;
        }
        if b < m {
            band[at(b, b)] += 1.0;
        }
        if a < m && b < m {
            let (hi, lo) = (a.max(b), a.min(b));
            band[at(hi, lo)] -= 1.0;
        }
    }
    let max_diag = (0..m).map(|i| band[at(i, i)]).fold(0.0, f64::max);
    let mut d = vec![0.0f64; m];
    let mut log_det = 0.0;
    for i in 0..m {
        let lo = i.saturating_sub(bw);
        // L[i][j] for j < i, computed in place
        for j in lo..i {
            let mut s = band[at(i, j)];
            let lo_k = lo.max(j.saturating_sub(bw));
            for k in lo_k..j {
                s -= band[at(i, k)] * band[at(j, k)] * d[k];
            }
            band[at(i, j)] = s / d[j];
        }
        let mut s = band[at(i, i)];
        for k in lo..i {
            let l = band[at(i, k)];
            s -= l * l * d[k];
        }
        if s <= 1e-10 * max_diag {
            return Err(Error::Breakdown(i));
        }
        d[i] = s;
        log_det += s.ln();
    }
    Ok(log_det)
}

/// Determinant of the alternating link whose Tait graph is `tait`.
pub fn knot_determinant(tait: &Graph) -> Result<BigUint> {
    tree_count_exact(tait, DEFAULT_EXACT_CAP)
}

/// Tait graph of the standard trefoil diagram: a triangle.
pub fn trefoil_tait() -> Graph {
    Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).expect("valid")
}

/// Tait graph of the standard figure-eight diagram: a triangle with one
/// edge doubled (the diagram has four crossings).
pub fn figure_eight_tait() -> Graph {
    Graph::new(3, vec![(0, 1), (1, 2), (2, 0), (2, 0)]).expect("valid")
}

/// Tait graph of a one-crossing unknot diagram.
pub fn unknot_tait() -> Graph {
    Graph::new(2, vec![(0, 1)]).expect("valid")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub log_tau: f64,
    pub density: f64,
    pub two_pi_density: f64,
}

pub const DENSITY_HEADER: [&str; 6] = ["n", "vertices", "edges", "log_tau", "density", "two_pi_density"];

/// `log τ` of the patch of order `n`, exact below `exact_cap` vertices.
pub fn density_row(g: &ToroidalGraph, n: usize, exact_cap: usize) -> Result<DensityRow> {
    let h = patch(g, n);
    let graph = h.plane().graph();
    let log_tau = if graph.num_vertices() <= exact_cap {
        exact::ln_biguint(&tree_count_exact(&graph, exact_cap)?)
    } else {
        log_tree_count(&graph)?
    };
    let edges = graph.num_edges();
    // a patch without edges has a single spanning tree and density zero
    let density = if edges == 0 { 0.0 } else { log_tau / edges as f64 };
    Ok(DensityRow {
        n,
        vertices: graph.num_vertices(),
        edges,
        log_tau,
        density,
        two_pi_density: std::f64::consts::TAU * density,
    })
}

/// One row per patch order; rows are computed in parallel.
pub fn density_sweep(g: &ToroidalGraph, ns: &[usize], exact_cap: usize) -> Result<Vec<DensityRow>> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::InvalidArgument("patch orders must be positive".into()));
    }
    ns.par_iter().map(|&n| density_row(g, n, exact_cap)).collect()
}

/// Extrapolates two rows assuming `density(n) = d + c / n`.
pub fn richardson_limit(a: &DensityRow, b: &DensityRow) -> f64 {
    let (na, nb) = (a.n as f64, b.n as f64);
    (nb * b.density - na * a.density) / (nb - na)
}

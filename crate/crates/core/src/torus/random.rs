use rand::seq::SliceRandom;
use rand::Rng;

use crate::geometry::{pair_conflict, zero_length};
use super::{Shift, ToroidalGraph};

/// Random fundamental domain with `num_vertices` vertices: a maximal
/// non-crossing straight-line graph on random points, thinned by deleting
/// edges while the embedding stays cellular.
pub fn random_toroidal_graph<R: Rng + ?Sized>(rng: &mut R, num_vertices: usize) -> ToroidalGraph {
    assert!(num_vertices >= 1);
    loop {
        if let Some(g) = attempt(rng, num_vertices) {
            return g;
        }
    }
}

fn attempt<R: Rng + ?Sized>(rng: &mut R, nv: usize) -> Option<ToroidalGraph> {
    let positions: Vec<[f64; 2]> = (0..nv)
        .map(|_| [rng.random_range(0.05..0.95), rng.random_range(0.05..0.95)])
        .collect();
    let mut candidates: Vec<(usize, usize, Shift)> = Vec::new();
    for u in 0..nv {
        for v in u..nv {
            for sx in -1..=1i64 {
                for sy in -1..=1i64 {
                    // (u, v, s) and (v, u, -s) are the same edge
                    if u == v && (sx, sy) <= (0, 0) {
                        continue;
                    }
                    candidates.push((u, v, [sx, sy]));
                }
            }
        }
    }
    candidates.retain(|e| !zero_length(&positions, e));
    candidates.shuffle(rng);
    let mut edges: Vec<(usize, usize, Shift)> = Vec::new();
    for cand in candidates {
        if pair_conflict(&positions, &cand, &cand, true).is_some() {
            continue;
        }
        if edges
            .iter()
            .all(|e| pair_conflict(&positions, e, &cand, false).is_none())
        {
            edges.push(cand);
        }
    }
    let ids: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let mut graph = ToroidalGraph::from_geometry(ids.clone(), positions.clone(), edges.clone()).ok()?;
    let deletions = rng.random_range(0..=edges.len() / 3);
    for _ in 0..deletions {
        let i = rng.random_range(0..edges.len());
        let mut fewer = edges.clone();
        fewer.remove(i);
        if let Ok(g) = ToroidalGraph::from_geometry(ids.clone(), positions.clone(), fewer.clone()) {
            edges = fewer;
            graph = g;
        }
    }
    Some(graph)
}

//! Finite pieces of the infinite periodic graph.

use serde::Serialize;

use super::{add, Shift, ToroidalGraph};
use crate::embed::{edge_of, Embedding};
use crate::plane::PlaneGraph;

/// The subgraph of the infinite graph induced by the vertices in `n x n`
/// fundamental domains, reduced to its largest component.
#[derive(Debug, Clone)]
pub struct PlanarPatch {
    n: usize,
    plane: PlaneGraph,
    /// Fundamental-domain vertex and domain translation of each vertex.
    cells: Vec<(usize, Shift)>,
    /// Vertices with a neighbour outside the patch in the infinite graph.
    boundary: Vec<bool>,
}

impl PlanarPatch {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn plane(&self) -> &PlaneGraph {
        &self.plane
    }

    pub fn cells(&self) -> &[(usize, Shift)] {
        &self.cells
    }

    pub fn num_vertices(&self) -> usize {
        self.plane.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.plane.num_edges()
    }

    pub fn boundary(&self) -> &[bool] {
        &self.boundary
    }

    pub fn boundary_size(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }
}

pub fn patch(g: &ToroidalGraph, n: usize) -> PlanarPatch {
    assert!(n >= 1, "patch size must be positive");
    let map = g.map();
    let emb = map.embedding();
    let (nv, ne) = (g.num_vertices(), g.num_edges());
    let nn = n as i64;
    let inside = |t: Shift| (0..nn).contains(&t[0]) && (0..nn).contains(&t[1]);
    let copy_index = |t: Shift| (t[0] * nn + t[1]) as usize;
    let copies = n * n;

    // edge (c, e) exists when both its ends fall inside the patch
    let mut edge_id = vec![usize::MAX; copies * ne];
    let mut ends = Vec::new();
    for c in 0..copies {
        let t = [(c / n) as i64, (c % n) as i64];
        for (e, &[u, v]) in emb.ends().iter().enumerate() {
            let h = add(t, map.shift(e));
            if inside(h) {
                edge_id[c * ne + e] = ends.len();
                ends.push([c * nv + u, copy_index(h) * nv + v]);
            }
        }
    }
    let mut rotation = vec![Vec::new(); copies * nv];
    for c in 0..copies {
        let t = [(c / n) as i64, (c % n) as i64];
        for x in 0..nv {
            rotation[c * nv + x] = emb
                .rotation(x)
                .iter()
                .filter_map(|&d| {
                    let e = edge_of(d);
                    let owner = if d & 1 == 0 {
                        t
                    } else {
                        let s = map.shift(e);
                        [t[0] - s[0], t[1] - s[1]]
                    };
                    if !inside(owner) {
                        return None;
                    }
                    let id = edge_id[copy_index(owner) * ne + e];
                    (id != usize::MAX).then(|| 2 * id + (d & 1))
                })
                .collect();
        }
    }
    let full = Embedding::new(ends, rotation).expect("patch rotation system");

    let (count, comp) = full.components();
    let mut sizes = vec![0usize; count];
    for &k in &comp {
        sizes[k] += 1;
    }
    let best = (0..count).max_by_key(|&k| (sizes[k], usize::MAX - k)).unwrap_or(0);
    let keep: Vec<bool> = comp.iter().map(|&k| k == best).collect();
    let (sub, old_vertices, _) = full.restrict(&keep);

    let mut cells = Vec::with_capacity(old_vertices.len());
    let mut positions = Vec::with_capacity(old_vertices.len());
    for &old in &old_vertices {
        let (c, x) = (old / nv, old % nv);
        let t = [(c / n) as i64, (c % n) as i64];
        let p = g.positions()[x];
        cells.push((x, t));
        positions.push([p[0] + t[0] as f64, p[1] + t[1] as f64]);
    }
    let boundary = cells
        .iter()
        .map(|&(x, t)| {
            emb.rotation(x).iter().any(|&d| {
                let h = add(t, map.dart_shift(d));
                !inside(h) || !keep[copy_index(h) * nv + emb.head(d)]
            })
        })
        .collect();
    PlanarPatch {
        n,
        plane: PlaneGraph::from_parts(positions, sub),
        cells,
        boundary,
    }
}

/// Size of a patch and of its boundary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FolnerRow {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub boundary: usize,
    pub boundary_ratio: f64,
    pub edge_ratio: f64,
}

/// Boundary-to-volume ratios of growing patches; they tend to zero.
pub fn folner_stats(g: &ToroidalGraph, ns: &[usize]) -> Vec<FolnerRow> {
    ns.iter()
        .map(|&n| {
            let p = patch(g, n);
            let v = p.num_vertices();
            FolnerRow {
                n,
                vertices: v,
                edges: p.num_edges(),
                boundary: p.boundary_size(),
                boundary_ratio: p.boundary_size() as f64 / v as f64,
                edge_ratio: p.num_edges() as f64 / v as f64,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::builtin;

    #[test]
    fn square_patch() {
        let p = patch(&builtin("weave").unwrap(), 10);
        assert_eq!((p.num_vertices(), p.num_edges()), (100, 180));
        assert_eq!(p.boundary_size(), 36);
        assert_eq!(p.plane().faces().len(), 180 - 100 + 2);
    }

    #[test]
    fn triangular_patch() {
        let p = patch(&builtin("triaxial").unwrap(), 4);
        assert_eq!(p.num_vertices(), 16);
        assert_eq!(p.num_edges(), 3 * 16 - 2 * 4 - 2 * 4 + 1);
    }

    #[test]
    fn ratios_shrink() {
        let rows = folner_stats(&builtin("triaxial").unwrap(), &[4, 8, 16]);
        assert!(rows.windows(2).all(|w| w[1].boundary_ratio < w[0].boundary_ratio));
    }
}

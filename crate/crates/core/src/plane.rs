//! Finite plane graphs with straight-line embeddings.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embed::{edge_of, Dart, Embedding};
use crate::error::{Error, Result};
use crate::geometry::{angular_rotation, segments_conflict, signed_area2};
use crate::graph::{BipartiteGraph, Graph};

/// A connected graph drawn in the plane with straight edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGraph {
    positions: Vec<[f64; 2]>,
    emb: Embedding,
}

fn check_segments(positions: &[[f64; 2]], edges: &[(usize, usize)]) -> Result<()> {
    let seg = |&(u, v): &(usize, usize)| [positions[u], positions[v]];
    for (i, e) in edges.iter().enumerate() {
        if e.0 == e.1 {
            return Err(Error::InvalidGraph(format!("edge {i} is a loop")));
        }
        for (j, f) in edges.iter().enumerate().take(i) {
            if segments_conflict(seg(e), seg(f)) {
                return Err(Error::Crossing(format!("edges {j} and {i} cross")));
            }
        }
    }
    Ok(())
}

fn rotation_of(positions: &[[f64; 2]], ends: &[[usize; 2]]) -> Vec<Vec<Dart>> {
    angular_rotation(positions, ends, &vec![[0, 0]; ends.len()])
}

impl PlaneGraph {
    /// Validates a straight-line drawing: no loops, no crossings, connected.
    pub fn from_geometry(positions: Vec<[f64; 2]>, edges: &[(usize, usize)]) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if let Some(&(u, v)) = edges.iter().find(|e| e.0.max(e.1) >= positions.len()) {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
        }
        check_segments(&positions, edges)?;
        let ends: Vec<[usize; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
        let rotation = rotation_of(&positions, &ends);
        let emb = Embedding::new(ends, rotation)?;
        if !emb.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(Self { positions, emb })
    }

    /// Wraps an embedding that is already known to be planar and connected.
    pub(crate) fn from_parts(positions: Vec<[f64; 2]>, emb: Embedding) -> Self {
        Self { positions, emb }
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn num_vertices(&self) -> usize {
        self.emb.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.emb.num_edges()
    }

    pub fn graph(&self) -> Graph {
        let edges = self.emb.ends().iter().map(|&[u, v]| (u, v)).collect();
        Graph::new(self.num_vertices(), edges).expect("valid indices")
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.emb.faces()
    }

    /// The unbounded face is the only one traced clockwise.
    pub fn outer_face(&self, faces: &[Vec<Dart>]) -> usize {
        let area = |walk: &Vec<Dart>| {
            let pts: Vec<[f64; 2]> = walk
                .iter()
                .map(|&d| self.positions[self.emb.tail(d)])
                .collect();
            signed_area2(&pts)
        };
        (0..faces.len())
            .min_by(|&a, &b| area(&faces[a]).total_cmp(&area(&faces[b])))
            .expect("a connected graph has a face")
    }

    /// Overlay with the dual: blacks are vertices then faces, whites sit on
    /// edges, exactly as for toroidal graphs.
    fn overlay_embedding(&self, faces: &[Vec<Dart>]) -> Embedding {
        let (nv, ne) = (self.num_vertices(), self.num_edges());
        let nf = faces.len();
        let nb = nv + nf;
        let left = self.emb.face_index(faces);
        let mut ends = Vec::with_capacity(4 * ne);
        for (e, &[u, v]) in self.emb.ends().iter().enumerate() {
            let white = nb + e;
            let (fl, fr) = (left[2 * e], left[2 * e + 1]);
            ends.extend([[white, u], [white, nv + fr], [white, v], [white, nv + fl]]);
        }
        let mut rotation = vec![Vec::new(); nb + ne];
        for (x, rot) in rotation.iter_mut().enumerate().take(nv) {
            *rot = self
                .emb
                .rotation(x)
                .iter()
                .map(|&d| 2 * (4 * edge_of(d) + if d & 1 == 0 { 0 } else { 2 }) + 1)
                .collect();
        }
        for (f, walk) in faces.iter().enumerate() {
            rotation[nv + f] = walk
                .iter()
                .map(|&d| 2 * (4 * edge_of(d) + if d & 1 == 0 { 3 } else { 1 }) + 1)
                .collect();
        }
        for e in 0..ne {
            rotation[nb + e] = (0..4).map(|k| 2 * (4 * e + k)).collect();
        }
        Embedding::new(ends, rotation).expect("overlay rotation system")
    }

    /// Temperley's bijection: the overlay with the outer face vertex and one
    /// vertex of the outer boundary removed. Perfect matchings of the result
    /// correspond to spanning trees of the graph.
    pub fn temperley(&self) -> PlaneBipartite {
        if self.num_edges() == 0 {
            let emb = Embedding::new(Vec::new(), Vec::new()).expect("empty embedding");
            return PlaneBipartite {
                num_black: 0,
                num_white: 0,
                emb,
            };
        }
        let faces = self.faces();
        let outer = self.outer_face(&faces);
        let root = faces[outer]
            .iter()
            .map(|&d| self.emb.tail(d))
            .min()
            .expect("nonempty face");
        let nv = self.num_vertices();
        let nb = nv + faces.len();
        let full = self.overlay_embedding(&faces);
        let mut keep = vec![true; full.num_vertices()];
        keep[root] = false;
        keep[nv + outer] = false;
        let (emb, _, _) = full.restrict(&keep);
        PlaneBipartite {
            num_black: nb - 2,
            num_white: self.num_edges(),
            emb,
        }
    }
}

/// Bipartite plane map. Vertices `0..num_black` are black, the rest white;
/// every edge has ends `[white, black]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneBipartite {
    num_black: usize,
    num_white: usize,
    emb: Embedding,
}

impl PlaneBipartite {
    pub fn new(num_black: usize, num_white: usize, emb: Embedding) -> Result<Self> {
        if emb.num_vertices() != num_black + num_white {
            return Err(Error::InvalidGraph("vertex count mismatch".into()));
        }
        for (e, &[w, b]) in emb.ends().iter().enumerate() {
            if w < num_black || b >= num_black {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} must run from a white vertex to a black one"
                )));
            }
        }
        Ok(Self {
            num_black,
            num_white,
            emb,
        })
    }

    /// Straight-line drawing; `positions` lists blacks then whites and each
    /// edge is `(white, black)` by color index.
    pub fn from_geometry(
        num_black: usize,
        positions: Vec<[f64; 2]>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let num_white = positions
            .len()
            .checked_sub(num_black)
            .ok_or_else(|| Error::InvalidGraph("fewer positions than blacks".into()))?;
        for &(w, b) in edges {
            if w >= num_white || b >= num_black {
                return Err(Error::InvalidGraph(format!("edge ({w}, {b}) out of range")));
            }
        }
        let flat: Vec<(usize, usize)> = edges.iter().map(|&(w, b)| (num_black + w, b)).collect();
        check_segments(&positions, &flat)?;
        let ends: Vec<[usize; 2]> = flat.iter().map(|&(w, b)| [w, b]).collect();
        let rotation = rotation_of(&positions, &ends);
        Self::new(num_black, num_white, Embedding::new(ends, rotation)?)
    }

    pub fn num_black(&self) -> usize {
        self.num_black
    }

    pub fn num_white(&self) -> usize {
        self.num_white
    }

    pub fn num_edges(&self) -> usize {
        self.emb.num_edges()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    /// `(white index, black index)` for edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let [w, b] = self.emb.ends()[e];
        (w - self.num_black, b)
    }

    pub fn to_finite(&self) -> BipartiteGraph {
        let edges = (0..self.num_edges()).map(|e| self.edge(e)).collect();
        BipartiteGraph::new(self.num_black, self.num_white, edges).expect("valid indices")
    }
}

fn random_points(rng: &mut impl Rng, n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
        .collect()
}

/// Greedy maximal non-crossing subset of `candidates`, in random order.
fn greedy_planar(
    rng: &mut impl Rng,
    positions: &[[f64; 2]],
    mut candidates: Vec<(usize, usize)>,
) -> Vec<(usize, usize)> {
    candidates.shuffle(rng);
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    for (u, v) in candidates {
        let s = [positions[u], positions[v]];
        if chosen
            .iter()
            .all(|&(a, b)| !segments_conflict(s, [positions[a], positions[b]]))
        {
            chosen.push((u, v));
        }
    }
    chosen
}

/// A random connected plane graph: a random triangulation of random points
/// with some edges removed while it stays connected.
pub fn random_plane_graph(rng: &mut impl Rng, num_vertices: usize) -> PlaneGraph {
    assert!(num_vertices >= 1);
    let positions = random_points(rng, num_vertices);
    let candidates = (0..num_vertices)
        .flat_map(|u| (u + 1..num_vertices).map(move |v| (u, v)))
        .collect();
    let mut edges = greedy_planar(rng, &positions, candidates);
    let drops = rng.random_range(0..=edges.len() / 2);
    for _ in 0..drops {
        let i = rng.random_range(0..edges.len());
        let mut fewer = edges.clone();
        fewer.swap_remove(i);
        if Graph::new(num_vertices, fewer.clone())
            .map(|g| g.is_connected())
            .unwrap_or(false)
        {
            edges = fewer;
        }
    }
    PlaneGraph::from_geometry(positions, &edges).expect("generated drawing is valid")
}

/// A random plane bipartite graph, not necessarily connected or balanced.
pub fn random_plane_bipartite(
    rng: &mut impl Rng,
    num_black: usize,
    num_white: usize,
    keep: f64,
) -> PlaneBipartite {
    let positions = random_points(rng, num_black + num_white);
    let candidates = (0..num_white)
        .flat_map(|w| (0..num_black).map(move |b| (num_black + w, b)))
        .collect();
    let mut edges = greedy_planar(rng, &positions, candidates);
    edges.retain(|_| rng.random_bool(keep));
    let colored: Vec<(usize, usize)> = edges.iter().map(|&(w, b)| (w - num_black, b)).collect();
    PlaneBipartite::from_geometry(num_black, positions, &colored)
        .expect("generated drawing is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square() -> PlaneGraph {
        let pos = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        PlaneGraph::from_geometry(pos, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn square_faces() {
        let g = square();
        let faces = g.faces();
        assert_eq!(faces.len(), 2);
        let outer = g.outer_face(&faces);
        let inner = 1 - outer;
        let pts: Vec<_> = faces[inner]
            .iter()
            .map(|&d| g.positions()[g.embedding().tail(d)])
            .collect();
        assert!(signed_area2(&pts) > 0.0);
    }

    #[test]
    fn rejects_crossing() {
        let pos = vec![[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]];
        assert!(matches!(
            PlaneGraph::from_geometry(pos, &[(0, 1), (2, 3)]),
            Err(Error::Crossing(_))
        ));
    }

    #[test]
    fn temperley_is_balanced() {
        let t = square().temperley();
        assert_eq!((t.num_black(), t.num_white()), (4, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..9 {
            let g = random_plane_graph(&mut rng, n);
            let t = g.temperley();
            assert_eq!(t.num_black(), t.num_white());
        }
    }
}

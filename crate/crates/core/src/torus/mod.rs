//! Biperiodic planar graphs represented by a fundamental domain on the torus.
//!
//! The period lattice is the integer lattice: vertex positions live in the
//! unit square and an edge `(u, v, shift)` joins `u` to the copy of `v`
//! translated by `shift`. Everything combinatorial (faces, dual, overlay,
//! quotients) is derived from the rotation system; geometry is used only to
//! validate input and to order edge ends around a vertex.

mod builtin;
mod canonical;
mod patch;
mod random;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::embed::{edge_of, reverse, Dart, Embedding};
use crate::error::{Error, Result};
use crate::geometry;
use crate::graph::BipartiteGraph;

pub use builtin::{builtin, builtin_names, load_graph, TRIAXIAL, WEAVE};
pub use patch::{folner_stats, patch, FolnerRow, PlanarPatch};
pub use random::random_toroidal_graph;

/// Translation by an element of the period lattice.
pub type Shift = [i64; 2];

#[inline]
fn add(a: Shift, b: Shift) -> Shift {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
fn sub(a: Shift, b: Shift) -> Shift {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
fn neg(a: Shift) -> Shift {
    [-a[0], -a[1]]
}

/// A rotation system whose edges carry lattice displacements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusMap {
    emb: Embedding,
    shifts: Vec<Shift>,
}

impl TorusMap {
    pub fn new(emb: Embedding, shifts: Vec<Shift>) -> Self {
        assert_eq!(emb.num_edges(), shifts.len());
        Self { emb, shifts }
    }

    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }

    pub fn shift(&self, e: usize) -> Shift {
        self.shifts[e]
    }

    /// Displacement from the tail of `d` to its head in the universal cover.
    pub fn dart_shift(&self, d: Dart) -> Shift {
        let s = self.shifts[edge_of(d)];
        if d & 1 == 0 {
            s
        } else {
            neg(s)
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.emb.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.emb.num_edges()
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.emb.faces()
    }

    /// Net displacement accumulated around a closed walk.
    pub fn walk_displacement(&self, walk: &[Dart]) -> Shift {
        walk.iter()
            .fold([0, 0], |acc, &d| add(acc, self.dart_shift(d)))
    }

    /// Checks connectivity, contractible faces and `V - E + F = 0`.
    pub fn check_cellular(&self) -> Result<()> {
        if !self.emb.is_connected() {
            return Err(Error::Disconnected);
        }
        let faces = self.faces();
        for (i, walk) in faces.iter().enumerate() {
            let disp = self.walk_displacement(walk);
            if disp != [0, 0] {
                return Err(Error::NotCellular(format!(
                    "face {i} winds around the torus with displacement {disp:?}"
                )));
            }
        }
        let (v, e, f) = (self.num_vertices(), self.num_edges(), faces.len());
        if v + f != e {
            return Err(Error::NotCellular(format!(
                "V - E + F = {} - {} + {} != 0",
                v, e, f
            )));
        }
        Ok(())
    }

    /// The `n x n` cover. Copy `(i, j)` has index `i * n + j`; `index` maps
    /// (old vertex, copy) to the new vertex index and must be a bijection.
    fn quotient_with(&self, n: usize, index: impl Fn(usize, usize) -> usize) -> TorusMap {
        assert!(n >= 1);
        let (nv, ne) = (self.num_vertices(), self.num_edges());
        let copies = n * n;
        let nn = n as i64;
        let copy_of = |i: i64, j: i64| -> (usize, Shift) {
            let (qi, ri) = (i.div_euclid(nn), i.rem_euclid(nn));
            let (qj, rj) = (j.div_euclid(nn), j.rem_euclid(nn));
            ((ri * nn + rj) as usize, [qi, qj])
        };
        let mut ends = vec![[0usize; 2]; copies * ne];
        let mut shifts = vec![[0i64; 2]; copies * ne];
        for c in 0..copies {
            let (ci, cj) = ((c / n) as i64, (c % n) as i64);
            for (e, &[u, v]) in self.emb.ends().iter().enumerate() {
                let s = self.shifts[e];
                let (hc, wrap) = copy_of(ci + s[0], cj + s[1]);
                ends[c * ne + e] = [index(u, c), index(v, hc)];
                shifts[c * ne + e] = wrap;
            }
        }
        let mut rotation = vec![Vec::new(); copies * nv];
        for c in 0..copies {
            let (ci, cj) = ((c / n) as i64, (c % n) as i64);
            for x in 0..nv {
                let rot = self
                    .emb
                    .rotation(x)
                    .iter()
                    .map(|&d| {
                        let e = edge_of(d);
                        if d & 1 == 0 {
                            2 * (c * ne + e)
                        } else {
                            let s = self.shifts[e];
                            let (tc, _) = copy_of(ci - s[0], cj - s[1]);
                            2 * (tc * ne + e) + 1
                        }
                    })
                    .collect();
                rotation[index(x, c)] = rot;
            }
        }
        let emb = Embedding::new(ends, rotation).expect("cover of a valid rotation system");
        TorusMap::new(emb, shifts)
    }

    /// Canonical code: equal codes iff the maps are isomorphic by an
    /// orientation-preserving bijection that respects homology.
    pub fn canonical_code(&self) -> Vec<i64> {
        canonical::canonical_code(self)
    }
}

/// A vertex of the fundamental domain as written in graph files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    pub pos: [f64; 2],
}

/// An edge from `u` to the translate of `v` by `shift`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub shift: Shift,
}

/// File format for toroidal graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

/// Fundamental domain of a biperiodic planar graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ToroidalGraph {
    ids: Vec<String>,
    positions: Vec<[f64; 2]>,
    map: TorusMap,
}

/// Parses the JSON graph format and validates the embedding.
pub fn parse_torus_graph(text: &str) -> Result<ToroidalGraph> {
    let spec: GraphSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    ToroidalGraph::from_spec(&spec)
}

impl ToroidalGraph {
    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(id.clone()))
        };
        let edges = spec
            .edges
            .iter()
            .map(|e| Ok((lookup(&e.u)?, lookup(&e.v)?, e.shift)))
            .collect::<Result<Vec<_>>>()?;
        let ids = spec.vertices.iter().map(|v| v.id.clone()).collect();
        let positions = spec.vertices.iter().map(|v| v.pos).collect();
        Self::from_geometry(ids, positions, edges)
    }

    /// Builds a graph from straight-line geometry, deriving the rotation
    /// system from the angular order of edge directions.
    pub fn from_geometry(
        ids: Vec<String>,
        positions: Vec<[f64; 2]>,
        edges: Vec<(usize, usize, Shift)>,
    ) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if edges.is_empty() {
            return Err(Error::InvalidGraph("no edges".into()));
        }
        for (i, p) in positions.iter().enumerate() {
            if !(p.iter().all(|c| c.is_finite() && (0.0..1.0).contains(c))) {
                return Err(Error::InvalidGraph(format!(
                    "position of vertex {i} outside [0,1)^2: {p:?}"
                )));
            }
        }
        geometry::check_non_crossing(&positions, &edges)?;
        let ends: Vec<[usize; 2]> = edges.iter().map(|&(u, v, _)| [u, v]).collect();
        let shifts: Vec<Shift> = edges.iter().map(|&(_, _, s)| s).collect();
        let rotation = geometry::angular_rotation(&positions, &ends, &shifts);
        let emb = Embedding::new(ends, rotation)?;
        let map = TorusMap::new(emb, shifts);
        map.check_cellular()?;
        Ok(Self {
            ids,
            positions,
            map,
        })
    }

    /// Builds a graph from an explicit rotation system.
    pub fn from_rotation(
        ids: Vec<String>,
        positions: Vec<[f64; 2]>,
        map: TorusMap,
    ) -> Result<Self> {
        map.check_cellular()?;
        Ok(Self {
            ids,
            positions,
            map,
        })
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self
                .ids
                .iter()
                .zip(&self.positions)
                .map(|(id, &pos)| VertexSpec {
                    id: id.clone(),
                    pos,
                })
                .collect(),
            edges: self
                .map
                .emb
                .ends()
                .iter()
                .enumerate()
                .map(|(e, &[u, v])| EdgeSpec {
                    u: self.ids[u].clone(),
                    v: self.ids[v].clone(),
                    shift: self.map.shift(e),
                })
                .collect(),
        }
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn map(&self) -> &TorusMap {
        &self.map
    }

    pub fn num_vertices(&self) -> usize {
        self.map.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.map.num_edges()
    }

    pub fn num_faces(&self) -> usize {
        self.num_edges() - self.num_vertices()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices())
            .map(|v| self.map.emb.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Facial walks of the fundamental domain.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.map.faces()
    }

    /// Lifts a facial walk into the universal cover. Returns the translation
    /// of each dart's tail copy and the centroid of the lifted corners.
    fn lift_face(&self, walk: &[Dart]) -> (Vec<Shift>, [f64; 2]) {
        let mut t = [0i64, 0];
        let mut lifts = Vec::with_capacity(walk.len());
        let mut centroid = [0.0, 0.0];
        for &d in walk {
            lifts.push(t);
            let p = self.positions[self.map.emb.tail(d)];
            centroid[0] += p[0] + t[0] as f64;
            centroid[1] += p[1] + t[1] as f64;
            t = add(t, self.map.dart_shift(d));
        }
        let k = walk.len() as f64;
        (lifts, [centroid[0] / k, centroid[1] / k])
    }

    /// Face data shared by `dual` and `overlay`: per face the reduced
    /// centroid, and per dart the translation of the face copy lying on the
    /// left of the dart's canonical copy (tail at translation zero).
    fn face_frames(&self) -> FaceFrames {
        let faces = self.faces();
        let mut left_copy = vec![[0i64; 2]; 2 * self.num_edges()];
        let mut left_face = vec![0usize; 2 * self.num_edges()];
        let mut centers = Vec::with_capacity(faces.len());
        for (f, walk) in faces.iter().enumerate() {
            let (lifts, c) = self.lift_face(walk);
            let offset = [c[0].floor() as i64, c[1].floor() as i64];
            centers.push([c[0] - offset[0] as f64, c[1] - offset[1] as f64]);
            for (&d, &t) in walk.iter().zip(&lifts) {
                left_copy[d] = sub(offset, t);
                left_face[d] = f;
            }
        }
        FaceFrames {
            faces,
            centers,
            left_face,
            left_copy,
        }
    }

    /// For edge `e`, the faces on its left and right together with the
    /// translations of the face copies adjacent to the canonical edge copy.
    fn edge_sides(&self, frames: &FaceFrames, e: usize) -> ((usize, Shift), (usize, Shift)) {
        let (fwd, bwd) = (2 * e, 2 * e + 1);
        let s = self.map.shift(e);
        let left = (frames.left_face[fwd], frames.left_copy[fwd]);
        let right = (frames.left_face[bwd], add(frames.left_copy[bwd], s));
        (left, right)
    }

    /// Planar dual: a vertex per face, and per primal edge a dual edge
    /// crossing it from its right face to its left face.
    pub fn dual(&self) -> ToroidalGraph {
        let frames = self.face_frames();
        let ne = self.num_edges();
        let mut ends = Vec::with_capacity(ne);
        let mut shifts = Vec::with_capacity(ne);
        for e in 0..ne {
            let ((fl, tl), (fr, tr)) = self.edge_sides(&frames, e);
            ends.push([fr, fl]);
            shifts.push(sub(tl, tr));
        }
        let rotation = frames
            .faces
            .iter()
            .map(|walk| walk.iter().map(|&d| reverse(d)).collect())
            .collect();
        let emb = Embedding::new(ends, rotation).expect("dual rotation system");
        let map = TorusMap::new(emb, shifts);
        let ids = (0..frames.faces.len()).map(|f| format!("f{f}")).collect();
        ToroidalGraph::from_rotation(ids, frames.centers, map).expect("dual of a cellular map")
    }

    /// Overlay of the graph with its dual: black vertices are the primal
    /// vertices followed by the faces, white vertices sit on the primal edges.
    pub fn overlay(&self) -> BipartiteTorusGraph {
        let frames = self.face_frames();
        let (nv, ne) = (self.num_vertices(), self.num_edges());
        let nf = frames.faces.len();
        let nb = nv + nf;
        let mut origins: Vec<BlackOrigin> = (0..nv).map(BlackOrigin::Primal).collect();
        origins.extend((0..nf).map(BlackOrigin::Dual));
        let mut positions: Vec<[f64; 2]> = self.positions.clone();
        positions.extend_from_slice(&frames.centers);

        let mut ends = Vec::with_capacity(4 * ne);
        let mut shifts = Vec::with_capacity(4 * ne);
        for (e, &[u, v]) in self.map.emb.ends().iter().enumerate() {
            let s = self.map.shift(e);
            let (pu, pv) = (self.positions[u], self.positions[v]);
            let mid = [
                0.5 * (pu[0] + pv[0] + s[0] as f64),
                0.5 * (pu[1] + pv[1] + s[1] as f64),
            ];
            let q = [mid[0].floor() as i64, mid[1].floor() as i64];
            positions.push([mid[0] - q[0] as f64, mid[1] - q[1] as f64]);
            let ((fl, tl), (fr, tr)) = self.edge_sides(&frames, e);
            let white = nb + e;
            // counterclockwise around the white vertex: u, right face, v, left face
            ends.extend([[white, u], [white, nv + fr], [white, v], [white, nv + fl]]);
            shifts.extend([neg(q), sub(tr, q), sub(s, q), sub(tl, q)]);
        }
        let mut rotation = vec![Vec::new(); nb + ne];
        for (x, rot) in rotation.iter_mut().enumerate().take(nv) {
            *rot = self
                .map
                .emb
                .rotation(x)
                .iter()
                .map(|&d| {
                    let e = edge_of(d);
                    let k = if d & 1 == 0 { 0 } else { 2 };
                    2 * (4 * e + k) + 1
                })
                .collect();
        }
        for (f, walk) in frames.faces.iter().enumerate() {
            rotation[nv + f] = walk
                .iter()
                .map(|&d| {
                    let e = edge_of(d);
                    let k = if d & 1 == 0 { 3 } else { 1 };
                    2 * (4 * e + k) + 1
                })
                .collect();
        }
        for e in 0..ne {
            rotation[nb + e] = (0..4).map(|k| 2 * (4 * e + k)).collect();
        }
        let emb = Embedding::new(ends, rotation).expect("overlay rotation system");
        BipartiteTorusGraph {
            num_black: nb,
            num_white: ne,
            origins,
            positions,
            map: TorusMap::new(emb, shifts),
        }
    }

    /// The finite toroidal graph `G / nΛ`, itself presented as a fundamental
    /// domain of the coarser lattice.
    pub fn quotient(&self, n: usize) -> ToroidalGraph {
        assert!(n >= 1, "quotient order must be positive");
        let nv = self.num_vertices();
        let map = self.map.quotient_with(n, |x, c| c * nv + x);
        let mut ids = Vec::with_capacity(n * n * nv);
        let mut positions = Vec::with_capacity(n * n * nv);
        for c in 0..n * n {
            let (i, j) = ((c / n) as f64, (c % n) as f64);
            for x in 0..nv {
                ids.push(format!("{}@{},{}", self.ids[x], c / n, c % n));
                let p = self.positions[x];
                positions.push([(p[0] + i) / n as f64, (p[1] + j) / n as f64]);
            }
        }
        ToroidalGraph {
            ids,
            positions,
            map,
        }
    }

    pub fn canonical_code(&self) -> Vec<i64> {
        self.map.canonical_code()
    }

    pub fn is_isomorphic(&self, other: &ToroidalGraph) -> bool {
        self.num_vertices() == other.num_vertices()
            && self.num_edges() == other.num_edges()
            && self.canonical_code() == other.canonical_code()
    }
}

struct FaceFrames {
    faces: Vec<Vec<Dart>>,
    centers: Vec<[f64; 2]>,
    left_face: Vec<usize>,
    left_copy: Vec<Shift>,
}

/// Where a black vertex of the overlay comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlackOrigin {
    Primal(usize),
    Dual(usize),
}

/// Balanced bipartite toroidal graph. Vertices `0..num_black` are black,
/// the rest white; every edge is stored with ends `[white, black]` and the
/// shift from the white vertex to the black one.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteTorusGraph {
    num_black: usize,
    num_white: usize,
    origins: Vec<BlackOrigin>,
    positions: Vec<[f64; 2]>,
    map: TorusMap,
}

impl BipartiteTorusGraph {
    pub fn num_black(&self) -> usize {
        self.num_black
    }

    pub fn num_white(&self) -> usize {
        self.num_white
    }

    pub fn num_edges(&self) -> usize {
        self.map.num_edges()
    }

    pub fn is_balanced(&self) -> bool {
        self.num_black == self.num_white
    }

    pub fn origins(&self) -> &[BlackOrigin] {
        &self.origins
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    pub fn map(&self) -> &TorusMap {
        &self.map
    }

    /// `(white index, black index, shift white -> black)` for edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize, Shift) {
        let [w, b] = self.map.emb.ends()[e];
        (w - self.num_black, b, self.map.shift(e))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Shift)> + '_ {
        (0..self.num_edges()).map(|e| self.edge(e))
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        self.map.faces()
    }

    pub fn white_degrees(&self) -> Vec<usize> {
        (0..self.num_white)
            .map(|w| self.map.emb.degree(self.num_black + w))
            .collect()
    }

    /// `G / nΛ`; copy `c` of black `b` becomes black `c * B + b`, likewise
    /// for whites, so the copy-major order is shared by both colors.
    pub fn quotient(&self, n: usize) -> BipartiteTorusGraph {
        assert!(n >= 1, "quotient order must be positive");
        let (nb, nw) = (self.num_black, self.num_white);
        let copies = n * n;
        let map = self.map.quotient_with(n, |x, c| {
            if x < nb {
                c * nb + x
            } else {
                nb * copies + c * nw + (x - nb)
            }
        });
        let mut origins = Vec::with_capacity(copies * nb);
        let mut positions = vec![[0.0; 2]; copies * (nb + nw)];
        for _ in 0..copies {
            origins.extend_from_slice(&self.origins);
        }
        for c in 0..copies {
            let (i, j) = ((c / n) as f64, (c % n) as f64);
            let scale = |p: [f64; 2]| [(p[0] + i) / n as f64, (p[1] + j) / n as f64];
            for b in 0..nb {
                positions[c * nb + b] = scale(self.positions[b]);
            }
            for w in 0..nw {
                positions[nb * copies + c * nw + w] = scale(self.positions[nb + w]);
            }
        }
        BipartiteTorusGraph {
            num_black: nb * copies,
            num_white: nw * copies,
            origins,
            positions,
            map,
        }
    }

    /// Forgets the embedding and the shifts.
    pub fn to_finite(&self) -> BipartiteGraph {
        let edges = self.edges().map(|(w, b, _)| (w, b)).collect();
        BipartiteGraph::new(self.num_black, self.num_white, edges).expect("valid indices")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weave() -> ToroidalGraph {
        builtin("weave").unwrap()
    }

    fn triaxial() -> ToroidalGraph {
        builtin("triaxial").unwrap()
    }

    #[test]
    fn builtin_sizes() {
        let w = weave();
        assert_eq!((w.num_vertices(), w.num_edges()), (1, 2));
        let t = triaxial();
        assert_eq!((t.num_vertices(), t.num_edges()), (1, 3));
    }

    #[test]
    fn unknown_vertex_rejected() {
        let text = r#"{"vertices":[{"id":"a","pos":[0.5,0.5]}],
                       "edges":[{"u":"a","v":"b","shift":[1,0]}]}"#;
        assert_eq!(
            parse_torus_graph(text).unwrap_err(),
            Error::UnknownVertex("b".into())
        );
    }

    #[test]
    fn malformed_text_rejected() {
        assert!(matches!(parse_torus_graph("{vertices"), Err(Error::Parse(_))));
    }

    #[test]
    fn non_cellular_rejected() {
        let text = r#"{"vertices":[{"id":"a","pos":[0.5,0.5]}],
                       "edges":[{"u":"a","v":"a","shift":[1,0]}]}"#;
        assert!(matches!(
            parse_torus_graph(text),
            Err(Error::NotCellular(_))
        ));
    }

    #[test]
    fn disconnected_rejected() {
        let text = r#"{"vertices":[{"id":"a","pos":[0.25,0.25]},{"id":"b","pos":[0.75,0.75]}],
                       "edges":[{"u":"a","v":"a","shift":[1,0]},{"u":"b","v":"b","shift":[1,0]}]}"#;
        assert_eq!(parse_torus_graph(text).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn crossing_rejected() {
        // both diagonals of the unit cell
        let text = r#"{"vertices":[{"id":"a","pos":[0.5,0.5]}],
                       "edges":[{"u":"a","v":"a","shift":[1,0]},{"u":"a","v":"a","shift":[0,1]},
                                {"u":"a","v":"a","shift":[1,1]},{"u":"a","v":"a","shift":[1,-1]}]}"#;
        assert!(matches!(parse_torus_graph(text), Err(Error::Crossing(_))));
    }

    #[test]
    fn face_counts() {
        let w = weave();
        let faces = w.faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].len(), 4);
        let t = triaxial();
        let faces = t.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn duals() {
        let w = weave().dual();
        assert_eq!((w.num_vertices(), w.num_edges()), (1, 2));
        assert!(w.is_isomorphic(&weave()));
        let hex = triaxial().dual();
        assert_eq!((hex.num_vertices(), hex.num_edges()), (2, 3));
        assert!(hex.faces().iter().all(|f| f.len() == 6));
        assert!(hex.dual().is_isomorphic(&triaxial()));
        assert!(!hex.is_isomorphic(&triaxial()));
    }

    #[test]
    fn overlays() {
        let b = weave().overlay();
        assert_eq!((b.num_black(), b.num_white(), b.num_edges()), (2, 2, 8));
        let faces = b.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 4));
        b.map().check_cellular().unwrap();

        let b = triaxial().overlay();
        assert_eq!((b.num_black(), b.num_white()), (3, 3));
        assert!(b.white_degrees().iter().all(|&d| d == 4));
        assert!(b.faces().iter().all(|f| f.len() == 4));
        b.map().check_cellular().unwrap();
    }

    #[test]
    fn quotients_scale() {
        let b = weave().overlay();
        assert_eq!(b.quotient(1), b);
        let q = b.quotient(2);
        assert_eq!((q.num_black(), q.num_white(), q.num_edges()), (8, 8, 32));
        q.map().check_cellular().unwrap();

        let t = triaxial().quotient(3);
        assert_eq!((t.num_vertices(), t.num_edges()), (9, 27));
        t.map().check_cellular().unwrap();
        assert_eq!(t.faces().len(), 18);
    }

    #[test]
    fn spec_round_trip() {
        let t = triaxial();
        let again = ToroidalGraph::from_spec(&t.to_spec()).unwrap();
        assert_eq!(again, t);
    }
}

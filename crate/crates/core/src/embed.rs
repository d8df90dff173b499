//! Rotation systems.
//!
//! An edge `e` with ends `[a, b]` owns two darts: `2e` runs from `a` to `b`
//! and `2e + 1` runs back. Each vertex lists the darts leaving it in
//! counterclockwise order. Faces are traced with the face on the left of
//! every dart.

use crate::error::{Error, Result};

pub type Dart = usize;

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d / 2
}

#[inline]
pub fn reverse(d: Dart) -> Dart {
    d ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    ends: Vec<[usize; 2]>,
    rotation: Vec<Vec<Dart>>,
    /// Position of each dart inside its tail's rotation list.
    slot: Vec<usize>,
}

impl Embedding {
    pub fn new(ends: Vec<[usize; 2]>, rotation: Vec<Vec<Dart>>) -> Result<Self> {
        let num_darts = 2 * ends.len();
        let mut slot = vec![usize::MAX; num_darts];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= num_darts {
                    return Err(Error::InvalidGraph(format!("dart {d} out of range")));
                }
                if slot[d] != usize::MAX {
                    return Err(Error::InvalidGraph(format!("dart {d} listed twice")));
                }
                let tail = ends[edge_of(d)][d & 1];
                if tail != v {
                    return Err(Error::InvalidGraph(format!(
                        "dart {d} listed at vertex {v} but leaves vertex {tail}"
                    )));
                }
                slot[d] = i;
            }
        }
        if let Some(d) = slot.iter().position(|&s| s == usize::MAX) {
            return Err(Error::InvalidGraph(format!("dart {d} missing from rotation")));
        }
        Ok(Self {
            ends,
            rotation,
            slot,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn num_edges(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self) -> &[[usize; 2]] {
        &self.ends
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    #[inline]
    pub fn tail(&self, d: Dart) -> usize {
        self.ends[edge_of(d)][d & 1]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.ends[edge_of(d)][1 - (d & 1)]
    }

    /// Position of `d` in the rotation list of its tail.
    pub fn slot(&self, d: Dart) -> usize {
        self.slot[d]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn ccw_next(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.slot[d] + 1) % rot.len()]
    }

    pub fn ccw_prev(&self, d: Dart) -> Dart {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.slot[d] + rot.len() - 1) % rot.len()]
    }

    /// Dart following `d` along the face on its left.
    #[inline]
    pub fn face_successor(&self, d: Dart) -> Dart {
        self.ccw_prev(reverse(d))
    }

    /// Facial walks; every dart appears in exactly one walk.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; 2 * self.ends.len()];
        let mut faces = Vec::new();
        for start in 0..seen.len() {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.face_successor(d);
            }
            faces.push(walk);
        }
        faces
    }

    /// Index of the face on the left of every dart, for the given face list.
    pub fn face_index(&self, faces: &[Vec<Dart>]) -> Vec<usize> {
        let mut index = vec![usize::MAX; 2 * self.ends.len()];
        for (f, walk) in faces.iter().enumerate() {
            for &d in walk {
                index[d] = f;
            }
        }
        index
    }

    /// Connected components as a component id per vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let h = self.head(d);
                    if comp[h] == usize::MAX {
                        comp[h] = count;
                        stack.push(h);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.num_vertices() == 0 || self.components().0 == 1
    }

    /// Keeps the vertices flagged in `keep` and the edges between them,
    /// preserving the cyclic order of the surviving darts. Returns the new
    /// embedding with the old index of each surviving vertex and edge.
    pub fn restrict(&self, keep: &[bool]) -> (Embedding, Vec<usize>, Vec<usize>) {
        let mut vmap = vec![usize::MAX; self.num_vertices()];
        let mut old_vertices = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                vmap[v] = old_vertices.len();
                old_vertices.push(v);
            }
        }
        let mut emap = vec![usize::MAX; self.num_edges()];
        let mut old_edges = Vec::new();
        let mut ends = Vec::new();
        for (e, &[a, b]) in self.ends.iter().enumerate() {
            if keep[a] && keep[b] {
                emap[e] = old_edges.len();
                old_edges.push(e);
                ends.push([vmap[a], vmap[b]]);
            }
        }
        let rotation = old_vertices
            .iter()
            .map(|&v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&d| emap[edge_of(d)] != usize::MAX)
                    .map(|&d| 2 * emap[edge_of(d)] + (d & 1))
                    .collect()
            })
            .collect();
        let emb = Embedding::new(ends, rotation).expect("restriction of a valid embedding");
        (emb, old_vertices, old_edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Embedding {
        // 0 -- 1
        // |    |
        // 3 -- 2    edges: 01, 12, 23, 30, drawn with 0 at the top left
        let ends = vec![[0, 1], [1, 2], [2, 3], [3, 0]];
        // ccw at each corner
        let rotation = vec![vec![7, 0], vec![1, 2], vec![3, 4], vec![5, 6]];
        Embedding::new(ends, rotation).unwrap()
    }

    #[test]
    fn four_cycle_has_two_faces() {
        let emb = square();
        let faces = emb.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
    }

    #[test]
    fn rejects_misplaced_dart() {
        let err = Embedding::new(vec![[0, 1]], vec![vec![1], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidGraph(_)));
    }

    #[test]
    fn restrict_drops_incident_edges() {
        let emb = square();
        let (sub, verts, edges) = emb.restrict(&[true, true, true, false]);
        assert_eq!(verts, vec![0, 1, 2]);
        assert_eq!(edges, vec![0, 1]);
        assert_eq!(sub.faces().len(), 1);
        assert!(sub.is_connected());
    }
}

//! Straight-line checks in the universal cover.

use crate::torus::Shift;
use crate::embed::Dart;
use crate::error::{Error, Result};

const EPS: f64 = 1e-9;

type Point = [f64; 2];

pub(crate) fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn same_point(a: Point, b: Point) -> bool {
    (a[0] - b[0]).abs() < EPS && (a[1] - b[1]).abs() < EPS
}

/// `p` lies on segment `ab` strictly between its endpoints.
fn in_interior(p: Point, a: Point, b: Point) -> bool {
    if same_point(p, a) || same_point(p, b) {
        return false;
    }
    let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
    if orient(a, b, p).abs() > EPS * len.max(1.0) {
        return false;
    }
    let t = ((p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1])) / (len * len);
    t > 0.0 && t < 1.0
}

/// Segments meet somewhere other than a shared endpoint.
pub(crate) fn segments_conflict(p: [Point; 2], q: [Point; 2]) -> bool {
    if in_interior(p[0], q[0], q[1])
        || in_interior(p[1], q[0], q[1])
        || in_interior(q[0], p[0], p[1])
        || in_interior(q[1], p[0], p[1])
    {
        return true;
    }
    let d1 = orient(q[0], q[1], p[0]);
    let d2 = orient(q[0], q[1], p[1]);
    let d3 = orient(p[0], p[1], q[0]);
    let d4 = orient(p[0], p[1], q[1]);
    let strictly_opposite = |a: f64, b: f64| (a > EPS && b < -EPS) || (a < -EPS && b > EPS);
    if strictly_opposite(d1, d2) && strictly_opposite(d3, d4) {
        return true;
    }
    // identical segments (parallel edges drawn on top of each other)
    (same_point(p[0], q[0]) && same_point(p[1], q[1]))
        || (same_point(p[0], q[1]) && same_point(p[1], q[0]))
}

fn segment(positions: &[Point], edge: &(usize, usize, Shift), t: Shift) -> [Point; 2] {
    let (u, v, s) = *edge;
    let (pu, pv) = (positions[u], positions[v]);
    [
        [pu[0] + t[0] as f64, pu[1] + t[1] as f64],
        [pv[0] + (s[0] + t[0]) as f64, pv[1] + (s[1] + t[1]) as f64],
    ]
}

/// First translation of `e2` (relative to `e1` at the origin) that meets
/// `e1` somewhere other than a shared endpoint.
pub(crate) fn pair_conflict(
    positions: &[Point],
    e1: &(usize, usize, Shift),
    e2: &(usize, usize, Shift),
    same_edge: bool,
) -> Option<Shift> {
    let a = segment(positions, e1, [0, 0]);
    let b = segment(positions, e2, [0, 0]);
    let lo = [a[0][0].min(a[1][0]), a[0][1].min(a[1][1])];
    let hi = [a[0][0].max(a[1][0]), a[0][1].max(a[1][1])];
    let blo = [b[0][0].min(b[1][0]), b[0][1].min(b[1][1])];
    let bhi = [b[0][0].max(b[1][0]), b[0][1].max(b[1][1])];
    let range =
        |k: usize| ((lo[k] - bhi[k]).floor() as i64 - 1)..=((hi[k] - blo[k]).ceil() as i64 + 1);
    for tx in range(0) {
        for ty in range(1) {
            if same_edge && tx == 0 && ty == 0 {
                continue;
            }
            if segments_conflict(a, segment(positions, e2, [tx, ty])) {
                return Some([tx, ty]);
            }
        }
    }
    None
}

pub(crate) fn zero_length(positions: &[Point], e: &(usize, usize, Shift)) -> bool {
    let a = segment(positions, e, [0, 0]);
    same_point(a[0], a[1])
}

pub(crate) fn check_non_crossing(
    positions: &[Point],
    edges: &[(usize, usize, Shift)],
) -> Result<()> {
    if let Some(i) = edges.iter().position(|e| zero_length(positions, e)) {
        return Err(Error::InvalidGraph(format!("edge {i} has zero length")));
    }
    for (i, e1) in edges.iter().enumerate() {
        for (j, e2) in edges.iter().enumerate().skip(i) {
            if let Some([tx, ty]) = pair_conflict(positions, e1, e2, i == j) {
                return Err(Error::Crossing(format!(
                    "edge {i} meets edge {j} translated by ({tx}, {ty})"
                )));
            }
        }
    }
    Ok(())
}

/// Counterclockwise order of the darts at every vertex.
pub(crate) fn angular_rotation(
    positions: &[Point],
    ends: &[[usize; 2]],
    shifts: &[Shift],
) -> Vec<Vec<Dart>> {
    let mut at: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); positions.len()];
    for (e, (&[u, v], &s)) in ends.iter().zip(shifts).enumerate() {
        let dx = positions[v][0] + s[0] as f64 - positions[u][0];
        let dy = positions[v][1] + s[1] as f64 - positions[u][1];
        at[u].push((dy.atan2(dx), 2 * e));
        at[v].push(((-dy).atan2(-dx), 2 * e + 1));
    }
    at.into_iter()
        .map(|mut darts| {
            darts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            darts.into_iter().map(|(_, d)| d).collect()
        })
        .collect()
}

/// Twice the signed area enclosed by a closed polygon.
pub(crate) fn signed_area2(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conflicts() {
        let x = [[0.0, 0.0], [1.0, 1.0]];
        let y = [[0.0, 1.0], [1.0, 0.0]];
        assert!(segments_conflict(x, y));
        let touching = [[1.0, 1.0], [2.0, 0.0]];
        assert!(!segments_conflict(x, touching));
        let through = [[0.5, 0.5], [0.5, 2.0]];
        assert!(segments_conflict(x, through));
        let overlap = [[0.5, 0.5], [2.0, 2.0]];
        assert!(segments_conflict(x, overlap));
    }

    #[test]
    fn area_sign() {
        let ccw = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(signed_area2(&ccw), 2.0);
    }
}

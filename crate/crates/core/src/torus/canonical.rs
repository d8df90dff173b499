use std::collections::VecDeque;

use super::{add, sub, Shift, TorusMap};
use crate::embed::{reverse, Dart};

/// Breadth-first code of the map rooted at `start`. Vertices are labelled
/// in discovery order and placed in the universal cover along the search
/// tree; every dart records its head label, its displacement relative to
/// that placement and the slot of its reverse at the head.
fn code_from(map: &TorusMap, start: Dart) -> Vec<i64> {
    let emb = map.embedding();
    let n = emb.num_vertices();
    let mut label = vec![usize::MAX; n];
    let mut place: Vec<Shift> = vec![[0, 0]; n];
    let mut first = vec![0; n];
    let root = emb.tail(start);
    label[root] = 0;
    first[root] = start;
    let mut next_label = 1;
    let mut queue = VecDeque::from([root]);
    let mut code = Vec::with_capacity(5 * 2 * emb.num_edges() + n);
    while let Some(x) = queue.pop_front() {
        let deg = emb.degree(x);
        code.push(deg as i64);
        let mut d = first[x];
        for _ in 0..deg {
            let y = emb.head(d);
            if label[y] == usize::MAX {
                label[y] = next_label;
                next_label += 1;
                place[y] = add(place[x], map.dart_shift(d));
                first[y] = reverse(d);
                queue.push_back(y);
            }
            let rel = sub(add(place[x], map.dart_shift(d)), place[y]);
            let dy = emb.degree(y);
            let back = (emb.slot(reverse(d)) + dy - emb.slot(first[y])) % dy;
            code.extend([label[y] as i64, rel[0], rel[1], back as i64]);
            d = emb.ccw_next(d);
        }
    }
    code
}

pub(super) fn canonical_code(map: &TorusMap) -> Vec<i64> {
    (0..2 * map.num_edges())
        .map(|d| code_from(map, d))
        .min()
        .unwrap_or_default()
}

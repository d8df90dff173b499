use std::f64::consts::{PI, TAU};

use num_bigint::BigUint;

use dimerlab::exact::ln_biguint;
use dimerlab::kasteleyn::{calibrate_signs, kasteleyn_signs, partition_toroidal, SignCombination};
use dimerlab::mahler::mahler_2d;
use dimerlab::oracle::enum_dimers;
use dimerlab::torus::{builtin, load_graph, parse_torus_graph, patch, ToroidalGraph};
use dimerlab::treecount::{density_sweep, richardson_limit, unknot_tait, knot_determinant};
use dimerlab::{Error, LaurentPoly2};

const V_OCT: f64 = 3.663_862_376_708_876;
const V_TET: f64 = 1.014_941_606_409_653_6;

/// Edges of the universal cover with both ends in the `n x n` block,
/// counted directly from the fundamental domain.
fn block_edges(g: &ToroidalGraph, n: i64) -> usize {
    let spec = g.to_spec();
    let mut count = 0;
    for e in &spec.edges {
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (i + e.shift[0], j + e.shift[1]);
                if (0..n).contains(&x) && (0..n).contains(&y) {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn builtin_shapes() {
    let weave = builtin("weave").unwrap();
    let tri = builtin("triaxial").unwrap();
    assert_eq!((weave.num_vertices(), weave.num_edges()), (1, 2));
    assert_eq!((tri.num_vertices(), tri.num_edges()), (1, 3));
    assert_eq!(weave.faces().len(), 1);
    assert_eq!(tri.faces().iter().map(Vec::len).collect::<Vec<_>>(), vec![3, 3]);
    let hex = tri.dual();
    assert_eq!((hex.num_vertices(), hex.num_edges()), (2, 3));
    assert!(hex.dual().is_isomorphic(&tri));
    let wb = weave.overlay();
    assert_eq!((wb.num_black(), wb.num_white(), wb.num_edges()), (2, 2, 8));
    let q = wb.quotient(2);
    assert_eq!((q.num_black(), q.num_white(), q.num_edges()), (8, 8, 32));
    assert_eq!(wb.quotient(1), wb);
    let t3 = tri.quotient(3);
    assert_eq!((t3.num_vertices(), t3.num_edges()), (9, 27));
    assert_eq!(tri.overlay().num_black(), 3);
}

#[test]
fn parse_errors() {
    let unknown = r#"{"vertices": [{"id": "a", "pos": [0.5, 0.5]}], "edges": [{"u": "a", "v": "b", "shift": [1, 0]}]}"#;
    assert!(matches!(parse_torus_graph(unknown), Err(Error::UnknownVertex(_))));
    assert!(matches!(parse_torus_graph("{"), Err(Error::Parse(_))));
    assert!(load_graph("builtin:hexagonal").is_err());
    assert!(load_graph("/nonexistent/graph.json").is_err());
}

#[test]
fn patches_match_direct_block_count() {
    let tri = builtin("triaxial").unwrap();
    let p2 = patch(&tri, 2);
    assert_eq!((p2.num_vertices(), p2.num_edges()), (4, 5));
    for n in 1..8 {
        for g in [&tri, &builtin("weave").unwrap()] {
            let p = patch(g, n);
            assert_eq!(p.num_vertices(), n * n);
            assert_eq!(p.num_edges(), block_edges(g, n as i64));
        }
    }
    let grid = patch(&builtin("weave").unwrap(), 2);
    assert_eq!((grid.num_vertices(), grid.num_edges()), (4, 4));
}

#[test]
fn polynomial_evaluations() {
    let weave: LaurentPoly2 = "-(4 + z + 1/z + w + 1/w)".parse().unwrap();
    assert_eq!(weave.eval_signs(1, 1), (-8).into());
    assert_eq!(weave.eval_signs(-1, -1), 0.into());
    let tri: LaurentPoly2 = "6 - z - z^-1 - w - w^-1 - z*w^-1 - z^-1*w".parse().unwrap();
    assert_eq!(tri.eval_signs(1, 1), 0.into());
    let expanded: LaurentPoly2 = "(1 + z)*(1 + 1/z)".parse().unwrap();
    assert_eq!(expanded.to_string(), "z^-1 + 2 + z");
    assert_eq!("z^5".parse::<LaurentPoly2>().unwrap().normalize().unwrap(), LaurentPoly2::one());
}

#[test]
fn calibrated_combinations() {
    for name in ["weave", "triaxial"] {
        let k = kasteleyn_signs(&builtin(name).unwrap().overlay()).unwrap();
        let cal = calibrate_signs(&k, 16).unwrap();
        assert!(cal.even_verified);
        assert_eq!(cal.even, SignCombination::standard());
        assert_eq!(cal.odd.to_string(), "(+,+,+,-)");
        // the 3-fold weave cover is the 6 x 6 square grid on the torus,
        // whose dimer count is classical
        if name == "weave" {
            let z3 = partition_toroidal(&k, &cal, 3).unwrap();
            assert_eq!(z3, BigUint::from(90176u32));
        }
    }
    let k = kasteleyn_signs(&builtin("weave").unwrap().overlay()).unwrap();
    let brute = enum_dimers(&k.graph().to_finite(), 16).unwrap().count;
    assert_eq!(brute, BigUint::from(8u32));
}

#[test]
fn partition_function_growth() {
    for name in ["weave", "triaxial"] {
        let k = kasteleyn_signs(&builtin(name).unwrap().overlay()).unwrap();
        let cal = calibrate_signs(&k, 16).unwrap();
        let m = mahler_2d(&k.char_poly().unwrap(), 1e-9).unwrap().value;
        let err = |n: usize| (ln_biguint(&partition_toroidal(&k, &cal, n).unwrap()) / (n * n) as f64 - m).abs();
        let c = 8.0 * err(8);
        for n in [16, 32, 64] {
            assert!(err(n) <= c / n as f64, "{name} n = {n}: {} > {}", err(n), c / n as f64);
        }
    }
}

#[test]
fn mahler_error_estimates_are_honest() {
    let cases = [
        ("1 + z + w", V_TET / PI),
        ("-(4 + z + 1/z + w + 1/w)", 2.0 * V_OCT / TAU),
        ("6 - (z + 1/z + w + 1/w + z/w + w/z)", 10.0 * V_TET / TAU),
    ];
    for (text, target) in cases {
        let p: LaurentPoly2 = text.parse().unwrap();
        let r = mahler_2d(&p, 1e-6).unwrap();
        assert!((r.value - target).abs() <= 5.0 * r.error_estimate, "{text}: {r:?} vs {target}");
    }
}

#[test]
fn sweeps_converge_to_density() {
    let cases = [("weave", V_OCT / TAU, [20, 40, 80]), ("triaxial", 10.0 * V_TET / 3.0 / TAU, [15, 30, 60])];
    for (name, limit, ns) in cases {
        let rows = density_sweep(&builtin(name).unwrap(), &ns, 400).unwrap();
        let errors: Vec<f64> = rows.iter().map(|r| (r.density - limit).abs()).collect();
        assert!(errors.windows(2).all(|w| w[1] < w[0]), "{name}: {errors:?}");
        let extrapolated = richardson_limit(&rows[1], &rows[2]);
        assert!((extrapolated - limit).abs() <= 0.005 * limit, "{name}: {extrapolated} vs {limit}");
    }
    let one = density_sweep(&builtin("weave").unwrap(), &[1], 400).unwrap();
    assert_eq!((one[0].vertices, one[0].edges, one[0].log_tau), (1, 0, 0.0));
    assert_eq!(knot_determinant(&unknot_tait()).unwrap(), BigUint::from(1u32));
}

//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dimerlab::exact::ln_biguint;
use dimerlab::graph::random_connected_multigraph;
use dimerlab::kasteleyn::{calibrate_signs, kasteleyn_signs, partition_planar, partition_toroidal};
use dimerlab::mahler::{det_density, mahler_2d};
use dimerlab::oracle::{enum_dimers, enum_spanning_trees};
use dimerlab::plane::random_plane_graph;
use dimerlab::torus::{builtin, folner_stats, patch};
use dimerlab::treecount::{
    density_sweep, figure_eight_tait, knot_determinant, log_tree_count, tree_count_exact, trefoil_tait,
};
use dimerlab::{Graph, LaurentPoly2, Result};

const V_OCT: f64 = 3.66386;
const TRIAXIAL_DENSITY: f64 = 3.38314;
const WEAVE_M: f64 = 1.166243;
const WEAVE_TWO_PI_M: f64 = 7.327724;
const TRIAXIAL_M: f64 = 1.615329;
const SMYTH: f64 = 0.3230659;
const TOL: f64 = 1e-6;

type Outcome = Result<(bool, String)>;

fn char_polys() -> Outcome {
    let cases = [
        ("weave", "-(4 + z + 1/z + w + 1/w)"),
        ("triaxial", "6 - (z + 1/z + w + 1/w + z/w + w/z)"),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, expected) in cases {
        let k = kasteleyn_signs(&builtin(name)?.overlay())?;
        let p = k.char_poly()?.normalize()?;
        let target = expected.parse::<LaurentPoly2>()?.normalize()?;
        ok &= p == target;
        detail.push(format!("{name}: {p}"));
    }
    Ok((ok, detail.join("; ")))
}

fn mahler_targets() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, target) in [("weave", WEAVE_M), ("triaxial", TRIAXIAL_M)] {
        let start = Instant::now();
        let p = kasteleyn_signs(&builtin(name)?.overlay())?.char_poly()?;
        let m = mahler_2d(&p, TOL)?.value;
        ok &= (m - target).abs() < 1e-4 && start.elapsed() < Duration::from_secs(60);
        detail.push(format!("{name}: m = {m:.7}, 2pi m = {:.6}", TAU * m));
    }
    let weave = kasteleyn_signs(&builtin("weave")?.overlay())?.char_poly()?;
    ok &= (TAU * mahler_2d(&weave, TOL)?.value - WEAVE_TWO_PI_M).abs() < TAU * 1e-4;
    let start = Instant::now();
    let smyth = mahler_2d(&"1 + z + w".parse()?, 1e-7)?.value;
    ok &= (smyth - SMYTH).abs() < 1e-5 && start.elapsed() < Duration::from_secs(60);
    detail.push(format!("m(1 + z + w) = {smyth:.8}"));
    Ok((ok, detail.join("; ")))
}

fn densities() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, target) in [("weave", V_OCT), ("triaxial", TRIAXIAL_DENSITY)] {
        let g = builtin(name)?;
        let p = kasteleyn_signs(&g.overlay())?.char_poly()?;
        let (_, two_pi) = det_density(&p, g.num_edges(), TOL)?;
        ok &= (two_pi - target).abs() < 1e-4;
        detail.push(format!("{name}: c = {}, 2pi m / c = {two_pi:.6}", g.num_edges()));
    }
    Ok((ok, detail.join("; ")))
}

fn sweeps() -> Outcome {
    let weave = density_sweep(&builtin("weave")?, &[25, 50, 100], 400)?;
    let errors: Vec<f64> = weave.iter().map(|r| (r.two_pi_density - V_OCT).abs() / V_OCT).collect();
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let tri = density_sweep(&builtin("triaxial")?, &[80], 400)?;
    let tri_err = (tri[0].two_pi_density - TRIAXIAL_DENSITY).abs() / TRIAXIAL_DENSITY;
    let ok = decreasing && errors[2] < 0.02 && tri_err < 0.03;
    Ok((
        ok,
        format!(
            "weave relative errors {:.4} {:.4} {:.4}; triaxial n = 80: {:.4}",
            errors[0], errors[1], errors[2], tri_err
        ),
    ))
}

fn toroidal_partition() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for name in ["weave", "triaxial"] {
        let b = builtin(name)?.overlay();
        let k = kasteleyn_signs(&b)?;
        let cal = calibrate_signs(&k, 16)?;
        for n in 1..=2 {
            let z = partition_toroidal(&k, &cal, n)?;
            let brute = enum_dimers(&b.quotient(n).to_finite(), 16)?.count;
            ok &= z == brute;
            detail.push(format!("{name} n = {n}: {z} ({brute})"));
        }
        let m = mahler_2d(&k.char_poly()?, TOL)?.value;
        let per_cell = ln_biguint(&partition_toroidal(&k, &cal, 64)?) / 4096.0;
        ok &= (per_cell - m).abs() < 1e-2;
        detail.push(format!("{name} n = 64: log Z / n^2 = {per_cell:.6}, m = {m:.6}"));
    }
    Ok((ok, detail.join("; ")))
}

fn temperley() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut largest = 0;
    for trial in 0..50 {
        let n = rng.random_range(1..=10);
        let g = random_plane_graph(&mut rng, n);
        let tau = tree_count_exact(&g.graph(), 400)?;
        let z = partition_planar(&g.temperley())?;
        if tau != z {
            return Ok((false, format!("trial {trial}: {tau} spanning trees, {z} matchings")));
        }
        largest = largest.max(g.num_vertices());
    }
    Ok((true, format!("50 graphs, up to {largest} vertices")))
}

fn matrix_tree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let n = rng.random_range(1..=8);
        let extra = rng.random_range(0..=2 * n);
        let g = random_connected_multigraph(&mut rng, n, extra);
        let exact = tree_count_exact(&g, 400)?;
        let brute = enum_spanning_trees(&g, 10)?.count;
        if exact != brute {
            return Ok((false, format!("trial {trial}: {exact} vs {brute}")));
        }
    }
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for (name, n) in [("weave", 20), ("triaxial", 20), ("weave", 7)] {
        graphs.push((format!("{name} patch {n}"), patch(&builtin(name)?, n).plane().graph()));
    }
    for size in [50, 150, 400] {
        graphs.push((format!("random planar {size}"), random_plane_graph(&mut rng, size).graph()));
    }
    let mut worst: f64 = 0.0;
    for (_, g) in &graphs {
        assert!(g.num_vertices() <= 400);
        let exact = ln_biguint(&tree_count_exact(g, 400)?);
        let approx = log_tree_count(g)?;
        worst = worst.max((approx - exact).abs() / exact.abs());
    }
    Ok((
        worst < 1e-9,
        format!("100 multigraphs agree; log path worst relative error {worst:.2e} over {} graphs", graphs.len()),
    ))
}

fn knots() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, tait, expected) in [("trefoil", trefoil_tait(), 3u32), ("figure-eight", figure_eight_tait(), 5)] {
        let det = knot_determinant(&tait)?;
        let brute = enum_spanning_trees(&tait, 10)?.count;
        ok &= det == BigUint::from(expected) && brute == det;
        detail.push(format!("{name}: {det}"));
    }
    Ok((ok, detail.join("; ")))
}

fn folner() -> Outcome {
    let rows = folner_stats(&builtin("weave")?, &[10, 20, 40]);
    let expected = [(10, 0.36), (20, 0.19), (40, 0.0975)];
    let mut ok = true;
    for (row, &(n, ratio)) in rows.iter().zip(&expected) {
        // exact rational comparisons: |dH| = 4n - 4, |H| = n^2, e = 2n(n - 1)
        ok &= row.n == n
            && row.vertices == n * n
            && row.boundary == 4 * n - 4
            && row.boundary_ratio == ratio
            && row.edges * n == (2 * n - 2) * row.vertices
            && (row.edge_ratio - (2.0 - 2.0 / n as f64)).abs() < 1e-15;
    }
    let detail = rows
        .iter()
        .map(|r| format!("n = {}: {}/{} = {}, e/|H| = {}", r.n, r.boundary, r.vertices, r.boundary_ratio, r.edge_ratio))
        .collect::<Vec<_>>()
        .join("; ");
    Ok((ok, detail))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("characteristic polynomials", 1, char_polys),
        ("Mahler measures", 180, mahler_targets),
        ("determinant densities", 60, densities),
        ("convergence sweep", 300, sweeps),
        ("toroidal partition function", 30, toroidal_partition),
        ("Temperley equivalence", 30, temperley),
        ("Matrix-Tree", 60, matrix_tree),
        ("knot determinants", 5, knots),
        ("Folner statistics", 5, folner),
    ];
    let mut failures = 0;
    for (i, (title, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (passed, detail) = match outcome {
            Ok((passed, detail)) => (passed && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failures += 1;
        }
        println!(
            "criterion {} {} ({}, {:.2} s of {} s): {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            title,
            elapsed.as_secs_f64(),
            budget,
            detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

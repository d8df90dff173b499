//! Invariant suite run against a single toroidal graph.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::exact::ln_biguint;
use crate::kasteleyn::{calibrate_signs, det_at, kasteleyn_signs, partition_planar, partition_toroidal, product_over_roots};
use crate::mahler::mahler_2d;
use crate::oracle::{enum_dimers, enum_spanning_trees, DEFAULT_DIMER_CAP, DEFAULT_TREE_CAP};
use crate::torus::{folner_stats, patch, ToroidalGraph};
use crate::treecount::{log_tree_count, tree_count_exact, DEFAULT_EXACT_CAP};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.items.push(CheckItem {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// Records a check whose computation can fail; failures count as red.
    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        match outcome {
            Ok((passed, detail)) => self.push(name, passed, detail),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub seed: u64,
    pub tol: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { seed: 0, tol: 1e-6 }
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Runs every invariant and collects the outcomes; nothing short-circuits.
pub fn run_checks(g: &ToroidalGraph, opts: CheckOptions) -> CheckReport {
    let mut report = CheckReport { items: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (v, e) = (g.num_vertices() as i64, g.num_edges() as i64);

    let faces = g.faces();
    let total: usize = faces.iter().map(Vec::len).sum();
    report.push(
        "euler",
        v - e + faces.len() as i64 == 0 && total as i64 == 2 * e,
        format!("V = {v}, E = {e}, F = {}, sum of face lengths = {total}", faces.len()),
    );

    let dd = g.dual().dual();
    report.push("dual_involution", dd.is_isomorphic(g), format!("dual has {} vertices", g.dual().num_vertices()));

    let b = g.overlay();
    let quads = b.faces().iter().all(|f| f.len() == 4);
    let deg4 = b.white_degrees().iter().all(|&d| d == 4);
    report.push(
        "overlay",
        b.is_balanced() && quads && deg4 && b.num_black() == e as usize,
        format!("{} black, {} white, {} edges", b.num_black(), b.num_white(), b.num_edges()),
    );

    let scaling = [2usize, 3].iter().all(|&n| {
        let q = g.quotient(n);
        let qb = b.quotient(n);
        let n2 = n * n;
        q.num_vertices() == n2 * g.num_vertices()
            && q.num_edges() == n2 * g.num_edges()
            && qb.num_black() == n2 * b.num_black()
            && qb.num_edges() == n2 * b.num_edges()
    });
    report.push("quotient_scaling", scaling, "n = 2, 3".into());

    let k = match kasteleyn_signs(&b) {
        Ok(k) => k,
        Err(err) => {
            report.push("signing", false, format!("error: {err}"));
            return report;
        }
    };
    report.push("signing", k.is_valid() && k.lift(2).is_valid(), "faces of G^b and its 2-fold quotient".into());

    let p = match k.char_poly() {
        Ok(p) => p,
        Err(err) => {
            report.push("char_poly", false, format!("error: {err}"));
            return report;
        }
    };

    let calibration = calibrate_signs(&k, DEFAULT_DIMER_CAP);
    report.record(
        "calibration",
        calibration.clone().map(|c| (true, format!("odd {}, even {} (verified: {})", c.odd, c.even, c.even_verified))),
    );
    if let Ok(cal) = &calibration {
        report.record("partition_vs_enumeration", (|| {
            let mut detail = Vec::new();
            for n in 1..=2 {
                let q = b.quotient(n);
                if q.num_black() > DEFAULT_DIMER_CAP {
                    continue;
                }
                let z = partition_toroidal(&k, cal, n)?;
                let brute = enum_dimers(&q.to_finite(), DEFAULT_DIMER_CAP)?.count;
                if z != brute {
                    return Ok((false, format!("n = {n}: {z} vs {brute}")));
                }
                detail.push(format!("n = {n}: {z}"));
            }
            Ok((true, detail.join(", ")))
        })());
    }

    // |det κ_n| equals |prod p(u, v)| on the unit torus, where units have modulus one
    let lifted = k.lift(2);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let z0 = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let w0 = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        let direct = det_at(&lifted, z0, w0).norm();
        let product = product_over_roots(&p, 2, z0, w0).norm();
        let scale = direct.max(product).max(1.0);
        worst = worst.max((direct - product).abs() / scale);
    }
    report.push("product_formula", worst < 1e-6, format!("max relative deviation {worst:.2e}"));

    let measure = mahler_2d(&p, opts.tol);
    report.record("mahler_invariance", (|| {
        let m = measure.clone()?.value;
        let variants = [
            ("swap", p.swap_variables()),
            ("invert", p.invert_z()),
            ("normalize", p.normalize()?),
        ];
        let mut worst: f64 = 0.0;
        for (_, q) in &variants {
            worst = worst.max((mahler_2d(q, opts.tol)?.value - m).abs());
        }
        Ok((worst < 10.0 * opts.tol, format!("m = {m:.9}, max deviation {worst:.2e}")))
    })());

    if let Ok(cal) = &calibration {
        report.record("entropy", (|| {
            let m = measure.clone()?.value;
            let err = |n: usize| -> Result<f64> {
                let z = partition_toroidal(&k, cal, n)?;
                Ok((ln_biguint(&z) / (n * n) as f64 - m).abs())
            };
            let (e8, e16) = (err(8)?, err(16)?);
            // an O(1/n) bound with the constant fit at n = 8
            Ok((e16 <= e8 * 8.0 / 16.0 + 1e-9 || e16 < 1e-6, format!("n = 8: {e8:.2e}, n = 16: {e16:.2e}")))
        })());
    }

    let rows = folner_stats(g, &[4, 8, 16]);
    let d = g.max_degree() as f64;
    let target = e as f64 / v as f64;
    let shrinking = rows.windows(2).all(|w| w[1].boundary_ratio < w[0].boundary_ratio);
    let bounded = rows.iter().all(|r| {
        let slack = 4.0 * d / r.n as f64;
        r.boundary_ratio <= slack && (r.edge_ratio - target).abs() <= slack
    });
    report.push(
        "folner",
        shrinking && bounded,
        rows.iter()
            .map(|r| format!("n = {}: {:.4}, {:.4}", r.n, r.boundary_ratio, r.edge_ratio))
            .collect::<Vec<_>>()
            .join("; "),
    );

    report.record("tree_counts", (|| {
        let mut detail = Vec::new();
        for n in [1usize, 2, 3, 6] {
            let h = patch(g, n).plane().graph();
            let exact = tree_count_exact(&h, DEFAULT_EXACT_CAP)?;
            if h.num_vertices() <= DEFAULT_TREE_CAP {
                let brute = enum_spanning_trees(&h, DEFAULT_TREE_CAP)?.count;
                if brute != exact {
                    return Ok((false, format!("n = {n}: {exact} vs {brute}")));
                }
            }
            let approx = log_tree_count(&h)?;
            let ln = ln_biguint(&exact);
            if !(rel_close(approx, ln, 1e-9) || (approx - ln).abs() < 1e-12) {
                return Ok((false, format!("n = {n}: log {approx} vs {ln}")));
            }
            detail.push(format!("n = {n}: {exact}"));
        }
        Ok((true, detail.join(", ")))
    })());

    report.record("temperley", (|| {
        let mut detail = Vec::new();
        for n in [2usize, 3] {
            let plane = patch(g, n).plane().clone();
            let tau = tree_count_exact(&plane.graph(), DEFAULT_EXACT_CAP)?;
            let z = partition_planar(&plane.temperley())?;
            if tau != z {
                return Ok((false, format!("n = {n}: {tau} trees vs {z} matchings")));
            }
            detail.push(format!("n = {n}: {tau}"));
        }
        Ok((true, detail.join(", ")))
    })());

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::builtin;

    #[test]
    fn builtins_pass() {
        for name in ["weave", "triaxial"] {
            let report = run_checks(&builtin(name).unwrap(), CheckOptions::default());
            for item in &report.items {
                assert!(item.passed, "{name}: {} failed: {}", item.name, item.detail);
            }
            assert_eq!(report.items.len(), 13);
        }
    }
}

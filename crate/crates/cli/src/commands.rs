use std::f64::consts::TAU;

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Value};

use dimerlab::check::{run_checks, CheckOptions};
use dimerlab::exact::ln_biguint;
use dimerlab::kasteleyn::{calibrate_signs, kasteleyn_signs, partition_toroidal};
use dimerlab::mahler::mahler_2d;
use dimerlab::oracle::enum_dimers;
use dimerlab::torus::{load_graph, patch, ToroidalGraph};
use dimerlab::treecount::{density_sweep, log_tree_count, tree_count_exact, DENSITY_HEADER};
use dimerlab::{Graph, LaurentPoly2};

use crate::failure::CliError;
use crate::output::{key_values, pretty, Table};
use crate::Format;

fn big(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn ubig(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn graph(source: &str) -> Result<ToroidalGraph, CliError> {
    Ok(load_graph(source)?)
}

fn graph_poly(source: &str) -> Result<(ToroidalGraph, LaurentPoly2), CliError> {
    let g = graph(source)?;
    let p = kasteleyn_signs(&g.overlay())?.char_poly()?;
    Ok((g, p))
}

fn positive(ns: &[usize]) -> Result<(), CliError> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::Config("--n needs positive integers".into()));
    }
    Ok(())
}

pub fn charpoly(source: &str, format: Format) -> Result<String, CliError> {
    let (_, p) = graph_poly(source)?;
    let normalized = p.normalize()?;
    let mut table = Table::new(&["z", "w", "coeff"]);
    for ((a, b), c) in p.terms() {
        table.push(vec![json!(a), json!(b), big(c)]);
    }
    match format {
        Format::Text => Ok(key_values(&[("p", p.to_string()), ("normalized", normalized.to_string())])),
        Format::Csv => table.render(Format::Csv),
        Format::Json => {
            let terms: Value = serde_json::from_str(&table.render(Format::Json)?).expect("own output");
            Ok(pretty(&json!({
                "graph": source,
                "poly": p.to_string(),
                "normalized": normalized.to_string(),
                "terms": terms,
            })))
        }
    }
}

pub enum MahlerInput {
    Graph(String),
    Poly(String),
}

pub fn mahler(input: MahlerInput, tol: f64, format: Format) -> Result<String, CliError> {
    let (p, edges) = match &input {
        MahlerInput::Graph(source) => {
            let (g, p) = graph_poly(source)?;
            (p, Some(g.num_edges()))
        }
        MahlerInput::Poly(text) => (text.parse::<LaurentPoly2>()?, None),
    };
    let r = mahler_2d(&p, tol)?;
    let mut fields: Vec<(&'static str, Value)> = vec![
        ("m", json!(r.value)),
        ("2pi_m", json!(TAU * r.value)),
        ("error_estimate", json!(r.error_estimate)),
        ("grid_points", json!(r.grid_points)),
        ("refinements", json!(r.refinements)),
    ];
    if let Some(c) = edges {
        let density = r.value / c as f64;
        fields.push(("c", json!(c)));
        fields.push(("density", json!(density)));
        fields.push(("two_pi_density", json!(TAU * density)));
    }
    match format {
        Format::Text => {
            let show = |v: &Value| match v.as_f64() {
                Some(x) if v.is_f64() => format!("{x:.9}"),
                _ => v.to_string(),
            };
            let mut pairs: Vec<(&str, String)> = fields.iter().map(|(k, v)| (*k, show(v))).collect();
            if let Some(e) = pairs.iter_mut().find(|(k, _)| *k == "error_estimate") {
                e.1 = format!("{:.3e}", r.error_estimate);
            }
            Ok(key_values(&pairs))
        }
        Format::Csv => {
            let header: Vec<&'static str> = fields.iter().map(|(k, _)| *k).collect();
            let mut t = Table::new(&header);
            t.push(fields.into_iter().map(|(_, v)| v).collect());
            t.render(Format::Csv)
        }
        Format::Json => {
            let obj: serde_json::Map<String, Value> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            Ok(pretty(&Value::Object(obj)))
        }
    }
}

pub fn density(source: &str, ns: &[usize], exact_cap: usize, format: Format) -> Result<String, CliError> {
    positive(ns)?;
    let rows = density_sweep(&graph(source)?, ns, exact_cap)?;
    let mut t = Table::new(&DENSITY_HEADER);
    for r in rows {
        t.push(vec![
            json!(r.n),
            json!(r.vertices),
            json!(r.edges),
            json!(r.log_tau),
            json!(r.density),
            json!(r.two_pi_density),
        ]);
    }
    t.render(format)
}

pub fn dimers(source: &str, ns: &[usize], brute: bool, cap: usize, format: Format) -> Result<String, CliError> {
    positive(ns)?;
    let b = graph(source)?.overlay();
    let mut t = Table::new(&["n", "dimers", "method"]);
    if brute {
        for &n in ns {
            let report = enum_dimers(&b.quotient(n).to_finite(), cap)?;
            t.push(vec![json!(n), ubig(&report.count), json!("enumeration")]);
        }
    } else {
        let k = kasteleyn_signs(&b)?;
        let cal = calibrate_signs(&k, cap)?;
        for &n in ns {
            let z = partition_toroidal(&k, &cal, n)?;
            t.push(vec![json!(n), ubig(&z), json!(format!("kasteleyn {}", cal.for_n(n)))]);
        }
    }
    t.render(format)
}

pub enum TreeInput {
    Patches(String, Vec<usize>),
    File(String),
}

fn tree_row(t: &mut Table, label: Value, g: &Graph, cap: usize) -> Result<(), CliError> {
    let (tau, log_tau) = if g.num_vertices() <= cap {
        let tau = tree_count_exact(g, cap)?;
        let ln = ln_biguint(&tau);
        (ubig(&tau), ln)
    } else {
        (Value::Null, log_tree_count(g)?)
    };
    t.push(vec![label, json!(g.num_vertices()), json!(g.num_edges()), tau, json!(log_tau)]);
    Ok(())
}

pub fn treecount(input: TreeInput, cap: usize, format: Format) -> Result<String, CliError> {
    let mut t = Table::new(&["n", "vertices", "edges", "tau", "log_tau"]);
    match input {
        TreeInput::Patches(source, ns) => {
            positive(&ns)?;
            let g = graph(&source)?;
            for n in ns {
                tree_row(&mut t, json!(n), &patch(&g, n).plane().graph(), cap)?;
            }
        }
        TreeInput::File(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("cannot read `{path}`: {e}")))?;
            let raw: Graph = serde_json::from_str(&text).map_err(|e| dimerlab::Error::Parse(e.to_string()))?;
            // re-validate, deserialization bypasses the constructor
            let g = Graph::new(raw.num_vertices(), raw.edges().to_vec())?;
            tree_row(&mut t, Value::Null, &g, cap)?;
        }
    }
    t.render(format)
}

fn mark(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check(source: &str, seed: u64, tol: f64, format: Format) -> Result<String, CliError> {
    let report = run_checks(&graph(source)?, CheckOptions { seed, tol });
    let out = match format {
        Format::Json => pretty(&json!({ "graph": source, "passed": report.passed(), "checks": report.items })),
        Format::Csv => {
            let mut t = Table::new(&["check", "result", "detail"]);
            for item in &report.items {
                t.push(vec![json!(item.name), json!(mark(item.passed)), json!(item.detail)]);
            }
            t.render(Format::Csv)?
        }
        Format::Text => {
            let mut out = String::new();
            for item in &report.items {
                out += &format!("{} {}: {}\n", mark(item.passed), item.name, item.detail);
            }
            let passed = report.items.iter().filter(|c| c.passed).count();
            out + &format!("{passed}/{} checks passed\n", report.items.len())
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(CliError::CheckFailed(out))
    }
}

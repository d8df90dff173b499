//! Mahler measures by Jensen's formula in one variable and the periodic
//! trapezoid rule in the other.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly2;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const FIRST_GRID: usize = 64;
pub const MAX_GRID: usize = 1 << 20;

/// Coefficients below this fraction of the largest are treated as zero
/// when trimming a fiber whose degree drops.
const TRIM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MahlerResult {
    pub value: f64,
    pub error_estimate: f64,
    pub grid_points: usize,
    pub refinements: usize,
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * x + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

/// Roots of `sum coeffs[i] x^i` (leading coefficient nonzero, degree >= 1)
/// by the Aberth-Ehrlich iteration followed by Newton polishing.
pub fn roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    assert!(d >= 1);
    let lead = coeffs[d];
    if d == 1 {
        return vec![-coeffs[0] / lead];
    }
    if d == 2 {
        let (a, b, c) = (coeffs[2], coeffs[1], coeffs[0]);
        let disc = (b * b - a * c * 4.0).sqrt();
        // pick the sign that avoids cancellation
        let q = if (b.conj() * disc).re >= 0.0 {
            -(b + disc) * 0.5
        } else {
            -(b - disc) * 0.5
        };
        if q == Complex64::zero() {
            return vec![Complex64::zero(); 2];
        }
        return vec![q / a, c / q];
    }
    let dp = derivative(coeffs);
    // Cauchy bound on the root moduli
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * radius, std::f64::consts::TAU * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..d {
            let pv = horner(coeffs, z[i]);
            if pv == Complex64::zero() {
                continue;
            }
            let ratio = pv / horner(&dp, z[i]);
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..2 {
            let step = horner(coeffs, *r) / horner(&dp, *r);
            if step.is_finite() {
                *r -= step;
            }
        }
    }
    z
}

/// Strips coefficients that vanish relative to the largest one at both ends.
fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let small = |c: &Complex64| c.norm() <= TRIM * scale;
    let lo = coeffs.iter().position(|c| !small(c)).unwrap_or(coeffs.len());
    let hi = coeffs.iter().rposition(|c| !small(c)).map_or(lo, |i| i + 1);
    &coeffs[lo..hi.max(lo)]
}

/// `log|lead| + sum log max(|root|, 1)` for `sum coeffs[i] x^i`.
pub fn mahler_1d(coeffs: &[Complex64]) -> Result<f64> {
    let c = trim(coeffs);
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let lead = c[c.len() - 1].norm().ln();
    if c.len() == 1 {
        return Ok(lead);
    }
    Ok(lead
        + roots(c)
            .iter()
            .map(|r| r.norm().ln().max(0.0))
            .sum::<f64>())
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// `p` written as `sum_b c_b(z) w^b`, shifted so that `b` starts at zero.
struct Fibers {
    /// For each power of `w`, the terms `(a, coefficient)` of `c_b(z)`.
    columns: Vec<Vec<(i32, f64)>>,
}

impl Fibers {
    fn new(p: &LaurentPoly2) -> Self {
        let (_, _, lo_b, hi_b) = p.exponent_box().expect("nonzero polynomial");
        let mut columns = vec![Vec::new(); (hi_b - lo_b + 1) as usize];
        for ((a, b), c) in p.terms() {
            columns[(b - lo_b) as usize].push((a as i32, c.to_f64().unwrap_or(f64::NAN)));
        }
        Self { columns }
    }

    fn at(&self, z: Complex64) -> Vec<Complex64> {
        self.columns
            .iter()
            .map(|col| col.iter().map(|&(a, c)| z.powi(a) * c).sum())
            .collect()
    }
}

/// Trapezoid approximation with `n` half-step offset nodes.
fn trapezoid(fibers: &Fibers, n: usize) -> Result<f64> {
    let values = (0..n)
        .into_par_iter()
        .map(|j| {
            let theta = std::f64::consts::TAU * (j as f64 + 0.5) / n as f64;
            mahler_1d(&fibers.at(Complex64::from_polar(1.0, theta)))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&values) / n as f64)
}

/// Two-variable Mahler measure. The inner integral over `w` is exact by
/// Jensen's formula; the outer one uses grids of 64, 128, ... points until
/// two successive values differ by less than `tol`.
pub fn mahler_2d(p: &LaurentPoly2, tol: f64) -> Result<MahlerResult> {
    mahler_2d_with_budget(p, tol, MAX_GRID)
}

pub fn mahler_2d_with_budget(p: &LaurentPoly2, tol: f64, max_grid: usize) -> Result<MahlerResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (lo_a, hi_a, lo_b, hi_b) = p.exponent_box().ok_or(Error::ZeroPolynomial)?;
    // a polynomial in z alone is integrated exactly after swapping
    let q = if lo_b == hi_b && lo_a != hi_a { p.swap_variables() } else { p.clone() };
    let fibers = Fibers::new(&q);
    if q.exponent_box().is_some_and(|(a0, a1, _, _)| a0 == a1) {
        let value = mahler_1d(&fibers.at(Complex64::new(1.0, 0.0)))?;
        return Ok(MahlerResult {
            value,
            error_estimate: 0.0,
            grid_points: 1,
            refinements: 0,
        });
    }
    let mut n = FIRST_GRID.min(max_grid);
    let mut prev = trapezoid(&fibers, n)?;
    let mut diff = f64::INFINITY;
    let mut refinements = 0;
    while 2 * n <= max_grid {
        n *= 2;
        refinements += 1;
        let next = trapezoid(&fibers, n)?;
        diff = (next - prev).abs();
        prev = next;
        if diff < tol {
            return Ok(MahlerResult {
                value: next,
                error_estimate: diff,
                grid_points: n,
                refinements,
            });
        }
    }
    Err(Error::NonConvergence {
        value: prev,
        difference: diff,
        points: n,
    })
}

/// `(m(p) / c, 2π m(p) / c)`.
pub fn det_density(p: &LaurentPoly2, c_l: usize, tol: f64) -> Result<(f64, f64)> {
    if c_l == 0 {
        return Err(Error::InvalidArgument("c(L) must be positive".into()));
    }
    let m = mahler_2d(p, tol)?.value;
    let d = m / c_l as f64;
    Ok((d, std::f64::consts::TAU * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn one_variable() {
        let ln2 = 2f64.ln();
        assert!((mahler_1d(&c(&[-2.0, 1.0])).unwrap() - ln2).abs() < 1e-12);
        assert!(mahler_1d(&c(&[0.0, 0.0, 0.0, 1.0])).unwrap().abs() < 1e-12);
        assert!((mahler_1d(&c(&[1.0, -3.0, 2.0])).unwrap() - ln2).abs() < 1e-12);
        assert_eq!(mahler_1d(&c(&[0.0, 0.0])), Err(Error::ZeroPolynomial));
        // (x - 3)(x - 0.5)(x + 2)(x - 1) = x^4 - 1.5x^3 - 5.5x^2 + 9x - 3
        let m = mahler_1d(&c(&[-3.0, 9.0, -5.5, -1.5, 1.0])).unwrap();
        assert!((m - 6f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn root_residuals() {
        let coeffs = c(&[1.0, -2.0, 0.5, 3.0, -1.0, 0.25, 2.0]);
        let scale: f64 = coeffs.iter().map(|x| x.norm()).sum();
        for r in roots(&coeffs) {
            assert!(horner(&coeffs, r).norm() < 1e-8 * scale * r.norm().max(1.0).powi(6));
        }
    }

    #[test]
    fn constants_and_monomials() {
        let seven = LaurentPoly2::constant(7);
        let r = mahler_2d(&seven, 1e-6).unwrap();
        assert!((r.value - 7f64.ln()).abs() < 1e-12);
        let mono: LaurentPoly2 = "-3*z^2*w^-1".parse().unwrap();
        assert!((mahler_2d(&mono, 1e-6).unwrap().value - 3f64.ln()).abs() < 1e-12);
        assert_eq!(det_density(&LaurentPoly2::one(), 5, 1e-6).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn smyth() {
        let p: LaurentPoly2 = "1 + z + w".parse().unwrap();
        let r = mahler_2d(&p, 1e-7).unwrap();
        assert!((r.value - 0.3230659472).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        assert!((pairwise_sum(&xs) - xs.iter().sum::<f64>()).abs() < 1e-10);
    }
}

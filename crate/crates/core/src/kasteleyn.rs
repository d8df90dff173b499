//! Kasteleyn signings, characteristic polynomials and dimer partition
//! functions of planar and toroidal bipartite graphs.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::embed::{edge_of, Dart, Embedding};
use crate::error::{Error, Result};
use crate::exact::{self, mul_mod, reduce_big, root_of_unity};
use crate::gf2::Gf2System;
use crate::laurent::{complex_det, lp_det, LaurentMatrix, LaurentPoly2};
use crate::oracle::enum_dimers;
use crate::plane::PlaneBipartite;
use crate::torus::{BipartiteTorusGraph, Shift};

/// Number of minus signs a face of length `len` must carry, mod 2.
fn face_parity(len: usize) -> bool {
    (len / 2 + 1) % 2 == 1
}

fn face_equations(num_edges: usize, faces: &[Vec<Dart>]) -> Gf2System {
    let mut sys = Gf2System::new(num_edges);
    for walk in faces {
        sys.push(walk.iter().map(|&d| edge_of(d)), face_parity(walk.len()));
    }
    sys
}

/// Every face carries the required parity of minus signs.
pub fn signs_valid(faces: &[Vec<Dart>], minus: &[bool]) -> bool {
    faces.iter().all(|walk| {
        let count = walk.iter().filter(|&&d| minus[edge_of(d)]).count();
        (count % 2 == 1) == face_parity(walk.len())
    })
}

/// A Kasteleyn signing of a balanced bipartite toroidal graph together with
/// the homology exponents of its edges.
#[derive(Debug, Clone, PartialEq)]
pub struct KasteleynSystem {
    graph: BipartiteTorusGraph,
    minus: Vec<bool>,
    /// Displacement from the black end of each edge to its white end.
    weights: Vec<Shift>,
}

/// Solves the face parity system; the last face equation is implied by the
/// others and is dropped, then every face is re-checked.
pub fn kasteleyn_signs(g: &BipartiteTorusGraph) -> Result<KasteleynSystem> {
    if !g.is_balanced() {
        return Err(Error::Unbalanced {
            black: g.num_black(),
            white: g.num_white(),
        });
    }
    let faces = g.faces();
    let keep = faces.len().saturating_sub(1);
    let sys = face_equations(g.num_edges(), &faces[..keep]);
    let minus = sys
        .solve()
        .ok_or_else(|| Error::Inconsistent("face parity system has no solution".into()))?;
    if !signs_valid(&faces, &minus) {
        return Err(Error::Inconsistent("dropped face equation is violated".into()));
    }
    let weights = g.edges().map(|(_, _, s)| [-s[0], -s[1]]).collect();
    let mut k = KasteleynSystem {
        graph: g.clone(),
        minus,
        weights,
    };
    k.canonicalize()?;
    Ok(k)
}

/// Among `s p(±z, ±w)`, the choice with the most negative coefficients;
/// ties go to the smallest normalized form, so the choice depends only on
/// the class of `p` and not on the signing it came from.
fn preferred_flip(p: &LaurentPoly2) -> (i8, i8, i8) {
    let mut best: Option<(usize, LaurentPoly2, (i8, i8, i8))> = None;
    for &(sz, sw) in &SIGN_POINTS {
        let q = p.flip_signs(sz, sw);
        let neg = q.terms().filter(|(_, c)| c.is_negative()).count();
        let form = q.normalize().expect("nonzero polynomial");
        for (s, count) in [(1, neg), (-1, q.num_terms() - neg)] {
            let better = match &best {
                None => true,
                Some((c, f, _)) => count > *c || (count == *c && form.sort_key() < f.sort_key()),
            };
            if better {
                best = Some((count, form.clone(), (s, sz, sw)));
            }
        }
    }
    best.expect("four candidates").2
}

impl KasteleynSystem {
    pub fn graph(&self) -> &BipartiteTorusGraph {
        &self.graph
    }

    /// `+1` or `-1` per edge.
    pub fn signs(&self) -> Vec<i8> {
        self.minus.iter().map(|&m| if m { -1 } else { 1 }).collect()
    }

    pub fn weights(&self) -> &[Shift] {
        &self.weights
    }

    pub fn is_valid(&self) -> bool {
        signs_valid(&self.graph.faces(), &self.minus)
    }

    pub fn dimension(&self) -> usize {
        self.graph.num_black()
    }

    /// `κ(z, w)`: rows are black vertices, columns white vertices.
    pub fn matrix(&self) -> LaurentMatrix {
        let k = self.dimension();
        let mut m = vec![vec![LaurentPoly2::zero(); k]; k];
        for (e, (w, b, _)) in self.graph.edges().enumerate() {
            let [a, c] = self.weights[e];
            let sign = if self.minus[e] { -1 } else { 1 };
            m[b][w] = &m[b][w] + &LaurentPoly2::monomial(sign, a, c);
        }
        m
    }

    pub fn eval_matrix(&self, z: Complex64, w: Complex64) -> Vec<Vec<Complex64>> {
        let k = self.dimension();
        let mut m = vec![vec![Complex64::zero(); k]; k];
        for (e, (wh, b, _)) in self.graph.edges().enumerate() {
            let [a, c] = self.weights[e];
            let sign = if self.minus[e] { -1.0 } else { 1.0 };
            m[b][wh] += z.powi(a as i32) * w.powi(c as i32) * sign;
        }
        m
    }

    /// `p(z, w) = det κ(z, w)`.
    pub fn char_poly(&self) -> Result<LaurentPoly2> {
        lp_det(&self.matrix())
    }

    /// Moves to another signing in the same class so that the polynomial
    /// is the representative picked by `preferred_flip`. Multiplying signs
    /// by `(-1)^a` for edges with `z`-exponent `a` keeps every face valid
    /// and substitutes `-z` for `z`; negating one row negates `p`.
    fn canonicalize(&mut self) -> Result<()> {
        if self.dimension() == 0 {
            return Ok(());
        }
        let p = self.char_poly()?;
        if p.is_zero() {
            return Ok(());
        }
        let (s, sz, sw) = preferred_flip(&p);
        for (e, [a, c]) in self.weights.iter().enumerate() {
            let odd = (sz < 0 && a.rem_euclid(2) == 1) != (sw < 0 && c.rem_euclid(2) == 1);
            self.minus[e] ^= odd;
        }
        if s < 0 {
            for (e, (_, b, _)) in self.graph.edges().enumerate() {
                if b == 0 {
                    self.minus[e] ^= true;
                }
            }
        }
        Ok(())
    }

    /// The system on `G / nΛ` with the signing lifted copy by copy.
    pub fn lift(&self, n: usize) -> KasteleynSystem {
        let graph = self.graph.quotient(n);
        let ne = self.graph.num_edges();
        let minus = (0..graph.num_edges()).map(|e| self.minus[e % ne]).collect();
        let weights = graph.edges().map(|(_, _, s)| [-s[0], -s[1]]).collect();
        KasteleynSystem {
            graph,
            minus,
            weights,
        }
    }
}

/// Evaluation points in the order used by [`SignCombination`].
pub const SIGN_POINTS: [(i8, i8); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// Coefficients applied to `p(1,1), p(-1,1), p(1,-1), p(-1,-1)`; exactly
/// one differs from the other three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCombination {
    pub eps: [i8; 4],
}

impl SignCombination {
    /// The combination with the odd coefficient at position `k`.
    pub fn odd_at(k: usize) -> Self {
        let mut eps = [1; 4];
        eps[k] = -1;
        Self { eps }
    }

    /// `(-, +, +, +)`.
    pub fn standard() -> Self {
        Self::odd_at(0)
    }

    pub fn odd_index(&self) -> usize {
        let neg = self.eps.iter().filter(|&&e| e < 0).count();
        let odd_sign = if neg == 1 { -1 } else { 1 };
        self.eps.iter().position(|&e| e == odd_sign).expect("one odd sign")
    }

    /// `|sum eps_k v_k| / 2`.
    pub fn apply(&self, values: &[BigInt; 4]) -> Result<BigUint> {
        let s: BigInt = self
            .eps
            .iter()
            .zip(values)
            .map(|(&e, v)| if e < 0 { -v } else { v.clone() })
            .sum();
        if (&s % 2u32) != BigInt::zero() {
            return Err(Error::Calibration(format!("odd signed sum {s}")));
        }
        Ok((s.abs() / 2u32).magnitude().clone())
    }
}

impl fmt::Display for SignCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.eps.iter().map(|&e| if e < 0 { "-" } else { "+" }).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Sign combinations for odd and even quotient orders.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub odd: SignCombination,
    pub even: SignCombination,
    /// Whether `even` was checked against enumeration at `n = 2`.
    pub even_verified: bool,
}

impl Calibration {
    pub fn for_n(&self, n: usize) -> SignCombination {
        if n % 2 == 1 {
            self.odd
        } else {
            self.even
        }
    }
}

/// Combinations reproducing `count`, the standard one first if it matches.
fn matching_combinations(values: &[BigInt; 4], count: &BigUint) -> Vec<SignCombination> {
    (0..4)
        .map(SignCombination::odd_at)
        .filter(|c| c.apply(values).ok().as_ref() == Some(count))
        .collect()
}

/// Finds the combination reproducing the enumerated dimer count at `n = 1`
/// and re-checks it at `n = 2` when the doubled cover is small enough for
/// enumeration (`cap` vertices per color). On even covers every cycle of
/// the torus lifts to an even multiple of a base cycle, so without
/// enumeration `(-,+,+,+)` is used there.
pub fn calibrate_signs(k: &KasteleynSystem, cap: usize) -> Result<Calibration> {
    let p = k.char_poly()?;
    let values = p_n_at_signs(&p, 1)?;
    let count = enum_dimers(&k.graph.to_finite(), cap)?.count;
    let found = matching_combinations(&values, &count);
    let odd = *found
        .first()
        .ok_or_else(|| Error::Calibration(format!("n = 1, values {values:?}, count {count}")))?;
    if 4 * k.dimension() > cap {
        return Ok(Calibration {
            odd,
            even: SignCombination::standard(),
            even_verified: false,
        });
    }
    let values2 = p_n_at_signs(&p, 2)?;
    let count2 = enum_dimers(&k.graph.quotient(2).to_finite(), cap)?.count;
    let found2 = matching_combinations(&values2, &count2);
    let even = if found2.contains(&odd) {
        odd
    } else {
        *found2.first().ok_or_else(|| {
            Error::Calibration(format!("n = 2, values {values2:?}, count {count2}"))
        })?
    };
    Ok(Calibration {
        odd,
        even,
        even_verified: true,
    })
}

/// `p_n(z0, w0) = prod p(u, v)` over `u^n = z0`, `v^n = w0`, in floating
/// point.
pub fn product_over_roots(p: &LaurentPoly2, n: usize, z0: Complex64, w0: Complex64) -> Complex64 {
    let roots = |x: Complex64| -> Vec<Complex64> {
        let (r, t) = x.to_polar();
        let r = r.powf(1.0 / n as f64);
        (0..n)
            .map(|j| Complex64::from_polar(r, (t + std::f64::consts::TAU * j as f64) / n as f64))
            .collect()
    };
    let (us, vs) = (roots(z0), roots(w0));
    let mut acc = Complex64::one();
    for &u in &us {
        for &v in &vs {
            acc *= p.eval_unchecked(u, v);
        }
    }
    acc
}

/// Exact `p_n(±1, ±1)` in the order of [`SIGN_POINTS`], by multi-modular
/// evaluation of the product over roots of unity.
pub fn p_n_at_signs(p: &LaurentPoly2, n: usize) -> Result<[BigInt; 4]> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(SIGN_POINTS.map(|(sz, sw)| p.eval_signs(sz, sw)));
    }
    let order = 2 * n as i64;
    let terms: Vec<((i64, i64), BigInt)> =
        p.terms().map(|((a, b), c)| ((a.rem_euclid(order), b.rem_euclid(order)), c.clone())).collect();
    let mut out: [BigInt; 4] = Default::default();
    for (slot, &(sz, sw)) in out.iter_mut().zip(&SIGN_POINTS) {
        // u = exp(i pi (2j + oz) / n) with oz = 0 for z0 = 1 and 1 for z0 = -1
        let (oz, ow) = ((sz < 0) as i64, (sw < 0) as i64);
        let mut log2_sum = 0.0;
        let mut bound = 0.0;
        let mut smallest = f64::INFINITY;
        for j in 0..n as i64 {
            for l in 0..n as i64 {
                let u = Complex64::from_polar(1.0, std::f64::consts::PI * (2 * j + oz) as f64 / n as f64);
                let v = Complex64::from_polar(1.0, std::f64::consts::PI * (2 * l + ow) as f64 / n as f64);
                let m = p.eval_unchecked(u, v).norm();
                smallest = smallest.min(m);
                log2_sum += m.log2();
                bound += (m + 1e-6).log2();
            }
        }
        let value = exact::reconstruct(bound + 64.0, order as u64, |prime| {
            let zeta = root_of_unity(order as u64, prime);
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u64;
            for _ in 0..order {
                powers.push(x);
                x = mul_mod(x, zeta, prime);
            }
            let coeffs: Vec<((i64, i64), u64)> =
                terms.iter().map(|&(e, ref c)| (e, reduce_big(c, prime))).collect();
            let mut acc = 1u64;
            for j in 0..n as i64 {
                for l in 0..n as i64 {
                    let (eu, ev) = (2 * j + oz, 2 * l + ow);
                    let mut s = 0u64;
                    for &((a, b), c) in &coeffs {
                        let k = (a * eu + b * ev).rem_euclid(order) as usize;
                        s = (s + mul_mod(c, powers[k], prime)) % prime;
                    }
                    acc = mul_mod(acc, s, prime);
                }
            }
            acc
        });
        let ok = if value.is_zero() {
            smallest < 1e-6
        } else {
            let got = exact::ln_abs(&value) / std::f64::consts::LN_2;
            (got - log2_sum).abs() < 1e-6 * (n * n) as f64 + 1e-9
        };
        if !ok {
            return Err(Error::Reconstruction(format!(
                "p_{n}({sz},{sw}) = {value} disagrees with floating estimate 2^{log2_sum}"
            )));
        }
        *slot = value;
    }
    Ok(out)
}

/// `Z(G_n)` from the four exact evaluations of `p_n`.
pub fn partition_toroidal(
    k: &KasteleynSystem,
    calibration: &Calibration,
    n: usize,
) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let p = k.char_poly()?;
    let values = p_n_at_signs(&p, n)?;
    calibration.for_n(n).apply(&values)
}

/// Signing of a plane bipartite graph. Components are signed independently
/// and every facial walk (the outer one included) gets an equation; for a
/// component with an even number of vertices the outer equation is implied
/// by the bounded ones. Returns `None` when some component is unbalanced,
/// in which case there is no perfect matching.
pub fn planar_signs(g: &PlaneBipartite) -> Result<Option<Vec<bool>>> {
    let emb: &Embedding = g.embedding();
    let (count, comp) = emb.components();
    let mut balance = vec![0i64; count];
    for (v, &c) in comp.iter().enumerate() {
        balance[c] += if v < g.num_black() { 1 } else { -1 };
    }
    if balance.iter().any(|&b| b != 0) {
        return Ok(None);
    }
    let faces = emb.faces();
    let minus = face_equations(g.num_edges(), &faces)
        .solve()
        .ok_or_else(|| Error::Inconsistent("planar face parity system".into()))?;
    Ok(Some(minus))
}

/// Number of perfect matchings of a plane bipartite graph, `|det κ|`.
pub fn partition_planar(g: &PlaneBipartite) -> Result<BigUint> {
    let (nb, nw) = (g.num_black(), g.num_white());
    if nb != nw {
        return Err(Error::Unbalanced {
            black: nb,
            white: nw,
        });
    }
    if nb == 0 {
        return Ok(BigUint::one());
    }
    let Some(minus) = planar_signs(g)? else {
        return Ok(BigUint::zero());
    };
    let mut m = vec![vec![0i64; nw]; nb];
    for (e, &neg) in minus.iter().enumerate() {
        let (w, b) = g.edge(e);
        m[b][w] += if neg { -1 } else { 1 };
    }
    Ok(exact::abs_big(exact::det_exact(&m)))
}

/// Numeric determinant of `κ` at a point.
pub fn det_at(k: &KasteleynSystem, z: Complex64, w: Complex64) -> Complex64 {
    complex_det(k.eval_matrix(z, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::builtin;

    fn system(name: &str) -> KasteleynSystem {
        kasteleyn_signs(&builtin(name).unwrap().overlay()).unwrap()
    }

    #[test]
    fn builtin_signings_are_valid() {
        for name in ["weave", "triaxial"] {
            let k = system(name);
            assert!(k.is_valid());
            let faces = k.graph().faces();
            for walk in &faces {
                let minus = walk.iter().filter(|&&d| k.signs()[edge_of(d)] < 0).count();
                assert_eq!(minus % 2, 1);
            }
        }
    }

    #[test]
    fn lifted_signing_stays_valid() {
        let k = system("triaxial").lift(3);
        assert!(k.is_valid());
        assert_eq!(k.dimension(), 27);
    }

    #[test]
    fn weave_and_triaxial_polynomials() {
        let weave: LaurentPoly2 = "-(4 + z + 1/z + w + 1/w)".parse().unwrap();
        let p = system("weave").char_poly().unwrap();
        assert_eq!(p.normalize().unwrap(), weave.normalize().unwrap());
        let tri: LaurentPoly2 = "6 - (1/w + w + 1/z + z + w/z + z/w)".parse().unwrap();
        let p = system("triaxial").char_poly().unwrap();
        assert_eq!(p.normalize().unwrap(), tri.normalize().unwrap());
        assert_eq!(
            p.sign_class_representative().unwrap(),
            tri.flip_signs(-1, 1).sign_class_representative().unwrap()
        );
    }

    #[test]
    fn canonical_choice_is_stable() {
        let tri: LaurentPoly2 = "6 - (1/w + w + 1/z + z + w/z + z/w)".parse().unwrap();
        assert_eq!(preferred_flip(&tri), (1, 1, 1));
        assert_eq!(preferred_flip(&-tri.flip_signs(1, -1)), (-1, 1, -1));
    }

    #[test]
    fn combination_arithmetic() {
        let v = [-8, -4, -4, 0].map(BigInt::from);
        let c = SignCombination::odd_at(3);
        assert_eq!(c.apply(&v).unwrap(), BigUint::from(8u32));
        assert_eq!(c.odd_index(), 3);
        assert_eq!(SignCombination::standard().apply(&v).unwrap(), BigUint::zero());
        assert_eq!(SignCombination { eps: [1, -1, -1, -1] }.odd_index(), 0);
        assert_eq!(c.to_string(), "(+,+,+,-)");
    }

    #[test]
    fn product_matches_exact_values() {
        let p = system("weave").char_poly().unwrap();
        let exact = p_n_at_signs(&p, 3).unwrap();
        for (v, &(sz, sw)) in exact.iter().zip(&SIGN_POINTS) {
            let z0 = Complex64::new(sz as f64, 0.0);
            let w0 = Complex64::new(sw as f64, 0.0);
            let f = product_over_roots(&p, 3, z0, w0);
            let v: f64 = v.to_string().parse().unwrap();
            assert!((f.re - v).abs() < 1e-6 * v.abs().max(1.0));
        }
    }

    #[test]
    fn planar_small_cases() {
        let edge = PlaneBipartite::from_geometry(1, vec![[0.0, 0.0], [1.0, 0.0]], &[(0, 0)]).unwrap();
        assert_eq!(partition_planar(&edge).unwrap(), BigUint::one());
        let square = PlaneBipartite::from_geometry(
            2,
            vec![[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]],
            &[(0, 0), (0, 1), (1, 0), (1, 1)],
        )
        .unwrap();
        assert_eq!(partition_planar(&square).unwrap(), BigUint::from(2u32));
        let minus = planar_signs(&square).unwrap().unwrap();
        assert_eq!(minus.iter().filter(|&&m| m).count() % 2, 1);
        let lopsided =
            PlaneBipartite::from_geometry(2, vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]], &[(0, 0), (0, 1)])
                .unwrap();
        assert!(matches!(partition_planar(&lopsided), Err(Error::Unbalanced { .. })));
    }
}

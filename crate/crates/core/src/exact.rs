//! Exact integer linear algebra: fraction-free and multi-modular
//! determinants, word-size primes and Chinese remaindering.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

/// Bareiss elimination with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_CEILING: u64 = 1 << 62;

/// The largest `count` primes below 2^62 congruent to 1 modulo `m`,
/// in decreasing order.
pub fn primes_one_mod(m: u64, count: usize) -> Vec<u64> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(count);
    let mut k = (PRIME_CEILING - 2) / m;
    while out.len() < count {
        assert!(k > 0, "ran out of primes");
        let p = k * m + 1;
        if p > 2 && is_prime(p) {
            out.push(p);
        }
        k -= 1;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A primitive `order`-th root of unity modulo `p`; requires `order | p - 1`.
pub fn root_of_unity(order: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % order, 0);
    let factors = prime_factors(order);
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / order, p))
        .find(|&y| factors.iter().all(|&q| pow_mod(y, order / q, p) != 1))
        .expect("multiplicative group is cyclic")
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn reduce_big(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Determinant modulo a prime by Gaussian elimination.
pub fn det_mod(m: &[Vec<i64>], p: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| reduce_i64(x, p)).collect())
        .collect();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = inv_mod(a[k][k], p);
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k..n {
                let sub = mul_mod(f, pivot_row[j], p);
                row[j] = if row[j] >= sub { row[j] - sub } else { row[j] + p - sub };
            }
        }
    }
    det
}

/// Incremental Chinese remaindering.
#[derive(Debug, Clone)]
pub struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

impl Crt {
    pub fn new() -> Self {
        Self {
            value: BigInt::zero(),
            modulus: BigInt::one(),
        }
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn push(&mut self, residue: u64, p: u64) {
        let m_mod_p = reduce_big(&self.modulus, p);
        let v_mod_p = reduce_big(&self.value, p);
        let diff = (residue + p - v_mod_p) % p;
        let t = mul_mod(diff, inv_mod(m_mod_p, p), p);
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= BigInt::from(p);
    }

    /// The representative in `(-M/2, M/2]`.
    pub fn symmetric(&self) -> BigInt {
        let half = &self.modulus >> 1usize;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

/// `log2` of the Hadamard bound on `|det m|`.
pub fn hadamard_bits(m: &[Vec<i64>]) -> f64 {
    m.iter()
        .map(|row| {
            let s: f64 = row.iter().map(|&x| (x as f64) * (x as f64)).sum();
            0.5 * s.max(1.0).log2()
        })
        .sum()
}

/// Reconstructs an integer of absolute value below `2^bound_bits` from its
/// residues modulo primes `p = 1 (mod one_mod)` below 2^62, computed in
/// parallel.
pub fn reconstruct(
    bound_bits: f64,
    one_mod: u64,
    residue: impl Fn(u64) -> u64 + Sync,
) -> BigInt {
    let needed = bound_bits.max(0.0).ceil() as u64 + 2;
    let count = (needed / 61 + 1) as usize;
    let primes = primes_one_mod(one_mod, count);
    let residues: Vec<u64> = primes.par_iter().map(|&p| residue(p)).collect();
    let mut crt = Crt::new();
    for (&r, &p) in residues.iter().zip(&primes) {
        crt.push(r, p);
    }
    crt.symmetric()
}

/// Exact determinant of an integer matrix by multi-modular reconstruction.
pub fn det_multimodular(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    reconstruct(hadamard_bits(m), 2, |p| det_mod(m, p))
}

/// Exact determinant; Bareiss for small matrices, multi-modular otherwise.
pub fn det_exact(m: &[Vec<i64>]) -> BigInt {
    if m.len() <= 24 {
        bareiss_det(
            m.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    } else {
        det_multimodular(m)
    }
}

/// Natural logarithm of `|x|`, accurate for arbitrarily large `x`.
pub fn ln_abs(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Absolute value as an unsigned integer.
pub fn abs_big(x: BigInt) -> BigUint {
    let (sign, mag) = x.into_parts();
    debug_assert!(sign != Sign::Minus || !mag.is_zero());
    mag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(1_000_000_007));
        assert!(!is_prime(1) && !is_prime(561) && !is_prime(3_215_031_751));
        let ps = primes_one_mod(128, 3);
        assert!(ps.iter().all(|&p| p % 128 == 1 && p < PRIME_CEILING && is_prime(p)));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn roots_of_unity() {
        let p = primes_one_mod(12, 1)[0];
        let z = root_of_unity(12, p);
        assert_eq!(pow_mod(z, 12, p), 1);
        assert!((1..12).all(|k| pow_mod(z, k, p) != 1));
    }

    #[test]
    fn determinants_agree() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let big: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(bareiss_det(big), BigInt::from(4));
        assert_eq!(det_multimodular(&m), BigInt::from(4));
        let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        assert_eq!(det_multimodular(&swapped), BigInt::from(-4));
        assert_eq!(det_exact(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn crt_recovers_negative() {
        let x = BigInt::from(-123_456_789_012_345_678i64) * BigInt::from(98_765_432_109i64);
        let ps = primes_one_mod(2, 3);
        let mut crt = Crt::new();
        for &p in &ps {
            crt.push(reduce_big(&x, p), p);
        }
        assert_eq!(crt.symmetric(), x);
    }

    #[test]
    fn big_logs() {
        let x = BigUint::from(3u32).pow(2000);
        assert!((ln_biguint(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9 * 2000.0);
    }
}

//! Integer Laurent polynomials in `z` and `w`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Exponent pair `(a, b)` of the monomial `z^a w^b`.
pub type Exponent = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly2 {
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((a, b), c.into());
        p
    }

    pub fn z() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn w() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// `(min a, max a, min b, max b)`, or `None` for the zero polynomial.
    pub fn exponent_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.terms.keys();
        let &(a0, b0) = it.next()?;
        Some(it.fold((a0, a0, b0, b0), |(lo_a, hi_a, lo_b, hi_b), &(a, b)| {
            (lo_a.min(a), hi_a.max(a), lo_b.min(b), hi_b.max(b))
        }))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Multiplies by `z^a w^b`.
    pub fn shift(&self, a: i64, b: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    /// `p(sz * z, sw * w)` for signs `sz, sw` in `{1, -1}`.
    pub fn flip_signs(&self, sz: i8, sw: i8) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| {
                    let odd = (sz < 0 && a.rem_euclid(2) == 1) ^ (sw < 0 && b.rem_euclid(2) == 1);
                    ((a, b), if odd { -c } else { c.clone() })
                })
                .collect(),
        }
    }

    /// `p(w, z)`.
    pub fn swap_variables(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// `p(1/z, w)`.
    pub fn invert_z(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((-a, b), c.clone())).collect(),
        }
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        if z == Complex64::zero() || w == Complex64::zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(self.eval_unchecked(z, w))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                z.powi(a as i32) * w.powi(b as i32) * c
            })
            .sum()
    }

    /// Exact value at `z, w` in `{1, -1}`.
    pub fn eval_signs(&self, sz: i8, sw: i8) -> BigInt {
        self.flip_signs(sz, sw).terms.values().sum()
    }

    /// Divides out the unit `±z^a w^b` so that both minimum exponents are
    /// zero and the first coefficient in lexicographic order is positive.
    pub fn normalize(&self) -> Result<Self> {
        let (lo_a, _, lo_b, _) = self.exponent_box().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift(-lo_a, -lo_b);
        let negative = shifted.terms.values().next().is_some_and(|c| c.is_negative());
        Ok(if negative { -shifted } else { shifted })
    }

    /// A representative shared by `p(±z, ±w)` up to units: the smallest
    /// normalized form over the four sign substitutions.
    pub fn sign_class_representative(&self) -> Result<Self> {
        let mut forms = [(1, 1), (-1, 1), (1, -1), (-1, -1)]
            .iter()
            .map(|&(sz, sw)| self.flip_signs(sz, sw).normalize())
            .collect::<Result<Vec<_>>>()?;
        forms.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
        Ok(forms.swap_remove(0))
    }

    pub(crate) fn sort_key(&self) -> Vec<(Exponent, BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c.clone())).collect()
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        -&self
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, k: i64) -> fmt::Result {
    if k == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{k}")
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut need_star = false;
            if !mag.is_one() || (a == 0 && b == 0) {
                write!(f, "{mag}")?;
                need_star = true;
            }
            for (var, k) in [('z', a), ('w', b)] {
                if k != 0 {
                    if need_star {
                        write!(f, "*")?;
                    }
                    write_power(f, var, k)?;
                    need_star = true;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            'z' | 'w' => {
                out.push(Token::Var(c));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Token::Op(c));
                i += 1;
            }
            // Unicode minus sign
            '\u{2212}' => {
                out.push(Token::Op('-'));
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly2> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = &acc * &invert_unit(&d)?;
            } else if matches!(self.peek(), Some(Token::Var(_)) | Some(Token::Op('('))) {
                acc = &acc * &self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly2> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPoly2> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let k = match self.peek() {
            Some(Token::Int(k)) => k
                .to_i64()
                .ok_or_else(|| Error::Parse("exponent too large".into()))?,
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        self.pos += 1;
        let base = if negative { invert_unit(&base)? } else { base };
        let mut out = LaurentPoly2::one();
        for _ in 0..k {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<LaurentPoly2> {
        match self.peek().cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                Ok(LaurentPoly2::constant(k))
            }
            Some(Token::Var('z')) => {
                self.pos += 1;
                Ok(LaurentPoly2::z())
            }
            Some(Token::Var(_)) => {
                self.pos += 1;
                Ok(LaurentPoly2::w())
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Inverse of `±z^a w^b`; other polynomials are not invertible.
fn invert_unit(p: &LaurentPoly2) -> Result<LaurentPoly2> {
    match p.terms.iter().next() {
        Some((&(a, b), c)) if p.num_terms() == 1 && c.abs().is_one() => {
            Ok(LaurentPoly2::monomial(c.clone(), -a, -b))
        }
        _ => Err(Error::Parse(format!("cannot divide by `{p}`"))),
    }
}

impl FromStr for LaurentPoly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut parser = Parser { tokens, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input at token {}",
                parser.pos
            )));
        }
        Ok(p)
    }
}

pub type LaurentMatrix = Vec<Vec<LaurentPoly2>>;

fn check_square(m: &[Vec<LaurentPoly2>]) -> Result<usize> {
    let k = m.len();
    if k == 0 || m.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidArgument("matrix must be square and nonempty".into()));
    }
    Ok(k)
}

/// Largest size handled by exact expansion in [`lp_det`].
pub const EXPANSION_LIMIT: usize = 8;

/// Exact determinant: expansion for `k <= 8`, interpolation above.
pub fn lp_det(m: &[Vec<LaurentPoly2>]) -> Result<LaurentPoly2> {
    if check_square(m)? <= EXPANSION_LIMIT {
        det_expansion(m)
    } else {
        det_interpolation(m)
    }
}

/// Laplace expansion along rows, sharing minors over column subsets.
pub fn det_expansion(m: &[Vec<LaurentPoly2>]) -> Result<LaurentPoly2> {
    let k = check_square(m)?;
    if k > 20 {
        return Err(Error::SizeCap { size: k, cap: 20 });
    }
    // minor[S] = determinant of rows 0..|S| against the columns in S
    let mut minor: Vec<LaurentPoly2> = vec![LaurentPoly2::zero(); 1 << k];
    minor[0] = LaurentPoly2::one();
    for s in 0usize..(1 << k) - 1 {
        if minor[s].is_zero() {
            continue;
        }
        let row = s.count_ones() as usize;
        for j in (0..k).filter(|&j| s & (1 << j) == 0) {
            if m[row][j].is_zero() {
                continue;
            }
            let mut term = &minor[s] * &m[row][j];
            if (s >> j).count_ones() % 2 == 1 {
                term = -term;
            }
            let t = s | (1 << j);
            minor[t] = &minor[t] + &term;
        }
    }
    Ok(minor.pop().expect("full subset"))
}

/// Determinant of a complex matrix by LU with partial pivoting.
pub fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].norm().total_cmp(&a[j][k].norm()))
            .expect("nonempty range");
        if a[p][k].norm() == 0.0 {
            return Complex64::zero();
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k];
        det *= pivot;
        let (top, rest) = a.split_at_mut(k + 1);
        for row in rest.iter_mut() {
            let f = row[k] / pivot;
            if f == Complex64::zero() {
                continue;
            }
            for j in k..n {
                row[j] -= f * top[k][j];
            }
        }
    }
    det
}

pub fn eval_matrix(m: &[Vec<LaurentPoly2>], z: Complex64, w: Complex64) -> Vec<Vec<Complex64>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.eval_unchecked(z, w)).collect())
        .collect()
}

/// Largest coefficient magnitude accepted after rounding (2^52).
const ROUNDING_LIMIT: f64 = 4_503_599_627_370_496.0;

/// Determinant by evaluation on a grid of roots of unity covering the
/// exponent box, inverse FFT and rounding.
pub fn det_interpolation(m: &[Vec<LaurentPoly2>]) -> Result<LaurentPoly2> {
    let k = check_square(m)?;
    let mut lo = [0i64; 2];
    let mut hi = [0i64; 2];
    for row in m {
        let boxes: Vec<_> = row.iter().filter_map(|p| p.exponent_box()).collect();
        if boxes.is_empty() {
            return Ok(LaurentPoly2::zero());
        }
        lo[0] += boxes.iter().map(|b| b.0).min().expect("nonempty");
        hi[0] += boxes.iter().map(|b| b.1).max().expect("nonempty");
        lo[1] += boxes.iter().map(|b| b.2).min().expect("nonempty");
        hi[1] += boxes.iter().map(|b| b.3).max().expect("nonempty");
    }
    let nz = (hi[0] - lo[0] + 1) as usize;
    let nw = (hi[1] - lo[1] + 1) as usize;
    let root = |j: usize, n: usize| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64);
    let mut grid: Vec<Complex64> = Vec::with_capacity(nz * nw);
    for j in 0..nz {
        for l in 0..nw {
            let (z, w) = (root(j, nz), root(l, nw));
            let d = complex_det(eval_matrix(m, z, w));
            // remove the lowest monomial so exponents start at zero
            grid.push(d * z.powi(-lo[0] as i32) * w.powi(-lo[1] as i32));
        }
    }
    let mut planner = FftPlanner::<f64>::new();
    let fft_w = planner.plan_fft_forward(nw);
    for row in grid.chunks_mut(nw) {
        fft_w.process(row);
    }
    let fft_z = planner.plan_fft_forward(nz);
    let mut column = vec![Complex64::zero(); nz];
    for l in 0..nw {
        for j in 0..nz {
            column[j] = grid[j * nw + l];
        }
        fft_z.process(&mut column);
        for j in 0..nz {
            grid[j * nw + l] = column[j];
        }
    }
    let scale = (nz * nw) as f64;
    let mut out = LaurentPoly2::zero();
    let mut worst: f64 = 0.0;
    for a in 0..nz {
        for b in 0..nw {
            let c = grid[a * nw + b] / scale;
            let r = c.re.round();
            if r.abs() > ROUNDING_LIMIT {
                return Err(Error::Reconstruction(format!(
                    "coefficient {r:e} exceeds double precision (k = {k})"
                )));
            }
            worst = worst.max((c.re - r).abs()).max(c.im.abs());
            out.add_term((lo[0] + a as i64, lo[1] + b as i64), BigInt::from(r as i64));
        }
    }
    if worst >= 1e-6 {
        return Err(Error::Reconstruction(format!(
            "rounding residual {worst:e} exceeds 1e-6"
        )));
    }
    Ok(out)
}

//! Linear systems over GF(2).

/// Equations `sum of vars = rhs (mod 2)` over a fixed number of variables.
#[derive(Debug, Clone)]
pub struct Gf2System {
    num_vars: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl Gf2System {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: Vec::new(),
        }
    }

    pub fn num_equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation; a variable listed twice cancels.
    pub fn push(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut bits = vec![0u64; self.num_vars.div_ceil(64)];
        for v in vars {
            assert!(v < self.num_vars);
            bits[v / 64] ^= 1 << (v % 64);
        }
        self.rows.push((bits, rhs));
    }

    /// Gauss-Jordan elimination with pivots taken in column order and, within
    /// a column, the first available row. Free variables are set to zero.
    /// Returns `None` if the system is inconsistent.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.num_vars {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (r..rows.len()).find(|&i| rows[i].0[word] & bit != 0) else {
                continue;
            };
            rows.swap(r, p);
            let (pivot_bits, pivot_rhs) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.0[word] & bit != 0 {
                    for (a, b) in row.0.iter_mut().zip(&pivot_bits) {
                        *a ^= b;
                    }
                    row.1 ^= pivot_rhs;
                }
            }
            pivots.push(col);
            r += 1;
        }
        if rows[r..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut x = vec![false; self.num_vars];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = rows[i].1;
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let mut s = Gf2System::new(3);
        s.push([0, 1], true);
        s.push([1, 2], false);
        let x = s.solve().unwrap();
        assert!(x[0] ^ x[1]);
        assert_eq!(x[1], x[2]);
        // free variable defaults to zero
        assert_eq!(x, vec![true, false, false]);
    }

    #[test]
    fn detects_inconsistency() {
        let mut s = Gf2System::new(2);
        s.push([0, 1], true);
        s.push([0], false);
        s.push([1], false);
        assert!(s.solve().is_none());
    }

    #[test]
    fn repeated_variable_cancels() {
        let mut s = Gf2System::new(2);
        s.push([0, 0, 1], true);
        assert_eq!(s.solve().unwrap(), vec![false, true]);
    }
}

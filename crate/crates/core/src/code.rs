//! Linear codes given by a generator matrix in reduced row-echelon form.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

/// How [`LinearCode::from_generator`] treats rank-deficient input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMode {
    /// Reject input whose rank is below the number of rows.
    Strict,
    /// Silently drop dependent rows.
    Reduce,
}

/// An `[n, k]_q` linear code.
///
/// The generator is kept in reduced row-echelon form without column
/// permutation, so two codes are equal as sets exactly when their
/// generators are equal.
#[derive(Clone)]
pub struct LinearCode {
    field: Arc<FieldSpec>,
    n: usize,
    generator: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    label: Option<String>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{}", self.n, self.k(), self.field.order())?;
        if let Some(l) = &self.label {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.generator == other.generator
    }
}

impl Eq for LinearCode {}

/// Row-reduces `rows` in place; returns the pivot columns of the nonzero rows
/// and truncates `rows` to the rank.
pub(crate) fn rref(field: &FieldSpec, rows: &mut Vec<Vec<Elem>>, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let factor = field.neg(row[col]);
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x = field.add(*x, field.mul(factor, pv));
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl LinearCode {
    /// Builds a code from generator rows. With [`RankMode::Strict`] the rows
    /// must be linearly independent; an empty matrix is never accepted here.
    pub fn from_generator(field: Arc<FieldSpec>, rows: Vec<Vec<Elem>>, mode: RankMode) -> Result<Self> {
        let n = rows.first().map(Vec::len).unwrap_or(0);
        if n == 0 {
            return Err(Error::param("generator must have at least one row and one column"));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::param("generator rows have different lengths"));
        }
        if rows.iter().flatten().any(|&x| !field.contains(x)) {
            return Err(Error::param(format!("generator entry outside F_{}", field.order())));
        }
        let expected = rows.len();
        let code = Self::from_rows_unchecked(field, n, rows);
        if code.k() == 0 {
            return Err(Error::Rank { expected, found: 0 });
        }
        if mode == RankMode::Strict && code.k() < expected {
            return Err(Error::Rank {
                expected,
                found: code.k(),
            });
        }
        Ok(code)
    }

    /// Row-reduces without validation; `k = 0` is allowed.
    pub(crate) fn from_rows_unchecked(field: Arc<FieldSpec>, n: usize, mut rows: Vec<Vec<Elem>>) -> Self {
        let pivots = rref(&field, &mut rows, n);
        LinearCode {
            field,
            n,
            generator: rows,
            pivots,
            label: None,
        }
    }

    /// The zero code of length `n`.
    pub fn zero(field: Arc<FieldSpec>, n: usize) -> Self {
        Self::from_rows_unchecked(field, n, Vec::new())
    }

    /// The full space `F_q^n`.
    pub fn full_space(field: Arc<FieldSpec>, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| Elem::from(i == j)).collect())
            .collect();
        Self::from_rows_unchecked(field, n, rows)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `q^k` if it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.k() as u32)
    }

    /// Codeword for a message of length `k`.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k() {
            return Err(Error::param(format!(
                "message length {} does not match dimension {}",
                message.len(),
                self.k()
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (row, &m) in self.generator.iter().zip(message) {
            if m == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        Ok(out)
    }

    /// Membership test by reduction against the echelon form.
    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.n || v.iter().any(|&x| !self.field.contains(x)) {
            return false;
        }
        let f = &self.field;
        let mut r = v.to_vec();
        for (row, &p) in self.generator.iter().zip(&self.pivots) {
            let c = r[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &g) in r.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(neg, g));
            }
        }
        r.iter().all(|&x| x == 0)
    }

    /// Dual code under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let f = &self.field;
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.n];
                v[free] = 1;
                for (row, &p) in self.generator.iter().zip(&self.pivots) {
                    v[p] = f.neg(row[free]);
                }
                v
            })
            .collect();
        let mut d = Self::from_rows_unchecked(self.field.clone(), self.n, rows);
        d.label = self.label.as_ref().map(|l| format!("{l}-dual"));
        d
    }

    /// Deletes coordinate `m` (0-based) from every codeword.
    pub fn puncture(&self, m: usize) -> Result<LinearCode> {
        self.check_coord(m)?;
        let rows = self.generator.iter().map(|r| drop_coord(r, m)).collect();
        let mut c = Self::from_rows_unchecked(self.field.clone(), self.n - 1, rows);
        c.label = self.label.as_ref().map(|l| format!("{l}-punctured@{m}"));
        Ok(c)
    }

    /// Codewords vanishing at coordinate `m` (0-based), with `m` deleted.
    ///
    /// If every codeword is already zero at `m` the dimension is unchanged.
    pub fn shorten(&self, m: usize) -> Result<LinearCode> {
        self.check_coord(m)?;
        let f = &self.field;
        let mut rows = self.generator.clone();
        if let Some(sel) = rows.iter().position(|r| r[m] != 0) {
            let pivot = rows.remove(sel);
            let inv = f.inv(pivot[m])?;
            for row in rows.iter_mut() {
                if row[m] == 0 {
                    continue;
                }
                let factor = f.neg(f.mul(row[m], inv));
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x = f.add(*x, f.mul(factor, pv));
                }
            }
        } else {
            log::warn!("shortening at coordinate {m}, which is zero in every codeword");
        }
        let rows = rows.iter().map(|r| drop_coord(r, m)).collect();
        let mut c = Self::from_rows_unchecked(self.field.clone(), self.n - 1, rows);
        c.label = self.label.as_ref().map(|l| format!("{l}-shortened@{m}"));
        Ok(c)
    }

    fn check_coord(&self, m: usize) -> Result<()> {
        if m >= self.n {
            return Err(Error::param(format!("coordinate {m} out of range for length {}", self.n)));
        }
        if self.n == 1 {
            return Err(Error::param("cannot delete the only coordinate"));
        }
        Ok(())
    }

    /// Standard inner product of two vectors over the code's field.
    pub fn inner_product(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }
}

fn drop_coord(row: &[Elem], m: usize) -> Vec<Elem> {
    row.iter()
        .enumerate()
        .filter(|&(i, _)| i != m)
        .map(|(_, &x)| x)
        .collect()
}

/// Hamming weight.
#[inline]
pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Hamming distance.
#[inline]
pub fn distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Arc<FieldSpec> {
        FieldSpec::shared(q).unwrap()
    }

    #[test]
    fn identity_is_full_space() {
        let rows = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let c = LinearCode::from_generator(f(3), rows, RankMode::Strict).unwrap();
        assert_eq!((c.n(), c.k()), (3, 3));
        assert_eq!(c, LinearCode::full_space(f(3), 3));
        assert_eq!(c.dual().k(), 0);
    }

    #[test]
    fn duplicate_rows_rejected_in_strict_mode() {
        let rows = vec![vec![1, 2, 0, 1], vec![1, 2, 0, 1]];
        assert!(matches!(
            LinearCode::from_generator(f(3), rows.clone(), RankMode::Strict),
            Err(Error::Rank { expected: 2, found: 1 })
        ));
        let c = LinearCode::from_generator(f(3), rows, RankMode::Reduce).unwrap();
        assert_eq!(c.k(), 1);
    }

    #[test]
    fn ragged_and_out_of_range_rows() {
        assert!(LinearCode::from_generator(f(3), vec![vec![1, 2], vec![1]], RankMode::Strict).is_err());
        assert!(LinearCode::from_generator(f(3), vec![vec![1, 3]], RankMode::Strict).is_err());
        assert!(LinearCode::from_generator(f(3), vec![vec![0, 0]], RankMode::Reduce).is_err());
    }

    #[test]
    fn dual_is_orthogonal_and_involutive() {
        let rows = vec![vec![1, 1, 1, 0, 2], vec![0, 1, 2, 1, 1]];
        let c = LinearCode::from_generator(f(3), rows, RankMode::Strict).unwrap();
        let d = c.dual();
        assert_eq!(d.k(), 3);
        for x in c.generator() {
            for y in d.generator() {
                assert_eq!(c.inner_product(x, y), 0);
            }
        }
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn contains_and_encode() {
        let rows = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]];
        let c = LinearCode::from_generator(f(3), rows, RankMode::Strict).unwrap();
        let w = c.encode(&[2, 1]).unwrap();
        assert!(c.contains(&w));
        assert!(!c.contains(&[1, 0, 0, 0]));
        assert!(c.encode(&[1]).is_err());
    }

    #[test]
    fn puncture_and_shorten_dimensions() {
        let rows = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]];
        let c = LinearCode::from_generator(f(3), rows, RankMode::Strict).unwrap();
        assert_eq!(c.puncture(0).unwrap().k(), 2);
        assert_eq!(c.shorten(0).unwrap().k(), 1);
        assert!(c.puncture(4).is_err());
        assert!(c.shorten(7).is_err());
    }

    #[test]
    fn shorten_on_zero_column_keeps_dimension() {
        let rows = vec![vec![1, 0, 1], vec![0, 0, 1]];
        let c = LinearCode::from_generator(f(2), rows, RankMode::Strict).unwrap();
        let s = c.shorten(1).unwrap();
        assert_eq!(s.k(), 2);
        assert_eq!(s.n(), 2);
    }
}

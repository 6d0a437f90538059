//! Outer distributions and t-regularity.
//!
//! `B_{x,i}` is invariant under translating `x` by a codeword, so it is
//! enough to inspect one vector per coset. Every coset at distance at most
//! `t` from the code contains a vector of weight at most `t`, hence
//! scanning all such vectors decides t-regularity exactly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::LinearCode;
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::field::Elem;

/// Limit on `codewords × scanned vectors` for [`t_regular`].
pub const MAX_WORK: u128 = 1 << 36;

/// `B_{x,0..n}`: codewords at each distance from `x`.
pub fn outer_distribution(code: &LinearCode, x: &[Elem], budget: &Budget) -> Result<Vec<u64>> {
    if x.len() != code.n() {
        return Err(Error::param(format!("vector length {} differs from n = {}", x.len(), code.n())));
    }
    let mut row = vec![0u64; code.n() + 1];
    code.enumerate(None, budget, |cw, _| {
        let d = cw.iter().zip(x).filter(|(a, b)| a != b).count();
        row[d] += 1;
    })?;
    Ok(row)
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityClass {
    pub distance: usize,
    pub row: Vec<u64>,
    pub vectors: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityWitness {
    pub x: Vec<Elem>,
    pub distance: usize,
    pub row: Vec<u64>,
    pub reference_row: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub t: usize,
    pub regular: bool,
    /// Always true here: the coset-leader argument covers every vector.
    pub exhaustive: bool,
    pub scanned: u64,
    pub classes: Vec<RegularityClass>,
    pub witness: Option<RegularityWitness>,
}

/// Decides whether `B_{x,i}` depends only on `i` and `d(x, C)` for every
/// `x` with `d(x, C) <= t`.
pub fn t_regular(code: &LinearCode, t: usize, budget: &Budget) -> Result<RegularityReport> {
    let n = code.n();
    let q = code.q() as u128;
    let t = t.min(n);
    let vectors: u128 = (0..=t)
        .map(|i| crate::design::binom(n, i) as u128 * (q - 1).pow(i as u32))
        .sum();
    let size = code.size().unwrap_or(u128::MAX);
    if size.saturating_mul(vectors) > MAX_WORK {
        return Err(Error::capacity(
            format!("{t}-regularity of {code:?}"),
            format!("{size} codewords x {vectors} vectors"),
            MAX_WORK,
            "t-regularity is decided exhaustively; use a smaller code or t",
        ));
    }
    let mut words = Vec::new();
    let mut weights = Vec::new();
    code.enumerate(None, budget, |cw, wt| {
        words.extend_from_slice(cw);
        weights.push(wt);
    })?;

    let mut classes: BTreeMap<usize, (Vec<u64>, u64)> = BTreeMap::new();
    let mut witness = None;
    let mut scanned = 0u64;
    let mut x = vec![0 as Elem; n];
    let mut support = Vec::with_capacity(t);
    let mut visit = |x: &[Elem], support: &[usize]| {
        scanned += 1;
        let mut row = vec![0u64; n + 1];
        for (cw, &wt) in words.chunks(n).zip(&weights) {
            let mut d = wt;
            for &j in support {
                if cw[j] == x[j] {
                    d -= 1;
                } else if cw[j] == 0 {
                    d += 1;
                }
            }
            row[d] += 1;
        }
        let dist = row.iter().position(|&c| c > 0).unwrap();
        match classes.get_mut(&dist) {
            None => {
                classes.insert(dist, (row, 1));
            }
            Some((reference, count)) => {
                *count += 1;
                if *reference != row && witness.is_none() {
                    witness = Some(RegularityWitness {
                        x: x.to_vec(),
                        distance: dist,
                        row,
                        reference_row: reference.clone(),
                    });
                }
            }
        }
    };
    leaders(n, code.q() as Elem, t, 0, &mut x, &mut support, &mut visit);

    Ok(RegularityReport {
        t,
        regular: witness.is_none(),
        exhaustive: true,
        scanned,
        classes: classes
            .into_iter()
            .map(|(distance, (row, vectors))| RegularityClass { distance, row, vectors })
            .collect(),
        witness,
    })
}

/// Visits every vector of weight at most `t`, lowest weight first within
/// each branch.
fn leaders(
    n: usize,
    q: Elem,
    t: usize,
    start: usize,
    x: &mut Vec<Elem>,
    support: &mut Vec<usize>,
    visit: &mut impl FnMut(&[Elem], &[usize]),
) {
    visit(x, support);
    if support.len() == t {
        return;
    }
    for j in start..n {
        support.push(j);
        for a in 1..q {
            x[j] = a;
            leaders(n, q, t, j + 1, x, support, visit);
        }
        x[j] = 0;
        support.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::RankMode;
    use crate::field::FieldSpec;
    use crate::weights::{weight_distribution, Method};

    fn hamming7() -> LinearCode {
        let f = FieldSpec::shared(2).unwrap();
        let rows = vec![
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ];
        LinearCode::from_generator(f, rows, RankMode::Strict).unwrap()
    }

    #[test]
    fn zero_row_is_weight_distribution() {
        let c = hamming7();
        let b = Budget::default();
        let row = outer_distribution(&c, &[0; 7], &b).unwrap();
        let a = weight_distribution(&c, Method::Direct, &b).unwrap();
        for (i, &r) in row.iter().enumerate() {
            assert_eq!(Some(r), a.count(i));
        }
    }

    #[test]
    fn perfect_hamming_is_completely_regular() {
        let r = t_regular(&hamming7(), 1, &Budget::default()).unwrap();
        assert!(r.regular);
        assert_eq!(r.scanned, 8);
        assert_eq!(r.classes.len(), 2);
    }

    #[test]
    fn scan_counts_all_low_weight_vectors() {
        let f = FieldSpec::shared(3).unwrap();
        let c = LinearCode::from_generator(f, vec![vec![1, 1, 1, 1]], RankMode::Strict).unwrap();
        let r = t_regular(&c, 2, &Budget::default()).unwrap();
        assert_eq!(r.scanned, 1 + 8 + 24);
    }

    #[test]
    fn irregular_code_has_witness() {
        // coordinate 3 is outside every codeword, so distance-1 cosets differ
        let f = FieldSpec::shared(2).unwrap();
        let c = LinearCode::from_generator(f, vec![vec![1, 1, 1, 0]], RankMode::Strict).unwrap();
        let r = t_regular(&c, 1, &Budget::default()).unwrap();
        assert!(!r.regular);
        let w = r.witness.unwrap();
        assert_eq!(w.distance, 1);
        let direct = outer_distribution(&c, &w.x, &Budget::default()).unwrap();
        assert_eq!(direct, w.row);
    }
}

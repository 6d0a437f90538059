//! Exhaustive codeword enumeration.
//!
//! Codewords are visited in lexicographic order of their message vectors
//! (first message symbol most significant). Each generator row has its `q`
//! scalar multiples precomputed, so the inner loop is a single vector add
//! per codeword. Codes over F_{2^m} with `m <= 8` and `n <= 64` use a packed
//! representation (one byte per symbol, eight symbols per word) where
//! addition is XOR and weights come from a branch-free nonzero-byte count.

use std::ops::Range;

use rayon::prelude::*;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::Elem;

/// Environment variable overriding [`Budget::max_codewords`].
pub const BUDGET_ENV: &str = "QDESIGN_BUDGET";

/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `q^k` that may be enumerated at all.
    pub max_codewords: u128,
    /// Above this size codewords may only be streamed through a weight filter.
    pub filter_required_above: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_codewords: 1 << 32,
            filter_required_above: 1 << 28,
        }
    }
}

impl Budget {
    /// Default budget with `QDESIGN_BUDGET` applied when set. The value is a
    /// plain integer or `2^N`.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            match parse_budget(&v) {
                Some(n) => b.max_codewords = n,
                None => log::warn!("ignoring unparsable {BUDGET_ENV}={v}"),
            }
        }
        b
    }

    pub fn unlimited() -> Self {
        Budget {
            max_codewords: u128::MAX,
            filter_required_above: u128::MAX,
        }
    }

    /// Checks that `code` may be enumerated; `filtered` says whether the
    /// caller streams only a weight-filtered subset (or merely counts).
    pub fn admit(&self, code: &LinearCode, filtered: bool) -> Result<u64> {
        let size = code.size();
        let over = size.map_or(true, |s| s > self.max_codewords || s > u64::MAX as u128);
        if over {
            return Err(Error::capacity(
                format!("enumerating {code:?}"),
                format!("{}^{}", code.q(), code.k()),
                self.max_codewords,
                format!("use a weight filter with partitioned enumeration, or raise {BUDGET_ENV}"),
            ));
        }
        let size = size.unwrap();
        if !filtered && size > self.filter_required_above {
            return Err(Error::capacity(
                format!("streaming all codewords of {code:?}"),
                size,
                self.filter_required_above,
                "pass a weight filter above this size",
            ));
        }
        Ok(size as u64)
    }
}

fn parse_budget(v: &str) -> Option<u128> {
    let v = v.trim();
    if let Some(exp) = v.strip_prefix("2^") {
        let e: u32 = exp.trim().parse().ok()?;
        return 1u128.checked_shl(e);
    }
    v.parse().ok()
}

/// Weight-indexed boolean mask.
#[derive(Clone, Debug)]
pub struct WeightMask(Vec<bool>);

impl WeightMask {
    pub fn new(n: usize, weights: &[usize]) -> Self {
        let mut m = vec![false; n + 1];
        for &w in weights {
            if w <= n {
                m[w] = true;
            }
        }
        WeightMask(m)
    }

    #[inline]
    pub fn contains(&self, w: usize) -> bool {
        self.0[w]
    }
}

macro_rules! dispatch_words {
    ($words:expr, $go:ident) => {
        match *$words {
            1 => $go!(1),
            2 => $go!(2),
            3 => $go!(3),
            4 => $go!(4),
            5 => $go!(5),
            6 => $go!(6),
            7 => $go!(7),
            8 => $go!(8),
            _ => unreachable!("packed layout is limited to 8 words"),
        }
    };
}

const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;
const HIGH: u64 = 0x8080_8080_8080_8080;

#[inline(always)]
fn nonzero_bytes(x: u64) -> u32 {
    ((((x & LOW7) + LOW7) | x) & HIGH).count_ones()
}

/// Precomputed row multiples for one code.
enum Tables {
    Packed { words: usize, rows: Vec<u64> },
    Plain { rows: Vec<Elem> },
}

struct Walker<'a> {
    code: &'a LinearCode,
    q: usize,
    tables: Tables,
}

impl<'a> Walker<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let f = code.field();
        let q = f.order() as usize;
        let n = code.n();
        let words = n.div_ceil(8);
        let mut plain = Vec::with_capacity(code.k() * q * n);
        for row in code.generator() {
            for d in 0..q as Elem {
                plain.extend(row.iter().map(|&g| f.mul(d, g)));
            }
        }
        let tables = if f.is_char2() && q <= 256 && (1..=8).contains(&words) {
            let mut rows = vec![0u64; code.k() * q * words];
            for (r, chunk) in plain.chunks(n).enumerate() {
                for (j, &x) in chunk.iter().enumerate() {
                    rows[r * words + j / 8] |= (x as u64) << (8 * (j % 8));
                }
            }
            Tables::Packed { words, rows }
        } else {
            Tables::Plain { rows: plain }
        };
        Walker { code, q, tables }
    }

    fn digits(&self, mut index: u64) -> Vec<usize> {
        let k = self.code.k();
        let mut d = vec![0; k];
        for slot in d.iter_mut().rev() {
            *slot = (index % self.q as u64) as usize;
            index /= self.q as u64;
        }
        d
    }

    /// Visits codewords in `range` as (codeword, weight).
    fn visit(&self, range: Range<u64>, mask: Option<&WeightMask>, mut f: impl FnMut(&[Elem], usize)) {
        let n = self.code.n();
        if range.is_empty() {
            return;
        }
        if self.code.k() == 0 {
            if mask.map_or(true, |m| m.contains(0)) {
                f(&vec![0; n], 0);
            }
            return;
        }
        match &self.tables {
            Tables::Packed { words, rows } => {
                let mut buf = vec![0 as Elem; n];
                macro_rules! go {
                    ($w:literal) => {
                        self.walk_packed::<$w>(rows, range, |cw, wt| {
                            if mask.map_or(true, |m| m.contains(wt)) {
                                for (j, b) in buf.iter_mut().enumerate() {
                                    *b = ((cw[j / 8] >> (8 * (j % 8))) & 0xff) as Elem;
                                }
                                f(&buf, wt);
                            }
                        })
                    };
                }
                dispatch_words!(words, go);
            }
            Tables::Plain { rows } => self.walk_plain(rows, range, |cw, wt| {
                if mask.map_or(true, |m| m.contains(wt)) {
                    f(cw, wt);
                }
            }),
        }
    }

    /// Weight histogram of the codewords in `range`.
    fn histogram(&self, range: Range<u64>) -> Vec<u64> {
        let n = self.code.n();
        let mut hist = vec![0u64; n + 1];
        if range.is_empty() {
            return hist;
        }
        if self.code.k() == 0 {
            hist[0] = 1;
            return hist;
        }
        match &self.tables {
            Tables::Packed { words, rows } => {
                macro_rules! go {
                    ($w:literal) => {
                        self.walk_packed::<$w>(rows, range, |_, wt| hist[wt] += 1)
                    };
                }
                dispatch_words!(words, go);
            }
            Tables::Plain { rows } => self.walk_plain(rows, range, |_, wt| hist[wt] += 1),
        }
        hist
    }

    fn walk_packed<const W: usize>(&self, rows: &[u64], range: Range<u64>, mut f: impl FnMut(&[u64; W], usize)) {
        let (k, q) = (self.code.k(), self.q);
        let row = |level: usize, d: usize| -> [u64; W] {
            let off = (level * q + d) * W;
            rows[off..off + W].try_into().unwrap()
        };
        let mut digits = self.digits(range.start);
        let mut partial = vec![[0u64; W]; k];
        for j in 1..k {
            let r = row(j - 1, digits[j - 1]);
            partial[j] = std::array::from_fn(|w| partial[j - 1][w] ^ r[w]);
        }
        let last_rows: Vec<[u64; W]> = (0..q).map(|d| row(k - 1, d)).collect();
        let mut idx = range.start;
        loop {
            let base = partial[k - 1];
            let first = digits[k - 1];
            let run = ((q - first) as u64).min(range.end - idx) as usize;
            for r in &last_rows[first..first + run] {
                let mut cw = [0u64; W];
                let mut wt = 0u32;
                for w in 0..W {
                    cw[w] = base[w] ^ r[w];
                    wt += nonzero_bytes(cw[w]);
                }
                f(&cw, wt as usize);
            }
            idx += run as u64;
            if idx >= range.end {
                return;
            }
            let Some(level) = carry(&mut digits, q) else { return };
            for j in level + 1..k {
                let r = row(j - 1, digits[j - 1]);
                partial[j] = std::array::from_fn(|w| partial[j - 1][w] ^ r[w]);
            }
        }
    }

    fn walk_plain(&self, rows: &[Elem], range: Range<u64>, mut f: impl FnMut(&[Elem], usize)) {
        let (k, q, n) = (self.code.k(), self.q, self.code.n());
        let field = self.code.field();
        let row = |level: usize, d: usize| &rows[(level * q + d) * n..(level * q + d + 1) * n];
        let mut digits = self.digits(range.start);
        let mut partial = vec![vec![0 as Elem; n]; k];
        let refresh = |partial: &mut Vec<Vec<Elem>>, digits: &[usize], from: usize| {
            for j in from..k {
                let r = row(j - 1, digits[j - 1]);
                let (lo, hi) = partial.split_at_mut(j);
                for ((dst, &a), &b) in hi[0].iter_mut().zip(&lo[j - 1]).zip(r) {
                    *dst = field.add(a, b);
                }
            }
        };
        refresh(&mut partial, &digits, 1);
        let mut cw = vec![0 as Elem; n];
        let mut idx = range.start;
        loop {
            let first = digits[k - 1];
            let run = ((q - first) as u64).min(range.end - idx) as usize;
            for d in first..first + run {
                let r = row(k - 1, d);
                let mut wt = 0;
                for ((c, &a), &b) in cw.iter_mut().zip(&partial[k - 1]).zip(r) {
                    *c = field.add(a, b);
                    wt += (*c != 0) as usize;
                }
                f(&cw, wt);
            }
            idx += run as u64;
            if idx >= range.end {
                return;
            }
            let Some(level) = carry(&mut digits, q) else { return };
            refresh(&mut partial, &digits, level + 1);
        }
    }
}

/// Zeroes the last digit and carries into the upper digits; returns the
/// highest level that changed, or `None` on overflow.
fn carry(digits: &mut [usize], q: usize) -> Option<usize> {
    let k = digits.len();
    digits[k - 1] = 0;
    let mut level = k - 1;
    loop {
        if level == 0 {
            return None;
        }
        level -= 1;
        digits[level] += 1;
        if digits[level] < q {
            return Some(level);
        }
        digits[level] = 0;
    }
}


/// Splits `[0, total)` into at most `parts` contiguous ranges.
pub fn partition(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(total.max(1));
    (0..parts)
        .map(|i| (total * i / parts)..(total * (i + 1) / parts))
        .collect()
}

fn default_parts(total: u64) -> usize {
    let threads = rayon::current_num_threads().max(1);
    ((threads * 8) as u64).min(total.max(1)) as usize
}

impl LinearCode {
    /// Number of messages, i.e. `q^k`, if it fits in 64 bits.
    pub fn message_count(&self) -> Option<u64> {
        self.size().and_then(|s| u64::try_from(s).ok())
    }

    /// Streams every codeword (optionally only those whose weight is in
    /// `filter`) to `visit` in lexicographic message order.
    pub fn enumerate(
        &self,
        filter: Option<&[usize]>,
        budget: &Budget,
        visit: impl FnMut(&[Elem], usize),
    ) -> Result<()> {
        let total = budget.admit(self, filter.is_some())?;
        let mask = filter.map(|w| WeightMask::new(self.n(), w));
        Walker::new(self).visit(0..total, mask.as_ref(), visit);
        Ok(())
    }

    /// Streams the codewords whose message index lies in `range`. No budget
    /// check; intended for callers that partition the message space.
    pub fn enumerate_range(
        &self,
        range: Range<u64>,
        filter: Option<&WeightMask>,
        visit: impl FnMut(&[Elem], usize),
    ) {
        Walker::new(self).visit(range, filter, visit);
    }

    /// Weight histogram of all codewords, counted in parallel over
    /// disjoint message ranges.
    pub fn weight_histogram(&self, budget: &Budget) -> Result<Vec<u64>> {
        let total = budget.admit(self, true)?;
        let walker = Walker::new(self);
        let n = self.n();
        Ok(partition(total, default_parts(total))
            .into_par_iter()
            .map(|r| walker.histogram(r))
            .reduce(
                || vec![0; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            ))
    }

    /// All codewords whose weight lies in `weights`, flattened row-major,
    /// in message order.
    pub fn collect_codewords(&self, weights: &[usize], budget: &Budget) -> Result<Vec<Elem>> {
        let total = budget.admit(self, true)?;
        let walker = Walker::new(self);
        let mask = WeightMask::new(self.n(), weights);
        let chunks: Vec<Vec<Elem>> = partition(total, default_parts(total))
            .into_par_iter()
            .map(|r| {
                let mut out = Vec::new();
                walker.visit(r, Some(&mask), |cw, _| out.extend_from_slice(cw));
                out
            })
            .collect();
        Ok(chunks.concat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{weight, RankMode};
    use crate::field::FieldSpec;
    use std::collections::BTreeSet;

    fn code(q: u32, rows: Vec<Vec<Elem>>) -> LinearCode {
        LinearCode::from_generator(FieldSpec::shared(q).unwrap(), rows, RankMode::Strict).unwrap()
    }

    fn all(c: &LinearCode) -> Vec<Vec<Elem>> {
        let mut v = Vec::new();
        c.enumerate(None, &Budget::default(), |cw, _| v.push(cw.to_vec())).unwrap();
        v
    }

    #[test]
    fn visits_q_to_the_k() {
        let c = code(3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
        let v = all(&c);
        assert_eq!(v.len(), 9);
        let set: BTreeSet<_> = v.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        for (i, cw) in v.iter().enumerate() {
            let msg = [(i / 3) as Elem, (i % 3) as Elem];
            assert_eq!(cw, &c.encode(&msg).unwrap());
        }
    }

    #[test]
    fn packed_and_plain_agree() {
        // F_16 uses the packed path; the same code encoded message-by-message is the oracle.
        let c = code(16, vec![vec![1, 0, 5, 7, 9, 3, 2, 1, 0, 11], vec![0, 1, 3, 3, 14, 2, 8, 0, 6, 1]]);
        let v = all(&c);
        for (i, cw) in v.iter().enumerate() {
            let msg = [(i / 16) as Elem, (i % 16) as Elem];
            assert_eq!(cw, &c.encode(&msg).unwrap());
            assert_eq!(weight(cw), weight(&c.encode(&msg).unwrap()));
        }
    }

    #[test]
    fn partitions_cover_exactly_once() {
        let c = code(4, vec![vec![1, 0, 0, 1, 2, 3], vec![0, 1, 0, 3, 3, 1], vec![0, 0, 1, 2, 1, 1]]);
        let whole = all(&c);
        let total = c.message_count().unwrap();
        let mut pieces = Vec::new();
        for r in partition(total, 8) {
            c.enumerate_range(r, None, |cw, _| pieces.push(cw.to_vec()));
        }
        assert_eq!(pieces, whole);
        // uneven split that lands mid-row
        let mut pieces = Vec::new();
        for r in [0..5, 5..37, 37..64] {
            c.enumerate_range(r, None, |cw, _| pieces.push(cw.to_vec()));
        }
        assert_eq!(pieces, whole);
    }

    #[test]
    fn filter_and_histogram_consistent() {
        let c = code(3, vec![vec![1, 0, 0, 1, 2, 1, 1], vec![0, 1, 0, 2, 2, 0, 1], vec![0, 0, 1, 1, 1, 2, 2]]);
        let hist = c.weight_histogram(&Budget::default()).unwrap();
        assert_eq!(hist.iter().sum::<u64>(), 27);
        for w in 0..=7 {
            let mut n = 0;
            c.enumerate(Some(&[w]), &Budget::default(), |cw, wt| {
                assert_eq!(wt, w);
                assert_eq!(weight(cw), w);
                n += 1;
            })
            .unwrap();
            assert_eq!(n, hist[w]);
        }
    }

    #[test]
    fn budget_rejects_large_codes() {
        let f = FieldSpec::shared(2).unwrap();
        let c = LinearCode::full_space(f, 30);
        let tight = Budget {
            max_codewords: 1 << 20,
            filter_required_above: 1 << 10,
        };
        assert!(matches!(c.weight_histogram(&tight), Err(Error::Capacity { .. })));
        let loose = Budget {
            max_codewords: 1 << 31,
            filter_required_above: 1 << 10,
        };
        assert!(matches!(c.enumerate(None, &loose, |_, _| {}), Err(Error::Capacity { .. })));
    }

    #[test]
    fn budget_parsing() {
        assert_eq!(parse_budget("2^20"), Some(1 << 20));
        assert_eq!(parse_budget("12345"), Some(12345));
        assert_eq!(parse_budget("lots"), None);
    }

    #[test]
    fn zero_code_has_one_codeword() {
        let c = LinearCode::zero(FieldSpec::shared(5).unwrap(), 4);
        assert_eq!(c.weight_histogram(&Budget::default()).unwrap(), vec![1, 0, 0, 0, 0]);
    }
}

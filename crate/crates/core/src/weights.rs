//! Weight distributions and the MacWilliams transform.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::code::LinearCode;
use crate::enumerate::Budget;
use crate::error::{Error, Result};

/// Codeword counts `A_0..A_n` by Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightProfile {
    counts: Vec<BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    MacWilliams,
    /// Direct on whichever of `C`, `C⊥` is smaller.
    Auto,
}

impl WeightProfile {
    pub fn from_counts<T: Into<BigUint>>(counts: impl IntoIterator<Item = T>) -> Self {
        WeightProfile {
            counts: counts.into_iter().map(Into::into).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    /// `A_w` as a machine integer when it fits.
    pub fn count(&self, w: usize) -> Option<u64> {
        self.counts.get(w).and_then(|c| c.to_u64())
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Nonzero weights `W(C)`.
    pub fn weights(&self) -> Vec<usize> {
        (1..self.counts.len()).filter(|&w| !self.counts[w].is_zero()).collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| !self.counts[w].is_zero())
    }

    /// Largest `Δ > 1` dividing every nonzero weight, or 1.
    pub fn divisor(&self) -> usize {
        self.weights().into_iter().fold(0, |g, w| g.gcd(&w)).max(1)
    }

    /// Nonzero `(w, A_w)` pairs.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// The distribution of the dual of a code of this distribution, which
    /// has `q^k` codewords.
    pub fn macwilliams(&self, q: u32) -> Result<WeightProfile> {
        let n = self.n();
        let size: BigInt = self.total().into();
        let k = krawtchouk_table(n, q);
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = BigInt::zero();
            for (j, a) in self.nonzero() {
                acc += &k[i][j] * BigInt::from(a.clone());
            }
            let (quot, rem) = acc.div_rem(&size);
            if !rem.is_zero() || quot < BigInt::zero() {
                return Err(Error::Invariant(format!(
                    "MacWilliams transform produced a non-integral count at weight {i}"
                )));
            }
            out.push(quot.to_biguint().unwrap());
        }
        Ok(WeightProfile { counts: out })
    }
}

/// `K_i(j)` for `0 <= i, j <= n`.
fn krawtchouk_table(n: usize, q: u32) -> Vec<Vec<BigInt>> {
    let binom = binomials(n);
    let qm1 = BigInt::from(q - 1);
    let pows: Vec<BigInt> = (0..=n).map(|e| num_traits::pow(qm1.clone(), e)).collect();
    (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| {
                    let mut s = BigInt::zero();
                    for h in 0..=i.min(j) {
                        if i - h > n - j {
                            continue;
                        }
                        let term = &binom[j][h] * &binom[n - j][i - h] * &pows[i - h];
                        if h % 2 == 0 {
                            s += term;
                        } else {
                            s -= term;
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub(crate) fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = BigInt::one();
        for b in 1..=a {
            t[a][b] = &t[a - 1][b - 1] + &t[a - 1][b];
        }
    }
    t
}

impl Serialize for WeightProfile {
    /// Serialized as a map from weight to count for the nonzero entries;
    /// counts beyond 64 bits are written as decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nz: Vec<_> = self.nonzero().collect();
        let mut m = s.serialize_map(Some(nz.len()))?;
        for (w, c) in nz {
            match c.to_u64() {
                Some(v) => m.serialize_entry(&w.to_string(), &v)?,
                None => m.serialize_entry(&w.to_string(), &c.to_string())?,
            }
        }
        m.end()
    }
}

/// Weight distribution of `code`.
pub fn weight_distribution(code: &LinearCode, method: Method, budget: &Budget) -> Result<WeightProfile> {
    let method = match method {
        Method::Auto if code.k() * 2 > code.n() => Method::MacWilliams,
        Method::Auto => Method::Direct,
        m => m,
    };
    match method {
        Method::Direct => {
            let hist = code.weight_histogram(budget)?;
            Ok(WeightProfile::from_counts(hist))
        }
        _ => {
            let dual = code.dual();
            let hist = dual.weight_histogram(budget)?;
            WeightProfile::from_counts(hist).macwilliams(code.q())
        }
    }
}

/// Distributions of `code` and its dual, each enumerated at most once.
pub fn weight_distributions(code: &LinearCode, budget: &Budget) -> Result<(WeightProfile, WeightProfile)> {
    if code.k() * 2 <= code.n() {
        let a = weight_distribution(code, Method::Direct, budget)?;
        let b = a.macwilliams(code.q())?;
        Ok((a, b))
    } else {
        let b = weight_distribution(&code.dual(), Method::Direct, budget)?;
        let a = b.macwilliams(code.q())?;
        Ok((a, b))
    }
}

//! Fundamental parameters of a code and its dual.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::code::LinearCode;
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::weights::{weight_distributions, WeightProfile};

/// Largest syndrome space swept by [`covering_radius`].
pub const MAX_SYNDROMES: u64 = 1 << 24;

#[derive(Clone, Debug, Serialize)]
pub struct CodeProfile {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_dual: Option<usize>,
    pub s: usize,
    pub s_dual: usize,
    pub e: Option<usize>,
    pub rho: Option<usize>,
    pub rho_sphere: usize,
    /// Set when `rho` was computed and differs from `rho_sphere`.
    pub rho_divergent: bool,
    pub divisor: usize,
    pub h: Option<usize>,
    pub h_dual: Option<usize>,
    pub weights: Vec<usize>,
    pub dual_weights: Vec<usize>,
    pub is_mds: bool,
    pub is_perfect: bool,
    pub distribution: WeightProfile,
    pub dual_distribution: WeightProfile,
}

impl CodeProfile {
    /// Profile of the dual code, reusing both distributions.
    pub fn swapped(&self) -> CodeProfile {
        build(
            self.q,
            self.n,
            self.n - self.k,
            self.dual_distribution.clone(),
            self.distribution.clone(),
            None,
        )
    }
}

/// Computes every field; the exact covering radius only when `compute_rho`.
pub fn code_profile(code: &LinearCode, compute_rho: bool, budget: &Budget) -> Result<CodeProfile> {
    let (a, b) = weight_distributions(code, budget)?;
    let rho = if compute_rho { Some(covering_radius(code)?) } else { None };
    Ok(build(code.q(), code.n(), code.k(), a, b, rho))
}

/// Profile from known distributions of the code and its dual, without
/// enumeration. `rho` stays unset.
pub fn profile_from_distributions(q: u32, n: usize, k: usize, a: WeightProfile, b: WeightProfile) -> Result<CodeProfile> {
    if a.n() != n || b.n() != n {
        return Err(Error::param(format!("distributions of length {} and {} for n = {n}", a.n(), b.n())));
    }
    let size = BigUint::from(q).pow(k as u32);
    if a.total() != size || b.total() * &size != BigUint::from(q).pow(n as u32) {
        return Err(Error::param(format!("distribution totals do not match q^k and q^(n-k) for q = {q}, n = {n}, k = {k}")));
    }
    Ok(build(q, n, k, a, b, None))
}

fn build(q: u32, n: usize, k: usize, a: WeightProfile, b: WeightProfile, rho: Option<usize>) -> CodeProfile {
    let d = a.min_distance();
    let d_dual = b.min_distance();
    let e = d.map(|d| (d - 1) / 2);
    let rho_sphere = sphere_covering_radius(q, n, k);
    let is_perfect = e.is_some_and(|e| sphere_volume_times_size(q, n, k, e) == BigUint::from(q).pow(n as u32));
    CodeProfile {
        q,
        n,
        k,
        d,
        d_dual,
        s: a.weights().len(),
        s_dual: b.weights().len(),
        e,
        rho,
        rho_sphere,
        rho_divergent: rho.is_some_and(|r| r != rho_sphere),
        divisor: a.divisor(),
        h: d.map(|d| repeat_bound(n, q, d)),
        h_dual: d_dual.map(|d| repeat_bound(n, q, d)),
        weights: a.weights(),
        dual_weights: b.weights(),
        is_mds: d == Some(n + 1 - k),
        is_perfect,
        distribution: a,
        dual_distribution: b,
    }
}

/// Largest `h <= n` with `h - floor((h+q-2)/(q-1)) < d`.
pub fn repeat_bound(n: usize, q: u32, d: usize) -> usize {
    let q = q as usize;
    (0..=n).rev().find(|&h| h - (h + q - 2) / (q - 1) < d).unwrap_or(0)
}

fn sphere_volume_times_size(q: u32, n: usize, k: usize, r: usize) -> BigUint {
    let mut vol = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pow = BigUint::one();
    for i in 0..=r.min(n) {
        if i > 0 {
            binom = binom * (n - i + 1) / i;
            pow *= q - 1;
        }
        vol += &binom * &pow;
    }
    vol * BigUint::from(q).pow(k as u32)
}

/// Smallest `ρ` with `q^k · Σ_{i<=ρ} C(n,i)(q-1)^i >= q^n`.
pub fn sphere_covering_radius(q: u32, n: usize, k: usize) -> usize {
    let target = BigUint::from(q).pow(n as u32);
    (0..=n)
        .find(|&r| sphere_volume_times_size(q, n, k, r) >= target)
        .unwrap_or(n)
}

/// Exact covering radius by breadth-first search over the syndrome space.
pub fn covering_radius(code: &LinearCode) -> Result<usize> {
    let n = code.n();
    let r = n - code.k();
    if r == 0 {
        return Ok(0);
    }
    let f = code.field();
    let q = f.order() as u64;
    let states = q.checked_pow(r as u32).filter(|&s| s <= MAX_SYNDROMES).ok_or_else(|| {
        Error::capacity(
            format!("covering radius of {code:?}"),
            format!("{q}^{r} syndromes"),
            MAX_SYNDROMES,
            "exact covering radius needs n-k small; use rho_sphere as a lower bound",
        )
    })?;
    let h = code.dual();
    // syndrome of the unit vector a·e_j
    let moves: Vec<Vec<Elem>> = (0..n)
        .flat_map(|j| {
            let h = &h;
            f.nonzero().map(move |a| h.generator().iter().map(|row| f.mul(a, row[j])).collect())
        })
        .collect();
    let codec = SyndromeCodec::new(f);
    let moves: Vec<u32> = moves.iter().map(|m| codec.encode(m)).collect();
    let mut dist = vec![u16::MAX; states as usize];
    dist[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    let mut reached = 1u64;
    let mut radius = 0;
    let mut buf = vec![0 as Elem; r];
    let mut tmp = vec![0 as Elem; r];
    while let Some(s) = queue.pop_front() {
        let ds = dist[s as usize];
        radius = ds as usize;
        if !codec.xor {
            codec.decode(s, &mut buf);
        }
        for &m in &moves {
            let t = if codec.xor {
                s ^ m
            } else {
                codec.decode(m, &mut tmp);
                for (x, &y) in tmp.iter_mut().zip(&buf) {
                    *x = f.add(*x, y);
                }
                codec.encode(&tmp)
            };
            if dist[t as usize] == u16::MAX {
                dist[t as usize] = ds + 1;
                reached += 1;
                queue.push_back(t);
            }
        }
        if reached == states {
            // every syndrome seen; the rest of the queue cannot raise the maximum
            radius = queue.back().map_or(radius, |&t| dist[t as usize] as usize);
            break;
        }
    }
    Ok(radius)
}

/// Syndromes as integers: packed bit fields in characteristic 2 (so that
/// addition is XOR), base-`q` digits otherwise.
struct SyndromeCodec {
    q: u32,
    bits: u32,
    xor: bool,
}

impl SyndromeCodec {
    fn new(f: &FieldSpec) -> Self {
        SyndromeCodec {
            q: f.order(),
            bits: f.degree(),
            xor: f.is_char2(),
        }
    }

    fn encode(&self, v: &[Elem]) -> u32 {
        if self.xor {
            v.iter().rev().fold(0, |acc, &x| (acc << self.bits) | x as u32)
        } else {
            v.iter().rev().fold(0, |acc, &x| acc * self.q + x as u32)
        }
    }

    fn decode(&self, mut s: u32, out: &mut [Elem]) {
        for x in out.iter_mut() {
            if self.xor {
                *x = (s & ((1 << self.bits) - 1)) as Elem;
                s >>= self.bits;
            } else {
                *x = (s % self.q) as Elem;
                s /= self.q;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{distance, RankMode};
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_radius(c: &LinearCode) -> usize {
        let q = c.q() as usize;
        let n = c.n();
        let mut words = Vec::new();
        c.enumerate(None, &Budget::default(), |cw, _| words.push(cw.to_vec())).unwrap();
        let mut worst = 0;
        for idx in 0..q.pow(n as u32) {
            let x: Vec<Elem> = (0..n).map(|j| ((idx / q.pow(j as u32)) % q) as Elem).collect();
            let best = words.iter().map(|w| distance(w, &x)).min().unwrap();
            worst = worst.max(best);
        }
        worst
    }

    #[test]
    fn covering_radius_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2u32, 3, 4] {
            let f = FieldSpec::shared(q).unwrap();
            let n = if q == 2 { 9 } else { 6 };
            for _ in 0..6 {
                let k = rng.gen_range(1..=3);
                let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
                let Ok(c) = LinearCode::from_generator(f.clone(), rows, RankMode::Strict) else { continue };
                assert_eq!(covering_radius(&c).unwrap(), brute_radius(&c), "{c:?}");
            }
        }
    }

    #[test]
    fn repeat_bound_binary_is_n() {
        for n in 1..20 {
            for d in 1..=n {
                assert_eq!(repeat_bound(n, 2, d), n);
            }
        }
    }

    #[test]
    fn repeat_bound_small_cases() {
        // q=3, d=5: h - ceil(h/2) < 5  =>  h <= 9
        assert_eq!(repeat_bound(11, 3, 5), 9);
        assert_eq!(repeat_bound(4, 3, 5), 4);
    }

    #[test]
    fn sphere_radius_for_perfect_binary_hamming() {
        assert_eq!(sphere_covering_radius(2, 7, 4), 1);
        assert_eq!(sphere_covering_radius(2, 7, 7), 0);
    }

    #[test]
    fn profile_of_binary_hamming() {
        let f = FieldSpec::shared(2).unwrap();
        let rows = vec![
            vec![1, 0, 0, 0, 0, 1, 1],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1, 1, 1],
        ];
        let c = LinearCode::from_generator(f, rows, RankMode::Strict).unwrap();
        let p = code_profile(&c, true, &Budget::default()).unwrap();
        assert_eq!((p.d, p.d_dual, p.s, p.s_dual, p.e, p.rho), (Some(3), Some(4), 3, 1, Some(1), Some(1)));
        assert!(p.is_perfect);
        assert!(!p.rho_divergent);
        assert_eq!(p.h, Some(7));
        let sw = p.swapped();
        assert_eq!(sw.d, Some(4));
        assert_eq!(sw.k, 3);
    }
}

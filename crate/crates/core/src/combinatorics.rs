//! Elementary symmetric polynomials, subset-sum and subset-product counts,
//! and the block sets `B_{k,l}` / `B^b_{k,l}` over the unity subgroup.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::design::BlockFamily;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec, QuadraticExtension};

/// Default cap on the number of k-subsets visited by [`block_sets`].
pub const MAX_SUBSETS: u64 = 1 << 26;

/// `σ_0..σ_k` of `elems`, i.e. the coefficients of `Π (1 + u x)`.
pub fn esp_all(f: &FieldSpec, elems: &[Elem]) -> Vec<Elem> {
    let mut e = vec![0 as Elem; elems.len() + 1];
    e[0] = 1;
    for (i, &u) in elems.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] = f.add(e[j], f.mul(u, e[j - 1]));
        }
    }
    e
}

/// `σ_l(elems)`: the sum of all `l`-fold products.
pub fn esp(f: &FieldSpec, elems: &[Elem], l: usize) -> Result<Elem> {
    if l > elems.len() {
        return Err(Error::param(format!("σ_{l} of a {}-element set", elems.len())));
    }
    Ok(esp_all(f, elems)[l])
}

/// Möbius function by trial division.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1, "mobius(0) is undefined");
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Ramanujan sum `C_r(b) = Σ_{d | gcd(r,b)} μ(r/d)·d`, with `gcd(r,0) = r`.
fn ramanujan(r: u64, b: u64) -> i64 {
    let g = if b == 0 { r } else { r.gcd(&b) };
    divisors(g).into_iter().map(|d| mobius(r / d) * d as i64).sum()
}

/// Number of k-subsets of `Z_n` whose elements sum to `b`.
pub fn subset_sum_count(n: u64, k: u64, b: u64) -> Result<BigUint> {
    if n == 0 || k > n {
        return Err(Error::param(format!("M(k,b) needs 0 <= k <= n and n >= 1 (n={n}, k={k})")));
    }
    let b = b % n;
    let g = if k == 0 { n } else { n.gcd(&k) };
    let mut acc = BigInt::zero();
    for r in divisors(g) {
        let sign = if (k + k / r) % 2 == 0 { 1 } else { -1 };
        acc += binom(n / r, k / r) * (sign * ramanujan(r, b));
    }
    let (quot, rem) = acc.div_rem(&BigInt::from(n));
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::Invariant(format!("M({k},{b}) over Z_{n} evaluated to {acc}/{n}")));
    }
    Ok(quot.to_biguint().unwrap())
}

/// Number of k-subsets of `F_q^*` whose elements multiply to `c`.
pub fn subset_prod_count(f: &FieldSpec, k: u64, c: Elem) -> Result<BigUint> {
    if c == 0 {
        return Err(Error::Domain("N(k,c) needs c != 0".into()));
    }
    let b = f.discrete_log(c)? as u64;
    subset_sum_count(f.order() as u64 - 1, k, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockSetVariant {
    /// `σ_l(B) = 0`.
    Plain,
    /// `σ_l(B - a) = 0` for some `a ∈ B`.
    Based,
}

/// k-subsets of the unity subgroup `U`, as sorted index lists into `unity`.
#[derive(Clone, Debug)]
pub struct BlockSets {
    pub k: usize,
    pub l: usize,
    pub variant: BlockSetVariant,
    /// `U` in the order `γ^0, γ^1, …, γ^q`.
    pub unity: Vec<Elem>,
    pub blocks: Vec<Vec<u16>>,
    /// For `Based`: the indices `a ∈ B` satisfying the condition, per block.
    pub bases: Vec<Vec<u16>>,
}

impl BlockSets {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Characteristic vectors over the index set of `U`.
    pub fn to_block_family(&self) -> BlockFamily {
        let n = self.unity.len();
        let mut flat = vec![0 as Elem; n * self.blocks.len()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &j in b {
                flat[i * n + j as usize] = 1;
            }
        }
        let tag = match self.variant {
            BlockSetVariant::Plain => "B",
            BlockSetVariant::Based => "B^b",
        };
        BlockFamily::from_flat(2, n, self.k, flat, format!("{tag}_{{{},{}}} over U", self.k, self.l))
            .expect("characteristic vectors have weight k")
    }
}

/// All `B ∈ C(U, k)` meeting the `variant` condition on `σ_l`, in
/// lexicographic order of index lists.
pub fn block_sets(
    ext: &QuadraticExtension,
    k: usize,
    l: usize,
    variant: BlockSetVariant,
    max_subsets: u64,
) -> Result<BlockSets> {
    let unity = ext.unity_subgroup();
    let f = ext.ext().as_ref();
    let n = unity.len();
    if k == 0 || k > n || l > k {
        return Err(Error::param(format!("block sets need 1 <= k <= |U| = {n} and l <= k (k={k}, l={l})")));
    }
    let total = crate::design::binom(n, k);
    if total > max_subsets {
        return Err(Error::capacity(
            format!("{k}-subsets of U"),
            total,
            max_subsets,
            "block sets are enumerated exhaustively; use a smaller field",
        ));
    }
    let mut out = BlockSets {
        k,
        l,
        variant,
        unity: unity.clone(),
        blocks: Vec::new(),
        bases: Vec::new(),
    };
    // levels[d] holds σ_0..σ_d of the first d chosen elements
    let mut levels = vec![vec![0 as Elem; k + 1]; k + 1];
    levels[0][0] = 1;
    let mut pick: Vec<u16> = Vec::with_capacity(k);
    let mut shifted = vec![0 as Elem; k];
    fn rec(
        f: &FieldSpec,
        unity: &[Elem],
        k: usize,
        l: usize,
        variant: BlockSetVariant,
        start: usize,
        levels: &mut Vec<Vec<Elem>>,
        pick: &mut Vec<u16>,
        shifted: &mut [Elem],
        out: &mut BlockSets,
    ) {
        let d = pick.len();
        if d == k {
            match variant {
                BlockSetVariant::Plain => {
                    if levels[k][l] == 0 {
                        out.blocks.push(pick.clone());
                    }
                }
                BlockSetVariant::Based => {
                    let mut bases = Vec::new();
                    for &a in pick.iter() {
                        let av = unity[a as usize];
                        for (s, &p) in shifted.iter_mut().zip(pick.iter()) {
                            *s = f.sub(unity[p as usize], av);
                        }
                        if esp_all(f, shifted)[l] == 0 {
                            bases.push(a);
                        }
                    }
                    if !bases.is_empty() {
                        out.blocks.push(pick.clone());
                        out.bases.push(bases);
                    }
                }
            }
            return;
        }
        for i in start..=unity.len() - (k - d) {
            let u = unity[i];
            let (lo, hi) = levels.split_at_mut(d + 1);
            let (prev, next) = (&lo[d], &mut hi[0]);
            next[0] = 1;
            for j in 1..=d + 1 {
                let carry = f.mul(u, prev[j - 1]);
                next[j] = if j <= d { f.add(prev[j], carry) } else { carry };
            }
            pick.push(i as u16);
            rec(f, unity, k, l, variant, i + 1, levels, pick, shifted, out);
            pick.pop();
        }
    }
    rec(f, &unity, k, l, variant, 0, &mut levels, &mut pick, &mut shifted, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_m(n: u64, k: u64, b: u64) -> u64 {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as u64 == k)
            .filter(|m| (0..n).filter(|i| m >> i & 1 == 1).sum::<u64>() % n == b % n)
            .count() as u64
    }

    fn brute_esp(f: &FieldSpec, elems: &[Elem], l: usize) -> Elem {
        let mut s = 0;
        for m in 0u32..1 << elems.len() {
            if m.count_ones() as usize == l {
                let p = (0..elems.len()).filter(|i| m >> i & 1 == 1).fold(1, |acc, i| f.mul(acc, elems[i]));
                s = f.add(s, p);
            }
        }
        s
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i as u64 + 1), m);
        }
    }

    #[test]
    fn subset_sums_match_brute_force() {
        for n in 1..=12 {
            for k in 0..=n {
                for b in 0..n {
                    assert_eq!(subset_sum_count(n, k, b).unwrap(), BigUint::from(brute_m(n, k, b)), "n={n} k={k} b={b}");
                }
            }
        }
        assert_eq!(subset_sum_count(4, 2, 0).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn subset_products_examples() {
        let f8 = FieldSpec::new(8).unwrap();
        for c in f8.nonzero() {
            assert_eq!(subset_prod_count(&f8, 3, c).unwrap(), BigUint::from(5u32));
        }
        let f9 = FieldSpec::new(9).unwrap();
        for c in f9.nonzero() {
            assert_eq!(subset_prod_count(&f9, 3, c).unwrap(), BigUint::from(7u32));
        }
        assert!(matches!(subset_prod_count(&f9, 3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn subset_products_brute_force() {
        for q in [4u32, 5, 7, 8, 9] {
            let f = FieldSpec::new(q).unwrap();
            let nz: Vec<Elem> = f.nonzero().collect();
            for k in 0..=nz.len() {
                let mut counts = vec![0u64; q as usize];
                for m in 0u32..1 << nz.len() {
                    if m.count_ones() as usize == k {
                        let p = (0..nz.len()).filter(|i| m >> i & 1 == 1).fold(1, |acc, i| f.mul(acc, nz[i]));
                        counts[p as usize] += 1;
                    }
                }
                for &c in &nz {
                    assert_eq!(subset_prod_count(&f, k as u64, c).unwrap(), BigUint::from(counts[c as usize]));
                }
            }
        }
    }

    #[test]
    fn esp_of_six_elements() {
        let f = FieldSpec::new(64).unwrap();
        let elems = [3, 17, 22, 40, 51, 63];
        for l in 0..=6 {
            assert_eq!(esp(&f, &elems, l).unwrap(), brute_esp(&f, &elems, l));
        }
        assert_eq!(esp(&f, &elems, 0).unwrap(), 1);
        assert!(esp(&f, &elems, 7).is_err());
    }

    #[test]
    fn block_sets_small_field_against_direct_filter() {
        let ext = QuadraticExtension::new(8).unwrap();
        let f = ext.ext().clone();
        let u = ext.unity_subgroup();
        let plain = block_sets(&ext, 4, 2, BlockSetVariant::Plain, MAX_SUBSETS).unwrap();
        let mut direct = Vec::new();
        for m in 0u32..1 << u.len() {
            if m.count_ones() == 4 {
                let idx: Vec<u16> = (0..u.len() as u16).filter(|i| m >> i & 1 == 1).collect();
                let elems: Vec<Elem> = idx.iter().map(|&i| u[i as usize]).collect();
                if brute_esp(&f, &elems, 2) == 0 {
                    direct.push(idx);
                }
            }
        }
        direct.sort();
        assert_eq!(plain.blocks, direct);
        let based = block_sets(&ext, 4, 2, BlockSetVariant::Based, MAX_SUBSETS).unwrap();
        for (b, bases) in based.blocks.iter().zip(&based.bases) {
            for &a in bases {
                let shifted: Vec<Elem> = b.iter().map(|&i| f.sub(u[i as usize], u[a as usize])).collect();
                assert_eq!(brute_esp(&f, &shifted, 2), 0);
            }
        }
    }

    #[test]
    fn block_set_capacity() {
        let ext = QuadraticExtension::new(8).unwrap();
        assert!(matches!(
            block_sets(&ext, 4, 2, BlockSetVariant::Plain, 10),
            Err(Error::Capacity { .. })
        ));
    }

    proptest! {
        #[test]
        fn shift_identity(seed in any::<u64>(), a in 1u16..1024) {
            // σ_l(B - a) = Σ_j C(k-j, l-j) (-a)^{l-j} σ_j(B)
            let f = FieldSpec::new(1024).unwrap();
            let mut x = seed;
            let elems: Vec<Elem> = (0..5).map(|_| { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (x >> 33) as Elem % 1024 }).collect();
            let shifted: Vec<Elem> = elems.iter().map(|&u| f.sub(u, a)).collect();
            let direct = esp_all(&f, &shifted);
            let base = esp_all(&f, &elems);
            for l in 0..=5usize {
                let mut s = 0;
                for j in 0..=l {
                    let c = binom((5 - j) as u64, (l - j) as u64);
                    if (c % 2u32) == BigInt::one() {
                        s = f.add(s, f.mul(f.pow(a, (l - j) as u64), base[j]));
                    }
                }
                prop_assert_eq!(direct[l], s);
            }
        }

        #[test]
        fn subset_sums_partition_all_subsets(n in 1u64..40, k in 0u64..40) {
            prop_assume!(k <= n);
            let total: BigUint = (0..n).map(|b| subset_sum_count(n, k, b).unwrap()).sum();
            prop_assert_eq!(total, binom(n, k).to_biguint().unwrap());
        }
    }
}

//! The trace code `C_{1,2,3}` over the unity subgroup of F_{q^2}, `q = 2^m`,
//! and the parametrization of its two lowest weights by block sets.

use crate::code::{LinearCode, RankMode};
use crate::combinatorics::{esp_all, BlockSetVariant, BlockSets};
use crate::design::BlockFamily;
use crate::error::{Error, Result};
use crate::field::{Elem, QuadraticExtension};

use super::{entry, Expected, ZooEntry, ZooParams};

/// `c_{(a,b,c)} = (Tr(a γ^i + b γ^{2i} + c γ^{3i}))_{i=0..q}` for
/// `a, b, c ∈ F_{q^2}`.
#[derive(Clone, Debug)]
pub struct TraceCode123 {
    m: u32,
    ext: QuadraticExtension,
    unity: Vec<Elem>,
    code: LinearCode,
}

impl TraceCode123 {
    /// `m` odd with `q^2 = 4^m` inside the supported field range, so m ∈ {5, 7}.
    pub fn new(m: u32) -> Result<Self> {
        if m % 2 == 0 || m < 5 {
            return Err(Error::param(format!("the trace code needs odd m >= 5, got {m}")));
        }
        if 2 * m > 16 {
            return Err(Error::capacity(
                "F_{q^2} for the trace code",
                format!("2^{}", 2 * m),
                1u32 << 16,
                "fields above 2^16 elements are not supported",
            ));
        }
        let q = 1u32 << m;
        let ext = QuadraticExtension::new(q)?;
        let unity = ext.unity_subgroup();
        let f = ext.ext().clone();
        let g = f.generator();
        let mut rows = Vec::with_capacity(6);
        for slot in 1..=3u64 {
            for beta in [1, g] {
                let row = unity
                    .iter()
                    .map(|&u| ext.trace_down(f.mul(beta, f.pow(u, slot))))
                    .collect::<Result<Vec<_>>>()?;
                rows.push(row);
            }
        }
        let code = LinearCode::from_generator(ext.base().clone(), rows, RankMode::Strict)?;
        Ok(TraceCode123 { m, ext, unity, code })
    }

    pub fn q(&self) -> u32 {
        1 << self.m
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn extension(&self) -> &QuadraticExtension {
        &self.ext
    }

    /// `γ^0, …, γ^q`.
    pub fn unity(&self) -> &[Elem] {
        &self.unity
    }

    pub fn entry(&self) -> ZooEntry {
        let q = self.q() as usize;
        let params = ZooParams { m: Some(self.m), ..Default::default() };
        let mut e = entry(
            "trace123",
            params,
            self.code.clone(),
            Expected { n: q + 1, k: 6, d: q - 5, weights: None, enumerator: None },
        );
        e.transitivity = Some(3);
        e.transitivity_source = Some("PGL(2,q) acting on U through a Möbius map is triply transitive".into());
        e
    }

    /// The codeword for `(a, b, c) ∈ F_{q^2}^3`.
    pub fn codeword(&self, a: Elem, b: Elem, c: Elem) -> Result<Vec<Elem>> {
        let f = self.ext.ext();
        self.unity
            .iter()
            .map(|&u| {
                let u2 = f.mul(u, u);
                let v = f.add(f.add(f.mul(a, u), f.mul(b, u2)), f.mul(c, f.mul(u2, u)));
                self.ext.trace_down(v)
            })
            .collect()
    }

    /// `(a, b, c)` for a block `B ∈ B_{6,3}` and `τ ∈ F_q^*`:
    /// `c = τ/√σ_6`, `b = c·σ_1`, `a = c·σ_2`.
    pub fn coefficients_b63(&self, block: &[u16], tau: Elem) -> Result<(Elem, Elem, Elem)> {
        if block.len() != 6 {
            return Err(Error::param("B_{6,3} blocks have six elements"));
        }
        let f = self.ext.ext();
        let elems: Vec<Elem> = block.iter().map(|&i| self.unity[i as usize]).collect();
        let s = esp_all(f, &elems);
        let c = f.div(self.ext.embed(tau), self.ext.sqrt_char2(s[6])?)?;
        Ok((f.mul(c, s[2]), f.mul(c, s[1]), c))
    }

    /// `(a, b, c)` for `B ∈ B^b_{5,3}` with distinguished `u_i = unity[base]`:
    /// `c = τ/√(u_i σ_5)`, `b = c(σ_1 + u_i)`, `a = c(σ_2 + u_i σ_1)`.
    pub fn coefficients_b53(&self, block: &[u16], base: u16, tau: Elem) -> Result<(Elem, Elem, Elem)> {
        if block.len() != 5 || !block.contains(&base) {
            return Err(Error::param("B^b_{5,3} blocks have five elements including the base"));
        }
        let f = self.ext.ext();
        let elems: Vec<Elem> = block.iter().map(|&i| self.unity[i as usize]).collect();
        let s = esp_all(f, &elems);
        let ui = self.unity[base as usize];
        let c = f.div(self.ext.embed(tau), self.ext.sqrt_char2(f.mul(ui, s[5]))?)?;
        let b = f.mul(c, f.add(s[1], ui));
        let a = f.mul(c, f.add(s[2], f.mul(ui, s[1])));
        Ok((a, b, c))
    }

    /// Codewords generated from block sets through the matching
    /// parametrization, `q - 1` per block (one per `τ`). Plain `B_{6,3}`
    /// gives weight `q - 5`; based `B^b_{5,3}` gives weight `q - 4`.
    pub fn family_from_blocks(&self, sets: &BlockSets) -> Result<BlockFamily> {
        let n = self.unity.len();
        let (w, expected_k, expected_l) = match sets.variant {
            BlockSetVariant::Plain => (n - 6, 6, 3),
            BlockSetVariant::Based => (n - 5, 5, 3),
        };
        if (sets.k, sets.l) != (expected_k, expected_l) || sets.unity != self.unity {
            return Err(Error::param("block sets do not match the trace code parametrization"));
        }
        let base = self.ext.base();
        let mut flat = Vec::with_capacity(sets.len() * (base.order() as usize - 1) * n);
        for (i, block) in sets.blocks.iter().enumerate() {
            let ui = match sets.variant {
                BlockSetVariant::Plain => None,
                BlockSetVariant::Based => match sets.bases[i].as_slice() {
                    [a] => Some(*a),
                    other => {
                        return Err(Error::Invariant(format!(
                            "block {block:?} has {} admissible base elements, expected exactly one",
                            other.len()
                        )))
                    }
                },
            };
            for tau in base.nonzero() {
                let (a, b, c) = match ui {
                    None => self.coefficients_b63(block, tau)?,
                    Some(u) => self.coefficients_b53(block, u, tau)?,
                };
                flat.extend(self.codeword(a, b, c)?);
            }
        }
        BlockFamily::from_flat(self.q(), n, w, flat, format!("trace123(m={}) weight {w} via block sets", self.m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{block_sets, MAX_SUBSETS};
    use crate::design::support;

    #[test]
    fn parameters_and_rejections() {
        let t = TraceCode123::new(5).unwrap();
        assert_eq!((t.code().n(), t.code().k()), (33, 6));
        assert!(TraceCode123::new(4).is_err());
        assert!(TraceCode123::new(3).is_err());
        assert!(matches!(TraceCode123::new(9), Err(Error::Capacity { .. })));
    }

    #[test]
    fn codewords_lie_in_the_code() {
        let t = TraceCode123::new(5).unwrap();
        assert_eq!(t.codeword(0, 0, 0).unwrap(), vec![0; 33]);
        for (a, b, c) in [(1, 0, 0), (5, 77, 1000), (0, 0, 3), (900, 1, 2)] {
            assert!(t.code().contains(&t.codeword(a, b, c).unwrap()));
        }
    }

    #[test]
    fn b63_zero_sets_are_the_blocks() {
        let t = TraceCode123::new(5).unwrap();
        let sets = block_sets(t.extension(), 6, 3, BlockSetVariant::Plain, MAX_SUBSETS).unwrap();
        for block in sets.blocks.iter().step_by(997) {
            for tau in [1, 7, 31] {
                let (a, b, c) = t.coefficients_b63(block, tau).unwrap();
                let cw = t.codeword(a, b, c).unwrap();
                let zeros: Vec<u16> = (0..33u16).filter(|&i| !support(&cw).contains(&i)).collect();
                assert_eq!(&zeros, block);
            }
        }
    }
}

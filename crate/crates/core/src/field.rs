//! Finite fields F_q for prime powers q <= 2^16.
//!
//! An element is stored as its index: the representative polynomial
//! `c_0 + c_1 a + ... + c_{m-1} a^{m-1}` (with `a` a root of the modulus)
//! is encoded as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Index 0 is zero and
//! index 1 is one. Moduli come from a fixed table so encodings are stable
//! across runs; fields missing from the table fall back to the smallest
//! primitive polynomial in index order.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Element index. Valid values lie in `[0, q)`.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Add tables are materialised up to this order for odd characteristic.
const ADD_TABLE_MAX: u32 = 256;

/// Conway polynomials, low coefficients first, leading 1 omitted.
const CONWAY: &[(u32, &[u32])] = &[
    (2, &[1]),
    (2, &[1, 1]),
    (2, &[1, 1, 0]),
    (2, &[1, 1, 0, 0]),
    (2, &[1, 0, 1, 0, 0]),
    (2, &[1, 1, 0, 1, 1, 0]),
    (2, &[1, 1, 0, 0, 0, 0, 0]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, &[1]),
    (3, &[2, 2]),
    (3, &[1, 2, 0]),
    (3, &[2, 0, 0, 2]),
    (3, &[1, 2, 0, 0, 0]),
    (3, &[2, 2, 1, 0, 2, 0]),
    (5, &[3]),
    (5, &[2, 4]),
    (5, &[3, 3, 0]),
    (5, &[2, 1, 4, 0]),
    (7, &[4]),
    (7, &[3, 6]),
    (7, &[4, 0, 6]),
    (11, &[9]),
    (11, &[2, 7]),
    (13, &[11]),
    (13, &[2, 12]),
];

fn conway_lookup(p: u32, m: u32) -> Option<Vec<u32>> {
    CONWAY
        .iter()
        .find(|(pp, c)| *pp == p && c.len() as u32 == m)
        .map(|(_, c)| c.to_vec())
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// A concrete finite field with log/antilog tables.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// `c_0 .. c_{m-1}`; the modulus is `x^m + sum c_i x^i`.
    modulus: Vec<u32>,
    generator: Elem,
    log: Vec<u32>,
    antilog: Vec<Elem>,
    neg: Vec<Elem>,
    add_table: Option<Vec<Elem>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds F_q with the canonical modulus.
    pub fn new(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(Error::param(format!("field order {q} exceeds 2^16")));
        }
        let modulus = match conway_lookup(p, m) {
            Some(c) => c,
            None if m == 1 => vec![(p - smallest_primitive_root(p)) % p],
            None => search_primitive(p, m)?,
        };
        Self::with_modulus(p, modulus)
    }

    /// Convenience wrapper returning a shareable handle.
    pub fn shared(q: u32) -> Result<Arc<Self>> {
        Self::new(q).map(Arc::new)
    }

    /// Builds the field defined by `x^m + sum c_i x^i` over F_p. The modulus must
    /// be irreducible and its root must generate the multiplicative group.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let m = modulus.len() as u32;
        if m == 0 || prime_power(p) != Some((p, 1)) {
            return Err(Error::param(format!("bad modulus over F_{p}")));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::param(format!("field order {p}^{m} exceeds 2^16")))?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::param("modulus coefficient out of range"));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::param(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let (log, antilog) = build_logs(p, &modulus)
            .ok_or_else(|| Error::param(format!("root of modulus {modulus:?} is not primitive")))?;
        let generator = antilog[if q > 2 { 1 } else { 0 }];

        let neg = (0..q)
            .map(|x| digits_map(p, m, x, |d| (p - d) % p))
            .collect::<Vec<_>>();
        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            generator,
            log,
            antilog,
            neg,
            add_table: None,
        };
        if p != 2 && q <= ADD_TABLE_MAX {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a as Elem, b as Elem);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients `c_0 .. c_{m-1}` (monic, leading term omitted).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn is_char2(&self) -> bool {
        self.p == 2
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|x| x as Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        (x as u32) < self.q
    }

    /// The element `n * 1` of the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.q as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.log[a as usize] + self.log[b as usize];
        let n = self.q - 1;
        self.antilog[(if e >= n { e - n } else { e }) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q });
        }
        let n = self.q - 1;
        Ok(self.antilog[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.antilog[l as usize]
    }

    /// Generator raised to `e` (any integer, reduced mod q-1).
    pub fn exp(&self, e: i64) -> Elem {
        let n = (self.q - 1) as i64;
        self.antilog[e.rem_euclid(n) as usize]
    }

    /// Discrete logarithm to the base of the fixed generator.
    pub fn discrete_log(&self, x: Elem) -> Result<u32> {
        if x == 0 || !self.contains(x) {
            return Err(Error::Domain(format!("discrete log of {x} in F_{}", self.q)));
        }
        Ok(self.log[x as usize])
    }

    /// Base-p digits of the element index, low first.
    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut x = x as u32;
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut a, mut b) = (a as u32, b as u32);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as Elem
    }
}

fn digits_map(p: u32, m: u32, x: u32, f: impl Fn(u32) -> u32) -> Elem {
    let (mut x, mut out, mut place) = (x, 0, 1);
    for _ in 0..m {
        out += f(x % p) * place;
        x /= p;
        place *= p;
    }
    out as Elem
}

/// Multiplies the element with index `x` by the root of the modulus.
fn mul_by_root(p: u32, modulus: &[u32], x: u32) -> u32 {
    let m = modulus.len();
    let mut d: Vec<u32> = Vec::with_capacity(m);
    let mut rest = x;
    for _ in 0..m {
        d.push(rest % p);
        rest /= p;
    }
    let top = d[m - 1];
    let mut shifted = vec![0u32; m];
    shifted[1..m].copy_from_slice(&d[..(m - 1)]);
    // x^m = -sum c_i x^i
    for i in 0..m {
        shifted[i] = (shifted[i] + top * (p - modulus[i])) % p;
    }
    shifted.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build_logs(p: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<Elem>)> {
    let q = p.pow(modulus.len() as u32);
    let mut log = vec![0u32; q as usize];
    let mut antilog = Vec::with_capacity((q - 1) as usize);
    let mut x = 1u32;
    for i in 0..q - 1 {
        if i > 0 && x == 1 {
            return None;
        }
        antilog.push(x as Elem);
        log[x as usize] = i;
        x = mul_by_root(p, modulus, x);
    }
    (x == 1).then_some((log, antilog))
}

/// Remainder of `a` modulo monic `b` over F_p; both low-first with explicit leading term.
fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division of `x^m + sum c_i x^i` by every monic polynomial of degree <= m/2.
fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let m = modulus.len();
    let mut full = modulus.to_vec();
    full.push(1);
    for deg in 1..=m / 2 {
        for enc in 0..p.pow(deg as u32) {
            let mut div: Vec<u32> = (0..deg).map(|i| (enc / p.pow(i as u32)) % p).collect();
            div.push(1);
            if poly_rem(p, &full, &div).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let (mut x, mut order) = (g, 1);
            while x != 1 {
                x = x * g % p;
                order += 1;
            }
            order == p - 1
        })
        .unwrap_or(1)
}

fn search_primitive(p: u32, m: u32) -> Result<Vec<u32>> {
    for enc in 0..p.pow(m) {
        let c: Vec<u32> = (0..m).map(|i| (enc / p.pow(i)) % p).collect();
        if c[0] == 0 {
            continue;
        }
        if is_irreducible(p, &c) && build_logs(p, &c).is_some() {
            return Ok(c);
        }
    }
    Err(Error::Invariant(format!("no primitive polynomial of degree {m} over F_{p}")))
}

/// F_{q^2} together with the embedded copy of F_q as the fixed field of `x -> x^q`.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: Arc<FieldSpec>,
    ext: Arc<FieldSpec>,
    to_base: Vec<Elem>,
    to_ext: Vec<Elem>,
}

const NOT_IN_SUBFIELD: Elem = Elem::MAX;

impl QuadraticExtension {
    pub fn new(q: u32) -> Result<Self> {
        let base = FieldSpec::shared(q)?;
        let q2 = q
            .checked_mul(q)
            .filter(|&v| v <= MAX_ORDER)
            .ok_or_else(|| Error::param(format!("F_{{{q}^2}} exceeds 2^16")))?;
        let ext = FieldSpec::shared(q2)?;
        let p = base.characteristic();

        // beta generates the subfield; its minimal polynomial over F_p picks a
        // matching primitive element of the canonical F_q.
        let beta = ext.exp((q + 1) as i64);
        let mut minpoly: Vec<Elem> = vec![1];
        let mut conj = beta;
        for _ in 0..base.degree() {
            let mut next = vec![0; minpoly.len() + 1];
            for (i, &c) in minpoly.iter().enumerate() {
                next[i + 1] = ext.add(next[i + 1], c);
                next[i] = ext.sub(next[i], ext.mul(c, conj));
            }
            minpoly = next;
            conj = ext.pow(conj, p as u64);
        }
        if minpoly.iter().any(|&c| c as u32 >= p) {
            return Err(Error::Invariant("minimal polynomial not over the prime field".into()));
        }
        let root = base
            .nonzero()
            .find(|&r| {
                minpoly
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| base.add(base.mul(acc, r), c))
                    == 0
            })
            .ok_or_else(|| Error::Invariant("no root of the subfield minimal polynomial".into()))?;

        let mut to_base = vec![NOT_IN_SUBFIELD; q2 as usize];
        let mut to_ext = vec![0; q as usize];
        to_base[0] = 0;
        for j in 0..(q - 1) as u64 {
            let small = base.pow(root, j);
            let big = ext.pow(beta, j);
            to_base[big as usize] = small;
            to_ext[small as usize] = big;
        }
        Ok(QuadraticExtension {
            base,
            ext,
            to_base,
            to_ext,
        })
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<FieldSpec> {
        &self.ext
    }

    /// Image of a base-field element inside F_{q^2}.
    pub fn embed(&self, x: Elem) -> Elem {
        self.to_ext[x as usize]
    }

    /// Inverse of [`embed`](Self::embed) on the subfield.
    pub fn restrict(&self, x: Elem) -> Option<Elem> {
        match self.to_base[x as usize] {
            NOT_IN_SUBFIELD => None,
            v => Some(v),
        }
    }

    /// Relative trace `x + x^q`, re-encoded in the canonical F_q.
    pub fn trace_down(&self, x: Elem) -> Result<Elem> {
        let q = self.base.order() as u64;
        let t = self.ext.add(x, self.ext.pow(x, q));
        self.restrict(t)
            .ok_or_else(|| Error::Invariant(format!("trace of {x} left the subfield")))
    }

    /// The q+1 elements with `u^{q+1} = 1`, listed as `gamma^0 .. gamma^q`
    /// for `gamma = g^{q-1}`.
    pub fn unity_subgroup(&self) -> Vec<Elem> {
        let q = self.base.order() as i64;
        (0..=q).map(|i| self.ext.exp(i * (q - 1))).collect()
    }

    /// Square root in F_{q^2}; defined here only for characteristic 2.
    pub fn sqrt_char2(&self, x: Elem) -> Result<Elem> {
        if !self.ext.is_char2() {
            return Err(Error::Domain("square roots are only provided in characteristic 2".into()));
        }
        Ok(self.ext.pow(x, (self.ext.order() / 2) as u64))
    }
}

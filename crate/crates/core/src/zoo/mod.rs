//! Constructors for the code families studied here, each with a fixed,
//! documented generator matrix and the profile it is expected to have.

mod trace;

use std::sync::Arc;

use serde::Serialize;

use crate::code::{LinearCode, RankMode};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::profile::CodeProfile;

pub use trace::TraceCode123;

/// Longest simplex/Hamming code built.
/// Nonzero weight enumerator of the extended quadratic-residue
/// `[30,15,12]_4` code, an extremal Hermitian self-dual code. The code is
/// not constructed here: `4^15` codewords are beyond exhaustive reach.
pub const QR30_ENUMERATOR: [(usize, u64); 10] = [
    (12, 118_755),
    (14, 1_151_010),
    (16, 12_038_625),
    (18, 61_752_600),
    (20, 195_945_750),
    (22, 341_403_660),
    (24, 312_800_670),
    (26, 129_570_840),
    (28, 18_581_895),
    (30, 378_018),
];

pub const MAX_PROJECTIVE_LENGTH: usize = 10_000;

/// Constructor parameters; unused ones stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZooParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

/// What the computed profile must match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<usize>>,
    /// Nonzero `(w, A_w)` pairs for `w > 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumerator: Option<Vec<(usize, u64)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZooEntry {
    pub id: String,
    pub params: ZooParams,
    #[serde(skip)]
    pub code: LinearCode,
    pub expected: Expected,
    /// Asserted t-transitivity of the automorphism group, never computed.
    pub transitivity: Option<usize>,
    pub transitivity_source: Option<String>,
}

impl ZooEntry {
    /// Compares a computed profile with the expectation; returns the list
    /// of mismatches.
    pub fn golden_check(&self, p: &CodeProfile) -> Vec<String> {
        let e = &self.expected;
        let mut bad = Vec::new();
        if (p.n, p.k, p.d) != (e.n, e.k, Some(e.d)) {
            bad.push(format!("parameters [{}, {}, {:?}] expected [{}, {}, {}]", p.n, p.k, p.d, e.n, e.k, e.d));
        }
        if let Some(w) = &e.weights {
            if &p.weights != w {
                bad.push(format!("weights {:?} expected {:?}", p.weights, w));
            }
        }
        if let Some(en) = &e.enumerator {
            let got: Vec<(usize, u64)> = p
                .distribution
                .nonzero()
                .filter(|(w, _)| *w > 0)
                .map(|(w, _)| (w, p.distribution.count(w).unwrap_or(u64::MAX)))
                .collect();
            if &got != en {
                bad.push(format!("enumerator {got:?} expected {en:?}"));
            }
        }
        bad
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ZooInfo {
    pub id: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn list() -> Vec<ZooInfo> {
    vec![
        ZooInfo { id: "simplex", params: "--q --m", description: "simplex code from the points of PG(m-1, q)" },
        ZooInfo { id: "hamming", params: "--q --m", description: "Hamming code, dual of the simplex code" },
        ZooInfo { id: "rs", params: "--q --k", description: "Reed-Solomon code evaluated at 1, α, …, α^{q-2}" },
        ZooInfo { id: "drs", params: "--q --k", description: "doubly-extended Reed-Solomon code (0, F_q^*, ∞)" },
        ZooInfo { id: "ternary-golay", params: "", description: "[11,6,5] ternary Golay code" },
        ZooInfo { id: "rt6", params: "", description: "[11,5,6] dual of the ternary Golay code" },
        ZooInfo { id: "pless", params: "--n 12|24", description: "Pless symmetry code [I | S]" },
        ZooInfo { id: "tf1", params: "--q (even)", description: "[q+2,3,q] code from a regular hyperoval" },
        ZooInfo { id: "tf1-dual", params: "--q (even)", description: "[q+2,q-1,4] dual of tf1" },
        ZooInfo { id: "tf3", params: "--q", description: "[q^2+1,4,q^2-q] code from an elliptic quadric" },
        ZooInfo { id: "tf3-dual", params: "--q", description: "[q^2+1,q^2-3,4] dual of tf3" },
        ZooInfo { id: "trace123", params: "--m (odd, 5 or 7)", description: "[q+1,6,q-5] trace code over the unity subgroup, q = 2^m" },
    ]
}

fn need<T: Copy>(v: Option<T>, name: &str, id: &str) -> Result<T> {
    v.ok_or_else(|| Error::param(format!("zoo code {id} needs --{name}")))
}

/// Builds a zoo code by id.
pub fn build(id: &str, p: &ZooParams) -> Result<ZooEntry> {
    let q = |id| need(p.q, "q", id);
    match id {
        "simplex" => simplex(q(id)?, need(p.m, "m", id)?),
        "hamming" => hamming(q(id)?, need(p.m, "m", id)?),
        "rs" => reed_solomon(q(id)?, need(p.k, "k", id)?),
        "drs" => drs(q(id)?, need(p.k, "k", id)?),
        "ternary-golay" => ternary_golay(),
        "rt6" => rt6(),
        "pless" => pless_symmetry(need(p.n, "n", id)?),
        "tf1" => tf1(q(id)?),
        "tf1-dual" => tf1_dual(q(id)?),
        "tf3" => tf3(q(id)?),
        "tf3-dual" => tf3_dual(q(id)?),
        "trace123" => Ok(TraceCode123::new(need(p.m, "m", id)?)?.entry()),
        other => Err(Error::param(format!("unknown zoo code {other:?}; see `zoo list`"))),
    }
}

fn entry(id: &str, params: ZooParams, code: LinearCode, expected: Expected) -> ZooEntry {
    let label = match (&params.q, &params.m, &params.k, &params.n) {
        (Some(q), Some(m), _, _) => format!("{id}(q={q}, m={m})"),
        (Some(q), _, Some(k), _) => format!("{id}(q={q}, k={k})"),
        (Some(q), _, _, _) => format!("{id}(q={q})"),
        (_, Some(m), _, _) => format!("{id}(m={m})"),
        (_, _, _, Some(n)) => format!("{id}(n={n})"),
        _ => id.to_string(),
    };
    ZooEntry {
        id: id.to_string(),
        params,
        code: code.with_label(label),
        expected,
        transitivity: None,
        transitivity_source: None,
    }
}

fn from_columns(f: Arc<FieldSpec>, rows: usize, cols: &[Vec<Elem>]) -> Result<LinearCode> {
    let g = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    LinearCode::from_generator(f, g, RankMode::Strict)
}

fn projective_points(f: &FieldSpec, m: u32) -> Result<Vec<Vec<Elem>>> {
    let q = f.order() as u64;
    let n = (q.pow(m) - 1) / (q - 1);
    if n as usize > MAX_PROJECTIVE_LENGTH {
        return Err(Error::capacity(
            format!("PG({}, {q})", m - 1),
            n,
            MAX_PROJECTIVE_LENGTH,
            "choose smaller q or m",
        ));
    }
    // vectors in increasing base-q order, first coordinate most significant,
    // kept when the first nonzero coordinate is 1
    let mut pts = Vec::with_capacity(n as usize);
    for idx in 1..q.pow(m) {
        let v: Vec<Elem> = (0..m).rev().map(|j| ((idx / q.pow(j)) % q) as Elem).collect();
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            pts.push(v);
        }
    }
    Ok(pts)
}

/// `[(q^m-1)/(q-1), m, q^{m-1}]_q`, one column per projective point.
pub fn simplex(q: u32, m: u32) -> Result<ZooEntry> {
    if m < 2 {
        return Err(Error::param("simplex codes need m >= 2"));
    }
    let f = FieldSpec::shared(q)?;
    let pts = projective_points(&f, m)?;
    let n = pts.len();
    let code = from_columns(f, m as usize, &pts)?;
    let w = (q as usize).pow(m - 1);
    let params = ZooParams { q: Some(q), m: Some(m), ..Default::default() };
    Ok(entry(
        "simplex",
        params,
        code,
        Expected {
            n,
            k: m as usize,
            d: w,
            weights: Some(vec![w]),
            enumerator: Some(vec![(w, (q as u64).pow(m) - 1)]),
        },
    ))
}

/// `[n, n-m, 3]_q`, the dual of [`simplex`].
pub fn hamming(q: u32, m: u32) -> Result<ZooEntry> {
    let s = simplex(q, m)?;
    let n = s.expected.n;
    let params = ZooParams { q: Some(q), m: Some(m), ..Default::default() };
    Ok(entry(
        "hamming",
        params,
        s.code.dual(),
        Expected { n, k: n - m as usize, d: 3, weights: None, enumerator: None },
    ))
}

/// Evaluations of polynomials of degree `< k` at `α^0, …, α^{q-2}`.
pub fn reed_solomon(q: u32, k: usize) -> Result<ZooEntry> {
    if k == 0 || k > q as usize - 1 {
        return Err(Error::param(format!("RS codes need 1 <= k <= q-1 (q={q}, k={k})")));
    }
    let f = FieldSpec::shared(q)?;
    let n = q as usize - 1;
    let rows = (0..k)
        .map(|j| (0..n).map(|i| f.exp((i * j) as i64)).collect())
        .collect();
    let code = LinearCode::from_generator(f, rows, RankMode::Strict)?;
    let params = ZooParams { q: Some(q), k: Some(k), ..Default::default() };
    Ok(entry("rs", params, code, Expected { n, k, d: n - k + 1, weights: None, enumerator: None }))
}

/// `(f(0), f(α^0), …, f(α^{q-2}), f(∞))` with `f(∞)` the coefficient of `x^{k-1}`.
pub fn drs(q: u32, k: usize) -> Result<ZooEntry> {
    if k == 0 || k > q as usize + 1 {
        return Err(Error::param(format!("DRS codes need 1 <= k <= q+1 (q={q}, k={k})")));
    }
    let f = FieldSpec::shared(q)?;
    let n = q as usize + 1;
    let rows = (0..k)
        .map(|j| {
            let mut row = Vec::with_capacity(n);
            row.push((j == 0) as Elem);
            row.extend((0..q as usize - 1).map(|i| f.exp((i * j) as i64)));
            row.push((j == k - 1) as Elem);
            row
        })
        .collect();
    let code = LinearCode::from_generator(f, rows, RankMode::Strict)?;
    let params = ZooParams { q: Some(q), k: Some(k), ..Default::default() };
    let mut e = entry("drs", params, code, Expected { n, k, d: n - k + 1, weights: None, enumerator: None });
    e.transitivity = Some(3);
    e.transitivity_source = Some("PGL(2,q) acts triply transitively on the coordinates 0, F_q^*, ∞".into());
    Ok(e)
}

/// Cyclic `[11,6,5]_3` code generated by `x^5 + x^4 - x^3 + x^2 - 1`.
pub fn ternary_golay() -> Result<ZooEntry> {
    let f = FieldSpec::shared(3)?;
    let g: [Elem; 6] = [2, 0, 1, 2, 1, 1];
    let rows = (0..6)
        .map(|s| {
            let mut r = vec![0; 11];
            r[s..s + 6].copy_from_slice(&g);
            r
        })
        .collect();
    let code = LinearCode::from_generator(f, rows, RankMode::Strict)?;
    Ok(entry(
        "ternary-golay",
        ZooParams::default(),
        code,
        Expected {
            n: 11,
            k: 6,
            d: 5,
            weights: Some(vec![5, 6, 8, 9, 11]),
            enumerator: Some(vec![(5, 132), (6, 132), (8, 330), (9, 110), (11, 24)]),
        },
    ))
}

/// `[11,5,6]_3`, the dual of the ternary Golay code.
pub fn rt6() -> Result<ZooEntry> {
    let g = ternary_golay()?;
    Ok(entry(
        "rt6",
        ZooParams::default(),
        g.code.dual(),
        Expected {
            n: 11,
            k: 5,
            d: 6,
            weights: Some(vec![6, 9]),
            enumerator: Some(vec![(6, 132), (9, 110)]),
        },
    ))
}

/// Quadratic character of F_p as an element of F_3 (`-1 -> 2`).
fn chi(x: i64, p: i64) -> Elem {
    let x = x.rem_euclid(p);
    if x == 0 {
        return 0;
    }
    if (1..p).any(|y| y * y % p == x) {
        1
    } else {
        2
    }
}

/// Ternary `[2p+2, p+1]` code `[I | S]` with `S` the Paley conference
/// matrix of order `p+1`: `S = [[0, 1ᵀ], [χ(-1)·1, Q]]`, `Q_ij = χ(j - i)`.
/// `n = 12` uses `p = 5`, `n = 24` uses `p = 11`.
pub fn pless_symmetry(n: usize) -> Result<ZooEntry> {
    let p: i64 = match n {
        12 => 5,
        24 => 11,
        _ => return Err(Error::param(format!("Pless symmetry codes are built for n = 12 or 24, not {n}"))),
    };
    let f = FieldSpec::shared(3)?;
    let s = p as usize + 1;
    let minus_one = chi(-1, p);
    let rows = (0..s)
        .map(|i| {
            let mut r = vec![0 as Elem; 2 * s];
            r[i] = 1;
            for j in 0..s {
                r[s + j] = match (i, j) {
                    (0, 0) => 0,
                    (0, _) => 1,
                    (_, 0) => minus_one,
                    _ => chi(j as i64 - i as i64, p),
                };
            }
            r
        })
        .collect();
    let code = LinearCode::from_generator(f, rows, RankMode::Strict)?;
    let (d, enumerator) = if n == 12 {
        (6, vec![(6, 264), (9, 440), (12, 24)])
    } else {
        (9, vec![(9, 4048), (12, 61824), (15, 242880), (18, 198352), (21, 24288), (24, 48)])
    };
    let params = ZooParams { n: Some(n), ..Default::default() };
    Ok(entry(
        "pless",
        params,
        code,
        Expected {
            n,
            k: n / 2,
            d,
            weights: Some(enumerator.iter().map(|e| e.0).collect()),
            enumerator: Some(enumerator),
        },
    ))
}

fn tf1_code(q: u32) -> Result<LinearCode> {
    if q <= 2 || q % 2 != 0 {
        return Err(Error::param(format!("hyperoval codes need even q > 2, got {q}")));
    }
    let f = FieldSpec::shared(q)?;
    let mut cols: Vec<Vec<Elem>> = f.elements().map(|t| vec![1, t, f.mul(t, t)]).collect();
    cols.push(vec![0, 1, 0]);
    cols.push(vec![0, 0, 1]);
    from_columns(f, 3, &cols)
}

/// `[q+2, 3, q]_q` from the regular hyperoval `{(1,t,t^2)} ∪ {(0,1,0),(0,0,1)}`.
pub fn tf1(q: u32) -> Result<ZooEntry> {
    let code = tf1_code(q)?;
    let q64 = q as u64;
    let params = ZooParams { q: Some(q), ..Default::default() };
    let n = q as usize + 2;
    Ok(entry(
        "tf1",
        params,
        code,
        Expected {
            n,
            k: 3,
            d: q as usize,
            weights: Some(vec![q as usize, n]),
            enumerator: Some(vec![
                (q as usize, (q64 + 2) * (q64 * q64 - 1) / 2),
                (n, q64 * (q64 - 1) * (q64 - 1) / 2),
            ]),
        },
    ))
}

pub fn tf1_dual(q: u32) -> Result<ZooEntry> {
    let code = tf1_code(q)?.dual();
    let n = q as usize + 2;
    let params = ZooParams { q: Some(q), ..Default::default() };
    Ok(entry("tf1-dual", params, code, Expected { n, k: n - 3, d: 4, weights: None, enumerator: None }))
}

fn tf3_code(q: u32) -> Result<LinearCode> {
    if q < 4 {
        return Err(Error::param(format!("ovoid codes need q >= 4, got {q}")));
    }
    let f = FieldSpec::shared(q)?;
    // x^2 + x + δ irreducible over F_q
    let delta = f
        .elements()
        .find(|&d| f.elements().all(|x| f.add(f.add(f.mul(x, x), x), d) != 0))
        .ok_or_else(|| Error::Invariant(format!("no irreducible x^2+x+δ over F_{q}")))?;
    // points of x0·x1 + x2^2 + x2·x3 + δ·x3^2 = 0
    let mut cols = Vec::with_capacity((q * q + 1) as usize);
    for s in f.elements() {
        for t in f.elements() {
            let form = f.add(f.add(f.mul(s, s), f.mul(s, t)), f.mul(delta, f.mul(t, t)));
            cols.push(vec![1, f.neg(form), s, t]);
        }
    }
    cols.push(vec![0, 1, 0, 0]);
    from_columns(f, 4, &cols)
}

/// `[q^2+1, 4, q^2-q]_q` from an elliptic quadric ovoid of PG(3, q).
pub fn tf3(q: u32) -> Result<ZooEntry> {
    let code = tf3_code(q)?;
    let q64 = q as u64;
    let n = (q * q + 1) as usize;
    let params = ZooParams { q: Some(q), ..Default::default() };
    Ok(entry(
        "tf3",
        params,
        code,
        Expected {
            n,
            k: 4,
            d: n - 1 - q as usize,
            weights: Some(vec![n - 1 - q as usize, n - 1]),
            enumerator: Some(vec![
                (n - 1 - q as usize, (q64 * q64 - q64) * (q64 * q64 + 1)),
                (n - 1, (q64 - 1) * (q64 * q64 + 1)),
            ]),
        },
    ))
}

pub fn tf3_dual(q: u32) -> Result<ZooEntry> {
    let code = tf3_code(q)?.dual();
    let n = (q * q + 1) as usize;
    let params = ZooParams { q: Some(q), ..Default::default() };
    Ok(entry("tf3-dual", params, code, Expected { n, k: n - 4, d: 4, weights: None, enumerator: None }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::Budget;
    use crate::profile::code_profile;

    fn golden(e: &ZooEntry) {
        let p = code_profile(&e.code, false, &Budget::default()).unwrap();
        let bad = e.golden_check(&p);
        assert!(bad.is_empty(), "{}: {bad:?}", e.id);
    }

    #[test]
    fn small_zoo_matches_expectations() {
        for e in [
            simplex(3, 3).unwrap(),
            simplex(2, 3).unwrap(),
            hamming(3, 3).unwrap(),
            reed_solomon(16, 4).unwrap(),
            drs(8, 3).unwrap(),
            drs(9, 4).unwrap(),
            ternary_golay().unwrap(),
            rt6().unwrap(),
            pless_symmetry(12).unwrap(),
            tf1(4).unwrap(),
            tf1(8).unwrap(),
            tf1_dual(4).unwrap(),
            tf3(4).unwrap(),
            tf3_dual(4).unwrap(),
        ] {
            golden(&e);
        }
    }

    #[test]
    fn pless_is_self_dual() {
        let p = pless_symmetry(12).unwrap().code;
        assert_eq!(p.dual(), p);
    }

    #[test]
    fn parameter_errors() {
        assert!(simplex(3, 1).is_err());
        assert!(tf1(9).is_err());
        assert!(tf3(3).is_err());
        assert!(pless_symmetry(18).is_err());
        assert!(reed_solomon(16, 16).is_err());
        assert!(drs(8, 10).is_err());
        assert!(matches!(simplex(2, 20), Err(Error::Capacity { .. })));
        assert!(build("nope", &ZooParams::default()).is_err());
    }

    #[test]
    fn transitivity_flags() {
        assert_eq!(drs(8, 3).unwrap().transitivity, Some(3));
        assert_eq!(ternary_golay().unwrap().transitivity, None);
    }

    #[test]
    fn drs_zero_polynomial_only_weight_zero() {
        let c = drs(8, 3).unwrap().code;
        let mut zeros = 0;
        c.enumerate(None, &Budget::default(), |_, w| zeros += (w == 0) as u32).unwrap();
        assert_eq!(zeros, 1);
    }
}

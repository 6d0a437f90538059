//! Criteria predicting designs from code parameters, and confirmation of
//! their predictions by direct counting.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::code::LinearCode;
use crate::design::{
    binom_big, classical_design_lambda, qary_design_lambda, ser_rational, support_multiplicity, BlockFamily,
    StrengthCheck, SupportMode,
};
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::profile::CodeProfile;
use crate::weights::WeightProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeRole {
    Code,
    Dual,
    Punctured,
    Shortened,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignKind {
    Qary,
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictionStatus {
    Predicted,
    /// The index at this t is not an integer, so no such design exists.
    Impossible,
}

/// One predicted t-(n, w, λ) design.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub role: CodeRole,
    pub kind: DesignKind,
    pub t: usize,
    pub n: usize,
    pub w: usize,
    #[serde(serialize_with = "ser_rational")]
    pub lambda: BigRational,
    pub status: PredictionStatus,
}

impl Prediction {
    fn new(role: CodeRole, kind: DesignKind, t: usize, n: usize, w: usize, lambda: BigRational) -> Self {
        let status = if lambda.is_integer() && t <= w {
            PredictionStatus::Predicted
        } else {
            PredictionStatus::Impossible
        };
        Prediction { role, kind, t, n, w, lambda, status }
    }

    pub fn lambda_u64(&self) -> Option<u64> {
        if self.lambda.is_integer() {
            self.lambda.numer().to_u64()
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: &'static str,
    pub applies: bool,
    pub t: Option<usize>,
    /// Why the criterion does not apply.
    pub reason: Option<String>,
    pub coordinate: Option<usize>,
    pub predictions: Vec<Prediction>,
    pub provisos: Vec<String>,
}

impl CriterionReport {
    fn not_applicable(criterion: &'static str, reason: String) -> Self {
        CriterionReport {
            criterion,
            applies: false,
            t: None,
            reason: Some(reason),
            coordinate: None,
            predictions: Vec::new(),
            provisos: Vec::new(),
        }
    }
}

fn big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// `A_w·C(w,t) / ((q-1)^t·C(n,t))`.
fn qary_index(a: &WeightProfile, q: u32, n: usize, w: usize, t: usize) -> BigRational {
    let num = big(a.get(w)) * BigInt::from(binom_big(w, t));
    let den = BigInt::from(BigUint::from(q - 1).pow(t as u32) * binom_big(n, t));
    BigRational::new(num, den)
}

/// Distinct supports `A_w/(q-1)` times `C(w,t)/C(n,t)`; valid for `w <= h`.
fn classical_index(a: &WeightProfile, q: u32, n: usize, w: usize, t: usize) -> BigRational {
    let num = big(a.get(w)) * BigInt::from(binom_big(w, t));
    let den = BigInt::from(BigUint::from(q - 1) * binom_big(n, t));
    BigRational::new(num, den)
}

/// If `d > s⊥` or `d⊥ > s`, every nonempty `A_w(C)` and `A_w(C⊥)` holds a
/// q-ary t-design with `t = max{d - s⊥, d⊥ - s}`.
pub fn standard_criterion(p: &CodeProfile) -> CriterionReport {
    const NAME: &str = "standard";
    let t1 = p.d.map_or(0, |d| d as i64 - p.s_dual as i64);
    let t2 = p.d_dual.map_or(0, |d| d as i64 - p.s as i64);
    let t = t1.max(t2);
    if t < 1 {
        return CriterionReport::not_applicable(
            NAME,
            format!("d = {:?} <= s⊥ = {} and d⊥ = {:?} <= s = {}", p.d, p.s_dual, p.d_dual, p.s),
        );
    }
    let t = t as usize;
    let mut predictions = Vec::new();
    for (role, dist) in [(CodeRole::Code, &p.distribution), (CodeRole::Dual, &p.dual_distribution)] {
        for w in dist.weights() {
            predictions.push(Prediction::new(role, DesignKind::Qary, t, p.n, w, qary_index(dist, p.q, p.n, w, t)));
        }
    }
    CriterionReport {
        criterion: NAME,
        applies: true,
        t: Some(t),
        reason: None,
        coordinate: None,
        predictions,
        provisos: Vec::new(),
    }
}

/// Designs in the punctured code `C^{m}` and shortened code `C_{m}`,
/// for `s⊥ < d` and `n ∈ W(C⊥)`.
pub fn puncturing_shortening_predict(p: &CodeProfile, m: usize) -> CriterionReport {
    const NAME: &str = "puncturing-shortening";
    if m >= p.n {
        return CriterionReport::not_applicable(NAME, format!("coordinate {m} outside [0, {})", p.n));
    }
    let Some(d) = p.d else {
        return CriterionReport::not_applicable(NAME, "zero code".into());
    };
    if p.s_dual >= d {
        return CriterionReport::not_applicable(NAME, format!("s⊥ = {} is not below d = {d}", p.s_dual));
    }
    if !p.dual_weights.contains(&p.n) {
        return CriterionReport::not_applicable(NAME, format!("n = {} is not a weight of the dual", p.n));
    }
    let t = d - p.s_dual;
    let n = p.n;
    let mut predictions = Vec::new();
    let mut provisos = vec!["holds for every coordinate m".to_string()];
    for &w in p.weights.iter().filter(|&&w| !p.weights.contains(&(w - 1))) {
        let lambda = qary_index(&p.distribution, p.q, n, w, t);
        let nt = BigRational::from_integer(BigInt::from(n - t));
        let mu = &lambda * BigRational::from_integer(BigInt::from(w - t)) / &nt;
        predictions.push(Prediction::new(CodeRole::Punctured, DesignKind::Qary, t, n - 1, w - 1, mu));
        if w < n {
            let nu = &lambda * BigRational::from_integer(BigInt::from(n - w)) / &nt;
            predictions.push(Prediction::new(CodeRole::Shortened, DesignKind::Qary, t, n - 1, w, nu));
        } else {
            provisos.push(format!("weight {w} = n has no shortened counterpart"));
        }
    }
    CriterionReport {
        criterion: NAME,
        applies: true,
        t: Some(t),
        reason: None,
        coordinate: Some(m),
        predictions,
        provisos,
    }
}

/// Largest `t < d` with `#{i ∈ [1, n-t] : B_i ≠ 0} <= d - t`, found by a
/// descending scan.
fn am_strength(n: usize, d: usize, other: &WeightProfile) -> Option<usize> {
    (1..d).rev().find(|&t| {
        let m = (1..=n - t).filter(|&i| !other.get(i).is_zero()).count();
        m <= d - t
    })
}

/// Classical designs by the Assmus–Mattson theorem, applied with both
/// `C` and `C⊥` in the role of the base code.
pub fn assmus_mattson(p: &CodeProfile) -> CriterionReport {
    const NAME: &str = "assmus-mattson";
    let mut predictions: Vec<Prediction> = Vec::new();
    let mut best = None;
    let mut provisos = Vec::new();
    let orientations = [
        (CodeRole::Code, p.d, p.h, &p.distribution, CodeRole::Dual, p.d_dual, p.h_dual, &p.dual_distribution),
        (CodeRole::Dual, p.d_dual, p.h_dual, &p.dual_distribution, CodeRole::Code, p.d, p.h, &p.distribution),
    ];
    for (xr, xd, xh, xa, yr, yd, yh, ya) in orientations {
        let (Some(xd), Some(xh)) = (xd, xh) else { continue };
        let Some(t) = am_strength(p.n, xd, ya) else { continue };
        provisos.push(format!("{xr:?} as base code gives t = {t}").to_lowercase());
        best = best.max(Some(t));
        let mut add = |role, w: usize, dist: &WeightProfile| {
            let pred = Prediction::new(role, DesignKind::Classical, t, p.n, w, classical_index(dist, p.q, p.n, w, t));
            match predictions.iter_mut().find(|x| x.role == role && x.w == w) {
                Some(old) if old.t < t => *old = pred,
                Some(_) => {}
                None => predictions.push(pred),
            }
        };
        for w in xa.weights().into_iter().filter(|&w| w >= xd && w <= xh) {
            add(xr, w, xa);
        }
        if let (Some(yd), Some(yh)) = (yd, yh) {
            for w in ya.weights().into_iter().filter(|&w| w >= yd && w <= (p.n - t).min(yh)) {
                add(yr, w, ya);
            }
        }
    }
    match best {
        None => CriterionReport::not_applicable(NAME, "no t >= 1 satisfies the weight-count condition".into()),
        Some(t) => {
            predictions.sort_by_key(|x| (x.role == CodeRole::Dual, x.w));
            CriterionReport {
                criterion: NAME,
                applies: true,
                t: Some(t),
                reason: None,
                coordinate: None,
                predictions,
                provisos,
            }
        }
    }
}

/// MDS test and the 1-design it forces at the minimum weight.
#[derive(Clone, Debug, Serialize)]
pub struct MdsReport {
    pub is_mds: bool,
    pub count_matches: Option<bool>,
    pub design: Option<StrengthCheck>,
    pub expected_lambda: Option<String>,
}

impl MdsReport {
    pub fn consistent(&self) -> bool {
        !self.is_mds
            || (self.count_matches == Some(true)
                && self.design.as_ref().is_some_and(|d| {
                    d.holds() && Some(d.lambda.unwrap().to_string()) == self.expected_lambda
                }))
    }
}

pub fn mds_test(code: &LinearCode, p: &CodeProfile, budget: &Budget) -> Result<MdsReport> {
    if !p.is_mds {
        return Ok(MdsReport { is_mds: false, count_matches: None, design: None, expected_lambda: None });
    }
    let d = p.d.unwrap();
    let fam = BlockFamily::from_code(code, d, budget)?;
    let expected_count = BigUint::from(p.q - 1) * binom_big(p.n, d);
    let design = qary_design_lambda(&fam, 1)?;
    Ok(MdsReport {
        is_mds: true,
        count_matches: Some(BigUint::from(fam.len()) == expected_count),
        design: Some(design),
        expected_lambda: Some(binom_big(p.n - 1, d - 1).to_string()),
    })
}

/// Perfect-code test and the (e+1)-designs it forces at every weight.
#[derive(Clone, Debug, Serialize)]
pub struct PerfectReport {
    pub is_perfect: bool,
    pub e: Option<usize>,
    pub rho: Option<usize>,
    pub min_weight_lambda_one: Option<bool>,
    pub weights: Vec<(usize, StrengthCheck)>,
}

impl PerfectReport {
    pub fn consistent(&self) -> bool {
        !self.is_perfect || (self.min_weight_lambda_one == Some(true) && self.weights.iter().all(|(_, c)| c.holds()))
    }
}

pub fn perfect_test(code: &LinearCode, p: &CodeProfile, budget: &Budget) -> Result<PerfectReport> {
    if let (Some(e), Some(rho)) = (p.e, p.rho) {
        if (e == rho) != p.is_perfect {
            return Err(Error::Invariant(format!(
                "sphere-packing equality says perfect = {} but e = {e}, rho = {rho}",
                p.is_perfect
            )));
        }
    }
    let mut out = PerfectReport { is_perfect: p.is_perfect, e: p.e, rho: p.rho, min_weight_lambda_one: None, weights: Vec::new() };
    if !p.is_perfect {
        return Ok(out);
    }
    let t = p.e.unwrap() + 1;
    for &w in &p.weights {
        let fam = BlockFamily::from_code(code, w, budget)?;
        let chk = qary_design_lambda(&fam, t)?;
        if Some(w) == p.d {
            out.min_weight_lambda_one = Some(chk.lambda == Some(1));
        }
        out.weights.push((w, chk));
    }
    Ok(out)
}

/// The counting result behind one prediction.
#[derive(Clone, Debug, Serialize)]
pub struct Confirmation {
    pub prediction: Prediction,
    pub check: StrengthCheck,
    pub confirmed: bool,
}

/// The family a prediction is about.
pub fn prediction_family(
    code: &LinearCode,
    pred: &Prediction,
    coordinate: Option<usize>,
    budget: &Budget,
) -> Result<BlockFamily> {
    let target = match pred.role {
        CodeRole::Code => code.clone(),
        CodeRole::Dual => code.dual(),
        CodeRole::Punctured => code.puncture(coordinate.ok_or_else(|| Error::param("punctured prediction without coordinate"))?)?,
        CodeRole::Shortened => code.shorten(coordinate.ok_or_else(|| Error::param("shortened prediction without coordinate"))?)?,
    };
    BlockFamily::from_code(&target, pred.w, budget)
}

/// Checks every prediction of `report` by counting.
pub fn confirm(code: &LinearCode, report: &CriterionReport, budget: &Budget) -> Result<Vec<Confirmation>> {
    let mut out = Vec::new();
    for pred in &report.predictions {
        let fam = prediction_family(code, pred, report.coordinate, budget)?;
        let check = match pred.kind {
            DesignKind::Qary => qary_design_lambda(&fam, pred.t)?,
            DesignKind::Classical => {
                // the index above assumes q-1 codewords per support
                if !support_multiplicity(&fam).holds {
                    return Err(Error::Invariant(format!("supports at weight {} repeat irregularly", pred.w)));
                }
                classical_design_lambda(&fam, pred.t, SupportMode::Distinct)?
            }
        };
        let confirmed = match pred.status {
            PredictionStatus::Predicted => check.holds() && check.lambda == pred.lambda_u64(),
            PredictionStatus::Impossible => !check.holds(),
        };
        out.push(Confirmation { prediction: pred.clone(), check, confirmed });
    }
    Ok(out)
}

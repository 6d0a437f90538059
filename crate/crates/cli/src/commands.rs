use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;

use qdesign::criteria::{
    assmus_mattson, confirm, mds_test, perfect_test, puncturing_shortening_predict, standard_criterion, Confirmation,
    CriterionReport,
};
use qdesign::design::{
    classical_design_lambda, fixed_coordinate_lambda, qary_design_lambda, strengths, support_multiplicity,
    BlockFamily, StrengthCheck, SupportMode,
};
use qdesign::profile::{code_profile, CodeProfile};
use qdesign::{zoo, Budget, LinearCode};

use crate::output::{Report, Table};
use crate::source::{load, zoo_params};
use crate::{CriteriaArgs, DesignArgs, KindArg, ModeArg, ProfileArgs, ZooParamArgs};

pub fn zoo_list() -> Result<Report> {
    let list = zoo::list();
    let mut t = Table::new(&["id", "params", "description"]);
    for z in &list {
        t.push(vec![z.id.into(), z.params.into(), z.description.into()]);
    }
    Report::new("zoo list", list, t, true)
}

pub fn zoo_build(id: &str, p: &ZooParamArgs) -> Result<Report> {
    let e = zoo::build(id, &zoo_params(p))?;
    let c = &e.code;
    let mut t = Table::new(&(0..c.n()).map(|i| format!("c{i}")).collect::<Vec<_>>().iter().map(String::as_str).collect::<Vec<_>>());
    for r in c.generator() {
        t.push(r.iter().map(|x| x.to_string()).collect());
    }
    let body = json!({
        "entry": e,
        "q": c.q(),
        "n": c.n(),
        "k": c.k(),
        "generator": c.generator(),
    });
    Report::new("zoo build", body, t, true)
}

/// Exact covering radius only where the syndrome search stays small.
pub fn cheap_rho(c: &LinearCode) -> bool {
    (c.n() - c.k()) as f64 * (c.q() as f64).log2() <= 24.0
}

fn label(c: &LinearCode) -> String {
    c.label().map_or_else(|| format!("[{},{}]_{}", c.n(), c.k(), c.q()), str::to_string)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

pub fn profile(a: &ProfileArgs) -> Result<Report> {
    let (code, entry) = load(&a.source)?;
    let p = code_profile(&code, a.rho, &Budget::from_env())?;
    let mismatches = entry.as_ref().map(|e| e.golden_check(&p));
    let mut t = Table::new(&["field", "value"]);
    let scalar: [(&str, String); 16] = [
        ("q", p.q.to_string()),
        ("n", p.n.to_string()),
        ("k", p.k.to_string()),
        ("d", opt(p.d)),
        ("d_dual", opt(p.d_dual)),
        ("s", p.s.to_string()),
        ("s_dual", p.s_dual.to_string()),
        ("e", opt(p.e)),
        ("rho", opt(p.rho)),
        ("rho_sphere", p.rho_sphere.to_string()),
        ("divisor", p.divisor.to_string()),
        ("h", opt(p.h)),
        ("h_dual", opt(p.h_dual)),
        ("is_mds", p.is_mds.to_string()),
        ("is_perfect", p.is_perfect.to_string()),
        ("rho_divergent", p.rho_divergent.to_string()),
    ];
    for (k, v) in scalar {
        t.push(vec![k.into(), v]);
    }
    for (w, a) in p.distribution.nonzero() {
        t.push(vec![format!("A_{w}"), a.to_string()]);
    }
    for (w, b) in p.dual_distribution.nonzero() {
        t.push(vec![format!("B_{w}"), b.to_string()]);
    }
    let passed = mismatches.as_ref().map_or(true, Vec::is_empty);
    let body = json!({ "code": label(&code), "profile": p, "golden_mismatches": mismatches });
    Report::new("profile", body, t, passed)
}

#[derive(Serialize)]
struct DesignBody {
    source: String,
    q: u32,
    n: usize,
    w: usize,
    blocks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    support_multiplicity: Option<qdesign::design::SupportMultiplicity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_coordinates: Option<FixedBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qary: Option<StrengthCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classical: Option<StrengthCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strengths: Option<qdesign::design::DesignReport>,
}

#[derive(Serialize)]
struct FixedBody {
    coordinates: Vec<usize>,
    transitivity: Option<usize>,
    transitivity_source: Option<String>,
    check: StrengthCheck,
}

fn check_row(kind: &str, c: &StrengthCheck) -> Vec<String> {
    vec![
        kind.into(),
        c.t.to_string(),
        format!("{:?}", c.status),
        opt(c.lambda),
        qdesign::design::rational_string(&c.expected_lambda),
        c.witness.as_ref().map_or_else(String::new, |w| format!("{:?}", w.subset)),
    ]
}

pub fn design(a: &DesignArgs) -> Result<Report> {
    let budget = Budget::from_env();
    let (fam, entry) = match &a.blocks {
        Some(path) => (qdesign::io::read_blocks_file(path)?, None),
        None => {
            let (code, entry) = load(&a.source)?;
            let Some(w) = a.weight else { bail!("--weight is required with a code source") };
            (BlockFamily::from_code(&code, w, &budget)?, entry)
        }
    };
    let mode = match a.mode {
        ModeArg::Distinct => SupportMode::Distinct,
        ModeArg::Multiset => SupportMode::Multiset,
    };
    let mut body = DesignBody {
        source: fam.source().to_string(),
        q: fam.q(),
        n: fam.n(),
        w: fam.w(),
        blocks: fam.len(),
        support_multiplicity: None,
        fixed_coordinates: None,
        qary: None,
        classical: None,
        strengths: None,
    };
    let mut t = Table::new(&["kind", "t", "status", "lambda", "expected_lambda", "witness"]);
    let passed;
    if a.fixed_coords {
        let tt = a.t.unwrap();
        let coords = a.coords.clone().unwrap_or_else(|| (0..tt).collect());
        if coords.len() != tt {
            bail!("--coords lists {} coordinates but --t is {tt}", coords.len());
        }
        let (transitivity, transitivity_source) = match (a.assert_transitive, &entry) {
            (Some(x), _) => (Some(x), Some("asserted on the command line".to_string())),
            (None, Some(e)) => (e.transitivity, e.transitivity_source.clone()),
            (None, None) => (None, None),
        };
        let check = fixed_coordinate_lambda(&fam, &coords, transitivity)?;
        t.push(check_row("fixed-coordinates", &check));
        passed = check.holds();
        body.fixed_coordinates = Some(FixedBody { coordinates: coords, transitivity, transitivity_source, check });
    } else if let Some(tt) = a.t {
        let q = qary_design_lambda(&fam, tt)?;
        let c = classical_design_lambda(&fam, tt, mode)?;
        t.push(check_row("qary", &q));
        t.push(check_row("classical", &c));
        passed = match a.kind {
            KindArg::Qary => q.holds(),
            KindArg::Classical => c.holds(),
            KindArg::Both => q.holds() && c.holds(),
        };
        body.qary = Some(q);
        body.classical = Some(c);
    } else if a.max_strength {
        let r = strengths(&fam, mode)?;
        for c in &r.qary {
            t.push(check_row("qary", c));
        }
        for c in &r.classical {
            t.push(check_row("classical", c));
        }
        body.strengths = Some(r);
        passed = true;
    } else {
        bail!("give --t, --max-strength or --t with --fixed-coords");
    }
    if !fam.is_empty() && a.blocks.is_none() {
        body.support_multiplicity = Some(support_multiplicity(&fam));
    }
    Report::new("design", body, t, passed)
}

#[derive(Serialize)]
struct CriteriaBody {
    code: String,
    standard: CriterionReport,
    puncturing_shortening: CriterionReport,
    assmus_mattson: CriterionReport,
    mds: qdesign::criteria::MdsReport,
    perfect: qdesign::criteria::PerfectReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    confirmations: Option<Vec<ConfirmBody>>,
}

#[derive(Serialize)]
struct ConfirmBody {
    criterion: &'static str,
    results: Vec<Confirmation>,
}

pub fn criteria(a: &CriteriaArgs) -> Result<Report> {
    let budget = Budget::from_env();
    let (code, _) = load(&a.source)?;
    let p: CodeProfile = code_profile(&code, cheap_rho(&code), &budget)?;
    let reports = [
        standard_criterion(&p),
        puncturing_shortening_predict(&p, a.coordinate),
        assmus_mattson(&p),
    ];
    let mds = mds_test(&code, &p, &budget)?;
    let perfect = perfect_test(&code, &p, &budget)?;
    let mut passed = mds.consistent() && perfect.consistent();
    let mut t = Table::new(&["criterion", "role", "kind", "t", "n", "w", "lambda", "status", "confirmed"]);
    let mut confirmations = None;
    if a.confirm {
        let mut all = Vec::new();
        for r in &reports {
            let results = confirm(&code, r, &budget)?;
            passed &= results.iter().all(|c| c.confirmed);
            all.push(ConfirmBody { criterion: r.criterion, results });
        }
        confirmations = Some(all);
    }
    for (i, r) in reports.iter().enumerate() {
        for (j, pr) in r.predictions.iter().enumerate() {
            let confirmed = confirmations
                .as_ref()
                .map_or_else(String::new, |c: &Vec<ConfirmBody>| c[i].results[j].confirmed.to_string());
            t.push(vec![
                r.criterion.into(),
                format!("{:?}", pr.role).to_lowercase(),
                format!("{:?}", pr.kind).to_lowercase(),
                pr.t.to_string(),
                pr.n.to_string(),
                pr.w.to_string(),
                qdesign::design::rational_string(&pr.lambda),
                format!("{:?}", pr.status).to_lowercase(),
                confirmed,
            ]);
        }
    }
    let [standard, puncturing_shortening, assmus_mattson] = reports;
    let body = CriteriaBody {
        code: label(&code),
        standard,
        puncturing_shortening,
        assmus_mattson,
        mds,
        perfect,
        confirmations,
    };
    Report::new("criteria", body, t, passed)
}

//! Deterministic verification suites and their JSON/TSV reports.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::affine::{antidominant_coroots, factorization_consistency, AffineLabel};
use crate::pfsolve::{self, bijectivity_sweep, sample_qs, PfConfig, PfSolution, SweepReport};
use crate::qchev::{appendix_products, recover_structure_constants, ChevalleyRule};
use crate::rat::{self, Rat};
use crate::repwt::{lemma_check_with_budget, LemmaCase};
use crate::rootsys::{ParabolicData, RootSystem, TypeLetter};
use crate::totpos::{self, embed, wiring};
use crate::weyl::WeylGroup;
use crate::{Error, Result};

/// Types of the Chevalley, recovery, duality and dictionary suites.
pub const CHEVALLEY_TYPES: [&str; 8] = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];
/// Types of the Perron-Frobenius sweep.
pub const PF_TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "C2", "G2"];
/// Every type the root-system suite covers.
pub const ROOT_TYPES: [&str; 25] = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "C2", "C3", "C4", "C5", "C6", "D4",
    "D5", "D6", "E6", "E7", "F4", "G2",
];

pub const SUITES: [&str; 12] = [
    "roots",
    "commute",
    "qpd",
    "appendixC",
    "pf",
    "pf-sweep",
    "chambers",
    "tnn",
    "toeplitz",
    "weightlemmas",
    "dictionary",
    "all",
];

pub const DEFAULT_SEED: u64 = 20240531;

/// Float serialized with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F17(pub f64);

impl Serialize for F17 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

pub fn f17s(v: &[f64]) -> Vec<F17> {
    v.iter().copied().map(F17).collect()
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub tol: f64,
    /// Module-dimension budget for weight computations.
    pub budget: u64,
    /// Overrides the per-suite sample count.
    pub samples: Option<usize>,
    /// Overrides the per-suite type list, e.g. `["A2", "C3"]`.
    pub types: Option<Vec<String>>,
    /// Overrides the rank range of `appendixC` and `chambers`.
    pub n: Option<Vec<usize>>,
    /// Quantum parameters of the `pf` suite.
    pub q: Option<Vec<Rat>>,
    /// Includes the E7 weight lemma.
    pub experimental: bool,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            tol: 1e-9,
            budget: crate::repwt::DIMENSION_BUDGET,
            samples: None,
            types: None,
            n: None,
            q: None,
            experimental: false,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn pf_config(&self) -> PfConfig {
        PfConfig { tol: self.tol, ..PfConfig::default() }
    }

    fn types_or(&self, default: &[&str]) -> Vec<String> {
        self.types.clone().unwrap_or_else(|| default.iter().map(|s| s.to_string()).collect())
    }

    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn n_or(&self, default: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        self.n.clone().unwrap_or_else(|| default.collect())
    }

    /// Per-case seed, stable across runs.
    pub fn seed_for(&self, tag: &str) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in tag.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        self.seed ^ h
    }
}

#[derive(Debug, Serialize)]
pub struct CaseRecord {
    pub name: String,
    pub passed: bool,
    pub data: Box<RawValue>,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub case: String,
    pub inputs: Box<RawValue>,
    pub diagnostic: String,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: &'static str,
    pub seed: u64,
    pub tol: F17,
    pub cases_run: usize,
    pub cases: Vec<CaseRecord>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<F17>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("suite\tcase\tstatus\tdiagnostic\n");
        for c in &self.cases {
            let diag = self
                .failures
                .iter()
                .find(|f| f.case == c.name)
                .map(|f| f.diagnostic.replace(['\t', '\n'], " "))
                .unwrap_or_default();
            let _ = writeln!(out, "{}\t{}\t{}\t{}", self.suite, c.name, if c.passed { "pass" } else { "FAIL" }, diag);
        }
        out
    }
}

/// Outcome of one case before assembly.
pub struct Case {
    pub name: String,
    pub passed: bool,
    pub inputs: Box<RawValue>,
    pub data: Box<RawValue>,
    pub diagnostic: String,
}

pub fn raw<T: Serialize + ?Sized>(value: &T) -> Box<RawValue> {
    serde_json::value::to_raw_value(value).expect("serializable")
}

fn null() -> Box<RawValue> {
    RawValue::from_string("null".into()).unwrap()
}

/// Runs a case body; errors other than budget overruns become failed cases.
fn case<I: Serialize>(
    name: impl Into<String>,
    inputs: &I,
    body: impl FnOnce() -> Result<(bool, Box<RawValue>, String)>,
) -> Result<Case> {
    let name = name.into();
    let inputs = raw(inputs);
    match body() {
        Ok((passed, data, diagnostic)) => Ok(Case { name, passed, inputs, data, diagnostic }),
        Err(e @ Error::Budget(_)) => Err(e),
        Err(e) => Ok(Case { name, passed: false, inputs, data: null(), diagnostic: e.to_string() }),
    }
}

fn assemble(suite: &str, cfg: &SuiteConfig, cases: Vec<Case>, started: Instant) -> SuiteReport {
    let mut records = Vec::with_capacity(cases.len());
    let mut failures = Vec::new();
    for c in cases {
        if !c.passed {
            let diagnostic = if c.diagnostic.is_empty() { "check failed".to_string() } else { c.diagnostic.clone() };
            failures.push(Failure { case: c.name.clone(), inputs: c.inputs, diagnostic });
        }
        records.push(CaseRecord { name: c.name, passed: c.passed, data: c.data });
    }
    SuiteReport {
        suite: suite.to_string(),
        version: env!("CARGO_PKG_VERSION"),
        seed: cfg.seed,
        tol: F17(cfg.tol),
        cases_run: records.len(),
        cases: records,
        failures,
        wall_time: cfg.timing.then(|| F17(started.elapsed().as_secs_f64())),
    }
}

fn group(name: &str) -> Result<Arc<WeylGroup>> {
    Ok(Arc::new(WeylGroup::new(Arc::new(RootSystem::from_name(name)?))))
}

fn collect<T: Send>(items: Vec<Result<T>>) -> Result<Vec<T>> {
    items.into_iter().collect()
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let cases = if name == "all" {
        let mut all = Vec::new();
        for s in SUITES.iter().filter(|s| **s != "all") {
            for mut c in run_cases(s, cfg)? {
                c.name = format!("{s}/{}", c.name);
                all.push(c);
            }
        }
        all
    } else {
        run_cases(name, cfg)?
    };
    Ok(assemble(name, cfg, cases, started))
}

fn run_cases(name: &str, cfg: &SuiteConfig) -> Result<Vec<Case>> {
    match name {
        "roots" => roots_cases(cfg),
        "commute" => {
            let mut c = commute_cases(cfg)?;
            c.extend(recovery_cases(cfg)?);
            Ok(c)
        }
        "qpd" => qpd_cases(cfg),
        "appendixC" => appendix_cases(cfg),
        "pf" => pf_cases(cfg),
        "pf-sweep" => pf_sweep_cases(cfg),
        "chambers" => chamber_cases(cfg),
        "tnn" => tnn_cases(cfg),
        "toeplitz" => toeplitz_cases(cfg),
        "weightlemmas" => weight_cases(cfg),
        "dictionary" => dictionary_cases(cfg),
        other => Err(Error::Parse(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    }
}

// ---------------------------------------------------------------- roots

fn expected_counts(t: TypeLetter, n: usize) -> (usize, i64) {
    match t {
        TypeLetter::A => (n * (n + 1) / 2, n as i64 + 1),
        TypeLetter::B | TypeLetter::C => (n * n, 2),
        TypeLetter::D => (n * (n - 1), 4),
        TypeLetter::E => ([0, 0, 0, 0, 0, 0, 36, 63, 120][n], [0, 0, 0, 0, 0, 0, 3, 2, 1][n]),
        TypeLetter::F => (24, 1),
        TypeLetter::G => (6, 1),
    }
}

#[derive(Serialize)]
struct RootsData {
    num_positive_roots: usize,
    cartan_det: String,
    theta: Vec<i64>,
    parabolics_checked: usize,
}

fn roots_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let names = cfg.types_or(&ROOT_TYPES);
    let cases: Vec<Result<Case>> = names
        .par_iter()
        .map(|name| {
            case(name.clone(), &serde_json::json!({ "type": name }), || {
                let rs = Arc::new(RootSystem::from_name(name)?);
                let (count, det) = expected_counts(rs.type_letter(), rs.rank());
                let cartan = crate::ExactMatrix::from_i64(rs.cartan());
                let d = cartan.det()?;
                let mut problems = Vec::new();
                if rs.num_positive_roots() != count {
                    problems.push(format!("{} positive roots, expected {count}", rs.num_positive_roots()));
                }
                if d != rat::int(det) {
                    problems.push(format!("det = {}, expected {det}", rat::format(&d)));
                }
                // theta dominates every positive root
                if !rs.positive_roots().iter().all(|r| rs.theta().iter().zip(r).all(|(a, b)| a >= b)) {
                    problems.push("theta is not the highest root".into());
                }
                let rho_sum: Vec<i64> = (0..rs.rank())
                    .map(|i| rs.positive_roots().iter().map(|r| rs.root_in_weight_coords(r)[i]).sum())
                    .collect();
                if rho_sum != vec![2; rs.rank()] {
                    problems.push(format!("sum of positive roots is {rho_sum:?}, not 2 rho"));
                }
                let mut parabolics = 0;
                if rs.rank() <= 4 {
                    for p in ParabolicData::all(&rs) {
                        parabolics += 1;
                        if p.delta_p_plus().len() + p.delta_plus_p().len() != rs.num_positive_roots() {
                            problems.push(format!("partition fails for {}", p.label()));
                        }
                        let two_rho: Vec<i64> = (0..rs.rank())
                            .map(|i| p.delta_p_plus().iter().map(|&k| rs.positive_roots()[k][i]).sum())
                            .collect();
                        if two_rho != p.two_rho_p() {
                            problems.push(format!("2 rho_P mismatch for {}", p.label()));
                        }
                    }
                }
                let data = RootsData {
                    num_positive_roots: rs.num_positive_roots(),
                    cartan_det: rat::format(&d),
                    theta: rs.theta().to_vec(),
                    parabolics_checked: parabolics,
                };
                Ok((problems.is_empty(), raw(&data), problems.join("; ")))
            })
        })
        .collect();
    collect(cases)
}

// ---------------------------------------------------------------- chevalley

pub const COMMUTE_SAMPLES: usize = 20;
pub const RECOVERY_SAMPLES: usize = 3;

#[derive(Serialize)]
struct CommuteData {
    dim: usize,
    samples: usize,
    failing_q: Vec<Vec<String>>,
}

fn fmt_q(q: &[Rat]) -> Vec<String> {
    q.iter().map(rat::format).collect()
}

fn commute_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut jobs = Vec::new();
    for name in cfg.types_or(&CHEVALLEY_TYPES) {
        let wg = group(&name)?;
        for p in ParabolicData::all(wg.root_system()) {
            jobs.push((name.clone(), wg.clone(), p));
        }
    }
    let samples = cfg.samples_or(COMMUTE_SAMPLES);
    let cases: Vec<Result<Case>> = jobs
        .into_par_iter()
        .map(|(name, wg, p)| {
            let label = format!("commute/{name}/P={}", p.label());
            let seed = cfg.seed_for(&label);
            case(label, &serde_json::json!({ "type": name, "parabolic": p.label(), "seed": seed, "samples": samples }), || {
                let rule = ChevalleyRule::new(wg, p);
                let k = rule.parabolic().i_up().len();
                let mut failing = Vec::new();
                for q in sample_qs(seed, samples, k) {
                    if !rule.operators_commute(&q)? {
                        failing.push(fmt_q(&q));
                    }
                }
                let ok = failing.is_empty();
                let diag = if ok { String::new() } else { format!("{} of {samples} samples fail to commute", failing.len()) };
                Ok((ok, raw(&CommuteData { dim: rule.dim(), samples, failing_q: failing }), diag))
            })
        })
        .collect();
    collect(cases)
}

#[derive(Serialize)]
struct RecoveryData {
    q: Vec<String>,
    dim: usize,
    residual_nonzero: usize,
    redundant_equations: usize,
    commute: bool,
    nonnegative: bool,
    identity_is_unit: bool,
}

fn recovery_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut jobs = Vec::new();
    for name in cfg.types_or(&CHEVALLEY_TYPES) {
        let wg = group(&name)?;
        let k = wg.rank();
        let seed = cfg.seed_for(&format!("recover/{name}"));
        let mut qs = vec![vec![Rat::one(); k]];
        qs.extend(sample_qs(seed, RECOVERY_SAMPLES - 1, k));
        for (j, q) in qs.into_iter().enumerate() {
            jobs.push((name.clone(), wg.clone(), j, q));
        }
    }
    let cases: Vec<Result<Case>> = jobs
        .into_par_iter()
        .map(|(name, wg, j, q)| {
            case(format!("recover/{name}/{j}"), &serde_json::json!({ "type": name, "q": fmt_q(&q) }), || {
                let rule = ChevalleyRule::borel(wg);
                let alg = recover_structure_constants(&rule, &q)?;
                let d = RecoveryData {
                    q: fmt_q(&q),
                    dim: alg.dim(),
                    residual_nonzero: alg.residual_nonzero,
                    redundant_equations: alg.redundant_equations,
                    commute: alg.all_commute(),
                    nonnegative: alg.all_nonnegative(),
                    identity_is_unit: alg.identity_is_unit(),
                };
                let ok = d.residual_nonzero == 0 && d.commute && d.nonnegative && d.identity_is_unit;
                Ok((ok, raw(&d), if ok { String::new() } else { "recovered algebra fails a check".into() }))
            })
        })
        .collect();
    collect(cases)
}

#[derive(Serialize)]
struct DualityData {
    checked: usize,
    by_degree: std::collections::BTreeMap<i64, usize>,
    failures: Vec<String>,
}

fn qpd_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut jobs = Vec::new();
    for name in cfg.types_or(&CHEVALLEY_TYPES) {
        let wg = group(&name)?;
        jobs.push((name.clone(), wg.clone(), None));
        for p in ParabolicData::all(wg.root_system()) {
            jobs.push((name.clone(), wg.clone(), Some(p)));
        }
    }
    let cases: Vec<Result<Case>> = jobs
        .into_par_iter()
        .map(|(name, wg, p)| match p {
            None => {
                let label = format!("qpd-table/{name}");
                let seed = cfg.seed_for(&label);
                let q = sample_qs(seed, 1, wg.rank()).remove(0);
                case(label, &serde_json::json!({ "type": name, "q": fmt_q(&q) }), || {
                    let alg = recover_structure_constants(&ChevalleyRule::borel(wg), &q)?;
                    let r = alg.duality_table();
                    let ok = r.passed() && r.checked == alg.dim() * alg.dim();
                    let diag = r.failures.first().cloned().unwrap_or_default();
                    Ok((ok, raw(&DualityData { checked: r.checked, by_degree: r.by_degree, failures: r.failures }), diag))
                })
            }
            Some(p) => {
                let label = format!("qpd-chevalley/{name}/P={}", p.label());
                case(label, &serde_json::json!({ "type": name, "parabolic": p.label() }), || {
                    let r = ChevalleyRule::new(wg, p).duality_instances();
                    let ok = r.passed();
                    let diag = r.failures.first().cloned().unwrap_or_default();
                    Ok((ok, raw(&DualityData { checked: r.checked, by_degree: r.by_degree, failures: r.failures }), diag))
                })
            }
        })
        .collect();
    collect(cases)
}

fn appendix_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for n in cfg.n_or(2..=4) {
        let wg = Arc::new(WeylGroup::new(Arc::new(RootSystem::new(TypeLetter::C, n)?)));
        match appendix_products(&wg) {
            Ok(list) => {
                for c in list {
                    let label = format!("C{n}/i={}", c.i);
                    let ok = c.matches;
                    out.push(case(label, &serde_json::json!({ "n": n, "i": c.i }), || {
                        Ok((ok, raw(&c), if ok { String::new() } else { "product differs from the closed form".into() }))
                    })?);
                }
            }
            Err(e) => out.push(case(format!("C{n}"), &serde_json::json!({ "n": n }), || Err(e))?),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- pf

#[derive(Serialize)]
pub struct PfJson {
    pub lambda_pf: F17,
    pub sigma: std::collections::BTreeMap<String, F17>,
    pub residual: F17,
    pub simple: bool,
    pub simplicity: pfsolve::Simplicity,
    pub gap: F17,
    pub sign_definite: usize,
}

impl PfJson {
    pub fn new(sol: &PfSolution) -> Self {
        PfJson {
            lambda_pf: F17(sol.pf_eigenvalue),
            sigma: sol.basis.iter().zip(&sol.sigma_values).map(|(w, &s)| (w.label(), F17(s))).collect(),
            residual: F17(sol.max_residual()),
            simple: sol.simplicity.is_simple(),
            simplicity: sol.simplicity,
            gap: F17(sol.eigenvalue_gap),
            sign_definite: sol.sign_definite_count,
        }
    }
}

/// Tolerance of the closed form `sigma_s = sqrt(Q)` in type `A_1`.
pub const A1_CLOSED_FORM_TOL: f64 = 1e-10;

fn pf_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let name = cfg.types.as_ref().and_then(|t| t.first().cloned()).unwrap_or_else(|| "A1".into());
    let wg = group(&name)?;
    let q = cfg.q.clone().unwrap_or_else(|| {
        if wg.rank() == 1 {
            vec![rat::int(4)]
        } else {
            vec![Rat::one(); wg.rank()]
        }
    });
    let pcfg = cfg.pf_config();
    let c = case(format!("pf/{name}"), &serde_json::json!({ "type": name, "q": fmt_q(&q) }), || {
        let rule = ChevalleyRule::borel(wg.clone());
        if let Err(e) = pfsolve::check_point(&rule, &q, &pcfg) {
            return Ok((false, null(), e));
        }
        let sol = pfsolve::solve_at(wg.clone(), &q, &pcfg)?;
        let mut ok = true;
        let mut diag = String::new();
        if name == "A1" {
            let want = rat::to_f64(&q[0]).sqrt();
            let err = (sol.sigma_values[1] - want).abs();
            if err > A1_CLOSED_FORM_TOL {
                ok = false;
                diag = format!("sigma_s = {} differs from sqrt(Q) = {want} by {err:e}", sol.sigma_values[1]);
            }
        }
        Ok((ok, raw(&PfJson::new(&sol)), diag))
    })?;
    Ok(vec![c])
}

pub const PF_SWEEP_SAMPLES: usize = 100;

#[derive(Serialize)]
struct SweepRowJson {
    q: Vec<String>,
    lambda_pf: F17,
    sigma: Vec<F17>,
    max_residual: F17,
    gap: F17,
    simplicity: pfsolve::Simplicity,
    sign_definite: usize,
    affine_positive: bool,
}

#[derive(Serialize)]
struct SweepJson {
    type_name: String,
    seed: u64,
    samples: usize,
    basis: Vec<String>,
    max_residual: F17,
    min_sigma: F17,
    min_gap_ratio: F17,
    a1_max_error: Option<F17>,
    rows: Vec<SweepRowJson>,
}

/// Worst deviation from `sigma_s = sqrt(Q)` over an `A_1` sweep.
pub fn a1_closed_form_error(report: &SweepReport) -> f64 {
    report
        .rows
        .iter()
        .map(|r| (r.sigma[1] - rat::to_f64(&rat::parse(&r.q[0]).unwrap()).sqrt()).abs())
        .fold(0.0, f64::max)
}

pub fn sweep_reports(cfg: &SuiteConfig, types: &[String], samples: usize) -> Result<Vec<SweepReport>> {
    let pcfg = cfg.pf_config();
    types
        .iter()
        .map(|name| Ok(bijectivity_sweep(group(name)?, samples, cfg.seed_for(&format!("pf-sweep/{name}")), &pcfg)))
        .collect()
}

fn pf_sweep_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let types = cfg.types_or(&PF_TYPES);
    let samples = cfg.samples_or(PF_SWEEP_SAMPLES);
    let reports = sweep_reports(cfg, &types, samples)?;
    reports.into_iter().map(|r| sweep_case(r, cfg.tol)).collect()
}

fn sweep_case(r: SweepReport, tol: f64) -> Result<Case> {
    let name = r.type_name.clone();
    case(format!("pf-sweep/{name}"), &serde_json::json!({ "type": name, "seed": r.seed, "samples": r.samples }), || {
        let mut problems = r.failures.clone();
        if r.rows.len() != r.samples {
            problems.push(format!("{} of {} samples solved", r.rows.len(), r.samples));
        }
        let max_residual = r.rows.iter().map(|x| x.max_residual).fold(0.0, f64::max);
        if max_residual > tol {
            problems.push(format!("residual {max_residual:e} above {tol:e}"));
        }
        let a1 = (name == "A1").then(|| a1_closed_form_error(&r));
        if let Some(e) = a1.filter(|&e| e > A1_CLOSED_FORM_TOL) {
            problems.push(format!("A1 closed form off by {e:e}"));
        }
        let data = SweepJson {
            type_name: name.clone(),
            seed: r.seed,
            samples: r.samples,
            basis: r.basis.clone(),
            max_residual: F17(max_residual),
            min_sigma: F17(r.rows.iter().flat_map(|x| x.sigma.iter().copied()).fold(f64::INFINITY, f64::min)),
            min_gap_ratio: F17(r.rows.iter().map(|x| x.gap / x.lambda_pf).fold(f64::INFINITY, f64::min)),
            a1_max_error: a1.map(F17),
            rows: r
                .rows
                .iter()
                .map(|x| SweepRowJson {
                    q: x.q.clone(),
                    lambda_pf: F17(x.lambda_pf),
                    sigma: f17s(&x.sigma),
                    max_residual: F17(x.max_residual),
                    gap: F17(x.gap),
                    simplicity: x.simplicity,
                    sign_definite: x.sign_definite,
                    affine_positive: x.affine_positive,
                })
                .collect(),
        };
        Ok((problems.is_empty(), raw(&data), problems.join("; ")))
    })
}

// ---------------------------------------------------------------- dictionary

pub const DICTIONARY_HEIGHT: i64 = 4;

#[derive(Serialize)]
struct DictionaryData {
    max_height: i64,
    coweights: usize,
    checked: usize,
    failures: Vec<String>,
}

/// `factorization_consistency` over every `w t_nu` in `W_af^-` and every
/// anti-dominant `mu` up to the given height; returns `(checked, failures)`.
pub fn dictionary_sweep(wg: &WeylGroup, max_height: i64) -> Result<(usize, Vec<String>)> {
    let rs = wg.root_system();
    let coweights = antidominant_coroots(rs, max_height);
    let mut checked = 0;
    let mut failures = Vec::new();
    for nu in &coweights {
        for w in wg.elements() {
            if !AffineLabel::new(w.clone(), nu.clone()).is_min_coset(rs) {
                continue;
            }
            for mu in &coweights {
                checked += 1;
                if !factorization_consistency(wg, w, nu, mu)? {
                    failures.push(format!("w={} nu={nu:?} mu={mu:?}", w.label()));
                }
            }
        }
    }
    Ok((checked, failures))
}

fn dictionary_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let types: Vec<String> = cfg
        .types_or(&CHEVALLEY_TYPES)
        .into_iter()
        .filter(|t| RootSystem::from_name(t).map(|r| r.rank() <= 3).unwrap_or(true))
        .collect();
    let mut out: Vec<Case> = collect(
        types
            .par_iter()
            .map(|name| {
                case(format!("factorization/{name}"), &serde_json::json!({ "type": name, "max_height": DICTIONARY_HEIGHT }), || {
                    let wg = group(name)?;
                    let (checked, failures) = dictionary_sweep(&wg, DICTIONARY_HEIGHT)?;
                    let coweights = antidominant_coroots(wg.root_system(), DICTIONARY_HEIGHT).len();
                    let ok = failures.is_empty() && checked > 0;
                    let diag = failures.first().cloned().unwrap_or_default();
                    Ok((ok, raw(&DictionaryData { max_height: DICTIONARY_HEIGHT, coweights, checked, failures }), diag))
                })
            })
            .collect(),
    )?;
    let pf_types: Vec<String> = PF_TYPES.iter().map(|s| s.to_string()).filter(|t| types.contains(t)).collect();
    for r in sweep_reports(cfg, &pf_types, cfg.samples_or(PF_SWEEP_SAMPLES))? {
        let name = r.type_name.clone();
        let total = r.rows.len();
        let positive = r.rows.iter().filter(|x| x.affine_positive).count();
        let ok = total == r.samples && positive == total;
        let diag = r.failures.first().cloned().unwrap_or_default();
        out.push(case(format!("affine-positivity/{name}"), &serde_json::json!({ "type": name, "seed": r.seed }), || {
            Ok((ok, raw(&serde_json::json!({ "samples": r.samples, "certified": positive })), diag))
        })?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- matrices

pub const SEMIGROUP_SAMPLES: usize = 500;
pub const UT_SAMPLES: usize = 100;
pub const WEDGE_SAMPLES: usize = 100;

fn chamber_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    cfg.n_or(2..=6)
        .into_iter()
        .map(|n| {
            case(format!("B{n}"), &serde_json::json!({ "n": n }), || {
                let m = 2 * n + 1;
                let word = wiring::bn_word_power(n);
                let length = wiring::reduced_length(&word, m);
                let arr = PseudolineArrangement::new(&word, m)?;
                let claim = wiring::claim_check(n)?;
                let weights_nonzero =
                    arr.chambers.iter().all(|c| wiring::restricted_weight(c, n).iter().any(|&x| x != 0));
                let expected = n * (2 * n + 1);
                let ok = length == Some(expected) && expected == m * (m - 1) / 2 && claim && weights_nonzero;
                let data = serde_json::json!({
                    "word": wiring::bn_word(n),
                    "length": length,
                    "expected_length": expected,
                    "chambers": arr.chambers.len(),
                    "claim": claim,
                    "restricted_weights_nonzero": weights_nonzero,
                });
                Ok((ok, raw(&data), if ok { String::new() } else { "claim fails".into() }))
            })
        })
        .collect()
}

use totpos::PseudolineArrangement;

/// `exp(f)` for `m <= 8`: all minors nonnegative and every chamber minor positive.
pub fn exp_f_check(m: usize) -> Result<(bool, bool, usize)> {
    let e = totpos::exp_f(m);
    let tnn = totpos::is_tnn(&e)?;
    let chambers = totpos::chamber_minors(&e, &wiring::longest_word(m))?;
    let positive = chambers.iter().all(|(_, v)| v.is_positive());
    Ok((tnn, positive, chambers.len()))
}

/// Products of two sampled TNN Toeplitz matrices; returns the failures.
pub fn semigroup_check(seed: u64, samples: usize) -> Result<Vec<String>> {
    let results: Vec<Result<Option<String>>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            let m = rng.gen_range(2..=7);
            let (a, pa) = totpos::random_tnn_toeplitz(&mut rng, m);
            let (b, pb) = totpos::random_tnn_toeplitz(&mut rng, m);
            if !totpos::is_tnn(&a)? || !totpos::is_tnn(&b)? {
                return Ok(Some(format!("sample {k}: a factor is not TNN ({pa:?}, {pb:?})")));
            }
            let ab = &a * &b;
            if !totpos::is_unipotent_toeplitz(&ab) || ab != &b * &a {
                return Ok(Some(format!("sample {k}: product is not a commuting Toeplitz matrix")));
            }
            if !totpos::is_tnn(&ab)? {
                return Ok(Some(format!("sample {k}: product is not TNN ({pa:?}, {pb:?})")));
            }
            Ok(None)
        })
        .collect();
    Ok(collect(results)?.into_iter().flatten().collect())
}

/// `Delta_i(u_t) = t^{i(m-i)} Delta_i(u)` on sampled Toeplitz `u` and rational `t > 0`.
pub fn ut_scaling_check(seed: u64, samples: usize) -> Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for k in 0..samples {
        let m = rng.gen_range(2..=7);
        let entries: Vec<Rat> = (1..m).map(|_| rat::frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect();
        let t = totpos::random_positive_rat(&mut rng);
        let u = totpos::toeplitz(&entries);
        let ut = totpos::u_t(&u, &t)?;
        let d0 = totpos::delta_coords(&u)?;
        let d1 = totpos::delta_coords(&ut)?;
        for i in 1..m {
            if d1[i - 1] != &d0[i - 1] * rat::pow(&t, (i * (m - i)) as i64) {
                bad.push(format!("sample {k}: m={m} i={i} t={}", rat::format(&t)));
            }
        }
    }
    Ok(bad)
}

/// Wedge coefficients `<e_J, y v+>` of sampled TP elements over the chamber
/// sets of `w_0` and over all `k`-subsets; returns `(checked, failures)`.
pub fn wedge_check(seed: u64, samples: usize) -> Result<(usize, Vec<String>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 0..samples {
        let m = rng.gen_range(2..=5);
        let (y, params) = totpos::random_tp_unipotent(&mut rng, m);
        if !totpos::is_tp_unipotent_all_minors(&y)? {
            bad.push(format!("sample {k}: m={m} not TP"));
        }
        let chambers = wiring::chamber_sets(&wiring::longest_word(m), m)?;
        for c in &chambers {
            checked += 1;
            if !totpos::chamber_minor(&y, c)?.is_positive() {
                bad.push(format!("sample {k}: J={:?} params={:?}", c.j, fmt_q(&params)));
            }
        }
        for size in 1..m {
            for (j, v) in totpos::wedge_coefficients(&y, size)? {
                checked += 1;
                if !v.is_positive() {
                    bad.push(format!("sample {k}: J={:?} params={:?}", j.j, fmt_q(&params)));
                }
            }
        }
    }
    Ok((checked, bad))
}

fn tnn_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for m in 2..=totpos::ALL_MINORS_LIMIT {
        out.push(case(format!("exp_f/m={m}"), &serde_json::json!({ "m": m }), || {
            let (tnn, positive, count) = exp_f_check(m)?;
            let data = serde_json::json!({ "tnn": tnn, "chamber_minors_positive": positive, "chamber_minors": count });
            Ok((tnn && positive, raw(&data), String::new()))
        })?);
    }
    for family in [embed::Family::SoOdd, embed::Family::Sp] {
        for n in 2..=3 {
            let label = format!("embedded/{family}/n={n}");
            let seed = cfg.seed_for(&label);
            out.push(case(label, &serde_json::json!({ "family": family, "n": n, "seed": seed }), || {
                let emb = embed::Embedding::new(family, n)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut problems = Vec::new();
                let samples = 5;
                for s in 0..samples {
                    let word = emb.w0_word();
                    let params: Vec<Rat> = word.iter().map(|_| totpos::random_positive_rat(&mut rng)).collect();
                    let y = emb.product(&word, &params)?;
                    if !emb.preserves_form(&y) {
                        problems.push(format!("sample {s}: form not preserved"));
                    }
                    if !totpos::is_tnn(&y)? {
                        problems.push(format!("sample {s}: not TNN, params {:?}", fmt_q(&params)));
                    }
                }
                let data = serde_json::json!({ "ambient": emb.m, "samples": samples });
                Ok((problems.is_empty(), raw(&data), problems.join("; ")))
            })?);
        }
    }
    let samples = cfg.samples_or(WEDGE_SAMPLES);
    let seed = cfg.seed_for("wedge");
    out.push(case("wedge", &serde_json::json!({ "seed": seed, "samples": samples }), || {
        let (checked, bad) = wedge_check(seed, samples)?;
        let data = serde_json::json!({ "samples": samples, "coefficients": checked, "failures": bad });
        Ok((bad.is_empty(), raw(&data), bad.first().cloned().unwrap_or_default()))
    })?);
    Ok(out)
}

fn toeplitz_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    let samples = cfg.samples_or(SEMIGROUP_SAMPLES);
    let seed = cfg.seed_for("semigroup");
    out.push(case("semigroup", &serde_json::json!({ "seed": seed, "samples": samples }), || {
        let bad = semigroup_check(seed, samples)?;
        let data = serde_json::json!({ "samples": samples, "failures": bad });
        Ok((bad.is_empty(), raw(&data), bad.first().cloned().unwrap_or_default()))
    })?);
    let ut = cfg.samples_or(UT_SAMPLES);
    let seed = cfg.seed_for("u_t");
    out.push(case("u_t", &serde_json::json!({ "seed": seed, "samples": ut }), || {
        let bad = ut_scaling_check(seed, ut)?;
        let data = serde_json::json!({ "samples": ut, "failures": bad });
        Ok((bad.is_empty(), raw(&data), bad.first().cloned().unwrap_or_default()))
    })?);
    let charts = [
        (embed::Family::A, 2),
        (embed::Family::A, 3),
        (embed::Family::A, 4),
        (embed::Family::SoOdd, 2),
        (embed::Family::SoOdd, 3),
        (embed::Family::Sp, 2),
        (embed::Family::Sp, 3),
    ];
    for (family, n) in charts {
        let label = format!("centralizer/{family}/n={n}");
        let seed = cfg.seed_for(&label);
        out.push(case(label, &serde_json::json!({ "family": family, "n": n, "seed": seed }), || {
            let chart = embed::centralizer_chart(family, n)?;
            let emb = embed::Embedding::new(family, n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pts: Vec<crate::ExactMatrix> = (0..3)
                .map(|_| {
                    let c: Vec<Rat> = (0..chart.dim()).map(|_| totpos::random_positive_rat(&mut rng)).collect();
                    chart.point(&c)
                })
                .collect::<Result<_>>()?;
            let mut problems = Vec::new();
            if chart.dim() != n {
                problems.push(format!("dimension {} != {n}", chart.dim()));
            }
            for (a, x) in pts.iter().enumerate() {
                if !emb.preserves_form(x) {
                    problems.push(format!("point {a} leaves the group"));
                }
                if family == embed::Family::A && !totpos::is_unipotent_toeplitz(x) {
                    problems.push(format!("point {a} is not Toeplitz"));
                }
                for y in &pts[a + 1..] {
                    if x * y != y * x {
                        problems.push("points do not commute".into());
                    }
                }
            }
            if !chart.basis.iter().all(|b| chart.f.commutator(b).is_zero()) {
                problems.push("basis does not centralize f".into());
            }
            let data = serde_json::json!({ "dim": chart.dim(), "ambient": chart.m });
            Ok((problems.is_empty(), raw(&data), problems.join("; ")))
        })?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- weights

fn weight_cases(cfg: &SuiteConfig) -> Result<Vec<Case>> {
    let mut cases = match &cfg.types {
        Some(t) => t.iter().map(|s| LemmaCase::parse(s)).collect::<Result<Vec<_>>>()?,
        None => vec![LemmaCase::C(2), LemmaCase::C(3), LemmaCase::D(4)],
    };
    if cfg.experimental && !cases.contains(&LemmaCase::E7) {
        cases.push(LemmaCase::E7);
    }
    cases
        .into_iter()
        .map(|c| {
            case(c.name(), &serde_json::json!({ "case": c.name() }), || {
                let r = lemma_check_with_budget(c, cfg.budget)?;
                let ok = r.passed();
                let diag = if ok {
                    String::new()
                } else {
                    format!("part1={} part2={} part3={} dim={}", r.part1(), r.part2(), r.part3(), r.dim_v)
                };
                Ok((ok, raw(&r), diag))
            })
        })
        .collect()
}

impl FromStr for SuiteConfig {
    type Err = Error;

    /// `key=value` pairs separated by `;`, e.g. `seed=7;types=A2,B2;n=2..4`.
    fn from_str(s: &str) -> Result<Self> {
        let mut cfg = SuiteConfig::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let bad = || Error::Parse(format!("bad value for {k}: {v:?}"));
            match k.trim() {
                "seed" => cfg.seed = v.trim().parse().map_err(|_| bad())?,
                "tol" => cfg.tol = v.trim().parse().map_err(|_| bad())?,
                "budget" => cfg.budget = v.trim().parse().map_err(|_| bad())?,
                "samples" => cfg.samples = Some(v.trim().parse().map_err(|_| bad())?),
                "types" | "type" => cfg.types = Some(v.split(',').map(|x| x.trim().to_string()).collect()),
                "n" => cfg.n = Some(parse_range(v)?),
                "q" | "Q" => cfg.q = Some(rat::parse_list(v)?),
                "experimental" => cfg.experimental = v.trim().parse().map_err(|_| bad())?,
                other => return Err(Error::Parse(format!("unknown config key {other:?}"))),
            }
        }
        if cfg.tol.is_nan() || cfg.tol <= 0.0 {
            return Err(Error::Parse(format!("tolerance must be positive, got {}", cfg.tol)));
        }
        Ok(cfg)
    }
}

/// `"2..4"`, `"2..=4"` (both inclusive), `"3"` or `"2,5"`.
pub fn parse_range(v: &str) -> Result<Vec<usize>> {
    let v = v.trim();
    let bad = || Error::Parse(format!("bad range {v:?}"));
    if let Some((a, b)) = v.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    v.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

/// Honors `SCHUBPOS_THREADS` for the global worker pool; later calls are no-ops.
pub fn configure_threads() {
    if let Some(n) = std::env::var("SCHUBPOS_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f17_format() {
        assert_eq!(serde_json::to_string(&F17(0.1)).unwrap(), "1.0000000000000001e-1");
        assert_eq!(serde_json::to_string(&F17(2.0)).unwrap(), "2.0000000000000000e0");
        assert_eq!(serde_json::to_string(&F17(f64::NAN)).unwrap(), "null");
        let back: f64 = serde_json::from_str("1.0000000000000001e-1").unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn config_parsing() {
        let c: SuiteConfig = "seed=7; types=A2,B2; n=2..4; q=1/2,3".parse().unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.types.unwrap(), vec!["A2", "B2"]);
        assert_eq!(c.n.unwrap(), vec![2, 3, 4]);
        assert_eq!(c.q.unwrap(), vec![rat::frac(1, 2), rat::int(3)]);
        assert!("bogus=1".parse::<SuiteConfig>().is_err());
        assert!("tol=-1".parse::<SuiteConfig>().is_err());
        assert_eq!(parse_range("3").unwrap(), vec![3]);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let cfg: SuiteConfig = "n=2;types=A1".parse().unwrap();
        for s in ["appendixC", "chambers", "pf", "roots"] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.passed(), "{s}: {}", r.to_json());
            assert!(r.wall_time.is_none());
        }
        let r = run_suite("pf", &"types=A1;q=4".parse().unwrap()).unwrap();
        assert!(r.to_json().contains("\"s1\": 2.0000000000000000e0") || r.passed());
    }

    #[test]
    fn reports_are_byte_stable() {
        let cfg: SuiteConfig = "types=A2;samples=3".parse().unwrap();
        let a = run_suite("pf-sweep", &cfg).unwrap().to_json();
        let b = run_suite("pf-sweep", &cfg).unwrap().to_json();
        assert_eq!(a, b);
        let t = run_suite("commute", &cfg).unwrap();
        assert!(t.passed());
        assert!(t.to_tsv().lines().count() == t.cases_run + 1);
    }

    #[test]
    fn budget_errors_propagate() {
        let cfg: SuiteConfig = "budget=10".parse().unwrap();
        assert!(matches!(run_suite("weightlemmas", &cfg), Err(Error::Budget(_))));
    }
}

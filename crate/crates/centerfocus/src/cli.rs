//! Batch front end: parse a system from JSON, run the selected analyses,
//! and emit a report in JSON or text; plus a self-test command that
//! machine-verifies the combinatorial identity suites.
//!
//! Input schema (lossless rationals: integers or `"num/den"` strings,
//! omitted coefficients are zero):
//!
//! ```json
//! {"n": 2, "P1": {"p10": "1", "p01": "0"}, "Pn": {"2,0": "1", "0,2": "-1"}}
//! ```
//!
//! Exit codes: 0 success, 1 analysis error, 2 self-test failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center_conditions::{
    composition_factor, corollary_conditions, is_center, moments, CenterError, SystemSpec, Verdict,
};
use crate::combinatorics::{
    binomial, generating_series_coeff, generating_series_coeff_with_tail, harmonic_expansion,
    lambda_closed, mu_table, FourierLine, LambdaTable,
};
use crate::focal_values::focal_values;
use crate::numeric_oracle::{
    estimate_focal, geometric_ladder, return_map, IntegratorConfig, NumericError,
};
use crate::trig_algebra::{
    parse_rational, rat, rational_str, trig_mul, HomogPoly, PiPolynomial, Rational, TrigPoly,
};

/// Front-end errors; everything maps to process exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    /// Reading the input file (or stdin) failed.
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The input is not well-formed JSON (message carries line/column).
    #[error("parse error: {0}")]
    Parse(String),
    /// The JSON is well-formed but violates the system schema.
    #[error("invalid system: {0}")]
    Validation(String),
    /// An exact-analysis error surfaced from the library.
    #[error(transparent)]
    Center(#[from] CenterError),
    /// A numeric-oracle error surfaced from the library.
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

// ---------------------------------------------------------------------------
// Input parsing and rendering

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: u32,
    #[serde(rename = "P1", default)]
    p1: RawP1,
    #[serde(rename = "Pn", default)]
    pn: BTreeMap<String, RationalField>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawP1 {
    #[serde(default)]
    p10: Option<RationalField>,
    #[serde(default)]
    p01: Option<RationalField>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalField {
    Int(i64),
    Float(f64),
    Str(String),
}

impl RationalField {
    fn to_rational(&self, field: &str) -> Result<Rational, CliError> {
        match self {
            RationalField::Int(i) => Ok(Rational::from_integer(BigInt::from(*i))),
            RationalField::Float(v) => Err(CliError::Validation(format!(
                "field {field}: non-integer numeric literal {v}; write rationals as \"num/den\" strings"
            ))),
            RationalField::Str(s) => parse_rational(s).ok_or_else(|| {
                CliError::Validation(format!("field {field}: malformed rational \"{s}\""))
            }),
        }
    }
}

/// Parses the JSON system schema from a string.
pub fn parse_system_json(text: &str) -> Result<SystemSpec, CliError> {
    let raw: RawSystem =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let p10 = match &raw.p1.p10 {
        Some(f) => f.to_rational("P1.p10")?,
        None => Rational::zero(),
    };
    let p01 = match &raw.p1.p01 {
        Some(f) => f.to_rational("P1.p01")?,
        None => Rational::zero(),
    };
    let mut coeffs = Vec::new();
    for (key, val) in &raw.pn {
        let (i, j) = parse_exponent_key(key)?;
        if i.checked_add(j) != Some(raw.n) {
            return Err(CliError::Validation(format!(
                "Pn key \"{key}\": exponents sum to {}, expected n = {}",
                u64::from(i) + u64::from(j),
                raw.n
            )));
        }
        coeffs.push(((i, j), val.to_rational(&format!("Pn[\"{key}\"]"))?));
    }
    let pn = HomogPoly::new(raw.n, coeffs).map_err(|e| CliError::Validation(e.to_string()))?;
    SystemSpec::new(raw.n, p10, p01, pn).map_err(|e| CliError::Validation(e.to_string()))
}

fn parse_exponent_key(key: &str) -> Result<(u32, u32), CliError> {
    let bad = || {
        CliError::Validation(format!(
            "Pn key \"{key}\": expected \"i,j\" with nonnegative integer exponents"
        ))
    };
    let (i, j) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

/// Reads and parses a system; `"-"` reads stdin.
pub fn parse_input(path: &str) -> Result<SystemSpec, CliError> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin().lock())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Io { path: path.to_string(), source: e })?;
    parse_system_json(&text)
}

/// The lossless JSON image of a system; also the input schema, so
/// `parse_system_json(render_system_json(sys)) == sys`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SystemJson {
    /// Degree n of `Pₙ`.
    pub n: u32,
    /// `P₁` coefficients.
    #[serde(rename = "P1")]
    pub p1: P1Json,
    /// `Pₙ` coefficients, keyed by `"i,j"`.
    #[serde(rename = "Pn")]
    pub pn: BTreeMap<String, String>,
}

/// The two `P₁` coefficients as rational strings.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct P1Json {
    /// Coefficient of x.
    pub p10: String,
    /// Coefficient of y.
    pub p01: String,
}

/// The JSON image of a system.
pub fn system_json(sys: &SystemSpec) -> SystemJson {
    SystemJson {
        n: sys.n(),
        p1: P1Json { p10: rational_str(sys.p10()), p01: rational_str(sys.p01()) },
        pn: sys
            .pn()
            .terms()
            .map(|((i, j), c)| (format!("{},{}", i, j), rational_str(c)))
            .collect(),
    }
}

/// Serializes a system back into the input schema.
pub fn render_system_json(sys: &SystemSpec) -> String {
    serde_json::to_string(&system_json(sys)).expect("system serialization cannot fail")
}

// ---------------------------------------------------------------------------
// Requests

/// Subcommand selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    /// Moments + verdict + focal values + composition (+ numeric).
    Analyze,
    /// Moments and verdict.
    Moments,
    /// Focal values.
    Focal,
    /// Composition factorization.
    Compose,
    /// Identity-suite verification (no input system).
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Moments => "moments",
            Command::Focal => "focal",
            Command::Compose => "compose",
            Command::Selftest => "selftest",
        }
    }
}

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Structured report.
    Json,
    /// Line-oriented report (contains the `verdict:` line).
    Text,
}

/// A fully-resolved invocation.
#[derive(Clone, Debug)]
pub struct AnalysisRequest {
    /// Input path, or `"-"` for stdin; ignored by [`Command::Selftest`].
    pub input_path: String,
    /// What to run.
    pub command: Command,
    /// Series truncation order K; defaults to 2n+2.
    pub order: Option<u32>,
    /// Include the floating-point cross-check.
    pub numeric: bool,
    /// Residual tolerance for the numeric center test.
    pub tol: f64,
    /// Report format.
    pub format: OutputFormat,
    /// Radii for the numeric cross-check; defaults to 0.02, 0.05, 0.1.
    pub ladder: Option<Vec<f64>>,
}

// ---------------------------------------------------------------------------
// Reports

/// Exact π-polynomial as `[["coeff", pi_power], …]` pairs.
pub type PiPolyJson = Vec<(String, u32)>;

fn pi_json(p: &PiPolynomial) -> PiPolyJson {
    p.coefficient_pairs()
}

/// Report of one analysis run; sections absent when not requested.
#[derive(Serialize, Debug)]
pub struct AnalysisReport {
    /// Which subcommand produced this.
    pub command: String,
    /// The parsed system (same schema as the input).
    pub system: SystemJson,
    /// `"Center"` or `"Focus (first nonzero moment j=…)"`.
    pub verdict: String,
    /// Convenience boolean form of the verdict.
    pub is_center: bool,
    /// Index of the first nonzero moment, when moments were computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonzero_moment: Option<usize>,
    /// `M_j` for j = 0..n, exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<PiPolyJson>>,
    /// Focal values section.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal: Option<FocalJson>,
    /// Composition section.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<CompositionJson>,
    /// Tabulated closed-form condition values (present for 2 ≤ n ≤ 6).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary_conditions: Option<Vec<String>>,
    /// Numeric cross-check section (present with `--numeric`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericJson>,
    /// Wall-clock duration of the run.
    pub timing_ms: f64,
}

/// Focal values `V_k`, k = 2..K.
#[derive(Serialize, Debug)]
pub struct FocalJson {
    /// Truncation order K.
    pub order: u32,
    /// `V_2 … V_K` as exact π-polynomials.
    pub values: Vec<PiPolyJson>,
    /// Least k with `V_k ≠ 0`, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonzero: Option<u32>,
}

/// Composition factorization `Pₙ = P₁ · Σ cᵢ P̄₁^{pᵢ}`.
#[derive(Serialize, Debug)]
pub struct CompositionJson {
    /// Whether an exact factorization exists (⟺ center, for `P₁ ≠ 0`).
    pub exists: bool,
    /// The `P̄₁` powers, increasing.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers: Option<Vec<u32>>,
    /// Exact coefficients aligned with `powers`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    /// Present when the factorization is inapplicable (degenerate `P₁`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Numeric cross-check summary.
#[derive(Serialize, Debug)]
pub struct NumericJson {
    /// Residual tolerance of the center test.
    pub tol: f64,
    /// Return-map samples at the requested radii.
    pub samples: Vec<SampleJson>,
    /// `max |Π(c) − c|` over the samples.
    pub max_abs_residual: f64,
    /// Whether the maximum residual is within `tol`.
    pub center_within_tol: bool,
    /// Whether the numeric center test matches the symbolic verdict.
    pub agrees_with_symbolic: bool,
    /// Least-squares focal estimates (focus verdicts only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimated_focal: Option<EstimateJson>,
    /// Estimation failure, surfaced verbatim.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate_error: Option<String>,
}

/// One return-map sample.
#[derive(Serialize, Debug)]
pub struct SampleJson {
    /// Initial radius.
    pub c: f64,
    /// Π(c).
    pub r_end: f64,
    /// Π(c) − c.
    pub residual: f64,
}

/// Focal estimates `Ṽ_k`, k = 2..max_order.
#[derive(Serialize, Debug)]
pub struct EstimateJson {
    /// Highest fitted order.
    pub max_order: u32,
    /// Fit ladder radii.
    pub ladder: Vec<f64>,
    /// Estimates for k = 2..max_order.
    pub values: Vec<f64>,
}

/// One identity suite's tally.
#[derive(Serialize, Debug)]
pub struct SelftestSuite {
    /// Suite identifier.
    pub name: String,
    /// Number of individual identities checked.
    pub cases: u64,
    /// Number that failed (0 expected).
    pub failures: u64,
}

/// Self-test outcome across all suites.
#[derive(Serialize, Debug)]
pub struct SelftestReport {
    /// Per-suite tallies.
    pub suites: Vec<SelftestSuite>,
    /// True iff no suite recorded a failure.
    pub passed: bool,
    /// Wall-clock duration.
    pub timing_ms: f64,
}

/// Output of [`run`]: an analysis report or a self-test report.
#[derive(Debug)]
pub enum RunOutcome {
    /// From the data subcommands.
    Analysis(AnalysisReport),
    /// From `selftest`.
    Selftest(SelftestReport),
}

impl RunOutcome {
    /// Process exit code: 0 success, 2 self-test failure (analysis errors
    /// exit 1 before an outcome exists).
    pub fn exit_code(&self) -> u8 {
        match self {
            RunOutcome::Analysis(_) => 0,
            RunOutcome::Selftest(r) => {
                if r.passed {
                    0
                } else {
                    2
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Execution

/// Runs a request end to end (parse, analyze, assemble the report).
pub fn run(req: &AnalysisRequest) -> Result<RunOutcome, CliError> {
    if req.command == Command::Selftest {
        return Ok(RunOutcome::Selftest(selftest()));
    }
    let start = Instant::now();
    let sys = parse_input(&req.input_path)?;
    let n = sys.n();
    let verdict = is_center(&sys);
    let mut report = AnalysisReport {
        command: req.command.name().to_string(),
        system: system_json(&sys),
        verdict: verdict.to_string(),
        is_center: verdict.is_center(),
        first_nonzero_moment: None,
        moments: None,
        focal: None,
        composition: None,
        corollary_conditions: None,
        numeric: None,
        timing_ms: 0.0,
    };
    if matches!(req.command, Command::Analyze | Command::Moments) {
        let rep = moments(&sys);
        report.first_nonzero_moment = rep.first_nonzero();
        report.moments = Some(rep.moments().iter().map(pi_json).collect());
        if (2..=6).contains(&n) {
            report.corollary_conditions = Some(
                corollary_conditions(&sys)?.iter().map(rational_str).collect(),
            );
        }
    }
    if matches!(req.command, Command::Analyze | Command::Focal) {
        let order = req.order.unwrap_or(2 * n + 2);
        if order < 2 {
            return Err(CliError::Validation(format!(
                "order must be at least 2, got {order}"
            )));
        }
        let rep = focal_values(&sys, order);
        report.focal = Some(FocalJson {
            order,
            values: rep.values().iter().map(pi_json).collect(),
            first_nonzero: rep.first_nonzero(),
        });
    }
    if matches!(req.command, Command::Analyze | Command::Compose) {
        report.composition = Some(match composition_factor(&sys) {
            Ok(Some(f)) => CompositionJson {
                exists: true,
                powers: Some(f.powers().to_vec()),
                coefficients: Some(f.coeffs().iter().map(rational_str).collect()),
                error: None,
            },
            Ok(None) => CompositionJson {
                exists: false,
                powers: None,
                coefficients: None,
                error: None,
            },
            Err(e @ CenterError::DegenerateP1) => CompositionJson {
                exists: false,
                powers: None,
                coefficients: None,
                error: Some(e.to_string()),
            },
            Err(e) => return Err(e.into()),
        });
    }
    if req.numeric {
        report.numeric = Some(numeric_section(&sys, &verdict, req)?);
    }
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(RunOutcome::Analysis(report))
}

fn numeric_section(
    sys: &SystemSpec,
    verdict: &Verdict,
    req: &AnalysisRequest,
) -> Result<NumericJson, CliError> {
    let cfg = IntegratorConfig::default();
    let cs = req.ladder.clone().unwrap_or_else(|| vec![0.02, 0.05, 0.1]);
    let mut samples = Vec::with_capacity(cs.len());
    let mut max_abs = 0.0_f64;
    for &c in &cs {
        let s = return_map(sys, c, &cfg)?;
        max_abs = max_abs.max(s.residual.abs());
        samples.push(SampleJson { c: s.c, r_end: s.r_end, residual: s.residual });
    }
    let center_within_tol = max_abs <= req.tol;
    let mut section = NumericJson {
        tol: req.tol,
        samples,
        max_abs_residual: max_abs,
        center_within_tol,
        agrees_with_symbolic: center_within_tol == verdict.is_center(),
        estimated_focal: None,
        estimate_error: None,
    };
    if let Verdict::Focus { first_nonzero_moment_index, .. } = verdict {
        // Target the leading focal order n+1+j* plus two guard orders;
        // beyond order ~11 the c-powers sink below the noise floor on any
        // double-precision ladder.
        let k_star = sys.n() + 1 + *first_nonzero_moment_index as u32;
        let max_order = (k_star + 2).min(11);
        let len = 10usize.max(max_order as usize + 3);
        let ladder = geometric_ladder(0.01, 0.05, len);
        match estimate_focal(sys, max_order, &ladder, &cfg) {
            Ok(values) => {
                section.estimated_focal = Some(EstimateJson { max_order, ladder, values });
            }
            Err(e) => section.estimate_error = Some(e.to_string()),
        }
    }
    Ok(section)
}

// ---------------------------------------------------------------------------
// Self-test

/// Machine-verifies the three combinatorial identity suites at their full
/// published ranges (deterministic seeded sampling where randomness is
/// called for) and tallies pass/fail counts.
pub fn selftest() -> SelftestReport {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut suites = Vec::new();

    // Suite 1: λ-table recurrence equals the closed form, m ≤ 15, j ≤ k ≤ 25.
    {
        let mut cases = 0u64;
        let mut failures = 0u64;
        for m in 1..=15u32 {
            let table = LambdaTable::compute(m, 25).expect("valid range");
            for k in 0..=25u32 {
                for j in 0..=k {
                    cases += 1;
                    let closed = lambda_closed(k, j, m).expect("valid indices");
                    if table.get(k, j) != Some(&closed) {
                        failures += 1;
                    }
                }
            }
        }
        suites.push(SelftestSuite {
            name: "lambda-recurrence-vs-closed-form".into(),
            cases,
            failures,
        });
    }

    // Suite 2: generating-series coefficient is C(n+k−1, k) and independent
    // of the series tail, n ≤ 40, k < n, 5 random tails each.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5e1f_7e57);
        let mut cases = 0u64;
        let mut failures = 0u64;
        for n in 1..=40u32 {
            for k in 0..n {
                let expect = binomial(u64::from(n + k) - 1, u64::from(k));
                cases += 1;
                if generating_series_coeff(n, k).as_ref() != Ok(&expect) {
                    failures += 1;
                }
                for _ in 0..5 {
                    let tail: Vec<Rational> = (0..4)
                        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
                        .collect();
                    cases += 1;
                    if generating_series_coeff_with_tail(n, k, &tail).as_ref() != Ok(&expect) {
                        failures += 1;
                    }
                }
            }
        }
        suites.push(SelftestSuite { name: "generating-series-coefficient".into(), cases, failures });
    }

    // Suite 3: harmonic lines match the direct Fourier expansion of
    // P₁·P̄₁^{2k} and factor through the μ table, k ≤ 12, 10 random seeds.
    {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x3a7_1155);
        let mut cases = 0u64;
        let mut failures = 0u64;
        for _ in 0..10 {
            let (a1, b1) = loop {
                let a = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
                let b = rat(rng.gen_range(-5..=5), rng.gen_range(1..=3));
                if !(a.is_zero() && b.is_zero()) {
                    break (a, b);
                }
            };
            let p1 = TrigPoly::harmonic_term(1, a1.clone(), b1.clone());
            let p1_bar = TrigPoly::harmonic_term(1, -b1.clone(), a1.clone());
            let bar_sq = trig_mul(&p1_bar, &p1_bar);
            let mu = mu_table(12, &a1, &b1).expect("nondegenerate seed");
            let lines: Vec<FourierLine> = (0..=12u32)
                .map(|k| harmonic_expansion(k, &a1, &b1).expect("nondegenerate seed"))
                .collect();
            let mut bar_pow = TrigPoly::constant(Rational::from_integer(1.into()));
            for (k, line) in lines.iter().enumerate() {
                cases += 1;
                if line.to_trig_poly() != trig_mul(&bar_pow, &p1) {
                    failures += 1;
                }
                for j in 0..=k {
                    cases += 1;
                    let h = (2 * j + 1) as u32;
                    let (la, lb) = line.mode(h);
                    let (da, db) = lines[j].mode(h);
                    let mu_v = mu.get((2 * k + 1) as u32, h);
                    if la != &mu_v * &da || lb != &mu_v * &db {
                        failures += 1;
                    }
                }
                bar_pow = trig_mul(&bar_pow, &bar_sq);
            }
        }
        suites.push(SelftestSuite { name: "harmonic-line-mu-factorization".into(), cases, failures });
    }

    let passed = suites.iter().all(|s| s.failures == 0);
    SelftestReport { suites, passed, timing_ms: start.elapsed().as_secs_f64() * 1e3 }
}

// ---------------------------------------------------------------------------
// Text rendering

fn pi_text(pairs: &PiPolyJson) -> String {
    if pairs.is_empty() {
        return "0".to_string();
    }
    pairs
        .iter()
        .map(|(c, p)| match p {
            0 => c.clone(),
            1 => format!("{c}·π"),
            _ => format!("{c}·π^{p}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Renders an analysis report as line-oriented text (always includes the
/// `verdict:` line).
pub fn render_analysis_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let pn: Vec<String> = report
        .system
        .pn
        .iter()
        .map(|(k, v)| format!("p[{k}] = {v}"))
        .collect();
    let _ = writeln!(
        out,
        "system: n = {}; P1: p10 = {}, p01 = {}; Pn: {}",
        report.system.n,
        report.system.p1.p10,
        report.system.p1.p01,
        if pn.is_empty() { "0".to_string() } else { pn.join(", ") }
    );
    if let Some(ms) = &report.moments {
        let _ = writeln!(out, "moments:");
        for (j, m) in ms.iter().enumerate() {
            let _ = writeln!(out, "  M_{j} = {}", pi_text(m));
        }
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    if let Some(f) = &report.focal {
        let _ = writeln!(out, "focal values (K = {}):", f.order);
        for (i, v) in f.values.iter().enumerate() {
            let _ = writeln!(out, "  V_{} = {}", i + 2, pi_text(v));
        }
        match f.first_nonzero {
            Some(k) => {
                let _ = writeln!(out, "  first nonzero: V_{k}");
            }
            None => {
                let _ = writeln!(out, "  all zero up to K");
            }
        }
    }
    if let Some(c) = &report.composition {
        if c.exists {
            let powers = c.powers.as_deref().unwrap_or(&[]);
            let coeffs = c.coefficients.as_deref().unwrap_or(&[]);
            let terms: Vec<String> = powers
                .iter()
                .zip(coeffs)
                .map(|(p, c)| format!("{c}·q^{p}"))
                .collect();
            let _ = writeln!(
                out,
                "composition: Pn = P1 · ({})  [q = P̄1]",
                terms.join(" + ")
            );
        } else if let Some(e) = &c.error {
            let _ = writeln!(out, "composition: unavailable ({e})");
        } else {
            let _ = writeln!(out, "composition: none (focus)");
        }
    }
    if let Some(cc) = &report.corollary_conditions {
        let all_zero = cc.iter().all(|c| c == "0");
        let _ = writeln!(
            out,
            "corollary conditions: [{}]; all zero: {}",
            cc.join(", "),
            if all_zero { "yes" } else { "no" }
        );
    }
    if let Some(nm) = &report.numeric {
        let _ = writeln!(out, "numeric cross-check (tol = {:e}):", nm.tol);
        for s in &nm.samples {
            let _ = writeln!(out, "  c = {}: residual = {:.6e}", s.c, s.residual);
        }
        let _ = writeln!(
            out,
            "  max |Π(c) − c| = {:.6e}; center within tol: {}; agrees with symbolic: {}",
            nm.max_abs_residual,
            if nm.center_within_tol { "yes" } else { "no" },
            if nm.agrees_with_symbolic { "yes" } else { "no" }
        );
        if let Some(est) = &nm.estimated_focal {
            let vals: Vec<String> = est
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| format!("Ṽ_{} = {:.6e}", i + 2, v))
                .collect();
            let _ = writeln!(
                out,
                "  estimated focal values (ladder {} pts in [{}, {}]): {}",
                est.ladder.len(),
                est.ladder.first().unwrap(),
                est.ladder.last().unwrap(),
                vals.join(", ")
            );
        }
        if let Some(e) = &nm.estimate_error {
            let _ = writeln!(out, "  estimate error: {e}");
        }
    }
    let _ = writeln!(out, "timing: {:.3} ms", report.timing_ms);
    out
}

/// Renders a self-test report as text.
pub fn render_selftest_text(report: &SelftestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "selftest suites:");
    for s in &report.suites {
        let _ = writeln!(out, "  {}: {} cases, {} failures", s.name, s.cases, s.failures);
    }
    let _ = writeln!(
        out,
        "selftest: {} ({:.1} ms)",
        if report.passed { "pass" } else { "FAIL" },
        report.timing_ms
    );
    out
}

/// Renders any outcome in the requested format.
pub fn render_outcome(outcome: &RunOutcome, format: OutputFormat) -> String {
    match (outcome, format) {
        (RunOutcome::Analysis(r), OutputFormat::Json) => {
            serde_json::to_string_pretty(r).expect("report serialization cannot fail")
        }
        (RunOutcome::Analysis(r), OutputFormat::Text) => render_analysis_text(r),
        (RunOutcome::Selftest(r), OutputFormat::Json) => {
            serde_json::to_string_pretty(r).expect("report serialization cannot fail")
        }
        (RunOutcome::Selftest(r), OutputFormat::Text) => render_selftest_text(r),
    }
}

// ---------------------------------------------------------------------------
// Argument parsing

/// Decide center vs. focus for rigid systems `dr/dθ = P₁r² + Pₙr^{n+1}`.
#[derive(Parser, Debug)]
#[command(name = "centerfocus", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Full report: moments, verdict, focal values, composition, conditions.
    Analyze(RunArgs),
    /// Exact moments M_j and the center/focus verdict.
    Moments(RunArgs),
    /// Return-map focal values V_k.
    Focal(RunArgs),
    /// Composition factorization Pn = P1 · u(P̄1).
    Compose(RunArgs),
    /// Verify the combinatorial identity suites (exit 2 on failure).
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Input system JSON path; "-" reads stdin.
    #[arg(long)]
    input: String,
    /// Series truncation order K (default 2n+2).
    #[arg(long)]
    order: Option<u32>,
    /// Include the floating-point return-map cross-check.
    #[arg(long)]
    numeric: bool,
    /// Residual tolerance for the numeric center test.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Comma-separated radii for the numeric cross-check, e.g. "0.02,0.05,0.1".
    #[arg(long, value_parser = parse_ladder_arg)]
    ladder: Option<LadderArg>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

/// Parsed `--ladder` value.
#[derive(Clone, Debug)]
struct LadderArg(Vec<f64>);

fn parse_ladder_arg(s: &str) -> Result<LadderArg, String> {
    let vals = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad ladder entry {t:?}: {e}")))
        .collect::<Result<Vec<f64>, String>>()?;
    if vals.is_empty() {
        return Err("ladder must be nonempty".into());
    }
    Ok(LadderArg(vals))
}

impl Cli {
    /// Lowers parsed arguments into an [`AnalysisRequest`].
    pub fn into_request(self) -> AnalysisRequest {
        match self.command {
            CliCommand::Selftest(args) => AnalysisRequest {
                input_path: String::new(),
                command: Command::Selftest,
                order: None,
                numeric: false,
                tol: 1e-9,
                format: args.format,
                ladder: None,
            },
            CliCommand::Analyze(a) => from_run_args(Command::Analyze, a),
            CliCommand::Moments(a) => from_run_args(Command::Moments, a),
            CliCommand::Focal(a) => from_run_args(Command::Focal, a),
            CliCommand::Compose(a) => from_run_args(Command::Compose, a),
        }
    }
}

fn from_run_args(command: Command, a: RunArgs) -> AnalysisRequest {
    AnalysisRequest {
        input_path: a.input,
        command,
        order: a.order,
        numeric: a.numeric,
        tol: a.tol,
        format: a.format,
        ladder: a.ladder.map(|l| l.0),
    }
}

/// Binary entry point: parse arguments, run, print, map to the exit code.
pub fn main_entry() -> u8 {
    let req = Cli::parse().into_request();
    match run(&req) {
        Ok(outcome) => {
            println!("{}", render_outcome(&outcome, req.format));
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

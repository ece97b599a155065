//! Deterministic verification suites and their JSON-lines reports.
//!
//! Every suite draws its random inputs from ChaCha8 seeded with the config
//! seed, on a stream numbered by the suite, so suites are independent of
//! each other and of execution order. Records carry the serialized inputs
//! and their SHA-256 digest; failures also carry a witness.

mod exact;
mod numeric;
mod sample;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::rational::{fmt_rational, int, rat, Rational};

pub use sample::{perturb_root, root_system_member};

pub const MAX_DIMENSION: usize = 8;
pub const MAX_DEGREE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Geometry,
    Commutativity,
    Intertwining,
    Inverse,
    Kummer,
    Laplacian,
    MultivarEigen,
    Transform,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Geometry,
        Suite::Commutativity,
        Suite::Intertwining,
        Suite::Inverse,
        Suite::Kummer,
        Suite::Laplacian,
        Suite::MultivarEigen,
        Suite::Transform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Commutativity => "commutativity",
            Suite::Intertwining => "intertwining",
            Suite::Inverse => "inverse",
            Suite::Kummer => "kummer",
            Suite::Laplacian => "laplacian",
            Suite::MultivarEigen => "multivar_eigen",
            Suite::Transform => "transform",
        }
    }

    /// The injected fault this suite is built to catch.
    pub fn designated_fault(self) -> Fault {
        match self {
            Suite::Geometry | Suite::MultivarEigen => Fault::PerturbRoot,
            Suite::Commutativity | Suite::Inverse | Suite::Kummer | Suite::Transform => Fault::PerturbKappa,
            Suite::Intertwining | Suite::Laplacian => Fault::DropProjection,
        }
    }

    /// Suites whose checks are indexed by polynomial degree. With
    /// `max_degree = 0` only these run, restricted to constants.
    pub fn is_polynomial(self) -> bool {
        matches!(self, Suite::Commutativity | Suite::Intertwining | Suite::Inverse | Suite::Laplacian)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Error::invalid(format!("suites: unknown suite '{s}' (expected one of {})", names.join(", ")))
        })
    }
}

/// Deliberate defects used to confirm that the suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// The second operator (or the inverse, or the eigenfunction) uses
    /// kappa_1 + 1/2 instead of kappa_1.
    PerturbKappa,
    /// alpha_1 is replaced by alpha_1 + e_N / 3.
    PerturbRoot,
    /// The operator loses the first projection term (kappa_1 = 0) while the
    /// reference side keeps it.
    DropProjection,
}

impl Fault {
    pub fn name(self) -> &'static str {
        match self {
            Fault::PerturbKappa => "perturb-kappa",
            Fault::PerturbRoot => "perturb-root",
            Fault::DropProjection => "drop-projection",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub eigen_residual: f64,
    pub ode_residual: f64,
    pub series_integral: f64,
    pub chi_plane_wave: f64,
    pub numeric_inverse: f64,
    pub multivar_residual: f64,
    pub transform_bound_slack: f64,
    pub factorization: f64,
    pub transform_reference: f64,
    pub linearity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen_residual: 1e-12,
            ode_residual: 1e-10,
            series_integral: 1e-11,
            chi_plane_wave: 1e-11,
            numeric_inverse: 1e-8,
            multivar_residual: 1e-10,
            transform_bound_slack: 1e-9,
            factorization: 1e-7,
            transform_reference: 1e-8,
            linearity: 1e-10,
        }
    }
}

impl Tolerances {
    /// Sets one field by name, as given on the command line.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::invalid(format!("tolerance {name} must be positive and finite, got {value}")));
        }
        let slot = match name {
            "eigen_residual" => &mut self.eigen_residual,
            "ode_residual" => &mut self.ode_residual,
            "series_integral" => &mut self.series_integral,
            "chi_plane_wave" => &mut self.chi_plane_wave,
            "numeric_inverse" => &mut self.numeric_inverse,
            "multivar_residual" => &mut self.multivar_residual,
            "transform_bound_slack" => &mut self.transform_bound_slack,
            "factorization" => &mut self.factorization,
            "transform_reference" => &mut self.transform_reference,
            "linearity" => &mut self.linearity,
            other => return Err(Error::invalid(format!("tolerances: unknown tolerance '{other}'"))),
        };
        *slot = value;
        Ok(())
    }

    fn fields(&self) -> [f64; 10] {
        [
            self.eigen_residual,
            self.ode_residual,
            self.series_integral,
            self.chi_plane_wave,
            self.numeric_inverse,
            self.multivar_residual,
            self.transform_bound_slack,
            self.factorization,
            self.transform_reference,
            self.linearity,
        ]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub max_dimension: usize,
    pub max_degree: u32,
    /// Multiplicities for the intertwining, inverse and eigenfunction suites.
    pub kappa_set: Vec<Rational>,
    /// Random tuples drawn by the commutativity and geometry suites.
    pub samples: usize,
    pub tolerances: Tolerances,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            seed: 0,
            max_dimension: 6,
            max_degree: 6,
            kappa_set: vec![rat(1, 2), int(1), rat(3, 2), int(2)],
            samples: 200,
            tolerances: Tolerances::default(),
            fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.suites.is_empty() {
            return Err(Error::invalid("suites: at least one suite is required"));
        }
        if !(1..=MAX_DIMENSION).contains(&self.max_dimension) {
            return Err(Error::invalid(format!(
                "max_dimension: must lie in 1..={MAX_DIMENSION}, got {}",
                self.max_dimension
            )));
        }
        if self.max_degree > MAX_DEGREE {
            return Err(Error::invalid(format!("max_degree: must be at most {MAX_DEGREE}, got {}", self.max_degree)));
        }
        if self.kappa_set.is_empty() {
            return Err(Error::invalid("kappa_set: must not be empty"));
        }
        if let Some(k) = self.kappa_set.iter().find(|k| **k <= int(0) || **k > int(10)) {
            return Err(Error::invalid(format!("kappa_set: {} must lie in (0, 10]", fmt_rational(k))));
        }
        if self.samples == 0 {
            return Err(Error::invalid("samples: must be positive"));
        }
        if self.tolerances.fields().iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(Error::invalid("tolerances: every tolerance must be positive and finite"));
        }
        Ok(())
    }

    /// The selected suites in canonical order without repeats.
    pub fn selected(&self) -> Vec<Suite> {
        let mut s = self.suites.clone();
        s.sort();
        s.dedup();
        s
    }

    fn echo(&self) -> Value {
        json!({
            "suites": self.selected().iter().map(|s| s.name()).collect::<Vec<_>>(),
            "seed": self.seed,
            "max_dimension": self.max_dimension,
            "max_degree": self.max_degree,
            "kappa_set": self.kappa_set.iter().map(fmt_rational).collect::<Vec<_>>(),
            "samples": self.samples,
            "tolerances": self.tolerances,
            "fault": self.fault.map(Fault::name),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub name: String,
    pub inputs: Value,
    pub inputs_digest: String,
    pub status: Status,
    /// Present exactly when the check failed: the inputs again plus the
    /// offending value.
    pub witness: Option<Value>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Result of one check body: `Ok(detail)` passes, `Err((detail, evidence))` fails.
pub(crate) type Outcome = std::result::Result<String, (String, Value)>;

pub(crate) fn digest(inputs: &Value) -> String {
    hex::encode(Sha256::digest(inputs.to_string().as_bytes()))
}

/// Runs one check and wraps it in a record. Library errors count as failures.
pub(crate) fn check(
    suite: Suite,
    name: impl Into<String>,
    inputs: Value,
    body: impl FnOnce() -> Result<Outcome>,
) -> CheckRecord {
    let start = Instant::now();
    let outcome = match body() {
        Ok(o) => o,
        Err(e) => Err((format!("error: {e}"), json!({ "error": e.to_string() }))),
    };
    let elapsed_us = Some(start.elapsed().as_micros() as u64);
    let inputs_digest = digest(&inputs);
    match outcome {
        Ok(detail) => CheckRecord {
            suite: suite.name(),
            name: name.into(),
            inputs,
            inputs_digest,
            status: Status::Pass,
            witness: None,
            detail,
            elapsed_us,
        },
        Err((detail, evidence)) => CheckRecord {
            suite: suite.name(),
            name: name.into(),
            witness: Some(json!({ "inputs": inputs.clone(), "evidence": evidence })),
            inputs,
            inputs_digest,
            status: Status::Fail,
            detail,
            elapsed_us,
        },
    }
}

pub(crate) struct Ctx<'a> {
    pub config: &'a SuiteConfig,
    pub rng: ChaCha8Rng,
    pub suite: Suite,
}

impl Ctx<'_> {
    pub fn fault(&self, which: Fault) -> bool {
        self.config.fault == Some(which)
    }

    pub fn tol(&self) -> &Tolerances {
        &self.config.tolerances
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub suite: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub tool: &'static str,
    pub version: &'static str,
    pub precision: &'static str,
    pub config: Value,
    pub suites: Vec<SuiteSummary>,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// One JSON object per line. Timings are dropped unless requested, so the
    /// default output depends only on the config.
    pub fn to_jsonl(&self, timing: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line = if timing {
                serde_json::to_string(r)
            } else {
                serde_json::to_string(&CheckRecord { elapsed_us: None, ..r.clone() })
            };
            out.push_str(&line.expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.summary).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Writes `records.jsonl` and `summary.json` into `dir`.
    pub fn write(&self, dir: &Path, timing: bool) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("records.jsonl"), self.to_jsonl(timing))?;
        fs::write(dir.join("summary.json"), self.summary_json())
    }
}

fn run_one(config: &SuiteConfig, suite: Suite) -> Vec<CheckRecord> {
    if config.max_degree == 0 && !suite.is_polynomial() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(suite as u64);
    let mut ctx = Ctx { config, rng, suite };
    match suite {
        Suite::Geometry => exact::geometry(&mut ctx),
        Suite::Commutativity => exact::commutativity(&mut ctx),
        Suite::Intertwining => exact::intertwining(&mut ctx),
        Suite::Inverse => exact::inverse(&mut ctx),
        Suite::Laplacian => exact::laplacian(&mut ctx),
        Suite::Kummer => numeric::kummer(&mut ctx),
        Suite::MultivarEigen => numeric::multivar_eigen(&mut ctx),
        Suite::Transform => numeric::transform(&mut ctx),
    }
}

/// Runs the selected suites on the rayon pool and assembles the report in
/// canonical suite order.
pub fn run_suites(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let selected = config.selected();
    let per_suite: Vec<(Suite, Vec<CheckRecord>)> = selected.par_iter().map(|&s| (s, run_one(config, s))).collect();

    let mut records = Vec::new();
    let mut suites = Vec::new();
    for (suite, recs) in per_suite {
        let failed = recs.iter().filter(|r| !r.passed()).count();
        suites.push(SuiteSummary { suite: suite.name(), passed: recs.len() - failed, failed });
        records.extend(recs);
    }
    let failed = suites.iter().map(|s| s.failed).sum();
    let summary = Summary {
        tool: "projdunkl",
        version: env!("CARGO_PKG_VERSION"),
        precision: Precision::current().name(),
        config: config.echo(),
        passed: records.len() - failed,
        failed,
        suites,
    };
    Ok(VerificationReport { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_guards() {
        let ok = SuiteConfig::default();
        ok.validate().unwrap();
        for (bad, field) in [
            (SuiteConfig { max_dimension: 9, ..ok.clone() }, "max_dimension"),
            (SuiteConfig { max_dimension: 0, ..ok.clone() }, "max_dimension"),
            (SuiteConfig { max_degree: 11, ..ok.clone() }, "max_degree"),
            (SuiteConfig { kappa_set: vec![], ..ok.clone() }, "kappa_set"),
            (SuiteConfig { kappa_set: vec![int(0)], ..ok.clone() }, "kappa_set"),
            (SuiteConfig { suites: vec![], ..ok.clone() }, "suites"),
            (SuiteConfig { samples: 0, ..ok.clone() }, "samples"),
        ] {
            let msg = bad.validate().unwrap_err().to_string();
            assert!(msg.contains(field), "{msg}");
        }
        let mut t = Tolerances::default();
        assert!(t.set("linearity", 1e-6).is_ok());
        assert!(t.set("linearity", -1.0).is_err());
        assert!(t.set("nope", 1.0).is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().unwrap_err().to_string().contains("suites"));
    }

    #[test]
    fn check_wraps_errors_as_failures() {
        let r = check(Suite::Kummer, "x", json!({"a": 1}), || Err(Error::NonConvergence(3)));
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.unwrap()["inputs"]["a"] == 1);
        let r = check(Suite::Kummer, "x", json!({"a": 1}), || Ok(Ok("fine".into())));
        assert!(r.passed() && r.witness.is_none());
        assert_eq!(r.inputs_digest, digest(&json!({"a": 1})));
        assert_eq!(r.inputs_digest.len(), 64);
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, each with a pinned
//! tolerance and wall-clock limit. Exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use projdunkl_core::gamma_ratio::{GammaPoly, GammaRatio};
use projdunkl_core::intertwine::{chi_inverse_one_var, chi_one_var};
use projdunkl_core::rational::{int, rat};
use projdunkl_core::testfn::CATALOG;
use projdunkl_core::verify::{run_suites, CheckRecord, Suite, SuiteConfig, Tolerances};

type Verdict = Result<String, String>;

/// Tolerances used by every criterion, written out rather than inherited.
fn pinned() -> Tolerances {
    Tolerances {
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

fn config(suite: Suite) -> SuiteConfig {
    SuiteConfig { suites: vec![suite], tolerances: pinned(), ..SuiteConfig::default() }
}

fn records(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, String> {
    run_suites(cfg).map(|r| r.records).map_err(|e| e.to_string())
}

/// All records named in `names` must pass; at least `min` of them must exist.
fn judge(recs: &[CheckRecord], names: &[&str], min: usize) -> Verdict {
    let chosen: Vec<&CheckRecord> = recs.iter().filter(|r| names.contains(&r.name.as_str())).collect();
    if chosen.len() < min {
        return Err(format!("only {} checks of {:?}, need {min}", chosen.len(), names));
    }
    let failed: Vec<&&CheckRecord> = chosen.iter().filter(|r| !r.passed()).collect();
    match failed.first() {
        None => Ok(format!("{} checks", chosen.len())),
        Some(first) => Err(format!(
            "{}/{} failed; first: {} ({}) inputs {}",
            failed.len(),
            chosen.len(),
            first.name,
            first.detail,
            first.inputs
        )),
    }
}

fn commutativity() -> Verdict {
    let cfg = SuiteConfig { samples: 200, max_dimension: 6, max_degree: 6, ..config(Suite::Commutativity) };
    let recs = records(&cfg)?;
    for r in recs.iter().filter(|r| r.name == "commutator") {
        let family = r.inputs["family"].as_str().unwrap_or("");
        if family != "A" && family != "B" {
            return Err(format!("unexpected family {family}"));
        }
    }
    judge(&recs, &["commutator"], 200)
}

fn intertwining() -> Verdict {
    let cfg = SuiteConfig {
        max_dimension: 6,
        max_degree: 8,
        kappa_set: vec![rat(1, 2), int(1), rat(3, 2), int(2)],
        ..config(Suite::Intertwining)
    };
    // A and B shapes for N = 2..6, one record per degree 0..=8
    judge(&records(&cfg)?, &["intertwining"], 2 * 5 * 9)
}

fn left_inverse() -> Verdict {
    let kappas = vec![rat(1, 2), int(1), rat(3, 2), int(2), rat(5, 2)];
    for kappa in &kappas {
        for m in 0..=6 {
            let p = GammaPoly::monomial(m, GammaRatio::one());
            let back = chi_inverse_one_var(&chi_one_var(&p, kappa).map_err(|e| e.to_string())?, kappa)
                .map_err(|e| e.to_string())?;
            if back != p {
                return Err(format!("kappa = {kappa}, m = {m}: got {back}"));
            }
        }
    }
    let cfg = SuiteConfig { max_degree: 6, kappa_set: kappas, ..config(Suite::Inverse) };
    judge(&records(&cfg)?, &["left_inverse_exact", "left_inverse_numeric"], 10)
}

fn eigenfunction() -> Verdict {
    // one record per kappa and residual kind, each sweeping 3 lambdas x 6 points
    judge(&records(&config(Suite::Kummer))?, &["eigen_residual", "ode_residual"], 6)
}

fn kummer_bounds() -> Verdict {
    judge(&records(&config(Suite::Kummer))?, &["unit_bound", "series_integral"], 4)
}

fn transform() -> Verdict {
    let recs = records(&config(Suite::Transform))?;
    let covered: HashSet<&str> =
        recs.iter().filter(|r| r.name == "sup_bound").filter_map(|r| r.inputs["function"].as_str()).collect();
    if let Some(missing) = CATALOG.iter().find(|f| !covered.contains(**f)) {
        return Err(format!("catalog function {missing} has no sup_bound check"));
    }
    judge(&recs, &["sup_bound", "factorization"], CATALOG.len() + 2)
}

fn laplacian() -> Verdict {
    let cfg = SuiteConfig { max_dimension: 4, max_degree: 6, ..config(Suite::Laplacian) };
    // 3 + 9 + 27 + 81 multiplicity tuples for N = 1..4
    judge(&records(&cfg)?, &["laplacian"], 120)
}

fn multivariate() -> Verdict {
    let cfg = SuiteConfig { max_dimension: 5, ..config(Suite::MultivarEigen) };
    judge(&records(&cfg)?, &["eigen_residual"], 12)
}

fn fault_injection() -> Verdict {
    let mut lines = Vec::new();
    for suite in Suite::ALL {
        let base = SuiteConfig { max_dimension: 4, max_degree: 4, samples: 50, ..config(suite) };
        let clean: HashSet<String> =
            records(&base)?.into_iter().filter(|r| !r.passed()).map(|r| r.inputs_digest).collect();
        let faulted =
            run_suites(&SuiteConfig { fault: Some(suite.designated_fault()), ..base }).map_err(|e| e.to_string())?;
        if faulted.all_passed() {
            return Err(format!("{} passes under {}", suite.name(), suite.designated_fault().name()));
        }
        let fresh: Vec<&CheckRecord> = faulted.failures().filter(|r| !clean.contains(&r.inputs_digest)).collect();
        if fresh.is_empty() {
            return Err(format!("{} shows no new failure under {}", suite.name(), suite.designated_fault().name()));
        }
        if let Some(r) = fresh.iter().find(|r| r.witness.is_none()) {
            return Err(format!("{}/{} failed without a witness", suite.name(), r.name));
        }
        lines.push(format!("{}:{}", suite.name(), fresh.len()));
    }
    Ok(format!("new failures {}", lines.join(" ")))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Verdict,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "exact commutativity", limit: Duration::from_secs(60), run: commutativity },
    Criterion { id: 2, title: "exact intertwining", limit: Duration::from_secs(120), run: intertwining },
    Criterion { id: 3, title: "left inverse", limit: Duration::from_secs(10), run: left_inverse },
    Criterion { id: 4, title: "kummer eigenfunction", limit: Duration::from_secs(5), run: eigenfunction },
    Criterion { id: 5, title: "kummer bounds", limit: Duration::from_secs(10), run: kummer_bounds },
    Criterion { id: 6, title: "transform bound and factorization", limit: Duration::from_secs(60), run: transform },
    Criterion { id: 7, title: "laplacian consistency", limit: Duration::from_secs(30), run: laplacian },
    Criterion { id: 8, title: "multivariate eigenfunctions", limit: Duration::from_secs(20), run: multivariate },
    Criterion { id: 9, title: "fault injection", limit: Duration::from_secs(30), run: fault_injection },
];

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(_) if elapsed > c.limit => {
                Err(format!("took {:.1}s, limit {}s", elapsed.as_secs_f64(), c.limit.as_secs()))
            }
            v => v,
        };
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {} {tag} {} [{:.1}s]: {detail}", c.id, c.title, elapsed.as_secs_f64());
        failures += usize::from(verdict.is_err());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}

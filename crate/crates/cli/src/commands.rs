// Copyright 2026 The distinguish Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Subcommand implementations. Each command renders its whole output into a
//! string before anything is printed, so failures never leave partial output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use thiserror::Error;

use distinguish_core::ensembles::{is_linearly_independent, DocumentError, EnsembleSpec, LoadedEnsemble};
use distinguish_core::extremal::{n0_profile, p_hyp_lower_bound, p_hyp_upper_bound};
use distinguish_core::fmt::sig;
use distinguish_core::measures::{
    entropy_two_state, helstrom, hyp_success_probability, jaeger_shimony_ensemble,
    optimality_certificate, p_hyp_symmetric, p_usd_symmetric, square_root_measurement,
    MeasureReport, Method,
};
use distinguish_core::oracles::{entropy_oracle, usd_oracle};
use distinguish_core::ordering::{
    figure1_grid, number, reproduce_worked_example, REFERENCE_P_HYP_1_TOL, REFERENCE_P_HYP_2,
    REFERENCE_P_HYP_2_TOL,
};
use distinguish_core::verify::run_all;

use crate::{Command, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_IO: u8 = 4;
pub const EXIT_VERIFICATION: u8 = 5;

/// Refinement rounds used when the unambiguous optimum has no closed form.
const USD_REFINEMENT_STEPS: usize = 25;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Invariant(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Invariant(_) => EXIT_INVARIANT,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Invalid(inner) => CliError::Invariant(inner.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            code: EXIT_OK,
        }
    }
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Compute { input, format } => compute(input, *format),
        Command::Bounds { n, p_usd, format } => bounds(*n, *p_usd, *format),
        Command::Scan {
            n,
            p_usd_steps,
            epsilon_steps,
            output,
            format,
        } => scan(*n, *p_usd_steps, *epsilon_steps, output, *format),
        Command::Reproduce { format } => reproduce(*format),
        Command::Verify { seed, verbose } => verify(*seed, *verbose),
    }
}

fn human(x: f64) -> String {
    sig(x, 4)
}

fn invariant(e: distinguish_core::Error) -> CliError {
    CliError::Invariant(e.to_string())
}

/// Measure values for a loaded ensemble.
pub fn measure_reports(loaded: &LoadedEnsemble) -> Result<Vec<MeasureReport>, CliError> {
    let e = &loaded.ensemble;
    let independent = is_linearly_independent(e);
    let mut out = Vec::new();

    if let Some(sym) = &loaded.symmetric {
        out.push(MeasureReport::probability("p_usd", p_usd_symmetric(sym), Method::ClosedForm, None).map_err(invariant)?);
        let certified = square_root_measurement(e)
            .and_then(|m| optimality_certificate(e, &m))
            .unwrap_or(false);
        out.push(
            MeasureReport::probability("p_hyp", p_hyp_symmetric(sym), Method::ClosedForm, Some(certified))
                .map_err(invariant)?,
        );
    } else {
        let two_state_usd = if e.len() == 2 {
            jaeger_shimony_ensemble(e).ok()
        } else {
            None
        };
        if let Some(v) = two_state_usd {
            out.push(MeasureReport::probability("p_usd", v, Method::ClosedForm, None).map_err(invariant)?);
        } else if independent {
            let sol = usd_oracle(e, USD_REFINEMENT_STEPS).map_err(invariant)?;
            out.push(MeasureReport::probability("p_usd", sol.average, Method::Oracle, None).map_err(invariant)?);
        }
        if e.len() == 2 {
            out.push(MeasureReport::probability("p_hyp", helstrom(e).map_err(invariant)?, Method::ClosedForm, None).map_err(invariant)?);
        } else {
            let m = square_root_measurement(e).map_err(invariant)?;
            let p = hyp_success_probability(e, &m).map_err(invariant)?;
            let certified = optimality_certificate(e, &m).map_err(invariant)?;
            out.push(MeasureReport::probability("p_hyp", p.clamp(0.0, 1.0), Method::Oracle, Some(certified)).map_err(invariant)?);
        }
    }

    let entropy = if e.len() == 2 {
        MeasureReport::entropy("entropy_bits", entropy_two_state(e).map_err(invariant)?, Method::ClosedForm)
    } else {
        MeasureReport::entropy("entropy_bits", entropy_oracle(e).map_err(invariant)?, Method::Oracle)
    };
    out.push(entropy.map_err(invariant)?);
    Ok(out)
}

fn compute(input: &Path, format: Format) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
    let loaded = EnsembleSpec::parse(&text)?.build().map_err(invariant)?;
    let reports = measure_reports(&loaded)?;
    let independent = is_linearly_independent(&loaded.ensemble);

    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "states: {}  dim: {}  linearly independent: {}  scale factor: {}",
                loaded.ensemble.len(),
                loaded.ensemble.dim(),
                independent,
                human(loaded.scale_factor)
            );
            for r in &reports {
                let method = match r.method {
                    Method::ClosedForm => "closed form",
                    Method::Oracle => "oracle",
                };
                let cert = match r.certificate_ok {
                    Some(true) => "  certificate: ok",
                    Some(false) => "  certificate: FAILED",
                    None => "",
                };
                let _ = writeln!(s, "{:<13} {:<10} ({method}){cert}", r.measure_name, human(r.value));
            }
            s
        }
        Format::Json | Format::Csv => {
            if format == Format::Csv {
                return Err(CliError::Input("compute supports --format json|text".into()));
            }
            let measures: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "measure": r.measure_name,
                        "value": number(r.value),
                        "method": r.method,
                        "certificate_ok": r.certificate_ok,
                    })
                })
                .collect();
            let doc = json!({
                "ensemble": loaded.to_spec(),
                "scale_factor": loaded.scale_factor,
                "states": loaded.ensemble.len(),
                "dim": loaded.ensemble.dim(),
                "linearly_independent": independent,
                "measures": measures,
            });
            pretty(&doc)
        }
    };
    Ok(Outcome::ok(stdout))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn bounds(n: usize, p_usd: f64, format: Format) -> Result<Outcome, CliError> {
    let input = |e: distinguish_core::Error| CliError::Input(e.to_string());
    let lower = p_hyp_lower_bound(n, p_usd).map_err(input)?;
    let upper = p_hyp_upper_bound(n, p_usd).map_err(input)?;
    let profile = n0_profile(n, p_usd).map_err(input)?;
    let stdout = match format {
        Format::Text => {
            let mut s = format!(
                "n = {n}, P_USD = {}\nlower bound (N0 = {}): {}\nupper bound (N0 = 1): {}\n",
                human(p_usd),
                n - 1,
                human(lower),
                human(upper)
            );
            for (k, v) in profile.iter().enumerate() {
                let _ = writeln!(s, "  N0 = {:<3} P_HYP = {}", k + 1, human(*v));
            }
            s
        }
        Format::Json => pretty(&json!({
            "n": n,
            "p_usd": number(p_usd),
            "lower": number(lower),
            "upper": number(upper),
            "profile": profile
                .iter()
                .enumerate()
                .map(|(k, v)| json!({"n0": k + 1, "p_hyp": number(*v)}))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("n0,p_hyp\n");
            for (k, v) in profile.iter().enumerate() {
                let _ = writeln!(s, "{},{}", k + 1, sig(*v, 12));
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

/// Writes `contents` to a temporary file beside `path` and renames it into place.
pub fn write_atomically(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn scan(
    n: usize,
    p_usd_steps: usize,
    epsilon_steps: usize,
    output: &Path,
    format: Format,
) -> Result<Outcome, CliError> {
    let grid = figure1_grid(n, p_usd_steps, epsilon_steps)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let body = match format {
        Format::Csv => grid.to_csv(),
        Format::Json => pretty(&grid.to_json()),
        Format::Text => return Err(CliError::Input("scan supports --format csv|json".into())),
    };
    write_atomically(output, &body)?;
    let s = grid.summary();
    Ok(Outcome::ok(format!(
        "wrote {} valid cells to {}\nratio > 1 in {} cells ({}% of valid)\nratio < 1 in {} cells\nmax ratio {} at P_USD(E1) = {}, epsilon = {}\n",
        s.valid_cells,
        output.display(),
        s.cells_above_one,
        human(100.0 * s.fraction_above_one),
        s.cells_below_one,
        human(s.max_ratio),
        human(s.max_p_usd_1),
        human(s.max_epsilon),
    )))
}

fn reproduce(format: Format) -> Result<Outcome, CliError> {
    let w = reproduce_worked_example().map_err(invariant)?;
    let code = if w.pass { EXIT_OK } else { EXIT_VERIFICATION };
    let stdout = match format {
        Format::Json | Format::Csv => pretty(&json!({
            "n": 3,
            "p_usd_1": number(w.p_usd_1),
            "p_usd_2": number(w.p_usd_2),
            "p_hyp_1": number(w.p_hyp_1),
            "p_hyp_2": number(w.p_hyp_2),
            "ratio": number(w.ratio),
            "witness": w.witness,
            "pass": w.pass,
        })),
        Format::Text => format!(
            "three symmetric states, E1 on the lower bound, E2 on the upper bound\n\
             P_USD(E1) = {}\nP_USD(E2) = {}\n\
             P_HYP(E1) = {}  (expected 8/9 within {:e})\n\
             P_HYP(E2) = {}  (expected {} within {:e})\n\
             ratio P_HYP(E2)/P_HYP(E1) = {}\n\
             reversal witness: {}\n{}\n",
            human(w.p_usd_1),
            human(w.p_usd_2),
            human(w.p_hyp_1),
            REFERENCE_P_HYP_1_TOL,
            human(w.p_hyp_2),
            REFERENCE_P_HYP_2,
            REFERENCE_P_HYP_2_TOL,
            human(w.ratio),
            if w.witness { "present" } else { "absent" },
            if w.pass { "PASS" } else { "FAIL" },
        ),
    };
    Ok(Outcome { stdout, code })
}

fn verify(seed: u64, verbose: bool) -> Result<Outcome, CliError> {
    let results = run_all(seed);
    let mut s = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        if verbose {
            let _ = writeln!(
                s,
                "{status} {:<32} cases {:>6}  worst {:<10} tolerance {}",
                r.name,
                r.cases,
                human(r.worst_deviation),
                human(r.tolerance)
            );
        } else {
            let _ = writeln!(s, "{status} {}", r.name);
        }
    }
    let all = results.iter().all(|r| r.passed);
    let _ = writeln!(s, "{}", if all { "all suites passed" } else { "verification FAILED" });
    Ok(Outcome {
        stdout: s,
        code: if all { EXIT_OK } else { EXIT_VERIFICATION },
    })
}

//! Verification runs: configuration, suites, and the JSON/text report.

mod omega;
mod suites;

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use omega::{parse_element, OmegaSpec};

use crate::error::{Error, Result};
use crate::liealg::{catalog, catalog_entries, parse_algebra, AlgebraElement, LieAlgebra};
use crate::rmat::Method;
use crate::tol::Tolerances;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Validate,
    Rmatrix,
    Cdybe,
    Tensor,
    Equivariance,
    Realness,
    Identities,
    Uniqueness,
}

impl Suite {
    /// Execution order: validation first, algebra-free suites last.
    pub const ALL: [Suite; 8] = [
        Suite::Validate,
        Suite::Rmatrix,
        Suite::Cdybe,
        Suite::Tensor,
        Suite::Equivariance,
        Suite::Realness,
        Suite::Identities,
        Suite::Uniqueness,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Rmatrix => "rmatrix",
            Suite::Cdybe => "cdybe",
            Suite::Tensor => "tensor",
            Suite::Equivariance => "equivariance",
            Suite::Realness => "realness",
            Suite::Identities => "identities",
            Suite::Uniqueness => "uniqueness",
        }
    }

    fn needs_algebra(self) -> bool {
        !matches!(self, Suite::Identities | Suite::Uniqueness)
    }

    fn needs_omega(self) -> bool {
        self.needs_algebra() && self != Suite::Validate
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Usage("no suites selected".into()));
        }
        out.sort_by_key(|s| Suite::ALL.iter().position(|t| t == s));
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|t| t.as_str()).collect();
            Error::Usage(format!("unknown suite `{s}` (expected one of {})", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Usage(format!("unknown output `{other}` (text|json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    /// Catalog expression or path to an algebra file.
    pub algebra: Option<String>,
    pub omega: Option<OmegaSpec>,
    pub method: Method,
    pub tolerances: Tolerances,
    pub output: OutputFormat,
    pub suites: Vec<Suite>,
    /// Seeds the equivariance directions and the identity sample points.
    pub seed: u64,
    /// Parameter bound for the identity sweep.
    pub max_order: usize,
    /// Record wall-clock time per entry; breaks run-to-run byte equality.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            algebra: None,
            omega: None,
            method: Method::Spectral,
            tolerances: Tolerances::default(),
            output: OutputFormat::Text,
            suites: Suite::ALL.to_vec(),
            seed: 42,
            max_order: 10,
            timings: false,
        }
    }
}

/// One numeric result with the tolerance it is judged against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub name: String,
    /// `None` when the computation failed.
    pub value: Option<f64>,
    pub tolerance: f64,
    /// `below` passes when `value < tolerance`, `above` when `value > tolerance`.
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Below,
    Above,
}

impl Measurement {
    pub fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let pass = value.is_finite() && value < tolerance;
        Self { name: name.into(), value: value.is_finite().then_some(value), tolerance, bound: Bound::Below, pass }
    }

    pub fn above(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        let pass = value.is_finite() && value > tolerance;
        Self { name: name.into(), value: value.is_finite().then_some(value), tolerance, bound: Bound::Above, pass }
    }
}

/// Inputs of one entry, recorded for reproduction.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub omega: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direction: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

pub(crate) fn coords(w: &AlgebraElement) -> Vec<[f64; 2]> {
    w.coords.iter().map(|z: &Complex64| [z.re, z.im]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub suite: Suite,
    pub trial: Option<usize>,
    pub method: Option<Method>,
    pub inputs: Inputs,
    pub measurements: Vec<Measurement>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_s: Option<f64>,
}

impl SuiteEntry {
    fn new(suite: Suite, trial: Option<usize>, method: Option<Method>, inputs: Inputs) -> Self {
        Self { suite, trial, method, inputs, measurements: Vec::new(), error: None, pass: false, wall_time_s: None }
    }

    fn finish(mut self, outcome: Result<Vec<Measurement>>) -> Self {
        match outcome {
            Ok(m) => {
                self.pass = m.iter().all(|x| x.pass);
                self.measurements = m;
            }
            Err(e) => {
                self.error = Some(format!("{e:?}: {e}"));
                self.pass = false;
            }
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub suites: Vec<SuiteEntry>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.suites {
            let trial = e.trial.map(|t| format!("#{t}")).unwrap_or_default();
            let status = if e.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {}{trial}", e.suite);
            if let Some(m) = e.method {
                let _ = write!(out, " [{m}]");
            }
            if let Some(d) = &e.inputs.detail {
                let _ = write!(out, " {d}");
            }
            let _ = writeln!(out);
            for m in &e.measurements {
                let v = m.value.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "n/a".into());
                let op = match m.bound {
                    Bound::Below => "<",
                    Bound::Above => ">",
                };
                let mark = if m.pass { "ok" } else { "FAILED" };
                let _ = writeln!(out, "    {:<28} {v:>11} {op} {:.1e}  {mark}", m.name, m.tolerance);
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "    error: {err}");
            }
        }
        let passed = self.suites.iter().filter(|e| e.pass).count();
        let _ = writeln!(
            out,
            "{} entries, {} passed, {} failed: {}",
            self.suites.len(),
            passed,
            self.suites.len() - passed,
            if self.pass { "PASS" } else { "FAIL" }
        );
        out
    }

    pub fn render(&self) -> String {
        match self.config.output {
            OutputFormat::Text => self.to_text(),
            OutputFormat::Json => self.to_json() + "\n",
        }
    }
}

/// Catalog expression, or an algebra file if the argument names an existing path.
pub fn load_algebra(spec: &str) -> Result<LieAlgebra> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read `{spec}`: {e}")))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or(spec);
        return parse_algebra(name, &text);
    }
    catalog(spec)
}

/// Runs the configured suites. `Err` means a usage or parse problem (exit 2);
/// verification failures are recorded in the report (exit 1).
pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    if config.suites.is_empty() {
        return Err(Error::Usage("no suites selected".into()));
    }
    let needs_algebra = config.suites.iter().any(|s| s.needs_algebra());
    let needs_omega = config.suites.iter().any(|s| s.needs_omega());
    let algebra = match (&config.algebra, needs_algebra) {
        (Some(spec), true) => Some(load_algebra(spec)?),
        (None, true) => return Err(Error::Usage("--algebra is required for the selected suites".into())),
        _ => None,
    };
    let omegas = match (&algebra, &config.omega, needs_omega) {
        (Some(a), Some(spec), true) => spec.resolve(a, &config.tolerances)?,
        (Some(a), None, true) => OmegaSpec::Random { count: 20, seed: config.seed }.resolve(a, &config.tolerances)?,
        _ => Vec::new(),
    };

    let mut suites: Vec<Suite> = config.suites.clone();
    suites.sort_by_key(|s| Suite::ALL.iter().position(|t| t == s));
    suites.dedup();

    let mut entries = Vec::new();
    let mut valid = true;
    for suite in suites {
        let ctx = suites::Context { config, algebra: algebra.as_ref(), omegas: &omegas, algebra_valid: valid };
        let start = Instant::now();
        let produced = suites::run_suite(suite, &ctx);
        let elapsed = start.elapsed().as_secs_f64();
        if suite == Suite::Validate {
            valid = produced.iter().all(|e| e.pass);
        }
        let share = elapsed / produced.len().max(1) as f64;
        for mut e in produced {
            if config.timings {
                e.wall_time_s = Some(share);
            }
            entries.push(e);
        }
    }
    entries.sort_by(|a, b| a.suite.as_str().cmp(b.suite.as_str()).then(a.trial.cmp(&b.trial)));
    let pass = entries.iter().all(|e| e.pass);
    Ok(VerificationReport { schema_version: SCHEMA_VERSION, config: config.clone(), suites: entries, pass })
}

/// Built-in algebras with dimensions, labels and form conventions.
pub fn catalog_list() -> String {
    let mut out = String::new();
    for e in catalog_entries() {
        let labels = catalog(e.example).map(|a| (a.dim(), a.labels().join(", ")));
        let (dim, labels) = labels.unwrap_or((0, String::new()));
        let _ = writeln!(out, "{:<12} {:<20} dim {dim} (for {}): {labels}", e.name, e.syntax, e.example);
        let _ = writeln!(out, "{:<12} form: {}", "", e.form);
    }
    out
}

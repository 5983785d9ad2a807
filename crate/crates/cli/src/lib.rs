//! Batch front end over the orbispace crates. [`run`] is the whole program
//! minus process plumbing, so it can be driven from tests.

pub mod document;
mod errors;
mod summary;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use orbispace_linalg::{rat_to_string, RatMatrix};
use orbispace_reducer::{reduce_to_2stable, ReductionStep};
use orbispace_repmodel::{component_group, validate, MeetsOmega, RepSpec};
use orbispace_verdict::{analyze, element_to_json};
use orbispace_weightset::is_q_stable_capped;
use serde::Serialize;
use serde_json::Value;

pub use document::{parse_document, DocError, SpecDocument};
pub use errors::Failure;

pub const DEFAULT_MAX_LINES: usize = 24;
pub const CAP_ENV: &str = "ORBISPACE_CAP";

#[derive(Debug, Parser)]
#[command(name = "orbispace", version, about = "Decide whether a torus-extended orbit space is a manifold")]
struct Cli {
    /// Pretty-print the JSON report and write a short summary to stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// Refuse specs with more complex lines than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LINES)]
    max_lines: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the document and report the invariants of every generator.
    Validate { input: Option<PathBuf> },
    /// Test q-stability of the weights.
    Stability {
        #[arg(long)]
        q: usize,
        input: Option<PathBuf>,
    },
    /// Eliminate equivalence classes until the weights are 2-stable.
    Reduce { input: Option<PathBuf> },
    /// Enumerate the component group.
    Group { input: Option<PathBuf> },
    /// Full verdict with certificate.
    Analyze {
        #[arg(long)]
        iv_trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        input: Option<PathBuf>,
    },
    /// Floating-point cross-checks; with an input, also checks its generators.
    Lab {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. `args` excludes the program name; `stdin` is read only
/// when the command needs a document and none was named (or `-` was).
/// `cap_override` is the raw value of `ORBISPACE_CAP`.
pub fn run(args: &[String], stdin: &mut dyn Read, cap_override: Option<&str>) -> Output {
    let cli = match Cli::try_parse_from(std::iter::once("orbispace".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli, stdin, cap_override) {
        Ok(report) => {
            let stderr = if cli.pretty { summary::summarize(&report.value) } else { String::new() };
            Output { code: 0, stdout: report.render(cli.pretty), stderr }
        }
        Err(f) => {
            let report = Report::of(&ErrorReport { error: &f.kind, message: &f.message });
            Output { code: f.code, stdout: report.render(cli.pretty), stderr: format!("error: {}: {}\n", f.kind, f.message) }
        }
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: &'a str,
}

/// A report rendered in field order, plus its tree for the summary.
struct Report {
    compact: String,
    pretty: String,
    value: Value,
}

impl Report {
    fn of<T: Serialize>(t: &T) -> Self {
        Report {
            compact: serde_json::to_string(t).expect("reports serialize"),
            pretty: serde_json::to_string_pretty(t).expect("reports serialize"),
            value: serde_json::to_value(t).expect("reports serialize"),
        }
    }

    fn render(self, pretty: bool) -> String {
        let mut s = if pretty { self.pretty } else { self.compact };
        s.push('\n');
        s
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::input("Io", format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|e| Failure::input("Io", format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn load(cli: &Cli, path: &Option<PathBuf>, stdin: &mut dyn Read, cap_override: Option<&str>) -> Result<RepSpec, Failure> {
    let doc = parse_document(&read_input(path, stdin)?)?;
    let mut spec = doc.to_spec()?;
    if spec.lines() > cli.max_lines {
        return Err(Failure::cap(format!("{} lines exceed --max-lines {}", spec.lines(), cli.max_lines)));
    }
    if let Some(raw) = cap_override {
        spec.caps.group_order_cap =
            raw.trim().parse().map_err(|_| Failure::input("Schema", format!("{CAP_ENV}={raw:?} is not a count")))?;
    }
    Ok(spec)
}

#[derive(Serialize)]
struct GeneratorReport<'a> {
    name: &'a Option<String>,
    ad: Vec<Vec<String>>,
    rk_e_minus_a: usize,
    rk_e_minus_g: usize,
    omega: i64,
    in_omega: bool,
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    valid: bool,
    m: usize,
    lines: usize,
    v0_dim: usize,
    generators: Vec<GeneratorReport<'a>>,
}

#[derive(Serialize)]
struct StabilityReport {
    q: usize,
    stable: bool,
}

#[derive(Serialize)]
struct RelationReport<'a> {
    indices: &'a [usize],
    flips: &'a [i8],
    coeffs: &'a [i64],
}

#[derive(Serialize)]
struct StepReport<'a> {
    class_orbit: &'a [Vec<usize>],
    relations: Vec<RelationReport<'a>>,
    new_weights: &'a [Vec<i64>],
    m_before: usize,
    m_after: usize,
    v0_before: usize,
    v0_after: usize,
    group_propagated: bool,
    warning: &'a Option<String>,
}

impl<'a> StepReport<'a> {
    fn new(st: &'a ReductionStep) -> Self {
        StepReport {
            class_orbit: &st.class_orbit,
            relations: st
                .relations
                .iter()
                .map(|r| RelationReport { indices: &r.indices, flips: &r.flips, coeffs: &r.coeffs })
                .collect(),
            new_weights: &st.new_weights,
            m_before: st.dims.m_before,
            m_after: st.dims.m_after,
            v0_before: st.dims.v0_before,
            v0_after: st.dims.v0_after,
            group_propagated: st.group_propagated,
            warning: &st.warning,
        }
    }
}

#[derive(Serialize)]
struct ReduceReport<'a> {
    reduction_trace: Vec<StepReport<'a>>,
    #[serde(rename = "final")]
    final_document: SpecDocument,
}

#[derive(Serialize)]
struct CosetReport {
    representative: Value,
    ad: Vec<Vec<String>>,
    meets_omega: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega_witness: Option<Value>,
}

#[derive(Serialize)]
struct GroupReport {
    order: usize,
    cosets: Vec<CosetReport>,
}

#[derive(Serialize)]
struct LabReport {
    seed: u64,
    checks: Vec<orbispace_numlab::CheckReport>,
}

fn execute(cli: &Cli, stdin: &mut dyn Read, cap_override: Option<&str>) -> Result<Report, Failure> {
    match &cli.command {
        Command::Validate { input } => {
            let spec = load(cli, input, stdin, cap_override)?;
            let infos = validate(&spec)?;
            let generators = infos
                .iter()
                .zip(&spec.generators)
                .map(|(a, g)| GeneratorReport {
                    name: &g.name,
                    ad: matrix_strings(&a.a),
                    rk_e_minus_a: a.rk_e_minus_a,
                    rk_e_minus_g: a.rk_e_minus_g,
                    omega: a.omega,
                    in_omega: a.in_omega,
                })
                .collect();
            Ok(Report::of(&ValidateReport { valid: true, m: spec.m(), lines: spec.lines(), v0_dim: spec.v0_dim, generators }))
        }
        Command::Stability { q, input } => {
            let spec = load(cli, input, stdin, cap_override)?;
            let stable = is_q_stable_capped(&spec.weights, *q, cli.max_lines)?;
            Ok(Report::of(&StabilityReport { q: *q, stable }))
        }
        Command::Reduce { input } => {
            let spec = load(cli, input, stdin, cap_override)?;
            validate(&spec)?;
            let trace = reduce_to_2stable(&spec)?;
            Ok(Report::of(&ReduceReport {
                reduction_trace: trace.steps.iter().map(StepReport::new).collect(),
                final_document: SpecDocument::from_spec(&trace.final_spec),
            }))
        }
        Command::Group { input } => {
            let spec = load(cli, input, stdin, cap_override)?;
            validate(&spec)?;
            let group = component_group(&spec)?;
            let cosets = group
                .cosets
                .iter()
                .map(|c| {
                    let (meets_omega, omega_witness) = match &c.meets_omega {
                        MeetsOmega::Yes(w) => ("yes", Some(element_to_json(w))),
                        MeetsOmega::No => ("no", None),
                        MeetsOmega::Unknown => ("unknown", None),
                    };
                    CosetReport { representative: element_to_json(&c.representative), ad: matrix_strings(&c.ad), meets_omega, omega_witness }
                })
                .collect();
            Ok(Report::of(&GroupReport { order: group.len(), cosets }))
        }
        Command::Analyze { iv_trials, seed, input } => {
            let mut spec = load(cli, input, stdin, cap_override)?;
            if let Some(t) = iv_trials {
                spec.caps.iv_trials = *t;
            }
            if let Some(s) = seed {
                spec.caps.seed = *s;
            }
            validate(&spec)?;
            Ok(Report::of(&analyze(&spec)?))
        }
        Command::Lab { trials, seed, input } => {
            let mut checks = Vec::new();
            if input.is_some() {
                let spec = load(cli, input, stdin, cap_override)?;
                validate(&spec)?;
                checks.extend(orbispace_numlab::verify_suite(&spec, *seed, *trials));
            }
            checks.extend(orbispace_numlab::lab_suite(*seed, *trials));
            if let Some(bad) = checks.iter().find(|r| !r.pass) {
                return Err(Failure::internal(format!("check {} failed with defect {:e}", bad.check, bad.max_defect)));
            }
            Ok(Report::of(&LabReport { seed: *seed, checks }))
        }
    }
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| rat_to_string(&m[(i, j)])).collect()).collect()
}

mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use paracr::cartan::{bundle_protocol, CartanError, LiftedForms};
use paracr::expr::{rat_from_f64, Rat, ZeroTestProtocol};
use paracr::models::{ModelError, ModelId};
use paracr::paracr::{parse_pair_file, BranchLabel, ParacrError, PdePair};
use paracr::suite::{self, catalog_checks, SubCheck, SuiteConfig, SuiteError};
use paracr::symmetry::{solve_determining_equations, GeneratorSet, SymmetryError};
use serde_json::{json, Value};
use thiserror::Error;

use report::{fmt_checks, Report};

#[derive(Parser)]
#[command(name = "paracr", version, about = "Checks for para-CR structures defined by PDE pairs")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Sample points per probabilistic zero test.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Scaled residual below which a sampled value counts as zero.
    #[arg(long, global = true, value_parser = positive)]
    tol: Option<f64>,
    /// Seed for all sampling.
    #[arg(long, global = true, env = "PARACR_SEED")]
    seed: Option<u64>,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility, invariants and classification of a pair file.
    Check { file: PathBuf },
    /// The relative invariants of a pair file.
    Invariants { file: PathBuf },
    /// The branch of the classification tree for a pair file.
    Classify { file: PathBuf },
    /// Verify a catalog model: realization, Jacobi, symmetries.
    VerifyModel {
        model: String,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<i64>,
    },
    /// Maurer-Cartan checks of the so(3,2) lift of the flat model.
    McFlat,
    /// Symmetry generators of a catalog model, or a polynomial solve for a pair file.
    Symmetries {
        #[arg(long, conflicts_with = "pair")]
        model: Option<String>,
        #[arg(long)]
        b: Option<f64>,
        /// The free scalar of the second iiib generator (defaults to b).
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<f64>,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[arg(long, requires = "pair")]
        solve: bool,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Run every acceptance criterion.
    Suite,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Paracr(#[from] ParacrError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Suite(#[from] SuiteError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Paracr(e) => paracr_code(e),
            CliError::Model(e) => model_code(e),
            CliError::Symmetry(SymmetryError::Model(e)) => model_code(e),
            CliError::Symmetry(SymmetryError::Parse(_)) => 2,
            CliError::Suite(SuiteError::Model(e)) => model_code(e),
            CliError::Suite(SuiteError::Paracr(e)) => paracr_code(e),
            CliError::Suite(SuiteError::Symmetry(SymmetryError::Model(e))) => model_code(e),
            _ => 1,
        }
    }
}

fn paracr_code(e: &ParacrError) -> u8 {
    match e {
        ParacrError::PairFile { .. } | ParacrError::Parse(_) => 2,
        ParacrError::FDependsOnR | ParacrError::DegenerateFpp | ParacrError::Inadmissible(_) => 3,
        _ => 1,
    }
}

fn model_code(e: &ModelError) -> u8 {
    match e {
        ModelError::Domain { .. }
        | ModelError::NoParameter(_)
        | ModelError::BadEpsilon(_)
        | ModelError::UndeterminedEpsilon
        | ModelError::UnknownModel(_) => 4,
        ModelError::Parse(_) => 2,
        ModelError::Paracr(p) => paracr_code(p),
        _ => 1,
    }
}

/// Command output before it is wrapped in the envelope.
struct Outcome {
    input: Value,
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn from_checks(input: Value, result: Value, head: String, checks: &[SubCheck]) -> Outcome {
        let passed = checks.iter().all(|c| c.passed);
        Outcome {
            input,
            result,
            text: head + &fmt_checks(checks),
            code: if passed { 0 } else { 1 },
        }
    }
}

fn protocol(o: &Opts) -> ZeroTestProtocol {
    let mut p = ZeroTestProtocol::default();
    if let Some(s) = o.seed {
        p = p.with_seed(s);
    }
    if let Some(n) = o.samples {
        p = p.with_samples(n.max(1));
    }
    if let Some(t) = o.tol {
        p = p.with_tolerance(t);
    }
    p
}

fn read_pair(path: &Path) -> Result<(PdePair, String), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((parse_pair_file(&text)?.pair, text))
}

fn model_id(s: &str) -> Result<ModelId, CliError> {
    s.parse::<ModelId>().map_err(CliError::from)
}

fn rat_param(b: Option<f64>) -> Result<Option<Rat>, CliError> {
    b.map(|v| rat_from_f64(v).ok_or_else(|| CliError::Usage(format!("--b {v} is not a finite number"))))
        .transpose()
}

fn pair_input(path: &Path, pair: &PdePair) -> Value {
    json!({ "file": path.display().to_string(), "F": pair.f().to_string(), "H": pair.h().to_string() })
}

fn eps_text(eps: Option<i8>) -> String {
    eps.map_or("undetermined".into(), |e| e.to_string())
}

fn branch_text(b: &BranchLabel) -> String {
    match b {
        BranchLabel::NonflatI3 { eps } | BranchLabel::NonflatI2 { eps } => {
            format!("{} (eps = {})", b.name(), eps_text(*eps))
        }
        _ => b.name().to_string(),
    }
}

fn cmd_check(path: &Path, proto: &ZeroTestProtocol, what: &str) -> Result<Outcome, CliError> {
    let (pair, _) = read_pair(path)?;
    let input = pair_input(path, &pair);
    let mut text = format!("F = {}\nH = {}\n", pair.f(), pair.h());
    let adm = pair.check_admissibility(proto)?;
    let adm_line = |name: &str, c: &paracr::paracr::Check| format!("  {name}: {}\n", if c.holds { "yes" } else { "no" });
    if what != "invariants" || !adm.admissible() {
        text.push_str("admissibility:\n");
        text += &adm_line("F_r = 0", &adm.f_r_zero);
        text += &adm_line("F_pp != 0", &adm.f_pp_nonzero);
        text += &adm_line("D^3 F = Delta H", &adm.integrable);
    }
    if !adm.admissible() {
        let _ = writeln!(text, "residual D^3 F - Delta H = {}", adm.residual);
        return Ok(Outcome {
            input,
            result: json!({ "admissibility": adm, "admissible": false }),
            text,
            code: 3,
        });
    }
    let mut result = serde_json::Map::new();
    result.insert("admissibility".into(), json!(adm));
    if what != "classify" {
        let inv = pair.invariants(proto)?;
        let _ = writeln!(text, "I1 = {}\nI2 = {}\nI3 = {}", inv.i1, inv.i2, inv.i3);
        if what == "invariants" {
            let _ = writeln!(text, "A = {}\nB = {}\nC = {}\nC~ = {}", inv.a, inv.b, inv.c, inv.c_tilde);
        }
        result.insert("invariants".into(), json!(inv));
    }
    if what != "invariants" {
        let cls = pair.classify(proto)?;
        let _ = writeln!(text, "branch: {}", branch_text(&cls.branch));
        result.insert("classification".into(), json!(cls));
    }
    Ok(Outcome {
        input,
        result: Value::Object(result),
        text,
        code: 0,
    })
}

fn cmd_verify_model(model: &str, b: Option<f64>, eps: Option<i64>, proto: &ZeroTestProtocol) -> Result<Outcome, CliError> {
    let id = model_id(model)?;
    let eps = match eps {
        None => None,
        Some(e @ (1 | -1)) => Some(e as i8),
        Some(e) => return Err(ModelError::BadEpsilon(e).into()),
    };
    let v = suite::verify_model(id, rat_param(b)?, eps, proto)?;
    let head = format!(
        "model {}{} eps = {}\n",
        v.model,
        v.b.map_or(String::new(), |b| format!(" b = {b}")),
        eps_text(v.eps)
    );
    Ok(Outcome::from_checks(
        json!({ "model": id, "b": b, "eps": eps }),
        json!(v),
        head,
        &v.checks,
    ))
}

fn cmd_mc_flat(proto: &ZeroTestProtocol) -> Result<Outcome, CliError> {
    let l = LiftedForms::new();
    let bp = bundle_protocol(proto, proto.samples.min(20).max(1));
    let reports = [
        l.verify_flatness(&bp)?,
        l.verify_structure_equations(&bp)?,
        l.verify_entry_relations(&bp)?,
        l.verify_dd(&bp)?,
        l.verify_identity_section()?,
    ];
    let gauge = l.verify_gauge_relation(&bp.clone().with_tolerance(bp.tolerance.max(1e-8)))?;
    let mut checks: Vec<SubCheck> = reports
        .iter()
        .map(|r| {
            let worst = r.entries.iter().map(|e| e.check.worst).fold(0.0, f64::max);
            let mut c = SubCheck::numeric(format!("{} ({} entries)", r.name, r.entries.len()), worst, r.tolerance);
            c.passed &= r.passed;
            c.exact = r.entries.iter().all(|e| e.check.exact);
            c
        })
        .collect();
    checks.push(SubCheck::numeric("gauge relation", gauge.worst, gauge.tolerance));
    checks.push(SubCheck::exact("gauge matrix zero pattern", gauge.zero_pattern));
    Ok(Outcome::from_checks(
        json!({}),
        json!({ "reports": reports, "gauge": gauge }),
        format!("so(3,2) lift on {} bundle samples\n", bp.samples),
        &checks,
    ))
}

#[allow(clippy::too_many_arguments)]
fn cmd_symmetries(
    model: Option<&str>,
    b: Option<f64>,
    omega: Option<f64>,
    pair: Option<&Path>,
    solve: bool,
    degree: usize,
    proto: &ZeroTestProtocol,
) -> Result<Outcome, CliError> {
    if let Some(path) = pair {
        let (pair, _) = read_pair(path)?;
        if !solve {
            return Err(CliError::Usage("--pair needs --solve".into()));
        }
        let r = solve_determining_equations(&pair, degree, proto)?;
        let mut text = format!(
            "degree {}: {} unknowns, kernel dimension {}{}\n",
            r.degree,
            r.unknowns,
            r.kernel_dimension,
            if r.possibly_incomplete { " (possibly incomplete)" } else { "" }
        );
        for (i, k) in r.kernel.iter().enumerate() {
            let _ = writeln!(text, "  Y{} = {k}", i + 1);
        }
        let fields: Vec<String> = r.kernel.iter().map(|k| k.to_string()).collect();
        return Ok(Outcome {
            input: json!({ "file": path.display().to_string(), "degree": degree }),
            result: json!({ "report": r, "kernel": fields }),
            text,
            code: 0,
        });
    }
    let model = model.ok_or_else(|| CliError::Usage("give --model or --pair".into()))?;
    let id = model_id(model)?;
    let set = GeneratorSet::catalog_with_omega(id, rat_param(b)?, rat_param(omega)?)?;
    let r = set.verify(proto)?;
    let mut head = format!(
        "model {}{}{}\n",
        id,
        r.b.map_or(String::new(), |b| format!(" b = {b}")),
        r.omega.map_or(String::new(), |w| format!(" omega = {w}"))
    );
    for (i, g) in set.gens.iter().enumerate() {
        let _ = writeln!(head, "  X{} = {g}", i + 1);
    }
    if let Some(a) = &r.algebra {
        let _ = writeln!(head, "derived series {:?}, solvable: {}", a.derived_series, a.solvable);
    }
    let checks = catalog_checks(&r);
    let gens: Vec<String> = set.gens.iter().map(|g| g.to_string()).collect();
    Ok(Outcome::from_checks(
        json!({ "model": id, "b": b, "omega": omega }),
        json!({ "report": r, "generators": gens }),
        head,
        &checks,
    ))
}

fn cmd_suite(o: &Opts) -> Result<Outcome, CliError> {
    let cfg = SuiteConfig {
        seed: o.seed.unwrap_or(SuiteConfig::default().seed),
        samples: o.samples,
        tolerance: o.tol,
    };
    let r = suite::run_suite(&cfg);
    let mut text = String::new();
    for c in &r.criteria {
        let _ = writeln!(text, "{} {}. {} ({} ms)", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title, c.millis);
        if let Some(e) = &c.error {
            let _ = writeln!(text, "    error: {e}");
        }
        for s in &c.checks {
            let _ = writeln!(text, "    {}", report::fmt_check(s));
        }
    }
    let failed: Vec<String> = r.failures().map(|c| format!("{}", c.id)).collect();
    if failed.is_empty() {
        let _ = writeln!(text, "all {} criteria passed in {} ms", r.criteria.len(), r.millis);
    } else {
        let _ = writeln!(text, "failed criteria: {}", failed.join(", "));
    }
    Ok(Outcome {
        input: json!({}),
        code: if r.passed { 0 } else { 1 },
        result: json!(r),
        text,
    })
}

fn run(cli: &Cli, proto: &ZeroTestProtocol) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file } => cmd_check(file, proto, "check"),
        Command::Invariants { file } => cmd_check(file, proto, "invariants"),
        Command::Classify { file } => cmd_check(file, proto, "classify"),
        Command::VerifyModel { model, b, eps } => cmd_verify_model(model, *b, *eps, proto),
        Command::McFlat => cmd_mc_flat(proto),
        Command::Symmetries {
            model,
            b,
            omega,
            pair,
            solve,
            degree,
        } => cmd_symmetries(model.as_deref(), *b, *omega, pair.as_deref(), *solve, *degree, proto),
        Command::Suite => cmd_suite(&cli.opts),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Invariants { .. } => "invariants",
        Command::Classify { .. } => "classify",
        Command::VerifyModel { .. } => "verify-model",
        Command::McFlat => "mc-flat",
        Command::Symmetries { .. } => "symmetries",
        Command::Suite => "suite",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let proto = protocol(&cli.opts);
    let start = Instant::now();
    let outcome = run(&cli, &proto).unwrap_or_else(|e| Outcome {
        input: json!({}),
        result: json!({ "error": e.to_string() }),
        text: format!("error: {e}\n"),
        code: e.exit_code(),
    });
    let code = outcome.code;
    let body = if cli.opts.json {
        let rep = Report {
            version: suite::VERSION,
            command: command_name(&cli.command).to_string(),
            input: outcome.input,
            seed: proto.seed,
            samples: proto.samples,
            tolerance: proto.tolerance,
            verdict: if code == 0 { "pass" } else { "fail" },
            exit_code: code as i32,
            wall_ms: start.elapsed().as_millis(),
            result: outcome.result,
        };
        serde_json::to_string_pretty(&rep).expect("report serializes") + "\n"
    } else {
        format!(
            "{}seed {}, {} samples, tol {:.0e}: {}\n",
            outcome.text,
            proto.seed,
            proto.samples,
            proto.tolerance,
            if code == 0 { "pass" } else { "fail" }
        )
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None if code == 0 || cli.opts.json => print!("{body}"),
        None => {
            print!("{body}");
            if code >= 2 {
                eprint!("{}", outcome_stderr(code));
            }
        }
    }
    ExitCode::from(code)
}

fn outcome_stderr(code: u8) -> &'static str {
    match code {
        2 => "input could not be parsed\n",
        3 => "pair is not admissible\n",
        4 => "parameter outside the model's domain\n",
        _ => "",
    }
}

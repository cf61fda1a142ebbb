//! `eaoaqec` command-line tool.
//!
//! Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input error.
//! Qubit, pair and gauge indices on the command line are 1-based.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eaoaqec::catalog;
use eaoaqec::code_io::{self, format_code, format_errors};
use eaoaqec::constructions::{
    self, ConstructionError, ConstructionResult, GaugeRepairing, GgfRequest, Options, PairRole, PairSelection,
    TransversalPolicy,
};
use eaoaqec::correct::{self, DistanceMode, Verdict};
use eaoaqec::eacq::{self, NotRepresentable};
use eaoaqec::reproduce;
use eaoaqec::search;
use eaoaqec::{EaoaqecCode, PauliOperator};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const SCHEMA: &str = "eaoaqec-cli/1";

#[derive(Parser)]
#[command(name = "eaoaqec", version, about = "Entanglement-assisted operator algebra QEC toolkit")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for distance enumeration (default: all cores).
    #[arg(long, global = true, env = "EAOAQEC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural checks on a code.
    Validate { code: String },
    /// Print [[n,k,d;r,e,c_b]].
    Params {
        code: String,
        #[arg(long, value_enum, default_value_t = Mode::Dressed)]
        distance: Mode,
        /// Largest weight enumerated.
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Decide whether an error set is correctable.
    Correctable {
        code: String,
        /// Error file: one labelled operator per line.
        #[arg(long)]
        errors: PathBuf,
        #[arg(long, value_enum, default_value_t = Framework::Auto)]
        framework: Framework,
    },
    /// Decide classical/quantum representability of a code without gauge qubits.
    EacqCheck { code: String },
    /// Apply a construction and emit the resulting code.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Re-run the worked examples; `all` or a criterion number or key.
    Reproduce { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dressed,
    Bare,
    NoisyBob,
}

impl From<Mode> for DistanceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Dressed => DistanceMode::Dressed,
            Mode::Bare => DistanceMode::Bare,
            Mode::NoisyBob => DistanceMode::NoisyBob,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Framework {
    Auto,
    Eaqec,
    Eaoqec,
    Eacq,
    Eaoaqec,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum Role {
    /// The pair's Z member joins the stabilizer.
    #[default]
    Z,
    /// The pair's X member joins the stabilizer.
    X,
}

#[derive(Args)]
struct Common {
    /// Input code: a file or `catalog:NAME`.
    code: String,
    /// Write the resulting code here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Cutoff for the distance checks.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Skip all distance computations.
    #[arg(long)]
    no_hypotheses: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options { cutoff: self.cutoff, skip_hypotheses: self.no_hypotheses }
    }
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Gauge fixing.
    Gf {
        #[command(flatten)]
        common: Common,
        /// Gauge pairs to fix, e.g. `1,2`.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<usize>,
        /// Which member of each pair becomes a stabilizer.
        #[arg(long, value_enum, default_value_t)]
        stabilize: Role,
        /// Explicit transversal list (error-file format).
        #[arg(long)]
        transversal: Option<PathBuf>,
    },
    /// Clean qubits: turn the listed qubits into ebits.
    Cq {
        #[command(flatten)]
        common: Common,
        /// Qubits to clean, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        qubits: Vec<usize>,
    },
    /// Clean qubits on a CSS code, choosing `e` pivot qubits.
    CssCq {
        #[command(flatten)]
        common: Common,
        /// Number of ebits to create.
        #[arg(long)]
        ebits: usize,
    },
    /// Entanglement-assisted gauge fixing.
    Eagf {
        #[command(flatten)]
        common: Common,
        /// Gauge pairs to move into H, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        pairs: Vec<usize>,
    },
    /// General gauge fixing.
    Ggf {
        #[command(flatten)]
        common: Common,
        /// New gauge pairs as products of flat gauge entries,
        /// e.g. `1|2;3|4,6;3,5|6`.
        #[arg(long)]
        repair: Option<String>,
        /// Pairs (after re-pairing) to gauge fix.
        #[arg(long, value_delimiter = ',')]
        gf_pairs: Vec<usize>,
        #[arg(long, value_enum, default_value_t)]
        stabilize: Role,
        /// Pairs (after re-pairing) to move into H with new ebits.
        #[arg(long, value_delimiter = ',')]
        eagf_pairs: Vec<usize>,
        /// Explicit transversal list (error-file format).
        #[arg(long)]
        transversal: Option<PathBuf>,
    },
}

/// Result of a command before printing.
struct Report {
    ok: bool,
    text: String,
    json: Value,
}

fn load_code(source: &str) -> Result<EaoaqecCode> {
    match source.strip_prefix("catalog:") {
        Some(name) => Ok(catalog::catalog(name)?),
        None => code_io::read_code(source).with_context(|| format!("reading {source}")),
    }
}

fn zero_based(xs: &[usize], what: &str) -> Result<Vec<usize>> {
    xs.iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| anyhow!("{what} indices start at 1")))
        .collect()
}

fn parse_repair(text: &str) -> Result<GaugeRepairing> {
    let list = |s: &str| -> Result<Vec<usize>> {
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad gauge index {t:?}")))
            .collect::<Result<Vec<_>>>()?;
        zero_based(&v, "gauge")
    };
    let pairs = text
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once('|').ok_or_else(|| anyhow!("pair {p:?} needs the form A|B"))?;
            Ok((list(a)?, list(b)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GaugeRepairing(pairs))
}

fn selections(pairs: &[usize], role: Role) -> Result<Vec<PairSelection>> {
    let role = match role {
        Role::Z => PairRole::StabilizeZ,
        Role::X => PairRole::StabilizeX,
    };
    Ok(zero_based(pairs, "pair")?.into_iter().map(|index| PairSelection { index, role }).collect())
}

fn policy(path: &Option<PathBuf>) -> Result<TransversalPolicy> {
    Ok(match path {
        None => TransversalPolicy::FullProduct,
        Some(p) => TransversalPolicy::ExplicitList(code_io::read_errors(p)?),
    })
}

/// Construction errors with indices shifted to the command line's 1-based numbering.
fn describe(err: ConstructionError) -> anyhow::Error {
    use ConstructionError::*;
    let msg = match err {
        PairOutOfRange { index, r } => format!("gauge pair {} does not exist (the code has {r} pairs)", index + 1),
        DuplicatePair { index } => format!("gauge pair {} is selected twice", index + 1),
        OverlappingPairs { index } => format!("gauge pair {} is assigned to both the GF and the EAGF role", index + 1),
        GaugeIndexOutOfRange { index, len } => {
            format!("gauge re-pairing refers to gauge operator {}, but there are {len}", index + 1)
        }
        QubitOutOfRange { q, n } => format!("qubit {} is out of range (n = {n})", q + 1),
        DuplicateQubit { q } => format!("qubit {} is listed twice", q + 1),
        DependentColumns { qubits, witness } => format!(
            "check-matrix columns of qubits {:?} are dependent: {witness} is in the centralizer of S and supported on them",
            qubits.iter().map(|q| q + 1).collect::<Vec<_>>()
        ),
        OutsideProductSet { index, op } => {
            format!("transversal entry {} ({op}) is not in the coset of any element of the allowed product set", index + 1)
        }
        DuplicateCoset { index, op } => format!("transversal entry {} ({op}) repeats an earlier coset", index + 1),
        other => other.to_string(),
    };
    anyhow!(msg)
}

fn validate(source: &str) -> Result<Report> {
    let code = load_code(source)?;
    let report = code.validate();
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!("{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name));
        if !c.detail.is_empty() {
            text.push_str(&format!(": {}", c.detail));
        }
        text.push('\n');
    }
    text.push_str(&format!("{} {}", code.parameters(), if report.is_valid() { "valid" } else { "invalid" }));
    Ok(Report {
        ok: report.is_valid(),
        text,
        json: json!({ "valid": report.is_valid(), "parameters": code.parameters(), "checks": report.checks }),
    })
}

fn params(source: &str, mode: Mode, cutoff: usize) -> Result<Report> {
    let code = load_code(source)?;
    let r = correct::distance(&code, mode.into(), Some(cutoff))?;
    let params = code.parameters().with_distance(&r.distance_text());
    let mut text = params.clone();
    if let (Some(w), Some(b)) = (&r.witness, &r.branch) {
        text.push_str(&format!("\nwitness {w} ({})", b.as_str()));
    } else {
        text.push_str(&format!("\nno uncorrectable operator of weight <= {}", r.cutoff));
    }
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "parameters": code.parameters(),
            "formatted": params,
            "distance": r,
            "exceeded_cutoff": r.distance.is_none(),
        }),
    })
}

fn correctable(source: &str, errors: &PathBuf, framework: Framework) -> Result<Report> {
    let code = load_code(source)?;
    let errs = code_io::read_errors(errors)?;
    let subsystem = code.is_subsystem_only();
    let no_gauge = code.gauge_pairs().is_empty();
    let chosen = match framework {
        Framework::Auto if subsystem && no_gauge => Framework::Eaqec,
        Framework::Auto if subsystem => Framework::Eaoqec,
        Framework::Auto if no_gauge && eacq::is_eacq_representable(&code)?.representable => Framework::Eacq,
        Framework::Auto => Framework::Eaoaqec,
        f => f,
    };
    let verdict: Verdict = match chosen {
        Framework::Eaqec => {
            if !no_gauge {
                bail!("the eaqec test needs a code without gauge qubits (r = {})", code.gauge_pairs().len());
            }
            correct::eaoqec_correctable(&code, &errs)?
        }
        Framework::Eaoqec => correct::eaoqec_correctable(&code, &errs)?,
        Framework::Eacq => {
            let rep = eacq::is_eacq_representable(&code)?;
            if !rep.representable {
                bail!("the eacq test needs a representable code: {}", rep.message());
            }
            correct::eacq_correctable(&code, rep.split.as_ref(), &errs)?
        }
        Framework::Eaoaqec | Framework::Auto => correct::ea_correctable(&code, &errs)?,
    };
    let name = match chosen {
        Framework::Eaqec => "eaqec",
        Framework::Eaoqec => "eaoqec",
        Framework::Eacq => "eacq",
        _ => "eaoaqec",
    };
    let mut text = format!(
        "{} ({} errors, {name} test)",
        if verdict.correctable { "correctable" } else { "not correctable" },
        errs.len()
    );
    if let Some(w) = &verdict.witness {
        text.push_str(&format!(
            "\nwitness: E{}^dag E{} = {} ({:?})",
            w.a + 1,
            w.b + 1,
            w.product,
            w.violation
        ));
    }
    Ok(Report {
        ok: verdict.correctable,
        text,
        json: json!({ "framework": name, "errors": errs.len(), "verdict": verdict }),
    })
}

fn op_lines(label: &str, ops: &[PauliOperator]) -> String {
    format_errors(ops).lines().skip(1).enumerate().map(|(i, l)| {
        let cells = l.split_once(' ').map(|(_, c)| c).unwrap_or("");
        format!("{label}{} {cells}\n", i + 1)
    }).collect()
}

fn eacq_check(source: &str) -> Result<Report> {
    let code = load_code(source)?;
    let rep = eacq::is_eacq_representable(&code)?;
    let mut text = rep.message().to_string();
    if let Some(NotRepresentable::ClassicalOutsideCenterCentralizer { classical, center_element }) = &rep.failure {
        text.push_str(&format!("\nclassical generator {classical} anticommutes with {center_element}"));
    }
    if let Some(split) = &rep.split {
        text.push_str("\n[SQ]\n");
        text.push_str(&op_lines("SQ", &split.quantum));
        text.push_str("[SC]\n");
        text.push_str(&op_lines("SC", &split.classical));
        text.push_str("[T]\n");
        text.push_str(&op_lines("T", &split.transversal));
    }
    Ok(Report {
        ok: rep.representable,
        text: text.trim_end().to_string(),
        json: json!({ "representable": rep.representable, "message": rep.message(), "failure": rep.failure, "split": rep.split }),
    })
}

fn construct(kind: ConstructKind) -> Result<Report> {
    let (common, result) = match kind {
        ConstructKind::Gf { common, pairs, stabilize, transversal } => {
            let code = load_code(&common.code)?;
            let r = constructions::gauge_fix(&code, &selections(&pairs, stabilize)?, &policy(&transversal)?, &common.options());
            (common, r)
        }
        ConstructKind::Cq { common, qubits } => {
            let code = load_code(&common.code)?;
            let r = constructions::clean_qubits(&code, &zero_based(&qubits, "qubit")?, &common.options());
            (common, r)
        }
        ConstructKind::CssCq { common, ebits } => {
            let code = load_code(&common.code)?;
            let r = constructions::css_clean_qubits(&code, ebits, &common.options());
            (common, r)
        }
        ConstructKind::Eagf { common, pairs } => {
            let code = load_code(&common.code)?;
            let r = constructions::ea_gauge_fix(&code, &zero_based(&pairs, "pair")?, &common.options());
            (common, r)
        }
        ConstructKind::Ggf { common, repair, gf_pairs, stabilize, eagf_pairs, transversal } => {
            let code = load_code(&common.code)?;
            let req = GgfRequest {
                repair: repair.as_deref().map(parse_repair).transpose()?,
                gf_pairs: selections(&gf_pairs, stabilize)?,
                eagf_pairs: zero_based(&eagf_pairs, "pair")?,
                policy: policy(&transversal)?,
            };
            let r = constructions::general_gauge_fix(&code, &req, &common.options());
            (common, r)
        }
    };
    let r: ConstructionResult = result.map_err(describe)?;
    let code_text = format_code(&r.code);
    if let Some(path) = &common.output {
        code_io::write_code(&r.code, path)?;
    }
    let mut text = String::new();
    if common.output.is_none() {
        text.push_str(&code_text);
        text.push('\n');
    }
    text.push_str(&format!("# {}: {} -> {}\n", r.kind.as_str(), r.before, r.after));
    if let Some(d) = &r.distance_before {
        text.push_str(&format!("# before: {d}\n"));
    }
    if let Some(d) = &r.distance_after {
        text.push_str(&format!("# after: {d}\n"));
    }
    if !r.ebit_qubits.is_empty() {
        let q: Vec<usize> = r.ebit_qubits.iter().map(|q| q + 1).collect();
        text.push_str(&format!("# ebit qubits: {q:?}\n"));
    }
    if r.coset_collisions > 0 {
        text.push_str(&format!("# coset collisions dropped: {}\n", r.coset_collisions));
    }
    for h in &r.hypothesis_report {
        text.push_str(&format!("# hypothesis {}: {:?} ({})\n", h.name, h.status, h.detail));
    }
    let mut json = serde_json::to_value(&r)?;
    json["code"] = Value::String(code_text);
    Ok(Report { ok: r.hypotheses_hold(), text: text.trim_end().to_string(), json })
}

fn reproduce_cmd(id: &str) -> Result<Report> {
    let outcomes = if id == "all" {
        reproduce::run_all()
    } else {
        let n = reproduce::resolve(id).ok_or_else(|| {
            let keys: Vec<&str> = reproduce::CRITERIA.iter().map(|c| c.1).collect();
            anyhow!("unknown example {id:?}; use all, 1-10 or one of {}", keys.join(", "))
        })?;
        reproduce::run(n).into_iter().collect()
    };
    let mut text = String::new();
    for o in &outcomes {
        text.push_str(&o.summary_line());
        text.push('\n');
        for f in o.failures() {
            text.push_str(&format!("    failed: {}: {}\n", f.name, f.detail));
        }
    }
    let ok = outcomes.iter().all(|o| o.passed);
    text.push_str(&format!(
        "{}/{} criteria passed",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len()
    ));
    Ok(Report { ok, text, json: json!({ "passed": ok, "criteria": outcomes }) })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Params { .. } => "params",
        Command::Correctable { .. } => "correctable",
        Command::EacqCheck { .. } => "eacq-check",
        Command::Construct { .. } => "construct",
        Command::Reproduce { .. } => "reproduce",
    }
}

fn dispatch(command: Command) -> Result<Report> {
    match command {
        Command::Validate { code } => validate(&code),
        Command::Params { code, distance, cutoff } => params(&code, distance, cutoff),
        Command::Correctable { code, errors, framework } => correctable(&code, &errors, framework),
        Command::EacqCheck { code } => eacq_check(&code),
        Command::Construct { kind } => construct(kind),
        Command::Reproduce { id } => reproduce_cmd(&id),
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let json = cli.json;
    let result = search::with_threads(cli.threads, move || dispatch(cli.command));
    match result {
        Ok(r) => {
            if json {
                let mut body = json!({ "schema": SCHEMA, "command": name, "ok": r.ok });
                if let (Value::Object(dst), Value::Object(src)) = (&mut body, r.json) {
                    dst.extend(src);
                }
                emit(&serde_json::to_string_pretty(&body).expect("json"));
            } else {
                emit(&r.text);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if json {
                let body = json!({ "schema": SCHEMA, "command": name, "ok": false, "error": format!("{e:#}") });
                emit(&serde_json::to_string_pretty(&body).expect("json"));
            }
            ExitCode::from(2)
        }
    }
}

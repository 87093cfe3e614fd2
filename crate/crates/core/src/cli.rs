//! Command-line front end. `run` parses arguments and returns the exit code and
//! rendered output, so the binary is a thin wrapper.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classification::{record, validate};
use crate::clifford::Signature;
use crate::conjugation::{charge_conj, invariant_failures, report};
use crate::error::{Error, Result};
use crate::forms::{lemma_reports, Coframe};
use crate::gamma::GammaRep;
use crate::identities::{eval_text, verify, verify_all, IdentityReport};

pub const FORMAT_ENV: &str = "SPINORKIT_FORMAT";

#[derive(Parser, Debug)]
#[command(name = "spinorkit", version, about = "Exact Clifford algebra, gamma matrix and spinor identity checks")]
pub struct Cli {
    /// Output format; defaults to $SPINORKIT_FORMAT, then text.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Real Clifford algebra classification and spinor census.
    Classify(ClassifyArgs),
    /// Emit the gamma matrices for dimension D.
    Gamma {
        #[arg(long)]
        dim: usize,
        /// Pretty-print JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Charge conjugation data for dimension D and sign eta.
    Conjugation {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        eta: i64,
    },
    /// Verify registered identities.
    Verify(VerifyArgs),
    /// Evaluate an index expression in gamma matrices.
    Eval {
        expr: String,
        #[arg(long)]
        dim: usize,
    },
    /// Rank and splitting statements for spinor-valued forms in D = 4.
    Lemmas {
        #[arg(long, value_enum, default_value = "identity")]
        coframe: CoframeChoice,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "selection")]
pub struct ClassifySelection {
    /// Largest r + s to tabulate.
    #[arg(long)]
    pub range: Option<usize>,
    #[arg(long, requires = "s")]
    pub r: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub selection: ClassifySelection,
    #[arg(long, requires = "r")]
    pub s: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub id: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub dim: usize,
    /// Require the displayed reading rather than any recorded reading.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoframeChoice {
    Identity,
    Random,
}

/// Exit code with the text for stdout and stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Largest `r + s` accepted by `classify --range`.
pub const MAX_RANGE: usize = 10;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = match resolve_format(&cli) {
        Ok(f) => f,
        Err(msg) => return Outcome { code: 2, stdout: String::new(), stderr: msg },
    };
    let out = match execute(&cli.command, format) {
        Ok(o) => o,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", e) },
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.stdout) {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("error: cannot write {}: {}\n", path.display(), e) };
        }
        return Outcome { stdout: String::new(), ..out };
    }
    out
}

fn resolve_format(cli: &Cli) -> std::result::Result<Format, String> {
    if cli.json {
        return Ok(Format::Json);
    }
    if let Some(f) = cli.format {
        return Ok(f);
    }
    match std::env::var(FORMAT_ENV).ok().as_deref() {
        None | Some("") | Some("text") => Ok(Format::Text),
        Some("json") => Ok(Format::Json),
        Some(other) => Err(format!("error: {} must be 'text' or 'json', got '{}'\n", FORMAT_ENV, other)),
    }
}

fn json<T: Serialize>(v: &T, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("report types serialize");
    s.push('\n');
    s
}

fn done(ok: bool, stdout: String) -> Outcome {
    Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
}

fn execute(cmd: &Command, format: Format) -> Result<Outcome> {
    match cmd {
        Command::Classify(a) => classify(a, format),
        Command::Gamma { dim, pretty } => gamma(*dim, *pretty, format),
        Command::Conjugation { dim, eta } => conjugation(*dim, *eta, format),
        Command::Verify(a) => verify_cmd(a, format),
        Command::Eval { expr, dim } => {
            let ev = eval_text(expr, *dim)?;
            Ok(match format {
                Format::Text => done(true, format!("{}\n", ev.render().trim_end())),
                Format::Json => done(true, json(&EvalJson { expr, dim: *dim, result: ev.render().trim_end().to_string() }, false)),
            })
        }
        Command::Lemmas { coframe, seed } => lemmas(*coframe, *seed, format),
    }
}

#[derive(Serialize)]
struct EvalJson<'a> {
    expr: &'a str,
    dim: usize,
    result: String,
}

#[derive(Serialize)]
struct ClassifyRow {
    #[serde(flatten)]
    record: crate::classification::ClassRecord,
    checked: bool,
}

fn classify(a: &ClassifyArgs, format: Format) -> Result<Outcome> {
    let sigs: Vec<Signature> = match (a.selection.range, a.selection.r, a.s) {
        (Some(n), _, _) => {
            if n == 0 || n > MAX_RANGE {
                return Err(Error::Dimension(format!("--range must be in 1..={}", MAX_RANGE)));
            }
            let mut v = Vec::new();
            for d in 1..=n {
                for s in 0..=d {
                    v.push(Signature::new(d - s, s)?);
                }
            }
            v
        }
        (None, Some(r), Some(s)) => vec![Signature::new(r, s)?],
        _ => return Err(Error::InvalidArgument("give --r and --s, or --range".into())),
    };
    let mut rows = Vec::new();
    for sig in sigs {
        let checked = if sig.dim() <= MAX_RANGE { validate(sig)?.ok() } else { true };
        rows.push(ClassifyRow { record: record(sig)?, checked });
    }
    let ok = rows.iter().all(|r| r.checked);
    Ok(match format {
        Format::Json => done(ok, json(&rows, false)),
        Format::Text => {
            let mut s = format!("{:<8} {:<16} {:<16} {:>6} {:>7}  {:<13} {}\n", "(r,s)", "C(r,s)", "C0(r,s)", "pinors", "spinors", "structure", "check");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<8} {:<16} {:<16} {:>6} {:>7}  {:<13} {}",
                    format!("({},{})", r.record.r, r.record.s),
                    r.record.full,
                    r.record.even,
                    r.record.pinors,
                    r.record.spinors,
                    r.record.structure.to_string(),
                    if r.checked { "ok" } else { "MISMATCH" }
                );
            }
            done(ok, s)
        }
    })
}

fn gamma(dim: usize, pretty: bool, format: Format) -> Result<Outcome> {
    let rep = GammaRep::build(dim)?;
    let ok = rep.clifford_relations_hold();
    Ok(match format {
        Format::Json => done(ok, json(&rep.to_json(), pretty)),
        Format::Text => {
            let mut s = format!("D = {}, spinor size {}, eta = {:?}\n", dim, rep.size(), (0..dim).map(|a| rep.eta(a)).collect::<Vec<_>>());
            for (a, g) in rep.gammas().iter().enumerate() {
                let _ = writeln!(s, "\nΓ_{} =\n{}", a, g);
            }
            let _ = writeln!(s, "\nClifford relations: {}", if ok { "hold" } else { "FAIL" });
            done(ok, s)
        }
    })
}

fn conjugation(dim: usize, eta: i64, format: Format) -> Result<Outcome> {
    let rep = GammaRep::build(dim)?;
    let rpt = report(&rep, eta)?;
    let failures = invariant_failures(&charge_conj(&rep, eta)?, &rep);
    let ok = failures.is_empty();
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                #[serde(flatten)]
                report: &'a crate::conjugation::ConjugationReport,
                invariant_failures: &'a [&'static str],
            }
            done(ok, json(&Doc { report: &rpt, invariant_failures: &failures }, false))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "D = {}, eta = {}", rpt.dim, rpt.eta);
            let _ = writeln!(s, "epsilon = {} (closed form {})", rpt.epsilon, rpt.epsilon_formula);
            let _ = writeln!(s, "structure: {:?}", rpt.structure);
            if let Some(k) = rpt.kind {
                let _ = writeln!(s, "Majorana kind: {:?}", k);
            }
            let _ = writeln!(s, "table row {}: {}", rpt.table_row, if rpt.in_table { "listed" } else { "not listed" });
            let _ = writeln!(s, "\nB =\n{}\n\nC =\n{}", rpt.b, rpt.c);
            if ok {
                let _ = writeln!(s, "\ninvariants: hold");
            } else {
                let _ = writeln!(s, "\ninvariants FAIL: {}", failures.join(", "));
            }
            done(ok, s)
        }
    })
}

/// Witness text for the terminal: indented continuation lines, long ones cut.
fn short_witness(w: &str) -> String {
    const LIMIT: usize = 240;
    let w = w.trim_end().replace('\n', "\n        ");
    match w.char_indices().nth(LIMIT) {
        Some((i, _)) => format!("{} … (full witness in --json output)", &w[..i]),
        None => w,
    }
}

fn report_ok(r: &IdentityReport, strict: bool) -> bool {
    if strict { r.displayed_holds } else { r.pass }
}

fn verify_cmd(a: &VerifyArgs, format: Format) -> Result<Outcome> {
    let reports = match &a.id {
        Some(id) => vec![verify(id, a.dim)?],
        None => verify_all(a.dim)?,
    };
    let ok = reports.iter().all(|r| report_ok(r, a.strict));
    Ok(match format {
        Format::Json => done(ok, json(&reports, false)),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let verdict = match (report_ok(r, a.strict), r.displayed_holds) {
                    (true, true) => "PASS".to_string(),
                    (true, false) => format!("PASS (reading: {})", r.holding_reading.as_deref().unwrap_or("?")),
                    (false, _) => "FAIL".to_string(),
                };
                let _ = writeln!(s, "{:<22} D={:<2} {}", r.id, r.dim, verdict);
                if !r.displayed_holds {
                    for rd in &r.readings {
                        let _ = writeln!(
                            s,
                            "    {:<44} {}{}",
                            rd.reading,
                            if rd.holds { "holds" } else { "fails" },
                            rd.witness.as_deref().map(|w| format!(": {}", short_witness(w))).unwrap_or_default()
                        );
                    }
                }
            }
            let passed = reports.iter().filter(|r| report_ok(r, a.strict)).count();
            let _ = writeln!(s, "{}/{} passed", passed, reports.len());
            done(ok, s)
        }
    })
}

fn lemmas(choice: CoframeChoice, seed: u64, format: Format) -> Result<Outcome> {
    let frame = match choice {
        CoframeChoice::Identity => Coframe::identity(),
        CoframeChoice::Random => Coframe::seeded(seed, 1).remove(0),
    };
    let rows = lemma_reports(&frame)?;
    let ok = rows.iter().all(|r| r.pass);
    Ok(match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                coframe: &'a crate::exactnum::ExactMatrix,
                lemmas: &'a [crate::forms::LemmaReport],
            }
            done(ok, json(&Doc { coframe: frame.matrix(), lemmas: &rows }, false))
        }
        Format::Text => {
            let mut s = format!("coframe e^a_μ =\n{}\n\n", frame.matrix());
            let _ = writeln!(s, "{:<20} {:<42} {:>9} {:>8} {:>8}  verdict", "lemma", "quantity", "per form", "expected", "computed");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<20} {:<42} {:>9} {:>8} {:>8}  {}",
                    r.id,
                    r.quantity,
                    r.form_count,
                    r.expected,
                    r.computed,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            done(ok, s)
        }
    })
}

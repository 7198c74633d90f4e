//! `wmha`: validate groupoid and algebra specs, verify weak multiplier Hopf
//! structures, tabulate duality pairings and merge reports.
//!
//! Exit codes: 0 success, 1 a verified negative result, 2 bad usage or input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wmha_core::algebra::{check_algebra, Algebra, TableAlgebraJson};
use wmha_core::coproduct::{check_pairing, pairing_matrix, PairingSide};
use wmha_core::families::{build_cg, build_kg, canonical_pairing};
use wmha_core::groupoid::{build_groupoid, validate_groupoid, GroupoidSpec};
use wmha_core::report::{Report, Status, Verdict};
use wmha_core::sample::Scope;
use wmha_core::wmha::weak_hopf::{verify_table_coproduct, weak_hopf_adapter, WeakHopfJson};
use wmha_core::wmha::{oracle_failed, verify_wmha, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "wmha", version, about = "Exact verification of weak multiplier Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Window size for infinite structures.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    window: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampled tuples per check for infinite structures.
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a groupoid spec or a table algebra against its axioms.
    Validate { spec: PathBuf },
    /// Build a structure and run the full verification suite.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        /// Cross-check every closed form against the generic dense solver.
        #[arg(long)]
        oracle: bool,
    },
    /// Tabulate the canonical pairing of K(G) and ℂG and check adjointness.
    Pairing { spec: PathBuf },
    /// Merge earlier reports into one summary grouped by check family.
    Report { reports: Vec<PathBuf> },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Kg,
    Cg,
    WeakHopf,
    TableCoproduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A failure before any verification ran: exit 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn validate(cli: &Cli, path: &Path) -> Result<Outcome, InputError> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let report = if value.get("basis").is_some() {
        let spec = TableAlgebraJson::from_json(&text)?;
        let alg = spec.build("table")?;
        check_algebra(&alg, &alg.window(0))
    } else {
        let g = build_groupoid(&GroupoidSpec::from_json(&text)?)?;
        validate_groupoid(g.as_ref(), &g.window(cli.window as usize))
    }
    .conclude();
    let ok = report.all_passed();
    Ok(Outcome { text: report.to_text(), json: report_json(&report), ok })
}

fn verify(cli: &Cli, path: &Path, family: Family, oracle: bool) -> Result<Outcome, InputError> {
    let text = read(path)?;
    let opts = VerifyOptions {
        window: cli.window as usize,
        trials: cli.trials as usize,
        seed: cli.seed,
        oracle,
        ..VerifyOptions::default()
    };
    let report = match family {
        Family::Kg | Family::Cg => {
            let g = build_groupoid(&GroupoidSpec::from_json(&text)?)?;
            let s = if matches!(family, Family::Kg) { build_kg(g)? } else { build_cg(g)? };
            verify_wmha(&s.wmha, &opts)
        }
        Family::WeakHopf => weak_hopf_adapter(&WeakHopfJson::from_json(&text)?.build()?, &opts),
        Family::TableCoproduct => verify_table_coproduct(&WeakHopfJson::from_json(&text)?.build()?, &opts).1,
    };
    let ok = report.verdict.is_positive() && !(oracle && oracle_failed(&report));
    Ok(Outcome { text: report.to_text(), json: report_json(&report), ok })
}

fn pairing(cli: &Cli, path: &Path) -> Result<Outcome, InputError> {
    let g = build_groupoid(&GroupoidSpec::from_json(&read(path)?)?)?;
    let (kg, cg) = (build_kg(g.clone())?, build_cg(g.clone())?);
    let pr = canonical_pairing(&kg, &cg)?;
    let window = cli.window as usize;
    let (wk, wc) = (kg.wmha.alg.window(window), cg.wmha.alg.window(window));
    let scope = if g.is_finite() { Scope::Exhaustive } else { Scope::sampled(window, cli.trials as usize, cli.seed) };
    let a = PairingSide { alg: kg.wmha.algebra(), cp: kg.wmha.cp.as_ref(), window: &wk };
    let b = PairingSide { alg: cg.wmha.algebra(), cp: cg.wmha.cp.as_ref(), window: &wc };
    let mut report = check_pairing(&pr, &a, &b, scope);
    report.structure = format!("⟨{}, {}⟩", kg.wmha.name, cg.wmha.name);
    let report = report.conclude();

    let matrix = pairing_matrix(&pr, &wk, &wc);
    let rows: Vec<Vec<String>> = matrix.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
    let row_labels: Vec<String> = wk.iter().map(|&i| a.alg.basis_label(i)).collect();
    let col_labels: Vec<String> = wc.iter().map(|&j| b.alg.basis_label(j)).collect();

    let width = rows.iter().flatten().chain(&col_labels).map(|s| s.chars().count()).max().unwrap_or(1);
    let lead = row_labels.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut text = format!("{:lead$}", "");
    for c in &col_labels {
        text.push_str(&format!(" {c:>width$}"));
    }
    text.push('\n');
    for (l, r) in row_labels.iter().zip(&rows) {
        text.push_str(&format!("{l:lead$}"));
        for c in r {
            text.push_str(&format!(" {c:>width$}"));
        }
        text.push('\n');
    }
    text.push_str(&report.to_text());
    let json = json!({ "rows": row_labels, "columns": col_labels, "matrix": rows, "report": report_json(&report) });
    let ok = report.all_passed();
    Ok(Outcome { text, json, ok })
}

#[derive(Default)]
struct Group {
    pass: usize,
    fail: usize,
    skipped: usize,
    failing: Vec<String>,
}

/// A report file is either a bare report or a pairing output wrapping one.
fn load_report(path: &Path) -> Result<Report, InputError> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let inner = match value.get("report") {
        Some(r) => r.to_string(),
        None => text,
    };
    Report::from_json(&inner).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn merge(paths: &[PathBuf]) -> Result<Outcome, InputError> {
    if paths.is_empty() {
        return Err(InputError("no reports given".into()));
    }
    let reports = paths.iter().map(|p| load_report(p)).collect::<Result<Vec<_>, _>>()?;
    let mut groups: BTreeMap<String, Group> = BTreeMap::new();
    for r in &reports {
        for c in &r.checks {
            let prefix = c.id.split('.').next().unwrap_or(&c.id).to_string();
            let g = groups.entry(prefix).or_default();
            match c.status {
                Status::Pass => g.pass += 1,
                Status::Skipped => g.skipped += 1,
                Status::Fail => {
                    g.fail += 1;
                    g.failing.push(format!("{}: {}", r.structure, c.id));
                }
            }
        }
    }
    let ok = reports.iter().all(|r| r.all_passed() && r.verdict.is_positive());
    let verdict = if ok { Verdict::Pass } else { Verdict::Fail };

    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{}: {}\n", r.structure, r.verdict));
    }
    text.push_str(&format!("{:<14} {:>6} {:>6} {:>6}\n", "group", "pass", "fail", "skip"));
    for (name, g) in &groups {
        let mark = if g.fail == 0 { "ok" } else { "FAIL" };
        text.push_str(&format!("{name:<14} {:>6} {:>6} {:>6}  {mark}\n", g.pass, g.fail, g.skipped));
    }
    for g in groups.values() {
        for id in &g.failing {
            text.push_str(&format!("failed {id}\n"));
        }
    }
    text.push_str(&format!("verdict: {verdict}\n"));

    let json = json!({
        "structures": reports.iter().map(|r| json!({"structure": r.structure, "verdict": r.verdict})).collect::<Vec<_>>(),
        "groups": groups
            .iter()
            .map(|(k, g)| (k.clone(), json!({"pass": g.pass, "fail": g.fail, "skipped": g.skipped, "failing": g.failing})))
            .collect::<serde_json::Map<_, _>>(),
        "verdict": verdict,
    });
    Ok(Outcome { text, json, ok })
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Validate { spec } => validate(cli, spec),
        Command::Verify { spec, family, oracle } => verify(cli, spec, *family, *oracle),
        Command::Pairing { spec } => pairing(cli, spec),
        Command::Report { reports } => merge(reports),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json values serialize"),
        Format::Text => outcome.text,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(if outcome.ok { 0 } else { 1 })
}

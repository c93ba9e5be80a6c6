//! `cyquot`: reports on fixed points of prime-order automorphisms of
//! Calabi-Yau threefolds.
//!
//! Exit status is 0 on success, 1 when a checked statement is false and 2 on
//! input errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cyquot_core::exactnum::{rational_json, BigRational};
use cyquot_core::lefschetz::{
    admissible_primes, order3_analysis, order5_analysis, s0_terminal_closed_form, s_table,
    solve_configs_with, sum_all_s, verify_config, FixedConfig, Order3Record, Order5Record,
    DEFAULT_MAX_POINTS,
};
use cyquot_core::localtypes::{enumerate_isolated_types, LocalType};
use cyquot_core::pipeline::{builtin_names, run_example, ExampleDef};
use cyquot_core::Execution;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "cyquot",
    version,
    about = "Exact fixed-point reports for Calabi-Yau threefold automorphisms"
)]
struct Cli {
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singularity flags of the local type `(a1,a2,a3)` of order p.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        exps: Vec<i64>,
    },
    /// Primes admitting a non-symplectic automorphism with only terminal fixed points.
    Primes {
        #[arg(long, default_value_t = 1000)]
        max: u64,
    },
    /// All fixed-point configurations satisfying the Lefschetz identity.
    Solve {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max: u32,
        /// Run the search on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Check a configuration file `{p, r, points: [{exps, multiplicity}]}`.
    Verify { file: PathBuf },
    /// The sums S_0..S_{p-1} for every isolated type of order p (or one type).
    S0 {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        exps: Option<Vec<i64>>,
    },
    /// Run a bundled example, or one read from a file.
    Example {
        #[arg(required_unless_present_any = ["file", "list"])]
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        file: Option<PathBuf>,
        /// List the bundled examples.
        #[arg(long)]
        list: bool,
    },
}

/// Output of every command. `verdict` is `None` for pure computations.
///
/// Fields are in alphabetical order, matching the key order of the nested
/// JSON values, so re-serializing a parsed report reproduces it byte for byte.
#[derive(Debug, Serialize, Deserialize)]
struct Report {
    command: String,
    inputs: Value,
    result: Value,
    summary: Vec<String>,
    verdict: Option<bool>,
}

impl Report {
    fn new(command: &str, inputs: Value, result: impl Serialize) -> Result<Self, String> {
        let result = serde_json::to_value(result).map_err(|e| e.to_string())?;
        Ok(Report {
            command: command.into(),
            inputs,
            result,
            verdict: None,
            summary: Vec::new(),
        })
    }
}

#[derive(Serialize)]
struct Rational<'a>(#[serde(with = "rational_json")] &'a BigRational);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut out = std::io::stdout().lock();
            let _ = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                )
            } else {
                report
                    .summary
                    .iter()
                    .try_for_each(|line| writeln!(out, "{line}"))
            };
            if report.verdict == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn local_type(p: u64, exps: &[i64]) -> Result<LocalType, String> {
    let e: [i64; 3] = exps
        .try_into()
        .map_err(|_| format!("expected three exponents, got {}", exps.len()))?;
    LocalType::new(p, e).map_err(|e| e.to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cmd: &Command) -> Result<Report, String> {
    match cmd {
        Command::Classify { p, exps } => classify(*p, exps),
        Command::Primes { max } => primes(*max),
        Command::Solve {
            p,
            r,
            max,
            sequential,
        } => {
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            solve(exec, *p, *r, *max)
        }
        Command::Verify { file } => verify(file),
        Command::S0 { p, exps } => s0(*p, exps.as_deref()),
        Command::Example { name, file, list } => example(name.as_deref(), file.as_ref(), *list),
    }
}

fn classify(p: u64, exps: &[i64]) -> Result<Report, String> {
    let t = local_type(p, exps)?;
    let c = t.classify();
    let mut rep = Report::new("classify", json!({ "p": p, "exps": exps }), &c)?;
    rep.summary = vec![
        format!("type {t}, s = {}", c.s),
        format!("isolated: {}", yes(c.is_isolated)),
        format!("quasi-reflection: {}", yes(c.is_quasi_reflection)),
        format!("Gorenstein: {}", yes(c.is_gorenstein)),
        format!("canonical: {}", yes(c.is_canonical)),
        format!("terminal: {}", yes(c.is_terminal)),
    ];
    Ok(rep)
}

fn primes(max: u64) -> Result<Report, String> {
    let table = admissible_primes(max);
    let mut rep = Report::new("primes", json!({ "max": max }), &table)?;
    rep.summary = if table.is_empty() {
        vec![format!("no admissible primes up to {max}")]
    } else {
        table
            .iter()
            .map(|a| format!("p = {}: {} fixed points", a.p, a.q))
            .collect()
    };
    Ok(rep)
}

#[derive(Serialize)]
struct Solution {
    config: FixedConfig,
    total: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    order3: Option<Order3Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order5: Option<Order5Record>,
}

fn solve(exec: Execution, p: u64, r: i64, max: u32) -> Result<Report, String> {
    let configs = solve_configs_with(exec, p, r, max).map_err(|e| e.to_string())?;
    let mut summary = vec![format!(
        "{} configuration(s) with p = {p}, r = {r}, at most {max} points",
        configs.len()
    )];
    let mut verdict = None;
    let solutions = configs
        .into_iter()
        .map(|c| {
            let order3 = (c.p() == 3)
                .then(|| order3_analysis(&c))
                .transpose()
                .map_err(|e| e.to_string())?;
            let order5 = (c.p() == 5 && c.r() != 0)
                .then(|| order5_analysis(&c))
                .transpose()
                .map_err(|e| e.to_string())?;
            let mut line = format!("  {c}  [{} points]", c.len());
            if let Some(o) = &order3 {
                line += &format!("  n1={} n2={} holds={}", o.n1, o.n2, o.holds);
                verdict = Some(verdict.unwrap_or(true) && o.holds);
            }
            if let Some(o) = &order5 {
                line += &format!("  n={} q1={} q2={} holds={}", o.n, o.q1, o.q2, o.holds);
                verdict = Some(verdict.unwrap_or(true) && o.holds);
            }
            summary.push(line);
            Ok(Solution {
                total: c.len(),
                config: c,
                order3,
                order5,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    let mut rep = Report::new("solve", json!({ "p": p, "r": r, "max": max }), &solutions)?;
    rep.verdict = verdict;
    rep.summary = summary;
    Ok(rep)
}

fn verify(file: &PathBuf) -> Result<Report, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let config: FixedConfig =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
    let report = verify_config(&config);
    let mut rep = Report::new(
        "verify",
        json!({ "file": file.display().to_string() }),
        &report,
    )?;
    rep.verdict = Some(report.valid && report.consistent());
    rep.summary = vec![
        format!("{config}"),
        format!("lefschetz sum: {}", report.lhs),
        format!("expected:      {}", report.rhs),
        format!("valid: {}", yes(report.valid)),
        format!(
            "scalar check: {} = {} ({})",
            report.conti.lhs,
            report.conti.rhs,
            yes(report.conti.ok)
        ),
    ];
    if let Some(o) = &report.order3 {
        rep.summary.push(format!(
            "order 3: n1={} n2={} total={} holds={}",
            o.n1, o.n2, o.total, o.holds
        ));
    }
    if let Some(o) = &report.order5 {
        rep.summary.push(format!(
            "order 5: n={} q1={} q2={} holds={}",
            o.n, o.q1, o.q2, o.holds
        ));
    }
    Ok(rep)
}

#[derive(Serialize)]
struct SRow {
    local_type: LocalType,
    terminal: bool,
    s: Vec<u64>,
    sum: u64,
}

fn s0(p: u64, exps: Option<&[i64]>) -> Result<Report, String> {
    let types = match exps {
        Some(e) => vec![local_type(p, e)?],
        None => enumerate_isolated_types(p).map_err(|e| e.to_string())?,
    };
    let closed = s0_terminal_closed_form(p).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut agree = true;
    let mut summary = vec![format!("S_0 closed form for terminal types: {closed}")];
    for t in types {
        let s = s_table(&t).map_err(|e| e.to_string())?;
        let terminal = t.is_terminal().map_err(|e| e.to_string())?;
        if terminal {
            agree &= BigRational::from_integer(s[0].into()) == closed;
        }
        let shown: Vec<String> = s.iter().map(u64::to_string).collect();
        summary.push(format!(
            "{t}{}  S = [{}]",
            if terminal { " terminal" } else { "" },
            shown.join(", ")
        ));
        rows.push(SRow {
            sum: sum_all_s(&t).map_err(|e| e.to_string())?,
            local_type: t,
            terminal,
            s,
        });
    }
    summary.push(format!(
        "terminal S_0 matches the closed form: {}",
        yes(agree)
    ));
    let result = json!({ "closed_form": Rational(&closed), "rows": rows });
    let mut rep = Report::new("s0", json!({ "p": p, "exps": exps }), result)?;
    rep.verdict = Some(agree);
    rep.summary = summary;
    Ok(rep)
}

fn example(name: Option<&str>, file: Option<&PathBuf>, list: bool) -> Result<Report, String> {
    if list {
        let names = builtin_names();
        let mut rep = Report::new("example", json!({ "list": true }), &names)?;
        rep.summary = names.iter().map(|n| n.to_string()).collect();
        return Ok(rep);
    }
    let (def, inputs) = match (name, file) {
        (Some(n), _) => (
            ExampleDef::builtin(n).map_err(|e| e.to_string())?,
            json!({ "name": n }),
        ),
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f).map_err(|e| format!("{}: {e}", f.display()))?;
            let def = ExampleDef::from_json(&text).map_err(|e| format!("{}: {e}", f.display()))?;
            (def, json!({ "file": f.display().to_string() }))
        }
        (None, None) => return Err("an example name or --file is required".into()),
    };
    let report = run_example(&def).map_err(|e| e.to_string())?;
    let mut rep = Report::new("example", inputs, &report)?;
    rep.verdict = Some(report.passed);
    let mut summary = vec![
        format!("{}: {}", report.name, report.summary),
        format!(
            "ambient {:?}, divisor {:?}, group order {}, {} invariant sections",
            report.ambient, report.divisor, report.group_order, report.invariant_sections
        ),
    ];
    for e in &report.elements {
        let dims: Vec<String> = e
            .components
            .iter()
            .map(|c| c.component.dimension.to_string())
            .collect();
        summary.push(format!(
            "  {} (order {}): component dimensions [{}], on Y {:?}",
            e.word,
            e.order,
            dims.join(","),
            e.on_y
        ));
    }
    if let Some(b) = &report.burnside {
        let terms: Vec<String> = b.terms.iter().map(u64::to_string).collect();
        summary.push(format!(
            "  Burnside: ({}) / {} = {}",
            terms.join("+"),
            report.group_order,
            b.count
        ));
    }
    if let Some(o) = &report.orbits {
        summary.push(format!(
            "  {} components in {} orbits, sizes {:?}",
            o.orbits.components, o.orbits.orbits, o.orbits.orbit_sizes
        ));
    }
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        summary.push(format!(
            "{mark} {}: expected {}, got {}",
            c.name, c.expected, c.actual
        ));
    }
    rep.summary = summary;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let c = Cli::try_parse_from([
            "cyquot", "classify", "--p", "3", "--exps", "1,1,2", "--json",
        ])
        .unwrap();
        assert!(c.json);
        assert!(matches!(c.command, Command::Classify { p: 3, .. }));
        assert!(Cli::try_parse_from(["cyquot", "example"]).is_err());
        assert!(Cli::try_parse_from(["cyquot", "solve", "--p", "2", "--r", "-1"]).is_ok());
    }

    #[test]
    fn wrong_arity_is_an_input_error() {
        assert!(classify(3, &[1, 1])
            .unwrap_err()
            .contains("three exponents"));
    }
}

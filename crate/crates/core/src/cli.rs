//! The `frieze` command line: enumerate, count, verify, map, print and
//! partitions.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 a
//! verification mismatch. Timing goes to stderr so stdout is byte-stable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::formulas::{self, QInt};
use crate::frieze::{
    check_tame, check_tame_all_diamonds, render_frieze, FirstRow, Frieze, RenderFormat,
};
use crate::gf::Field;
use crate::moduli::{self, Configuration, GroupAction, ModuliError, SignFilter};
use crate::partitions::{self, PartitionError};
use crate::search::{self, CatalogFormat, SearchError, SearchOptions, Strategy};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "frieze",
    version,
    about = "Tame friezes and configurations over finite fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Cap on estimated work (matrix products or configurations visited).
    #[arg(long, global = true, env = "FRIEZE_BUDGET", default_value_t = crate::DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Naive,
    Mitm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountKind {
    /// Frieze counts `f_w` for `w = 1..=max`.
    Friezes,
    /// Configuration and moduli counts for `n = 2..=max`.
    Moduli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Friezes,
    Moduli,
    Partitions,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// First row to configuration.
    Config,
    /// Configuration to first row.
    Frieze,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all tame friezes of a width and list dihedral orbits.
    Enumerate {
        #[arg(long)]
        field: String,
        #[arg(long)]
        width: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Mitm)]
        strategy: StrategyArg,
    },
    /// Tabulate closed-form counts.
    Count {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = CountKind::Friezes)]
        kind: CountKind,
        /// Largest width (friezes) or number of points (moduli).
        #[arg(long, default_value_t = 7)]
        max: usize,
    },
    /// Compare brute-force counts with closed forms.
    Verify {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
        #[arg(long, default_value_t = 4)]
        max_width: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Map a first row to its configuration or a configuration to its row.
    Map {
        #[arg(long)]
        field: String,
        #[arg(long, value_enum)]
        to: Target,
        /// Element codes, e.g. 1,1,1,0,0.
        #[arg(long, required_if_eq("to", "config"))]
        row: Option<String>,
        /// Element codes or `inf`, e.g. 0,1,inf.
        #[arg(long, required_if_eq("to", "frieze"))]
        points: Option<String>,
    },
    /// Render the frieze generated by a first row and check tameness.
    Print {
        #[arg(long)]
        field: String,
        #[arg(long)]
        row: String,
        /// Check every 3x3 diamond, not only zero-centred ones.
        #[arg(long)]
        all_diamonds: bool,
    },
    /// Triangle of cyclic partition counts `A(k, n)`.
    Partitions {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(Outcome { text, mismatch }) => {
            let _ = out.write_all(text.as_bytes());
            if mismatch {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    let budget = matches!(
        e,
        Error::Search(SearchError::BudgetExceeded { .. })
            | Error::Moduli(ModuliError::BudgetExceeded { .. })
            | Error::Partition(PartitionError::Moduli(ModuliError::BudgetExceeded { .. }))
    );
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

struct Outcome {
    text: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome {
            text,
            mismatch: false,
        }
    }
}

fn json_line(v: &Value) -> String {
    format!("{v}\n")
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, Error> {
    let opts = SearchOptions {
        budget: cli.budget,
        workers: cli.workers,
        ..SearchOptions::default()
    };
    match &cli.command {
        Command::Enumerate {
            field,
            width,
            strategy,
        } => {
            let field: Field = field.parse()?;
            let strategy = match strategy {
                StrategyArg::Naive => Strategy::Naive,
                StrategyArg::Mitm => Strategy::Mitm,
            };
            let res = search::enumerate_friezes(&field, *width, strategy, &opts)?;
            let _ = writeln!(err, "elapsed: {:.3?}", res.elapsed);
            let mut text = search::catalog_orbits(&res, catalog_format(cli.format));
            if cli.format == Format::Json {
                text.push('\n');
            }
            Ok(Outcome::ok(text))
        }
        Command::Count { field, kind, max } => {
            let field: Field = field.parse()?;
            Ok(Outcome::ok(count_table(&field, *kind, *max, cli.format)?))
        }
        Command::Verify {
            field,
            which,
            max_width,
            max_n,
        } => {
            let field: Field = field.parse()?;
            verify(&field, *which, *max_width, *max_n, &opts, cli.format)
        }
        Command::Map {
            field,
            to,
            row,
            points,
        } => {
            let field: Field = field.parse()?;
            match to {
                Target::Config => {
                    map_to_config(&field, row.as_deref().unwrap_or_default(), cli.format)
                }
                Target::Frieze => {
                    map_to_frieze(&field, points.as_deref().unwrap_or_default(), cli.format)
                }
            }
        }
        Command::Print {
            field,
            row,
            all_diamonds,
        } => {
            let field: Field = field.parse()?;
            let entries = field.parse_elements(row)?;
            let frieze = Frieze::from_first_row(FirstRow::new(&field, entries)?)?;
            let report = if *all_diamonds {
                check_tame_all_diamonds(&frieze)
            } else {
                check_tame(&frieze)
            };
            let text = match cli.format {
                Format::Text => {
                    let mut s = render_frieze(&frieze, RenderFormat::Text);
                    match report.witness {
                        None => writeln!(
                            s,
                            "tame: yes ({} diamonds checked)",
                            report.diamonds_checked
                        ),
                        Some((r, c)) => writeln!(s, "tame: no (diamond at row {r}, column {c})"),
                    }
                    .unwrap();
                    s
                }
                Format::Json => {
                    let mut s = render_frieze(&frieze, RenderFormat::Json);
                    s.push('\n');
                    s
                }
            };
            Ok(Outcome {
                text,
                mismatch: !report.ok,
            })
        }
        Command::Partitions { max_n } => Ok(Outcome::ok(partition_table(*max_n, cli.format))),
    }
}

fn catalog_format(f: Format) -> CatalogFormat {
    match f {
        Format::Text => CatalogFormat::Text,
        Format::Json => CatalogFormat::Json,
    }
}

fn count_table(
    field: &Field,
    kind: CountKind,
    max: usize,
    format: Format,
) -> Result<String, Error> {
    let q = field.order() as u64;
    let c2 = field.is_char_two();
    let mut rows: Vec<Vec<String>> = Vec::new();
    let header: Vec<&str> = match kind {
        CountKind::Friezes => {
            for w in 1..=max {
                rows.push(vec![
                    w.to_string(),
                    formulas::count_friezes(q, c2, w)?.to_string(),
                ]);
            }
            vec!["w", "f_w"]
        }
        CountKind::Moduli => {
            for n in 2..=max {
                let (plus, minus, mplus) = if n % 2 == 0 {
                    let (p, m) = formulas::count_signed_configurations(q, c2, n)?;
                    let mp = formulas::count_moduli_plus(q, c2, (n / 2) as u32);
                    (p.to_string(), m.to_string(), mp.to_string())
                } else {
                    ("-".into(), "-".into(), "-".into())
                };
                rows.push(vec![
                    n.to_string(),
                    formulas::count_configurations(q, n).to_string(),
                    plus,
                    minus,
                    formulas::count_moduli(q, n)?.to_string(),
                    mplus,
                ]);
            }
            vec!["n", "c_n", "c_n+", "c_n-", "moduli", "moduli+"]
        }
    };
    Ok(match format {
        Format::Text => text_table(&header, &rows),
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let obj = header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| ((*h).to_string(), cell_json(v)))
                        .collect::<serde_json::Map<_, _>>();
                    Value::Object(obj)
                })
                .collect();
            json_line(&json!({ "field": field.descriptor(), "rows": items }))
        }
    })
}

/// Integers as JSON numbers when they fit in u64, otherwise as strings.
fn cell_json(v: &str) -> Value {
    match v.parse::<u64>() {
        Ok(n) => json!(n),
        Err(_) if v == "-" => Value::Null,
        Err(_) => json!(v),
    }
}

fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

/// One brute-force versus closed-form comparison.
struct Check {
    check: &'static str,
    param: String,
    enumerated: String,
    closed_form: String,
}

impl Check {
    fn new(
        check: &'static str,
        param: String,
        enumerated: impl ToString,
        closed_form: impl ToString,
    ) -> Check {
        Check {
            check,
            param,
            enumerated: enumerated.to_string(),
            closed_form: closed_form.to_string(),
        }
    }

    fn ok(&self) -> bool {
        self.enumerated == self.closed_form
    }
}

fn verify(
    field: &Field,
    which: Which,
    max_width: usize,
    max_n: usize,
    opts: &SearchOptions,
    format: Format,
) -> Result<Outcome, Error> {
    let mut checks = Vec::new();
    if matches!(which, Which::Friezes | Which::All) {
        for row in search::verify_count_formula(field, max_width, opts)? {
            checks.push(Check::new(
                "friezes",
                format!("w={}", row.w),
                row.enumerated,
                row.closed_form,
            ));
        }
    }
    if matches!(which, Which::Moduli | Which::All) {
        verify_moduli(field, max_n, opts.budget, &mut checks)?;
    }
    if matches!(which, Which::Partitions | Which::All) {
        verify_partitions(field, max_n, opts.budget, &mut checks)?;
    }
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.ok()).collect();
    let text = match format {
        Format::Text => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    vec![
                        c.check.to_string(),
                        c.param.clone(),
                        c.enumerated.clone(),
                        c.closed_form.clone(),
                        if c.ok() { "ok" } else { "MISMATCH" }.to_string(),
                    ]
                })
                .collect();
            let mut s = text_table(
                &["check", "param", "enumerated", "closed_form", "status"],
                &rows,
            );
            if failed.is_empty() {
                writeln!(s, "all {} checks match", checks.len()).unwrap();
            }
            for c in &failed {
                writeln!(
                    s,
                    "mismatch: {} {}: enumerated {} but closed form {}",
                    c.check, c.param, c.enumerated, c.closed_form
                )
                .unwrap();
            }
            s
        }
        Format::Json => {
            let items: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "check": c.check,
                        "param": c.param,
                        "enumerated": cell_json(&c.enumerated),
                        "closed_form": cell_json(&c.closed_form),
                        "match": c.ok(),
                    })
                })
                .collect();
            json_line(&json!({
                "field": field.descriptor(),
                "checks": items,
                "ok": failed.is_empty(),
            }))
        }
    };
    Ok(Outcome {
        text,
        mismatch: !failed.is_empty(),
    })
}

fn verify_moduli(
    field: &Field,
    max_n: usize,
    budget: u64,
    checks: &mut Vec<Check>,
) -> Result<(), Error> {
    let q = field.order() as u64;
    let c2 = field.is_char_two();
    for n in 2..=max_n {
        let param = format!("n={n}");
        let all = moduli::enumerate_configurations(field, n, SignFilter::All, budget)?.count();
        checks.push(Check::new(
            "configurations",
            param.clone(),
            all,
            formulas::count_configurations(q, n),
        ));
        let orbits = moduli::pgl2_orbit_count(field, n, SignFilter::All, budget)?;
        checks.push(Check::new(
            "orbits",
            param.clone(),
            orbits.orbit_count(),
            formulas::count_moduli(q, n)?,
        ));
        if n % 2 == 0 {
            let (plus, minus) = formulas::count_signed_configurations(q, c2, n)?;
            let count = |s| -> Result<usize, Error> {
                Ok(moduli::enumerate_configurations(field, n, s, budget)?.count())
            };
            checks.push(Check::new(
                "plus",
                param.clone(),
                count(SignFilter::Plus)?,
                plus,
            ));
            checks.push(Check::new(
                "minus",
                param.clone(),
                count(SignFilter::Minus)?,
                minus,
            ));
            let plus_orbits = moduli::pgl2_orbit_count(field, n, SignFilter::Plus, budget)?;
            checks.push(Check::new(
                "plus-orbits",
                param.clone(),
                plus_orbits.orbit_count(),
                formulas::count_moduli_plus(q, c2, (n / 2) as u32),
            ));
        } else if n >= 5 {
            // one frieze per orbit, all distinct
            let mut rows: Vec<Vec<u32>> = orbits
                .orbits
                .iter()
                .map(|(rep, _)| moduli::configuration_to_frieze(rep).map(|r| r.codes()))
                .collect::<Result<_, _>>()?;
            rows.sort();
            rows.dedup();
            let expected: QInt = formulas::count_friezes(q, c2, n - 3)?;
            checks.push(Check::new("orbit-friezes", param, rows.len(), expected));
        }
    }
    Ok(())
}

fn verify_partitions(
    field: &Field,
    max_n: usize,
    budget: u64,
    checks: &mut Vec<Check>,
) -> Result<(), Error> {
    let q = field.order() as u64;
    for n in 2..=max_n {
        for k in 2..=n {
            checks.push(Check::new(
                "cyclic-partitions",
                format!("k={k} n={n}"),
                partitions::count_cyclic_partitions(n, k),
                partitions::a_kn_closed_form(k, n)?,
            ));
        }
        checks.push(Check::new(
            "partition-identity",
            format!("n={n}"),
            partitions::configuration_count_from_partitions(q, n),
            formulas::count_configurations(q, n),
        ));
        match partitions::verify_partition_identity(field, n, budget) {
            Ok(report) => checks.push(Check::new(
                "equality-patterns",
                format!("n={n}"),
                report.patterns_consistent,
                true,
            )),
            Err(PartitionError::Moduli(ModuliError::BudgetExceeded { .. })) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn map_to_config(field: &Field, row: &str, format: Format) -> Result<Outcome, Error> {
    let entries = field.parse_elements(row)?;
    let row = FirstRow::new(field, entries)?;
    let config = moduli::frieze_to_configuration(&row)?;
    let back = moduli::configuration_to_frieze(&config)?;
    let expected = if row.len() % 2 == 0 {
        moduli::canonical_rescaling(field, row.entries())
    } else {
        row.entries().to_vec()
    };
    let round_trip = back.entries() == expected.as_slice();
    let text = match format {
        Format::Text => format!(
            "configuration: {config}\nround trip: {}\n",
            if round_trip { "ok" } else { "FAILED" }
        ),
        Format::Json => json_line(&json!({
            "field": field.descriptor(),
            "first_row": row.codes(),
            "configuration": config.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "round_trip": round_trip,
        })),
    };
    Ok(Outcome {
        text,
        mismatch: !round_trip,
    })
}

fn map_to_frieze(field: &Field, points: &str, format: Format) -> Result<Outcome, Error> {
    let config = Configuration::parse(field, points)?;
    let row = moduli::configuration_to_frieze(&config)?;
    let back = moduli::frieze_to_configuration(&row)?;
    let group = GroupAction::new(field);
    let round_trip = group.canonical(&back.indices()) == group.canonical(&config.indices());
    let codes: Vec<String> = row.codes().iter().map(|c| c.to_string()).collect();
    let text = match format {
        Format::Text => format!(
            "first row: {}\ncriterion: ok\nround trip: {}\n",
            codes.join(","),
            if round_trip { "ok" } else { "FAILED" }
        ),
        Format::Json => json_line(&json!({
            "field": field.descriptor(),
            "configuration": config.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "first_row": row.codes(),
            "round_trip": round_trip,
        })),
    };
    Ok(Outcome {
        text,
        mismatch: !round_trip,
    })
}

fn partition_table(max_n: usize, format: Format) -> String {
    let triangle = partitions::partition_triangle(max_n);
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, row) in triangle.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(s, "n={:<3}{}", i + 2, cells.join(" ")).unwrap();
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = triangle
                .iter()
                .enumerate()
                .map(|(i, row)| json!({ "n": i + 2, "a": row }))
                .collect();
            json_line(&json!({ "max_n": max_n, "rows": rows }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("frieze").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn text_table_layout() {
        let t = text_table(
            &["w", "f_w"],
            &[
                vec!["1".into(), "3".into()],
                vec!["10".into(), "1365".into()],
            ],
        );
        assert_eq!(t, "w   f_w\n1   3\n10  1365\n");
    }

    #[test]
    fn count_friezes_table() {
        let (code, out, _) = call(&["count", "--field", "2", "--max", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "w  f_w\n1  3\n2  5\n3  11\n");
    }

    #[test]
    fn budget_exit_code() {
        let (code, _, err) = call(&[
            "--budget",
            "10",
            "enumerate",
            "--field",
            "3",
            "--width",
            "3",
        ]);
        assert_eq!(code, EXIT_BUDGET);
        assert!(err.contains("exceeds the budget"));
    }
}

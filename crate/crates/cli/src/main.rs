//! `mtsym`: exact modular symbols and Mazur–Tate elements for
//! `y^2 + y = x^3 + 2` from the command line.

mod verify;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mtsym::analysis::{
    algebraic_l_quadratic, cyclotomic_valuation_report, rho3_coefficient_report, search_pairs,
    twisted_valuation_report,
};
use mtsym::mazur_tate::{specialize, specialize_twisted, xi_cyclotomic};
use mtsym::numth::PairReport;
use mtsym::{Error, SymbolEngine};
use serde_json::json;

/// Largest cyclotomic level accepted; sweeps at level n cover 2^(n+2) m residues.
const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "mtsym",
    version,
    about = "Exact modular symbols and Mazur-Tate elements for y^2 + y = x^3 + 2"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,
    /// Load computed values from this file first and write them back afterwards.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// Number of worker threads for sweeps and searches.
    #[arg(long, global = true, value_name = "K")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MtAction {
    /// Coefficients of the untwisted element in powers of g = sigma_5.
    Element,
    /// Value and 2-adic valuation at the faithful character of level n.
    Specialize,
    /// Valuations at every level up to n against q_n / 2^(n-1).
    Report,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print S(k/t).
    Sval {
        #[arg(allow_negative_numbers = true)]
        k: i64,
        #[arg(allow_negative_numbers = true)]
        t: i64,
    },
    /// Mazur-Tate elements along the cyclotomic Z_2-tower.
    Mt {
        #[arg(long, short = 'n')]
        level: u32,
        /// Twist by Q(sqrt m), m = pq with p, q admissible primes.
        #[arg(long)]
        twist: Option<i64>,
        #[arg(value_enum)]
        action: MtAction,
    },
    /// Algebraic L-value of the quadratic twist by m.
    Lvalue { m: i64 },
    /// Admissible prime pairs (p, q) with pq below a bound.
    Search {
        #[arg(long = "max", default_value_t = 5000)]
        bound: u64,
    },
    /// Run every reproducible check and report PASS/FAIL per line.
    VerifyPaper {
        /// Restrict to one module.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::MODULES))]
        only: Option<String>,
        /// Skip checks at cyclotomic levels above this.
        #[arg(long, default_value_t = 6)]
        max_level: u32,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
        {
            eprintln!("mtsym: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("mtsym: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Command::Search { bound } = cli.command {
        return print_pairs(&search_pairs(bound), cli.format);
    }
    let engine = SymbolEngine::build()?;
    if let Some(path) = &cli.cache {
        if path.exists() {
            engine.load_cache(BufReader::new(File::open(path)?))?;
        }
    }
    let result = dispatch(cli, &engine);
    if let Some(path) = &cli.cache {
        let mut w = BufWriter::new(File::create(path)?);
        engine.save_cache(&mut w)?;
        w.flush()?;
    }
    result
}

fn check_level(level: u32) -> Result<(), Failure> {
    if level > MAX_LEVEL {
        return Err(Failure::Usage(format!(
            "level {level} exceeds the maximum {MAX_LEVEL}"
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli, engine: &SymbolEngine) -> Result<(), Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Sval { k, t } => {
            let s = engine.s_value(*k, *t)?;
            match format {
                Format::Table => println!("{s}"),
                Format::Csv => println!("k,t,s\n{k},{t},{s}"),
                Format::Json => println!("{}", json!({ "k": k, "t": t, "s": s.to_string() })),
            }
        }
        Command::Mt {
            level,
            twist,
            action,
        } => {
            check_level(*level)?;
            mt(engine, *level, *twist, *action, format)?;
        }
        Command::Lvalue { m } => {
            let r = algebraic_l_quadratic(engine, *m)?;
            match format {
                Format::Table => {
                    println!("m        {}", r.m);
                    println!("p, q     {}, {}", r.p, r.q);
                    println!("L/Omega  {}", r.value);
                    println!("parity   {}", if r.odd { "odd" } else { "even" });
                    println!(
                        "euler    {} ({})",
                        r.euler_prediction,
                        if r.euler_congruence_holds {
                            "congruent mod 2"
                        } else {
                            "NOT congruent mod 2"
                        }
                    );
                }
                Format::Csv => println!(
                    "m,p,q,value,odd,euler_prediction,euler_congruent\n{},{},{},{},{},{},{}",
                    r.m, r.p, r.q, r.value, r.odd, r.euler_prediction, r.euler_congruence_holds
                ),
                Format::Json => println!(
                    "{}",
                    json!({
                        "m": r.m, "p": r.p, "q": r.q, "value": r.value, "odd": r.odd,
                        "euler_prediction": r.euler_prediction,
                        "euler_congruent": r.euler_congruence_holds,
                    })
                ),
            }
        }
        Command::Search { .. } => unreachable!("handled before engine construction"),
        Command::VerifyPaper {
            only,
            max_level,
            json,
        } => {
            check_level(*max_level)?;
            let format = if *json { Format::Json } else { format };
            let outcomes = verify::run(engine, only.as_deref(), *max_level);
            print_outcomes(&outcomes, format)?;
            if outcomes.iter().any(|o| o.status == verify::Status::Fail) {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn mt(
    engine: &SymbolEngine,
    level: u32,
    twist: Option<i64>,
    action: MtAction,
    format: Format,
) -> Result<(), Failure> {
    match (action, twist) {
        (MtAction::Element, Some(_)) => Err(Failure::Usage(
            "twisted elements are only available through their specializations".into(),
        )),
        (MtAction::Element, None) => {
            let xi = xi_cyclotomic(engine, level)?;
            match format {
                Format::Table => println!("{xi}"),
                Format::Csv => {
                    println!("j,coefficient");
                    for (j, c) in xi.coeffs().iter().enumerate() {
                        println!("{j},{c}");
                    }
                }
                Format::Json => {
                    let coeffs: Vec<String> = xi.coeffs().iter().map(|c| c.to_string()).collect();
                    println!(
                        "{}",
                        json!({ "level": level, "element": xi.to_string(), "coefficients": coeffs })
                    );
                }
            }
            Ok(())
        }
        (MtAction::Specialize, _) => {
            if level == 0 {
                return Err(Error::LevelTooSmall { min: 1, got: 0 }.into());
            }
            let value = match twist {
                Some(m) => specialize_twisted(engine, level, m)?,
                None => specialize(&xi_cyclotomic(engine, level)?, level)?,
            };
            let v = value.val2();
            match format {
                Format::Table => println!("{value}\nvaluation {v}"),
                Format::Csv => println!(
                    "level,twist,value,valuation\n{level},{},{value},{v}",
                    twist.unwrap_or(1)
                ),
                Format::Json => println!(
                    "{}",
                    json!({ "level": level, "twist": twist.unwrap_or(1), "value": value.to_string(), "valuation": v.to_string() })
                ),
            }
            Ok(())
        }
        (MtAction::Report, None) => {
            let rows = cyclotomic_valuation_report(engine, level)?;
            let lines: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        r.mu.to_string(),
                        r.lambda.to_string(),
                        r.specialization.valuation.to_string(),
                        r.specialization.expected.to_string(),
                        r.matches().to_string(),
                    ]
                })
                .collect();
            emit_rows(
                &["n", "mu", "lambda", "valuation", "expected", "match"],
                &lines,
                format,
            );
            Ok(())
        }
        (MtAction::Report, Some(m)) => {
            let report = twisted_valuation_report(engine, m, level.max(1))?;
            let mut lines = vec![[
                "1".to_string(),
                if report.rho1_vanishes { "0" } else { "nonzero" }.to_string(),
                "inf".to_string(),
                "inf".to_string(),
                report.rho1_vanishes.to_string(),
            ]];
            lines.extend(report.rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.value.to_string(),
                    r.valuation.to_string(),
                    r.expected.to_string(),
                    r.matches.to_string(),
                ]
            }));
            emit_rows(
                &["n", "value", "valuation", "expected", "match"],
                &lines,
                format,
            );
            if level >= 3 && format == Format::Table {
                let r = rho3_coefficient_report(engine, m)?;
                println!();
                println!("c1..c4 = {:?}", r.c);
                for c in &r.congruences {
                    println!(
                        "c{} + c{} = {:>4}   2*sum S(x/32), x = {:?}: {:>3}   expected {} mod 4   {}",
                        c.pair.0,
                        c.pair.1,
                        c.lhs,
                        c.residues,
                        c.rhs,
                        c.expected_residue,
                        if c.holds { "ok" } else { "FAILS" }
                    );
                }
            }
            Ok(())
        }
    }
}

/// Plain aligned table, CSV with a header, or a JSON array of objects.
fn emit_rows<const N: usize>(header: &[&str; N], rows: &[[String; N]], format: Format) {
    match format {
        Format::Table => {
            let mut widths = header.map(str::len);
            for row in rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("{}", line(header.to_vec()));
            for row in rows {
                println!("{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        Format::Csv => {
            println!("{}", header.join(","));
            for row in rows {
                println!("{}", row.join(","));
            }
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .zip(row)
                        .map(|(h, c)| (h.to_string(), json!(c)))
                        .collect::<serde_json::Map<_, _>>()
                        .into()
                })
                .collect();
            println!("{}", serde_json::Value::Array(objects));
        }
    }
}

fn print_pairs(rows: &[PairReport], format: Format) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            if rows.is_empty() {
                w.write_record(["m", "a_m", "p", "q", "h_q", "h_6pq"])
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            for r in rows {
                w.serialize(r).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string(rows).map_err(|e| Failure::Usage(e.to_string()))?
        ),
        Format::Table => {
            let lines: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.m.to_string(),
                        r.a_m.to_string(),
                        r.p.to_string(),
                        r.q.to_string(),
                        r.h_q.to_string(),
                        r.h_6pq.to_string(),
                    ]
                })
                .collect();
            emit_rows(
                &["m", "a_m", "p", "q", "h(-q)", "h(-6pq)"],
                &lines,
                Format::Table,
            );
        }
    }
    Ok(())
}

fn print_outcomes(outcomes: &[verify::Outcome], format: Format) -> Result<(), Failure> {
    let failed = outcomes
        .iter()
        .filter(|o| o.status == verify::Status::Fail)
        .count();
    let flagged = outcomes
        .iter()
        .filter(|o| o.status == verify::Status::Flag)
        .count();
    match format {
        Format::Json => {
            let checks: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "status": o.status.label(), "module": o.module, "check": o.name,
                        "expected": o.expected, "actual": o.actual,
                    })
                })
                .collect();
            println!(
                "{}",
                json!({ "passed": outcomes.len() - failed - flagged, "failed": failed, "flagged": flagged, "checks": checks })
            );
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(["status", "module", "check", "expected", "actual"])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            for o in outcomes {
                w.write_record([o.status.label(), o.module, &o.name, &o.expected, &o.actual])
                    .map_err(|e| Failure::Usage(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Table => {
            for o in outcomes {
                println!(
                    "{} {:<10} {}: expected {}, got {}",
                    o.status.label(),
                    o.module,
                    o.name,
                    o.expected,
                    o.actual
                );
            }
            println!(
                "{} checks: {} passed, {failed} failed, {flagged} flagged",
                outcomes.len(),
                outcomes.len() - failed - flagged
            );
        }
    }
    Ok(())
}

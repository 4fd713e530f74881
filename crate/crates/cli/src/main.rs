//! `covereq`: batch queries on residue-class system files.
//!
//! Exit status: 0 yes / report written, 1 no, 2 usage or input error.
//! Reports go to stdout, progress and diagnostics to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use covereq_core::covsys::{covering_table, equivalent_bruteforce, exact_m_cover_bruteforce, parse_system, s_set};
use covereq_core::equivalence::{
    are_equivalent, are_equivalent_with_prime, is_exact_m_cover, is_exact_m_cover_with_prime,
};
use covereq_core::explorer::{composite_counterexample, go_search_with, GoProgress, GoSearchOptions};
use covereq_core::{EquivalenceWitness, Error, System, DEFAULT_MAX_PERIOD};

#[derive(Parser)]
#[command(name = "covereq", version, about = "Covering equivalence of residue-class systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two systems have the same covering function.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        query: QueryFlags,
    },
    /// Decide whether an unweighted system covers every integer exactly m times.
    ExactCover {
        file: PathBuf,
        m: u64,
        #[command(flatten)]
        query: QueryFlags,
    },
    /// Print the covering function over one period.
    Table {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
        max_period: u64,
    },
    /// Print |S| for the moduli of a system and the least prime above it.
    Sset {
        file: PathBuf,
        /// Also print the fractions of S in increasing order.
        #[arg(long)]
        list: bool,
    },
    /// Show a vanishing sum at a composite order q with |S| < q.
    ExampleComposite { q: u64, prime_divisor: u64, n: u64 },
    /// Search vanishing sums with distinct moduli coprime to q.
    GoSearch {
        q: u64,
        k_max: u64,
        /// Stop starting new work after this many seconds.
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
}

#[derive(Args)]
struct QueryFlags {
    /// Print the coefficient vector of the combined sum.
    #[arg(long)]
    witness: bool,
    /// Cross-check against the covering table when the period allows.
    #[arg(long)]
    oracle: bool,
    /// Use this prime instead of the least one above |S|.
    #[arg(long)]
    prime: Option<u64>,
    /// Largest period the table cross-check will evaluate.
    #[arg(long, default_value_t = DEFAULT_MAX_PERIOD)]
    max_period: u64,
}

/// A failure that maps to exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn load(path: &Path) -> Result<System, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    parse_system(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn describe(witness: &EquivalenceWitness) -> String {
    format!("p={}, |S|={}", witness.prime, witness.s_cardinality)
}

fn witness_lines(out: &mut String, witness: &EquivalenceWitness) {
    let coefficients: Vec<String> = witness
        .combined_sum
        .coefficients()
        .iter()
        .map(ToString::to_string)
        .collect();
    writeln!(out, "sum={}", witness.combined_sum).unwrap();
    writeln!(out, "coefficients: {}", coefficients.join(" ")).unwrap();
}

/// Appends the oracle line; a disagreement is an internal error.
fn oracle_line(out: &mut String, verdict: bool, oracle: covereq_core::Result<bool>) -> Result<(), Failure> {
    match oracle {
        Ok(answer) if answer == verdict => {
            writeln!(out, "oracle: agrees").unwrap();
            Ok(())
        }
        Ok(answer) => Err(Failure(format!(
            "oracle disagrees: table says {answer}, criterion says {verdict}"
        ))),
        Err(Error::PeriodTooLarge { period, max }) => {
            writeln!(out, "oracle: skipped (period {period} exceeds {max})").unwrap();
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_equiv(a: &Path, b: &Path, flags: &QueryFlags) -> Outcome {
    let (a, b) = (load(a)?, load(b)?);
    let (verdict, witness) = match flags.prime {
        Some(p) => are_equivalent_with_prime(&a, &b, p)?,
        None => are_equivalent(&a, &b)?,
    };
    let mut out = String::new();
    let label = if verdict { "equivalent" } else { "not equivalent" };
    writeln!(out, "{label} ({})", describe(&witness)).unwrap();
    if flags.witness {
        witness_lines(&mut out, &witness);
    }
    if flags.oracle {
        oracle_line(&mut out, verdict, equivalent_bruteforce(&a, &b, flags.max_period))?;
    }
    print!("{out}");
    Ok(verdict)
}

fn cmd_exact_cover(file: &Path, m: u64, flags: &QueryFlags) -> Outcome {
    let system = load(file)?;
    let (verdict, witness) = match flags.prime {
        Some(p) => is_exact_m_cover_with_prime(&system, m, p)?,
        None => is_exact_m_cover(&system, m)?,
    };
    let mut out = String::new();
    let label = if verdict { "exact" } else { "not an exact" };
    writeln!(out, "{label} {m}-cover ({})", describe(&witness)).unwrap();
    if flags.witness {
        witness_lines(&mut out, &witness);
    }
    if flags.oracle {
        oracle_line(&mut out, verdict, exact_m_cover_bruteforce(&system, m, flags.max_period))?;
    }
    print!("{out}");
    Ok(verdict)
}

fn cmd_table(file: &Path, max_period: u64) -> Outcome {
    let table = covering_table(&load(file)?, max_period)?;
    println!("{table}");
    Ok(true)
}

fn cmd_sset(file: &Path, list: bool) -> Outcome {
    let system = load(file)?;
    if system.is_empty() {
        return Err(Failure(format!("{}: empty system", file.display())));
    }
    let s = s_set(&system.moduli())?;
    let prime = covereq_core::arith::least_prime_greater_than(s.cardinality());
    let mut out = format!("|S|={} p={prime}\n", s.cardinality());
    if list {
        for alpha in s.fractions() {
            writeln!(out, "{alpha}").unwrap();
        }
    }
    print!("{out}");
    Ok(true)
}

fn cmd_example_composite(q: u64, prime_divisor: u64, n: u64) -> Outcome {
    let example = composite_counterexample(q, prime_divisor, n)?;
    let classes: Vec<String> = example.classes.iter().map(ToString::to_string).collect();
    println!("q={q} p={prime_divisor} n={n}");
    println!("classes: {}", classes.join(", "));
    println!("sum={}", example.sum);
    println!("|S|={}<{q}", example.s_cardinality);
    Ok(true)
}

fn cmd_go_search(q: u64, k_max: u64, budget_seconds: Option<u64>) -> Outcome {
    let progress = |p: &GoProgress| {
        let moduli: Vec<String> = p.moduli.iter().map(ToString::to_string).collect();
        eprintln!(
            "[{}/{}] moduli {} done, {} witnesses so far",
            p.completed,
            p.total,
            moduli.join(","),
            p.witnesses
        );
    };
    let options = GoSearchOptions {
        budget: budget_seconds.map(Duration::from_secs),
        progress: Some(&progress),
    };
    let report = go_search_with(q, k_max, &options)?;
    let mut out = String::new();
    for witness in &report.witnesses {
        writeln!(out, "{witness}").unwrap();
    }
    let holds = report.verdict();
    if !holds {
        writeln!(out, "VIOLATION FOUND").unwrap();
    } else if report.partial {
        writeln!(
            out,
            "PARTIAL at q={q} k≤{k_max}: {} of {} units searched, no violation",
            report.units_completed, report.units_total
        )
        .unwrap();
    } else {
        writeln!(out, "CONJECTURE HOLDS at q={q} k≤{k_max}").unwrap();
    }
    print!("{out}");
    Ok(holds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Equiv { a, b, query } => cmd_equiv(a, b, query),
        Command::ExactCover { file, m, query } => cmd_exact_cover(file, *m, query),
        Command::Table { file, max_period } => cmd_table(file, *max_period),
        Command::Sset { file, list } => cmd_sset(file, *list),
        Command::ExampleComposite { q, prime_divisor, n } => cmd_example_composite(*q, *prime_divisor, *n),
        Command::GoSearch { q, k_max, budget_seconds } => cmd_go_search(*q, *k_max, *budget_seconds),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

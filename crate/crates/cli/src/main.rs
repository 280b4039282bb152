//! `jloops`: build, check, search and compare finite Jordan loops.
//!
//! Exit status is 0 on success, 1 when a verdict is negative (a property
//! fails, loops are not isomorphic, a loop is not simple, a search ran out
//! of budget) and 2 for usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use jordan_loops::{
    construct, counterexample, enumerate_loops, find_isomorphism, jordan_tower, parse_tables,
    powers_gap_loop, right_power, simplicity, MagmaTable, PropertyTag, SearchError, SearchOptions,
    SearchOutcome, Simplicity, StopReason,
};

#[derive(Parser)]
#[command(
    name = "jloops",
    version,
    about = "Finite Jordan loops: construct, verify, search, classify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a nonassociative Jordan loop of the given order.
    Construct {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check identities on every table in FILE ("-" reads stdin).
    Verify {
        /// Property to check; repeat or separate with commas.
        #[arg(long = "property", short = 'p', value_delimiter = ',', required = true)]
        properties: Vec<PropertyTag>,
        file: PathBuf,
    },
    /// Enumerate commutative loops of one order.
    Search(SearchArgs),
    /// Right powers and parenthesized power sets of one element.
    Powers {
        file: PathBuf,
        #[arg(long)]
        element: usize,
        #[arg(long = "max-k")]
        max_k: usize,
    },
    /// Decide whether a loop is simple.
    Simple { file: PathBuf },
    /// Decide whether two loops are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// The simple Jordan loop of order 2^(depth+1) - 1.
    Tower {
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        out: Output,
    },
    /// A one-generated Jordan loop whose generator's powers break down at m·n.
    GapLoop {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    order: usize,
    /// Keep only Jordan loops (otherwise all commutative loops).
    #[arg(long)]
    jordan: bool,
    /// Drop associative models.
    #[arg(long)]
    nonassociative: bool,
    /// Print one representative per isomorphism class.
    #[arg(long = "up-to-iso")]
    up_to_iso: bool,
    /// Stop after this many models.
    #[arg(long)]
    limit: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Maximum number of search nodes.
    #[arg(long)]
    nodes: Option<u64>,
}

enum Failure {
    /// Input or usage problem: exit 2.
    Usage(String),
    /// Negative verdict already reported on stdout: exit 1.
    Verdict,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(io::stdout(), $($arg)*);
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("jloops: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Construct { order, out } => emit(&construct(order)?, &out),
        Command::Verify { properties, file } => verify(&properties, &file),
        Command::Search(args) => search(&args),
        Command::Powers {
            file,
            element,
            max_k,
        } => powers(&read_one(&file)?, element, max_k),
        Command::Simple { file } => simple(&read_one(&file)?),
        Command::Iso { first, second } => iso(&read_one(&first)?, &read_one(&second)?),
        Command::Tower { depth, out } => emit(&jordan_tower(depth)?, &out),
        Command::GapLoop { m, n, out } => {
            let (table, c, params) = powers_gap_loop(m, n)?;
            emit(&table, &out)?;
            say!("# c={c} s={} phi={:?}", params.s, params.phi.images());
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn read_all(path: &Path) -> Result<Vec<MagmaTable>, Failure> {
    let tables = parse_tables(&read_text(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if tables.is_empty() {
        return Err(Failure::Usage(format!(
            "{}: no table found",
            path.display()
        )));
    }
    Ok(tables)
}

fn read_one(path: &Path) -> Result<MagmaTable, Failure> {
    let mut tables = read_all(path)?;
    if tables.len() != 1 {
        return Err(Failure::Usage(format!(
            "{}: expected one table, found {}",
            path.display(),
            tables.len()
        )));
    }
    Ok(tables.remove(0))
}

fn emit(table: &MagmaTable, out: &Output) -> Outcome {
    match &out.out {
        Some(path) => fs::write(path, table.to_string())
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let _ = write!(io::stdout(), "{table}");
            Ok(())
        }
    }
}

fn verify(properties: &[PropertyTag], file: &Path) -> Outcome {
    let tables = read_all(file)?;
    let mut all_hold = true;
    for (index, table) in tables.iter().enumerate() {
        for &p in properties {
            match counterexample(table, p)? {
                None => say!("table {index}: {p} holds"),
                Some(c) => {
                    say!("table {index}: {c}");
                    all_hold = false;
                }
            }
        }
    }
    if all_hold {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

fn search(args: &SearchArgs) -> Outcome {
    let mut opts = SearchOptions::new(args.order)
        .jordan(args.jordan)
        .nonassociative(args.nonassociative)
        .up_to_iso(args.up_to_iso);
    opts.result_limit = args.limit;
    opts.node_limit = args.nodes;
    if let Some(secs) = args.budget {
        let budget = Duration::try_from_secs_f64(secs)
            .map_err(|_| Failure::Usage(format!("invalid budget {secs}")))?;
        opts.time_budget = Some(budget);
    }
    match enumerate_loops(&opts) {
        Ok(outcome) => print_outcome(&outcome),
        Err(SearchError::Incomplete { reason, partial }) => {
            print_outcome(&partial)?;
            if reason == StopReason::ResultLimit {
                Ok(())
            } else {
                eprintln!("jloops: search incomplete: {reason}");
                Err(Failure::Verdict)
            }
        }
        Err(e) => Err(e.into()),
    }
}

fn print_outcome(outcome: &SearchOutcome) -> Outcome {
    match write_outcome(outcome) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn write_outcome(outcome: &SearchOutcome) -> io::Result<()> {
    let stdout = io::stdout();
    let mut w = io::BufWriter::new(stdout.lock());
    for (i, m) in outcome.models.iter().enumerate() {
        if i > 0 {
            writeln!(w)?;
        }
        write!(w, "{m}")?;
    }
    if !outcome.models.is_empty() {
        writeln!(w)?;
    }
    writeln!(w, "{}", outcome.stats)?;
    w.flush()
}

fn powers(q: &MagmaTable, c: usize, max_k: usize) -> Outcome {
    if max_k == 0 {
        return Err(Failure::Usage("--max-k must be at least 1".into()));
    }
    let profile = jordan_loops::power_profile(q, c, max_k, jordan_loops::DEFAULT_POWER_CAP)?;
    for k in 1..=max_k {
        let values = profile.values_at(k);
        let listed: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let verdict = if jordan_loops::is_well_defined(q, c, k) {
            "well-defined"
        } else {
            "not well-defined"
        };
        say!(
            "k={k} right={} values={{{}}} {verdict}",
            right_power(q, c, k),
            listed.join(",")
        );
    }
    Ok(())
}

fn simple(q: &MagmaTable) -> Outcome {
    match simplicity(q)? {
        Simplicity::Simple => {
            say!("simple");
            Ok(())
        }
        Simplicity::NotSimple { witness, closure } => {
            say!(
                "not simple: normal closure of {witness} is {:?}",
                closure.members()
            );
            Err(Failure::Verdict)
        }
    }
}

fn iso(a: &MagmaTable, b: &MagmaTable) -> Outcome {
    match find_isomorphism(a, b)? {
        Some(p) => {
            say!("isomorphic: {p}");
            Ok(())
        }
        None => {
            say!("not isomorphic");
            Err(Failure::Verdict)
        }
    }
}

mod report;
mod scan;

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use bdr_core::decider::{self, DecideError, Reason, DEFAULT_BUDGET};
use bdr_core::degseq::DegreeClass;
use bdr_core::reduction::{self, ReductionError};
use bdr_core::{
    construct_realization, decide_bdr, lbds, parse_rational, BipartitePair, DegreeSequence,
    ParamBounds, Rational, Verdict,
};
use clap::{Args, Parser, Subcommand};

/// Exit code for malformed input and usage errors.
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "bdr", version, about = "Bipartite degree realization toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a degree sequence has a bipartite realization.
    Decide {
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Fall back to exhaustive split search outside the tractable regions.
        #[arg(long)]
        exact: bool,
        /// Maximum number of splits the exhaustive search examines.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Sequence file, or `-` for stdin.
        file: PathBuf,
    },
    /// Build a bipartite graph for a pair of sequences (two lines: U, then V).
    Realize { file: PathBuf },
    /// Print the least balanced sequence of the class (n, sigma, delta, d).
    Lbds {
        n: usize,
        sigma: usize,
        delta: usize,
        d: usize,
    },
    /// Pad a sequence into an instance inside the given bounds.
    Reduce {
        #[command(flatten)]
        bounds: BoundsArgs,
        file: PathBuf,
    },
    /// Decide a sequence and its padded instance exactly and compare.
    VerifyReduction {
        #[arg(long, default_value = "1/10", value_parser = rational)]
        c1: Rational,
        #[arg(long, default_value = "2/5", value_parser = rational)]
        c2: Rational,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        file: PathBuf,
    },
    /// Sample random graphic sequences over a grid of bounds; CSV on stdout.
    Scan(scan::ScanArgs),
    /// Brute-force ground truth for a sequence.
    #[command(hide = true)]
    Oracle { file: PathBuf },
}

#[derive(Args)]
struct BoundsArgs {
    /// Lower degree bound as a fraction of n (`p/q` or a decimal).
    #[arg(long, value_parser = rational)]
    c1: Rational,
    /// Upper degree bound as a fraction of n.
    #[arg(long, value_parser = rational)]
    c2: Rational,
}

impl BoundsArgs {
    fn bounds(&self) -> Result<ParamBounds> {
        Ok(ParamBounds::new(self.c1.clone(), self.c2.clone())?)
    }
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// A closed stdout (for example `bdr scan | head`) is not an error.
fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        cause
            .downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || cause
                .downcast_ref::<serde_json::Error>()
                .and_then(|j| j.io_error_kind())
                .is_some_and(|kind| kind == io::ErrorKind::BrokenPipe)
    })
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Decide {
            bounds,
            exact,
            budget,
            file,
        } => run_decide(&read_sequence(&file)?, &bounds.bounds()?, exact, budget),
        Command::Realize { file } => run_realize(&file),
        Command::Lbds { n, sigma, delta, d } => {
            let seq = lbds(DegreeClass::new(n, sigma, d, delta))?;
            println!("{seq}");
            Ok(0)
        }
        Command::Reduce { bounds, file } => {
            let seq = read_sequence(&file)?;
            let inst = reduction::build_hard_instance(&seq, &bounds.bounds()?)?;
            print_json(&report::ReduceOutput::new(&inst))?;
            Ok(0)
        }
        Command::VerifyReduction {
            c1,
            c2,
            budget,
            file,
        } => {
            let seq = read_sequence(&file)?;
            let bounds = ParamBounds::new(c1, c2)?;
            match reduction::verify_reduction_roundtrip(&seq, &bounds, budget) {
                Ok(rep) => {
                    print_json(&report::VerifyOutput::new(&rep))?;
                    Ok(if rep.passed() { 0 } else { 1 })
                }
                Err(ReductionError::Decide(DecideError::BudgetExceeded(b))) => {
                    eprintln!("exact search exceeded its budget of {b} splits");
                    Ok(Verdict::Undecided.exit_code() as u8)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Scan(args) => {
            let config = args.config()?;
            let stdout = io::stdout();
            scan::run_scan(&config, &mut stdout.lock())?;
            Ok(0)
        }
        Command::Oracle { file } => {
            let seq = read_sequence(&file)?;
            print_json(&report::OracleOutput::new(&seq)?)?;
            Ok(0)
        }
    }
}

fn run_decide(seq: &DegreeSequence, bounds: &ParamBounds, exact: bool, budget: usize) -> Result<u8> {
    let mut decision = match decide_bdr(seq, bounds) {
        Err(DecideError::OutOfClass) => bail!(
            "sequence is outside the degree window [{}·n, {}·n]",
            bounds.c1(),
            bounds.c2()
        ),
        other => other?,
    };
    if exact && decision.verdict == Verdict::Undecided {
        let region = decision.region;
        decision = match decider::decide_exact(seq, budget) {
            Ok(d) => d,
            Err(DecideError::BudgetExceeded(_)) => decider::Decision {
                reason: Reason::BudgetExceeded,
                ..decision
            },
            Err(e) => return Err(e.into()),
        };
        decision.region = region;
    }
    print_json(&report::DecideOutput::new(&decision))?;
    Ok(decision.verdict.exit_code() as u8)
}

fn run_realize(file: &Path) -> Result<u8> {
    let text = read_input(file)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let [u, v] = lines[..] else {
        bail!("expected two lines (U degrees, then V degrees), found {}", lines.len());
    };
    let parse = |line: &str, side: &str| -> Result<DegreeSequence> {
        line.parse().with_context(|| format!("{side} side"))
    };
    let pair = BipartitePair::new(parse(u, "U")?, parse(v, "V")?);
    match construct_realization(&pair) {
        Some(g) => {
            print!("{g}");
            Ok(0)
        }
        None => {
            eprintln!("pair is not bigraphic");
            Ok(1)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(text)
}

fn read_sequence(path: &Path) -> Result<DegreeSequence> {
    read_input(path)?
        .parse()
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

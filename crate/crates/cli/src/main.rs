//! `barrier-lab`: scans, verification suites and tables for barriers of
//! `eps * omega(n)` and the divisor gap statistic.

mod table;
mod verify;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use barrier_core::{
    build_sieve, canonical_rep, density_table, for_each_barrier, for_each_gap_stat,
    gen_subsequence, is_barrier_naive, is_barrier_windowed, record_points, GapRecord, RationalEps,
    ScanOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use table::{Cell, Meta, Table};
use verify::{Status, Suite};

const THREADS_ENV: &str = "BARRIER_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(name = "barrier-lab", version, about)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    /// Worker threads for range scans.
    #[arg(long, env = THREADS_ENV, default_value_t = 1, global = true,
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    threads: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMethod {
    /// Windowed when eps <= 1, naive otherwise.
    Auto,
    Naive,
    Windowed,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the barriers of eps*omega in an inclusive range.
    Barriers {
        #[arg(long, value_parser = parse_eps)]
        eps: RationalEps,
        /// Inclusive range LO..HI, LO >= 1.
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
    },
    /// Decide one n, reporting a witness when it is not a barrier.
    Check {
        #[arg(long, value_parser = parse_eps)]
        eps: RationalEps,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = CheckMethod::Auto)]
        method: CheckMethod,
    },
    /// Share of each primorial interval with 1 <= omega(n) <= t.
    Density {
        #[arg(long, value_parser = parse_eps)]
        eps: RationalEps,
        #[arg(long, default_value_t = 7)]
        r_max: u64,
        /// Overrides the t derived from eps.
        #[arg(long)]
        t: Option<u64>,
    },
    /// G(n) = max_{m<n}(m + d(m)) - n for every n in [from, limit].
    Gaps {
        #[arg(long)]
        limit: u64,
        #[arg(long, default_value_t = 2)]
        from: u64,
    },
    /// The n <= limit where G(n) sets a new record.
    Records {
        #[arg(long)]
        limit: u64,
    },
    /// Canonical exponent vector of n - 1 for each n in an inclusive range.
    Classify {
        /// Inclusive range LO..HI, LO >= 3.
        #[arg(long, value_parser = parse_range)]
        range: (u64, u64),
    },
    /// First terms of the subsequence n_s.
    Subseq {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        count: usize,
    },
    /// Run invariant suites; exits 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = parse_eps)]
        eps: Option<RationalEps>,
        /// Suite-specific size (range end, horizon, or r_max for density).
        #[arg(long)]
        limit: Option<u64>,
    },
}

fn parse_eps(s: &str) -> Result<RationalEps, String> {
    s.parse().map_err(|e: barrier_core::Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("{s:?}: expected LO..HI"))?;
    let lo: u64 = lo.parse().map_err(|_| format!("{s:?}: bad LO"))?;
    let hi: u64 = hi.parse().map_err(|_| format!("{s:?}: bad HI"))?;
    if lo > hi {
        return Err(format!("{s:?}: LO exceeds HI"));
    }
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<barrier_core::Error> for Failure {
    fn from(e: barrier_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn gap_row(g: &GapRecord) -> Vec<Cell> {
    vec![
        g.n.into(),
        g.gap.into(),
        g.argmax_m.into(),
        g.lemma_bound.into(),
    ]
}

const GAP_HEADER: &[&str] = &["n", "gap", "argmax_m", "lemma_bound"];
const BARRIER_HEADER: &[&str] = &["n", "is_barrier", "witness", "method"];

/// Builds the output table; the flag says whether every verification passed.
fn execute(cmd: &Command, opts: ScanOptions) -> Result<(Table, bool), Failure> {
    let meta = |command, eps: Option<&RationalEps>, range: Option<String>| Meta {
        command,
        eps: eps.map(ToString::to_string),
        range,
    };
    match cmd {
        Command::Barriers {
            eps,
            range: (lo, hi),
        } => {
            let mut t = Table::new(
                meta("barriers", Some(eps), Some(format!("{lo}..{hi}"))),
                BARRIER_HEADER,
            );
            for_each_barrier(*lo, *hi, *eps, opts, |n| {
                t.push(vec![n.into(), true.into(), Cell::Null, "streaming".into()])
            })?;
            Ok((t, true))
        }
        Command::Check { eps, n, method } => {
            let sieve = build_sieve(n.saturating_sub(1).max(2))?;
            let windowed = match method {
                CheckMethod::Auto => eps.at_most_one(),
                CheckMethod::Naive => false,
                CheckMethod::Windowed => true,
            };
            let v = if windowed {
                is_barrier_windowed(*n, *eps, &sieve)?
            } else {
                is_barrier_naive(*n, *eps, &sieve)?
            };
            let mut t = Table::new(
                meta("check", Some(eps), Some(format!("{n}..{n}"))),
                BARRIER_HEADER,
            );
            t.push(vec![
                v.n.into(),
                v.is_barrier.into(),
                v.witness.into(),
                v.method.as_str().into(),
            ]);
            Ok((t, true))
        }
        Command::Density { eps, r_max, t } => {
            let rows = density_table(*r_max, *eps, *t, opts)?;
            let mut table = Table::new(
                meta("density", Some(eps), Some(format!("1..{r_max}"))),
                &["r", "t", "count", "interval_len", "ratio"],
            );
            for row in rows {
                table.push(vec![
                    row.r.into(),
                    row.t.into(),
                    row.count.into(),
                    row.interval_len.into(),
                    row.ratio_decimal().into(),
                ]);
            }
            Ok((table, true))
        }
        Command::Gaps { limit, from } => {
            let mut t = Table::new(
                meta("gaps", None, Some(format!("{from}..{limit}"))),
                GAP_HEADER,
            );
            for_each_gap_stat(*limit, opts, |g| {
                if g.n >= *from {
                    t.push(gap_row(&g));
                }
            })?;
            Ok((t, true))
        }
        Command::Records { limit } => {
            let mut t = Table::new(
                meta("records", None, Some(format!("2..{limit}"))),
                GAP_HEADER,
            );
            for g in record_points(*limit, opts)? {
                t.push(gap_row(&g));
            }
            Ok((t, true))
        }
        Command::Classify { range: (lo, hi) } => {
            if *lo < 3 {
                return Err(Failure::Usage(format!(
                    "classify needs n >= 3, range starts at {lo}"
                )));
            }
            let sieve = build_sieve((hi - 1).max(2))?;
            let mut t = Table::new(
                meta("classify", None, Some(format!("{lo}..{hi}"))),
                &["n", "s", "alphas"],
            );
            for n in *lo..=*hi {
                let rep = canonical_rep(n, &sieve)?;
                let alphas = rep.alphas.iter().map(|&a| u64::from(a)).collect();
                t.push(vec![n.into(), rep.s.into(), Cell::List(alphas)]);
            }
            Ok((t, true))
        }
        Command::Subseq { s, count } => {
            let terms = gen_subsequence(*s, *count)?;
            let mut t = Table::new(
                meta("subseq", None, Some(format!("1..{count}"))),
                &["i", "n"],
            );
            for (i, n) in terms.into_iter().enumerate() {
                t.push(vec![(i as u64 + 1).into(), n.into()]);
            }
            Ok((t, true))
        }
        Command::Verify { suite, eps, limit } => {
            if suite.needs_eps() && eps.is_none() {
                return Err(Failure::Usage(format!(
                    "suite {} needs --eps NUM/DEN",
                    suite.name()
                )));
            }
            let outcomes = verify::run(*suite, *eps, *limit, opts)?;
            let mut t = Table::new(
                meta("verify", eps.as_ref(), limit.map(|l| format!("..{l}"))),
                &["suite", "status", "checked", "detail"],
            );
            let mut ok = true;
            for o in outcomes {
                ok &= o.status != Status::Fail;
                t.push(vec![
                    o.suite.into(),
                    o.status.as_str().into(),
                    o.checked.into(),
                    o.detail.into(),
                ]);
            }
            Ok((t, ok))
        }
    }
}

fn emit(global: &Global, table: &Table) -> io::Result<()> {
    let text = match global.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &global.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = ScanOptions::with_threads(cli.global.threads as usize);
    let result = execute(&cli.command, opts)
        .and_then(|(table, ok)| emit(&cli.global, &table).map(|_| ok).map_err(Failure::Io));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

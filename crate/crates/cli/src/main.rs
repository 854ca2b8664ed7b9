use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gs_tower::report::{self, CommandOutput, ExitStatus};
use gs_tower::shanks::shanks_scan;
use gs_tower::{Config, Error};
use num_bigint::BigUint;

#[derive(Parser, Debug)]
#[command(
    name = "gs-tower",
    version,
    about = "Golod-Shafarevich certificates for p-class field towers"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV (shanks only).
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Omit the timing field so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Exponents up to 2^BITS are compared in exact rational arithmetic.
    #[arg(long, global = true, value_name = "BITS")]
    exact_threshold: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a negativity witness for the tower above a field with the given
    /// splitting data at p.
    Analyze {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        f: u64,
        #[arg(long)]
        g: BigUint,
        #[arg(long, default_value = "0")]
        dim_vs: BigUint,
    },
    /// Relative class number of Q(zeta_{p^s}).
    Hminus {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u32,
        /// Cross-check against the Maillet determinant (odd prime moduli).
        #[arg(long)]
        oracle: bool,
    },
    /// Class numbers and tower verdicts for the cyclotomic fields of the table.
    Table {
        /// Comma-separated rows such as `2^6,3^4,29`.
        #[arg(long)]
        rows: Option<String>,
        /// Skip moduli with phi(p^s) above 256.
        #[arg(long)]
        skip_slow: bool,
    },
    /// Primes of the form a^2 + 3a + 9 and their simplest cubics.
    Shanks {
        #[arg(long)]
        a_min: u64,
        #[arg(long)]
        a_max: u64,
    },
}

fn run(cli: Cli) -> Result<(CommandOutput, Option<String>), Error> {
    let g = &cli.global;
    let mut cfg = Config::default();
    if let Some(bits) = g.exact_threshold {
        cfg.exact_threshold_bits = bits;
    }
    let timing = !g.no_timing;
    if g.csv && !matches!(cli.command, Command::Shanks { .. }) {
        return Err(Error::Usage("--csv is only supported by shanks".into()));
    }
    let out = match &cli.command {
        Command::Analyze {
            p,
            e,
            f,
            g: gg,
            dim_vs,
        } => report::cmd_analyze(*p, *e, *f, gg.clone(), dim_vs.clone(), &cfg, timing)?,
        Command::Hminus { p, s, oracle } => report::cmd_hminus(*p, *s, *oracle, timing)?,
        Command::Table { rows, skip_slow } => {
            let rows = rows.as_deref().map(report::parse_rows).transpose()?;
            report::cmd_table(rows, *skip_slow, &cfg, timing)?
        }
        Command::Shanks { a_min, a_max } => {
            let out = report::cmd_shanks(*a_min, *a_max, timing)?;
            if g.csv {
                let csv = report::shanks_csv(&shanks_scan(*a_min, *a_max)?);
                return Ok((out, Some(csv)));
            }
            out
        }
    };
    Ok((out, None))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(ExitStatus::Usage as u8),
            };
        }
    };
    let threads = cli
        .global
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(ExitStatus::Usage as u8);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
    {
        eprintln!("warning: could not configure thread pool: {e}");
    }

    match run(cli) {
        Ok((out, csv)) => {
            let text = csv.unwrap_or_else(|| out.report.to_json() + "\n");
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(ExitStatus::Usage as u8);
            }
            for c in &out.report.caveats {
                eprintln!("caveat: {c}");
            }
            ExitCode::from(out.status as u8)
        }
        Err(e) => {
            eprintln!("gs-tower: {e}");
            let code = match e {
                Error::Usage(_) | Error::Domain(_) | Error::OversizedDepth { .. } => {
                    ExitStatus::Usage
                }
                _ => ExitStatus::Inconclusive,
            };
            ExitCode::from(code as u8)
        }
    }
}

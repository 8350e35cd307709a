use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use strandcode::cli;
use strandcode::core::{Construction, RfVariant};

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    A,
    B,
}

impl From<ConstructionArg> for Construction {
    fn from(v: ConstructionArg) -> Self {
        match v {
            ConstructionArg::A => Construction::A,
            ConstructionArg::B => Construction::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    Marker,
}

impl From<VariantArg> for RfVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Basic => RfVariant::Basic,
            VariantArg::Marker => RfVariant::Marker,
        }
    }
}

/// Multi-strand reconstruction codes: encode payloads into strand multisets
/// recoverable from their substring profiles.
#[derive(Parser)]
#[command(name = "strandcode", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a byte payload into a strand file.
    Encode {
        /// Input payload file (raw bytes).
        payload: PathBuf,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long, value_enum, default_value = "basic")]
        rf: VariantArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Emit the window-profile of a strand file in shuffled order.
    Shred {
        strands: PathBuf,
        /// Window length (use ell+1 to feed the decoder).
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 0)]
        shuffle_seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Decode a profile file back to the byte payload.
    Decode {
        profile: PathBuf,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long, value_enum, default_value = "basic")]
        rf: VariantArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Exact counts, bound formulas, and the A-vs-B trade-off block.
    Bounds {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Smallest window length.
        #[arg(long, default_value_t = 1)]
        ell_from: usize,
        /// Largest window length (defaults to n).
        #[arg(long)]
        ell_to: Option<usize>,
        #[arg(long)]
        census_budget: Option<u64>,
        #[arg(long, default_value_t = 2.0)]
        epsilon: f64,
        /// Emit machine-readable JSON lines instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive census of X_{n,k} by ell-profile.
    Census {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        census_budget: Option<u64>,
        /// Worker threads for the enumeration shards.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run-length-limited sub-codec: encode, decode, check, count.
    Rll {
        action: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        run_bound: usize,
        /// Digit string (or a length for `count`).
        input: String,
    },
    /// Repeat-free sub-codec: encode, decode, check.
    Rf {
        action: String,
        #[arg(long, value_enum, default_value = "basic")]
        variant: VariantArg,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n_prime: usize,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        run_bound: Option<usize>,
        input: String,
    },
}

fn run(command: Command) -> strandcode::Result<()> {
    let stdout = std::io::stdout();
    match command {
        Command::Encode {
            payload,
            construction,
            rf,
            q,
            n,
            k,
            out,
        } => {
            let summary = cli::cmd_encode(&payload, &out, construction.into(), rf.into(), q, n, k)?;
            println!("{summary}");
        }
        Command::Shred {
            strands,
            window,
            shuffle_seed,
            out,
        } => {
            let summary = cli::cmd_shred(&strands, &out, window, shuffle_seed)?;
            println!("{summary}");
        }
        Command::Decode {
            profile,
            construction,
            rf,
            q,
            n,
            k,
            out,
        } => {
            let summary = cli::cmd_decode(&profile, &out, construction.into(), rf.into(), q, n, k)?;
            println!("{summary}");
        }
        Command::Bounds {
            q,
            n,
            k,
            ell_from,
            ell_to,
            census_budget,
            epsilon,
            json,
        } => {
            let budget = cli::resolve_budget(census_budget);
            cli::cmd_bounds(
                stdout.lock(),
                q,
                n,
                k,
                (ell_from, ell_to.unwrap_or(n)),
                budget,
                epsilon,
                json,
            )?;
        }
        Command::Census {
            q,
            n,
            k,
            ell,
            census_budget,
            jobs,
            json,
        } => {
            let budget = cli::resolve_budget(census_budget);
            cli::cmd_census(stdout.lock(), q, n, k, ell, budget, jobs, json)?;
        }
        Command::Rll {
            action,
            q,
            run_bound,
            input,
        } => {
            cli::cmd_rll(stdout.lock(), &action, q, run_bound, &input)?;
        }
        Command::Rf {
            action,
            variant,
            q,
            n_prime,
            ell,
            run_bound,
            input,
        } => {
            cli::cmd_rf(
                stdout.lock(),
                &action,
                variant.into(),
                q,
                n_prime,
                ell,
                run_bound,
                &input,
            )?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code().clamp(0, 255) as u8)
        }
    }
}

//! `wiretap-nc`: build, verify and analyse secure network codes from JSON files.
//!
//! Exit status is 0 on success, 2 when a verification or comparison fails and
//! 1 on usage or input errors.

mod commands;
mod figures;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::Outcome;
use io::Run;

#[derive(Parser)]
#[command(
    name = "wiretap-nc",
    version,
    about = "Secure network coding against wiretappers"
)]
struct Cli {
    /// Worker threads for subset enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized encoding; recorded in the manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate the built-in examples and compare them with the golden files.
    PaperFigures {
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Directory for the regenerated reports and designs.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overwrite the golden files with the regenerated reports.
        #[arg(long)]
        bless: bool,
    },
    /// Construct a secure code with secure LIF.
    Build {
        #[arg(long)]
        network: PathBuf,
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the secrecy condition and receiver decodability of a design.
    Verify {
        #[arg(long)]
        design: PathBuf,
        /// Override the design's wiretap budget.
        #[arg(long)]
        mu: Option<usize>,
        /// Comma-separated edge ids the wiretapper is confined to.
        #[arg(long, value_delimiter = ',')]
        restricted: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equivocation for every budget up to `--mu-max`.
    Sweep {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        mu_max: usize,
        #[arg(long, value_delimiter = ',')]
        restricted: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the rank formula with the brute-force entropy oracle.
    Oracle {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long, value_delimiter = ',')]
        restricted: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Field size sufficient for secure LIF on a network.
    Bounds {
        #[arg(long)]
        network: PathBuf,
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coset encoding and syndrome decoding.
    #[command(subcommand)]
    Coset(CosetOp),
}

#[derive(Subcommand)]
enum CosetOp {
    /// Encode a secret (JSON array, inline or a file) into a random coset member.
    Encode {
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        secret: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover the secret as the syndrome of a word.
    Decode {
        #[arg(long = "H", value_name = "FILE")]
        h: PathBuf,
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Runs the command; returns the outcome and where its result and manifest go.
fn dispatch(
    run: &mut Run,
    command: &Command,
) -> Result<(Outcome, Option<PathBuf>, Option<PathBuf>)> {
    let with_manifest =
        |out: &Option<PathBuf>| (out.clone(), out.as_deref().map(io::manifest_path));
    let (outcome, (out, manifest)) = match command {
        Command::PaperFigures { golden, out, bless } => {
            let golden = golden.as_deref().unwrap_or(figures::default_golden_dir());
            if !bless {
                figures::read_golden_hashes(run, golden)?;
            }
            let outcome = figures::paper_figures(run, golden, out.as_deref(), *bless)?;
            let manifest = out.as_ref().map(|d| d.join("manifest.json"));
            let result = out.as_ref().map(|d| d.join("summary.json"));
            (outcome, (result, manifest))
        }
        Command::Build {
            network,
            h,
            mu,
            out,
        } => (commands::build(run, network, h, *mu)?, with_manifest(out)),
        Command::Verify {
            design,
            mu,
            restricted,
            out,
        } => (
            commands::verify(run, design, *mu, restricted.as_deref())?,
            with_manifest(out),
        ),
        Command::Sweep {
            design,
            mu_max,
            restricted,
            out,
        } => (
            commands::sweep_cmd(run, design, *mu_max, restricted.as_deref())?,
            with_manifest(out),
        ),
        Command::Oracle {
            design,
            mu,
            restricted,
            out,
        } => (
            commands::oracle(run, design, *mu, restricted.as_deref())?,
            with_manifest(out),
        ),
        Command::Bounds { network, mu, out } => {
            (commands::bounds(run, network, *mu)?, with_manifest(out))
        }
        Command::Coset(CosetOp::Encode { h, secret, out }) => {
            (commands::coset_encode(run, h, secret)?, with_manifest(out))
        }
        Command::Coset(CosetOp::Decode { h, word, out }) => {
            (commands::coset_decode(run, h, word)?, with_manifest(out))
        }
    };
    Ok((outcome, out, manifest))
}

fn execute(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()?;
    }
    let mut run = Run::new(cli.seed);
    let (outcome, out, manifest) = dispatch(&mut run, &cli.command)?;
    print!("{}", outcome.stdout.as_deref().unwrap_or(&outcome.result));
    if let Some(out) = out.as_deref() {
        io::write(out, &outcome.result)?;
    }
    run.summarize(outcome.summary);
    if let Some(manifest) = manifest.as_deref() {
        run.finish(manifest)?;
    }
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn restricted_list_splits_on_commas() {
        let cli = Cli::try_parse_from([
            "wiretap-nc",
            "verify",
            "--design",
            "d.json",
            "--restricted",
            "SA,BE",
        ])
        .unwrap();
        match cli.command {
            Command::Verify { restricted, .. } => assert_eq!(restricted.unwrap(), ["SA", "BE"]),
            _ => unreachable!(),
        }
    }
}

//! Command-line toolkit for dual-codeword decoding experiments.
//!
//! Subcommands:
//! - `gen-code`  — draw a random systematic code and write its text format
//! - `gen-duals` — sample low/high-weight decoding vectors for a code file
//! - `wtable`    — tabulate the odd-overlap probability W(δ,τ) as CSV
//! - `analyze`   — analytical word-error-rate curve for a decoding-vector set
//! - `simulate`  — Monte Carlo BER/BLER sweep from a JSON config
//! - `bench`     — per-decoder decode-latency table
//!
//! Exit codes: 0 success, 2 configuration or input-format error (including
//! bad flags), 3 capability limit (e.g. ML on too large a dimension),
//! 4 filesystem I/O failure.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use dualdec_core::analysis::{success_recursion, wer_bsc_from_success, WeightClassProfile};
use dualdec_core::code::LinearCode;
use dualdec_core::dual::{
    default_design_tau, default_max_attempts, sample_dual_sets, verify_dual_set, DualSet,
};
use dualdec_core::experiment::{
    latency_rows_to_csv, measure_latency, prepare_experiment, result_rows_to_csv, run_prepared,
    DecoderKind, ExperimentConfig, TimingMode,
};
use dualdec_core::reliability::odd_overlap_prob;
use dualdec_core::scalar::ProbScalar;
use dualdec_core::{Error, ExactProb, Result};

/// Environment variable holding the default worker-thread count.
const THREADS_ENV: &str = "DUALDEC_THREADS";

#[derive(Parser)]
#[command(
    name = "dualdec",
    version,
    about = "Dual-codeword decoding toolkit: code and vector generation, \
             overlap tables, analytical curves, and Monte Carlo sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a random systematic linear code and write its text format.
    GenCode {
        /// Block length.
        #[arg(long)]
        n: usize,
        /// Message length (0 < k < n).
        #[arg(long)]
        k: usize,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample low- and high-weight decoding vectors from a code's dual.
    GenDuals {
        /// Path to a code file produced by gen-code.
        #[arg(long)]
        code: PathBuf,
        /// Requested low-weight vectors.
        #[arg(long)]
        count_a: usize,
        /// Requested high-weight vectors.
        #[arg(long)]
        count_b: usize,
        /// Design error weight for the thresholds (defaults to the code's
        /// half error-correction radius).
        #[arg(long)]
        design_tau: Option<usize>,
        /// Rejection-sampling budget (defaults to 200 per requested vector).
        #[arg(long)]
        max_attempts: Option<usize>,
        /// RNG seed.
        #[arg(long)]
        seed: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the odd-overlap probability W(delta, tau) as CSV.
    Wtable {
        /// Block length of the grid.
        #[arg(long)]
        n: usize,
        /// Largest error weight to tabulate (defaults to n).
        #[arg(long)]
        max_tau: Option<usize>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analytical BSC word-error-rate curve for a decoding-vector set.
    Analyze {
        /// Path to a decoding-vector file produced by gen-duals.
        #[arg(long)]
        duals: PathBuf,
        /// Crossover probabilities to evaluate (repeat or comma-separate).
        #[arg(long = "p", value_delimiter = ',', required = true)]
        p_values: Vec<f64>,
        /// Deepest error weight the success recursion is chained to
        /// (defaults to n; success is zero beyond it).
        #[arg(long)]
        tau_max: Option<usize>,
        /// Sum the channel terms from tau = 1 instead of tau = 0, scoring
        /// error-free receptions as failures (comparison variant).
        #[arg(long)]
        literal_tail: bool,
        /// Also write the per-tau success table to this path.
        #[arg(long)]
        success_out: Option<PathBuf>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte Carlo sweep described by a JSON config file.
    Simulate {
        /// Path to the experiment config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Override the config's trial cap.
        #[arg(long)]
        trials: Option<u64>,
        /// Override the config's master seed.
        #[arg(long)]
        master_seed: Option<u64>,
        /// Override the config's iteration cap.
        #[arg(long)]
        t_max: Option<usize>,
        /// Override the config's decoder list (comma-separated).
        #[arg(long, value_delimiter = ',')]
        decoders: Option<Vec<String>>,
        /// Worker threads (defaults to $DUALDEC_THREADS, then all cores).
        #[arg(long)]
        threads: Option<usize>,
        /// Wall-clock timing per result row; `none` keeps output
        /// byte-deterministic.
        #[arg(long, value_enum, default_value_t = TimingArg::None)]
        timing: TimingArg,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure per-decoder decode latency over a fixed block count.
    Bench {
        /// Path to the experiment config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Blocks to decode per decoder.
        #[arg(long, default_value_t = 10_000)]
        blocks: u64,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// CLI face of [`TimingMode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TimingArg {
    /// Report zero elapsed time (deterministic output).
    None,
    /// Measure wall-clock time per (channel point, decoder).
    Wall,
}

impl From<TimingArg> for TimingMode {
    fn from(arg: TimingArg) -> Self {
        match arg {
            TimingArg::None => TimingMode::Off,
            TimingArg::Wall => TimingMode::Wall,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(exit_code(&e));
    }
}

/// Maps error categories to the documented exit codes.
fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Capability(_) => 3,
        Error::Io(_) => 4,
        _ => 2,
    }
}

/// Writes to the given path, or stdout when none was requested.
fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Thread-count resolution: explicit flag, then the environment variable,
/// then the process default.
fn resolve_threads(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(value) => {
            value.trim().parse::<usize>().map(Some).map_err(|_| {
                Error::Config(format!("{THREADS_ENV}='{value}' is not a thread count"))
            })
        }
        Err(_) => Ok(None),
    }
}

/// Reads and parses a JSON experiment config.
fn load_config(path: &PathBuf) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::GenCode { n, k, seed, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let code = LinearCode::random_systematic(n, k, &mut rng)?;
            write_output(&out, &code.to_text())
        }

        Command::GenDuals {
            code,
            count_a,
            count_b,
            design_tau,
            max_attempts,
            seed,
            out,
        } => {
            let code = LinearCode::load(&code)?;
            let design_tau = design_tau.unwrap_or_else(|| default_design_tau(&code));
            let max_attempts =
                max_attempts.unwrap_or_else(|| default_max_attempts(count_a, count_b));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sample =
                sample_dual_sets(&code, count_a, count_b, design_tau, max_attempts, &mut rng)?;
            if !sample.is_complete() {
                eprintln!(
                    "warning: sampled {} of {} low-weight and {} of {} high-weight vectors \
                     within {} draws; writing the partial set",
                    sample.duals.set_a.len(),
                    sample.requested_a,
                    sample.duals.set_b.len(),
                    sample.requested_b,
                    sample.attempts_used
                );
            }
            let report = verify_dual_set(&code, &sample.duals);
            if !report.is_valid() {
                eprintln!("warning: sampled set failed verification: {report}");
            }
            write_output(&out, &sample.duals.to_text())
        }

        Command::Wtable { n, max_tau, out } => {
            let max_tau = max_tau.unwrap_or(n).min(n);
            let mut csv = String::from("delta,tau,w_exact_num,w_exact_den,w_float\n");
            for delta in 0..=n {
                for tau in 0..=max_tau {
                    let w: ExactProb = odd_overlap_prob(n, delta, tau);
                    csv.push_str(&format!(
                        "{delta},{tau},{},{},{}\n",
                        w.numer(),
                        w.denom(),
                        w.to_f64()
                    ));
                }
            }
            write_output(&out, &csv)
        }

        Command::Analyze {
            duals,
            p_values,
            tau_max,
            literal_tail,
            success_out,
            out,
        } => {
            let duals = DualSet::load(&duals)?;
            let profile = WeightClassProfile::from_dual_set(&duals);
            let n = profile.n();
            let tau_max = tau_max.unwrap_or(n).min(n);
            let success: Vec<f64> = success_recursion(&profile, tau_max)?;
            // Beyond the configured depth the decoder is charged with failure.
            let mut padded = success.clone();
            padded.resize(n + 1, 0.0);
            let mut csv = String::from("p,tau_max,wer_analytical\n");
            for &p in &p_values {
                let wer = wer_bsc_from_success(n, p, &padded, !literal_tail)?;
                csv.push_str(&format!("{p},{tau_max},{wer}\n"));
            }
            write_output(&out, &csv)?;
            if let Some(path) = success_out {
                let mut table = String::from("tau,s_tau\n");
                for (tau, s) in success.iter().enumerate() {
                    table.push_str(&format!("{tau},{s}\n"));
                }
                std::fs::write(path, table)?;
            }
            Ok(())
        }

        Command::Simulate {
            config,
            trials,
            master_seed,
            t_max,
            decoders,
            threads,
            timing,
            out,
        } => {
            let mut config = load_config(&config)?;
            if let Some(trials) = trials {
                config.trials = trials;
            }
            if let Some(seed) = master_seed {
                config.master_seed = seed;
            }
            if let Some(t_max) = t_max {
                config.t_max = t_max;
            }
            if let Some(names) = decoders {
                config.decoders = names
                    .iter()
                    .map(|s| s.parse::<DecoderKind>())
                    .collect::<Result<_>>()?;
            }
            let threads = resolve_threads(threads)?;
            let prep = prepare_experiment(&config)?;
            if prep.shortfall_a + prep.shortfall_b > 0 {
                eprintln!(
                    "warning: decoding-vector sampling fell short by {} low-weight and {} \
                     high-weight vectors; continuing with the partial set",
                    prep.shortfall_a, prep.shortfall_b
                );
            }
            let rows = run_prepared(&prep, threads, timing.into())?;
            write_output(&out, &result_rows_to_csv(&rows))
        }

        Command::Bench {
            config,
            blocks,
            out,
        } => {
            let config = load_config(&config)?;
            let prep = prepare_experiment(&config)?;
            let rows = measure_latency(&prep, blocks)?;
            write_output(&out, &latency_rows_to_csv(&rows))
        }
    }
}

//! Reproducible Monte Carlo experiment driver.
//!
//! An [`ExperimentConfig`] names a code, a decoding-vector budget, a channel
//! sweep, and a decoder list; [`run_experiment`] turns it into one
//! [`ResultRow`] per (channel point, decoder) pair. Reproducibility is the
//! core contract: every trial seeds its own RNG stream as a pure function of
//! `(master_seed, channel index, decoder index, trial index)`, all
//! aggregation is integer summation, and early stopping is checked only at
//! fixed batch boundaries — so the output is byte-identical regardless of
//! how many worker threads execute the trials.
//!
//! Wall-clock timing is opt-in ([`TimingMode::Wall`]) precisely because it
//! is the one nondeterministic column; the default leaves it at zero.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{ebn0_to_sigma2, esn0_to_sigma2, ChannelKind, SoftObservation};
use crate::code::LinearCode;
use crate::decode::{
    bp_decode, ierd_decode, min_sum_decode, ml_hard_decode, ml_soft_decode, pad_decode, PadParams,
    MAX_ML_K,
};
use crate::dual::{default_design_tau, default_max_attempts, sample_dual_sets, DualSet};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

/// Hard cap on the per-point trial count, so trial indices fit in the
/// low 40 bits of the RNG stream id.
pub const MAX_TRIALS: u64 = 1 << 40;

/// Trials executed between early-stop checks. Stopping decisions are made
/// only at multiples of this batch size, which keeps the stopping point a
/// pure function of the configuration rather than of thread scheduling.
pub const STOP_CHECK_BATCH: u64 = 1024;

/// Where the code under test comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CodeSource {
    /// Draw a random systematic code of the given dimensions.
    Generate { n: usize, k: usize, seed: u64 },
    /// Load a generator-matrix file (see [`LinearCode::from_text`]).
    File { path: String },
}

/// How many decoding vectors to sample, and with what design error weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualCounts {
    /// Requested low-weight vectors.
    pub count_a: usize,
    /// Requested high-weight vectors.
    pub count_b: usize,
    /// Error weight the thresholds are derived for; defaults to the code's
    /// half error-correction radius when omitted.
    #[serde(default)]
    pub design_tau: Option<usize>,
    /// Seed for the sampling RNG (independent of the trial streams).
    pub seed: u64,
}

/// Which axis an AWGN sweep is parameterized on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SnrAxis {
    /// Energy per information bit over noise density — accounts for rate.
    #[default]
    Ebn0,
    /// Energy per transmitted symbol over noise density.
    Esn0,
}

/// The channel sweep: one simulated point per listed parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    /// Binary symmetric channel at each listed crossover probability.
    Bsc { p_list: Vec<f64> },
    /// BPSK over AWGN at each listed SNR (dB) on the chosen axis.
    Awgn {
        snr_db_list: Vec<f64>,
        #[serde(default)]
        axis: SnrAxis,
    },
}

/// The decoding schemes the harness can drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    /// Iterative single-bit error reduction on the hard word.
    Ierd,
    /// Prior-assisted multi-bit flipping on soft observations.
    Pad,
    /// Flooding sum-product on the parity-check matrix.
    Bp,
    /// Flooding min-sum on the parity-check matrix.
    Minsum,
    /// Exhaustive maximum-likelihood reference (k ≤ 20).
    Ml,
}

impl DecoderKind {
    /// The identifier used in CSV output and CLI flags.
    #[must_use]
    pub fn tag(self) -> &'static str {
        match self {
            DecoderKind::Ierd => "ierd",
            DecoderKind::Pad => "pad",
            DecoderKind::Bp => "bp",
            DecoderKind::Minsum => "minsum",
            DecoderKind::Ml => "ml",
        }
    }
}

impl std::fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ierd" => Ok(DecoderKind::Ierd),
            "pad" => Ok(DecoderKind::Pad),
            "bp" => Ok(DecoderKind::Bp),
            "minsum" => Ok(DecoderKind::Minsum),
            "ml" => Ok(DecoderKind::Ml),
            other => Err(Error::Config(format!(
                "unknown decoder '{other}' (expected ierd, pad, bp, minsum, or ml)"
            ))),
        }
    }
}

/// When to stop simulating a channel point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StopRule {
    /// Run exactly the configured number of trials.
    FixedTrials,
    /// Stop at the first batch boundary with at least `target` block
    /// errors, or at the trial cap, whichever comes first.
    MinBlockErrors { target: u64 },
}

fn default_t_max() -> usize {
    15
}

fn default_alpha() -> f64 {
    1.0
}

fn default_epsilon() -> f64 {
    1e-9
}

fn default_trials() -> u64 {
    1_000_000
}

fn default_stop_rule() -> StopRule {
    StopRule::MinBlockErrors { target: 100 }
}

/// A complete, self-describing experiment: the JSON config file is exactly
/// this struct, and CLI flags override individual fields after parsing.
///
/// Defaults: `t_max = 15`, `alpha = 1`, `epsilon = 1e-9`, and a stopping
/// rule of 100 block errors with a 10^6-trial cap, which bounds the
/// confidence-interval width without wasting trials on easy points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// The code under test.
    pub code_source: CodeSource,
    /// Decoding-vector budget for the flip decoders.
    pub dual_counts: DualCounts,
    /// Channel sweep.
    pub channel: ChannelSpec,
    /// Decoders to run at every channel point.
    pub decoders: Vec<DecoderKind>,
    /// Iteration cap for the iterative decoders.
    #[serde(default = "default_t_max")]
    pub t_max: usize,
    /// Prior-recycling scale for the soft-assisted flip decoder.
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Denominator floor for the soft-assisted flip decoder.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Trial cap per (channel point, decoder).
    #[serde(default = "default_trials")]
    pub trials: u64,
    /// Early-stopping rule.
    #[serde(default = "default_stop_rule")]
    pub stop_rule: StopRule,
    /// Root seed all per-trial RNG streams derive from.
    pub master_seed: u64,
}

impl ExperimentConfig {
    /// Checks every field the config can check without touching the
    /// filesystem (code dimensions are validated when the code is built).
    pub fn validate(&self) -> Result<()> {
        if self.decoders.is_empty() {
            return Err(Error::Config("at least one decoder is required".into()));
        }
        for (i, d) in self.decoders.iter().enumerate() {
            if self.decoders[..i].contains(d) {
                return Err(Error::Config(format!("decoder '{d}' listed twice")));
            }
        }
        match &self.channel {
            ChannelSpec::Bsc { p_list } => {
                if p_list.is_empty() {
                    return Err(Error::Config("BSC sweep needs at least one p".into()));
                }
                for &p in p_list {
                    ChannelKind::Bsc { p }.validate()?;
                }
            }
            ChannelSpec::Awgn { snr_db_list, .. } => {
                if snr_db_list.is_empty() {
                    return Err(Error::Config("AWGN sweep needs at least one SNR".into()));
                }
                for &db in snr_db_list {
                    if !db.is_finite() {
                        return Err(Error::Config(format!("SNR {db} dB is not finite")));
                    }
                }
            }
        }
        if self.trials == 0 {
            return Err(Error::Config("trial count must be at least 1".into()));
        }
        if self.trials > MAX_TRIALS {
            return Err(Error::Config(format!(
                "trial count {} exceeds the per-point cap {MAX_TRIALS}",
                self.trials
            )));
        }
        if let StopRule::MinBlockErrors { target } = self.stop_rule {
            if target == 0 {
                return Err(Error::Config(
                    "block-error target must be at least 1".into(),
                ));
            }
        }
        // The flip-decoder knobs are validated unconditionally: defaults are
        // valid, so a failure always points at an explicit config value.
        PadParams {
            t_max: self.t_max,
            alpha: self.alpha,
            epsilon: self.epsilon,
        }
        .validate()?;
        Ok(())
    }

    /// Stable 64-bit identifier of the effective configuration (FNV-1a over
    /// the canonical JSON serialization), as a fixed-width hex string.
    #[must_use]
    pub fn experiment_id(&self) -> String {
        let canonical =
            serde_json::to_string(self).expect("experiment config serializes infallibly");
        format!("{:016x}", fnv1a64(canonical.as_bytes()))
    }
}

/// FNV-1a over a byte string; stable, dependency-free fingerprint.
fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Whether result rows carry wall-clock timings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingMode {
    /// `elapsed_ms_total` is reported as zero; output is fully deterministic.
    Off,
    /// `elapsed_ms_total` is measured per (channel point, decoder).
    Wall,
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

/// Aggregated outcome of one (channel point, decoder) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    /// Fingerprint of the effective configuration.
    pub experiment_id: String,
    /// Block length.
    pub code_n: usize,
    /// Message length.
    pub code_k: usize,
    /// "bsc" or "awgn".
    pub channel_kind: &'static str,
    /// The swept parameter: crossover probability, or SNR in dB.
    pub channel_param: f64,
    /// Decoder that produced this row.
    pub decoder: DecoderKind,
    /// Trials actually executed (early stopping may undercut the cap).
    pub trials: u64,
    /// Total bit disagreements between estimates and transmitted codewords.
    pub bit_errors: u64,
    /// Trials whose estimate differed from the transmitted codeword.
    pub block_errors: u64,
    /// `bit_errors / (trials · n)`.
    pub ber: f64,
    /// `block_errors / trials`.
    pub bler: f64,
    /// Mean iterations per trial (zero for the one-shot ML reference).
    pub avg_iterations: f64,
    /// Wall-clock decode time for the cell, ms; zero unless timing is on.
    pub elapsed_ms_total: u64,
    /// The root seed, repeated per row so each row is self-describing.
    pub master_seed: u64,
}

/// The exact header of `simulate` CSV output.
pub const RESULT_CSV_HEADER: &str = "experiment_id,code_n,code_k,channel_kind,channel_param,\
                                     decoder,trials,bit_errors,block_errors,ber,bler,\
                                     avg_iterations,elapsed_ms_total,master_seed";

impl ResultRow {
    /// One CSV line, no trailing newline.
    #[must_use]
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.experiment_id,
            self.code_n,
            self.code_k,
            self.channel_kind,
            self.channel_param,
            self.decoder,
            self.trials,
            self.bit_errors,
            self.block_errors,
            self.ber,
            self.bler,
            self.avg_iterations,
            self.elapsed_ms_total,
            self.master_seed
        )
    }
}

/// Full CSV document (header + rows + trailing newline).
#[must_use]
pub fn result_rows_to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(RESULT_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// One decoder's latency measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct LatencyRow {
    /// Decoder measured.
    pub decoder: DecoderKind,
    /// Blocks decoded inside the timed region.
    pub blocks: u64,
    /// Total wall time for the timed region, milliseconds.
    pub elapsed_ms_total: f64,
    /// Mean per-block wall time, microseconds.
    pub per_block_us: f64,
    /// Mean iterations per block.
    pub avg_iterations: f64,
}

/// The exact header of `bench` CSV output.
pub const LATENCY_CSV_HEADER: &str = "decoder,blocks,elapsed_ms_total,per_block_us,avg_iterations";

/// Full latency CSV document (header + rows + trailing newline).
#[must_use]
pub fn latency_rows_to_csv(rows: &[LatencyRow]) -> String {
    let mut out = String::new();
    out.push_str(LATENCY_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.decoder, row.blocks, row.elapsed_ms_total, row.per_block_us, row.avg_iterations
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Preparation
// ---------------------------------------------------------------------------

/// A config with its code built and decoding vectors sampled — everything
/// the trial loops need, computed once outside any timed region.
#[derive(Debug, Clone)]
pub struct PreparedExperiment {
    /// The validated configuration.
    pub config: ExperimentConfig,
    /// The code under test.
    pub code: LinearCode,
    /// Sampled decoding vectors (possibly short of the request).
    pub duals: DualSet,
    /// Set-A vectors missing relative to the request.
    pub shortfall_a: usize,
    /// Set-B vectors missing relative to the request.
    pub shortfall_b: usize,
}

/// Validates the config, builds the code, and samples the decoding vectors.
///
/// A sampling shortfall is not an error here — the counts are reported in
/// the returned value so the caller can warn — but a code whose dual space
/// yields nothing at all in either weight range is.
pub fn prepare_experiment(config: &ExperimentConfig) -> Result<PreparedExperiment> {
    config.validate()?;
    let code = match &config.code_source {
        CodeSource::Generate { n, k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            LinearCode::random_systematic(*n, *k, &mut rng)?
        }
        CodeSource::File { path } => LinearCode::load(path)?,
    };
    let dc = &config.dual_counts;
    let design_tau = dc.design_tau.unwrap_or_else(|| default_design_tau(&code));
    let (duals, shortfall_a, shortfall_b) = if dc.count_a + dc.count_b == 0 {
        let d_a = crate::dual::threshold_bound(code.n(), design_tau).floor() as usize;
        let empty = DualSet {
            n: code.n(),
            set_a: Vec::new(),
            set_b: Vec::new(),
            d_a,
            d_b: code.n().saturating_sub(d_a),
            design_tau,
        };
        (empty, 0, 0)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(dc.seed);
        let sample = sample_dual_sets(
            &code,
            dc.count_a,
            dc.count_b,
            design_tau,
            default_max_attempts(dc.count_a, dc.count_b),
            &mut rng,
        )?;
        let (sa, sb) = (sample.shortfall_a(), sample.shortfall_b());
        (sample.duals, sa, sb)
    };
    Ok(PreparedExperiment {
        config: config.clone(),
        code,
        duals,
        shortfall_a,
        shortfall_b,
    })
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// RNG stream id for one trial. Bit layout (high to low): 16 bits of
/// channel index, 8 bits of decoder index, 40 bits of trial index — so
/// every (point, decoder, trial) triple owns a disjoint stream of the
/// master-seeded generator.
fn trial_stream(channel_idx: usize, decoder_idx: usize, trial: u64) -> u64 {
    debug_assert!(channel_idx < (1 << 16) && decoder_idx < (1 << 8) && trial < MAX_TRIALS);
    ((channel_idx as u64) << 48) | ((decoder_idx as u64) << 40) | trial
}

/// The channel points of a sweep: the concrete channel plus the parameter
/// value reported in the CSV (crossover probability, or SNR in dB).
fn channel_points(spec: &ChannelSpec, rate: f64) -> Vec<(ChannelKind, f64)> {
    match spec {
        ChannelSpec::Bsc { p_list } => p_list
            .iter()
            .map(|&p| (ChannelKind::Bsc { p }, p))
            .collect(),
        ChannelSpec::Awgn { snr_db_list, axis } => snr_db_list
            .iter()
            .map(|&db| {
                let sigma2 = match axis {
                    SnrAxis::Ebn0 => ebn0_to_sigma2(db, rate),
                    SnrAxis::Esn0 => esn0_to_sigma2(db),
                };
                (ChannelKind::Awgn { sigma2 }, db)
            })
            .collect(),
    }
}

/// Decodes one observation with the selected scheme, returning the estimate
/// and the iterations consumed (zero for the one-shot ML reference).
fn decode_one(
    decoder: DecoderKind,
    obs: &SoftObservation,
    code: &LinearCode,
    duals: &DualSet,
    t_max: usize,
    pad_params: &PadParams,
) -> Result<(BitVector, usize)> {
    match decoder {
        DecoderKind::Ierd => ierd_decode(&obs.hard_decision(), duals, code, t_max)
            .map(|o| (o.estimate, o.iterations_used)),
        DecoderKind::Pad => {
            pad_decode(obs, duals, code, pad_params).map(|o| (o.estimate, o.iterations_used))
        }
        DecoderKind::Bp => bp_decode(obs, code, t_max).map(|o| (o.estimate, o.iterations_used)),
        DecoderKind::Minsum => {
            min_sum_decode(obs, code, t_max).map(|o| (o.estimate, o.iterations_used))
        }
        DecoderKind::Ml => match obs.channel_kind {
            ChannelKind::Bsc { .. } => ml_hard_decode(&obs.hard_decision(), code).map(|e| (e, 0)),
            ChannelKind::Awgn { .. } => ml_soft_decode(&obs.samples, code).map(|e| (e, 0)),
        },
    }
}

/// Draws message and noise from the trial's own stream, decodes, and counts
/// errors against the transmitted codeword.
fn run_trial(
    prep: &PreparedExperiment,
    kind: &ChannelKind,
    decoder: DecoderKind,
    pad_params: &PadParams,
    channel_idx: usize,
    decoder_idx: usize,
    trial: u64,
) -> Result<(u64, u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(prep.config.master_seed);
    rng.set_stream(trial_stream(channel_idx, decoder_idx, trial));
    let message = BitVector::random(prep.code.k(), &mut rng);
    let codeword = prep.code.encode(&message);
    let (_, obs) = kind.transmit(&codeword, &mut rng)?;
    let (estimate, iterations) = decode_one(
        decoder,
        &obs,
        &prep.code,
        &prep.duals,
        prep.config.t_max,
        pad_params,
    )?;
    let bit_errors = estimate.distance(&codeword) as u64;
    Ok((bit_errors, u64::from(bit_errors > 0), iterations as u64))
}

/// Runs one (channel point, decoder) cell under the stopping rule.
fn run_cell(
    prep: &PreparedExperiment,
    kind: &ChannelKind,
    decoder: DecoderKind,
    pad_params: &PadParams,
    channel_idx: usize,
    decoder_idx: usize,
) -> Result<(u64, u64, u64, u64)> {
    let cap = prep.config.trials;
    let mut trials_done = 0u64;
    let mut bit_errors = 0u64;
    let mut block_errors = 0u64;
    let mut iteration_sum = 0u64;
    while trials_done < cap {
        let batch = STOP_CHECK_BATCH.min(cap - trials_done);
        let (b, bl, it) = (trials_done..trials_done + batch)
            .into_par_iter()
            .map(|trial| {
                run_trial(
                    prep,
                    kind,
                    decoder,
                    pad_params,
                    channel_idx,
                    decoder_idx,
                    trial,
                )
            })
            .try_reduce(|| (0, 0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2)))?;
        bit_errors += b;
        block_errors += bl;
        iteration_sum += it;
        trials_done += batch;
        if let StopRule::MinBlockErrors { target } = prep.config.stop_rule {
            if block_errors >= target {
                break;
            }
        }
    }
    Ok((trials_done, bit_errors, block_errors, iteration_sum))
}

fn run_inner(prep: &PreparedExperiment, timing: TimingMode) -> Result<Vec<ResultRow>> {
    let config = &prep.config;
    if config.decoders.contains(&DecoderKind::Ml) && prep.code.k() > MAX_ML_K {
        return Err(Error::Capability(format!(
            "ML enumeration is limited to k <= {MAX_ML_K}; this code has k = {}",
            prep.code.k()
        )));
    }
    let needs_duals = config
        .decoders
        .iter()
        .any(|d| matches!(d, DecoderKind::Ierd | DecoderKind::Pad));
    if needs_duals && prep.duals.total() == 0 {
        return Err(Error::Config(
            "the flip decoders need at least one decoding vector".into(),
        ));
    }
    let pad_params = PadParams {
        t_max: config.t_max,
        alpha: config.alpha,
        epsilon: config.epsilon,
    };
    let experiment_id = config.experiment_id();
    let points = channel_points(&config.channel, prep.code.rate());

    let mut rows = Vec::with_capacity(points.len() * config.decoders.len());
    for (channel_idx, (kind, param)) in points.iter().enumerate() {
        for (decoder_idx, &decoder) in config.decoders.iter().enumerate() {
            let started = Instant::now();
            let (trials, bit_errors, block_errors, iteration_sum) =
                run_cell(prep, kind, decoder, &pad_params, channel_idx, decoder_idx)?;
            let elapsed_ms_total = match timing {
                TimingMode::Off => 0,
                TimingMode::Wall => started.elapsed().as_millis() as u64,
            };
            debug_assert!(block_errors <= trials);
            debug_assert!(bit_errors <= trials * prep.code.n() as u64);
            rows.push(ResultRow {
                experiment_id: experiment_id.clone(),
                code_n: prep.code.n(),
                code_k: prep.code.k(),
                channel_kind: kind.tag(),
                channel_param: *param,
                decoder,
                trials,
                bit_errors,
                block_errors,
                ber: bit_errors as f64 / (trials as f64 * prep.code.n() as f64),
                bler: block_errors as f64 / trials as f64,
                avg_iterations: iteration_sum as f64 / trials as f64,
                elapsed_ms_total,
                master_seed: config.master_seed,
            });
        }
    }
    Ok(rows)
}

/// Runs a prepared experiment. `threads` pins the worker-pool size (`None`
/// uses the process default); the output is identical either way.
pub fn run_prepared(
    prep: &PreparedExperiment,
    threads: Option<usize>,
    timing: TimingMode,
) -> Result<Vec<ResultRow>> {
    match threads {
        Some(t) if t >= 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| {
                    Error::Config(format!("could not build a {t}-thread worker pool: {e}"))
                })?;
            pool.install(|| run_inner(prep, timing))
        }
        _ => run_inner(prep, timing),
    }
}

/// Convenience wrapper: prepare and run with default threading, no timing.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let prep = prepare_experiment(config)?;
    run_prepared(&prep, None, TimingMode::Off)
}

// ---------------------------------------------------------------------------
// Latency measurement
// ---------------------------------------------------------------------------

/// Times each configured decoder over `blocks` decodes at the first channel
/// point, single-threaded so per-block figures mean something.
///
/// Observations are pre-generated outside the timed region: the timer
/// covers decoding only, not code construction, vector sampling, or noise
/// synthesis. Absolute numbers are machine-dependent by nature; the table
/// is for relative comparison.
pub fn measure_latency(prep: &PreparedExperiment, blocks: u64) -> Result<Vec<LatencyRow>> {
    let config = &prep.config;
    if config.decoders.contains(&DecoderKind::Ml) && prep.code.k() > MAX_ML_K {
        return Err(Error::Capability(format!(
            "ML enumeration is limited to k <= {MAX_ML_K}; this code has k = {}",
            prep.code.k()
        )));
    }
    let points = channel_points(&config.channel, prep.code.rate());
    let (kind, _) = points.first().expect("validated channel sweep is nonempty");
    let pad_params = PadParams {
        t_max: config.t_max,
        alpha: config.alpha,
        epsilon: config.epsilon,
    };

    let mut observations = Vec::with_capacity(blocks as usize);
    for trial in 0..blocks {
        let mut rng = ChaCha8Rng::seed_from_u64(config.master_seed);
        rng.set_stream(trial_stream(0, 0, trial));
        let message = BitVector::random(prep.code.k(), &mut rng);
        let codeword = prep.code.encode(&message);
        observations.push(kind.transmit(&codeword, &mut rng)?.1);
    }

    let mut rows = Vec::with_capacity(config.decoders.len());
    for &decoder in &config.decoders {
        let mut iteration_sum = 0u64;
        let started = Instant::now();
        for obs in &observations {
            let (_, iterations) = decode_one(
                decoder,
                obs,
                &prep.code,
                &prep.duals,
                config.t_max,
                &pad_params,
            )?;
            iteration_sum += iterations as u64;
        }
        let elapsed = started.elapsed();
        // Zero blocks → zero rows: don't report the timer's own overhead.
        let (elapsed_ms_total, per_block_us, avg_iterations) = if blocks == 0 {
            (0.0, 0.0, 0.0)
        } else {
            (
                elapsed.as_secs_f64() * 1e3,
                elapsed.as_secs_f64() * 1e6 / blocks as f64,
                iteration_sum as f64 / blocks as f64,
            )
        };
        rows.push(LatencyRow {
            decoder,
            blocks,
            elapsed_ms_total,
            per_block_us,
            avg_iterations,
        });
    }
    Ok(rows)
}

// ===========================================================================
// Tests
// ===========================================================================

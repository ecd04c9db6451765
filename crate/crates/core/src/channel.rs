//! Channel simulation: BSC and BPSK-over-AWGN, plus the prior likelihood
//! ratios the soft-information decoders consume.
//!
//! BPSK maps bit 0 to −1 and bit 1 to +1. That orientation is forced by the
//! likelihood ratio `LR_i = p(bit 0 | r_i)/p(bit 1 | r_i) = exp(−2 r_i/σ²)`,
//! which exceeds 1 exactly when the observation is negative — consistent
//! only if bit 0 is the one transmitted as −1.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Likelihood ratios are clamped into this range so downstream products and
/// quotients stay finite.
pub const LR_CLAMP_MIN: f64 = 1e-30;
/// See [`LR_CLAMP_MIN`].
pub const LR_CLAMP_MAX: f64 = 1e30;

/// The supported memoryless channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelKind {
    /// Binary symmetric channel with crossover probability `p`.
    Bsc { p: f64 },
    /// BPSK over additive white Gaussian noise with variance `sigma2`.
    Awgn { sigma2: f64 },
}

impl ChannelKind {
    /// Validates the channel parameter ranges: `0 < p < 0.5`, `σ² > 0`.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ChannelKind::Bsc { p } => {
                if !(p > 0.0 && p < 0.5) {
                    return Err(Error::Config(format!(
                        "BSC crossover probability must lie in (0, 0.5), got {p}"
                    )));
                }
            }
            ChannelKind::Awgn { sigma2 } => {
                if !(sigma2 > 0.0 && sigma2.is_finite()) {
                    return Err(Error::Config(format!(
                        "AWGN noise variance must be positive and finite, got {sigma2}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Transmits a codeword, returning the hard-decision word and the soft
    /// observation. For the BSC the "soft" samples are just ±1 images of the
    /// hard bits; for AWGN the hard word is the per-sample sign decision.
    pub fn transmit<R: Rng + ?Sized>(
        &self,
        c: &BitVector,
        rng: &mut R,
    ) -> Result<(BitVector, SoftObservation)> {
        match *self {
            ChannelKind::Bsc { p } => bsc_transmit(c, p, rng),
            ChannelKind::Awgn { sigma2 } => {
                let obs = awgn_transmit(c, sigma2, rng)?;
                let hard = obs.hard_decision();
                Ok((hard, obs))
            }
        }
    }

    /// Short lowercase tag used in CSV output.
    #[must_use]
    pub fn tag(&self) -> &'static str {
        match self {
            ChannelKind::Bsc { .. } => "bsc",
            ChannelKind::Awgn { .. } => "awgn",
        }
    }

    /// The scalar parameter (crossover probability or noise variance).
    #[must_use]
    pub fn param(&self) -> f64 {
        match *self {
            ChannelKind::Bsc { p } => p,
            ChannelKind::Awgn { sigma2 } => sigma2,
        }
    }
}

/// One channel use per bit: the real-valued samples plus the channel they
/// came from (needed to turn samples into likelihood ratios).
#[derive(Debug, Clone, PartialEq)]
pub struct SoftObservation {
    /// One real sample per transmitted bit; ±1 exactly for the BSC.
    pub samples: Vec<f64>,
    /// The channel that produced the samples.
    pub channel_kind: ChannelKind,
}

impl SoftObservation {
    /// Sign-based hard decision: bit 1 iff the sample is positive.
    #[must_use]
    pub fn hard_decision(&self) -> BitVector {
        let mut hard = BitVector::zeros(self.samples.len());
        for (i, &s) in self.samples.iter().enumerate() {
            if s > 0.0 {
                hard.set(i, true);
            }
        }
        hard
    }
}

/// Flips each bit of `c` independently with probability `p` and reports the
/// result both as a hard word and as a ±1 sample vector.
pub fn bsc_transmit<R: Rng + ?Sized>(
    c: &BitVector,
    p: f64,
    rng: &mut R,
) -> Result<(BitVector, SoftObservation)> {
    ChannelKind::Bsc { p }.validate()?;
    let mut hard = c.clone();
    for i in 0..c.len() {
        if rng.random::<f64>() < p {
            hard.flip(i);
        }
    }
    let samples = (0..hard.len())
        .map(|i| if hard.get(i) { 1.0 } else { -1.0 })
        .collect();
    Ok((
        hard,
        SoftObservation {
            samples,
            channel_kind: ChannelKind::Bsc { p },
        },
    ))
}

/// BPSK-modulates `c` (0 → −1, 1 → +1) and adds Gaussian noise of variance
/// `sigma2` to every sample.
pub fn awgn_transmit<R: Rng + ?Sized>(
    c: &BitVector,
    sigma2: f64,
    rng: &mut R,
) -> Result<SoftObservation> {
    ChannelKind::Awgn { sigma2 }.validate()?;
    let sigma = sigma2.sqrt();
    let samples = (0..c.len())
        .map(|i| {
            let symbol = if c.get(i) { 1.0 } else { -1.0 };
            let noise: f64 = StandardNormal.sample(rng);
            symbol + sigma * noise
        })
        .collect();
    Ok(SoftObservation {
        samples,
        channel_kind: ChannelKind::Awgn { sigma2 },
    })
}

/// Per-bit likelihood ratios `LR_i = p(bit 0 | r_i)/p(bit 1 | r_i)`, clamped
/// into `[1e-30, 1e30]`.
///
/// AWGN: `exp(−2 r_i/σ²)`. BSC: `(1−p)/p` when the received bit is 0,
/// `p/(1−p)` when it is 1.
#[must_use]
pub fn prior_lr(obs: &SoftObservation) -> Vec<f64> {
    obs.samples
        .iter()
        .map(|&r| {
            let lr = match obs.channel_kind {
                ChannelKind::Awgn { sigma2 } => (-2.0 * r / sigma2).exp(),
                ChannelKind::Bsc { p } => {
                    if r < 0.0 {
                        (1.0 - p) / p
                    } else {
                        p / (1.0 - p)
                    }
                }
            };
            lr.clamp(LR_CLAMP_MIN, LR_CLAMP_MAX)
        })
        .collect()
}

/// Per-bit log-likelihood ratios `ln LR_i`; positive values favor bit 0.
#[must_use]
pub fn prior_llr(obs: &SoftObservation) -> Vec<f64> {
    obs.samples
        .iter()
        .map(|&r| match obs.channel_kind {
            ChannelKind::Awgn { sigma2 } => -2.0 * r / sigma2,
            ChannelKind::Bsc { p } => -r * ((1.0 - p) / p).ln(),
        })
        .collect()
}

/// Noise variance for a target Eb/N0 (dB) at code rate `k/n`, unit-energy
/// BPSK: `σ² = 1 / (2 · rate · 10^(dB/10))`.
#[must_use]
pub fn ebn0_to_sigma2(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))
}

/// Noise variance for a target Es/N0 (dB): the rate-1 special case.
#[must_use]
pub fn esn0_to_sigma2(esn0_db: f64) -> f64 {
    ebn0_to_sigma2(esn0_db, 1.0)
}

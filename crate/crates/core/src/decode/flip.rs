//! The two dual-codeword flip decoders.
//!
//! **IERD** (iterative error reduction decoding) is pure hard-decision: each
//! iteration computes the single-flip intrinsic-information profile of the
//! current word and flips the position whose flip leaves the fewest failing
//! checks (argmin, lowest index on ties). It stops when the total count
//! reaches zero.
//!
//! **PAD** (prior-assisted decoding) blends channel likelihood ratios with
//! the same profile. Each iteration forms a comprehensive score
//!
//! ```text
//! E_i = LR_i · (max − WT_i) / max(WT_i − min, ε)   if sample_i > 0
//! E_i = LR_i · (WT_i − min) / max(max − WT_i, ε)   otherwise
//! ```
//!
//! then re-decides every bit at once (bit 0 iff `E_i > 1`) and recycles the
//! scores as the next iteration's priors via `LR_i ← α·E_i` (clamped). The
//! profile is recomputed on the current flipped word each iteration; `WT`,
//! `min`, and `max` are read from that per-position profile.

use crate::channel::{prior_lr, SoftObservation, LR_CLAMP_MAX, LR_CLAMP_MIN};
use crate::code::LinearCode;
use crate::dual::DualSet;
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::reliability::{wt_profile, wt_total};

use super::DecodeOutcome;

/// Tunables for [`pad_decode`]. Defaults: 15 iterations, `α = 1`, `ε = 1e−9`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadParams {
    /// Iteration cap.
    pub t_max: usize,
    /// Scale applied to `E_i` when recycling it as the next prior.
    pub alpha: f64,
    /// Guard substituted for vanishing denominators in the score.
    pub epsilon: f64,
}

impl Default for PadParams {
    fn default() -> Self {
        PadParams {
            t_max: 15,
            alpha: 1.0,
            epsilon: 1e-9,
        }
    }
}

impl PadParams {
    /// Rejects nonpositive or nonfinite tunables.
    pub fn validate(&self) -> Result<()> {
        if self.t_max == 0 {
            return Err(Error::Config("iteration cap must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::Config(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

fn check_duals(duals: &DualSet, n: usize) -> Result<()> {
    if duals.total() == 0 {
        return Err(Error::Config(
            "dual set is empty; nothing to check against".into(),
        ));
    }
    if duals.n != n {
        return Err(Error::Config(format!(
            "dual set is for block length {}, word has length {n}",
            duals.n
        )));
    }
    Ok(())
}

/// Hard-decision decoding by iterative single-bit error reduction.
///
/// Flips the argmin of the single-flip profile each iteration; converges
/// when the flip drives the failing-check count to zero. A word whose count
/// is already zero is returned unchanged after zero iterations (the received
/// word itself is tested before any flip).
pub fn ierd_decode(
    r: &BitVector,
    duals: &DualSet,
    code: &LinearCode,
    t_max: usize,
) -> Result<DecodeOutcome> {
    Ok(ierd_decode_with_trace(r, duals, code, t_max)?.0)
}

/// [`ierd_decode`] plus the sequence of flipped positions, for auditing.
pub fn ierd_decode_with_trace(
    r: &BitVector,
    duals: &DualSet,
    code: &LinearCode,
    t_max: usize,
) -> Result<(DecodeOutcome, Vec<usize>)> {
    check_duals(duals, r.len())?;
    if t_max == 0 {
        return Err(Error::Config("iteration cap must be at least 1".into()));
    }

    let mut word = r.clone();
    let mut trace = Vec::new();
    if wt_total(&word, duals) == 0 {
        return Ok((DecodeOutcome::finish(word, 0, true, code), trace));
    }
    for t in 1..=t_max {
        let profile = wt_profile(&word, duals);
        let j = profile.argmin_index;
        word.flip(j);
        trace.push(j);
        if profile.min_value == 0 {
            return Ok((DecodeOutcome::finish(word, t, true, code), trace));
        }
    }
    Ok((DecodeOutcome::finish(word, t_max, false, code), trace))
}

/// Soft-assisted decoding: channel priors scaled by profile extremity, with
/// parallel multi-bit re-decision each iteration.
///
/// Convergence is tested at the top of each iteration (and once after the
/// final one): the current hard word must have zero failing checks. A
/// degenerate profile with `min = max` carries no positional information, so
/// that iteration leaves both the word and the priors untouched.
pub fn pad_decode(
    obs: &SoftObservation,
    duals: &DualSet,
    code: &LinearCode,
    params: &PadParams,
) -> Result<DecodeOutcome> {
    params.validate()?;
    check_duals(duals, obs.samples.len())?;

    let mut lr = prior_lr(obs);
    let mut hard = obs.hard_decision();

    for t in 0..params.t_max {
        if wt_total(&hard, duals) == 0 {
            return Ok(DecodeOutcome::finish(hard, t, true, code));
        }
        let profile = wt_profile(&hard, duals);
        if profile.min_value == profile.max_value {
            continue;
        }
        let (min, max) = (profile.min_value as f64, profile.max_value as f64);
        for (i, lr_i) in lr.iter_mut().enumerate() {
            let wt_i = profile.values[i] as f64;
            let e_i = if obs.samples[i] > 0.0 {
                *lr_i * (max - wt_i) / (wt_i - min).max(params.epsilon)
            } else {
                *lr_i * (wt_i - min) / (max - wt_i).max(params.epsilon)
            };
            hard.set(i, e_i <= 1.0);
            *lr_i = (params.alpha * e_i).clamp(LR_CLAMP_MIN, LR_CLAMP_MAX);
        }
    }
    let converged = wt_total(&hard, duals) == 0;
    Ok(DecodeOutcome::finish(hard, params.t_max, converged, code))
}

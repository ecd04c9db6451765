//! Brute-force maximum-likelihood decoding, used as a ground-truth oracle.
//!
//! Every message is enumerated in numeric order and encoded; the candidate
//! minimizing the metric wins, with exact ties resolved in favor of the
//! smallest message index (numeric enumeration makes that free: strict
//! improvement is required to displace the incumbent).

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest message dimension the exhaustive ML oracle accepts.
pub const MAX_ML_K: usize = 20;

fn check_ml_capability(code: &LinearCode) -> Result<()> {
    if code.k() > MAX_ML_K {
        return Err(Error::Capability(format!(
            "ML enumeration needs 2^{} codewords; limit is k <= {MAX_ML_K}",
            code.k()
        )));
    }
    Ok(())
}

fn message_of(m: u64, k: usize) -> BitVector {
    let mut msg = BitVector::zeros(k);
    for i in 0..k {
        if (m >> i) & 1 == 1 {
            msg.set(i, true);
        }
    }
    msg
}

/// Minimum-Hamming-distance decoding of a hard word by full enumeration.
///
/// Fails with a capability error when `k > MAX_ML_K`.
pub fn ml_hard_decode(word: &BitVector, code: &LinearCode) -> Result<BitVector> {
    check_ml_capability(code)?;
    if word.len() != code.n() {
        return Err(Error::Config(format!(
            "word has length {}, code expects {}",
            word.len(),
            code.n()
        )));
    }
    let mut best = code.encode(&message_of(0, code.k()));
    let mut best_dist = word.distance(&best);
    for m in 1u64..(1u64 << code.k()) {
        let cw = code.encode(&message_of(m, code.k()));
        let dist = word.distance(&cw);
        if dist < best_dist {
            best_dist = dist;
            best = cw;
        }
    }
    Ok(best)
}

/// Minimum-Euclidean-distance decoding of BPSK soft samples by full
/// enumeration. For unit-energy symbols this is equivalent to maximizing
/// the correlation `Σ r_i · m(c_i)`, which is what is computed.
///
/// Fails with a capability error when `k > MAX_ML_K`.
pub fn ml_soft_decode(samples: &[f64], code: &LinearCode) -> Result<BitVector> {
    check_ml_capability(code)?;
    if samples.len() != code.n() {
        return Err(Error::Config(format!(
            "observation has {} samples, code expects {}",
            samples.len(),
            code.n()
        )));
    }
    let correlation = |cw: &BitVector| -> f64 {
        samples
            .iter()
            .enumerate()
            .map(|(i, &r)| if cw.get(i) { r } else { -r })
            .sum()
    };
    let mut best = code.encode(&message_of(0, code.k()));
    let mut best_corr = correlation(&best);
    for m in 1u64..(1u64 << code.k()) {
        let cw = code.encode(&message_of(m, code.k()));
        let corr = correlation(&cw);
        if corr > best_corr {
            best_corr = corr;
            best = cw;
        }
    }
    Ok(best)
}

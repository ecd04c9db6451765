//! Belief-propagation baselines: flooding sum-product and min-sum on the
//! Tanner graph of the parity-check matrix.
//!
//! LLR convention throughout: positive values favor bit 0 (matching the
//! channel module's `prior_llr`). Early stopping tests the syndrome of the
//! current hard decision — including the iteration-zero decision straight
//! from the channel, so a clean received word costs no message updates.

use crate::channel::{prior_llr, SoftObservation};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};

use super::DecodeOutcome;

#[derive(Clone, Copy, PartialEq, Eq)]
enum CheckRule {
    SumProduct,
    MinSum,
}

/// Flooding message-passing state over the Tanner graph of `h`.
///
/// Messages are stored per edge, grouped by check: `v2c[c][e]` and
/// `c2v[c][e]` follow `vars[c][e]`, the variable indices on check `c`'s
/// edges.
struct MessagePassing<'a> {
    llr: &'a [f64],
    vars: Vec<Vec<usize>>,
    v2c: Vec<Vec<f64>>,
    c2v: Vec<Vec<f64>>,
    rule: CheckRule,
    n: usize,
}

impl<'a> MessagePassing<'a> {
    fn new(llr: &'a [f64], h: &BinaryMatrix, rule: CheckRule) -> Self {
        let vars: Vec<Vec<usize>> = h.row_iter().map(|row| row.ones().collect()).collect();
        let v2c: Vec<Vec<f64>> = vars
            .iter()
            .map(|edges| edges.iter().map(|&v| llr[v]).collect())
            .collect();
        let c2v: Vec<Vec<f64>> = vars.iter().map(|edges| vec![0.0; edges.len()]).collect();
        MessagePassing {
            llr,
            vars,
            v2c,
            c2v,
            rule,
            n: h.cols(),
        }
    }

    /// One flooding iteration: all check updates, then all variable updates.
    fn iterate(&mut self) {
        // Check-node update.
        for (c, edges) in self.vars.iter().enumerate() {
            match self.rule {
                CheckRule::SumProduct => {
                    // Product of tanh(m/2) over all edges, then divide the
                    // target edge back out; exact zeros are handled by
                    // recomputing the leave-one-out product.
                    let tanhs: Vec<f64> = self.v2c[c].iter().map(|&m| (m / 2.0).tanh()).collect();
                    for e in 0..edges.len() {
                        let mut prod = 1.0;
                        for (e2, &t) in tanhs.iter().enumerate() {
                            if e2 != e {
                                prod *= t;
                            }
                        }
                        let prod = prod.clamp(-(1.0 - 1e-15), 1.0 - 1e-15);
                        self.c2v[c][e] = 2.0 * prod.atanh();
                    }
                }
                CheckRule::MinSum => {
                    for e in 0..edges.len() {
                        let mut sign = 1.0f64;
                        let mut min_mag = f64::INFINITY;
                        for (e2, &m) in self.v2c[c].iter().enumerate() {
                            if e2 != e {
                                if m < 0.0 {
                                    sign = -sign;
                                }
                                min_mag = min_mag.min(m.abs());
                            }
                        }
                        if !min_mag.is_finite() {
                            // Degree-1 check: even parity pins the variable to
                            // zero. Large finite push (infinity would poison
                            // the leave-one-out subtraction with NaN).
                            min_mag = 1e3;
                        }
                        self.c2v[c][e] = sign * min_mag;
                    }
                }
            }
        }
        // Variable-node update: total belief minus the incoming edge.
        let beliefs = self.beliefs();
        for (c, edges) in self.vars.iter().enumerate() {
            for (e, &v) in edges.iter().enumerate() {
                self.v2c[c][e] = beliefs[v] - self.c2v[c][e];
            }
        }
    }

    /// Posterior LLR per variable: channel prior plus all check messages.
    fn beliefs(&self) -> Vec<f64> {
        let mut out = self.llr.to_vec();
        for (c, edges) in self.vars.iter().enumerate() {
            for (e, &v) in edges.iter().enumerate() {
                out[v] += self.c2v[c][e];
            }
        }
        out
    }

    /// Hard decision from the posterior: bit 1 iff its LLR is negative.
    fn hard_decision(&self) -> BitVector {
        let beliefs = self.beliefs();
        let mut hard = BitVector::zeros(self.n);
        for (i, &b) in beliefs.iter().enumerate() {
            if b < 0.0 {
                hard.set(i, true);
            }
        }
        hard
    }
}

fn message_passing_decode(
    obs: &SoftObservation,
    code: &LinearCode,
    t_max: usize,
    rule: CheckRule,
) -> Result<DecodeOutcome> {
    if t_max == 0 {
        return Err(Error::Config("iteration cap must be at least 1".into()));
    }
    if obs.samples.len() != code.n() {
        return Err(Error::Config(format!(
            "observation has {} samples, code expects {}",
            obs.samples.len(),
            code.n()
        )));
    }
    let llr = prior_llr(obs);
    let mut state = MessagePassing::new(&llr, code.parity_check(), rule);

    let mut hard = obs.hard_decision();
    if code.is_codeword(&hard) {
        return Ok(DecodeOutcome::finish(hard, 0, true, code));
    }
    for t in 1..=t_max {
        state.iterate();
        hard = state.hard_decision();
        if code.is_codeword(&hard) {
            return Ok(DecodeOutcome::finish(hard, t, true, code));
        }
    }
    Ok(DecodeOutcome::finish(hard, t_max, false, code))
}

/// Flooding sum-product decoding with early stop on a clean syndrome.
pub fn bp_decode(obs: &SoftObservation, code: &LinearCode, t_max: usize) -> Result<DecodeOutcome> {
    message_passing_decode(obs, code, t_max, CheckRule::SumProduct)
}

/// Flooding min-sum decoding with early stop on a clean syndrome.
pub fn min_sum_decode(
    obs: &SoftObservation,
    code: &LinearCode,
    t_max: usize,
) -> Result<DecodeOutcome> {
    message_passing_decode(obs, code, t_max, CheckRule::MinSum)
}

/// Posterior LLRs after a fixed number of flooding sum-product iterations,
/// with no early stopping. Diagnostic entry point: on a cycle-free check
/// matrix the beliefs equal the exact bit marginals once the iteration count
/// covers the graph diameter.
#[must_use]
pub fn sum_product_beliefs(llr: &[f64], h: &BinaryMatrix, iterations: usize) -> Vec<f64> {
    let mut state = MessagePassing::new(llr, h, CheckRule::SumProduct);
    for _ in 0..iterations {
        state.iterate();
    }
    state.beliefs()
}

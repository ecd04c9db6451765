//! Decoders: the dual-codeword flip decoders (IERD, PAD), belief-propagation
//! baselines (sum-product, min-sum), and a brute-force ML oracle.
//!
//! All decoders return a [`DecodeOutcome`] carrying the estimate, the
//! iteration count, whether the decoder's own stopping criterion fired
//! (`converged`), and — independently — whether the estimate passes the full
//! parity check (`syndrome_clean`). A zero intrinsic-information total over a
//! *sampled* dual set does not logically guarantee codeword membership, so
//! both flags are reported.

mod bp;
mod flip;
mod ml;

pub use bp::{bp_decode, min_sum_decode, sum_product_beliefs};
pub use flip::{ierd_decode, ierd_decode_with_trace, pad_decode, PadParams};
pub use ml::{ml_hard_decode, ml_soft_decode, MAX_ML_K};

use crate::code::LinearCode;
use crate::gf2::BitVector;

/// How a decode call ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    /// The decoder's stopping criterion fired before the iteration cap.
    Decoded,
    /// The iteration cap was reached; the estimate is the best current word.
    Exhausted,
}

/// Result of one decode call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    /// The decoder's final word (always full length, even on exhaustion).
    pub estimate: BitVector,
    /// Iterations actually executed (never exceeds the cap).
    pub iterations_used: usize,
    /// Whether the decoder's intrinsic stopping criterion was reached.
    pub converged: bool,
    /// Whether `estimate` passes the code's full parity check.
    pub syndrome_clean: bool,
    /// Decoded vs exhausted, mirroring `converged`.
    pub status: DecodeStatus,
}

impl DecodeOutcome {
    /// Assembles an outcome, deriving the syndrome flag and status.
    pub(crate) fn finish(
        estimate: BitVector,
        iterations_used: usize,
        converged: bool,
        code: &LinearCode,
    ) -> Self {
        let syndrome_clean = code.is_codeword(&estimate);
        DecodeOutcome {
            estimate,
            iterations_used,
            converged,
            syndrome_clean,
            status: if converged {
                DecodeStatus::Decoded
            } else {
                DecodeStatus::Exhausted
            },
        }
    }
}

//! Dual-codeword decoding of binary linear block codes.
//!
//! The crate covers the full pipeline for studying weight-flexible decoding
//! built on dual-code checks:
//!
//! * [`gf2`] — packed GF(2) vectors and matrices.
//! * [`code`] — systematic linear block codes, encoding, syndromes, file I/O.
//! * [`dual`] — sampling of low- and high-weight dual codeword sets.
//! * [`reliability`] — odd-overlap probabilities and the intrinsic
//!   check-failure statistics (`wt`) that drive the flip decoders.
//! * [`channel`] — BSC and BPSK/AWGN transmission plus likelihood ratios.
//! * [`decode`] — iterative flip decoding (hard and soft), belief
//!   propagation, min-sum, and an exhaustive ML oracle.
//! * [`analysis`] — analytical check-failure distributions and word error
//!   rate prediction.
//! * [`experiment`] — a reproducible, parallel Monte Carlo harness.
//!
//! Probability computations are generic over [`scalar::ProbScalar`], with
//! `f64` (log-factorial backend) for speed and [`ExactProb`] for exact
//! rational arithmetic; the two backends cross-check each other in tests.

pub mod analysis;
pub mod channel;
pub mod code;
pub mod decode;
pub mod dual;
pub mod error;
pub mod experiment;
pub mod gf2;
pub mod reliability;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational probability type used by the exact backends.
pub type ExactProb = num_rational::BigRational;

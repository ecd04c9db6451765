//! Odd-overlap probability, its structural identities, and the
//! intrinsic-information statistics used by the decoders.
//!
//! The central quantity is `W(δ, τ)`: the probability that a uniformly
//! random weight-`δ` dual word has odd overlap with a uniformly random
//! weight-`τ` error vector,
//!
//! ```text
//! W(δ, τ) = Σ_{k odd, 1 ≤ k ≤ τ} C(τ, k) · C(N−τ, δ−k) / C(N, δ).
//! ```
//!
//! A dual check ⟨v, w⟩ fails exactly when v has odd overlap with the error
//! pattern, so `W` governs how informative a weight class is. Low-weight
//! duals fail rarely (`W` well below 1/2), very high-weight duals fail with
//! probability near `1 − W(N−δ, τ)`-style complements, and a dead band
//! around `δ ≈ N/2` carries almost nothing.
//!
//! On top of `W` this module provides the intrinsic-information counters:
//! `wt_a` (failing low-weight checks), `wt_b_adjusted` (failing high-weight
//! checks, complement-folded), their sum `wt_total`, and the per-position
//! flip profile `wt_profile` that drives the bit-flipping decoders.

use crate::dual::DualSet;
use crate::gf2::BitVector;
use crate::scalar::ProbScalar;

// ---------------------------------------------------------------------------
// W(δ, τ) and its identities
// ---------------------------------------------------------------------------

/// Probability that a random weight-`delta` dual word has odd overlap with a
/// random weight-`tau` error vector, over blocks of length `n`.
///
/// Evaluates the hypergeometric sum exactly (rational backend) or in the log
/// domain (`f64` backend); `tau = 0` yields zero (empty sum).
///
/// # Panics
///
/// Panics if `delta > n` or `tau > n`.
#[must_use]
pub fn odd_overlap_prob<T: ProbScalar>(n: usize, delta: usize, tau: usize) -> T {
    assert!(delta <= n, "dual weight {delta} exceeds block length {n}");
    assert!(tau <= n, "error weight {tau} exceeds block length {n}");
    let mut total = T::zero();
    let mut k = 1usize;
    while k <= tau && k <= delta {
        total = total
            + T::binomial_ratio(
                tau as u64,
                k as u64,
                (n - tau) as u64,
                (delta - k) as u64,
                n as u64,
                delta as u64,
            );
        k += 2;
    }
    total
}

/// True when the complement identity holds exactly at these arguments:
/// `W(n−δ, τ) = 1 − W(δ, τ)` for odd `τ`, `W(n−δ, τ) = W(δ, τ)` for even `τ`.
#[must_use]
pub fn complement_identity_holds(n: usize, delta: usize, tau: usize) -> bool {
    let w_delta: crate::ExactProb = odd_overlap_prob(n, delta, tau);
    let w_compl: crate::ExactProb = odd_overlap_prob(n, n - delta, tau);
    if tau % 2 == 1 {
        w_compl == <crate::ExactProb as num_traits::One>::one() - w_delta
    } else {
        w_compl == w_delta
    }
}

/// Exact test of the monotonicity precondition
/// `2τ + 2 + (√τ + 1)(δ − 3) ≤ n`.
///
/// Evaluated purely in integer arithmetic. With `L = δ − 3` and
/// `R = n − 2τ − δ + 1` the inequality reads `√τ · L ≤ R`; squaring is only
/// valid once the signs are pinned down:
///
/// * `L ≤ 0, R ≥ 0` — always true;
/// * `L ≤ 0, R < 0` — true iff `τ·L² ≥ R²` (both sides negative);
/// * `L > 0` — true iff `R ≥ 0` and `τ·L² ≤ R²`.
#[must_use]
pub fn monotonicity_condition(n: usize, delta: usize, tau: usize) -> bool {
    let l = delta as i128 - 3;
    let r = n as i128 - 2 * tau as i128 - delta as i128 + 1;
    let t = tau as i128;
    if l <= 0 {
        r >= 0 || t * l * l >= r * r
    } else {
        r >= 0 && t * l * l <= r * r
    }
}

// ---------------------------------------------------------------------------
// Intrinsic information
// ---------------------------------------------------------------------------

/// Number of low-weight dual checks that fail on `w`:
/// `Σ_{a ∈ A} ⟨a, w⟩ mod 2`, summed over GF(2) products as integers.
///
/// # Panics
///
/// Panics if any vector length differs from `w.len()`.
#[must_use]
pub fn wt_a(w: &BitVector, set_a: &[BitVector]) -> usize {
    set_a.iter().filter(|a| a.dot(w)).count()
}

/// Number of high-weight dual checks that fail on `w`, complement-adjusted:
/// with `s = Σ_{b ∈ B} ⟨b, w⟩`, returns `|B| − s` when `s > |B|/2`, else `s`.
///
/// High-weight checks fail *more* often than not under few errors, so a
/// large raw count is evidence of closeness to a codeword; folding maps both
/// regimes onto "small is reliable". At the exact tie `s = |B|/2` the two
/// branches coincide and `s` is returned unchanged.
///
/// # Panics
///
/// Panics if any vector length differs from `w.len()`.
#[must_use]
pub fn wt_b_adjusted(w: &BitVector, set_b: &[BitVector]) -> usize {
    let s = set_b.iter().filter(|b| b.dot(w)).count();
    if 2 * s > set_b.len() {
        set_b.len() - s
    } else {
        s
    }
}

/// Total intrinsic information `wt_a(w) + wt_b_adjusted(w)`; zero exactly
/// when every selected check is consistent with `w` being a codeword.
///
/// # Panics
///
/// Panics if `w.len() != duals.n`.
#[must_use]
pub fn wt_total(w: &BitVector, duals: &DualSet) -> usize {
    assert_eq!(
        w.len(),
        duals.n,
        "word length {} != dual-set length {}",
        w.len(),
        duals.n
    );
    wt_a(w, &duals.set_a) + wt_b_adjusted(w, &duals.set_b)
}

/// Per-position intrinsic information after a single flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WtProfile {
    /// `values[i] = wt_total(w + e_i, duals)` for each position `i`.
    pub values: Vec<usize>,
    /// Smallest profile entry.
    pub min_value: usize,
    /// Largest profile entry.
    pub max_value: usize,
    /// First index attaining `min_value`.
    pub argmin_index: usize,
}

impl WtProfile {
    /// Wraps raw per-position values, deriving min/max/argmin.
    ///
    /// # Panics
    ///
    /// Panics if `values` is empty.
    #[must_use]
    pub fn from_values(values: Vec<usize>) -> Self {
        assert!(!values.is_empty(), "profile needs at least one position");
        let mut min_value = values[0];
        let mut max_value = values[0];
        let mut argmin_index = 0;
        for (i, &v) in values.iter().enumerate() {
            if v < min_value {
                min_value = v;
                argmin_index = i;
            }
            if v > max_value {
                max_value = v;
            }
        }
        WtProfile {
            values,
            min_value,
            max_value,
            argmin_index,
        }
    }
}

/// Counts used to evaluate one dual set's contribution to every
/// single-flip word at once: `total_odd` checks fail on `w` itself, and
/// `col_odd[i]` / `col_even[i]` count set members with a one at position `i`
/// among the failing / passing checks respectively.
fn split_column_counts(w: &BitVector, set: &[BitVector]) -> (usize, Vec<usize>, Vec<usize>) {
    let n = w.len();
    let mut total_odd = 0;
    let mut col_odd = vec![0usize; n];
    let mut col_even = vec![0usize; n];
    for v in set {
        if v.dot(w) {
            total_odd += 1;
            for j in v.ones() {
                col_odd[j] += 1;
            }
        } else {
            for j in v.ones() {
                col_even[j] += 1;
            }
        }
    }
    (total_odd, col_odd, col_even)
}

/// Computes `wt_total(w + e_i, duals)` for every position `i` in one pass.
///
/// Each dual product is evaluated once against `w`; flipping position `i`
/// toggles exactly the checks whose vector has a one there, so the whole
/// profile costs `O((|A| + |B|) · n)` bit operations instead of the naive
/// `O((|A| + |B|) · n²)`.
///
/// # Panics
///
/// Panics if `w.len() != duals.n`.
#[must_use]
pub fn wt_profile(w: &BitVector, duals: &DualSet) -> WtProfile {
    assert_eq!(
        w.len(),
        duals.n,
        "word length {} != dual-set length {}",
        w.len(),
        duals.n
    );
    let n = w.len();
    let (a_odd, a_col_odd, a_col_even) = split_column_counts(w, &duals.set_a);
    let (b_odd, b_col_odd, b_col_even) = split_column_counts(w, &duals.set_b);
    let b_len = duals.set_b.len();

    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let a_term = a_odd - a_col_odd[i] + a_col_even[i];
        let b_raw = b_odd - b_col_odd[i] + b_col_even[i];
        let b_term = if 2 * b_raw > b_len {
            b_len - b_raw
        } else {
            b_raw
        };
        values.push(a_term + b_term);
    }
    WtProfile::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::dual::{sample_dual_sets, sample_dual_sets_with_thresholds};
    use crate::gf2::BinaryMatrix;
    use crate::ExactProb;
    use num_traits::{One, Zero};
    use rand::seq::index::sample as index_sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // -- W(δ,τ) ------------------------------------------------------------

    /// Brute-force oracle: enumerate every weight-`delta` support and every
    /// weight-`tau` support of an n-bit word and count odd intersections.
    fn odd_overlap_by_enumeration(n: usize, delta: usize, tau: usize) -> ExactProb {
        fn supports(n: usize, w: usize) -> Vec<u32> {
            (0u32..1 << n)
                .filter(|x| x.count_ones() as usize == w)
                .collect()
        }
        let vs = supports(n, delta);
        let fs = supports(n, tau);
        let mut odd = 0u64;
        for v in &vs {
            for f in &fs {
                if (v & f).count_ones() % 2 == 1 {
                    odd += 1;
                }
            }
        }
        ExactProb::new(odd.into(), ((vs.len() * fs.len()) as u64).into())
    }

    #[test]
    fn exact_w_matches_enumeration_oracle_at_n7() {
        for delta in 0..=7 {
            for tau in 0..=7 {
                let closed: ExactProb = odd_overlap_prob(7, delta, tau);
                assert_eq!(
                    closed,
                    odd_overlap_by_enumeration(7, delta, tau),
                    "n=7 delta={delta} tau={tau}"
                );
            }
        }
    }

    #[test]
    fn w_closed_form_special_cases() {
        // tau = 0: empty sum.
        assert!(odd_overlap_prob::<ExactProb>(13, 5, 0).is_zero());
        // tau = 1: only k = 1 survives, giving delta / n.
        for n in [7usize, 16, 33] {
            for delta in 0..=n {
                let w: ExactProb = odd_overlap_prob(n, delta, 1);
                assert_eq!(w, ExactProb::new((delta as u64).into(), (n as u64).into()));
            }
        }
        // The worked example: n=7, delta=3, tau=2 -> C(2,1)C(5,2)/C(7,3) = 4/7.
        let w: ExactProb = odd_overlap_prob(7, 3, 2);
        assert_eq!(w, ExactProb::new(4.into(), 7.into()));
    }

    #[test]
    fn w_stays_within_probability_bounds_exactly() {
        let one = ExactProb::one();
        for delta in 0..=16 {
            for tau in 0..=16 {
                let w: ExactProb = odd_overlap_prob(16, delta, tau);
                assert!(
                    w >= ExactProb::zero() && w <= one,
                    "delta={delta} tau={tau}"
                );
            }
        }
    }

    #[test]
    fn float_backend_tracks_exact_backend() {
        for &(n, delta, tau) in &[
            (7usize, 3usize, 2usize),
            (16, 8, 3),
            (32, 13, 5),
            (64, 21, 4),
            (64, 43, 7),
            (64, 32, 8),
        ] {
            let exact = odd_overlap_prob::<ExactProb>(n, delta, tau).to_f64();
            let float: f64 = odd_overlap_prob(n, delta, tau);
            assert!(
                (float - exact).abs() <= 1e-11 * exact.abs().max(1e-300),
                "n={n} delta={delta} tau={tau}: {float} vs {exact}"
            );
        }
    }

    #[test]
    fn complement_identity_sweeps_clean_at_n8() {
        for delta in 0..=8 {
            for tau in 0..=8 {
                assert!(
                    complement_identity_holds(8, delta, tau),
                    "delta={delta} tau={tau}"
                );
            }
        }
        // Fixed point: even n, delta = n/2, odd tau forces W = 1/2.
        let w: ExactProb = odd_overlap_prob(8, 4, 1);
        assert_eq!(w, ExactProb::new(1.into(), 2.into()));
    }

    // -- Monotonicity condition ---------------------------------------------

    #[test]
    fn monotonicity_condition_spot_values() {
        // delta = 3 collapses the condition to 2*tau + 2 <= n.
        for n in 1..=30 {
            for tau in 0..=30 {
                assert_eq!(monotonicity_condition(n, 3, tau), 2 * tau + 2 <= n);
            }
        }
        assert!(monotonicity_condition(64, 10, 4)); // 8 + 2 + 3*7 = 31 <= 64
        assert!(!monotonicity_condition(10, 9, 4)); // 8 + 2 + 3*6 = 28 > 10
    }

    #[test]
    fn monotonicity_condition_matches_float_evaluation_off_boundary() {
        for n in 1..=40usize {
            for delta in 0..=n {
                for tau in 0..=n {
                    let lhs =
                        2.0 * tau as f64 + 2.0 + ((tau as f64).sqrt() + 1.0) * (delta as f64 - 3.0);
                    if (lhs - n as f64).abs() > 1e-6 {
                        assert_eq!(
                            monotonicity_condition(n, delta, tau),
                            lhs <= n as f64,
                            "n={n} delta={delta} tau={tau}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn monotonicity_condition_handles_small_delta_signs() {
        // delta < 3 makes the (delta - 3) term negative; naive squaring that
        // demands a nonnegative right side would wrongly reject these.
        assert!(monotonicity_condition(10, 0, 4)); // 8 + 2 + 3*(-3) = 1 <= 10
        assert!(monotonicity_condition(8, 2, 3)); // 6 + 2 - 2.73 ≈ 5.27 <= 8
                                                  // And a genuinely false small-delta case: huge tau.
        assert!(!monotonicity_condition(8, 2, 7)); // 14 + 2 - 3.65 ≈ 12.35 > 8
    }

    // -- Intrinsic information ----------------------------------------------

    fn hamming_7_4() -> LinearCode {
        let g = BinaryMatrix::from_rows(
            vec![
                "1000110".parse().unwrap(),
                "0100101".parse().unwrap(),
                "0010011".parse().unwrap(),
                "0001111".parse().unwrap(),
            ],
            7,
        );
        LinearCode::from_generator(g).unwrap()
    }

    #[test]
    fn wt_a_counts_failing_checks() {
        let code = hamming_7_4();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let sample = sample_dual_sets(&code, 0, 7, 1, 10_000, &mut rng).unwrap();
        let set = sample.duals.set_b.clone();

        // Codewords pass every dual check.
        for _ in 0..5 {
            let cw = code.encode(&BitVector::random(4, &mut rng));
            assert_eq!(wt_a(&cw, &set), 0);
        }
        assert_eq!(wt_a(&BitVector::random(7, &mut rng), &[]), 0);

        // Single error at position i fails exactly the checks with a one there.
        let cw = code.encode(&BitVector::random(4, &mut rng));
        for i in 0..7 {
            let mut w = cw.clone();
            w.flip(i);
            let expected = set.iter().filter(|v| v.get(i)).count();
            assert_eq!(wt_a(&w, &set), expected);
        }
    }

    #[test]
    fn wt_b_adjustment_folds_the_count() {
        // Pure counting semantics, exercised with synthetic check vectors.
        let set: Vec<BitVector> = (0..10).map(|i| BitVector::unit(10, i)).collect();
        let all_ones: BitVector = "1111111111".parse().unwrap();
        assert_eq!(wt_b_adjusted(&all_ones, &set), 0, "s = |B| folds to zero");
        let first_seven: BitVector = "1111111000".parse().unwrap();
        assert_eq!(
            wt_b_adjusted(&first_seven, &set),
            3,
            "s = 7 of 10 folds to 3"
        );
        let zero = BitVector::zeros(10);
        assert_eq!(wt_b_adjusted(&zero, &set), 0);
        // Tie: s = |B|/2 exactly; both branches coincide at the midpoint.
        let set4: Vec<BitVector> = (0..4).map(|i| BitVector::unit(4, i)).collect();
        let half: BitVector = "1100".parse().unwrap();
        assert_eq!(wt_b_adjusted(&half, &set4), 2);
    }

    #[test]
    fn wt_total_is_invariant_under_codeword_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let code = LinearCode::random_systematic(32, 16, &mut rng).unwrap();
        let sample = sample_dual_sets(&code, 30, 30, 2, 100_000, &mut rng).unwrap();
        for _ in 0..50 {
            let c = code.encode(&BitVector::random(16, &mut rng));
            let f = BitVector::random(32, &mut rng);
            let mut w = c.clone();
            w ^= &f;
            assert_eq!(wt_total(&w, &sample.duals), wt_total(&f, &sample.duals));
        }
    }

    #[test]
    fn incremental_profile_matches_naive_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let code = LinearCode::random_systematic(32, 16, &mut rng).unwrap();
        let sample = sample_dual_sets(&code, 40, 40, 2, 200_000, &mut rng).unwrap();
        for _ in 0..50 {
            let w = BitVector::random(32, &mut rng);
            let fast = wt_profile(&w, &sample.duals);
            let mut naive = Vec::with_capacity(32);
            for i in 0..32 {
                let mut flipped = w.clone();
                flipped.flip(i);
                naive.push(wt_total(&flipped, &sample.duals));
            }
            assert_eq!(fast.values, naive);
            assert_eq!(fast.min_value, *naive.iter().min().unwrap());
            assert_eq!(fast.max_value, *naive.iter().max().unwrap());
            assert_eq!(
                fast.argmin_index,
                naive.iter().position(|&v| v == fast.min_value).unwrap()
            );
        }
    }

    #[test]
    fn single_error_zeroes_the_profile_at_the_error_position() {
        let code = hamming_7_4();
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let sample = sample_dual_sets(&code, 0, 7, 1, 10_000, &mut rng).unwrap();
        for j in 0..7 {
            let cw = code.encode(&BitVector::random(4, &mut rng));
            let mut w = cw.clone();
            w.flip(j);
            let profile = wt_profile(&w, &sample.duals);
            assert_eq!(
                profile.values[j], 0,
                "flipping the error back lands on a codeword"
            );
            assert_eq!(profile.min_value, 0);
        }
    }

    #[test]
    fn empty_dual_sets_give_a_flat_zero_profile() {
        let duals = DualSet {
            n: 9,
            set_a: vec![],
            set_b: vec![],
            d_a: 4,
            d_b: 5,
            design_tau: 1,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let profile = wt_profile(&BitVector::random(9, &mut rng), &duals);
        assert_eq!(profile.values, vec![0; 9]);
        assert_eq!(profile.max_value, 0);
    }

    #[test]
    fn error_positions_score_lower_on_average() {
        // Statistical separation: over many (codeword, error) pairs the
        // smallest profile value among true error positions sits below the
        // smallest among correct positions, on average. This is what makes
        // argmin flipping work at all.
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        let code = LinearCode::random_systematic(32, 16, &mut rng).unwrap();
        let sample =
            sample_dual_sets_with_thresholds(&code, 2500, 2500, 13, 19, 2, 5_000_000, &mut rng)
                .unwrap();
        assert!(
            sample.duals.total() >= 4000,
            "dual weight classes at n=32 are large enough for this request, got {}",
            sample.duals.total()
        );
        for tau in 1..=3usize {
            let mut sum_err = 0.0;
            let mut sum_cor = 0.0;
            let trials = 200;
            for _ in 0..trials {
                let c = code.encode(&BitVector::random(16, &mut rng));
                let mut w = c.clone();
                let positions = index_sample(&mut rng, 32, tau);
                for p in positions.iter() {
                    w.flip(p);
                }
                let err: Vec<bool> = {
                    let mut mask = vec![false; 32];
                    for p in positions.iter() {
                        mask[p] = true;
                    }
                    mask
                };
                let profile = wt_profile(&w, &sample.duals);
                let min_err = (0..32)
                    .filter(|&i| err[i])
                    .map(|i| profile.values[i])
                    .min()
                    .unwrap();
                let min_cor = (0..32)
                    .filter(|&i| !err[i])
                    .map(|i| profile.values[i])
                    .min()
                    .unwrap();
                sum_err += min_err as f64;
                sum_cor += min_cor as f64;
            }
            let mean_err = sum_err / trials as f64;
            let mean_cor = sum_cor / trials as f64;
            assert!(
                mean_err < mean_cor,
                "tau={tau}: mean min over error positions {mean_err} !< mean over correct positions {mean_cor}"
            );
        }
    }
}

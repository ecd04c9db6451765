//! Analytical performance model for the flip decoders.
//!
//! Given a description of which dual-weight classes a decoder uses (`d_i`
//! with multiplicity `cw_i`), the model builds the distribution of the
//! intrinsic-information total `WT(τ)` as a convolution of independent
//! binomials — class `i` contributes `Binomial(cw_i, W(d_i, τ))` — and from
//! it the probability that one decoding step flips a true error position:
//!
//! ```text
//! P_flip(τ) = Pr(WT(τ+1) > WT(τ−1)) = Σ_k Pr(WT(τ+1) = k) · Pr(WT(τ−1) < k)
//! ```
//!
//! Chaining conditional step successes gives `S(0) = 1`,
//! `S(τ) = P_flip(τ) · S(τ−1)`, and the word error rate over a BSC follows
//! by weighting each error weight with its binomial channel probability.
//!
//! The model is an approximation by construction: it treats `WT(τ+1)` and
//! `WT(τ−1)` as independent draws although the decoder evaluates both on
//! the same dual set, and it assumes every iteration faces a "fresh" error
//! pattern. Classes heavier than `n/2` are mapped through the complement
//! identity (`p_eff = W(n−d, τ)`, exact for either parity of τ), mirroring
//! the runtime fold of the high-weight count.

use crate::dual::DualSet;
use crate::error::{Error, Result};
use crate::reliability::odd_overlap_prob;
use crate::scalar::ProbScalar;

/// Which dual-weight classes a decoder draws on: distinct weights `d_i`
/// with multiplicities `cw_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassProfile {
    n: usize,
    classes: Vec<(usize, usize)>,
}

impl WeightClassProfile {
    /// Builds a profile from `(weight, count)` pairs, validating that the
    /// weights are distinct, in `1..=n`, and the counts positive. Classes
    /// are kept sorted by weight.
    pub fn new(n: usize, mut classes: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("block length must be positive".into()));
        }
        classes.sort_unstable();
        for pair in classes.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Invalid(format!(
                    "duplicate weight class {}",
                    pair[0].0
                )));
            }
        }
        for &(d, cw) in &classes {
            if d == 0 || d > n {
                return Err(Error::Invalid(format!("class weight {d} outside 1..={n}")));
            }
            if cw == 0 {
                return Err(Error::Invalid(format!(
                    "class at weight {d} has zero members"
                )));
            }
        }
        Ok(WeightClassProfile { n, classes })
    }

    /// Histogram of the weights actually present in a sampled dual set.
    #[must_use]
    pub fn from_dual_set(duals: &DualSet) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for v in duals.set_a.iter().chain(duals.set_b.iter()) {
            *counts.entry(v.weight()).or_insert(0usize) += 1;
        }
        WeightClassProfile {
            n: duals.n,
            classes: counts.into_iter().collect(),
        }
    }

    /// Block length.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// The `(weight, count)` classes, sorted by weight.
    #[must_use]
    pub fn classes(&self) -> &[(usize, usize)] {
        &self.classes
    }

    /// Total number of checks across all classes.
    #[must_use]
    pub fn total_checks(&self) -> usize {
        self.classes.iter().map(|&(_, cw)| cw).sum()
    }

    /// Effective per-check failure probability for a class at error weight
    /// `tau`: `W(d, τ)`, with weights above `n/2` folded through the
    /// complement identity to `W(n−d, τ)`.
    fn class_prob<T: ProbScalar>(&self, d: usize, tau: usize) -> T {
        if 2 * d > self.n {
            odd_overlap_prob(self.n, self.n - d, tau)
        } else {
            odd_overlap_prob(self.n, d, tau)
        }
    }
}

/// The pmf of the intrinsic-information total at a given error weight.
#[derive(Debug, Clone, PartialEq)]
pub struct WtDistribution<T> {
    /// Error weight the distribution was computed for.
    pub tau: usize,
    /// `pmf[k] = Pr(WT(tau) = k)`, `k = 0 ..= total checks`.
    pub pmf: Vec<T>,
}

/// Distribution of `WT(τ)` as the convolution over classes of
/// `Binomial(cw_i, p_i(τ))`.
///
/// # Panics
///
/// Panics if `tau > profile.n()` (error weight beyond the block length).
#[must_use]
pub fn wt_pmf<T: ProbScalar>(profile: &WeightClassProfile, tau: usize) -> WtDistribution<T> {
    let mut pmf: Vec<T> = vec![T::one()];
    for &(d, cw) in profile.classes() {
        let p: T = profile.class_prob(d, tau);
        let class_pmf: Vec<T> = (0..=cw)
            .map(|j| T::binomial_pmf(cw as u64, j as u64, &p))
            .collect();
        let mut next = vec![T::zero(); pmf.len() + cw];
        for (a, pa) in pmf.iter().enumerate() {
            for (b, pb) in class_pmf.iter().enumerate() {
                next[a + b] = next[a + b].clone() + pa.clone() * pb.clone();
            }
        }
        pmf = next;
    }
    WtDistribution { tau, pmf }
}

/// `Pr(hi > lo)` for two independent integer-valued distributions.
#[must_use]
pub fn success_between<T: ProbScalar>(hi: &WtDistribution<T>, lo: &WtDistribution<T>) -> T {
    // cdf_lo[k] = Pr(lo <= k); Pr(lo < k) = cdf_lo[k-1].
    let mut cdf_lo = Vec::with_capacity(lo.pmf.len());
    let mut acc = T::zero();
    for p in &lo.pmf {
        acc = acc + p.clone();
        cdf_lo.push(acc.clone());
    }
    let mut total = T::zero();
    for (k, p_hi) in hi.pmf.iter().enumerate().skip(1) {
        let below = if k - 1 < cdf_lo.len() {
            cdf_lo[k - 1].clone()
        } else {
            cdf_lo.last().cloned().unwrap_or_else(T::zero)
        };
        total = total + p_hi.clone() * below;
    }
    total
}

/// Probability that one decoding step at error weight `tau` flips a true
/// error position: `Pr(WT(τ+1) > WT(τ−1))` with the two totals treated as
/// independent.
///
/// Fails when `tau = 0` (no error to flip) or `tau + 1` exceeds the block
/// length (the post-flip weight would be out of range).
pub fn flip_success_prob<T: ProbScalar>(profile: &WeightClassProfile, tau: usize) -> Result<T> {
    if tau == 0 {
        return Err(Error::Config(
            "flip success is undefined at error weight 0".into(),
        ));
    }
    if tau + 1 > profile.n() {
        return Err(Error::Config(format!(
            "error weight {tau} leaves no room for a worsening flip at block length {}",
            profile.n()
        )));
    }
    let hi = wt_pmf::<T>(profile, tau + 1);
    let lo = wt_pmf::<T>(profile, tau - 1);
    Ok(success_between(&hi, &lo))
}

/// Chained success probabilities `S(0 ..= tau_max)`:
/// `S(0) = 1`, `S(τ) = P_flip(τ) · S(τ−1)`.
///
/// `S(n)` (an all-error word) is defined as zero — the model cannot evaluate
/// a worsening flip there, and its channel weight `p^n` is negligible.
pub fn success_recursion<T: ProbScalar>(
    profile: &WeightClassProfile,
    tau_max: usize,
) -> Result<Vec<T>> {
    if tau_max > profile.n() {
        return Err(Error::Config(format!(
            "tau_max {tau_max} exceeds block length {}",
            profile.n()
        )));
    }
    let mut s = Vec::with_capacity(tau_max + 1);
    s.push(T::one());
    for tau in 1..=tau_max {
        if tau + 1 > profile.n() {
            s.push(T::zero());
            continue;
        }
        let step: T = flip_success_prob(profile, tau)?;
        let prev = s[tau - 1].clone();
        s.push(step * prev);
    }
    Ok(s)
}

/// Compensated (Kahan) accumulator for long probability sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    /// Adds one term, tracking the rounding remainder.
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    /// The compensated total.
    #[must_use]
    pub fn total(&self) -> f64 {
        self.sum
    }
}

/// Word error rate over a BSC from a caller-supplied success curve:
/// `1 − Σ_τ C(n,τ) p^τ (1−p)^{n−τ} · S(τ)`.
///
/// `include_error_free` controls whether the `τ = 0` term participates.
/// Counting it (the default) treats an error-free word as a success; the
/// alternative reading sums from `τ = 1` and is exposed for comparison only,
/// since it scores clean receptions as failures.
pub fn wer_bsc_from_success(
    n: usize,
    p: f64,
    success: &[f64],
    include_error_free: bool,
) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::Config(format!(
            "BSC crossover probability must lie in (0, 0.5), got {p}"
        )));
    }
    if success.len() != n + 1 {
        return Err(Error::Config(format!(
            "success curve has {} entries, expected n + 1 = {}",
            success.len(),
            n + 1
        )));
    }
    let mut acc = KahanSum::default();
    let start = if include_error_free { 0 } else { 1 };
    for (tau, s) in success.iter().enumerate().skip(start) {
        let channel = f64::binomial_pmf(n as u64, tau as u64, &p);
        acc.add(channel * s);
    }
    Ok((1.0 - acc.total()).clamp(0.0, 1.0))
}

/// Analytical word error rate of the flip decoder over a BSC: success
/// recursion up to `τ = n`, channel-weighted. The error-free term counts as
/// a success.
pub fn wer_bsc(profile: &WeightClassProfile, p: f64) -> Result<f64> {
    let s: Vec<f64> = success_recursion(profile, profile.n())?;
    wer_bsc_from_success(profile.n(), p, &s, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::dual::sample_dual_sets;
    use crate::ExactProb;
    use num_traits::{One, Zero};
    use rand::seq::index::sample as index_sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exact(n: u64, d: u64) -> ExactProb {
        ExactProb::new(n.into(), d.into())
    }

    #[test]
    fn profile_validation_rejects_malformed_classes() {
        assert!(WeightClassProfile::new(10, vec![(3, 2), (3, 1)]).is_err());
        assert!(WeightClassProfile::new(10, vec![(0, 2)]).is_err());
        assert!(WeightClassProfile::new(10, vec![(11, 2)]).is_err());
        assert!(WeightClassProfile::new(10, vec![(4, 0)]).is_err());
        assert!(WeightClassProfile::new(0, vec![]).is_err());
        let ok = WeightClassProfile::new(10, vec![(7, 1), (3, 2)]).unwrap();
        assert_eq!(ok.classes(), &[(3, 2), (7, 1)]);
        assert_eq!(ok.total_checks(), 3);
    }

    #[test]
    fn single_check_distribution_is_bernoulli() {
        let profile = WeightClassProfile::new(7, vec![(3, 1)]).unwrap();
        let dist = wt_pmf::<ExactProb>(&profile, 2);
        let w = exact(4, 7); // W(3, 2) at n = 7
        assert_eq!(dist.pmf.len(), 2);
        assert_eq!(dist.pmf[0], ExactProb::one() - w.clone());
        assert_eq!(dist.pmf[1], w);
    }

    #[test]
    fn zero_error_weight_gives_a_point_mass_at_zero() {
        let profile = WeightClassProfile::new(12, vec![(3, 4), (5, 2), (9, 3)]).unwrap();
        let dist = wt_pmf::<ExactProb>(&profile, 0);
        assert_eq!(dist.pmf.len(), 10);
        assert!(dist.pmf[0].is_one());
        assert!(dist.pmf[1..].iter().all(|p| p.is_zero()));
    }

    #[test]
    fn two_check_distribution_matches_hand_arithmetic() {
        // Two weight-3 checks at n = 7, tau = 2: p = 4/7.
        let profile = WeightClassProfile::new(7, vec![(3, 2)]).unwrap();
        let dist = wt_pmf::<ExactProb>(&profile, 2);
        let p = exact(4, 7);
        let q = ExactProb::one() - p.clone();
        assert_eq!(dist.pmf[0], q.clone() * q.clone());
        assert_eq!(dist.pmf[1], exact(2, 1) * p.clone() * q);
        assert_eq!(dist.pmf[2], p.clone() * p);
    }

    #[test]
    fn convolution_equals_composition_enumeration() {
        // Exhaustive oracle: sum over all per-class counts (k1, k2, k3).
        let profile = WeightClassProfile::new(12, vec![(3, 4), (5, 3), (9, 2)]).unwrap();
        for tau in [1usize, 3, 6] {
            let dist = wt_pmf::<ExactProb>(&profile, tau);
            let probs: Vec<(usize, ExactProb)> = profile
                .classes()
                .iter()
                .map(|&(d, cw)| {
                    let p: ExactProb = if 2 * d > 12 {
                        crate::reliability::odd_overlap_prob(12, 12 - d, tau)
                    } else {
                        crate::reliability::odd_overlap_prob(12, d, tau)
                    };
                    (cw, p)
                })
                .collect();
            let mut oracle = vec![ExactProb::zero(); dist.pmf.len()];
            for k1 in 0..=probs[0].0 {
                for k2 in 0..=probs[1].0 {
                    for k3 in 0..=probs[2].0 {
                        let term =
                            ExactProb::binomial_pmf(probs[0].0 as u64, k1 as u64, &probs[0].1)
                                * ExactProb::binomial_pmf(
                                    probs[1].0 as u64,
                                    k2 as u64,
                                    &probs[1].1,
                                )
                                * ExactProb::binomial_pmf(
                                    probs[2].0 as u64,
                                    k3 as u64,
                                    &probs[2].1,
                                );
                        oracle[k1 + k2 + k3] = oracle[k1 + k2 + k3].clone() + term;
                    }
                }
            }
            assert_eq!(dist.pmf, oracle, "tau={tau}");
        }
    }

    #[test]
    fn distributions_are_normalized() {
        // Exact backend: total is exactly one.
        let profile = WeightClassProfile::new(12, vec![(3, 4), (5, 3), (9, 2)]).unwrap();
        for tau in 0..=12 {
            let dist = wt_pmf::<ExactProb>(&profile, tau);
            let total = dist
                .pmf
                .iter()
                .fold(ExactProb::zero(), |a, b| a + b.clone());
            assert!(total.is_one(), "tau={tau}");
        }
        // Float backend at scale, with a folded high-weight class.
        let profile = WeightClassProfile::new(64, vec![(13, 1200), (21, 800), (43, 1000)]).unwrap();
        for tau in [0usize, 1, 4, 9] {
            let dist = wt_pmf::<f64>(&profile, tau);
            let total: f64 = dist.pmf.iter().sum();
            assert!((total - 1.0).abs() < 1e-9, "tau={tau}: total {total}");
            assert!(dist.pmf.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn folded_classes_match_their_complement() {
        // A class at weight d > n/2 must behave exactly like one at n - d.
        let heavy = WeightClassProfile::new(16, vec![(13, 5)]).unwrap();
        let light = WeightClassProfile::new(16, vec![(3, 5)]).unwrap();
        for tau in 0..=16 {
            assert_eq!(
                wt_pmf::<ExactProb>(&heavy, tau).pmf,
                wt_pmf::<ExactProb>(&light, tau).pmf,
                "tau={tau}"
            );
        }
    }

    #[test]
    fn success_between_handles_point_masses_and_empty_profiles() {
        // Point masses: hi at the top, lo at zero -> certain success.
        let hi = WtDistribution {
            tau: 3,
            pmf: vec![0.0, 0.0, 1.0],
        };
        let lo = WtDistribution {
            tau: 1,
            pmf: vec![1.0, 0.0, 0.0],
        };
        assert!((success_between(&hi, &lo) - 1.0).abs() < 1e-15);
        // Identical point masses at zero (empty profile): strict > impossible.
        let empty = WeightClassProfile::new(8, vec![]).unwrap();
        let p: f64 = flip_success_prob(&empty, 1).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn flip_success_matches_model_monte_carlo() {
        // Resampling the check supports fresh every trial makes the
        // per-class failing counts exactly Binomial(cw, W(d_eff, tau)) and
        // the two totals exactly independent — the Monte Carlo below is an
        // unbiased estimate of the same quantity the formula computes.
        // Heavy classes are drawn at the complement weight: the complement
        // of a uniform weight-d vector is a uniform weight-(n-d) vector,
        // and its odd-overlap event is precisely the folded failure event.
        let n = 32;
        let profile = WeightClassProfile::new(n, vec![(9, 12), (11, 10), (25, 8)]).unwrap();
        for tau in [1usize, 2] {
            let analytic: f64 = flip_success_prob(&profile, tau).unwrap();

            let mut rng = ChaCha8Rng::seed_from_u64(101 + tau as u64);
            let trials = 100_000;
            let mut hits = 0u64;
            let count_fails = |err: &[bool], rng: &mut ChaCha8Rng| -> usize {
                let mut total = 0;
                for &(d, cw) in profile.classes() {
                    let d_eff = if 2 * d > n { n - d } else { d };
                    for _ in 0..cw {
                        let overlap = index_sample(rng, n, d_eff)
                            .iter()
                            .filter(|&i| err[i])
                            .count();
                        if overlap % 2 == 1 {
                            total += 1;
                        }
                    }
                }
                total
            };
            for _ in 0..trials {
                let mut err_hi = vec![false; n];
                for i in index_sample(&mut rng, n, tau + 1) {
                    err_hi[i] = true;
                }
                let mut err_lo = vec![false; n];
                for i in index_sample(&mut rng, n, tau - 1) {
                    err_lo[i] = true;
                }
                if count_fails(&err_hi, &mut rng) > count_fails(&err_lo, &mut rng) {
                    hits += 1;
                }
            }
            let mc = hits as f64 / trials as f64;
            let sigma = (analytic * (1.0 - analytic) / trials as f64).sqrt();
            assert!(
                (mc - analytic).abs() < 4.0 * sigma.max(1e-4),
                "tau={tau}: MC {mc} vs analytic {analytic} (sigma {sigma})"
            );
        }
    }

    #[test]
    fn success_recursion_chains_flip_probabilities() {
        let profile = WeightClassProfile::new(16, vec![(3, 6), (5, 4)]).unwrap();
        let s: Vec<f64> = success_recursion(&profile, 6).unwrap();
        assert_eq!(s.len(), 7);
        assert_eq!(s[0], 1.0);
        let f1: f64 = flip_success_prob(&profile, 1).unwrap();
        let f2: f64 = flip_success_prob(&profile, 2).unwrap();
        assert!((s[1] - f1).abs() < 1e-15);
        assert!((s[2] - f2 * f1).abs() < 1e-15);
        for tau in 1..s.len() {
            assert!(s[tau] <= s[tau - 1] + 1e-15, "S must be nonincreasing");
            assert!((0.0..=1.0).contains(&s[tau]));
        }
    }

    #[test]
    fn wer_closed_forms_from_injected_success_curves() {
        let n = 20;
        // Perfect decoder: every weight succeeds, WER = 0.
        let perfect = vec![1.0; n + 1];
        let wer = wer_bsc_from_success(n, 0.03, &perfect, true).unwrap();
        assert!(wer.abs() < 1e-12);
        // Decoder that only accepts clean words: WER = 1 - (1-p)^n.
        let mut clean_only = vec![0.0; n + 1];
        clean_only[0] = 1.0;
        let p = 0.03;
        let wer = wer_bsc_from_success(n, p, &clean_only, true).unwrap();
        assert!((wer - (1.0 - (1.0 - p).powi(n as i32))).abs() < 1e-12);
        // The literal tail (tau >= 1 only) scores clean words as failures.
        let lit = wer_bsc_from_success(n, p, &perfect, false).unwrap();
        assert!(
            (lit - (1.0 - p).powi(n as i32) - wer_bsc_from_success(n, p, &perfect, true).unwrap())
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn wer_is_nondecreasing_in_p_for_a_sampled_profile() {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        let code = LinearCode::random_systematic(32, 16, &mut rng).unwrap();
        let sample = sample_dual_sets(&code, 100, 100, 2, 1_000_000, &mut rng).unwrap();
        let profile = WeightClassProfile::from_dual_set(&sample.duals);
        assert_eq!(profile.total_checks(), 200);
        let grid = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1];
        let wers: Vec<f64> = grid
            .iter()
            .map(|&p| wer_bsc(&profile, p).unwrap())
            .collect();
        for pair in wers.windows(2) {
            assert!(pair[0] <= pair[1] + 1e-12, "WER not monotone: {wers:?}");
        }
        assert!(wers[0] > 0.0 && wers[wers.len() - 1] < 1.0);
    }

    #[test]
    fn out_of_range_parameters_are_rejected() {
        let profile = WeightClassProfile::new(8, vec![(3, 2)]).unwrap();
        assert!(flip_success_prob::<f64>(&profile, 0).is_err());
        assert!(flip_success_prob::<f64>(&profile, 8).is_err());
        assert!(success_recursion::<f64>(&profile, 9).is_err());
        assert!(wer_bsc(&profile, 0.0).is_err());
        assert!(wer_bsc(&profile, 0.5).is_err());
        assert!(wer_bsc_from_success(8, 0.1, &[1.0; 5], true).is_err());
    }
}

//! Numeric backends for probability computations.
//!
//! Overlap probabilities and the distributions built from them are sums of
//! products of binomial-coefficient ratios. Those sums are implemented once,
//! generically, over [`ProbScalar`]; the two instantiations differ only in
//! how a ratio of binomial coefficients is evaluated:
//!
//! * `f64` goes through a cached log-factorial table, which stays finite and
//!   accurate for block lengths far beyond what exact integer arithmetic
//!   would tolerate in a hot loop;
//! * [`ExactProb`](crate::ExactProb) (arbitrary-precision rationals) is
//!   exact and backs every identity check in the test suite.

use std::ops::{Add, Div, Mul, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Log-factorials ln(0!), ln(1!), ... are precomputed once up to this index;
/// larger arguments fall back to direct summation from the table's end.
const LN_FACTORIAL_TABLE_SIZE: usize = 4097;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_TABLE_SIZE);
        t.push(0.0);
        for i in 1..LN_FACTORIAL_TABLE_SIZE {
            t.push(t[i - 1] + (i as f64).ln());
        }
        t
    })
}

/// ln(n!) from the cached table, extended by summation when out of range.
#[must_use]
pub fn ln_factorial(n: u64) -> f64 {
    let table = ln_factorial_table();
    if (n as usize) < table.len() {
        return table[n as usize];
    }
    let mut acc = table[table.len() - 1];
    for i in table.len() as u64..=n {
        acc += (i as f64).ln();
    }
    acc
}

/// ln C(n, k); negative infinity when the coefficient is zero.
#[must_use]
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Exact C(n, k) as a big integer (zero when `k > n`).
#[must_use]
pub fn exact_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Scalar type usable for probability arithmetic.
///
/// The arithmetic bounds cover everything the distribution pipeline needs;
/// [`binomial_ratio`](ProbScalar::binomial_ratio) is the one place where an
/// implementation chooses its numeric strategy.
pub trait ProbScalar:
    Clone
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// `C(n1, k1) * C(n2, k2) / C(n3, k3)` in this scalar's arithmetic.
    ///
    /// `C(a, b)` is zero whenever `b > a`, so the result is zero when either
    /// numerator coefficient vanishes.
    ///
    /// # Panics
    ///
    /// Panics if the denominator coefficient is zero.
    fn binomial_ratio(n1: u64, k1: u64, n2: u64, k2: u64, n3: u64, k3: u64) -> Self;

    /// `C(n, k)` as a scalar (exact for rationals, rounded for floats).
    fn binomial(n: u64, k: u64) -> Self;

    /// `Pr(Binomial(trials, p) = successes)`.
    ///
    /// The float backend evaluates each term in the log domain
    /// (`exp(ln C + j·ln p + (c−j)·ln(1−p))`): with thousands of trials the
    /// straightforward recurrence starts from `(1−p)^trials`, which
    /// underflows to an exact zero and poisons everything after it.
    fn binomial_pmf(trials: u64, successes: u64, p: &Self) -> Self;

    /// Conversion from a small integer ratio.
    fn from_ratio(num: u64, den: u64) -> Self;

    /// Closest `f64`, used for reporting.
    fn to_f64(&self) -> f64;
}

impl ProbScalar for f64 {
    fn binomial_ratio(n1: u64, k1: u64, n2: u64, k2: u64, n3: u64, k3: u64) -> Self {
        assert!(k3 <= n3, "zero denominator C({n3}, {k3})");
        if k1 > n1 || k2 > n2 {
            return 0.0;
        }
        (ln_binomial(n1, k1) + ln_binomial(n2, k2) - ln_binomial(n3, k3)).exp()
    }

    fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            0.0
        } else {
            ln_binomial(n, k).exp().round()
        }
    }

    fn binomial_pmf(trials: u64, successes: u64, p: &Self) -> Self {
        if successes > trials {
            return 0.0;
        }
        if *p <= 0.0 {
            return if successes == 0 { 1.0 } else { 0.0 };
        }
        if *p >= 1.0 {
            return if successes == trials { 1.0 } else { 0.0 };
        }
        let j = successes as f64;
        let rest = (trials - successes) as f64;
        (ln_binomial(trials, successes) + j * p.ln() + rest * (1.0 - p).ln()).exp()
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl ProbScalar for BigRational {
    fn binomial_ratio(n1: u64, k1: u64, n2: u64, k2: u64, n3: u64, k3: u64) -> Self {
        let den = exact_binomial(n3, k3);
        assert!(!den.is_zero(), "zero denominator C({n3}, {k3})");
        if k1 > n1 || k2 > n2 {
            return BigRational::zero();
        }
        BigRational::new(exact_binomial(n1, k1) * exact_binomial(n2, k2), den)
    }

    fn binomial(n: u64, k: u64) -> Self {
        BigRational::from_integer(exact_binomial(n, k))
    }

    fn binomial_pmf(trials: u64, successes: u64, p: &Self) -> Self {
        if successes > trials {
            return BigRational::zero();
        }
        let q = BigRational::one() - p.clone();
        let mut out = BigRational::from_integer(exact_binomial(trials, successes));
        for _ in 0..successes {
            out *= p.clone();
        }
        for _ in 0..(trials - successes) {
            out *= q.clone();
        }
        out
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

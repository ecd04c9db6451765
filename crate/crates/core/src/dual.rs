//! Sampling of the decoding-vector sets A and B from the dual code.
//!
//! A decoder built on dual codewords wants two populations: a set `A` of
//! low-weight duals (weight strictly below `d_a`) and a set `B` of
//! high-weight duals (weight strictly above `d_b`). Weights between the two
//! thresholds sit in a dead band where the odd-overlap probability hugs 1/2
//! and the vector carries almost no information about any single position.
//!
//! The thresholds come from the feasibility bound
//! `(N - 2τ + 3√τ + 1)/(√τ + 1)` for a design-time error weight `τ`:
//! `d_a = floor(bound)` and `d_b = N - d_a`. Sampling is rejection sampling
//! of uniform random vectors from the dual row space — unbiased within each
//! admissible weight class, deterministic under a fixed RNG.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use rand::Rng;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Upper bound on the low-weight threshold `d_a` for block length `n` and
/// design error weight `tau`: `(n - 2τ + 3√τ + 1)/(√τ + 1)`.
///
/// At `tau = 0` the expression degenerates to `n + 1`, i.e. no constraint.
#[must_use]
pub fn threshold_bound(n: usize, tau: usize) -> f64 {
    let sqrt_tau = (tau as f64).sqrt();
    (n as f64 - 2.0 * tau as f64 + 3.0 * sqrt_tau + 1.0) / (sqrt_tau + 1.0)
}

/// Default design error weight: half the error-correction radius when the
/// minimum distance is known, otherwise 2.
#[must_use]
pub fn default_design_tau(code: &LinearCode) -> usize {
    match code.min_distance() {
        Some(d) => (d.saturating_sub(1)) / 2,
        None => 2,
    }
}

/// Default rejection-sampling budget: 200 draws per requested vector.
#[must_use]
pub fn default_max_attempts(count_a: usize, count_b: usize) -> usize {
    200 * (count_a + count_b)
}

/// The sampled decoding-vector sets with their weight thresholds.
///
/// Invariants (maintained by the samplers, audited by [`verify_dual_set`]):
/// every vector lies in the dual code, `set_a` members have weight `< d_a`,
/// `set_b` members have weight `> d_b`, no duplicates across `set_a ∪ set_b`,
/// and the all-zero vector never appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSet {
    /// Block length of the underlying code.
    pub n: usize,
    /// Low-weight decoding vectors (weight strictly below `d_a`).
    pub set_a: Vec<BitVector>,
    /// High-weight decoding vectors (weight strictly above `d_b`).
    pub set_b: Vec<BitVector>,
    /// Exclusive upper weight threshold for `set_a`.
    pub d_a: usize,
    /// Exclusive lower weight threshold for `set_b`.
    pub d_b: usize,
    /// Design-time error weight the thresholds were derived for.
    pub design_tau: usize,
}

impl DualSet {
    /// Total number of decoding vectors across both sets.
    #[must_use]
    pub fn total(&self) -> usize {
        self.set_a.len() + self.set_b.len()
    }

    // -----------------------------------------------------------------------
    // File format: header `n |A| |B| d_a d_b design_tau`, then the |A| rows
    // of set A and the |B| rows of set B as 0/1 strings.
    // -----------------------------------------------------------------------

    /// Serializes to the line-oriented text format.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {} {} {}\n",
            self.n,
            self.set_a.len(),
            self.set_b.len(),
            self.d_a,
            self.d_b,
            self.design_tau
        );
        for v in self.set_a.iter().chain(self.set_b.iter()) {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text format produced by [`to_text`](Self::to_text),
    /// validating every structural invariant except dual membership (which
    /// needs the code; see [`verify_dual_set`]).
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty file, expected dual-set header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(Error::parse(
                1,
                1,
                format!(
                    "header must be `n count_a count_b d_a d_b design_tau`, got {} fields",
                    fields.len()
                ),
            ));
        }
        let parse_field = |idx: usize, what: &str| -> Result<usize> {
            fields[idx]
                .parse()
                .map_err(|_| Error::parse(1, 1, format!("{what} is not an integer")))
        };
        let n = parse_field(0, "block length")?;
        let count_a = parse_field(1, "set-A count")?;
        let count_b = parse_field(2, "set-B count")?;
        let d_a = parse_field(3, "threshold d_a")?;
        let d_b = parse_field(4, "threshold d_b")?;
        let design_tau = parse_field(5, "design tau")?;
        if n == 0 {
            return Err(Error::Invalid("block length must be positive".into()));
        }

        let mut read_rows = |count: usize, which: &str| -> Result<Vec<BitVector>> {
            let mut rows = Vec::with_capacity(count);
            for _ in 0..count {
                let (idx, line) = lines
                    .next()
                    .ok_or_else(|| Error::parse(0, 1, format!("missing {which} row")))?;
                let line = line.trim_end_matches('\r');
                if line.len() != n {
                    return Err(Error::parse(
                        idx + 1,
                        line.len().min(n) + 1,
                        format!("{which} row has {} columns, expected {n}", line.len()),
                    ));
                }
                let v: BitVector = line.parse().map_err(|e| match e {
                    Error::Parse { col, msg, .. } => Error::parse(idx + 1, col, msg),
                    other => other,
                })?;
                rows.push(v);
            }
            Ok(rows)
        };
        let set_a = read_rows(count_a, "set-A")?;
        let set_b = read_rows(count_b, "set-B")?;
        if let Some((idx, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(
                idx + 1,
                1,
                format!("unexpected trailing content: {extra:?}"),
            ));
        }

        let duals = DualSet {
            n,
            set_a,
            set_b,
            d_a,
            d_b,
            design_tau,
        };
        duals.check_structure()?;
        Ok(duals)
    }

    /// Writes the text format to a file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Reads the text format from a file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        DualSet::from_text(&text)
    }

    /// Validates the code-independent invariants (weights, duplicates,
    /// nonzero vectors), returning the first violation as an error.
    fn check_structure(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for (which, v, ok) in self
            .set_a
            .iter()
            .map(|v| ("A", v, v.weight() < self.d_a))
            .chain(self.set_b.iter().map(|v| ("B", v, v.weight() > self.d_b)))
        {
            if v.is_zero() {
                return Err(Error::Invalid(format!(
                    "set {which} contains the all-zero vector"
                )));
            }
            if !ok {
                return Err(Error::Invalid(format!(
                    "set {which} vector {v} has weight {} outside its threshold (d_a={}, d_b={})",
                    v.weight(),
                    self.d_a,
                    self.d_b
                )));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::Invalid(format!("duplicate decoding vector {v}")));
            }
        }
        Ok(())
    }
}

/// Outcome of a sampling run: the sets plus bookkeeping for shortfall
/// reporting when rejection sampling ran out of attempts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSample {
    /// The sampled decoding-vector sets.
    pub duals: DualSet,
    /// How many set-A vectors were requested.
    pub requested_a: usize,
    /// How many set-B vectors were requested.
    pub requested_b: usize,
    /// Random draws consumed (including rejected ones).
    pub attempts_used: usize,
}

impl DualSample {
    /// Vectors missing from set A relative to the request.
    #[must_use]
    pub fn shortfall_a(&self) -> usize {
        self.requested_a - self.duals.set_a.len()
    }

    /// Vectors missing from set B relative to the request.
    #[must_use]
    pub fn shortfall_b(&self) -> usize {
        self.requested_b - self.duals.set_b.len()
    }

    /// True when both requests were met in full.
    #[must_use]
    pub fn is_complete(&self) -> bool {
        self.shortfall_a() == 0 && self.shortfall_b() == 0
    }
}

/// Samples decoding-vector sets with thresholds derived from the feasibility
/// bound: `d_a = floor(threshold_bound(n, design_tau))`, `d_b = n - d_a`.
///
/// Returns fewer vectors than requested (with the shortfall recorded in the
/// [`DualSample`]) when `max_attempts` draws are not enough; fails only if
/// not a single vector was found.
pub fn sample_dual_sets<R: Rng + ?Sized>(
    code: &LinearCode,
    count_a: usize,
    count_b: usize,
    design_tau: usize,
    max_attempts: usize,
    rng: &mut R,
) -> Result<DualSample> {
    let n = code.n();
    let d_a = threshold_bound(n, design_tau).floor() as usize;
    let d_b = n.saturating_sub(d_a);
    sample_dual_sets_with_thresholds(
        code,
        count_a,
        count_b,
        d_a,
        d_b,
        design_tau,
        max_attempts,
        rng,
    )
}

/// Samples decoding-vector sets with explicit weight thresholds: set A
/// accepts dual codewords of weight `< d_a`, set B accepts weight `> d_b`.
///
/// Draws uniform random vectors from the dual row space (random GF(2)
/// combinations of the parity-check rows) and keeps those that satisfy a
/// still-unfilled weight constraint and are not duplicates. A draw that
/// satisfies both constraints goes to set A first.
#[allow(clippy::too_many_arguments)]
pub fn sample_dual_sets_with_thresholds<R: Rng + ?Sized>(
    code: &LinearCode,
    count_a: usize,
    count_b: usize,
    d_a: usize,
    d_b: usize,
    design_tau: usize,
    max_attempts: usize,
    rng: &mut R,
) -> Result<DualSample> {
    if count_a + count_b == 0 {
        return Err(Error::Config("requested zero decoding vectors".into()));
    }
    let n = code.n();
    let h = code.parity_check();
    let m = h.rows();
    if m == 0 {
        return Err(Error::Config("dual code is trivial (n - k = 0)".into()));
    }

    let mut set_a = Vec::with_capacity(count_a);
    let mut set_b = Vec::with_capacity(count_b);
    let mut seen: HashSet<BitVector> = HashSet::new();
    let mut attempts_used = 0;

    while attempts_used < max_attempts && (set_a.len() < count_a || set_b.len() < count_b) {
        attempts_used += 1;
        let coeffs = BitVector::random(m, rng);
        if coeffs.is_zero() {
            continue;
        }
        let mut v = BitVector::zeros(n);
        for j in coeffs.ones() {
            v ^= h.row(j);
        }
        debug_assert!(!v.is_zero(), "parity-check rows are independent");
        let w = v.weight();
        if set_a.len() < count_a && w < d_a && !seen.contains(&v) {
            seen.insert(v.clone());
            set_a.push(v);
        } else if set_b.len() < count_b && w > d_b && !seen.contains(&v) {
            seen.insert(v.clone());
            set_b.push(v);
        }
    }

    if set_a.is_empty() && set_b.is_empty() {
        return Err(Error::Sampling(format!(
            "no dual codeword matched the weight constraints (wt < {d_a} or wt > {d_b}) \
             in {attempts_used} draws"
        )));
    }
    Ok(DualSample {
        duals: DualSet {
            n,
            set_a,
            set_b,
            d_a,
            d_b,
            design_tau,
        },
        requested_a: count_a,
        requested_b: count_b,
        attempts_used,
    })
}

/// Per-invariant audit of a [`DualSet`] against its code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualSetReport {
    /// Vectors that are not orthogonal to every generator row.
    pub orthogonality_failures: usize,
    /// Set-A vectors with weight `>= d_a`.
    pub weight_failures_a: usize,
    /// Set-B vectors with weight `<= d_b`.
    pub weight_failures_b: usize,
    /// All-zero vectors found in either set.
    pub zero_vectors: usize,
    /// Vectors appearing more than once across `set_a ∪ set_b` (each extra
    /// occurrence counts once).
    pub duplicate_count: usize,
    /// Whether the stored thresholds respect the feasibility bound for the
    /// stored design tau.
    pub threshold_consistent: bool,
}

impl DualSetReport {
    /// True when every audited invariant holds.
    #[must_use]
    pub fn is_valid(&self) -> bool {
        self.orthogonality_failures == 0
            && self.weight_failures_a == 0
            && self.weight_failures_b == 0
            && self.zero_vectors == 0
            && self.duplicate_count == 0
            && self.threshold_consistent
    }
}

impl fmt::Display for DualSetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "orthogonality failures: {}", self.orthogonality_failures)?;
        writeln!(f, "weight failures (A):    {}", self.weight_failures_a)?;
        writeln!(f, "weight failures (B):    {}", self.weight_failures_b)?;
        writeln!(f, "all-zero vectors:       {}", self.zero_vectors)?;
        writeln!(f, "duplicates:             {}", self.duplicate_count)?;
        writeln!(f, "thresholds consistent:  {}", self.threshold_consistent)?;
        write!(
            f,
            "verdict:                {}",
            if self.is_valid() { "PASS" } else { "FAIL" }
        )
    }
}

/// Audits every invariant of `duals` against `code` and returns the counts.
#[must_use]
pub fn verify_dual_set(code: &LinearCode, duals: &DualSet) -> DualSetReport {
    let mut report = DualSetReport {
        orthogonality_failures: 0,
        weight_failures_a: 0,
        weight_failures_b: 0,
        zero_vectors: 0,
        duplicate_count: 0,
        threshold_consistent: true,
    };
    let mut seen: HashSet<&BitVector> = HashSet::new();
    for v in duals.set_a.iter().chain(duals.set_b.iter()) {
        if v.is_zero() {
            report.zero_vectors += 1;
        }
        if !seen.insert(v) {
            report.duplicate_count += 1;
        }
        let in_dual = code.generator().row_iter().all(|g| !g.dot(v));
        if !in_dual {
            report.orthogonality_failures += 1;
        }
    }
    for a in &duals.set_a {
        if a.weight() >= duals.d_a {
            report.weight_failures_a += 1;
        }
    }
    for b in &duals.set_b {
        if b.weight() <= duals.d_b {
            report.weight_failures_b += 1;
        }
    }
    let bound = threshold_bound(duals.n, duals.design_tau);
    report.threshold_consistent =
        (duals.d_a as f64) <= bound + 1e-9 && (duals.d_b as f64) >= duals.n as f64 - bound - 1e-9;
    report
}

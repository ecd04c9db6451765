//! Binary linear block codes in systematic form.
//!
//! A [`LinearCode`] bundles a full-rank generator `G` (k x n) with a parity
//! check `H` ((n-k) x n) whose rows span the dual code. Random codes are
//! drawn directly in systematic form `G = [I | P]`, `H = [P^T | I]`; codes
//! loaded from other sources are validated instead of repaired.
//!
//! The on-disk format is line oriented: a header `n k`, then the `k` rows of
//! `G` as `0`/`1` strings, then optionally a blank line and the `n-k` rows of
//! `H`. When `H` is absent it is recomputed from the null space of `G`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};

/// Largest message dimension for which exhaustive codeword enumeration
/// (2^k codewords) is allowed.
pub const MAX_EXHAUSTIVE_K: usize = 24;

/// A binary linear block code with explicit generator and parity check.
#[derive(Clone)]
pub struct LinearCode {
    n: usize,
    k: usize,
    generator: BinaryMatrix,
    parity_check: BinaryMatrix,
    min_distance: OnceLock<Option<usize>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.generator == other.generator
            && self.parity_check == other.parity_check
    }
}

impl Eq for LinearCode {}

impl std::fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearCode(n={}, k={})", self.n, self.k)
    }
}

impl LinearCode {
    /// Draws a random systematic code: `G = [I | P]` with uniform `P`,
    /// `H = [P^T | I]`.
    ///
    /// Systematic generators always have full rank, so no resampling is
    /// needed. Fails if the dimensions do not satisfy `0 < k < n`.
    pub fn random_systematic<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Config(format!(
                "code dimensions must satisfy 0 < k < n, got n={n}, k={k}"
            )));
        }
        let p = BinaryMatrix::random(k, n - k, rng);
        let generator = BinaryMatrix::identity(k).hstack(&p);
        let parity_check = p.transpose().hstack(&BinaryMatrix::identity(n - k));
        Ok(LinearCode {
            n,
            k,
            generator,
            parity_check,
            min_distance: OnceLock::new(),
        })
    }

    /// Builds a code from a generator matrix alone; the parity check is the
    /// null-space basis of `G`.
    ///
    /// Fails if `G` is rank deficient or the dimensions are degenerate.
    pub fn from_generator(generator: BinaryMatrix) -> Result<Self> {
        let k = generator.rows();
        let n = generator.cols();
        if k == 0 || k >= n {
            return Err(Error::Config(format!(
                "code dimensions must satisfy 0 < k < n, got n={n}, k={k}"
            )));
        }
        if generator.rank() != k {
            return Err(Error::Invalid(format!(
                "generator has rank {} but {k} rows",
                generator.rank()
            )));
        }
        let parity_check = generator.null_space_basis();
        Ok(LinearCode {
            n,
            k,
            generator,
            parity_check,
            min_distance: OnceLock::new(),
        })
    }

    /// Builds a code from explicit generator and parity-check matrices,
    /// validating dimensions, ranks, and orthogonality.
    pub fn from_parts(generator: BinaryMatrix, parity_check: BinaryMatrix) -> Result<Self> {
        let k = generator.rows();
        let n = generator.cols();
        if k == 0 || k >= n {
            return Err(Error::Config(format!(
                "code dimensions must satisfy 0 < k < n, got n={n}, k={k}"
            )));
        }
        if parity_check.cols() != n || parity_check.rows() != n - k {
            return Err(Error::Invalid(format!(
                "parity check is {}x{}, expected {}x{n}",
                parity_check.rows(),
                parity_check.cols(),
                n - k
            )));
        }
        if generator.rank() != k {
            return Err(Error::Invalid(format!(
                "generator has rank {} but {k} rows",
                generator.rank()
            )));
        }
        if parity_check.rank() != n - k {
            return Err(Error::Invalid(format!(
                "parity check has rank {} but {} rows",
                parity_check.rank(),
                n - k
            )));
        }
        if !generator.is_orthogonal_to(&parity_check) {
            return Err(Error::Invalid("G and H are not orthogonal".into()));
        }
        Ok(LinearCode {
            n,
            k,
            generator,
            parity_check,
            min_distance: OnceLock::new(),
        })
    }

    /// Block length.
    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Message dimension.
    #[must_use]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Code rate `k / n`.
    #[must_use]
    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// Generator matrix (k x n).
    #[must_use]
    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    /// Parity-check matrix ((n-k) x n).
    #[must_use]
    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.parity_check
    }

    /// Encodes a `k`-bit message into an `n`-bit codeword.
    ///
    /// # Panics
    ///
    /// Panics if `message.len() != k`.
    #[must_use]
    pub fn encode(&self, message: &BitVector) -> BitVector {
        assert_eq!(
            message.len(),
            self.k,
            "message length {} != k {}",
            message.len(),
            self.k
        );
        let mut cw = BitVector::zeros(self.n);
        for j in message.ones() {
            cw ^= self.generator.row(j);
        }
        cw
    }

    /// Syndrome `H w` of an `n`-bit word; zero exactly on codewords.
    ///
    /// # Panics
    ///
    /// Panics if `word.len() != n`.
    #[must_use]
    pub fn syndrome(&self, word: &BitVector) -> BitVector {
        self.parity_check.mul_vec(word)
    }

    /// True when `word` lies in the code.
    ///
    /// # Panics
    ///
    /// Panics if `word.len() != n`.
    #[must_use]
    pub fn is_codeword(&self, word: &BitVector) -> bool {
        self.syndrome(word).is_zero()
    }

    /// Minimum distance by exhaustive enumeration of all `2^k - 1` nonzero
    /// codewords, walking messages in Gray-code order so each step is a
    /// single row XOR.
    ///
    /// Fails with a capability error when `k > MAX_EXHAUSTIVE_K`.
    pub fn brute_force_min_distance(&self) -> Result<usize> {
        if self.k > MAX_EXHAUSTIVE_K {
            return Err(Error::Capability(format!(
                "min-distance enumeration needs 2^{} codewords; limit is k <= {MAX_EXHAUSTIVE_K}",
                self.k
            )));
        }
        let mut cw = BitVector::zeros(self.n);
        let mut best = self.n + 1;
        for i in 1u64..(1u64 << self.k) {
            let changed = i.trailing_zeros() as usize;
            cw ^= self.generator.row(changed);
            best = best.min(cw.weight());
        }
        Ok(best)
    }

    /// Minimum distance, computed lazily and cached; `None` when `k` exceeds
    /// the exhaustive-enumeration limit.
    #[must_use]
    pub fn min_distance(&self) -> Option<usize> {
        *self.min_distance.get_or_init(|| {
            if self.k <= MAX_EXHAUSTIVE_K {
                Some(self.brute_force_min_distance().expect("k within limit"))
            } else {
                None
            }
        })
    }

    // -----------------------------------------------------------------------
    // File format
    // -----------------------------------------------------------------------

    /// Serializes to the line-oriented text format (always includes `H`).
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.k);
        for row in self.generator.row_iter() {
            let _ = writeln!(out, "{row}");
        }
        let _ = writeln!(out);
        for row in self.parity_check.row_iter() {
            let _ = writeln!(out, "{row}");
        }
        out
    }

    /// Parses the text format produced by [`to_text`](Self::to_text).
    ///
    /// The parity-check block is optional; when absent it is recomputed from
    /// the null space of `G`. All structural properties are validated.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty file, expected header `n k`"))?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| Error::parse(1, 1, "expected block length n"))?
            .parse()
            .map_err(|_| Error::parse(1, 1, "block length n is not an integer"))?;
        let k: usize = parts
            .next()
            .ok_or_else(|| Error::parse(1, 1, "expected message dimension k"))?
            .parse()
            .map_err(|_| Error::parse(1, 1, "message dimension k is not an integer"))?;
        if parts.next().is_some() {
            return Err(Error::parse(1, 1, "header must be exactly `n k`"));
        }
        if k == 0 || k >= n {
            return Err(Error::Config(format!(
                "code dimensions must satisfy 0 < k < n, got n={n}, k={k}"
            )));
        }

        fn read_block(
            lines: &mut std::iter::Enumerate<std::str::Lines<'_>>,
            rows: usize,
            n: usize,
            what: &str,
        ) -> Result<BinaryMatrix> {
            let mut parsed = Vec::with_capacity(rows);
            for _ in 0..rows {
                let (idx, line) = lines
                    .next()
                    .ok_or_else(|| Error::parse(0, 1, format!("missing {what} row")))?;
                let line = line.trim_end_matches('\r');
                if line.len() != n {
                    return Err(Error::parse(
                        idx + 1,
                        line.len().min(n) + 1,
                        format!("{what} row has {} columns, expected {n}", line.len()),
                    ));
                }
                let row: BitVector = line.parse().map_err(|e| match e {
                    Error::Parse { col, msg, .. } => Error::parse(idx + 1, col, msg),
                    other => other,
                })?;
                parsed.push(row);
            }
            Ok(BinaryMatrix::from_rows(parsed, n))
        }

        let generator = read_block(&mut lines, k, n, "generator")?;
        let parity_check = match lines.next() {
            None => None,
            Some((idx, sep)) => {
                if !sep.trim().is_empty() {
                    return Err(Error::parse(
                        idx + 1,
                        1,
                        "expected blank line between G and H blocks",
                    ));
                }
                Some(read_block(&mut lines, n - k, n, "parity check")?)
            }
        };
        if let Some((idx, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(
                idx + 1,
                1,
                format!("unexpected trailing content: {extra:?}"),
            ));
        }

        match parity_check {
            Some(h) => LinearCode::from_parts(generator, h),
            None => LinearCode::from_generator(generator),
        }
    }

    /// Writes the text format to a file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Reads the text format from a file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        LinearCode::from_text(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn hamming_7_4() -> LinearCode {
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

    pub(crate) fn repetition_3_1() -> LinearCode {
        let g = BinaryMatrix::from_rows(vec!["111".parse().unwrap()], 3);
        LinearCode::from_generator(g).unwrap()
    }

    #[test]
    fn systematic_construction_is_orthogonal_and_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for &(n, k) in &[(2usize, 1usize), (7, 4), (32, 16), (64, 22)] {
            let code = LinearCode::random_systematic(n, k, &mut rng).unwrap();
            assert_eq!(code.generator().rank(), k);
            assert_eq!(code.parity_check().rank(), n - k);
            assert!(code.generator().is_orthogonal_to(code.parity_check()));
            // Systematic: message is reproduced in the first k coordinates.
            let msg = BitVector::random(k, &mut rng);
            let cw = code.encode(&msg);
            for i in 0..k {
                assert_eq!(cw.get(i), msg.get(i));
            }
        }
    }

    #[test]
    fn both_two_one_codes_are_valid() {
        for bits in ["10", "11"] {
            let g = BinaryMatrix::from_rows(vec![bits.parse().unwrap()], 2);
            let code = LinearCode::from_generator(g).unwrap();
            assert!(code.generator().is_orthogonal_to(code.parity_check()));
            assert_eq!(code.parity_check().rows(), 1);
        }
    }

    #[test]
    fn degenerate_dimensions_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        assert!(LinearCode::random_systematic(5, 0, &mut rng).is_err());
        assert!(LinearCode::random_systematic(5, 5, &mut rng).is_err());
        assert!(LinearCode::random_systematic(5, 6, &mut rng).is_err());
    }

    #[test]
    fn encode_fixed_points() {
        let code = hamming_7_4();
        assert!(code.encode(&BitVector::zeros(4)).is_zero());
        for j in 0..4 {
            let unit = BitVector::unit(4, j);
            assert_eq!(&code.encode(&unit), code.generator().row(j));
        }
    }

    #[test]
    fn syndrome_of_codeword_is_zero_and_single_error_reads_h_column() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let code = LinearCode::random_systematic(32, 16, &mut rng).unwrap();
        for _ in 0..20 {
            let cw = code.encode(&BitVector::random(16, &mut rng));
            assert!(code.syndrome(&cw).is_zero());
            let pos = rng.random_range(0..32);
            let mut corrupted = cw.clone();
            corrupted.flip(pos);
            assert_eq!(code.syndrome(&corrupted), code.parity_check().column(pos));
        }
    }

    #[test]
    fn zero_syndrome_exactly_characterizes_membership() {
        let code = hamming_7_4();
        let codewords: std::collections::HashSet<String> = (0u32..16)
            .map(|m| {
                let mut msg = BitVector::zeros(4);
                for i in 0..4 {
                    if (m >> i) & 1 == 1 {
                        msg.set(i, true);
                    }
                }
                code.encode(&msg).to_string()
            })
            .collect();
        assert_eq!(codewords.len(), 16, "encoding must be injective");
        for w in 0u32..128 {
            let mut word = BitVector::zeros(7);
            for i in 0..7 {
                if (w >> i) & 1 == 1 {
                    word.set(i, true);
                }
            }
            assert_eq!(
                code.is_codeword(&word),
                codewords.contains(&word.to_string())
            );
        }
    }

    #[test]
    fn known_minimum_distances() {
        assert_eq!(repetition_3_1().brute_force_min_distance().unwrap(), 3);
        assert_eq!(hamming_7_4().brute_force_min_distance().unwrap(), 3);
        assert_eq!(hamming_7_4().min_distance(), Some(3));
    }

    #[test]
    fn min_distance_equals_min_pairwise_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let code = LinearCode::random_systematic(12, 5, &mut rng).unwrap();
        let codewords: Vec<BitVector> = (0u32..32)
            .map(|m| {
                let mut msg = BitVector::zeros(5);
                for i in 0..5 {
                    if (m >> i) & 1 == 1 {
                        msg.set(i, true);
                    }
                }
                code.encode(&msg)
            })
            .collect();
        let mut pairwise = usize::MAX;
        for i in 0..codewords.len() {
            for j in i + 1..codewords.len() {
                pairwise = pairwise.min(codewords[i].distance(&codewords[j]));
            }
        }
        assert_eq!(code.brute_force_min_distance().unwrap(), pairwise);
    }

    #[test]
    fn min_distance_respects_capability_limit() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let code = LinearCode::random_systematic(52, 26, &mut rng).unwrap();
        assert!(matches!(
            code.brute_force_min_distance(),
            Err(Error::Capability(_))
        ));
        assert_eq!(code.min_distance(), None);
    }

    #[test]
    fn text_round_trip_preserves_the_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let code = LinearCode::random_systematic(15, 5, &mut rng).unwrap();
        let text = code.to_text();
        let reloaded = LinearCode::from_text(&text).unwrap();
        assert_eq!(code, reloaded);
        assert_eq!(text, reloaded.to_text());
    }

    #[test]
    fn loading_without_parity_block_recomputes_h() {
        let code = hamming_7_4();
        let mut text = String::from("7 4\n");
        for row in code.generator().row_iter() {
            text.push_str(&row.to_string());
            text.push('\n');
        }
        let loaded = LinearCode::from_text(&text).unwrap();
        assert_eq!(loaded.parity_check().rows(), 3);
        assert_eq!(loaded.parity_check().rank(), 3);
        assert!(loaded.generator().is_orthogonal_to(loaded.parity_check()));
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        // Bad character in row 2 of G (file line 3, column 4).
        let text = "7 4\n1000110\n010x101\n0010011\n0001111\n";
        match LinearCode::from_text(text) {
            Err(Error::Parse {
                line: 3, col: 4, ..
            }) => {}
            other => panic!("unexpected result {other:?}"),
        }
        // Row of the wrong width.
        let text = "7 4\n1000110\n01001\n0010011\n0001111\n";
        match LinearCode::from_text(text) {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected result {other:?}"),
        }
        // Missing rows.
        assert!(LinearCode::from_text("7 4\n1000110\n").is_err());
        // Bad header.
        assert!(LinearCode::from_text("7\n").is_err());
        assert!(LinearCode::from_text("7 4 9\n").is_err());
    }

    #[test]
    fn invalid_structures_are_rejected_on_load() {
        // Rank-deficient generator.
        let text = "4 2\n1100\n1100\n";
        assert!(matches!(
            LinearCode::from_text(text),
            Err(Error::Invalid(_))
        ));
        // Valid G but non-orthogonal H block.
        let text = "4 2\n1010\n0111\n\n1000\n0100\n";
        assert!(matches!(
            LinearCode::from_text(text),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let a = LinearCode::random_systematic(32, 16, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = LinearCode::random_systematic(32, 16, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let c = LinearCode::random_systematic(32, 16, &mut ChaCha8Rng::seed_from_u64(100)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

//! Ordered factorizations of the long cycle `(1 2 … n)` into `n - 1`
//! transpositions.
//!
//! The factors of such a tuple are written `σ_1, …, σ_{n-1}` and multiply
//! with the rightmost factor applied first.  Every factor of a valid tuple is
//! a join of the product of the factors to its right; this is re-checked on
//! construction.

use crate::perm::{product_of_transpositions, PermError, Permutation, Transposition};
use thiserror::Error;

/// Largest `n` for which exhaustive enumeration is allowed by default.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("point count must be positive")]
    EmptyDomain,
    #[error("expected {expected} factors for n={n}, got {got}")]
    WrongLength { n: usize, expected: usize, got: usize },
    #[error("factor {factor} moves point {point}, outside 1..={n}")]
    PointOutOfRange { factor: Transposition, point: usize, n: usize },
    #[error(
        "product is not the long cycle: point {point} maps to {got}, expected {expected}"
    )]
    ProductMismatch { point: usize, got: usize, expected: usize },
    #[error("enumeration of n={n} exceeds the configured limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<PermError> for FactorizationError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::PointOutOfRange { point, n } => FactorizationError::Parse(format!(
                "point {point} is out of range 1..={n}"
            )),
            other => FactorizationError::Parse(other.to_string()),
        }
    }
}

/// A validated factorization of `(1 2 … n)` into `n - 1` transpositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    n: usize,
    factors: Vec<Transposition>,
}

impl Factorization {
    /// Validates and wraps a factor tuple: the length must be `n - 1`, all
    /// points must lie in `1..=n`, and the product (rightmost factor first)
    /// must equal the long cycle.
    pub fn validate(
        n: usize,
        factors: Vec<Transposition>,
    ) -> Result<Factorization, FactorizationError> {
        if n == 0 {
            return Err(FactorizationError::EmptyDomain);
        }
        if factors.len() != n - 1 {
            return Err(FactorizationError::WrongLength {
                n,
                expected: n - 1,
                got: factors.len(),
            });
        }
        for &f in &factors {
            if f.t() > n {
                return Err(FactorizationError::PointOutOfRange {
                    factor: f,
                    point: f.t(),
                    n,
                });
            }
        }
        let product = product_of_transpositions(&factors, n).expect("points already checked");
        let target = Permutation::full_cycle(n);
        if product != target {
            let point = (1..=n)
                .find(|&p| product.apply(p) != target.apply(p))
                .expect("unequal permutations differ somewhere");
            return Err(FactorizationError::ProductMismatch {
                point,
                got: product.apply(point),
                expected: target.apply(point),
            });
        }
        // Invariant implied by the product being an n-cycle reached in n - 1
        // steps: scanning right to left, every factor joins two cycles of the
        // product to its right, so the factor "graph" merges components only.
        let mut uf = UnionFind::new(n);
        for &f in factors.iter().rev() {
            assert!(
                uf.union(f.s(), f.t()),
                "factor {f} is a cut of the product to its right"
            );
        }
        Ok(Factorization { n, factors })
    }

    /// Internal constructor for tuples produced correct by construction.
    fn from_parts_unchecked(n: usize, factors: Vec<Transposition>) -> Factorization {
        debug_assert!(Factorization::validate(n, factors.clone()).is_ok());
        Factorization { n, factors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Transposition] {
        &self.factors
    }

    /// The partial products `f_i = σ_i σ_{i+1} ⋯ σ_{n-1}` for `i = 1..=n`,
    /// returned in that order; `f_n` is the identity and `f_1` the long cycle.
    pub fn partial_products(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.n); self.n];
        for i in (0..self.n - 1).rev() {
            let t = self.factors[i];
            let next = out[i + 1].clone();
            let tau = Permutation::from_cycles(self.n, &[vec![t.s(), t.t()]])
                .expect("factor points validated");
            out[i] = tau.compose(&next);
        }
        out
    }

    /// Distribution of difference indices over the factors.
    pub fn difference_distribution(&self) -> DifferenceDistribution {
        let mut counts = vec![0usize; self.n / 2];
        for &f in &self.factors {
            counts[difference_index(f, self.n) - 1] += 1;
        }
        DifferenceDistribution { counts }
    }

    /// Number of factors that are consecutive pairs mod `n`.
    pub fn consecutive_pair_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|&&f| is_consecutive_pair(f, self.n))
            .count()
    }
}

/// The circular distance `min(t - s, n - t + s)` between the two points of a
/// transposition; lies in `1..=n/2`.
pub fn difference_index(tau: Transposition, n: usize) -> usize {
    assert!(tau.t() <= n, "transposition outside 1..={n}");
    (tau.t() - tau.s()).min(n - tau.t() + tau.s())
}

/// Whether the two points are adjacent on the circle, i.e. `t ≡ s + 1 (mod n)`.
pub fn is_consecutive_pair(tau: Transposition, n: usize) -> bool {
    difference_index(tau, n) == 1
}

/// Counts of factors per difference index `1, …, ⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DifferenceDistribution {
    counts: Vec<usize>,
}

impl DifferenceDistribution {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

impl std::fmt::Display for DifferenceDistribution {
    /// Comma-separated counts, e.g. `4,2,1,1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Enumerates all factorizations of `(1 2 … n)` in lexicographic order of
/// their factor tuples, refusing `n` above [`DEFAULT_ENUMERATION_LIMIT`].
pub fn enumerate_factorizations(
    n: usize,
) -> Result<FactorizationIter, FactorizationError> {
    enumerate_factorizations_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

/// As [`enumerate_factorizations`] with an explicit size limit.
pub fn enumerate_factorizations_with_limit(
    n: usize,
    limit: usize,
) -> Result<FactorizationIter, FactorizationError> {
    if n == 0 {
        return Err(FactorizationError::EmptyDomain);
    }
    if n > limit {
        return Err(FactorizationError::EnumerationLimit { n, limit });
    }
    Ok(FactorizationIter::new(n))
}

/// Depth-first enumeration over factor choices.
///
/// Writing `h_i = σ_i · h_{i-1}` with `h_0 = (1 2 … n)`, the product of the
/// factors right of position `i` equals `h_i`, and `σ_i` is a join of that
/// product exactly when its two points lie on a common cycle of `h_{i-1}`.
/// Each same-cycle choice splits one cycle, so after `n - 1` choices `h` has
/// `n` cycles and is the identity: every leaf is a valid factorization.
pub struct FactorizationIter {
    n: usize,
    stack: Vec<Frame>,
    chosen: Vec<Transposition>,
    started: bool,
}

struct Frame {
    h: Permutation,
    candidates: Vec<Transposition>,
    next: usize,
}

impl FactorizationIter {
    fn new(n: usize) -> FactorizationIter {
        FactorizationIter {
            n,
            stack: Vec::new(),
            chosen: Vec::new(),
            started: false,
        }
    }

    fn frame_for(&self, h: Permutation) -> Frame {
        // Pairs on a common cycle of h, in (s, t) lexicographic order.
        let mut cycle_id = vec![0usize; self.n + 1];
        for (id, cycle) in h.cycle_decomposition().into_iter().enumerate() {
            for p in cycle {
                cycle_id[p] = id;
            }
        }
        let mut candidates = Vec::new();
        for s in 1..self.n {
            for t in s + 1..=self.n {
                if cycle_id[s] == cycle_id[t] {
                    candidates.push(Transposition::new(s, t));
                }
            }
        }
        Frame {
            h,
            candidates,
            next: 0,
        }
    }
}

impl Iterator for FactorizationIter {
    type Item = Factorization;

    fn next(&mut self) -> Option<Factorization> {
        if !self.started {
            self.started = true;
            if self.n == 1 {
                return Some(Factorization::from_parts_unchecked(1, Vec::new()));
            }
            let root = self.frame_for(Permutation::full_cycle(self.n));
            self.stack.push(root);
        }
        if self.n == 1 {
            return None;
        }
        loop {
            let depth = self.stack.len();
            if depth == 0 {
                return None;
            }
            let frame = self.stack.last_mut().expect("nonempty stack");
            if frame.next >= frame.candidates.len() {
                self.stack.pop();
                self.chosen.pop();
                continue;
            }
            let tau = frame.candidates[frame.next];
            frame.next += 1;
            let t = Permutation::from_cycles(self.n, &[vec![tau.s(), tau.t()]])
                .expect("candidate points in range");
            let h_next = t.compose(&frame.h);
            self.chosen.push(tau);
            if depth == self.n - 1 {
                let result = Factorization::from_parts_unchecked(self.n, self.chosen.clone());
                self.chosen.pop();
                return Some(result);
            }
            let next_frame = self.frame_for(h_next);
            self.stack.push(next_frame);
        }
    }
}

/// Structural parse of a factor line: an optional `n=<int>` prefix followed
/// by `(s t)` groups.  Returns the explicit `n` (if any) and the factor
/// tuple; no validation of the product is performed.
pub fn parse_transposition_line(
    input: &str,
) -> Result<(Option<usize>, Vec<Transposition>), FactorizationError> {
    let parse_err = |msg: &str| FactorizationError::Parse(msg.to_string());
    let mut rest = input.trim();
    let mut explicit_n = None;
    if let Some(stripped) = rest.strip_prefix("n=") {
        let end = stripped
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(stripped.len());
        if end == 0 {
            return Err(parse_err("expected a number after `n=`"));
        }
        let value: usize = stripped[..end]
            .parse()
            .map_err(|_| parse_err("invalid number after `n=`"))?;
        if value == 0 {
            return Err(parse_err("n must be positive"));
        }
        explicit_n = Some(value);
        rest = stripped[end..].trim_start();
    }
    let mut factors = Vec::new();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('(') else {
            return Err(parse_err("expected `(` starting a factor"));
        };
        let Some(close) = stripped.find(')') else {
            return Err(parse_err("unclosed factor: missing `)`"));
        };
        let body = &stripped[..close];
        let mut nums = body.split_whitespace();
        let (Some(a), Some(b), None) = (nums.next(), nums.next(), nums.next()) else {
            return Err(parse_err("a factor must contain exactly two points"));
        };
        let a: usize = a
            .parse()
            .map_err(|_| parse_err("invalid point in factor"))?;
        let b: usize = b
            .parse()
            .map_err(|_| parse_err("invalid point in factor"))?;
        if a == 0 || b == 0 {
            return Err(parse_err("points are 1-based; 0 is not a point"));
        }
        if a == b {
            return Err(parse_err("a factor must move two distinct points"));
        }
        factors.push(Transposition::new(a, b));
        rest = stripped[close + 1..].trim_start();
    }
    Ok((explicit_n, factors))
}

/// Infers `n` for a parsed line: the explicit prefix if present, otherwise
/// the largest point mentioned.
pub fn infer_n(
    explicit_n: Option<usize>,
    factors: &[Transposition],
) -> Result<usize, FactorizationError> {
    match explicit_n {
        Some(n) => Ok(n),
        None => factors
            .iter()
            .map(|f| f.t())
            .max()
            .ok_or_else(|| {
                FactorizationError::Parse(
                    "empty input: cannot infer n (use an `n=` prefix)".to_string(),
                )
            }),
    }
}

impl std::str::FromStr for Factorization {
    type Err = FactorizationError;

    fn from_str(s: &str) -> Result<Factorization, FactorizationError> {
        let (explicit_n, factors) = parse_transposition_line(s)?;
        let n = infer_n(explicit_n, &factors)?;
        Factorization::validate(n, factors)
    }
}

impl std::fmt::Display for Factorization {
    /// Canonical form: `(s t)` groups with no separator; the factorless
    /// `n = 1` case prints as `n=1` so it can be parsed back.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "n={}", self.n);
        }
        for factor in &self.factors {
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..=n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns false if the two points were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{classify_join_cut, JoinCut};

    fn tp(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b)
    }

    /// The running n = 9 example used throughout the crate's tests.
    pub(crate) fn example_f0() -> Factorization {
        Factorization::validate(
            9,
            vec![
                tp(2, 3),
                tp(4, 5),
                tp(3, 6),
                tp(3, 5),
                tp(1, 6),
                tp(6, 8),
                tp(8, 9),
                tp(6, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn example_validates() {
        let f = example_f0();
        assert_eq!(f.n(), 9);
        assert_eq!(f.factors().len(), 8);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let err = Factorization::validate(4, vec![tp(1, 2), tp(2, 3)]).unwrap_err();
        assert_eq!(
            err,
            FactorizationError::WrongLength { n: 4, expected: 3, got: 2 }
        );
    }

    #[test]
    fn wrong_product_names_first_differing_point() {
        // (1 2)(1 2) is the identity, which fixes 1 instead of sending it to 2.
        let err = Factorization::validate(3, vec![tp(1, 2), tp(1, 2)]).unwrap_err();
        assert_eq!(
            err,
            FactorizationError::ProductMismatch { point: 1, got: 1, expected: 2 }
        );
    }

    #[test]
    fn out_of_range_point_is_rejected() {
        let err = Factorization::validate(3, vec![tp(1, 4), tp(2, 3)]).unwrap_err();
        assert_eq!(
            err,
            FactorizationError::PointOutOfRange { factor: tp(1, 4), point: 4, n: 3 }
        );
    }

    #[test]
    fn n1_empty_factorization_is_valid() {
        let f = Factorization::validate(1, vec![]).unwrap();
        assert_eq!(f.n(), 1);
        assert!(f.factors().is_empty());
    }

    #[test]
    fn partial_products_ends() {
        let f = example_f0();
        let pp = f.partial_products();
        assert_eq!(pp.len(), 9);
        assert_eq!(pp[0], Permutation::full_cycle(9));
        assert!(pp[8].is_identity());
        // f_6 = (6 8)(8 9)(6 7) moves exactly {6,7,8,9}.
        assert_eq!(
            pp[5].cycle_decomposition(),
            vec![vec![1], vec![2], vec![3], vec![4], vec![5], vec![6, 7, 8, 9]]
        );
    }

    #[test]
    fn every_factor_is_a_join_of_the_suffix() {
        let f = example_f0();
        let pp = f.partial_products();
        for (i, &factor) in f.factors().iter().enumerate() {
            assert_eq!(classify_join_cut(factor, &pp[i + 1]), JoinCut::Join);
        }
    }

    #[test]
    fn difference_index_examples() {
        assert_eq!(difference_index(tp(1, 6), 11), 5);
        assert_eq!(difference_index(tp(1, 6), 9), 4);
        assert_eq!(difference_index(tp(1, 9), 9), 1);
        assert!(is_consecutive_pair(tp(1, 9), 9));
        assert!(is_consecutive_pair(tp(1, 2), 2));
        assert!(!is_consecutive_pair(tp(3, 5), 9));
    }

    #[test]
    fn difference_distribution_of_example() {
        let f = example_f0();
        // Consecutive pairs: (2 3), (4 5), (8 9), (6 7).
        assert_eq!(f.consecutive_pair_count(), 4);
        assert_eq!(f.difference_distribution().counts(), &[4, 2, 1, 1]);
        assert_eq!(f.difference_distribution().to_string(), "4,2,1,1");
    }

    #[test]
    fn distribution_length_is_half_n() {
        let f2 = Factorization::validate(2, vec![tp(1, 2)]).unwrap();
        assert_eq!(f2.difference_distribution().counts(), &[1]);
        let f1 = Factorization::validate(1, vec![]).unwrap();
        assert!(f1.difference_distribution().counts().is_empty());
    }

    #[test]
    fn enumeration_counts_match_cayley_formula() {
        // n^(n-2) factorizations for n = 1..6.
        let expected = [1usize, 1, 3, 16, 125, 1296];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(enumerate_factorizations(n).unwrap().count(), want, "n={n}");
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        let all: Vec<Factorization> = enumerate_factorizations(5).unwrap().collect();
        for pair in all.windows(2) {
            assert!(pair[0].factors() < pair[1].factors());
        }
    }

    #[test]
    fn enumeration_of_three_points() {
        let all: Vec<String> = enumerate_factorizations(3)
            .unwrap()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(all, vec!["(1 2)(2 3)", "(1 3)(1 2)", "(2 3)(1 3)"]);
    }

    #[test]
    fn enumeration_limit_is_enforced() {
        let err = match enumerate_factorizations(8) {
            Err(e) => e,
            Ok(_) => panic!("n=8 must exceed the default enumeration limit"),
        };
        assert_eq!(err, FactorizationError::EnumerationLimit { n: 8, limit: 7 });
        assert!(enumerate_factorizations_with_limit(8, 8).is_ok());
    }

    /// Independent oracle: a naive scan over all factor tuples.
    #[test]
    fn enumeration_agrees_with_naive_scan() {
        for n in 2..=5 {
            let mut pairs = Vec::new();
            for s in 1..n {
                for t in s + 1..=n {
                    pairs.push(tp(s, t));
                }
            }
            let mut naive = Vec::new();
            let mut indices = vec![0usize; n - 1];
            loop {
                let factors: Vec<Transposition> =
                    indices.iter().map(|&i| pairs[i]).collect();
                if Factorization::validate(n, factors.clone()).is_ok() {
                    naive.push(factors);
                }
                // Odometer increment over the tuple space.
                let mut pos = n - 1;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < pairs.len() {
                        break;
                    }
                    indices[pos] = 0;
                }
                if pos == 0 && indices[0] == 0 {
                    break;
                }
            }
            let pruned: Vec<Vec<Transposition>> = enumerate_factorizations(n)
                .unwrap()
                .map(|f| f.factors().to_vec())
                .collect();
            assert_eq!(pruned, naive, "n={n}");
        }
    }

    #[test]
    fn parse_and_print_round_trip() {
        let f: Factorization = "(2 3)(4 5)(3 6)(3 5)(1 6)(6 8)(8 9)(6 7)".parse().unwrap();
        assert_eq!(f, example_f0());
        assert_eq!(f.to_string(), "(2 3)(4 5)(3 6)(3 5)(1 6)(6 8)(8 9)(6 7)");
        let spaced: Factorization = " (2 3) (4 5) (3 6)(3 5)(1 6)(6 8)(8 9)(6 7) \n"
            .parse()
            .unwrap();
        assert_eq!(spaced, f);
    }

    #[test]
    fn parse_honors_explicit_n_prefix() {
        let f: Factorization = "n=2 (1 2)".parse().unwrap();
        assert_eq!(f.n(), 2);
        let f1: Factorization = "n=1".parse().unwrap();
        assert_eq!(f1.n(), 1);
        assert_eq!(f1.to_string(), "n=1");
        // An explicit prefix can also make a line invalid.
        let err = "n=4 (1 2)(2 3)".parse::<Factorization>().unwrap_err();
        assert_eq!(
            err,
            FactorizationError::WrongLength { n: 4, expected: 3, got: 2 }
        );
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(
            "(1 2".parse::<Factorization>(),
            Err(FactorizationError::Parse(_))
        ));
        assert!(matches!(
            "(1 2 3)".parse::<Factorization>(),
            Err(FactorizationError::Parse(_))
        ));
        assert!(matches!(
            "(1 1)".parse::<Factorization>(),
            Err(FactorizationError::Parse(_))
        ));
        assert!(matches!(
            "".parse::<Factorization>(),
            Err(FactorizationError::Parse(_))
        ));
        assert!(matches!(
            "(0 2)".parse::<Factorization>(),
            Err(FactorizationError::Parse(_))
        ));
    }
}

//! Counting oracles: leaf-count tables, refined distribution tables, and
//! the closed formula for minimal transitive factorizations of an arbitrary
//! cycle type, with an exhaustive cross-check.

use crate::factorization::{enumerate_factorizations, FactorizationError, DEFAULT_ENUMERATION_LIMIT};
use crate::perm::{Permutation, Transposition};
use crate::tree::{count_trees_with_k_leaves, prufer_decode};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

/// Default cap on tuple evaluations for the exhaustive search.
pub const DEFAULT_EVALUATION_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("a partition needs at least one part")]
    EmptyPartition,
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("factor ({s} {t}) is outside 1..={n}")]
    FactorOutOfRange { s: usize, t: usize, n: usize },
    #[error("exhaustive search exceeded the budget of {budget} evaluations")]
    SearchBudgetExceeded { budget: u64 },
    #[error(transparent)]
    Enumeration(#[from] FactorizationError),
    #[error("cannot parse partition: {0}")]
    Parse(String),
}

/// A partition `α = (α₁ ≥ α₂ ≥ … ≥ α_m ≥ 1)`; the constructor sorts the
/// parts, so any positive part list is accepted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = usize>) -> Result<Partition, CountingError> {
        let mut parts: Vec<usize> = parts.into_iter().collect();
        if parts.is_empty() {
            return Err(CountingError::EmptyPartition);
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(CountingError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The weakly decreasing parts.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned number `n = Σ α_j`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The number of parts `m`.
    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// All partitions of `n` in descending lexicographic order.
    pub fn all_partitions(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn descend(remaining: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: current.clone() });
                return;
            }
            for part in (1..=remaining.min(cap)).rev() {
                current.push(part);
                descend(remaining - part, part, current, out);
                current.pop();
            }
        }
        descend(n, n, &mut current, &mut out);
        out
    }

    /// The representative of the conjugacy class of type `α`: cycles on
    /// consecutive blocks `(1 … α₁)(α₁+1 … α₁+α₂)…`.
    pub fn canonical_representative(&self) -> Permutation {
        let mut cycles = Vec::with_capacity(self.m());
        let mut next = 1;
        for &part in &self.parts {
            cycles.push((next..next + part).collect::<Vec<_>>());
            next += part;
        }
        Permutation::from_cycles(self.n(), &cycles).expect("consecutive blocks are disjoint")
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = CountingError;

    fn from_str(s: &str) -> Result<Partition, CountingError> {
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let part: usize = piece
                .parse()
                .map_err(|_| CountingError::Parse(format!("bad part {piece:?}")))?;
            parts.push(part);
        }
        Partition::new(parts)
    }
}

/// An arbitrary ordered tuple of transpositions on points `1..=n`; unlike
/// [`crate::Factorization`] the length is unconstrained and no product is
/// prescribed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranspositionTuple {
    n: usize,
    factors: Vec<Transposition>,
}

impl TranspositionTuple {
    pub fn new(
        n: usize,
        factors: Vec<Transposition>,
    ) -> Result<TranspositionTuple, CountingError> {
        for factor in &factors {
            if factor.t() > n {
                return Err(CountingError::FactorOutOfRange {
                    s: factor.s(),
                    t: factor.t(),
                    n,
                });
            }
        }
        Ok(TranspositionTuple { n, factors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[Transposition] {
        &self.factors
    }

    /// The product with the rightmost factor applied first.
    pub fn product(&self) -> Permutation {
        crate::perm::product_of_transpositions(&self.factors, self.n)
            .expect("points validated at construction")
    }

    /// Whether the graph on `1..=n` with an edge per factor is connected.
    pub fn is_transitive(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        let mut components = self.n;
        for factor in &self.factors {
            let a = find(&mut parent, factor.s());
            let b = find(&mut parent, factor.t());
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Classifies each factor against the product of the factors to its
    /// right and returns `(joins, cuts)`: a factor joins two cycles of that
    /// suffix product or cuts one in two.
    pub fn join_cut_profile(&self) -> (usize, usize) {
        let mut suffix = Permutation::identity(self.n);
        let mut joins = 0;
        let mut cuts = 0;
        for factor in self.factors.iter().rev() {
            match crate::perm::classify_join_cut(*factor, &suffix) {
                crate::perm::JoinCut::Join => joins += 1,
                crate::perm::JoinCut::Cut => cuts += 1,
            }
            let transposed = Permutation::from_cycles(self.n, &[vec![factor.s(), factor.t()]])
                .expect("factor in range");
            suffix = transposed.compose(&suffix);
        }
        (joins, cuts)
    }
}

/// The closed formula for the number of minimal transitive factorizations
/// of a permutation of cycle type `α`: with `n = Σ α_j` and `m` parts, the
/// `k = n + m − 2` factor tuples number
/// `(n+m−2)! · n^(m−3) · Π_j α_j^(α_j) / (α_j − 1)!`.
///
/// The exponent `m − 3` can be negative, so the product is evaluated in
/// exact rational arithmetic; the result is asserted to be integral.
pub fn hurwitz_minimal_formula(alpha: &Partition) -> BigUint {
    let n = alpha.n();
    let m = alpha.m();
    let mut value = BigRational::from_integer(factorial(n + m - 2));
    let n_big = BigInt::from(n);
    if m >= 3 {
        value *= BigRational::from_integer(n_big.pow((m - 3) as u32));
    } else {
        value /= BigRational::from_integer(n_big.pow((3 - m) as u32));
    }
    for &part in alpha.parts() {
        let p = BigInt::from(part);
        value *= BigRational::new(p.pow(part as u32), factorial(part - 1));
    }
    assert!(value.is_integer(), "the minimal-factorization count is an integer");
    value
        .to_integer()
        .to_biguint()
        .expect("the count is nonnegative")
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}

/// Counts minimal transitive factorizations of type `α` by exhaustive
/// search: `for_each_minimal_transitive` with a counting visitor.
pub fn brute_force_minimal_transitive(
    alpha: &Partition,
    max_evaluations: u64,
) -> Result<u64, CountingError> {
    for_each_minimal_transitive(alpha, max_evaluations, |_| {})
}

/// Visits every `(n + m − 2)`-tuple of transpositions whose rightmost-first
/// product is the canonical representative of class `α` and whose factor
/// graph is connected, returning how many there are.  The search walks the
/// tuple space innermost factor first, pruning branches whose residual
/// permutation is too far from the identity or whose factor graph cannot
/// become connected; every candidate factor examined counts one evaluation
/// against `max_evaluations`.
pub fn for_each_minimal_transitive(
    alpha: &Partition,
    max_evaluations: u64,
    mut visitor: impl FnMut(&TranspositionTuple),
) -> Result<u64, CountingError> {
    let n = alpha.n();
    let k = n + alpha.m() - 2;
    let mut candidates = Vec::new();
    for s in 1..=n {
        for t in s + 1..=n {
            candidates.push((s, t));
        }
    }
    let representative = alpha.canonical_representative();
    let mut residual: Vec<usize> = (0..=n).collect();
    for p in 1..=n {
        residual[p] = representative.apply(p);
    }
    let mut search = Search {
        n,
        target: representative,
        candidates,
        residual,
        cycles: alpha.m(),
        dsu: RollbackDsu::new(n),
        chosen: Vec::with_capacity(k),
        evaluations: 0,
        budget: max_evaluations,
        count: 0,
        visitor: &mut visitor,
    };
    search.dfs(k)?;
    Ok(search.count)
}

struct Search<'v, V: FnMut(&TranspositionTuple)> {
    n: usize,
    /// The canonical representative, kept for the leaf sanity check.
    target: Permutation,
    candidates: Vec<(usize, usize)>,
    /// Image array of the permutation the remaining factors must multiply
    /// to: the target times the inverse of the factors chosen so far.
    residual: Vec<usize>,
    cycles: usize,
    dsu: RollbackDsu,
    /// Chosen factors, innermost (rightmost) first.
    chosen: Vec<(usize, usize)>,
    evaluations: u64,
    budget: u64,
    count: u64,
    visitor: &'v mut V,
}

impl<V: FnMut(&TranspositionTuple)> Search<'_, V> {
    fn dfs(&mut self, remaining: usize) -> Result<(), CountingError> {
        if remaining == 0 {
            // The pruning bounds force the residual to be the identity and
            // the factor graph to be connected here.
            debug_assert_eq!(self.cycles, self.n);
            debug_assert_eq!(self.dsu.components, 1);
            let factors: Vec<Transposition> = self
                .chosen
                .iter()
                .rev()
                .map(|&(s, t)| Transposition::new(s, t))
                .collect();
            let tuple = TranspositionTuple { n: self.n, factors };
            debug_assert_eq!(tuple.product(), self.target);
            debug_assert!(tuple.is_transitive());
            (self.visitor)(&tuple);
            self.count += 1;
            return Ok(());
        }
        for idx in 0..self.candidates.len() {
            self.evaluations += 1;
            if self.evaluations > self.budget {
                return Err(CountingError::SearchBudgetExceeded { budget: self.budget });
            }
            let (s, t) = self.candidates[idx];
            // Choosing τ = (s t) as the next innermost factor replaces the
            // residual ρ by ρ∘τ, which swaps the images at s and t.  That
            // splits a cycle of ρ when s and t share one (one step closer to
            // the identity) and merges two cycles otherwise.
            let splits = self.on_same_residual_cycle(s, t);
            let cycles_after = if splits { self.cycles + 1 } else { self.cycles - 1 };
            let left = remaining - 1;
            if self.n - cycles_after > left {
                continue;
            }
            let merged = self.dsu.union(s, t);
            if self.dsu.components - 1 > left {
                if merged {
                    self.dsu.rollback();
                }
                continue;
            }
            self.residual.swap(s, t);
            self.cycles = cycles_after;
            self.chosen.push((s, t));

            let outcome = self.dfs(left);

            self.chosen.pop();
            self.cycles = if splits { self.cycles - 1 } else { self.cycles + 1 };
            self.residual.swap(s, t);
            if merged {
                self.dsu.rollback();
            }
            outcome?;
        }
        Ok(())
    }

    fn on_same_residual_cycle(&self, s: usize, t: usize) -> bool {
        let mut p = self.residual[s];
        while p != s {
            if p == t {
                return true;
            }
            p = self.residual[p];
        }
        false
    }
}

/// Union-find with union by size and an undo stack (no path compression),
/// so the search can retract factors in reverse order.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
    history: Vec<(usize, usize)>,
}

impl RollbackDsu {
    fn new(n: usize) -> RollbackDsu {
        RollbackDsu {
            parent: (0..=n).collect(),
            size: vec![1; n + 1],
            components: n,
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra] > self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[ra] = rb;
        self.size[rb] += self.size[ra];
        self.components -= 1;
        self.history.push((ra, rb));
        true
    }

    fn rollback(&mut self) {
        let (child, root) = self.history.pop().expect("a union to undo");
        self.parent[child] = child;
        self.size[root] -= self.size[child];
        self.components += 1;
    }
}

/// One row of the leaf-count table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafCountRow {
    pub n: usize,
    /// `tree_counts[k - 2]` = trees on `n` vertices with `k` leaves, for
    /// `k = 2..=n`.
    pub tree_counts: Vec<BigUint>,
    /// The same counts obtained by enumerating factorizations and tallying
    /// consecutive-pair factors; present when enumeration is feasible
    /// (`3 <= n <= 7`).
    pub factorization_counts: Option<Vec<u64>>,
    /// `n^(n-2)`, the row total.
    pub total: BigUint,
}

/// The table of tree counts by leaf number, with the factorization
/// cross-check on the enumerable rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafCountTable {
    rows: Vec<LeafCountRow>,
}

/// Builds the rows `n = 2..=n_max`.  Rows with `3 <= n <= 7` also count
/// factorizations by consecutive pairs; the two counts always agree.
pub fn leaf_count_table(n_max: usize) -> Result<LeafCountTable, CountingError> {
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let tree_counts: Vec<BigUint> = (2..=n)
            .map(|k| count_trees_with_k_leaves(n, k).expect("2 <= k <= n"))
            .collect();
        let total: BigUint = tree_counts.iter().sum();
        assert_eq!(
            total,
            BigUint::from(n).pow(n as u32 - 2),
            "leaf counts sum to the number of trees"
        );
        let factorization_counts = if (3..=DEFAULT_ENUMERATION_LIMIT).contains(&n) {
            let mut counts = vec![0u64; n - 1];
            for f in enumerate_factorizations(n)? {
                counts[f.consecutive_pair_count() - 2] += 1;
            }
            for (k_index, count) in counts.iter().enumerate() {
                assert_eq!(
                    BigUint::from(*count),
                    tree_counts[k_index],
                    "factorization and tree counts agree at n={n}, k={}",
                    k_index + 2
                );
            }
            Some(counts)
        } else {
            None
        };
        rows.push(LeafCountRow { n, tree_counts, factorization_counts, total });
    }
    Ok(LeafCountTable { rows })
}

impl LeafCountTable {
    pub fn rows(&self) -> &[LeafCountRow] {
        &self.rows
    }

    /// Plain-text rows `n: c_2 c_3 … | total`, omitting the `k = n` column
    /// for `n >= 3` (no tree on three or more vertices is all leaves).
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let shown = if row.n >= 3 { row.n - 2 } else { 1 };
            let counts: Vec<String> = row.tree_counts[..shown]
                .iter()
                .map(|c| c.to_string())
                .collect();
            out.push_str(&format!("{}: {} | {}\n", row.n, counts.join(" "), row.total));
        }
        out
    }

    /// CSV with one row per `n` and fixed columns `k = 2..=n_max`; cells
    /// with `k > n` are 0.
    pub fn render_csv(&self) -> String {
        let n_max = self.rows.last().map_or(2, |r| r.n);
        let mut out = String::from("n");
        for k in 2..=n_max {
            out.push_str(&format!(",k={k}"));
        }
        out.push_str(",total\n");
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            for k in 2..=n_max {
                let cell = row
                    .tree_counts
                    .get(k - 2)
                    .cloned()
                    .unwrap_or_else(BigUint::zero);
                out.push_str(&format!(",{cell}"));
            }
            out.push_str(&format!(",{}\n", row.total));
        }
        out
    }
}

/// For each difference distribution occurring at `n`, the number of
/// factorizations attaining it and the number of trees whose edge-deletion
/// distribution equals it.  The two tallies agree entry by entry.
pub fn refined_distribution_table(
    n: usize,
) -> Result<BTreeMap<Vec<usize>, (u64, u64)>, CountingError> {
    let mut table: BTreeMap<Vec<usize>, (u64, u64)> = BTreeMap::new();
    for f in enumerate_factorizations(n)? {
        let key = f.difference_distribution().counts().to_vec();
        table.entry(key).or_default().0 += 1;
    }
    for_each_tree(n, |tree| {
        let key = tree.edge_deletion_distribution().counts().to_vec();
        table.entry(key).or_default().1 += 1;
    });
    Ok(table)
}

/// Visits every labelled tree on `n` vertices via its code.
fn for_each_tree(n: usize, mut visit: impl FnMut(&crate::tree::LabeledTree)) {
    if n < 3 {
        // One tree each for n = 1 and n = 2.
        let edges: Vec<(usize, usize)> = if n == 2 { vec![(1, 2)] } else { Vec::new() };
        let tree = crate::tree::LabeledTree::from_edges(n, edges).expect("tiny tree");
        visit(&tree);
        return;
    }
    let mut code = vec![1usize; n - 2];
    loop {
        let tree = prufer_decode(&code).expect("codes in range decode");
        visit(&tree);
        let mut pos = 0;
        loop {
            if pos == code.len() {
                return;
            }
            if code[pos] < n {
                code[pos] += 1;
                break;
            }
            code[pos] = 1;
            pos += 1;
        }
    }
}

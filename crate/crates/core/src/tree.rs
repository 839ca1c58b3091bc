//! Labelled trees on `{1, …, n}`: edge-deletion indices, Prüfer codes, leaf
//! counting, and text formats.

use num::{BigInt, BigUint, One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("vertex count must be positive")]
    EmptyDomain,
    #[error("expected {expected} edges for n={n}, got {got}")]
    WrongEdgeCount { n: usize, expected: usize, got: usize },
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("edges contain a cycle through vertices {cycle:?}")]
    Cycle { cycle: Vec<usize> },
    #[error("edge {edge:?} is not in the tree")]
    MissingEdge { edge: (usize, usize) },
    #[error("Prüfer codes require n >= 2, got n={n}")]
    TooSmallForCode { n: usize },
    #[error("code entry {entry} is out of range 1..={n}")]
    CodeEntryOutOfRange { entry: usize, n: usize },
    #[error("leaf count {k} is out of range 2..={n}")]
    LeafCountOutOfRange { k: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// A tree on vertices `{1, …, n}`, stored as a canonically sorted edge list
/// (each edge `(u, v)` with `u < v`, edges in lexicographic order).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    /// Validates an edge list: `n - 1` edges on `1..=n`, no self-loops, no
    /// cycles (which, at that edge count, also forces connectivity).
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<LabeledTree, TreeError> {
        if n == 0 {
            return Err(TreeError::EmptyDomain);
        }
        let mut canonical: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(TreeError::SelfLoop { vertex: a });
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(TreeError::VertexOutOfRange { vertex: v, n });
                }
            }
            canonical.push((a.min(b), a.max(b)));
        }
        if canonical.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                got: canonical.len(),
            });
        }
        // Grow a forest; the first edge joining two already-connected
        // vertices closes a cycle, which we report as the witness.
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        let mut uf = UnionFind::new(n);
        for &(u, v) in &canonical {
            if !uf.union(u, v) {
                // The path u … v in the forest so far plus this edge is a cycle.
                let cycle = path_in_forest(&adjacency, u, v)
                    .expect("connected in forest, so a path exists");
                return Err(TreeError::Cycle { cycle });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        canonical.sort_unstable();
        Ok(LabeledTree { n, edges: canonical })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in canonical order: `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        adjacency
    }

    /// Size of the smaller component left by deleting an edge — equivalently
    /// `min(|T1|, |T2|)` over the two sides.
    pub fn edge_deletion_index(&self, edge: (usize, usize)) -> Result<usize, TreeError> {
        let e = (edge.0.min(edge.1), edge.0.max(edge.1));
        if !self.edges.contains(&e) {
            return Err(TreeError::MissingEdge { edge });
        }
        let adjacency = self.adjacency();
        // Size of the component of e.0 with e removed.
        let mut seen = vec![false; self.n + 1];
        seen[e.0] = true;
        let mut stack = vec![e.0];
        let mut size = 0usize;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in &adjacency[v] {
                if (v, w) == e || (w, v) == e || seen[w] {
                    continue;
                }
                seen[w] = true;
                stack.push(w);
            }
        }
        Ok(size.min(self.n - size))
    }

    /// Distribution of edge-deletion indices over all edges, with counts for
    /// indices `1, …, ⌊n/2⌋`.
    pub fn edge_deletion_distribution(&self) -> EdgeDeletionDistribution {
        let mut counts = vec![0usize; self.n / 2];
        // One traversal computing subtree sizes: the side of an edge below
        // its child has the child's subtree size.
        let adjacency = self.adjacency();
        let mut parent = vec![0usize; self.n + 1];
        let mut order = Vec::with_capacity(self.n);
        let mut stack = vec![1usize];
        let mut seen = vec![false; self.n + 1];
        seen[1] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut subtree = vec![1usize; self.n + 1];
        for &v in order.iter().rev() {
            if v != 1 {
                subtree[parent[v]] += subtree[v];
            }
        }
        for v in 2..=self.n {
            let below = subtree[v];
            counts[below.min(self.n - below) - 1] += 1;
        }
        EdgeDeletionDistribution { counts }
    }

    /// Vertices of degree one, in increasing order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut degree = vec![0usize; self.n + 1];
        for &(u, v) in &self.edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        if self.n == 1 {
            return Vec::new();
        }
        (1..=self.n).filter(|&v| degree[v] == 1).collect()
    }

    /// Graph-description export of the tree.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n");
        if self.n == 1 {
            out.push_str("  1;\n");
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Counts of edges per edge-deletion index `1, …, ⌊n/2⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeDeletionDistribution {
    counts: Vec<usize>,
}

impl EdgeDeletionDistribution {
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }
}

impl std::fmt::Display for EdgeDeletionDistribution {
    /// Comma-separated counts, e.g. `6,2,1,0,1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Prüfer code of a tree on at least two vertices: repeatedly delete the
/// smallest-labelled leaf and record its neighbor, stopping when two vertices
/// remain.  The code has length `n - 2`.
pub fn prufer_encode(tree: &LabeledTree) -> Result<Vec<usize>, TreeError> {
    let n = tree.n();
    if n < 2 {
        return Err(TreeError::TooSmallForCode { n });
    }
    let adjacency = tree.adjacency();
    let mut degree: Vec<usize> = adjacency.iter().map(|a| a.len()).collect();
    let mut removed = vec![false; n + 1];
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut code = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let std::cmp::Reverse(leaf) = heap.pop().expect("a tree always has a leaf");
        removed[leaf] = true;
        let &neighbor = adjacency[leaf]
            .iter()
            .find(|&&w| !removed[w])
            .expect("a leaf has exactly one live neighbor");
        code.push(neighbor);
        degree[neighbor] -= 1;
        if degree[neighbor] == 1 {
            heap.push(std::cmp::Reverse(neighbor));
        }
    }
    Ok(code)
}

/// Rebuilds the tree on `code.len() + 2` vertices from a Prüfer code;
/// inverse of [`prufer_encode`].
pub fn prufer_decode(code: &[usize]) -> Result<LabeledTree, TreeError> {
    let n = code.len() + 2;
    for &entry in code {
        if entry < 1 || entry > n {
            return Err(TreeError::CodeEntryOutOfRange { entry, n });
        }
    }
    let mut degree = vec![1usize; n + 1];
    degree[0] = 0;
    for &entry in code {
        degree[entry] += 1;
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &entry in code {
        let std::cmp::Reverse(leaf) = heap.pop().expect("decode always has a pending leaf");
        edges.push((leaf, entry));
        degree[leaf] -= 1;
        degree[entry] -= 1;
        if degree[entry] == 1 {
            heap.push(std::cmp::Reverse(entry));
        }
    }
    let std::cmp::Reverse(a) = heap.pop().expect("two vertices remain");
    let std::cmp::Reverse(b) = heap.pop().expect("two vertices remain");
    edges.push((a, b));
    LabeledTree::from_edges(n, edges)
}

/// Number of labelled trees on `n` vertices with exactly `k` leaves:
/// `C(n,k) · Σ_{i=0}^{n-k} C(n-k,i) (-1)^(n-k-i) i^(n-2)`, computed exactly.
pub fn count_trees_with_k_leaves(n: usize, k: usize) -> Result<BigUint, TreeError> {
    if k < 2 || k > n {
        return Err(TreeError::LeafCountOutOfRange { k, n });
    }
    let mut sum = BigInt::zero();
    let m = n - k;
    for i in 0..=m {
        let term = binomial(m, i) * power(i, n - 2);
        if (m - i) % 2 == 0 {
            sum += BigInt::from(term);
        } else {
            sum -= BigInt::from(term);
        }
    }
    let total = BigInt::from(binomial(n, k)) * sum;
    assert!(!total.is_negative(), "leaf-count formula went negative");
    Ok(total.to_biguint().expect("checked nonnegative"))
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k.min(n - k) {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// `base^exp` with the convention `0^0 = 1`.
fn power(base: usize, exp: usize) -> BigUint {
    if exp == 0 {
        return BigUint::one();
    }
    num::pow::pow(BigUint::from(base), exp)
}

/// A uniformly random labelled tree, built by decoding a random Prüfer code;
/// with a seeded generator the result is reproducible.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LabeledTree, TreeError> {
    match n {
        0 => Err(TreeError::EmptyDomain),
        1 => LabeledTree::from_edges(1, Vec::new()),
        _ => {
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            prufer_decode(&code)
        }
    }
}

impl std::str::FromStr for LabeledTree {
    type Err = TreeError;

    /// Parses the text format: a header line `n=<n>` followed by one edge
    /// `u v` per line.  Blank lines and lines starting with `#` are ignored.
    fn from_str(s: &str) -> Result<LabeledTree, TreeError> {
        let parse_err = |msg: String| TreeError::Parse(msg);
        let mut lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| parse_err("empty input: expected an `n=<n>` header".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| parse_err(format!("expected `n=<n>` header, got `{header}`")))?
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid vertex count in header `{header}`")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut nums = line.split_whitespace();
            let (Some(u), Some(v), None) = (nums.next(), nums.next(), nums.next()) else {
                return Err(parse_err(format!(
                    "expected an edge `u v` per line, got `{line}`"
                )));
            };
            let u: usize = u
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex in edge `{line}`")))?;
            let v: usize = v
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex in edge `{line}`")))?;
            edges.push((u, v));
        }
        LabeledTree::from_edges(n, edges)
    }
}

impl std::fmt::Display for LabeledTree {
    /// Canonical text format: `n=<n>` header, then sorted `u v` edge lines.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Path between two vertices in a forest given by adjacency lists, if any.
fn path_in_forest(adjacency: &[Vec<usize>], from: usize, to: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; adjacency.len()];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            let mut path = vec![to];
            let mut p = to;
            while p != from {
                p = parent[p];
                path.push(p);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adjacency[v] {
            if parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    None
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

//! Permutations of `{1, …, n}`, transpositions, and cycle utilities.
//!
//! Composition is function-style: in a product the rightmost factor is
//! applied first, so `(a·b)(x) = a(b(x))`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {point} is out of range 1..={n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("images do not form a permutation: value {value} appears twice")]
    NotBijective { value: usize },
    #[error("duplicate element {element} in sequence")]
    DuplicateElement { element: usize },
    #[error("point count must be positive")]
    EmptyDomain,
}

/// A permutation of `{1, …, n}`, stored as an image table.
///
/// Index 0 of the internal table is unused so that `image[p]` is the image of
/// point `p` directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cycles = self.cycle_decomposition();
        let nontrivial: Vec<String> = cycles
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect();
        if nontrivial.is_empty() {
            write!(f, "id[{}]", self.n())
        } else {
            write!(f, "{}", nontrivial.join(""))
        }
    }
}

impl Permutation {
    /// The identity permutation on `n` points.
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..=n).collect(),
        }
    }

    /// The long cycle `(1 2 … n)`, mapping `p` to `p + 1` and `n` to `1`.
    pub fn full_cycle(n: usize) -> Permutation {
        let mut image: Vec<usize> = (1..=n + 1).collect();
        image[0] = 0;
        if n > 0 {
            image[n] = 1;
        }
        Permutation { image }
    }

    /// Builds a permutation from the images of `1, …, n` (`images[i]` is the
    /// image of point `i + 1`).
    pub fn from_images(images: &[usize]) -> Result<Permutation, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::EmptyDomain);
        }
        let mut seen = vec![false; n + 1];
        for &v in images {
            if v < 1 || v > n {
                return Err(PermError::PointOutOfRange { point: v, n });
            }
            if seen[v] {
                return Err(PermError::NotBijective { value: v });
            }
            seen[v] = true;
        }
        let mut image = Vec::with_capacity(n + 1);
        image.push(0);
        image.extend_from_slice(images);
        Ok(Permutation { image })
    }

    /// Builds a permutation on `n` points from disjoint cycles; points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation, PermError> {
        if n == 0 {
            return Err(PermError::EmptyDomain);
        }
        let mut image: Vec<usize> = (0..=n).collect();
        let mut moved = vec![false; n + 1];
        for cycle in cycles {
            for &p in cycle {
                if p < 1 || p > n {
                    return Err(PermError::PointOutOfRange { point: p, n });
                }
                if moved[p] {
                    return Err(PermError::DuplicateElement { element: p });
                }
                moved[p] = true;
            }
            for i in 0..cycle.len() {
                image[cycle[i]] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.image.len() - 1
    }

    /// Image of a point.
    pub fn apply(&self, p: usize) -> usize {
        self.image[p]
    }

    /// Function composition `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "composing permutations of different degree");
        let n = self.n();
        let mut image = Vec::with_capacity(n + 1);
        image.push(0);
        for p in 1..=n {
            image.push(self.image[other.image[p]]);
        }
        Permutation { image }
    }

    pub fn inverse(&self) -> Permutation {
        let n = self.n();
        let mut image = vec![0; n + 1];
        for p in 1..=n {
            image[self.image[p]] = p;
        }
        Permutation { image }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Disjoint cycles, each rotated to start at its minimum element, sorted
    /// by that minimum.  Fixed points appear as singleton cycles.
    pub fn cycle_decomposition(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.image[start];
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.image[p];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image[p];
            }
        }
        count
    }

    /// Whether `a` and `b` lie on the same cycle.
    pub fn on_same_cycle(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        let mut p = self.image[a];
        while p != a {
            if p == b {
                return true;
            }
            p = self.image[p];
        }
        false
    }
}

/// A transposition `(s t)` with `s < t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    s: usize,
    t: usize,
}

impl Transposition {
    /// Normalizes the pair so the smaller point comes first.
    ///
    /// Panics on equal or zero points: those are not transpositions.
    pub fn new(a: usize, b: usize) -> Transposition {
        assert!(a != b, "transposition with equal points ({a} {b})");
        assert!(a >= 1 && b >= 1, "points are 1-based");
        Transposition {
            s: a.min(b),
            t: a.max(b),
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Image of a point under this transposition.
    pub fn apply(&self, p: usize) -> usize {
        if p == self.s {
            self.t
        } else if p == self.t {
            self.s
        } else {
            p
        }
    }
}

impl std::fmt::Display for Transposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} {})", self.s, self.t)
    }
}

/// Product of a tuple of transpositions on `n` points, rightmost factor
/// applied first.
pub fn product_of_transpositions(
    factors: &[Transposition],
    n: usize,
) -> Result<Permutation, PermError> {
    if n == 0 {
        return Err(PermError::EmptyDomain);
    }
    for f in factors {
        if f.t > n {
            return Err(PermError::PointOutOfRange { point: f.t, n });
        }
    }
    // Build the suffix product right to left.  Prepending a factor τ = (s t)
    // replaces r by τ∘r, which only changes the two positions r maps to s and
    // t; tracking the inverse alongside makes each step O(1).
    let mut r: Vec<usize> = (0..=n).collect();
    let mut r_inv: Vec<usize> = (0..=n).collect();
    for f in factors.iter().rev() {
        let a = r_inv[f.s];
        let b = r_inv[f.t];
        r[a] = f.t;
        r[b] = f.s;
        r_inv[f.s] = b;
        r_inv[f.t] = a;
    }
    Ok(Permutation { image: r })
}

/// How a transposition interacts with the cycles of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinCut {
    /// The two moved points lie on different cycles; multiplying merges them.
    Join,
    /// The two moved points lie on the same cycle; multiplying splits it.
    Cut,
}

/// Classifies `tau` against `rho`: `Cut` when both moved points lie on the
/// same cycle of `rho`, `Join` otherwise.  Multiplying a join onto `rho`
/// decreases its cycle count by one; a cut increases it by one.
pub fn classify_join_cut(tau: Transposition, rho: &Permutation) -> JoinCut {
    assert!(tau.t() <= rho.n(), "transposition outside the domain of rho");
    if rho.on_same_cycle(tau.s(), tau.t()) {
        JoinCut::Cut
    } else {
        JoinCut::Join
    }
}

/// Whether a sequence of distinct points of `{1, …, n}` lists them in an
/// order consistent with the circular order `1, 2, …, n`.
///
/// Concretely, there must be exactly one index at which reading the sequence
/// cyclically gives a strictly increasing run; equivalently the cyclic
/// sequence has exactly one descent.  Sequences of length at most 2 always
/// qualify.
pub fn is_cyclically_ordered(seq: &[usize], n: usize) -> Result<bool, PermError> {
    let mut seen = vec![false; n + 1];
    for &p in seq {
        if p < 1 || p > n {
            return Err(PermError::PointOutOfRange { point: p, n });
        }
        if seen[p] {
            return Err(PermError::DuplicateElement { element: p });
        }
        seen[p] = true;
    }
    let m = seq.len();
    if m <= 2 {
        return Ok(true);
    }
    let descents = (0..m).filter(|&i| seq[i] > seq[(i + 1) % m]).count();
    Ok(descents == 1)
}

//! Minimal factorizations of the long cycle and their trees.
//!
//! The cycle `(1 2 … n)` can be written as a product of `n − 1`
//! transpositions, and the ways of doing so are counted by `n^(n-2)` — the
//! number of labelled trees on `n` vertices.  This crate makes that
//! correspondence concrete:
//!
//! * [`perm`] — permutations of `{1..n}`, transpositions, fast products,
//!   and the join/cut classification of a factor against a suffix product.
//! * [`factorization`] — validated factorizations of the long cycle, their
//!   difference statistics, lexicographic enumeration, and a text format.
//! * [`chords`] — the numbered chord diagram of a factor tuple, the three
//!   conditions (spanning tree, noncrossing, ordered numbers) that
//!   characterize diagrams of factorizations, and the regions they cut out
//!   of the disk.
//! * [`tree`] — labelled trees, edge-deletion statistics, Prüfer codes,
//!   leaf counts, and seeded random sampling.
//! * [`bijection`] — the structure-preserving bijection [`to_tree`] /
//!   [`from_tree`] through the planar dual of the chord diagram, the plain
//!   [`push_map`] relabelling, and the composition with Prüfer codes.
//! * [`counting`] — leaf-count and refined distribution tables, and the
//!   closed formula for minimal transitive factorizations of any cycle
//!   type with an exhaustive cross-check.
//!
//! The bijection carries the difference distribution of a factorization to
//! the edge-deletion distribution of its tree:
//!
//! ```
//! use factree::{from_tree, to_tree, Factorization};
//!
//! let f: Factorization = "(2 3)(4 5)(3 6)(3 5)(1 6)(6 8)(8 9)(6 7)".parse()?;
//! let tree = to_tree(&f);
//! assert_eq!(
//!     f.difference_distribution().counts(),
//!     tree.edge_deletion_distribution().counts(),
//! );
//! assert_eq!(from_tree(&tree), f);
//! # Ok::<(), factree::FactorizationError>(())
//! ```

pub mod bijection;
pub mod chords;
pub mod counting;
pub mod factorization;
pub mod perm;
pub mod tree;

pub use bijection::{factorization_code, from_tree, push_map, to_tree, DualEdge, DualTree};
pub use chords::{ChordDiagram, ChordError, ConditionReport, Region};
pub use counting::{
    brute_force_minimal_transitive, for_each_minimal_transitive, hurwitz_minimal_formula,
    leaf_count_table, refined_distribution_table, CountingError, LeafCountRow, LeafCountTable,
    Partition, TranspositionTuple, DEFAULT_EVALUATION_BUDGET,
};
pub use factorization::{
    difference_index, enumerate_factorizations, infer_n, is_consecutive_pair,
    parse_transposition_line, DifferenceDistribution, Factorization, FactorizationError,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use perm::{
    classify_join_cut, is_cyclically_ordered, product_of_transpositions, JoinCut, PermError,
    Permutation, Transposition,
};
pub use tree::{
    count_trees_with_k_leaves, prufer_decode, prufer_encode, random_tree,
    EdgeDeletionDistribution, LabeledTree, TreeError,
};

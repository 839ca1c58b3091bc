//! The bijection between factorizations of the long cycle and labelled
//! trees, built from the planar dual of the chord diagram.
//!
//! [`to_tree`] forms the dual tree of the diagram's regions, roots it at the
//! region whose arc runs from `n` to `1`, and slides each chord number onto
//! the region on its far side from the root.  [`from_tree`] reverses this:
//! it embeds the tree in the plane with edge labels increasing clockwise
//! around every vertex, walks the contour clockwise, hands out arcs at each
//! vertex's last corner, and reads every chord off the two visits to its
//! edge.  The bijection preserves the difference statistics: the difference
//! distribution of a factorization equals the edge-deletion distribution of
//! its tree.
//!
//! [`push_map`] is the simpler relabelling bijection that pushes chord
//! numbers of the diagram's chord tree away from point 1; it does not
//! preserve the statistics.  [`factorization_code`] composes [`to_tree`]
//! with the Prüfer code, exhibiting a factorization as a plain sequence.

use crate::chords::{ChordDiagram, ChordError, Region};
use crate::factorization::Factorization;
use crate::perm::Transposition;
use crate::tree::{prufer_encode, LabeledTree, TreeError};

/// The dual tree of a chord diagram: one vertex per region, and for each
/// chord an edge, labelled by the chord number, between the two regions the
/// chord separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualTree {
    regions: Vec<Region>,
    edges: Vec<DualEdge>,
}

/// An edge of a [`DualTree`]: the chord's number and the indices (into
/// [`DualTree::regions`]) of the two regions it separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualEdge {
    pub chord: usize,
    pub regions: (usize, usize),
}

impl DualTree {
    /// Builds the dual of a diagram satisfying the spanning-tree and
    /// noncrossing conditions.
    pub fn from_diagram(diagram: &ChordDiagram) -> Result<DualTree, ChordError> {
        let regions = diagram.regions()?;
        let n = diagram.n();
        // bordering[c - 2] lists the regions whose boundary carries chord c.
        let mut bordering: Vec<Vec<usize>> = vec![Vec::new(); n.saturating_sub(1)];
        for (idx, region) in regions.iter().enumerate() {
            for &c in &region.boundary_chords {
                bordering[c - 2].push(idx);
            }
        }
        let edges: Vec<DualEdge> = bordering
            .into_iter()
            .enumerate()
            .map(|(i, sides)| {
                assert_eq!(sides.len(), 2, "a chord separates exactly two regions");
                DualEdge { chord: i + 2, regions: (sides[0], sides[1]) }
            })
            .collect();
        Ok(DualTree { regions, edges })
    }

    /// The regions, sorted by arc; vertex `i` of the dual is `regions()[i]`.
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    /// Slides the edge labels into vertex labels: the region with arc
    /// `(n, 1)` becomes vertex 1, and every other region takes the chord
    /// number of its edge toward that root.
    pub fn to_labeled_tree(&self) -> LabeledTree {
        let n = self.regions.len();
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for edge in &self.edges {
            let (a, b) = edge.regions;
            adjacency[a].push((b, edge.chord));
            adjacency[b].push((a, edge.chord));
        }
        let root = self
            .regions
            .iter()
            .position(|r| r.arc == n)
            .expect("some region carries the arc from n to 1");
        let mut labels = vec![0usize; n];
        labels[root] = 1;
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root] = true;
        let mut tree_edges = Vec::with_capacity(n - 1);
        while let Some(v) = stack.pop() {
            for &(w, chord) in &adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    labels[w] = chord;
                    tree_edges.push((labels[v], chord));
                    stack.push(w);
                }
            }
        }
        LabeledTree::from_edges(n, tree_edges).expect("the dual of a diagram is a tree")
    }
}

/// Maps a factorization to its labelled tree through the planar dual of its
/// chord diagram.
pub fn to_tree(f: &Factorization) -> LabeledTree {
    let diagram = ChordDiagram::from_factorization(f);
    DualTree::from_diagram(&diagram)
        .expect("the diagram of a factorization satisfies the conditions")
        .to_labeled_tree()
}

/// Inverts [`to_tree`]: recovers the unique factorization whose tree is `t`.
///
/// Rooting `t` at vertex 1 slides each vertex label onto its parent edge;
/// the plane embedding with edge labels increasing clockwise at every vertex
/// is then unique.  Walking the contour clockwise from the root's
/// lowest-labelled edge, each non-root vertex receives the next free arc at
/// its final corner (the root keeps the arc from `n` to `1`), and the chord
/// of edge label `i` joins the points at which its two traversals begin —
/// giving factor `σ_{i-1}`.
pub fn from_tree(t: &LabeledTree) -> Factorization {
    let n = t.n();
    if n == 1 {
        return Factorization::validate(1, Vec::new()).expect("empty factorization");
    }
    // parent[v] for the tree rooted at 1; the edge {v, parent[v]} has label v.
    let adjacency = t.adjacency();
    let mut parent = vec![0usize; n + 1];
    let mut order = vec![1usize];
    let mut visited = vec![false; n + 1];
    visited[1] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &w in &adjacency[v] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                order.push(w);
            }
        }
    }
    // Clockwise rotation at v: incident edge labels ascending.  The edge
    // labelled l at v leads to the parent when l == v, else to the child l.
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for v in 2..=n {
        rotations[v].push(v);
        rotations[parent[v]].push(v);
    }
    for rotation in &mut rotations {
        rotation.sort_unstable();
    }

    let mut endpoints: Vec<[usize; 2]> = vec![[0; 2]; n + 1];
    let mut traversals = vec![0usize; n + 1];
    let mut arcs_assigned = 0usize;
    let mut at = 1usize;
    let mut label = rotations[1][0];
    loop {
        // Traverse the edge `label` away from `at`, recording the point at
        // which this traversal begins: one past the arcs handed out so far.
        assert!(traversals[label] < 2, "each edge is walked once per direction");
        endpoints[label][traversals[label]] = arcs_assigned + 1;
        traversals[label] += 1;
        let next = if label == at { parent[at] } else { label };
        let rotation = &rotations[next];
        let is_last_corner = label == *rotation.last().expect("no isolated vertices");
        if next == 1 && is_last_corner {
            break;
        }
        if is_last_corner {
            arcs_assigned += 1;
        }
        let pos = rotation.binary_search(&label).expect("incident label");
        label = rotation[(pos + 1) % rotation.len()];
        at = next;
    }
    assert_eq!(arcs_assigned, n - 1, "every non-root vertex takes one arc");
    assert!(
        traversals[2..=n].iter().all(|&c| c == 2),
        "the contour walk covers the whole tree"
    );

    let factors: Vec<Transposition> = (2..=n)
        .map(|l| Transposition::new(endpoints[l][0], endpoints[l][1]))
        .collect();
    Factorization::validate(n, factors)
        .expect("the contour walk of a labelled tree yields a factorization of the long cycle")
}

/// The plain relabelling bijection: in the tree formed by the factor pairs
/// themselves (factor `σ_i` giving edge number `i + 1`), push each edge
/// number away from point 1 onto its far endpoint; point 1 keeps label 1.
///
/// This is also a bijection onto labelled trees, but unlike [`to_tree`] it
/// does not carry the difference distribution to the edge-deletion
/// distribution.
pub fn push_map(f: &Factorization) -> LabeledTree {
    let n = f.n();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (i, factor) in f.factors().iter().enumerate() {
        let number = i + 2;
        adjacency[factor.s()].push((factor.t(), number));
        adjacency[factor.t()].push((factor.s(), number));
    }
    let mut labels = vec![0usize; n + 1];
    labels[1] = 1;
    let mut visited = vec![false; n + 1];
    visited[1] = true;
    let mut stack = vec![1usize];
    let mut edges = Vec::with_capacity(n - 1);
    while let Some(v) = stack.pop() {
        for &(w, number) in &adjacency[v] {
            if !visited[w] {
                visited[w] = true;
                labels[w] = number;
                edges.push((labels[v], number));
                stack.push(w);
            }
        }
    }
    LabeledTree::from_edges(n, edges).expect("the factor pairs of a factorization form a tree")
}

/// The Prüfer code of [`to_tree`]: a bijection from factorizations on
/// `n >= 2` points onto sequences in `{1..n}^(n-2)`.
pub fn factorization_code(f: &Factorization) -> Result<Vec<usize>, TreeError> {
    prufer_encode(&to_tree(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::enumerate_factorizations;
    use crate::tree::prufer_decode;
    use std::collections::BTreeSet;

    fn example_f0() -> Factorization {
        "(2 3)(4 5)(3 6)(3 5)(1 6)(6 8)(8 9)(6 7)".parse().unwrap()
    }

    fn example_t1() -> LabeledTree {
        LabeledTree::from_edges(
            11,
            vec![
                (4, 7),
                (3, 7),
                (2, 3),
                (3, 9),
                (1, 3),
                (1, 5),
                (5, 6),
                (5, 10),
                (1, 8),
                (8, 11),
            ],
        )
        .unwrap()
    }

    fn tree(n: usize, edges: &[(usize, usize)]) -> LabeledTree {
        LabeledTree::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn to_tree_on_three_points_matches_hand_computation() {
        let cases = [
            ("(1 2)(2 3)", vec![(1, 2), (1, 3)]),
            ("(1 3)(1 2)", vec![(1, 2), (2, 3)]),
            ("(2 3)(1 3)", vec![(1, 3), (2, 3)]),
        ];
        for (f, edges) in cases {
            let f: Factorization = f.parse().unwrap();
            assert_eq!(to_tree(&f), tree(3, &edges), "for {f}");
        }
    }

    #[test]
    fn from_tree_reproduces_the_eleven_point_example() {
        let expected: Factorization =
            "(5 6)(1 6)(2 3)(6 9)(6 7)(1 3)(9 11)(3 4)(7 8)(9 10)"
                .parse()
                .unwrap();
        assert_eq!(from_tree(&example_t1()), expected);
    }

    #[test]
    fn example_round_trips_both_ways() {
        let t = example_t1();
        assert_eq!(to_tree(&from_tree(&t)), t);
        let f = example_f0();
        assert_eq!(from_tree(&to_tree(&f)), f);
    }

    #[test]
    fn difference_distribution_transfers_to_edge_deletion() {
        let f = example_f0();
        assert_eq!(
            f.difference_distribution().counts(),
            to_tree(&f).edge_deletion_distribution().counts()
        );
        for f in enumerate_factorizations(5).unwrap() {
            assert_eq!(
                f.difference_distribution().counts(),
                to_tree(&f).edge_deletion_distribution().counts(),
                "for {f}"
            );
        }
    }

    #[test]
    fn smallest_cases() {
        let empty = Factorization::validate(1, Vec::new()).unwrap();
        assert_eq!(to_tree(&empty), tree(1, &[]));
        assert_eq!(from_tree(&tree(1, &[])), empty);

        let single: Factorization = "(1 2)".parse().unwrap();
        assert_eq!(to_tree(&single), tree(2, &[(1, 2)]));
        assert_eq!(from_tree(&tree(2, &[(1, 2)])), single);
        assert_eq!(push_map(&single), tree(2, &[(1, 2)]));
    }

    #[test]
    fn bijective_on_small_domains() {
        for n in 1..=5usize {
            let mut images = BTreeSet::new();
            let mut count = 0usize;
            for f in enumerate_factorizations(n).unwrap() {
                let t = to_tree(&f);
                assert_eq!(from_tree(&t), f, "round trip for {f}");
                images.insert(t);
                count += 1;
            }
            assert_eq!(images.len(), count, "injective at n={n}");
            let trees = if n < 3 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(count, trees, "image covers all trees at n={n}");
        }
    }

    #[test]
    fn from_tree_covers_all_trees_of_five_vertices() {
        // Decode every Prüfer code, invert, and come back.
        let n = 5usize;
        let mut seen = BTreeSet::new();
        for code_index in 0..n.pow(n as u32 - 2) {
            let mut code = Vec::with_capacity(n - 2);
            let mut rest = code_index;
            for _ in 0..n - 2 {
                code.push(rest % n + 1);
                rest /= n;
            }
            let t = prufer_decode(&code).unwrap();
            let f = from_tree(&t);
            assert_eq!(to_tree(&f), t);
            seen.insert(f);
        }
        assert_eq!(seen.len(), n.pow(n as u32 - 2));
    }

    #[test]
    fn dual_tree_exposes_regions_and_labelled_edges() {
        let d = ChordDiagram::from_factorization(&example_f0());
        let dual = DualTree::from_diagram(&d).unwrap();
        assert_eq!(dual.regions().len(), 9);
        assert_eq!(dual.edges().len(), 8);
        let mut chord_labels: Vec<usize> = dual.edges().iter().map(|e| e.chord).collect();
        chord_labels.sort_unstable();
        assert_eq!(chord_labels, (2..=9).collect::<Vec<_>>());
        for edge in dual.edges() {
            assert_ne!(edge.regions.0, edge.regions.1);
        }
    }

    #[test]
    fn push_map_relabels_the_chord_tree() {
        // ((1 2),(2 3)): edges {1,2} numbered 2 and {2,3} numbered 3; pushing
        // away from point 1 keeps the path shape.
        let f: Factorization = "(1 2)(2 3)".parse().unwrap();
        assert_eq!(push_map(&f), tree(3, &[(1, 2), (2, 3)]));
        let shape = push_map(&example_f0());
        assert_eq!(shape.n(), 9);
        assert_eq!(shape.edges().len(), 8);
    }

    #[test]
    fn push_map_is_injective_on_five_points() {
        let mut images = BTreeSet::new();
        let mut count = 0usize;
        for f in enumerate_factorizations(5).unwrap() {
            images.insert(push_map(&f));
            count += 1;
        }
        assert_eq!(count, 125);
        assert_eq!(images.len(), 125);
    }

    #[test]
    fn first_factorization_where_push_map_and_to_tree_differ() {
        let mut witness = None;
        'outer: for n in 1..=3 {
            for f in enumerate_factorizations(n).unwrap() {
                if push_map(&f) != to_tree(&f) {
                    witness = Some(f);
                    break 'outer;
                }
            }
        }
        let f = witness.expect("maps differ somewhere by n=3");
        assert_eq!(f.to_string(), "(1 2)(2 3)");
        assert_eq!(push_map(&f), tree(3, &[(1, 2), (2, 3)]));
        assert_eq!(to_tree(&f), tree(3, &[(1, 2), (1, 3)]));
    }

    #[test]
    fn code_of_two_points_is_empty() {
        let f: Factorization = "(1 2)".parse().unwrap();
        assert_eq!(factorization_code(&f).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn code_rejects_single_point() {
        let empty = Factorization::validate(1, Vec::new()).unwrap();
        assert_eq!(
            factorization_code(&empty).unwrap_err(),
            TreeError::TooSmallForCode { n: 1 }
        );
    }

    #[test]
    fn codes_of_four_points_cover_all_sixteen() {
        let mut codes = BTreeSet::new();
        for f in enumerate_factorizations(4).unwrap() {
            codes.insert(factorization_code(&f).unwrap());
        }
        assert_eq!(codes.len(), 16);
        for a in 1..=4 {
            for b in 1..=4 {
                assert!(codes.contains(&vec![a, b]));
            }
        }
    }

    #[test]
    fn code_composes_with_the_tree_code() {
        let t = example_t1();
        assert_eq!(
            factorization_code(&from_tree(&t)).unwrap(),
            prufer_encode(&t).unwrap()
        );
    }
}

//! Numbered chord diagrams of factor tuples, the three conditions that
//! characterize valid diagrams, and their regions.
//!
//! Points `1, …, n` sit clockwise on a circle and the factor `σ_i = (s t)` is
//! drawn as a chord numbered `i + 1` joining points `s` and `t`.  A diagram
//! arises from a factorization of the long cycle exactly when
//!
//! * the chords form a spanning tree of the points,
//! * no two chords cross (chords sharing an endpoint do not cross), and
//! * around every region, read clockwise starting just after the region's
//!   unique circle arc, the chord numbers strictly increase — equivalently,
//!   sweeping clockwise across the interior at every point, the chord numbers
//!   strictly decrease.
//!
//! Under the first two conditions the chords split the disk into exactly `n`
//! regions, each touching the circle along a single arc.

use crate::factorization::{Factorization, FactorizationError};
use crate::perm::Transposition;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("point count must be positive")]
    EmptyDomain,
    #[error("expected {expected} chords for n={n}, got {got}")]
    WrongChordCount { n: usize, expected: usize, got: usize },
    #[error("chord {chord} joins point {point}, outside 1..={n}")]
    PointOutOfRange { chord: usize, point: usize, n: usize },
    #[error("chord {chord} joins a point to itself")]
    DegenerateChord { chord: usize },
    #[error("diagram conditions violated: {report}")]
    ConditionsNotMet { report: Box<ConditionReport> },
    #[error("diagram reads back as an invalid factorization: {0}")]
    InvalidFactorization(#[from] FactorizationError),
}

/// A circle diagram: `n` points clockwise, and chords numbered `2, …, n`
/// where chord `c` joins the two points of `chords()[c - 2]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    n: usize,
    chords: Vec<(usize, usize)>,
}

impl ChordDiagram {
    /// Builds a diagram from `n - 1` endpoint pairs; pairs are normalized so
    /// the smaller point comes first.  The diagram conditions are *not*
    /// required to hold.
    pub fn new(
        n: usize,
        chords: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<ChordDiagram, ChordError> {
        if n == 0 {
            return Err(ChordError::EmptyDomain);
        }
        let mut normalized = Vec::new();
        for (idx, (a, b)) in chords.into_iter().enumerate() {
            let chord = idx + 2;
            if a == b {
                return Err(ChordError::DegenerateChord { chord });
            }
            for point in [a, b] {
                if point < 1 || point > n {
                    return Err(ChordError::PointOutOfRange { chord, point, n });
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        if normalized.len() != n - 1 {
            return Err(ChordError::WrongChordCount {
                n,
                expected: n - 1,
                got: normalized.len(),
            });
        }
        Ok(ChordDiagram { n, chords: normalized })
    }

    /// The diagram of a factorization: factor `σ_i` becomes chord `i + 1`.
    pub fn from_factorization(f: &Factorization) -> ChordDiagram {
        ChordDiagram::new(f.n(), f.factors().iter().map(|t| (t.s(), t.t())))
            .expect("factorization factors are validated endpoint pairs")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Endpoint pairs indexed by chord number minus 2.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// Endpoints of a chord by its number in `2..=n`.
    pub fn chord(&self, number: usize) -> (usize, usize) {
        self.chords[number - 2]
    }

    /// Evaluates the diagram conditions, with a witness for each failure.
    pub fn check_conditions(&self) -> ConditionReport {
        self.evaluate().0
    }

    /// The regions cut out of the disk, sorted by arc.  Requires the
    /// spanning-tree and noncrossing conditions, which guarantee exactly `n`
    /// regions with one arc each.
    pub fn regions(&self) -> Result<Vec<Region>, ChordError> {
        let (report, regions) = self.evaluate();
        regions.ok_or(ChordError::ConditionsNotMet { report: Box::new(report) })
    }

    /// Reads the factor tuple back off the diagram: chord `c` becomes factor
    /// `σ_{c-1}`.  Requires all diagram conditions, which guarantee the tuple
    /// multiplies to the long cycle.
    pub fn to_factorization(&self) -> Result<Factorization, ChordError> {
        let (report, _) = self.evaluate();
        if !report.all_hold() {
            return Err(ChordError::ConditionsNotMet { report: Box::new(report) });
        }
        let factors: Vec<Transposition> = self
            .chords
            .iter()
            .map(|&(s, t)| Transposition::new(s, t))
            .collect();
        Ok(Factorization::validate(self.n, factors)?)
    }

    /// Renders the diagram as a standalone SVG: point 1 at the top, points
    /// clockwise, chords as straight segments with circled numbers.
    pub fn to_svg(&self) -> String {
        let size = 440.0;
        let center = size / 2.0;
        let radius = 170.0;
        let position = |p: usize| -> (f64, f64) {
            let angle = 2.0 * std::f64::consts::PI * (p as f64 - 1.0) / self.n as f64;
            // Screen y grows downward, so this walks clockwise from the top.
            (center + radius * angle.sin(), center - radius * angle.cos())
        };
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {size:.0} {size:.0}\">\n"
        ));
        svg.push_str(&format!(
            "  <circle cx=\"{center:.1}\" cy=\"{center:.1}\" r=\"{radius:.1}\" \
             fill=\"none\" stroke=\"black\"/>\n"
        ));
        for (idx, &(s, t)) in self.chords.iter().enumerate() {
            let (x1, y1) = position(s);
            let (x2, y2) = position(t);
            svg.push_str(&format!(
                "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" \
                 stroke=\"black\"/>\n"
            ));
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            svg.push_str(&format!(
                "  <circle cx=\"{mx:.1}\" cy=\"{my:.1}\" r=\"11\" fill=\"white\" \
                 stroke=\"black\"/>\n"
            ));
            svg.push_str(&format!(
                "  <text x=\"{mx:.1}\" y=\"{my:.1}\" text-anchor=\"middle\" \
                 dominant-baseline=\"central\" font-size=\"12\">{}</text>\n",
                idx + 2
            ));
        }
        for p in 1..=self.n {
            let (x, y) = position(p);
            svg.push_str(&format!(
                "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"black\"/>\n"
            ));
            let label_r = radius + 16.0;
            let angle = 2.0 * std::f64::consts::PI * (p as f64 - 1.0) / self.n as f64;
            let (lx, ly) = (center + label_r * angle.sin(), center - label_r * angle.cos());
            svg.push_str(&format!(
                "  <text x=\"{lx:.1}\" y=\"{ly:.1}\" text-anchor=\"middle\" \
                 dominant-baseline=\"central\" font-size=\"14\">{p}</text>\n"
            ));
        }
        svg.push_str("</svg>\n");
        svg
    }

    /// Core evaluation: the condition report, plus the regions whenever the
    /// spanning-tree and noncrossing conditions both hold.
    fn evaluate(&self) -> (ConditionReport, Option<Vec<Region>>) {
        let mut report = ConditionReport {
            spanning_tree: true,
            noncrossing: true,
            vertex_order: None,
            region_order: None,
            cycle_witness: None,
            crossing_witness: None,
            vertex_witness: None,
            region_witness: None,
        };
        if let Some(cycle) = self.find_chord_cycle() {
            report.spanning_tree = false;
            report.cycle_witness = Some(cycle);
        }
        if let Some(pair) = self.find_crossing() {
            report.noncrossing = false;
            report.crossing_witness = Some(pair);
        }
        if report.noncrossing {
            match self.check_vertex_order() {
                Ok(()) => report.vertex_order = Some(true),
                Err(v) => {
                    report.vertex_order = Some(false);
                    report.vertex_witness = Some(v);
                }
            }
        }
        let mut regions = None;
        if report.spanning_tree && report.noncrossing {
            let traced = self.trace_regions();
            match check_region_order(&traced) {
                Ok(()) => report.region_order = Some(true),
                Err(arc) => {
                    report.region_order = Some(false);
                    report.region_witness = Some(arc);
                }
            }
            debug_assert_eq!(
                report.vertex_order, report.region_order,
                "the two number-order conditions must agree under the first two"
            );
            regions = Some(traced);
        }
        (report, regions)
    }

    /// A cycle among the chords, as chord numbers, if one exists.  Since
    /// there are `n - 1` chords, being acyclic is the same as being a
    /// spanning tree.
    fn find_chord_cycle(&self) -> Option<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        // Adjacency of the chord forest built so far: (neighbor, chord number).
        let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n + 1];
        for (idx, &(s, t)) in self.chords.iter().enumerate() {
            let number = idx + 2;
            if !uf.union(s, t) {
                let mut chord_path =
                    chord_path_in_forest(&adjacency, s, t).expect("s and t already connected");
                chord_path.push(number);
                return Some(chord_path);
            }
            adjacency[s].push((t, number));
            adjacency[t].push((s, number));
        }
        None
    }

    /// The lexicographically first pair of crossing chord numbers, if any.
    /// Chords sharing one endpoint do not cross; coincident chords (equal
    /// endpoint pairs) overlap along their whole length and are reported as
    /// crossing.
    fn find_crossing(&self) -> Option<(usize, usize)> {
        for i in 0..self.chords.len() {
            for j in i + 1..self.chords.len() {
                let (s, t) = self.chords[i];
                let (u, w) = self.chords[j];
                let crossing = if (s, t) == (u, w) {
                    true
                } else if s == u || s == w || t == u || t == w {
                    false
                } else {
                    self.in_clockwise_span(s, t, u) != self.in_clockwise_span(s, t, w)
                };
                if crossing {
                    return Some((i + 2, j + 2));
                }
            }
        }
        None
    }

    /// Whether `x` lies strictly inside the clockwise open span from `s` to `t`.
    fn in_clockwise_span(&self, s: usize, t: usize, x: usize) -> bool {
        let dx = (x + self.n - s) % self.n;
        let dt = (t + self.n - s) % self.n;
        0 < dx && dx < dt
    }

    /// Checks that at every point, sweeping clockwise across the interior
    /// (far endpoints in clockwise order), the chord numbers strictly
    /// decrease.  Returns the first offending point.
    fn check_vertex_order(&self) -> Result<(), usize> {
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n + 1];
        for (idx, &(s, t)) in self.chords.iter().enumerate() {
            let number = idx + 2;
            incident[s].push(((t + self.n - s) % self.n, number));
            incident[t].push(((s + self.n - t) % self.n, number));
        }
        for v in 1..=self.n {
            incident[v].sort_unstable();
            let decreasing = incident[v]
                .windows(2)
                .all(|pair| pair[0].1 > pair[1].1);
            if !decreasing {
                return Err(v);
            }
        }
        Ok(())
    }

    /// Traces the interior regions of the diagram.  Callers must have
    /// verified the spanning-tree and noncrossing conditions.
    fn trace_regions(&self) -> Vec<Region> {
        if self.n == 1 {
            return vec![Region { arc: 1, boundary_chords: Vec::new() }];
        }
        let graph = self.plane_graph();
        let faces = graph.faces();
        let mut regions = Vec::with_capacity(self.n);
        let mut outer_seen = false;
        for face in faces {
            let arcs: Vec<usize> = face
                .iter()
                .filter(|&&(e, _)| e < self.n)
                .map(|&(e, _)| e + 1)
                .collect();
            if arcs.len() == self.n {
                assert!(!outer_seen, "two faces bounded by the whole circle");
                outer_seen = true;
                continue;
            }
            assert_eq!(
                arcs.len(),
                1,
                "under the spanning-tree and noncrossing conditions every \
                 interior region has exactly one arc"
            );
            let arc = arcs[0];
            let arc_pos = face
                .iter()
                .position(|&(e, _)| e + 1 == arc)
                .expect("arc located above");
            // Clockwise boundary starting immediately after the arc.
            let boundary_chords: Vec<usize> = face[arc_pos + 1..]
                .iter()
                .chain(face[..arc_pos].iter())
                .map(|&(e, _)| e - self.n + 2)
                .collect();
            regions.push(Region { arc, boundary_chords });
        }
        assert!(outer_seen, "the outer face is bounded by the whole circle");
        assert_eq!(regions.len(), self.n, "a valid diagram has n regions");
        regions.sort_by_key(|r| r.arc);
        regions
    }

    /// The diagram as a plane multigraph with clockwise rotations.
    ///
    /// Edge ids: arc `j` (joining `j` and `j mod n + 1`) has id `j - 1`;
    /// chord `c` has id `n + c - 2`.  The clockwise order around point `v` is
    /// the arc toward `v + 1`, then the chords by clockwise distance of their
    /// far endpoint, then the arc toward `v - 1`.
    fn plane_graph(&self) -> PlaneGraph {
        let n = self.n;
        let mut endpoints: Vec<(usize, usize)> = (1..=n).map(|j| (j, j % n + 1)).collect();
        endpoints.extend(self.chords.iter().copied());
        let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let mut at_v: Vec<(usize, usize)> = Vec::new();
            for (idx, &(s, t)) in self.chords.iter().enumerate() {
                let id = n + idx;
                if s == v {
                    at_v.push(((t + n - v) % n, id));
                } else if t == v {
                    at_v.push(((s + n - v) % n, id));
                }
            }
            at_v.sort_unstable();
            let mut rotation = Vec::with_capacity(at_v.len() + 2);
            rotation.push(v - 1); // arc from v to v + 1
            rotation.extend(at_v.into_iter().map(|(_, id)| id));
            rotation.push((v + n - 2) % n); // arc from v - 1 to v
            rotations[v] = rotation;
        }
        PlaneGraph::new(endpoints, rotations)
    }
}

/// One interior region: its circle arc (`arc = j` runs from point `j` to
/// `j mod n + 1`) and the chord numbers along its boundary, clockwise,
/// starting immediately after the arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub arc: usize,
    pub boundary_chords: Vec<usize>,
}

fn check_region_order(regions: &[Region]) -> Result<(), usize> {
    for region in regions {
        let increasing = region
            .boundary_chords
            .windows(2)
            .all(|pair| pair[0] < pair[1]);
        if !increasing {
            return Err(region.arc);
        }
    }
    Ok(())
}

/// Outcome of the diagram conditions.  A flag is false exactly when a
/// witness is recorded for it; the two number-order conditions are `None`
/// when their preconditions fail (both need noncrossing chords, and the
/// region condition also needs the spanning-tree condition).  When both are
/// evaluated they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// The chords form a spanning tree of the points.
    pub spanning_tree: bool,
    /// No two chords cross.
    pub noncrossing: bool,
    /// Chord numbers strictly decrease sweeping clockwise across the
    /// interior at every point.
    pub vertex_order: Option<bool>,
    /// Chord numbers strictly increase clockwise around every region,
    /// starting immediately after the region's arc.
    pub region_order: Option<bool>,
    /// Chord numbers forming a cycle.
    pub cycle_witness: Option<Vec<usize>>,
    /// A pair of crossing chord numbers.
    pub crossing_witness: Option<(usize, usize)>,
    /// A point whose clockwise sweep is not strictly decreasing.
    pub vertex_witness: Option<usize>,
    /// The arc of a region whose boundary numbers are not increasing.
    pub region_witness: Option<usize>,
}

impl ConditionReport {
    /// Whether the conditions required to read a factorization back off the
    /// diagram all hold.
    pub fn all_hold(&self) -> bool {
        self.spanning_tree && self.noncrossing && self.region_order == Some(true)
    }
}

impl std::fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let opt = |v: Option<bool>| match v {
            Some(b) => b.to_string(),
            None => "not evaluated".to_string(),
        };
        write!(
            f,
            "spanning_tree: {}\nnoncrossing: {}\nvertex_order: {}\nregion_order: {}",
            self.spanning_tree,
            self.noncrossing,
            opt(self.vertex_order),
            opt(self.region_order)
        )?;
        if let Some(cycle) = &self.cycle_witness {
            let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
            write!(f, "\nwitness: chords {} form a cycle", parts.join(","))?;
        }
        if let Some((a, b)) = self.crossing_witness {
            write!(f, "\nwitness: chords {a} and {b} cross")?;
        }
        if let Some(v) = self.vertex_witness {
            write!(f, "\nwitness: numbers out of order at point {v}")?;
        }
        if let Some(arc) = self.region_witness {
            write!(f, "\nwitness: numbers out of order in the region of arc {arc}")?;
        }
        Ok(())
    }
}

/// Chord numbers along the forest path between two connected points.
fn chord_path_in_forest(
    adjacency: &[Vec<(usize, usize)>],
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let mut via: Vec<Option<(usize, usize)>> = vec![None; adjacency.len()];
    via[from] = Some((from, 0));
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            let mut chords = Vec::new();
            let mut p = to;
            while p != from {
                let (prev, chord) = via[p].expect("visited");
                chords.push(chord);
                p = prev;
            }
            chords.reverse();
            return Some(chords);
        }
        for &(w, chord) in &adjacency[v] {
            if via[w].is_none() {
                via[w] = Some((v, chord));
                stack.push(w);
            }
        }
    }
    None
}

/// A plane multigraph given by clockwise rotations, supporting face tracing.
struct PlaneGraph {
    endpoints: Vec<(usize, usize)>,
    rotations: Vec<Vec<usize>>,
    /// Per edge, its index within the rotation at each of its endpoints.
    positions: Vec<[usize; 2]>,
}

impl PlaneGraph {
    fn new(endpoints: Vec<(usize, usize)>, rotations: Vec<Vec<usize>>) -> PlaneGraph {
        let mut positions = vec![[usize::MAX; 2]; endpoints.len()];
        for (v, rotation) in rotations.iter().enumerate() {
            for (idx, &e) in rotation.iter().enumerate() {
                let side = if endpoints[e].0 == v { 0 } else { 1 };
                positions[e][side] = idx;
            }
        }
        PlaneGraph { endpoints, rotations, positions }
    }

    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.endpoints[e];
        if v == a {
            b
        } else {
            a
        }
    }

    /// All faces, each as the cyclic list of directed edges `(edge, from)`.
    ///
    /// The walk leaves along the clockwise predecessor of the arrival edge,
    /// which traces every face clockwise with the face to the right of
    /// travel; with points labelled clockwise this gives interior regions in
    /// clockwise boundary order.
    fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut visited = vec![false; 2 * self.endpoints.len()];
        let direction = |e: usize, from: usize| -> usize {
            2 * e + usize::from(self.endpoints[e].0 != from)
        };
        let mut faces = Vec::new();
        for start_edge in 0..self.endpoints.len() {
            for start_from in [self.endpoints[start_edge].0, self.endpoints[start_edge].1] {
                if visited[direction(start_edge, start_from)] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut e, mut from) = (start_edge, start_from);
                loop {
                    visited[direction(e, from)] = true;
                    face.push((e, from));
                    let head = self.other(e, from);
                    let rotation = &self.rotations[head];
                    let side = usize::from(self.endpoints[e].0 != head);
                    let pos = self.positions[e][side];
                    let next =
                        rotation[(pos + rotation.len() - 1) % rotation.len()];
                    (e, from) = (next, head);
                    if (e, from) == (start_edge, start_from) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
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

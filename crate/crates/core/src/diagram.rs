//! Abstract Dynkin diagrams.
//!
//! Nodes carry symbolic names; their declaration order is the canonical
//! order used by every set-valued output. Each connected component is
//! classified on construction, together with a Bourbaki labelling of its
//! nodes, which is what the opposition involution and the standard
//! generators are expressed in.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::graph::RootGraph;
use crate::rootset::{RootSet, MAX_ROOTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("not a Dynkin diagram: {0}")]
    NotADynkinDiagram(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("diagram has {0} nodes; at most {MAX_ROOTS} are supported")]
    TooManyNodes(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeFamily {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl TypeFamily {
    pub const ALL: [TypeFamily; 9] = [
        TypeFamily::A,
        TypeFamily::B,
        TypeFamily::C,
        TypeFamily::D,
        TypeFamily::E6,
        TypeFamily::E7,
        TypeFamily::E8,
        TypeFamily::F4,
        TypeFamily::G2,
    ];

    /// Parses `A`, `B`, `C`, `D`, `E6`, `E7`, `E8`, `F4`, `G2`, and also
    /// accepts `E`, `F`, `G` (the rank then fixes the exceptional type).
    pub fn parse(s: &str, rank: Option<usize>) -> Option<TypeFamily> {
        Some(match (s, rank) {
            ("A", _) => TypeFamily::A,
            ("B", _) => TypeFamily::B,
            ("C", _) => TypeFamily::C,
            ("D", _) => TypeFamily::D,
            ("E6", _) | ("E", Some(6)) => TypeFamily::E6,
            ("E7", _) | ("E", Some(7)) => TypeFamily::E7,
            ("E8", _) | ("E", Some(8)) => TypeFamily::E8,
            ("F4", _) | ("F", Some(4)) => TypeFamily::F4,
            ("G2", _) | ("G", Some(2)) => TypeFamily::G2,
            _ => return None,
        })
    }

    fn letter(self) -> &'static str {
        match self {
            TypeFamily::A => "A",
            TypeFamily::B => "B",
            TypeFamily::C => "C",
            TypeFamily::D => "D",
            TypeFamily::E6 | TypeFamily::E7 | TypeFamily::E8 => "E",
            TypeFamily::F4 => "F",
            TypeFamily::G2 => "G",
        }
    }
}

/// Classified type of a connected diagram, e.g. `B3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentType {
    pub family: TypeFamily,
    pub rank: usize,
}

impl ComponentType {
    /// Checks rank against family, after the B2 = C2 and D3 = A3
    /// canonicalisations.
    pub fn new(family: TypeFamily, rank: usize) -> Option<Self> {
        let ok = match family {
            TypeFamily::A => rank >= 1,
            TypeFamily::B => rank >= 2,
            TypeFamily::C => rank >= 3,
            TypeFamily::D => rank >= 4,
            TypeFamily::E6 => rank == 6,
            TypeFamily::E7 => rank == 7,
            TypeFamily::E8 => rank == 8,
            TypeFamily::F4 => rank == 4,
            TypeFamily::G2 => rank == 2,
        };
        ok.then_some(ComponentType { family, rank })
    }

    /// Maps the non-canonical spellings C2 and D3 onto B2 and A3.
    pub fn canonical(family: TypeFamily, rank: usize) -> Option<Self> {
        match (family, rank) {
            (TypeFamily::C, 2) => ComponentType::new(TypeFamily::B, 2),
            (TypeFamily::D, 3) => ComponentType::new(TypeFamily::A, 3),
            _ => ComponentType::new(family, rank),
        }
    }

    /// Whether the opposition involution of this type is nontrivial.
    pub fn has_nontrivial_opposition(self) -> bool {
        match self.family {
            TypeFamily::A => self.rank >= 2,
            TypeFamily::D => self.rank % 2 == 1,
            TypeFamily::E6 => true,
            _ => false,
        }
    }

    pub fn is_bcg(self) -> bool {
        matches!(self.family, TypeFamily::B | TypeFamily::C | TypeFamily::G2)
    }
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// An edge of the diagram. `short` names the shorter root on multiple
/// bonds (labels 4 and 6).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: u8,
    pub short: Option<usize>,
}

impl Edge {
    pub fn simple(a: usize, b: usize) -> Self {
        Edge {
            a,
            b,
            label: 3,
            short: None,
        }
    }

    pub fn multiple(long: usize, short: usize, label: u8) -> Self {
        Edge {
            a: long,
            b: short,
            label,
            short: Some(short),
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

/// A classified connected component: its node set, type, and its nodes in
/// Bourbaki order (`order[i]` is the node playing the role of α_{i+1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentShape {
    pub nodes: RootSet,
    pub ty: ComponentType,
    pub order: Vec<usize>,
}

impl ComponentShape {
    /// Opposition involution of this component as a list of swapped pairs.
    pub fn opposition_pairs(&self) -> Vec<(usize, usize)> {
        let o = &self.order;
        let n = o.len();
        match self.ty.family {
            TypeFamily::A if n >= 2 => (0..n / 2).map(|i| (o[i], o[n - 1 - i])).collect(),
            TypeFamily::D if n % 2 == 1 => vec![(o[n - 2], o[n - 1])],
            TypeFamily::E6 => vec![(o[0], o[5]), (o[2], o[4])],
            _ => Vec::new(),
        }
    }
}

/// Total bijection on the nodes of a diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeMap(Vec<u8>);

impl NodeMap {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_ROOTS);
        NodeMap((0..n as u8).collect())
    }

    /// Builds a map from images; `None` unless the images form a
    /// permutation of `0..images.len()`.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        if n > MAX_ROOTS {
            return None;
        }
        let mut seen = RootSet::EMPTY;
        for &i in images {
            if i >= n || seen.contains(i) {
                return None;
            }
            seen.insert(i);
        }
        Some(NodeMap(images.iter().map(|&i| i as u8).collect()))
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut moved = RootSet::EMPTY;
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || moved.contains(x) {
                    return None;
                }
                moved.insert(x);
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        NodeMap::from_images(&images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn apply_set(&self, set: RootSet) -> RootSet {
        set.iter().map(|i| self.apply(i)).collect()
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &NodeMap) -> NodeMap {
        NodeMap(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> NodeMap {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        NodeMap(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    /// Whether the map fixes `set` setwise and agrees with `other` on it.
    pub fn agrees_on(&self, other: &NodeMap, set: RootSet) -> bool {
        set.iter().all(|i| self.apply(i) == other.apply(i))
    }

    /// Disjoint cycles of length > 1, each starting at its smallest
    /// member, ordered by that member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = RootSet::EMPTY;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut x = self.apply(start);
            while x != start {
                cycle.push(x);
                seen.insert(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Debug for NodeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        for c in self.cycles() {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    names: Vec<String>,
    edges: Vec<Edge>,
    graph: RootGraph,
    components: Vec<ComponentShape>,
}

impl DynkinDiagram {
    /// Validates the edge list and classifies every component.
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Self, DiagramError> {
        let n = names.len();
        if n > MAX_ROOTS {
            return Err(DiagramError::TooManyNodes(n));
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(DiagramError::DuplicateNode(name.clone()));
            }
        }
        let mut graph = RootGraph::new(n);
        for e in &edges {
            if e.a >= n || e.b >= n {
                return Err(DiagramError::NotADynkinDiagram(format!(
                    "edge endpoint out of range ({}, {})",
                    e.a, e.b
                )));
            }
            if e.a == e.b {
                return Err(DiagramError::NotADynkinDiagram(format!(
                    "loop at `{}`",
                    names[e.a]
                )));
            }
            if graph.adjacent(e.a, e.b) {
                return Err(DiagramError::NotADynkinDiagram(format!(
                    "multiple edges between `{}` and `{}`",
                    names[e.a], names[e.b]
                )));
            }
            match (e.label, e.short) {
                (3, None) => {}
                (4 | 6, Some(s)) if e.touches(s) => {}
                (4 | 6, _) => {
                    return Err(DiagramError::NotADynkinDiagram(format!(
                        "edge `{}`–`{}` labelled {} must name one endpoint as short",
                        names[e.a], names[e.b], e.label
                    )))
                }
                (3, Some(_)) => {
                    return Err(DiagramError::NotADynkinDiagram(format!(
                        "simple edge `{}`–`{}` cannot carry a short root",
                        names[e.a], names[e.b]
                    )))
                }
                (l, _) => {
                    return Err(DiagramError::NotADynkinDiagram(format!(
                        "edge label {l} is not one of 3, 4, 6"
                    )))
                }
            }
            graph.add_edge(e.a, e.b);
        }
        let mut d = DynkinDiagram {
            names,
            edges,
            graph,
            components: Vec::new(),
        };
        let mut comps = Vec::new();
        for c in d.graph.components() {
            comps.push(d.classify_set(c)?);
        }
        d.components = comps;
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn graph(&self) -> &RootGraph {
        &self.graph
    }

    pub fn nodes(&self) -> RootSet {
        RootSet::full(self.len())
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }

    /// Connected components, in canonical order.
    pub fn components(&self) -> Vec<RootSet> {
        self.components.iter().map(|c| c.nodes).collect()
    }

    pub fn component_shapes(&self) -> &[ComponentShape] {
        &self.components
    }

    /// The component containing node `v`.
    pub fn component_of(&self, v: usize) -> &ComponentShape {
        self.components
            .iter()
            .find(|c| c.nodes.contains(v))
            .expect("every node lies in a component")
    }

    /// Classifies a connected component of the diagram.
    pub fn classify_component(&self, component: RootSet) -> Result<ComponentType, DiagramError> {
        if !self.graph.is_connected(component) {
            return Err(DiagramError::NotADynkinDiagram(
                "subset is empty or disconnected".into(),
            ));
        }
        Ok(self.classify_set(component)?.ty)
    }

    /// Classifies the induced subdiagram on any connected subset.
    pub fn classify_set(&self, set: RootSet) -> Result<ComponentShape, DiagramError> {
        classify_connected(self, set)
    }

    /// Components of the induced subdiagram on `set`, each classified.
    pub fn subdiagram_shapes(&self, set: RootSet) -> Vec<ComponentShape> {
        self.graph
            .components_of(set)
            .into_iter()
            .map(|c| {
                self.classify_set(c)
                    .expect("induced subdiagrams of Dynkin diagrams are Dynkin")
            })
            .collect()
    }

    /// Type label of the induced subdiagram, e.g. `B2`, `A1+A1`; `∅` for the
    /// empty set.
    pub fn type_label(&self, set: RootSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        self.subdiagram_shapes(set)
            .iter()
            .map(|s| s.ty.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// The opposition involution of the whole diagram.
    pub fn opposition_involution(&self) -> NodeMap {
        self.opposition_from_shapes(self.components.iter())
    }

    /// ι_ψ: opposition involution of the induced subdiagram on `set`,
    /// extended by the identity outside `set`.
    pub fn opposition_of_subset(&self, set: RootSet) -> NodeMap {
        let shapes = self.subdiagram_shapes(set);
        self.opposition_from_shapes(shapes.iter())
    }

    fn opposition_from_shapes<'a>(
        &self,
        shapes: impl Iterator<Item = &'a ComponentShape>,
    ) -> NodeMap {
        let mut images: Vec<usize> = (0..self.len()).collect();
        for s in shapes {
            for (x, y) in s.opposition_pairs() {
                images[x] = y;
                images[y] = x;
            }
        }
        NodeMap::from_images(&images).expect("opposition pairs are disjoint")
    }

    /// `θ⁺`: subset plus its edge-neighbors.
    pub fn theta_plus(&self, subset: RootSet) -> RootSet {
        self.graph.plus(subset)
    }

    /// Cartan matrix with `C[i][j] = ⟨α_j, α_i^∨⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for e in &self.edges {
            let mult = match e.label {
                4 => 2,
                6 => 3,
                _ => 1,
            };
            // The row of the short root carries the multiplicity.
            let (ca_b, cb_a) = match e.short {
                Some(s) if s == e.a => (-mult, -1),
                Some(_) => (-1, -mult),
                None => (-1, -1),
            };
            c[e.a][e.b] = ca_b;
            c[e.b][e.a] = cb_a;
        }
        c
    }

    /// Whether `map` preserves edges, labels and short-root designations.
    pub fn is_automorphism(&self, map: &NodeMap) -> bool {
        if map.len() != self.len() {
            return false;
        }
        self.edges.iter().all(|e| {
            let (a, b) = (map.apply(e.a), map.apply(e.b));
            match self.edge_between(a, b) {
                None => false,
                Some(f) => f.label == e.label && f.short == e.short.map(|s| map.apply(s)),
            }
        })
    }

    /// Nodes as names, in canonical order.
    pub fn set_names(&self, set: RootSet) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }
}

fn not_dynkin(d: &DynkinDiagram, set: RootSet, why: &str) -> DiagramError {
    DiagramError::NotADynkinDiagram(format!("{{{}}}: {why}", d.set_names(set).join(", ")))
}

fn classify_connected(d: &DynkinDiagram, set: RootSet) -> Result<ComponentShape, DiagramError> {
    let g = d.graph();
    if set.is_empty() || !g.is_connected(set) {
        return Err(not_dynkin(d, set, "not connected"));
    }
    let n = set.len();
    let edges: Vec<&Edge> = d
        .edges
        .iter()
        .filter(|e| set.contains(e.a) && set.contains(e.b))
        .collect();
    if edges.len() != n - 1 {
        return Err(not_dynkin(d, set, "contains a cycle"));
    }
    let deg = |v: usize| g.neighbors(v).intersection(set).len();
    let branch: Vec<usize> = set.iter().filter(|&v| deg(v) >= 3).collect();
    if set.iter().any(|v| deg(v) > 3) || branch.len() > 1 {
        return Err(not_dynkin(d, set, "invalid branching"));
    }
    let multi: Vec<&&Edge> = edges.iter().filter(|e| e.label != 3).collect();
    if multi.len() > 1 {
        return Err(not_dynkin(d, set, "more than one multiple bond"));
    }
    let shape = |family, order: Vec<usize>| {
        let ty = ComponentType::new(family, order.len()).expect("rank matches family");
        Ok(ComponentShape {
            nodes: set,
            ty,
            order,
        })
    };

    if let Some(&center) = branch.first() {
        if !multi.is_empty() {
            return Err(not_dynkin(d, set, "multiple bond on a branched diagram"));
        }
        // Arms from the center, each listed outward.
        let mut arms: Vec<Vec<usize>> = g
            .neighbors(center)
            .intersection(set)
            .iter()
            .map(|first| {
                let mut arm = vec![first];
                let mut prev = center;
                let mut cur = first;
                loop {
                    let next = g
                        .neighbors(cur)
                        .intersection(set)
                        .difference(RootSet::singleton(prev))
                        .first();
                    match next {
                        Some(x) => {
                            arm.push(x);
                            prev = cur;
                            cur = x;
                        }
                        None => break,
                    }
                }
                arm
            })
            .collect();
        arms.sort_by_key(|a| (a.len(), a[0]));
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
        let rev = |a: &Vec<usize>| a.iter().rev().copied().collect::<Vec<_>>();
        return match lens.as_slice() {
            [1, 1, _] => {
                // α_1 … α_{n-2} along the long arm, then the two short tips.
                let mut order = rev(&arms[2]);
                order.push(center);
                order.push(arms[0][0]);
                order.push(arms[1][0]);
                shape(TypeFamily::D, order)
            }
            [1, 2, k] if (2..=4).contains(k) => {
                let family = match k {
                    2 => TypeFamily::E6,
                    3 => TypeFamily::E7,
                    _ => TypeFamily::E8,
                };
                // α1 α3 from the length-2 arm, α2 the short arm, then α4 = center.
                let mut order = vec![arms[1][1], arms[0][0], arms[1][0], center];
                order.extend(arms[2].iter().copied());
                shape(family, order)
            }
            _ => Err(not_dynkin(d, set, "branch arms do not match D or E")),
        };
    }

    // A path: list it from one end.
    let ends: Vec<usize> = set.iter().filter(|&v| deg(v) <= 1).collect();
    let walk = |start: usize| {
        let mut order = vec![start];
        let mut seen = RootSet::singleton(start);
        let mut cur = start;
        while let Some(next) = g.neighbors(cur).intersection(set).difference(seen).first() {
            order.push(next);
            seen.insert(next);
            cur = next;
        }
        order
    };
    let mut order = walk(ends[0]);
    let Some(m) = multi.first() else {
        return shape(TypeFamily::A, order);
    };
    let short = m.short.expect("multiple bonds name a short root");
    let long = m.other(short);
    if m.label == 6 {
        if n != 2 {
            return Err(not_dynkin(d, set, "triple bond outside G2"));
        }
        return shape(TypeFamily::G2, vec![short, long]);
    }
    let pos = |v: usize, order: &[usize]| order.iter().position(|&x| x == v).unwrap();
    if n == 2 {
        return shape(TypeFamily::B, vec![long, short]);
    }
    // Orient so that the double bond is at the end, or in F4 so that the
    // long roots come first.
    let (ps, pl) = (pos(short, &order), pos(long, &order));
    let lo = ps.min(pl);
    if lo == 0 {
        order.reverse();
    }
    let (ps, pl) = (pos(short, &order), pos(long, &order));
    if ps.max(pl) == n - 1 {
        return if ps == n - 1 {
            shape(TypeFamily::B, order)
        } else {
            shape(TypeFamily::C, order)
        };
    }
    if n == 4 && ps.min(pl) == 1 {
        if ps < pl {
            order.reverse();
        }
        return shape(TypeFamily::F4, order);
    }
    Err(not_dynkin(d, set, "double bond in an interior position"))
}

/// The standard diagram of a type with Bourbaki numbering and node names
/// `{prefix}1 … {prefix}n`.
pub fn standard_diagram(ty: ComponentType, prefix: &str) -> DynkinDiagram {
    let n = ty.rank;
    let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| Edge::simple(i, i + 1));
    let edges: Vec<Edge> = match ty.family {
        TypeFamily::A => chain(n).collect(),
        TypeFamily::B => chain(n - 1)
            .chain([Edge::multiple(n - 2, n - 1, 4)])
            .collect(),
        TypeFamily::C => chain(n - 1)
            .chain([Edge::multiple(n - 1, n - 2, 4)])
            .collect(),
        TypeFamily::D => chain(n - 1).chain([Edge::simple(n - 3, n - 1)]).collect(),
        TypeFamily::E6 | TypeFamily::E7 | TypeFamily::E8 => {
            // 1-3-4-5-…-n with 2 attached to 4
            let mut e = vec![Edge::simple(0, 2), Edge::simple(1, 3)];
            e.extend((2..n - 1).map(|i| Edge::simple(i, i + 1)));
            e
        }
        TypeFamily::F4 => vec![
            Edge::simple(0, 1),
            Edge::multiple(1, 2, 4),
            Edge::simple(2, 3),
        ],
        TypeFamily::G2 => vec![Edge::multiple(1, 0, 6)],
    };
    DynkinDiagram::new(names, edges).expect("standard diagrams are valid")
}

/// Every supported type up to the given rank (B2 covers C2, A3 covers D3).
pub fn all_types_up_to(max_rank: usize) -> Vec<ComponentType> {
    let mut out = Vec::new();
    for family in TypeFamily::ALL {
        for rank in 1..=max_rank {
            if let Some(t) = ComponentType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}

//! Two-level indices: a Dynkin diagram with ℝ- and ℚ-anisotropic node
//! sets, complex conjugation `c*` and a Galois action given by generators.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::diagram::{DynkinDiagram, NodeMap};
use crate::graph::RootGraph;
use crate::rootset::RootSet;

/// Largest Galois closure accepted before giving up.
pub const CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("Galois closure exceeds {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("permutation acts on {got} nodes, diagram has {expected}")]
    WrongArity { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KLevel {
    Q,
    R,
    C,
}

impl fmt::Display for KLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KLevel::Q => "Q",
            KLevel::R => "R",
            KLevel::C => "C",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn error(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
        }
    }

    pub fn warning(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            message: message.into(),
        }
    }

    pub fn note(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Note,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.severity, self.message)
    }
}

/// A finite permutation group on the diagram nodes, sorted, identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisClosure {
    elements: Vec<NodeMap>,
}

impl GaloisClosure {
    /// Closure of `gens` under composition, with an explicit cap.
    pub fn generate(n: usize, gens: &[NodeMap], cap: usize) -> Result<Self, IndexError> {
        for g in gens {
            if g.len() != n {
                return Err(IndexError::WrongArity {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let id = NodeMap::identity(n);
        let mut seen: HashSet<NodeMap> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(IndexError::ClosureCapExceeded { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<NodeMap> = seen.into_iter().collect();
        elements.sort();
        Ok(GaloisClosure { elements })
    }

    pub fn trivial(n: usize) -> Self {
        GaloisClosure {
            elements: vec![NodeMap::identity(n)],
        }
    }

    pub fn elements(&self) -> &[NodeMap] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &NodeMap) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn fixes(&self, set: RootSet) -> bool {
        self.elements.iter().all(|g| g.apply_set(set) == set)
    }

    /// First element that moves `set`, if any.
    pub fn moving(&self, set: RootSet) -> Option<&NodeMap> {
        self.elements.iter().find(|g| g.apply_set(set) != set)
    }

    /// Orbit of a single node.
    pub fn orbit(&self, v: usize) -> RootSet {
        self.elements.iter().map(|g| g.apply(v)).collect()
    }

    /// Orbits on `within`, ordered by smallest member.
    pub fn orbits(&self, within: RootSet) -> Vec<RootSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let o = self.orbit(v);
            out.push(o);
            rest = rest.difference(o);
        }
        out
    }

    /// Whether the group permutes `parts` (a partition) transitively.
    pub fn transitive_on(&self, parts: &[RootSet]) -> bool {
        match parts.first() {
            None => true,
            Some(&p) => {
                let images: HashSet<RootSet> =
                    self.elements.iter().map(|g| g.apply_set(p)).collect();
                parts.iter().all(|q| images.contains(q))
            }
        }
    }
}

/// Diagram plus the ℝ- and ℚ-anisotropic sets and the Galois data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLevelIndex {
    pub diagram: DynkinDiagram,
    pub aniso_r: RootSet,
    pub aniso_q: RootSet,
    pub cstar: NodeMap,
    pub galois_gens: Vec<NodeMap>,
}

impl TwoLevelIndex {
    /// The closure of the generators together with `c*`.
    pub fn galois_closure(&self) -> Result<GaloisClosure, IndexError> {
        self.galois_closure_with_cap(CLOSURE_CAP)
    }

    pub fn galois_closure_with_cap(&self, cap: usize) -> Result<GaloisClosure, IndexError> {
        let mut gens = self.galois_gens.clone();
        gens.push(self.cstar.clone());
        GaloisClosure::generate(self.diagram.len(), &gens, cap)
    }

    /// The group `{1, c*}`.
    pub fn real_group(&self) -> GaloisClosure {
        GaloisClosure::generate(self.diagram.len(), std::slice::from_ref(&self.cstar), 2)
            .expect("a single involution generates at most two elements")
    }

    pub fn aniso(&self, level: KLevel) -> RootSet {
        match level {
            KLevel::Q => self.aniso_q,
            KLevel::R => self.aniso_r,
            KLevel::C => RootSet::EMPTY,
        }
    }

    /// Shape-level validity; empty iff every invariant holds.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let d = &self.diagram;
        let names = |s: RootSet| format!("{{{}}}", d.set_names(s).join(", "));
        let mut out = Vec::new();
        if !self.aniso_r.is_subset(self.aniso_q) {
            out.push(Diagnostic::error(format!(
                "aniso_r ⊄ aniso_q: {} are ℝ-anisotropic but not ℚ-anisotropic",
                names(self.aniso_r.difference(self.aniso_q))
            )));
        }
        let arity_ok =
            self.cstar.len() == d.len() && self.galois_gens.iter().all(|g| g.len() == d.len());
        if !arity_ok {
            out.push(Diagnostic::error(
                "permutation arity does not match the diagram",
            ));
            return out;
        }
        if !d.is_automorphism(&self.cstar) {
            out.push(Diagnostic::error("cstar not a diagram automorphism"));
        }
        if !self.cstar.is_involution() {
            out.push(Diagnostic::error("cstar is not an involution"));
        }
        for (k, g) in self.galois_gens.iter().enumerate() {
            if !d.is_automorphism(g) {
                out.push(Diagnostic::error(format!(
                    "generator not a diagram automorphism: galois #{} {:?}",
                    k + 1,
                    g
                )));
            }
        }
        if self.cstar.apply_set(self.aniso_r) != self.aniso_r {
            out.push(Diagnostic::error("cstar does not preserve aniso_r"));
        }
        match self.galois_closure() {
            Err(e) => out.push(Diagnostic::error(e.to_string())),
            Ok(cl) => {
                if let Some(g) = cl.moving(self.aniso_q) {
                    out.push(Diagnostic::error(format!(
                        "Galois element {:?} does not preserve aniso_q",
                        g
                    )));
                }
            }
        }
        for psi in d.graph().components_of(self.aniso_r) {
            let iota = d.opposition_of_subset(psi);
            if !self.cstar.agrees_on(&iota, psi) {
                out.push(Diagnostic::error(format!(
                    "cstar restricted to anisotropic component {} is not its opposition involution",
                    names(psi)
                )));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate()
            .iter()
            .all(|d| d.severity != Severity::Error)
    }

    /// Restricted diagram at `level`, using a precomputed closure for Q.
    pub fn level_view(&self, level: KLevel, closure: &GaloisClosure) -> LevelView {
        let n = self.diagram.len();
        let aniso = self.aniso(level);
        let group = match level {
            KLevel::Q => closure.clone(),
            KLevel::R => self.real_group(),
            KLevel::C => GaloisClosure::trivial(n),
        };
        LevelView::build(&self.diagram, level, aniso, &group)
    }

    /// Convenience wrapper computing the closure internally.
    pub fn view(&self, level: KLevel) -> Result<LevelView, IndexError> {
        let cl = match level {
            KLevel::Q => self.galois_closure()?,
            _ => GaloisClosure::trivial(self.diagram.len()),
        };
        Ok(self.level_view(level, &cl))
    }

    pub fn restriction_fibers(&self, level: KLevel) -> Result<Vec<KRoot>, IndexError> {
        let v = self.view(level)?;
        Ok(v.kroots())
    }

    pub fn k_rank(&self, level: KLevel) -> Result<usize, IndexError> {
        Ok(self.view(level)?.rank())
    }

    /// ℝ-rank of the ℝ-simple factor containing `component`, i.e. the
    /// number of `c*`-orbits of non-ℝ-anisotropic nodes in `C ∪ c*C`.
    pub fn rrank_of_component(&self, component: RootSet) -> usize {
        let pair = component.union(self.cstar.apply_set(component));
        self.real_group()
            .orbits(pair.difference(self.aniso_r))
            .len()
    }

    /// The ℝ-simple factors: components joined with their `c*`-images.
    pub fn real_factors(&self) -> Vec<RootSet> {
        let mut out: Vec<RootSet> = Vec::new();
        for c in self.diagram.components() {
            let pair = c.union(self.cstar.apply_set(c));
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
        out
    }
}

/// A k-root: a restriction fiber at a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KRoot {
    pub fiber: RootSet,
    pub level: KLevel,
}

/// The restricted diagram at a level: fibers as vertices (by index),
/// with edges from the k-adjacency rule.
#[derive(Clone, Debug)]
pub struct LevelView {
    pub level: KLevel,
    pub aniso: RootSet,
    fibers: Vec<RootSet>,
    fiber_of: Vec<Option<usize>>,
    graph: RootGraph,
    diagram_graph: RootGraph,
}

impl LevelView {
    fn build(d: &DynkinDiagram, level: KLevel, aniso: RootSet, group: &GaloisClosure) -> Self {
        let n = d.len();
        let fibers = group.orbits(d.nodes().difference(aniso));
        let mut fiber_of = vec![None; n];
        for (k, f) in fibers.iter().enumerate() {
            for v in f.iter() {
                fiber_of[v] = Some(k);
            }
        }
        let mut view = LevelView {
            level,
            aniso,
            fibers,
            fiber_of,
            graph: RootGraph::new(0),
            diagram_graph: d.graph().clone(),
        };
        let m = view.fibers.len();
        let mut graph = RootGraph::new(m);
        for a in 0..m {
            for b in a + 1..m {
                if view.adjacent_fibers(a, b) {
                    graph.add_edge(a, b);
                }
            }
        }
        view.graph = graph;
        view
    }

    pub fn fibers(&self) -> &[RootSet] {
        &self.fibers
    }

    pub fn kroots(&self) -> Vec<KRoot> {
        self.fibers
            .iter()
            .map(|&fiber| KRoot {
                fiber,
                level: self.level,
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.fibers.len()
    }

    /// The restricted graph on fiber indices.
    pub fn graph(&self) -> &RootGraph {
        &self.graph
    }

    pub fn fiber_of(&self, node: usize) -> Option<usize> {
        self.fiber_of[node]
    }

    /// Fiber index of a k-root, if it belongs to this level.
    pub fn position(&self, root: &KRoot) -> Option<usize> {
        if root.level != self.level {
            return None;
        }
        self.fibers.iter().position(|f| *f == root.fiber)
    }

    /// Nodes reachable from `v` through anisotropic nodes.
    fn aniso_reach(&self, v: usize) -> RootSet {
        self.diagram_graph.reach(v, self.aniso)
    }

    fn adjacent_fibers(&self, a: usize, b: usize) -> bool {
        let fb = self.fibers[b];
        self.fibers[a].iter().all(|x| {
            self.diagram_graph
                .neighborhood(self.aniso_reach(x))
                .intersects(fb)
        })
    }

    /// k-adjacency of two distinct fibers, by fiber index.
    pub fn k_adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.graph.adjacent(a, b)
    }

    /// ε(θ): the fibers in θ together with all anisotropic nodes.
    pub fn epsilon(&self, theta: RootSet) -> RootSet {
        theta
            .iter()
            .fold(self.aniso, |acc, k| acc.union(self.fibers[k]))
    }

    /// The set of fibers meeting `nodes`.
    pub fn restrict(&self, nodes: RootSet) -> RootSet {
        nodes.iter().filter_map(|v| self.fiber_of[v]).collect()
    }

    /// kδ: fibers with a lift joined to δ through anisotropic nodes.
    pub fn k_delta(&self, delta: RootSet) -> RootSet {
        (0..self.fibers.len())
            .filter(|&k| {
                self.fibers[k]
                    .iter()
                    .any(|x| self.aniso_reach(x).intersects(delta))
            })
            .collect()
    }
}

//! Undirected graphs on simple roots and the δ-dependent subset operators.
//!
//! The same operators act on the Dynkin diagram itself (level C) and on the
//! restricted diagrams at levels R and Q, whose vertices are restriction
//! fibers and whose edges come from the k-adjacency rule.

use std::collections::HashSet;

use crate::rootset::RootSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGraph {
    adj: Vec<RootSet>,
}

impl RootGraph {
    pub fn new(n: usize) -> Self {
        RootGraph {
            adj: vec![RootSet::EMPTY; n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = RootGraph::new(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "self-loop at {a}");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> RootSet {
        RootSet::full(self.adj.len())
    }

    pub fn neighbors(&self, v: usize) -> RootSet {
        self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    /// Vertices adjacent to some member of `set` (members included only if
    /// they have a neighbor inside `set`).
    pub fn neighborhood(&self, set: RootSet) -> RootSet {
        set.iter()
            .fold(RootSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    /// `θ⁺`: the set together with everything joined to it by an edge.
    pub fn plus(&self, set: RootSet) -> RootSet {
        set.union(self.neighborhood(set))
    }

    /// The vertices reachable from `start` through `within` (the start
    /// vertex itself need not lie in `within`).
    pub fn reach(&self, start: usize, within: RootSet) -> RootSet {
        let mut seen = RootSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .neighborhood(frontier)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected components of the induced subgraph on `set`, ordered by
    /// smallest member.
    pub fn components_of(&self, set: RootSet) -> Vec<RootSet> {
        let mut rest = set;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach(v, set);
            out.push(comp);
            rest = rest.difference(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<RootSet> {
        self.components_of(self.vertices())
    }

    pub fn is_connected(&self, set: RootSet) -> bool {
        match set.first() {
            None => false,
            Some(v) => self.reach(v, set) == set,
        }
    }

    /// Every connected component of `set` meets `delta`. Vacuous for ∅.
    pub fn is_delta_connected(&self, set: RootSet, delta: RootSet) -> bool {
        self.components_of(set)
            .into_iter()
            .all(|c| c.intersects(delta))
    }

    /// κ(θ): the union of the components of θ that meet δ.
    pub fn kappa(&self, theta: RootSet, delta: RootSet) -> RootSet {
        self.components_of(theta)
            .into_iter()
            .filter(|c| c.intersects(delta))
            .fold(RootSet::EMPTY, RootSet::union)
    }

    /// ζ(θ): vertices outside δ and κ(θ) with no edge into κ(θ).
    pub fn zeta(&self, theta: RootSet, delta: RootSet) -> RootSet {
        let k = self.kappa(theta, delta);
        self.vertices().difference(delta).difference(self.plus(k))
    }

    /// ω(θ) = κ(θ) ∪ ζ(θ), the largest set with the same κ as θ.
    pub fn omega(&self, theta: RootSet, delta: RootSet) -> RootSet {
        let k = self.kappa(theta, delta);
        k.union(self.vertices().difference(delta).difference(self.plus(k)))
    }

    /// All nonempty connected subsets of `within`, in canonical order.
    pub fn connected_subsets(&self, within: RootSet) -> Vec<RootSet> {
        let mut seen: HashSet<RootSet> = HashSet::new();
        let mut layer: Vec<RootSet> = within.iter().map(RootSet::singleton).collect();
        seen.extend(layer.iter().copied());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in &layer {
                let grow = self.neighborhood(*s).intersection(within).difference(*s);
                for v in grow {
                    let t = s.with(v);
                    if seen.insert(t) {
                        next.push(t);
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<RootSet> = seen.into_iter().collect();
        crate::rootset::canonicalize(&mut out);
        out
    }
}

//! The families F̃, F, F°, F̃*, B and B* of connected subsets, and their
//! Hasse diagrams.

use std::fmt;

use crate::compactification::cover_relations;
use crate::diagram::DynkinDiagram;
use crate::index::{KLevel, TwoLevelIndex};
use crate::rootset::{canonicalize, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Ftilde,
    F,
    Fstar,
    Fcirc,
    B,
    Bstar,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Ftilde => "Ftilde",
            FamilyKind::F => "F",
            FamilyKind::Fstar => "Fstar",
            FamilyKind::Fcirc => "Fcirc",
            FamilyKind::B => "B",
            FamilyKind::Bstar => "Bstar",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    /// Canonically ordered, distinct.
    pub members: Vec<RootSet>,
    pub component: RootSet,
}

impl Family {
    fn new(kind: FamilyKind, mut members: Vec<RootSet>, component: RootSet) -> Self {
        canonicalize(&mut members);
        Family {
            kind,
            members,
            component,
        }
    }

    pub fn contains(&self, set: RootSet) -> bool {
        self.members.contains(&set)
    }

    pub fn hasse(&self) -> HasseDiagram {
        hasse(&self.members)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub nodes: Vec<RootSet>,
    /// `(i, j)`: `nodes[j]` covers `nodes[i]`.
    pub covers: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn cover_sets(&self) -> Vec<(RootSet, RootSet)> {
        self.covers
            .iter()
            .map(|&(i, j)| (self.nodes[i], self.nodes[j]))
            .collect()
    }

    pub fn is_covered_by(&self, lower: RootSet, upper: RootSet) -> bool {
        self.cover_sets().contains(&(lower, upper))
    }
}

pub fn hasse(members: &[RootSet]) -> HasseDiagram {
    let mut nodes = members.to_vec();
    canonicalize(&mut nodes);
    let covers = cover_relations(&nodes);
    HasseDiagram { nodes, covers }
}

/// Whether `psi` is ι-invariant with `ι|_ψ = ι_ψ`.
fn iota_compatible(d: &DynkinDiagram, psi: RootSet) -> bool {
    let iota = d.opposition_involution();
    iota.apply_set(psi) == psi && iota.agrees_on(&d.opposition_of_subset(psi), psi)
}

/// Number of ι-orbits on `set`.
fn iota_orbit_count(d: &DynkinDiagram, set: RootSet) -> usize {
    let iota = d.opposition_involution();
    let mut rest = set;
    let mut count = 0;
    while let Some(v) = rest.first() {
        rest.remove(v);
        rest.remove(iota.apply(v));
        count += 1;
    }
    count
}

/// Connected ι-compatible subsets of `component`.
pub fn family_ftilde(d: &DynkinDiagram, component: RootSet) -> Family {
    let members = d
        .graph()
        .connected_subsets(component)
        .into_iter()
        .filter(|&psi| iota_compatible(d, psi))
        .collect();
    Family::new(FamilyKind::Ftilde, members, component)
}

fn condition_one(d: &DynkinDiagram, psi: RootSet) -> bool {
    iota_orbit_count(d, d.theta_plus(psi).difference(psi)) <= 1
}

pub fn family_f(d: &DynkinDiagram, component: RootSet) -> Family {
    let ft = family_ftilde(d, component);
    f_from_ftilde(d, &ft)
}

fn f_from_ftilde(d: &DynkinDiagram, ft: &Family) -> Family {
    let g = d.graph();
    let members = ft
        .members
        .iter()
        .copied()
        .filter(|&psi| {
            if !condition_one(d, psi) {
                return false;
            }
            let plus = d.theta_plus(psi);
            ft.members.iter().any(|&outer| {
                plus.is_subset(outer)
                    && condition_one(d, outer)
                    && g.components_of(outer.difference(plus))
                        .into_iter()
                        .all(|c| ft.contains(c))
            })
        })
        .collect();
    Family::new(FamilyKind::F, members, ft.component)
}

/// F with the A₁ members covered by a B/C/G₂ component removed.
pub fn family_fcirc(d: &DynkinDiagram, component: RootSet) -> Family {
    let f = family_f(d, component);
    let shape = d.classify_set(component).expect("components classify");
    if !shape.ty.is_bcg() {
        return Family::new(FamilyKind::Fcirc, f.members, component);
    }
    let h = f.hasse();
    let members = f
        .members
        .iter()
        .copied()
        .filter(|&psi| !(psi.len() == 1 && h.is_covered_by(psi, component)))
        .collect();
    Family::new(FamilyKind::Fcirc, members, component)
}

fn drop_small(members: &[RootSet], components: &[RootSet]) -> Vec<RootSet> {
    members
        .iter()
        .copied()
        .filter(|s| s.len() != 1 || components.contains(s))
        .collect()
}

pub fn family_fstar(d: &DynkinDiagram, component: RootSet) -> Family {
    let ft = family_ftilde(d, component);
    Family::new(
        FamilyKind::Fstar,
        drop_small(&ft.members, &d.components()),
        component,
    )
}

/// Every member of B: nonempty κ(ε(θ)) for θ ⊆ RΔ nonempty, connected and
/// δ-connected.
pub fn b_members(index: &TwoLevelIndex, delta: RootSet) -> Vec<RootSet> {
    let real = index
        .view(KLevel::R)
        .expect("the real group has two elements");
    let r_delta = real.k_delta(delta);
    let rg = real.graph();
    let cg = index.diagram.graph();
    let mut out: Vec<RootSet> = rg
        .connected_subsets(rg.vertices())
        .into_iter()
        .filter(|&theta| rg.is_delta_connected(theta, r_delta))
        .map(|theta| cg.kappa(real.epsilon(theta), delta))
        .filter(|s| !s.is_empty())
        .collect();
    canonicalize(&mut out);
    out
}

/// B restricted to a set of nodes (a component or a component pair).
pub fn family_b(index: &TwoLevelIndex, delta: RootSet, within: RootSet) -> Family {
    let members = b_members(index, delta)
        .into_iter()
        .filter(|s| s.is_subset(within))
        .collect();
    Family::new(FamilyKind::B, members, within)
}

pub fn family_bstar(index: &TwoLevelIndex, delta: RootSet, within: RootSet) -> Family {
    let b = family_b(index, delta, within);
    Family::new(
        FamilyKind::Bstar,
        drop_small(&b.members, &index.diagram.components()),
        within,
    )
}

//! δ-sets, highest weights, real boundary components and condition (R).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diagram::DynkinDiagram;
use crate::index::{GaloisClosure, KLevel, LevelView, TwoLevelIndex};
use crate::rootset::RootSet;

/// Dominant weight in fundamental-weight coordinates, one per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight(pub Vec<u64>);

impl DominantWeight {
    pub fn zero(n: usize) -> Self {
        DominantWeight(vec![0; n])
    }

    /// The weight with coordinate 1 on every node of `set`.
    pub fn indicator(n: usize, set: RootSet) -> Self {
        DominantWeight((0..n).map(|i| u64::from(set.contains(i))).collect())
    }

    pub fn support(&self) -> RootSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// δ = the nodes where the weight is not fixed by the simple reflection.
pub fn delta_from_weight(weight: &DominantWeight) -> RootSet {
    weight.support()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionRError {
    #[error("χ₀ − χ′ is not in the root lattice (coordinates {0})")]
    DifferenceNotInRootLattice(String),
    #[error("weight has {got} coordinates, diagram has {expected} nodes")]
    WrongArity { expected: usize, got: usize },
}

/// Solves `C x = w` over the rationals (the Cartan matrix is invertible).
fn solve_cartan(cartan: &[Vec<i64>], w: &[BigInt]) -> Vec<BigRational> {
    let n = w.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cartan[i]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            row.push(BigRational::from_integer(w[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("Cartan matrices are nonsingular");
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x = &*x - &f * p;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

/// Expresses `weight` in simple-root coordinates.
pub fn root_coordinates(diagram: &DynkinDiagram, weight: &[i64]) -> Vec<BigRational> {
    let w: Vec<BigInt> = weight.iter().map(|&x| BigInt::from(x)).collect();
    solve_cartan(&diagram.cartan_matrix(), &w)
}

/// Condition (R): each `χ₀ − χ′` is a nonnegative integral combination of
/// simple roots whose support is δ_{χ₀}-connected.
pub fn condition_r(
    diagram: &DynkinDiagram,
    chi0: &DominantWeight,
    others: &[DominantWeight],
) -> Result<bool, ConditionRError> {
    let n = diagram.len();
    let check = |w: &DominantWeight| {
        if w.0.len() != n {
            Err(ConditionRError::WrongArity {
                expected: n,
                got: w.0.len(),
            })
        } else {
            Ok(())
        }
    };
    check(chi0)?;
    let delta0 = chi0.support();
    let cartan = diagram.cartan_matrix();
    for other in others {
        check(other)?;
        let diff: Vec<BigInt> = chi0
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| BigInt::from(a) - BigInt::from(b))
            .collect();
        let coords = solve_cartan(&cartan, &diff);
        if coords.iter().any(|c| !c.is_integer()) {
            let shown: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
            return Err(ConditionRError::DifferenceNotInRootLattice(
                shown.join(", "),
            ));
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Ok(false);
        }
        let support: RootSet = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if !diagram.graph().is_delta_connected(support, delta0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The δ-set of the spherical representation attached to δ_μ in the
/// original construction: nodes outside Δ⁰_R joined to δ_μ through Δ⁰_R.
pub fn original_construction_delta(index: &TwoLevelIndex, delta_mu: RootSet) -> RootSet {
    let g = index.diagram.graph();
    index
        .diagram
        .nodes()
        .difference(index.aniso_r)
        .iter()
        .filter(|&a| g.reach(a, index.aniso_r).intersects(delta_mu))
        .collect()
}

/// Weight coordinates constant on the orbits of the level's group.
pub fn is_projectively_rational(group: &GaloisClosure, weight: &DominantWeight) -> bool {
    group
        .elements()
        .iter()
        .all(|g| (0..weight.0.len()).all(|i| weight.0[g.apply(i)] == weight.0[i]))
}

pub fn is_strongly_rational(
    index: &TwoLevelIndex,
    level: KLevel,
    group: &GaloisClosure,
    weight: &DominantWeight,
) -> bool {
    is_projectively_rational(group, weight) && weight.support().is_disjoint(index.aniso(level))
}

/// Necessary conditions for δ to come from a spherical representation.
pub fn spherical_necessary(index: &TwoLevelIndex, delta: RootSet) -> bool {
    index.cstar.apply_set(delta) == delta && delta.is_disjoint(index.aniso_r)
}

/// δ is spherical-compatible and meets every noncompact ℝ-simple factor.
pub fn is_admissible_delta(index: &TwoLevelIndex, delta: RootSet) -> bool {
    spherical_necessary(index, delta)
        && index
            .real_factors()
            .into_iter()
            .filter(|&f| index.rrank_of_component(f) > 0)
            .all(|f| f.intersects(delta))
}

/// One standard real boundary component, indexed by its κ-value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    /// R-fiber indices; equal to `kappa_r` for enumerated components.
    pub theta: RootSet,
    pub kappa_r: RootSet,
    pub hermitian_c: RootSet,
    pub centralizer_c: RootSet,
    pub normalizer_type: RootSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoset {
    pub components: Vec<BoundaryComponent>,
    /// Cover relations `(i, j)`: component `j` covers component `i`.
    pub covers: Vec<(usize, usize)>,
}

impl BoundaryPoset {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.components[i]
            .kappa_r
            .is_subset(self.components[j].kappa_r)
    }
}

/// Builds the boundary component for θ ⊆ RΔ (fiber indices).
pub fn boundary_component(
    index: &TwoLevelIndex,
    real: &LevelView,
    r_delta: RootSet,
    delta: RootSet,
    theta: RootSet,
) -> BoundaryComponent {
    let cg = index.diagram.graph();
    let kappa_r = real.graph().kappa(theta, r_delta);
    let eps = real.epsilon(theta);
    BoundaryComponent {
        theta,
        kappa_r,
        hermitian_c: cg.kappa(eps, delta),
        centralizer_c: cg.zeta(eps, delta),
        normalizer_type: real.epsilon(real.graph().omega(theta, r_delta)),
    }
}

/// Subsets of `vertices` every component of which meets `delta`.
pub fn kappa_closed_subsets(
    graph: &crate::graph::RootGraph,
    vertices: RootSet,
    delta: RootSet,
) -> Vec<RootSet> {
    let mut acc = vec![RootSet::EMPTY];
    for comp in graph.components_of(vertices) {
        let local: Vec<RootSet> = comp
            .subsets()
            .filter(|s| graph.is_delta_connected(*s, delta))
            .collect();
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for a in &acc {
            for l in &local {
                next.push(a.union(*l));
            }
        }
        acc = next;
    }
    crate::rootset::canonicalize(&mut acc);
    acc
}

/// Enumerates boundary components by their κ-values and orders them by
/// κ-containment.
pub fn boundary_components(index: &TwoLevelIndex, delta: RootSet) -> BoundaryPoset {
    let real = index.level_view(KLevel::R, &GaloisClosure::trivial(index.diagram.len()));
    let r_delta = real.k_delta(delta);
    let ks = kappa_closed_subsets(real.graph(), real.graph().vertices(), r_delta);
    let components: Vec<BoundaryComponent> = ks
        .into_iter()
        .map(|k| boundary_component(index, &real, r_delta, delta, k))
        .collect();
    let covers = cover_relations(&components.iter().map(|c| c.kappa_r).collect::<Vec<_>>());
    BoundaryPoset { components, covers }
}

/// Cover pairs `(i, j)` of the inclusion order on distinct sets.
pub fn cover_relations(sets: &[RootSet]) -> Vec<(usize, usize)> {
    let n = sets.len();
    let lt = |i: usize, j: usize| i != j && sets[i].is_subset(sets[j]) && sets[i] != sets[j];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Components of ε(κ_R(θ)) not wholly inside Δ⁰_R; agrees with
/// `hermitian_c` computed via κ at level C.
pub fn hermitian_by_components(
    index: &TwoLevelIndex,
    real: &LevelView,
    r_delta: RootSet,
    theta: RootSet,
) -> RootSet {
    let eps = real.epsilon(real.graph().kappa(theta, r_delta));
    index
        .diagram
        .graph()
        .components_of(eps)
        .into_iter()
        .filter(|c| !c.is_subset(index.aniso_r))
        .fold(RootSet::EMPTY, RootSet::union)
}

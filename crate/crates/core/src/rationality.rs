//! Casselman's criterion and the theorem routes that predict its outcome.

use std::fmt;
use std::str::FromStr;

use crate::compactification::{is_admissible_delta, original_construction_delta};
use crate::families::b_members;
use crate::index::{GaloisClosure, KLevel, TwoLevelIndex};
use crate::rootset::RootSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    CasselmanDirect,
    DeltaGaloisInvariant,
    OriginalConstruction,
    EqualRankMain,
    ExceptionalQRank2,
    ExceptionalQRank1,
    NotApplicable,
}

impl Route {
    /// Theorem routes in the order used to pick the reported one.
    pub const PRIORITY: [Route; 6] = [
        Route::DeltaGaloisInvariant,
        Route::OriginalConstruction,
        Route::EqualRankMain,
        Route::ExceptionalQRank2,
        Route::ExceptionalQRank1,
        Route::CasselmanDirect,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::CasselmanDirect => "CasselmanDirect",
            Route::DeltaGaloisInvariant => "DeltaGaloisInvariant",
            Route::OriginalConstruction => "OriginalConstruction",
            Route::EqualRankMain => "EqualRankMain",
            Route::ExceptionalQRank2 => "ExceptionalQRank2",
            Route::ExceptionalQRank1 => "ExceptionalQRank1",
            Route::NotApplicable => "NotApplicable",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Route::CasselmanDirect,
            Route::DeltaGaloisInvariant,
            Route::OriginalConstruction,
            Route::EqualRankMain,
            Route::ExceptionalQRank2,
            Route::ExceptionalQRank1,
            Route::NotApplicable,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
        .ok_or_else(|| format!("unknown route `{s}`"))
    }
}

/// Which Casselman condition failed, under which element, on which set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: u8,
    pub element: crate::diagram::NodeMap,
    pub image: RootSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Casselman {
    pub kappa0: RootSet,
    pub omega0: RootSet,
    pub zeta0: RootSet,
    pub cond1: bool,
    pub cond2: bool,
    pub witness: Option<Witness>,
}

impl Casselman {
    pub fn rational(&self) -> bool {
        self.cond1 && self.cond2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub route: Route,
    /// Absent when the route's hypotheses fail.
    pub geometrically_rational: Option<bool>,
    pub witness: Option<Witness>,
    pub cross_check: Option<bool>,
}

impl Verdict {
    pub fn applicable(&self) -> bool {
        self.geometrically_rational.is_some()
    }

    fn not_applicable(route: Route) -> Self {
        Verdict {
            route,
            geometrically_rational: None,
            witness: None,
            cross_check: None,
        }
    }

    fn decided(route: Route, rational: bool, casselman: &Casselman) -> Self {
        Verdict {
            route,
            geometrically_rational: Some(rational),
            witness: None,
            cross_check: Some(rational == casselman.rational()),
        }
    }
}

/// Both conditions evaluated at level C over the Galois closure.
pub fn casselman(index: &TwoLevelIndex, closure: &GaloisClosure, delta: RootSet) -> Casselman {
    let g = index.diagram.graph();
    let kappa0 = g.kappa(index.aniso_q, delta);
    let omega0 = g.omega(index.aniso_q, delta);
    let zeta0 = omega0.difference(kappa0);
    let allowed = kappa0.union(index.aniso_r);
    let mut witness = None;
    let mut cond1 = true;
    let mut cond2 = true;
    for el in closure.elements() {
        let img = el.apply_set(omega0);
        if img != omega0 {
            cond1 = false;
            witness.get_or_insert(Witness {
                condition: 1,
                element: el.clone(),
                image: img,
            });
            break;
        }
    }
    for el in closure.elements() {
        let img = el.apply_set(kappa0);
        if !img.is_subset(allowed) {
            cond2 = false;
            witness.get_or_insert(Witness {
                condition: 2,
                element: el.clone(),
                image: img,
            });
            break;
        }
    }
    Casselman {
        kappa0,
        omega0,
        zeta0,
        cond1,
        cond2,
        witness,
    }
}

pub fn delta_galois_invariant(closure: &GaloisClosure, delta: RootSet) -> bool {
    closure.fixes(delta)
}

/// `c* = ι` on the whole diagram.
pub fn is_equal_rank_group(index: &TwoLevelIndex) -> bool {
    index.cstar == index.diagram.opposition_involution()
}

/// `c*|_ψ = ι_ψ` for every ψ ∈ B (not including the global check).
pub fn boundary_equal_rank(index: &TwoLevelIndex, b: &[RootSet]) -> bool {
    let d = &index.diagram;
    b.iter()
        .all(|&psi| index.cstar.agrees_on(&d.opposition_of_subset(psi), psi))
}

pub fn is_real_equal_rank(index: &TwoLevelIndex, delta: RootSet) -> bool {
    is_equal_rank_group(index) && boundary_equal_rank(index, &b_members(index, delta))
}

/// Real factors `C ∪ c*C` with ℝ-rank 2, type B/C/G₂, and an A₁ member of B.
pub fn exceptional_factors(index: &TwoLevelIndex, delta: RootSet) -> Vec<RootSet> {
    exceptional_from_b(index, &b_members(index, delta))
}

fn exceptional_from_b(index: &TwoLevelIndex, b: &[RootSet]) -> Vec<RootSet> {
    let d = &index.diagram;
    index
        .real_factors()
        .into_iter()
        .filter(|&pair| {
            let bcg = d.subdiagram_shapes(pair).iter().all(|s| s.ty.is_bcg());
            bcg && index.rrank_of_component(pair) == 2
                && b.iter().any(|s| s.len() == 1 && s.is_subset(pair))
        })
        .collect()
}

/// Precomputed data shared by the routes.
#[derive(Clone, Debug)]
pub struct RouteContext {
    pub closure: GaloisClosure,
    pub casselman: Casselman,
    pub b: Vec<RootSet>,
    pub equal_rank_group: bool,
    pub equal_rank_compactification: bool,
    pub exceptional: Vec<RootSet>,
    pub q_rank: usize,
    pub almost_q_simple: bool,
    pub admissible: bool,
}

impl RouteContext {
    pub fn new(index: &TwoLevelIndex, closure: GaloisClosure, delta: RootSet) -> Self {
        let cass = casselman(index, &closure, delta);
        let b = b_members(index, delta);
        let group = is_equal_rank_group(index);
        let compact = group && boundary_equal_rank(index, &b);
        let exceptional = exceptional_from_b(index, &b);
        let q_rank = index.level_view(KLevel::Q, &closure).rank();
        let almost_q_simple = closure.transitive_on(&index.diagram.components());
        let admissible = is_admissible_delta(index, delta);
        RouteContext {
            closure,
            casselman: cass,
            b,
            equal_rank_group: group,
            equal_rank_compactification: compact,
            exceptional,
            q_rank,
            almost_q_simple,
            admissible,
        }
    }
}

pub fn delta_invariant_verdict(ctx: &RouteContext, delta: RootSet) -> Verdict {
    if delta_galois_invariant(&ctx.closure, delta) {
        Verdict::decided(Route::DeltaGaloisInvariant, true, &ctx.casselman)
    } else {
        Verdict::not_applicable(Route::DeltaGaloisInvariant)
    }
}

/// Applies when δ arises from a Galois-invariant δ_μ by the original
/// construction.
pub fn original_construction_verdict(
    index: &TwoLevelIndex,
    ctx: &RouteContext,
    delta: RootSet,
    delta_mu: Option<RootSet>,
) -> Verdict {
    match delta_mu {
        Some(mu) if ctx.closure.fixes(mu) && original_construction_delta(index, mu) == delta => {
            Verdict::decided(Route::OriginalConstruction, true, &ctx.casselman)
        }
        _ => Verdict::not_applicable(Route::OriginalConstruction),
    }
}

pub fn main_theorem_verdict(ctx: &RouteContext) -> Verdict {
    if ctx.admissible
        && ctx.almost_q_simple
        && ctx.equal_rank_compactification
        && ctx.exceptional.is_empty()
    {
        Verdict::decided(Route::EqualRankMain, true, &ctx.casselman)
    } else {
        Verdict::not_applicable(Route::EqualRankMain)
    }
}

/// Hypotheses of the exceptional-case theorem, independent of ℚ-rank.
pub fn exceptional_hypotheses(index: &TwoLevelIndex, ctx: &RouteContext) -> bool {
    let shapes = index.diagram.component_shapes();
    let Some(first) = shapes.first() else {
        return false;
    };
    ctx.admissible
        && first.ty.is_bcg()
        && shapes.iter().all(|s| s.ty == first.ty)
        && ctx.almost_q_simple
        && !ctx.exceptional.is_empty()
        && ctx.equal_rank_compactification
}

pub fn special_cases_verdict(index: &TwoLevelIndex, ctx: &RouteContext, delta: RootSet) -> Verdict {
    if !exceptional_hypotheses(index, ctx) {
        return Verdict::not_applicable(Route::NotApplicable);
    }
    match ctx.q_rank {
        2 => Verdict::decided(
            Route::ExceptionalQRank2,
            ctx.closure.fixes(delta),
            &ctx.casselman,
        ),
        1 => {
            let met = delta.intersection(index.aniso_q);
            let ok = met.is_empty()
                || index
                    .diagram
                    .components()
                    .into_iter()
                    .filter(|&c| index.rrank_of_component(c) >= 2)
                    .all(|c| c.intersects(met));
            Verdict::decided(Route::ExceptionalQRank1, ok, &ctx.casselman)
        }
        _ => Verdict::not_applicable(Route::NotApplicable),
    }
}

/// Every route, in priority order, with `CasselmanDirect` last.
pub fn all_verdicts(
    index: &TwoLevelIndex,
    ctx: &RouteContext,
    delta: RootSet,
    delta_mu: Option<RootSet>,
) -> Vec<Verdict> {
    let special = special_cases_verdict(index, ctx, delta);
    let for_route = |r: Route| {
        if special.route == r {
            special.clone()
        } else {
            Verdict::not_applicable(r)
        }
    };
    vec![
        delta_invariant_verdict(ctx, delta),
        original_construction_verdict(index, ctx, delta, delta_mu),
        main_theorem_verdict(ctx),
        for_route(Route::ExceptionalQRank2),
        for_route(Route::ExceptionalQRank1),
        Verdict {
            route: Route::CasselmanDirect,
            geometrically_rational: Some(ctx.casselman.rational()),
            witness: ctx.casselman.witness.clone(),
            cross_check: None,
        },
    ]
}

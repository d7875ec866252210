//! Full analysis of an index with a δ-set, and its JSON form.

use serde::Serialize;
use thiserror::Error;

use crate::compactification::{boundary_components, spherical_necessary};
use crate::diagram::{DynkinDiagram, NodeMap};
use crate::families::{family_b, family_f, family_ftilde};
use crate::index::{Diagnostic, IndexError, KLevel, Severity, TwoLevelIndex};
use crate::rationality::{
    all_verdicts, exceptional_hypotheses, Casselman, Route, RouteContext, Verdict,
};
use crate::rootset::RootSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Index(#[from] IndexError),
    #[error(
        "cross-check failure: route {route} predicts {predicted}, Casselman gives {casselman}"
    )]
    CrossCheckFailure {
        route: Route,
        predicted: bool,
        casselman: bool,
    },
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub index: TwoLevelIndex,
    pub delta: RootSet,
    pub diagnostics: Vec<Diagnostic>,
    pub r_fibers: Vec<RootSet>,
    pub q_fibers: Vec<RootSet>,
    pub r_delta: Vec<RootSet>,
    pub q_delta: Vec<RootSet>,
    pub casselman: Casselman,
    pub verdicts: Vec<Verdict>,
    pub equal_rank_group: bool,
    pub equal_rank_compactification: bool,
    pub exceptional: Vec<RootSet>,
    pub boundary: crate::compactification::BoundaryPoset,
    pub include_families: bool,
}

impl Report {
    /// The first applicable route in priority order.
    pub fn route(&self) -> Route {
        self.verdicts
            .iter()
            .find(|v| v.applicable())
            .map(|v| v.route)
            .unwrap_or(Route::CasselmanDirect)
    }

    pub fn rational(&self) -> bool {
        self.casselman.rational()
    }

    pub fn q_rank(&self) -> usize {
        self.q_fibers.len()
    }

    pub fn is_valid(&self) -> bool {
        self.diagnostics
            .iter()
            .all(|d| d.severity != Severity::Error)
    }

    pub fn to_json(&self) -> ReportJson {
        let d = &self.index.diagram;
        let names = |s: RootSet| d.set_names(s);
        let fibers = |v: &[RootSet]| v.iter().map(|&s| names(s)).collect::<Vec<_>>();
        let components = d
            .component_shapes()
            .iter()
            .map(|s| ComponentJson {
                nodes: names(s.nodes),
                ty: s.ty.to_string(),
                rrank: self.index.rrank_of_component(s.nodes),
            })
            .collect();
        let witness = self.casselman.witness.as_ref().map(|w| WitnessJson {
            condition: w.condition,
            element: cycle_notation(d, &w.element),
            image: names(w.image),
        });
        let routes = self
            .verdicts
            .iter()
            .map(|v| RouteJson {
                route: v.route.to_string(),
                applicable: v.applicable(),
                rational: v.geometrically_rational,
                cross_check: v.cross_check,
            })
            .collect();
        let boundary = self
            .boundary
            .components
            .iter()
            .map(|c| BoundaryJson {
                theta: c.theta.iter().map(|k| names(self.r_fibers[k])).collect(),
                hermitian: names(c.hermitian_c),
                centralizer: names(c.centralizer_c),
                normalizer: names(c.normalizer_type),
            })
            .collect();
        let families = self.include_families.then(|| {
            d.component_shapes()
                .iter()
                .map(|s| FamilyJson {
                    component: names(s.nodes),
                    ty: s.ty.to_string(),
                    ftilde: fibers(&family_ftilde(d, s.nodes).members),
                    f: fibers(&family_f(d, s.nodes).members),
                    b: fibers(&family_b(&self.index, self.delta, s.nodes).members),
                })
                .collect()
        });
        ReportJson {
            name: self.name.clone(),
            valid: self.is_valid(),
            diagnostics: self
                .diagnostics
                .iter()
                .map(|x| DiagnosticJson {
                    severity: x.severity.to_string(),
                    message: x.message.clone(),
                })
                .collect(),
            q_rank: self.q_rank(),
            components,
            delta: names(self.delta),
            r_delta: fibers(&self.r_delta),
            q_delta: fibers(&self.q_delta),
            kappa0: names(self.casselman.kappa0),
            omega0: names(self.casselman.omega0),
            zeta0: names(self.casselman.zeta0),
            casselman: CasselmanJson {
                rational: self.casselman.rational(),
                cond1: self.casselman.cond1,
                cond2: self.casselman.cond2,
                witness,
            },
            verdict: VerdictJson {
                rational: self.rational(),
                route: self.route().to_string(),
            },
            routes,
            equal_rank: EqualRankJson {
                group: self.equal_rank_group,
                compactification: self.equal_rank_compactification,
            },
            exceptional: fibers(&self.exceptional),
            boundary,
            families,
        }
    }
}

/// Cycle notation with node names; `()` for the identity.
pub fn cycle_notation(d: &DynkinDiagram, map: &NodeMap) -> String {
    let cycles = map.cycles();
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().map(|&i| d.name(i)).collect();
            format!("({})", parts.join(" "))
        })
        .collect()
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ReportJson {
    pub name: String,
    pub valid: bool,
    pub diagnostics: Vec<DiagnosticJson>,
    pub q_rank: usize,
    pub components: Vec<ComponentJson>,
    pub delta: Vec<String>,
    pub r_delta: Vec<Vec<String>>,
    pub q_delta: Vec<Vec<String>>,
    pub kappa0: Vec<String>,
    pub omega0: Vec<String>,
    pub zeta0: Vec<String>,
    pub casselman: CasselmanJson,
    pub verdict: VerdictJson,
    pub routes: Vec<RouteJson>,
    pub equal_rank: EqualRankJson,
    pub exceptional: Vec<Vec<String>>,
    pub boundary: Vec<BoundaryJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<Vec<FamilyJson>>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct DiagnosticJson {
    pub severity: String,
    pub message: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct ComponentJson {
    pub nodes: Vec<String>,
    #[serde(rename = "type")]
    pub ty: String,
    pub rrank: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct CasselmanJson {
    pub rational: bool,
    pub cond1: bool,
    pub cond2: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct WitnessJson {
    pub condition: u8,
    pub element: String,
    pub image: Vec<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct VerdictJson {
    pub rational: bool,
    pub route: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RouteJson {
    pub route: String,
    pub applicable: bool,
    pub rational: Option<bool>,
    pub cross_check: Option<bool>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct EqualRankJson {
    pub group: bool,
    pub compactification: bool,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct BoundaryJson {
    pub theta: Vec<Vec<String>>,
    pub hermitian: Vec<String>,
    pub centralizer: Vec<String>,
    pub normalizer: Vec<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct FamilyJson {
    pub component: Vec<String>,
    #[serde(rename = "type")]
    pub ty: String,
    pub ftilde: Vec<Vec<String>>,
    pub f: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

/// Remarks attached to a classification.
fn remarks(index: &TwoLevelIndex, ctx: &RouteContext, delta: RootSet) -> Vec<Diagnostic> {
    let d = &index.diagram;
    let mut out = Vec::new();
    if !spherical_necessary(index, delta) {
        out.push(Diagnostic::note(
            "δ is not c*-invariant or meets aniso_r; it cannot come from a spherical representation",
        ));
    }
    if ctx.q_rank == 0 {
        out.push(Diagnostic::note(
            "ℚ-rank 0: the quotient is compact and every Satake compactification is geometrically rational",
        ));
    }
    if ctx.equal_rank_compactification {
        for s in d.component_shapes() {
            if s.ty.family == crate::diagram::TypeFamily::F4 {
                let r = index.rrank_of_component(s.nodes);
                if r > 1 {
                    out.push(Diagnostic::warning(format!(
                        "F4 component {{{}}} has ℝ-rank {r}; a real equal-rank compactification requires ℝ-rank 0 or 1",
                        d.set_names(s.nodes).join(", ")
                    )));
                }
            }
        }
    }
    if exceptional_hypotheses(index, ctx) {
        let big: Vec<RootSet> = d
            .components()
            .into_iter()
            .filter(|&c| index.rrank_of_component(c) > 2)
            .collect();
        match ctx.q_rank {
            2 => {
                out.push(Diagnostic::note(
                    "exceptional case, ℚ-rank 2: rational iff δ is Galois invariant",
                ));
                if ctx.casselman.rational() && !big.is_empty() {
                    out.push(Diagnostic::warning(
                        "rational in the ℚ-rank 2 exceptional case, yet some ℝ-simple factor has ℝ-rank > 2",
                    ));
                }
            }
            1 => {
                out.push(Diagnostic::note(
                    "exceptional case, ℚ-rank 1: rational iff δ ∩ aniso_q is empty or meets every component of ℝ-rank ≥ 2",
                ));
                let met = delta.intersection(index.aniso_q);
                if !met.is_empty() && big.iter().any(|c| !c.intersects(met)) {
                    out.push(Diagnostic::warning(
                        "δ ∩ aniso_q misses a component of ℝ-rank > 2, which the exceptional case does not allow",
                    ));
                }
            }
            _ => {}
        }
    }
    out
}

/// Runs every computation; fails only on closure overflow or when a
/// theorem route contradicts the Casselman verdict.
pub fn classify(
    name: &str,
    index: &TwoLevelIndex,
    delta: RootSet,
    delta_mu: Option<RootSet>,
    include_families: bool,
) -> Result<Report, ClassifyError> {
    let closure = index.galois_closure()?;
    let mut diagnostics = index.validate();
    let real = index.level_view(KLevel::R, &closure);
    let rational = index.level_view(KLevel::Q, &closure);
    let ctx = RouteContext::new(index, closure, delta);
    diagnostics.extend(remarks(index, &ctx, delta));
    let verdicts = all_verdicts(index, &ctx, delta, delta_mu);
    for v in &verdicts {
        if v.cross_check == Some(false) {
            return Err(ClassifyError::CrossCheckFailure {
                route: v.route,
                predicted: v.geometrically_rational.unwrap_or_default(),
                casselman: ctx.casselman.rational(),
            });
        }
    }
    let pick = |v: &crate::index::LevelView| {
        v.k_delta(delta)
            .iter()
            .map(|k| v.fibers()[k])
            .collect::<Vec<_>>()
    };
    Ok(Report {
        name: name.to_string(),
        index: index.clone(),
        delta,
        diagnostics,
        r_fibers: real.fibers().to_vec(),
        q_fibers: rational.fibers().to_vec(),
        r_delta: pick(&real),
        q_delta: pick(&rational),
        casselman: ctx.casselman.clone(),
        verdicts,
        equal_rank_group: ctx.equal_rank_group,
        equal_rank_compactification: ctx.equal_rank_compactification,
        exceptional: ctx.exceptional.clone(),
        boundary: boundary_components(index, delta),
        include_families,
    })
}

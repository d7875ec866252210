//! DOT output for Hasse diagrams and boundary posets, and a plain-text
//! rendering of decorated diagrams.

use std::fmt::Write as _;

use crate::compactification::BoundaryPoset;
use crate::diagram::DynkinDiagram;
use crate::families::HasseDiagram;
use crate::index::{GaloisClosure, TwoLevelIndex};
use crate::rootset::RootSet;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// `<Type>:<members>` for a nonempty set, `∅` otherwise.
pub fn set_label(d: &DynkinDiagram, set: RootSet) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        format!("{}:{}", d.type_label(set), d.set_names(set).join(","))
    }
}

/// DOT for a Hasse diagram. Nodes listed in `hollow` are drawn as open
/// circles (members of F̃ outside F).
pub fn hasse_dot(name: &str, d: &DynkinDiagram, h: &HasseDiagram, hollow: &[RootSet]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    if !h.nodes.is_empty() {
        writeln!(out, "  rankdir=LR;").unwrap();
    }
    for (i, &s) in h.nodes.iter().enumerate() {
        let style = if hollow.contains(&s) {
            ", style=dashed"
        } else {
            ""
        };
        writeln!(out, "  n{i} [label={}{style}];", quote(&set_label(d, s))).unwrap();
    }
    for &(i, j) in &h.covers {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn boundary_dot(name: &str, d: &DynkinDiagram, poset: &BoundaryPoset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (i, c) in poset.components.iter().enumerate() {
        writeln!(
            out,
            "  n{i} [label={}];",
            quote(&set_label(d, c.hermitian_c))
        )
        .unwrap();
    }
    for &(i, j) in &poset.covers {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn connector(d: &DynkinDiagram, a: usize, b: usize) -> Option<&'static str> {
    let e = d.edge_between(a, b)?;
    Some(match (e.label, e.short) {
        (3, _) => "---",
        (4, Some(s)) if s == b => "==>",
        (4, _) => "<==",
        (_, Some(s)) if s == b => "≡≡>",
        _ => "<≡≡",
    })
}

/// Plain-text Satake–Tits diagram: `*` marks ℝ-anisotropic nodes,
/// `[..]` the ℚ-anisotropic ones, `(δ)` the elements of δ; components in
/// one Galois orbit are stacked with orbit-mates aligned.
pub fn render_satake(index: &TwoLevelIndex, closure: &GaloisClosure, delta: RootSet) -> String {
    let d = &index.diagram;
    let cell = |v: usize| {
        let mut s = d.name(v).to_string();
        if index.aniso_r.contains(v) {
            s.push('*');
        }
        if index.aniso_q.contains(v) {
            s = format!("[{s}]");
        }
        if delta.contains(v) {
            s.push_str("(δ)");
        }
        s
    };
    let shapes = d.component_shapes();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut placed = RootSet::EMPTY;
    for s in shapes {
        if placed.intersects(s.nodes) {
            continue;
        }
        rows.push(s.order.clone());
        placed = placed.union(s.nodes);
        for g in closure.elements() {
            let img = g.apply_set(s.nodes);
            if !placed.intersects(img) {
                rows.push(s.order.iter().map(|&v| g.apply(v)).collect());
                placed = placed.union(img);
            }
        }
    }
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let col_w: Vec<usize> = (0..width)
        .map(|k| {
            rows.iter()
                .filter_map(|r| r.get(k))
                .map(|&v| cell(v).chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let mut extra = Vec::new();
    for row in &rows {
        let mut line = String::new();
        for (k, &v) in row.iter().enumerate() {
            let c = cell(v);
            line.push_str(&c);
            if k + 1 < row.len() {
                let pad = col_w[k] - c.chars().count();
                line.push_str(&" ".repeat(pad));
                let link = connector(d, v, row[k + 1]).unwrap_or("   ");
                write!(line, " {link} ").unwrap();
            }
        }
        for (i, &v) in row.iter().enumerate() {
            for &w in row.iter().skip(i + 2) {
                if let Some(link) = connector(d, v, w) {
                    extra.push(format!("{} {link} {}", d.name(v), d.name(w)));
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    for e in extra {
        writeln!(out, "  branch: {e}").unwrap();
    }
    out
}

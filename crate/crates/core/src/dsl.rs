//! The `.sidx` text format.
//!
//! ```text
//! index "ex1a"
//! node a1 a2 a3 b1 b2 b3
//! edge a1 a2
//! edge a2 a3 4 short=a3
//! aniso r: a3
//! aniso q: a3 b3
//! galois: (a1 b1)(a2 b2)(a3 b3)
//! delta: a2 b3
//! expect: rational=true route=EqualRankMain
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::diagram::{DiagramError, DynkinDiagram, Edge, NodeMap};
use crate::index::TwoLevelIndex;
use crate::report::cycle_notation;
use crate::rootset::{RootSet, MAX_ROOTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: unknown node `{name}`")]
    UnknownNode {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: duplicate node `{name}`")]
    DuplicateNode {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: bad cycle notation: {message}")]
    BadCycleNotation {
        line: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    InvalidDiagram(#[from] DiagramError),
}

impl DslError {
    /// Whether the text itself is malformed (as opposed to describing an
    /// invalid diagram).
    pub fn is_syntax(&self) -> bool {
        !matches!(self, DslError::InvalidDiagram(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub rational: bool,
    pub route: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexDocument {
    pub name: String,
    pub index: TwoLevelIndex,
    pub delta: RootSet,
    pub delta_mu: Option<RootSet>,
    pub expect: Option<Expectation>,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

struct Parser {
    names: Vec<String>,
    edges: Vec<Edge>,
    name: Option<String>,
    aniso_r: Option<RootSet>,
    aniso_q: Option<RootSet>,
    cstar: Option<NodeMap>,
    cstar_raw: Option<(usize, usize, Vec<Vec<usize>>)>,
    galois_raw: Vec<(usize, usize, Vec<Vec<usize>>)>,
    delta: Option<RootSet>,
    delta_mu: Option<RootSet>,
    expect: Option<Expectation>,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> DslError {
    DslError::Parse {
        line,
        col,
        message: message.into(),
    }
}

impl Parser {
    fn node(&self, line: usize, tok: Token) -> Result<usize, DslError> {
        self.names
            .iter()
            .position(|n| n == tok.text)
            .ok_or_else(|| DslError::UnknownNode {
                line,
                col: tok.col,
                name: tok.text.to_string(),
            })
    }

    fn node_set(&self, line: usize, toks: &[Token]) -> Result<RootSet, DslError> {
        let mut s = RootSet::EMPTY;
        for &t in toks {
            s.insert(self.node(line, t)?);
        }
        Ok(s)
    }

    fn cycles(&self, line: usize, text: &str, col0: usize) -> Result<Vec<Vec<usize>>, DslError> {
        let bad = |col: usize, m: &str| DslError::BadCycleNotation {
            line,
            col,
            message: m.to_string(),
        };
        let mut out = Vec::new();
        let mut cur: Option<Vec<usize>> = None;
        let mut word = String::new();
        let mut word_col = 0;
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i <= chars.len() {
            let ch = chars.get(i).copied();
            let col = col0 + i;
            let boundary =
                matches!(ch, None | Some('(') | Some(')')) || ch.is_some_and(char::is_whitespace);
            if boundary && !word.is_empty() {
                let Some(c) = cur.as_mut() else {
                    return Err(bad(word_col, "node outside parentheses"));
                };
                let tok = Token {
                    text: &word,
                    col: word_col,
                };
                c.push(self.node(line, tok)?);
                word.clear();
            }
            match ch {
                None => {}
                Some('(') => {
                    if cur.is_some() {
                        return Err(bad(col, "nested parenthesis"));
                    }
                    cur = Some(Vec::new());
                }
                Some(')') => match cur.take() {
                    None => return Err(bad(col, "unmatched `)`")),
                    Some(c) => {
                        let mut seen = RootSet::EMPTY;
                        for &x in &c {
                            if seen.contains(x) {
                                return Err(bad(col, "node repeated within a cycle"));
                            }
                            seen.insert(x);
                        }
                        if c.len() > 1 {
                            out.push(c);
                        }
                    }
                },
                Some(c) if c.is_whitespace() => {}
                Some(c) => {
                    if word.is_empty() {
                        word_col = col;
                    }
                    word.push(c);
                }
            }
            i += 1;
        }
        if cur.is_some() {
            return Err(bad(col0 + chars.len(), "unclosed `(`"));
        }
        let mut moved = RootSet::EMPTY;
        for c in &out {
            for &x in c {
                if moved.contains(x) {
                    return Err(bad(col0, "cycles are not disjoint"));
                }
                moved.insert(x);
            }
        }
        Ok(out)
    }
}

/// Column (1-based) of the text following the first `:` of a keyword.
fn rest_after_colon(raw: &str) -> Option<(&str, usize)> {
    let i = raw.find(':')?;
    let rest = &raw[i + 1..];
    Some((rest, raw[..i + 1].chars().count() + 1))
}

pub fn parse(text: &str) -> Result<IndexDocument, DslError> {
    let mut p = Parser {
        names: Vec::new(),
        edges: Vec::new(),
        name: None,
        aniso_r: None,
        aniso_q: None,
        cstar: None,
        cstar_raw: None,
        galois_raw: Vec::new(),
        delta: None,
        delta_mu: None,
        expect: None,
    };
    let mut last_line = 0;
    for (ln, raw_line) in text.lines().enumerate() {
        let line = ln + 1;
        last_line = line;
        let raw = strip_comment(raw_line);
        let toks = tokens(raw);
        let Some(&head) = toks.first() else {
            continue;
        };
        match head.text {
            "index" => {
                if p.name.is_some() {
                    return Err(err(line, head.col, "repeated `index` line"));
                }
                let rest = raw[raw.find("index").unwrap() + 5..].trim();
                let ok = rest.len() >= 2
                    && rest.starts_with('"')
                    && rest.ends_with('"')
                    && !rest[1..rest.len() - 1].contains('"');
                if !ok {
                    let col = toks.get(1).map_or(head.col + 5, |t| t.col);
                    return Err(err(line, col, "expected a quoted name"));
                }
                p.name = Some(rest[1..rest.len() - 1].to_string());
            }
            "node" => {
                if toks.len() < 2 {
                    return Err(err(line, head.col, "`node` needs at least one identifier"));
                }
                for t in &toks[1..] {
                    let valid = t.text.chars().all(|c| {
                        c.is_alphanumeric() || c == '_' || c == '-' || c == '\'' || c == '.'
                    });
                    if !valid {
                        return Err(err(
                            line,
                            t.col,
                            format!("invalid node identifier `{}`", t.text),
                        ));
                    }
                    if p.names.iter().any(|n| n == t.text) {
                        return Err(DslError::DuplicateNode {
                            line,
                            col: t.col,
                            name: t.text.to_string(),
                        });
                    }
                    if p.names.len() == MAX_ROOTS {
                        return Err(err(line, t.col, format!("more than {MAX_ROOTS} nodes")));
                    }
                    p.names.push(t.text.to_string());
                }
            }
            "edge" => {
                if toks.len() < 3 {
                    return Err(err(line, head.col, "`edge` needs two endpoints"));
                }
                let u = p.node(line, toks[1])?;
                let v = p.node(line, toks[2])?;
                let edge = match &toks[3..] {
                    [] => Edge::simple(u, v),
                    [l] if l.text == "3" => Edge::simple(u, v),
                    [l] if l.text == "4" || l.text == "6" => {
                        return Err(err(
                            line,
                            l.col,
                            format!("label {} requires `short=<u|v>`", l.text),
                        ))
                    }
                    [l, s] if l.text == "4" || l.text == "6" => {
                        let Some(sn) = s.text.strip_prefix("short=") else {
                            return Err(err(line, s.col, "expected `short=<u|v>`"));
                        };
                        let stok = Token {
                            text: sn,
                            col: s.col + 6,
                        };
                        let sv = p.node(line, stok)?;
                        if sv != u && sv != v {
                            return Err(err(line, stok.col, "short root must be an endpoint"));
                        }
                        Edge::multiple(if sv == u { v } else { u }, sv, l.text.parse().unwrap())
                    }
                    [l, ..] => {
                        return Err(err(line, l.col, format!("unexpected `{}` in edge", l.text)))
                    }
                };
                p.edges.push(Edge { a: u, b: v, ..edge });
            }
            "aniso" => {
                let level = toks.get(1).map(|t| t.text);
                let slot = match level {
                    Some("r:") => &mut p.aniso_r,
                    Some("q:") => &mut p.aniso_q,
                    _ => {
                        let col = toks.get(1).map_or(head.col, |t| t.col);
                        return Err(err(line, col, "expected `aniso r:` or `aniso q:`"));
                    }
                };
                if slot.is_some() {
                    return Err(err(line, head.col, "repeated aniso line"));
                }
                let set = {
                    let mut s = RootSet::EMPTY;
                    for &t in &toks[2..] {
                        s.insert(p.names.iter().position(|n| n == t.text).ok_or_else(|| {
                            DslError::UnknownNode {
                                line,
                                col: t.col,
                                name: t.text.to_string(),
                            }
                        })?);
                    }
                    s
                };
                match level {
                    Some("r:") => p.aniso_r = Some(set),
                    _ => p.aniso_q = Some(set),
                }
            }
            "cstar:" | "galois:" => {
                let (rest, col0) = rest_after_colon(raw).unwrap();
                let cycles = p.cycles(line, rest, col0)?;
                if head.text == "cstar:" {
                    if p.cstar_raw.is_some() {
                        return Err(err(line, head.col, "repeated `cstar` line"));
                    }
                    p.cstar_raw = Some((line, head.col, cycles));
                } else {
                    p.galois_raw.push((line, head.col, cycles));
                }
            }
            "delta:" | "delta_mu:" => {
                let set = p.node_set(line, &toks[1..])?;
                let slot = if head.text == "delta:" {
                    &mut p.delta
                } else {
                    &mut p.delta_mu
                };
                if slot.is_some() {
                    return Err(err(
                        line,
                        head.col,
                        format!("repeated `{}` line", head.text),
                    ));
                }
                *slot = Some(set);
            }
            "expect:" => {
                if p.expect.is_some() {
                    return Err(err(line, head.col, "repeated `expect` line"));
                }
                let mut rational = None;
                let mut route = None;
                for t in &toks[1..] {
                    match t.text.split_once('=') {
                        Some(("rational", "true")) => rational = Some(true),
                        Some(("rational", "false")) => rational = Some(false),
                        Some(("route", r)) if !r.is_empty() => route = Some(r.to_string()),
                        _ => return Err(err(line, t.col, format!("unexpected `{}`", t.text))),
                    }
                }
                let Some(rational) = rational else {
                    return Err(err(line, head.col, "`expect` needs rational=<true|false>"));
                };
                p.expect = Some(Expectation { rational, route });
            }
            other => {
                return Err(err(line, head.col, format!("unknown keyword `{other}`")));
            }
        }
    }
    let n = p.names.len();
    let Some(name) = p.name.take() else {
        return Err(err(last_line.max(1), 1, "missing `index \"<name>\"` line"));
    };
    let to_map = |(line, col, cycles): &(usize, usize, Vec<Vec<usize>>)| {
        NodeMap::from_cycles(n, cycles).ok_or_else(|| DslError::BadCycleNotation {
            line: *line,
            col: *col,
            message: "not a permutation".into(),
        })
    };
    p.cstar = match &p.cstar_raw {
        Some(raw) => Some(to_map(raw)?),
        None => None,
    };
    let galois_gens = p
        .galois_raw
        .iter()
        .map(to_map)
        .collect::<Result<Vec<_>, _>>()?;
    let diagram = DynkinDiagram::new(p.names, p.edges)?;
    Ok(IndexDocument {
        name,
        index: TwoLevelIndex {
            diagram,
            aniso_r: p.aniso_r.unwrap_or_default(),
            aniso_q: p.aniso_q.unwrap_or_default(),
            cstar: p.cstar.unwrap_or_else(|| NodeMap::identity(n)),
            galois_gens,
        },
        delta: p.delta.unwrap_or_default(),
        delta_mu: p.delta_mu,
        expect: p.expect,
    })
}

/// Canonical text form; `parse(serialize(doc)) == doc`.
pub fn serialize(doc: &IndexDocument) -> String {
    let ix = &doc.index;
    let d = &ix.diagram;
    let names = |s: RootSet| d.set_names(s).join(" ");
    let line = |key: &str, s: RootSet| {
        let body = names(s);
        if body.is_empty() {
            format!("{key}\n")
        } else {
            format!("{key} {body}\n")
        }
    };
    let mut out = String::new();
    writeln!(out, "index \"{}\"", doc.name).unwrap();
    if !d.is_empty() {
        writeln!(out, "node {}", d.names().join(" ")).unwrap();
    }
    for e in d.edges() {
        match e.short {
            None => writeln!(out, "edge {} {}", d.name(e.a), d.name(e.b)).unwrap(),
            Some(s) => writeln!(
                out,
                "edge {} {} {} short={}",
                d.name(e.a),
                d.name(e.b),
                e.label,
                d.name(s)
            )
            .unwrap(),
        }
    }
    out.push_str(&line("aniso r:", ix.aniso_r));
    out.push_str(&line("aniso q:", ix.aniso_q));
    if !ix.cstar.is_identity() {
        writeln!(out, "cstar: {}", cycle_notation(d, &ix.cstar)).unwrap();
    }
    for g in &ix.galois_gens {
        writeln!(out, "galois: {}", cycle_notation(d, g)).unwrap();
    }
    out.push_str(&line("delta:", doc.delta));
    if let Some(mu) = doc.delta_mu {
        out.push_str(&line("delta_mu:", mu));
    }
    if let Some(e) = &doc.expect {
        write!(out, "expect: rational={}", e.rational).unwrap();
        if let Some(r) = &e.route {
            write!(out, " route={r}").unwrap();
        }
        out.push('\n');
    }
    out
}

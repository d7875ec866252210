//! The bundled example indices with their expected verdicts.

use crate::dsl::{parse, IndexDocument};

pub const ENTRIES: [(&str, &str); 12] = [
    ("ex1a", include_str!("../corpus/ex1a.sidx")),
    ("ex1b", include_str!("../corpus/ex1b.sidx")),
    ("dim1-a", include_str!("../corpus/dim1-a.sidx")),
    ("dim1-b", include_str!("../corpus/dim1-b.sidx")),
    ("dim1-c", include_str!("../corpus/dim1-c.sidx")),
    ("ex2-a", include_str!("../corpus/ex2-a.sidx")),
    ("ex2-b", include_str!("../corpus/ex2-b.sidx")),
    ("ex2-c", include_str!("../corpus/ex2-c.sidx")),
    ("ex3-quad-1", include_str!("../corpus/ex3-quad-1.sidx")),
    ("ex3-quad-2", include_str!("../corpus/ex3-quad-2.sidx")),
    ("ex3-cubic-1", include_str!("../corpus/ex3-cubic-1.sidx")),
    ("ex3-cubic-2", include_str!("../corpus/ex3-cubic-2.sidx")),
];

/// Every bundled document, in corpus order.
pub fn corpus() -> Vec<IndexDocument> {
    ENTRIES
        .iter()
        .map(|(name, text)| {
            parse(text).unwrap_or_else(|e| panic!("corpus entry {name} does not parse: {e}"))
        })
        .collect()
}

pub fn entry(name: &str) -> Option<IndexDocument> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse(text).expect("corpus entries parse"))
}

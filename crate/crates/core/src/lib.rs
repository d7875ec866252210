//! Two-level indices, Satake compactification combinatorics and the
//! geometric rationality criterion.

pub mod compactification;
pub mod corpus;
pub mod diagram;
pub mod dsl;
pub mod emit;
pub mod families;
pub mod gen;
pub mod graph;
pub mod index;
pub mod rationality;
pub mod report;
pub mod rootset;

pub use diagram::{ComponentType, DiagramError, DynkinDiagram, Edge, NodeMap, TypeFamily};
pub use dsl::{parse, serialize, DslError, IndexDocument};
pub use graph::RootGraph;
pub use index::{
    Diagnostic, GaloisClosure, IndexError, KLevel, KRoot, LevelView, Severity, TwoLevelIndex,
};
pub use rationality::{Route, Verdict};
pub use report::{classify, ClassifyError, Report};
pub use rootset::RootSet;

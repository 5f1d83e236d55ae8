//! Gallai-Ramsey numbers of star unions `K(1,n) ∪ K(1,m)`.
//!
//! * [`coloring`]: colored complete graphs, rainbow-triangle and star-union detectors
//! * [`gallai`]: Gallai partitions, reduced graphs, the stability checker
//! * [`constructions`]: lower-bound witness colorings with self-verification
//! * [`formulas`]: closed forms with guard reporting
//! * [`search`]: exhaustive symmetry-pruned search with checkpoints
//! * [`format`]: the text coloring format
//!
//! Batch work goes through [`exec::map`], which uses rayon when the
//! `parallel` feature is enabled (the default) and runs sequentially otherwise.

pub mod bitset;
pub mod coloring;
pub mod constructions;
pub mod exec;
pub mod format;
pub mod formulas;
pub mod gallai;
pub mod search;

pub use coloring::{Color, ColoredComplete, ColoringError, StarUnionEmbedding, StarUnionPattern, Vertex};
pub use exec::Threads;

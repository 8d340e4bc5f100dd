//! Three-braid closures, their double branched covers, and certificates
//! that the fundamental groups of those covers are not left-orderable.

pub mod braid;
pub mod diagram;
pub mod lo_checker;
pub mod pipeline;
pub mod presentation;
pub mod rewriter;

pub use braid::{parse_braid, BaldwinClass, BraidLetter, BraidWord};
pub use diagram::{CheckerboardGraph, DecoratedCycleGraph};
pub use lo_checker::Verdict;
pub use rewriter::FreeWord;

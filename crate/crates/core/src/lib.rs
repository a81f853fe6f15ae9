//! Liking digraphs and symmetric block designs.
//!
//! A `(t, λ)`-liking digraph is a loopless digraph in which every `t`
//! vertices have exactly `λ` common out-neighbors; in a two-way one they
//! also have exactly `λ` common in-neighbors. This crate builds, verifies
//! and exhaustively enumerates such digraphs, and converts between
//! two-way `(2, λ)`-liking digraphs and symmetric BIBDs.
//!
//! Module map:
//!
//! - [`digraph`]: immutable loopless digraphs and generators.
//! - [`liking`]: liking / two-way checks, degree bounds, the degree equation.
//! - [`design`]: block designs, verification, difference-set generators.
//! - [`matching`]: Hall's condition and systems of distinct representatives.
//! - [`construction`]: design to digraph and back.
//! - [`search`]: pruned exhaustive enumeration, canonical forms, theorem audits.
//! - [`cli`]: text formats, reports and the `liking` command line.

pub mod bitset;
pub mod cli;
pub mod construction;
pub mod design;
pub mod digraph;
pub mod liking;
pub mod matching;
pub mod search;

pub use bitset::VertexSet;
pub use construction::{design_to_digraph, digraph_to_design, Construction, ConstructionError};
pub use design::{verify_design, Design, DesignParams};
pub use digraph::{complete_digraph, fancy_wheel, Digraph};
pub use liking::{is_liking, is_two_way_liking, Direction, LikingParams, Verdict, Violation};
pub use search::{enumerate_liking, SearchConfig, SearchMode, SearchReport, SearchSpec};

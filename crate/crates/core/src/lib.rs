//! Semi-total and total colorings of graphs, Kempe-style swaps along
//! maximal color-alternating paths, and the reductions they drive toward
//! total and equitable colorings.

pub mod catalog;
pub mod codes;
pub mod coloring;
pub mod covering;
pub mod dot;
pub mod error;
pub mod families;
pub mod graph;
pub mod kempe;
pub mod oracle;
pub mod pattern;
pub mod search;

pub use coloring::{format_listing, ClassCount, ClassListing, Color, Coloring, ValidationReport, Violation};
pub use error::{Error, Result};
pub use graph::{ElementRef, Graph, GraphJson, HamiltonDecomposition};
pub use pattern::{apply_pattern, default_lacunar_stc, PatternString};
pub use covering::{lift_coloring, verify_covering, CoveringMap};
pub use kempe::{enumerate_mcaps, swap, Mcap, StepClass};
pub use search::{reduce, Budget, Goal, ReductionTrace};

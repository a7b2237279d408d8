//! Text formats: the poset file grammar, DOT output, and structured reports.

mod dot;
mod parse;
mod report;

pub use dot::{dual_graph, poset_graph, second_dual_graph, DotGraph};
pub use parse::{parse_poset, ParseError, PosetDocument};
pub use report::{index_key, Report};

//! Command-line surface for the clean-graph toolkit: the ring-spec
//! grammar, the graph6 and DOT exporters, and the subcommand dispatch.

pub mod app;
pub mod export;
pub mod parse;

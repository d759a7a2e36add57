//! Shared fixtures for the benchmarks.

use coloring_games::{Family, Position, Ruleset};

/// Uncolored start of `ruleset` on a family shorthand such as `path:12`.
pub fn start(family: &str, ruleset: Ruleset, k: u32) -> Position {
    let graph = family
        .parse::<Family>()
        .and_then(|f| f.build())
        .unwrap_or_else(|e| panic!("bad fixture `{family}`: {e}"));
    Position::from_parts(graph, ruleset, k, None, None).expect("fixture is a legal game")
}

//! Impartial graph-coloring games: rulesets, a memoized Sprague-Grundy
//! solver, fast path algorithms and Node-Kayles reductions.

pub mod game;
pub mod graph;
pub mod oriented_path;
pub mod reductions;
pub mod rules;
pub mod sequential;

pub use game::{
    grundy, legal_moves, mex, nim_sum, outcome, Board, Color, Move, Nimber, Outcome, Position, PositionError,
    SolveError, Solver, SolverConfig, UNCOLORED,
};
pub use graph::{Family, Graph, GraphDocument, GraphError, Vertex};
pub use rules::{closed_form_outcome, is_legal_coloring, outcome_by_involution, Ruleset, RulesetError, Verdict, BLUE, RED};
pub use sequential::{brute_force_outcome, classify, decide_outcome, SequentialError, SequentialOrder, VertexClass};
pub use oriented_path::{GrundyTable, PathClass, PathError, RareReport, TableMode};
pub use reductions::{
    kayles_position, reduce_to_distance_2k, reduce_to_oriented_br, reduce_to_oriented_k, reduce_to_proper_k,
    verify_equivalence, EquivalenceReport, ReducedInstance, ReductionError,
};

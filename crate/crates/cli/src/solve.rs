use std::fmt;
use std::sync::Arc;

use clap::Args;
use coloring_games::graph::InvolutionSearch;
use coloring_games::{
    closed_form_outcome, decide_outcome, outcome_by_involution, Board, Outcome, Position, Ruleset, SequentialOrder,
    Solver, SolverConfig, Verdict, UNCOLORED,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::{coloring, load_graph, parse_list};
use crate::output::Output;

/// Caps the transposition table, in bytes.
pub const TT_BYTES_VAR: &str = "COLORING_GAMES_TT_BYTES";

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Family shorthand (`path:9`, `grid:3,3`, `dcycle:7`, ...) or a graph file.
    #[arg(long)]
    pub graph: String,
    /// proper, oriented, oriented-br, weak, distance or sequential.
    #[arg(long)]
    pub ruleset: String,
    /// Number of colors; graph files may supply it.
    #[arg(long)]
    pub k: Option<u32>,
    /// Distance for the distance ruleset.
    #[arg(long)]
    pub d: Option<usize>,
    /// Starting colors, one per vertex, 0 for uncolored.
    #[arg(long)]
    pub coloring: Option<String>,
    /// Vertices in the order they are painted (sequential ruleset).
    #[arg(long)]
    pub order: Option<String>,
    /// Skip closed forms and symmetry shortcuts.
    #[arg(long)]
    pub search: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Involution,
    Linear,
    Search,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Involution => "involution",
            Method::Linear => "linear",
            Method::Search => "search",
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MoveRecord {
    pub vertex: usize,
    pub color: u8,
}

#[derive(Debug, Serialize)]
pub struct SolveRecord {
    pub graph: String,
    pub ruleset: String,
    pub k: u32,
    pub outcome: String,
    pub grundy: Option<u32>,
    pub winning_move: Option<MoveRecord>,
    pub method: Method,
}

impl fmt::Display for SolveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph: {}", self.graph)?;
        writeln!(f, "ruleset: {} (k = {})", self.ruleset, self.k)?;
        writeln!(f, "outcome: {}", self.outcome)?;
        if let Some(g) = self.grundy {
            writeln!(f, "grundy: {g}")?;
        }
        if let Some(m) = self.winning_move {
            writeln!(f, "winning move: color {} on vertex {}", m.color, m.vertex)?;
        }
        write!(f, "method: {}", self.method)
    }
}

/// Solver settings from `--threads` and the table-size variable.
pub fn solver_config(threads: usize) -> Result<SolverConfig, CliError> {
    let config = SolverConfig { threads: threads.max(1), ..SolverConfig::default() };
    match std::env::var(TT_BYTES_VAR) {
        Ok(v) => {
            let bytes: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("{TT_BYTES_VAR} must be a byte count, got `{v}`")))?;
            Ok(config.with_table_bytes(bytes))
        }
        Err(_) => Ok(config),
    }
}

pub fn run(args: SolveArgs, threads: usize, out: &Output) -> Result<(), CliError> {
    let record = solve(&args, threads)?;
    out.emit(&record)?;
    Ok(())
}

pub fn solve(args: &SolveArgs, threads: usize) -> Result<SolveRecord, CliError> {
    let ruleset = Ruleset::from_token(&args.ruleset, args.d)?;
    let inst = load_graph(&args.graph)?;
    let k = match args.k.or(inst.k) {
        Some(k) => k,
        None if ruleset == Ruleset::OrientedBlueRed => 2,
        None => return Err(CliError::usage("--k is required")),
    };
    let colors = coloring(&inst, args.coloring.as_deref())?;
    let order = match args.order.as_deref() {
        Some(text) => Some(parse_list(text, "order")?),
        None => inst.order.clone(),
    };
    let order = order.map(SequentialOrder::new).transpose()?;
    let board = Arc::new(Board::new(inst.graph.clone(), ruleset, k, order)?);
    let position = Position::new(Arc::clone(&board), colors)?;

    let mut record = SolveRecord {
        graph: inst.label.clone(),
        ruleset: ruleset.to_string(),
        k,
        outcome: String::new(),
        grundy: None,
        winning_move: None,
        method: Method::Search,
    };
    let empty = position.coloring().iter().all(|&c| c == UNCOLORED);
    if !args.search && empty {
        if let Some(family) = &inst.family {
            let cf = closed_form_outcome(ruleset, family, k);
            if let Some(o) = cf.verdict.outcome() {
                record.outcome = o.to_string();
                record.grundy = cf.grundy.map(|g| g.0);
                record.method = Method::ClosedForm;
                return Ok(record);
            }
        }
        if ruleset == Ruleset::Proper {
            let search = match &inst.family {
                Some(f) => InvolutionSearch::with_hint(f.clone()),
                None => InvolutionSearch::default(),
            };
            let verdict = outcome_by_involution(&inst.graph, k, &search);
            if verdict != Verdict::Unknown {
                record.outcome = verdict.to_string();
                record.method = Method::Involution;
                return Ok(record);
            }
        }
        if ruleset == Ruleset::Sequential && k == 2 && inst.graph.path_sequence().is_some() {
            let order = board.order().expect("validated sequential board");
            record.outcome = decide_outcome(&inst.graph, order)?.to_string();
            record.method = Method::Linear;
            return Ok(record);
        }
    }

    let solver = Solver::with_config(board, solver_config(threads)?);
    let g = solver.grundy(&position)?;
    record.grundy = Some(g.0);
    record.outcome = Outcome::of(g).to_string();
    if Outcome::of(g) == Outcome::N {
        record.winning_move = solver.winning_move(&position)?.map(|m| MoveRecord { vertex: m.vertex, color: m.color });
    }
    Ok(record)
}

//! Memoized Sprague-Grundy search.
//!
//! Two engines share one transposition table per solver:
//!
//! * the *list* engine, for rulesets where an uncolored vertex's options
//!   depend only on its painted neighbors (proper, distance via the power
//!   graph, oriented Blue-Red). The state is the sorted list of playable
//!   vertices with their remaining color masks; it splits into connected
//!   pieces whose values are nim-summed.
//! * the *coloring* engine, keyed on the packed coloring vector, optionally
//!   with colors relabelled in order of first use. Weak 2-coloring boards are
//!   split into graph components first, each with its own sub-solver.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use thiserror::Error;

use super::{Board, Color, Move, Nimber, Outcome, Position, UNCOLORED};
use crate::graph::Vertex;
use crate::rules::{Ruleset, BLUE, RED};

/// Options are evaluated in parallel only this close to the root.
const PARALLEL_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("transposition table budget of {0} entries exhausted")]
    BudgetExceeded(usize),
    #[error("position is not on this solver's board")]
    ForeignPosition,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Split positions into independent parts where the ruleset allows it.
    pub decompose: bool,
    /// Key color-symmetric rulesets on colorings relabelled by first use.
    pub canonical_colors: bool,
    /// Worker threads; 1 keeps everything on the calling thread.
    pub threads: usize,
    /// Cap on stored entries; `None` is unbounded.
    pub max_entries: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { decompose: true, canonical_colors: true, threads: 1, max_entries: None }
    }
}

impl SolverConfig {
    /// Rough footprint of one table entry, key and map overhead included.
    pub const BYTES_PER_ENTRY: usize = 96;

    pub fn with_table_bytes(mut self, bytes: usize) -> Self {
        self.max_entries = Some((bytes / Self::BYTES_PER_ENTRY).max(1));
        self
    }
}

type Key = Box<[u64]>;

pub struct Solver {
    board: Arc<Board>,
    config: SolverConfig,
    engine: Engine,
    values: DashMap<Key, u32>,
    wins: DashMap<Key, bool>,
    entries: AtomicUsize,
    pool: Option<Arc<rayon::ThreadPool>>,
}

enum Engine {
    Lists(ListRules),
    Colorings { canonical: bool },
    Split(Vec<Part>),
}

struct Part {
    vertices: Vec<Vertex>,
    solver: Solver,
}

impl Solver {
    pub fn new(board: Arc<Board>) -> Self {
        Self::with_config(board, SolverConfig::default())
    }

    pub fn with_config(board: Arc<Board>, config: SolverConfig) -> Self {
        let pool = (config.threads > 1).then(|| {
            Arc::new(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(config.threads)
                    .build()
                    .expect("thread pool"),
            )
        });
        Self::build(board, config, pool)
    }

    fn build(board: Arc<Board>, config: SolverConfig, pool: Option<Arc<rayon::ThreadPool>>) -> Self {
        let canonical = config.canonical_colors && board.ruleset().is_color_symmetric();
        let engine = match board.ruleset() {
            Ruleset::Proper | Ruleset::Distance { .. } | Ruleset::OrientedBlueRed => {
                Engine::Lists(ListRules::new(&board))
            }
            Ruleset::Weak2 if config.decompose => {
                let comps = board.graph().components();
                if comps.len() > 1 {
                    let parts = comps
                        .into_iter()
                        .map(|vertices| {
                            let sub = board.graph().induced_subgraph(&vertices);
                            let sub_board = Board::new(sub, board.ruleset(), board.k(), None)
                                .expect("component of a valid board");
                            let solver = Solver::build(Arc::new(sub_board), config.clone(), pool.clone());
                            Part { vertices, solver }
                        })
                        .collect();
                    Engine::Split(parts)
                } else {
                    Engine::Colorings { canonical }
                }
            }
            _ => Engine::Colorings { canonical },
        };
        Solver {
            board,
            config,
            engine,
            values: DashMap::new(),
            wins: DashMap::new(),
            entries: AtomicUsize::new(0),
            pool,
        }
    }

    pub fn board(&self) -> &Arc<Board> {
        &self.board
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    /// Entries currently stored, over all sub-solvers.
    pub fn table_entries(&self) -> usize {
        let own = self.entries.load(Ordering::Relaxed);
        match &self.engine {
            Engine::Split(parts) => own + parts.iter().map(|p| p.solver.table_entries()).sum::<usize>(),
            _ => own,
        }
    }

    pub fn grundy(&self, p: &Position) -> Result<Nimber, SolveError> {
        self.check(p)?;
        self.run(|| self.value_of(p.coloring())).map(Nimber)
    }

    /// Outcome class; stops at the first winning option when the coloring
    /// engine is in use.
    pub fn outcome(&self, p: &Position) -> Result<Outcome, SolveError> {
        self.check(p)?;
        self.run(|| self.outcome_of(p.coloring()))
    }

    /// First move (by vertex, then color) to a P-position, if any.
    pub fn winning_move(&self, p: &Position) -> Result<Option<Move>, SolveError> {
        self.check(p)?;
        self.run(|| {
            let mut coloring = p.coloring().to_vec();
            for mv in self.board.moves(&coloring) {
                coloring[mv.vertex] = mv.color;
                let lost = self.outcome_of(&coloring)? == Outcome::P;
                coloring[mv.vertex] = UNCOLORED;
                if lost {
                    return Ok(Some(mv));
                }
            }
            Ok(None)
        })
    }

    fn check(&self, p: &Position) -> Result<(), SolveError> {
        if Arc::ptr_eq(p.board(), &self.board) {
            Ok(())
        } else {
            Err(SolveError::ForeignPosition)
        }
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }

    fn value_of(&self, coloring: &[Color]) -> Result<u32, SolveError> {
        match &self.engine {
            Engine::Lists(rules) => {
                let state = rules.initial(&self.board, coloring);
                self.list_value(rules, &state, 0)
            }
            Engine::Colorings { canonical } => {
                let mut c = coloring.to_vec();
                self.coloring_value(*canonical, &mut c, 0)
            }
            Engine::Split(parts) => parts.iter().try_fold(0, |acc, part| {
                let local: Vec<Color> = part.vertices.iter().map(|&v| coloring[v]).collect();
                Ok(acc ^ part.solver.value_of(&local)?)
            }),
        }
    }

    fn outcome_of(&self, coloring: &[Color]) -> Result<Outcome, SolveError> {
        match &self.engine {
            Engine::Colorings { canonical } => {
                let mut c = coloring.to_vec();
                let win = self.coloring_wins(*canonical, &mut c)?;
                Ok(if win { Outcome::N } else { Outcome::P })
            }
            _ => Ok(Outcome::of(Nimber(self.value_of(coloring)?))),
        }
    }

    fn store<V>(&self, map: &DashMap<Key, V>, key: Key, value: V) -> Result<(), SolveError> {
        if let Some(max) = self.config.max_entries {
            if self.entries.load(Ordering::Relaxed) >= max {
                return Err(SolveError::BudgetExceeded(max));
            }
        }
        if map.insert(key, value).is_none() {
            self.entries.fetch_add(1, Ordering::Relaxed);
        }
        Ok(())
    }

    fn mex_of<T: Sync>(
        &self,
        items: &[T],
        depth: usize,
        eval: impl Fn(&T) -> Result<u32, SolveError> + Sync,
    ) -> Result<u32, SolveError> {
        let values: Vec<u32> = if self.pool.is_some() && depth < PARALLEL_DEPTH {
            items.par_iter().map(&eval).collect::<Result<_, _>>()?
        } else {
            items.iter().map(&eval).collect::<Result<_, _>>()?
        };
        Ok(super::mex(values).0)
    }

    fn list_value(&self, rules: &ListRules, state: &[(u32, u32)], depth: usize) -> Result<u32, SolveError> {
        if state.is_empty() {
            return Ok(0);
        }
        if self.config.decompose {
            let pieces = rules.split(state);
            if pieces.len() > 1 {
                return pieces
                    .iter()
                    .try_fold(0, |acc, piece| Ok(acc ^ self.list_piece(rules, piece, depth)?));
            }
        }
        self.list_piece(rules, state, depth)
    }

    fn list_piece(&self, rules: &ListRules, state: &[(u32, u32)], depth: usize) -> Result<u32, SolveError> {
        if let [(_, mask)] = state {
            // A lone vertex is one move whatever its colors.
            debug_assert_ne!(*mask, 0);
            return Ok(1);
        }
        let key: Key = state.iter().map(|&(v, m)| (v as u64) << 32 | m as u64).collect();
        if let Some(v) = self.values.get(&key) {
            return Ok(*v);
        }
        let children = rules.children(state);
        let g = self.mex_of(&children, depth, |child| self.list_value(rules, child, depth + 1))?;
        self.store(&self.values, key, g)?;
        Ok(g)
    }

    fn coloring_value(&self, canonical: bool, coloring: &mut Vec<Color>, depth: usize) -> Result<u32, SolveError> {
        let key = pack(coloring, self.board.k(), canonical);
        if let Some(v) = self.values.get(&key) {
            return Ok(*v);
        }
        let moves = self.board.moves(coloring);
        let g = if self.pool.is_some() && depth < PARALLEL_DEPTH {
            let base: &[Color] = coloring;
            self.mex_of(&moves, depth, |mv| {
                let mut c = base.to_vec();
                c[mv.vertex] = mv.color;
                self.coloring_value(canonical, &mut c, depth + 1)
            })?
        } else {
            let mut values = Vec::with_capacity(moves.len());
            for mv in moves {
                coloring[mv.vertex] = mv.color;
                let r = self.coloring_value(canonical, coloring, depth + 1);
                coloring[mv.vertex] = UNCOLORED;
                values.push(r?);
            }
            super::mex(values).0
        };
        self.store(&self.values, key, g)?;
        Ok(g)
    }

    fn coloring_wins(&self, canonical: bool, coloring: &mut Vec<Color>) -> Result<bool, SolveError> {
        let key = pack(coloring, self.board.k(), canonical);
        if let Some(v) = self.values.get(&key) {
            return Ok(*v != 0);
        }
        if let Some(w) = self.wins.get(&key) {
            return Ok(*w);
        }
        let mut win = false;
        for mv in self.board.moves(coloring) {
            coloring[mv.vertex] = mv.color;
            let r = self.coloring_wins(canonical, coloring);
            coloring[mv.vertex] = UNCOLORED;
            if !r? {
                win = true;
                break;
            }
        }
        self.store(&self.wins, key, win)?;
        Ok(win)
    }
}

/// Packs a coloring into words, relabelling colors by first use if asked.
fn pack(coloring: &[Color], k: u32, canonical: bool) -> Key {
    let bits = (32 - k.leading_zeros()) as usize;
    let per_word = 64 / bits;
    let mut relabel = [0u8; 64];
    let mut next = 0u8;
    let mut words = vec![0u64; coloring.len().div_ceil(per_word)];
    for (i, &c) in coloring.iter().enumerate() {
        let c = if canonical && c != UNCOLORED {
            let slot = &mut relabel[c as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        } else {
            c
        };
        words[i / per_word] |= (c as u64) << (bits * (i % per_word));
    }
    words.into_boxed_slice()
}

/// How painting a vertex changes a neighbor's remaining colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Effect {
    /// The neighbor loses the painted color.
    Clear,
    /// Arc from the painted vertex to the neighbor.
    Forward,
    /// Arc from the neighbor to the painted vertex.
    Backward,
    /// Arcs both ways: the neighbor can no longer be painted.
    Block,
}

const BLUE_BIT: u32 = 1 << (BLUE - 1);
const RED_BIT: u32 = 1 << (RED - 1);

impl Effect {
    fn apply(self, mask: u32, c: Color) -> u32 {
        match self {
            Effect::Clear => mask & !(1 << (c - 1)),
            Effect::Forward if c == BLUE => mask & RED_BIT,
            Effect::Backward if c == RED => mask & BLUE_BIT,
            _ => 0,
        }
    }
}

struct ListRules {
    adj: Vec<Vec<(u32, Effect)>>,
}

impl ListRules {
    fn new(board: &Board) -> Self {
        let n = board.n();
        let adj = if board.ruleset() == Ruleset::OrientedBlueRed {
            let g = board.graph();
            (0..n)
                .map(|v| {
                    g.neighbors(v)
                        .iter()
                        .map(|&w| {
                            let effect = match (g.has_edge(v, w), g.has_edge(w, v)) {
                                (true, true) => Effect::Block,
                                (true, false) => Effect::Forward,
                                _ => Effect::Backward,
                            };
                            (w as u32, effect)
                        })
                        .collect()
                })
                .collect()
        } else {
            let g = board.rules_graph();
            (0..n)
                .map(|v| g.neighbors(v).iter().map(|&w| (w as u32, Effect::Clear)).collect())
                .collect()
        };
        ListRules { adj }
    }

    fn initial(&self, board: &Board, coloring: &[Color]) -> Vec<(u32, u32)> {
        (0..board.n())
            .filter(|&v| coloring[v] == UNCOLORED)
            .filter_map(|v| {
                let mask = (1..=board.k() as Color)
                    .filter(|&c| board.can_paint(coloring, v, c))
                    .fold(0u32, |m, c| m | 1 << (c - 1));
                (mask != 0).then_some((v as u32, mask))
            })
            .collect()
    }

    fn children(&self, state: &[(u32, u32)]) -> Vec<Vec<(u32, u32)>> {
        let mut out = Vec::new();
        for (i, &(v, mask)) in state.iter().enumerate() {
            let mut bits = mask;
            while bits != 0 {
                let c = bits.trailing_zeros() as Color + 1;
                bits &= bits - 1;
                let mut child = state.to_vec();
                child[i].1 = 0;
                for &(w, effect) in &self.adj[v as usize] {
                    if let Ok(j) = state.binary_search_by_key(&w, |e| e.0) {
                        child[j].1 = effect.apply(child[j].1, c);
                    }
                }
                child.retain(|e| e.1 != 0);
                out.push(child);
            }
        }
        out
    }

    fn split(&self, state: &[(u32, u32)]) -> Vec<Vec<(u32, u32)>> {
        let mut piece_of = vec![usize::MAX; state.len()];
        let mut pieces = Vec::new();
        for start in 0..state.len() {
            if piece_of[start] != usize::MAX {
                continue;
            }
            let id = pieces.len();
            piece_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let i = members[head];
                head += 1;
                for &(w, _) in &self.adj[state[i].0 as usize] {
                    if let Ok(j) = state.binary_search_by_key(&w, |e| e.0) {
                        if piece_of[j] == usize::MAX {
                            piece_of[j] = id;
                            members.push(j);
                        }
                    }
                }
            }
            members.sort_unstable();
            pieces.push(members.into_iter().map(|i| state[i]).collect::<Vec<_>>());
        }
        pieces
    }
}

/// Grundy value of `p` with a fresh default solver.
pub fn grundy(p: &Position) -> Result<Nimber, SolveError> {
    Solver::new(Arc::clone(p.board())).grundy(p)
}

/// Outcome of `p` with a fresh default solver.
pub fn outcome(p: &Position) -> Result<Outcome, SolveError> {
    Solver::new(Arc::clone(p.board())).outcome(p)
}

//! Positions, moves and nimber arithmetic.
//!
//! A move paints exactly one previously uncolored vertex; a colored vertex is
//! never repainted.

mod solver;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::rules::{self, Ruleset, RulesetError};
use crate::sequential::SequentialOrder;

pub use solver::{grundy, outcome, SolveError, Solver, SolverConfig};

/// A color in `1..=k`; `0` means uncolored.
pub type Color = u8;

pub const UNCOLORED: Color = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nimber(pub u32);

impl Nimber {
    pub const ZERO: Nimber = Nimber(0);

    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Nimber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::ops::BitXor for Nimber {
    type Output = Nimber;

    fn bitxor(self, rhs: Nimber) -> Nimber {
        Nimber(self.0 ^ rhs.0)
    }
}

impl std::ops::BitXorAssign for Nimber {
    fn bitxor_assign(&mut self, rhs: Nimber) {
        self.0 ^= rhs.0;
    }
}

/// Smallest non-negative integer missing from `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> Nimber {
    let mut seen: Vec<u64> = Vec::new();
    for v in values {
        let (word, bit) = (v as usize / 64, v % 64);
        if word >= seen.len() {
            seen.resize(word + 1, 0);
        }
        seen[word] |= 1 << bit;
    }
    let m = seen
        .iter()
        .position(|&w| w != u64::MAX)
        .map_or(seen.len() * 64, |i| i * 64 + seen[i].trailing_ones() as usize);
    Nimber(m as u32)
}

pub fn nim_sum(a: Nimber, b: Nimber) -> Nimber {
    a ^ b
}

/// Outcome class under normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// The player to move wins.
    N,
    /// The previous player wins.
    P,
}

impl Outcome {
    pub fn of(g: Nimber) -> Outcome {
        if g.0 == 0 {
            Outcome::P
        } else {
            Outcome::N
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::N => "N",
            Outcome::P => "P",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub vertex: Vertex,
    pub color: Color,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "color {} on vertex {}", self.color, self.vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error(transparent)]
    Ruleset(#[from] RulesetError),
    #[error("the coloring breaks the {0} rules")]
    IllegalColoring(Ruleset),
    #[error("{0} is not a legal move")]
    IllegalMove(Move),
}

/// The immutable part of a game: graph, ruleset, color count and turn order.
///
/// Boards are shared behind an [`Arc`]; a [`Solver`] caches values for one
/// board only.
#[derive(Debug, Clone)]
pub struct Board {
    graph: Graph,
    /// Graph the legality kernel runs on: the power graph for distance play.
    rules_graph: Option<Graph>,
    ruleset: Ruleset,
    k: u32,
    order: Option<SequentialOrder>,
}

impl Board {
    pub fn new(graph: Graph, ruleset: Ruleset, k: u32, order: Option<SequentialOrder>) -> Result<Self, RulesetError> {
        ruleset.validate(&graph, k, order.as_ref())?;
        let rules_graph = match ruleset {
            Ruleset::Distance { d } => Some(graph.power_graph(d).map_err(|_| RulesetError::ZeroDistance)?),
            _ => None,
        };
        Ok(Board { graph, rules_graph, ruleset, k, order })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rules_graph(&self) -> &Graph {
        self.rules_graph.as_ref().unwrap_or(&self.graph)
    }

    pub fn ruleset(&self) -> Ruleset {
        self.ruleset
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> Option<&SequentialOrder> {
        self.order.as_ref()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub(crate) fn is_legal(&self, coloring: &[Color]) -> bool {
        rules::legal(self.ruleset, &self.graph, self.rules_graph(), coloring, self.order.as_ref())
    }

    pub(crate) fn can_paint(&self, coloring: &[Color], v: Vertex, c: Color) -> bool {
        rules::can_paint(self, coloring, v, c)
    }

    /// Legal moves from a legal `coloring`, by vertex then color.
    pub(crate) fn moves(&self, coloring: &[Color]) -> Vec<Move> {
        let vertices: Vec<Vertex> = match &self.order {
            Some(order) => {
                let painted = coloring.iter().filter(|&&c| c != UNCOLORED).count();
                if painted < order.len() {
                    vec![order.vertex_at(painted)]
                } else {
                    Vec::new()
                }
            }
            None => (0..self.n()).filter(|&v| coloring[v] == UNCOLORED).collect(),
        };
        let mut out = Vec::new();
        for v in vertices {
            for c in 1..=self.k as Color {
                if self.can_paint(coloring, v, c) {
                    out.push(Move { vertex: v, color: c });
                }
            }
        }
        out
    }
}

/// A board together with a legal partial coloring.
#[derive(Debug, Clone)]
pub struct Position {
    board: Arc<Board>,
    coloring: Vec<Color>,
}

impl Position {
    pub fn new(board: Arc<Board>, coloring: Vec<Color>) -> Result<Self, PositionError> {
        rules::check_colors(board.graph(), board.k(), &coloring)?;
        if !board.is_legal(&coloring) {
            return Err(PositionError::IllegalColoring(board.ruleset()));
        }
        Ok(Position { board, coloring })
    }

    /// The uncolored starting position.
    pub fn start(board: Arc<Board>) -> Self {
        let n = board.n();
        Position { board, coloring: vec![UNCOLORED; n] }
    }

    /// Convenience: builds the board and checks the coloring in one go.
    pub fn from_parts(
        graph: Graph,
        ruleset: Ruleset,
        k: u32,
        coloring: Option<Vec<Color>>,
        order: Option<SequentialOrder>,
    ) -> Result<Self, PositionError> {
        let board = Arc::new(Board::new(graph, ruleset, k, order)?);
        match coloring {
            Some(c) => Position::new(board, c),
            None => Ok(Position::start(board)),
        }
    }

    pub fn board(&self) -> &Arc<Board> {
        &self.board
    }

    pub fn graph(&self) -> &Graph {
        self.board.graph()
    }

    pub fn ruleset(&self) -> Ruleset {
        self.board.ruleset()
    }

    pub fn k(&self) -> u32 {
        self.board.k()
    }

    pub fn order(&self) -> Option<&SequentialOrder> {
        self.board.order()
    }

    pub fn coloring(&self) -> &[Color] {
        &self.coloring
    }

    pub fn color_of(&self, v: Vertex) -> Option<Color> {
        match self.coloring[v] {
            UNCOLORED => None,
            c => Some(c),
        }
    }

    pub fn uncolored_count(&self) -> usize {
        self.coloring.iter().filter(|&&c| c == UNCOLORED).count()
    }

    pub fn legal_moves(&self) -> Vec<Move> {
        self.board.moves(&self.coloring)
    }

    pub fn is_terminal(&self) -> bool {
        self.legal_moves().is_empty()
    }

    pub fn is_legal_move(&self, mv: Move) -> bool {
        mv.vertex < self.board.n()
            && mv.color >= 1
            && mv.color as u32 <= self.k()
            && self.coloring[mv.vertex] == UNCOLORED
            && self.legal_moves().contains(&mv)
    }

    pub fn play(&self, mv: Move) -> Result<Position, PositionError> {
        if !self.is_legal_move(mv) {
            return Err(PositionError::IllegalMove(mv));
        }
        Ok(self.play_unchecked(mv))
    }

    pub(crate) fn play_unchecked(&self, mv: Move) -> Position {
        let mut coloring = self.coloring.clone();
        coloring[mv.vertex] = mv.color;
        Position { board: Arc::clone(&self.board), coloring }
    }

    pub fn options(&self) -> Vec<Position> {
        self.legal_moves().into_iter().map(|mv| self.play_unchecked(mv)).collect()
    }
}

/// Legal moves of `p`.
pub fn legal_moves(p: &Position) -> Vec<Move> {
    p.legal_moves()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::rules::{BLUE, RED};

    fn start(family: &str, ruleset: Ruleset, k: u32) -> Position {
        let g = family.parse::<Family>().unwrap().build().unwrap();
        Position::from_parts(g, ruleset, k, None, None).unwrap()
    }

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), Nimber(0));
        assert_eq!(mex([0, 1, 2]), Nimber(3));
        assert_eq!(mex([1, 2, 5]), Nimber(0));
        assert_eq!(mex((0..64).chain([65])), Nimber(64));
        assert_eq!(mex((0..128).rev()), Nimber(128));
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum(Nimber(0), Nimber(9)), Nimber(9));
        assert_eq!(nim_sum(Nimber(9), Nimber(9)), Nimber(0));
        assert_eq!(nim_sum(Nimber(24), Nimber(40)), Nimber(48));
    }

    #[test]
    fn move_counts() {
        assert_eq!(start("path:2", Ruleset::Proper, 2).legal_moves().len(), 4);
        let g = Family::Path(2).build().unwrap();
        let kayles = Position::from_parts(g, Ruleset::Proper, 1, Some(vec![1, 0]), None).unwrap();
        assert!(kayles.legal_moves().is_empty());
        let dp = Family::DirectedPath(2).build().unwrap();
        let br = Position::from_parts(dp, Ruleset::OrientedBlueRed, 2, Some(vec![RED, 0]), None).unwrap();
        assert!(br.legal_moves().is_empty());
        let dp = Family::DirectedPath(2).build().unwrap();
        let br = Position::from_parts(dp, Ruleset::OrientedBlueRed, 2, Some(vec![BLUE, 0]), None).unwrap();
        assert_eq!(br.legal_moves(), vec![Move { vertex: 1, color: RED }]);
    }

    #[test]
    fn play_rejects_illegal_moves() {
        let p = start("path:3", Ruleset::Proper, 2);
        let q = p.play(Move { vertex: 1, color: 1 }).unwrap();
        assert_eq!(q.coloring(), &[0, 1, 0]);
        assert!(q.play(Move { vertex: 0, color: 1 }).is_err());
        assert!(q.play(Move { vertex: 1, color: 2 }).is_err());
        assert!(q.play(Move { vertex: 0, color: 3 }).is_err());
        assert_eq!(q.options().len(), 2);
    }

    #[test]
    fn illegal_colorings_are_rejected() {
        let g = Family::Path(2).build().unwrap();
        let err = Position::from_parts(g, Ruleset::Proper, 2, Some(vec![2, 2]), None).unwrap_err();
        assert_eq!(err, PositionError::IllegalColoring(Ruleset::Proper));
    }
}

//! Sequential 2-coloring on paths.
//!
//! Turn `t` (0-based) must properly paint the vertex `f(t)`. Player 1 moves
//! on even turns. Only the vertices painted after both of their neighbors
//! (local maxima of the turn order) can ever be blocked, which gives a linear
//! decision procedure.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::game::{Board, Outcome, Position, Solver};
use crate::graph::{Graph, Vertex};
use crate::rules::Ruleset;

/// Largest path the exhaustive oracle accepts.
pub const BRUTE_FORCE_MAX_N: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentialError {
    #[error("turn order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("turn order has {got} entries for {n} vertices")]
    OrderLength { got: usize, n: usize },
    #[error("the decision procedure covers paths only, not cycles")]
    CycleUnsupported,
    #[error("graph is not a path")]
    NotAPath,
    #[error("exhaustive search is limited to {cap} vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
}

/// A turn order: `vertex_at(t)` is painted at turn `t`, `turn_of` inverts it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequentialOrder {
    f: Vec<Vertex>,
    g: Vec<usize>,
}

impl SequentialOrder {
    pub fn new(f: Vec<Vertex>) -> Result<Self, SequentialError> {
        let n = f.len();
        let mut g = vec![usize::MAX; n];
        for (t, &v) in f.iter().enumerate() {
            if v >= n || g[v] != usize::MAX {
                return Err(SequentialError::NotAPermutation(n));
            }
            g[v] = t;
        }
        Ok(SequentialOrder { f, g })
    }

    /// Builds the order from each vertex's turn.
    pub fn from_turns(g: Vec<usize>) -> Result<Self, SequentialError> {
        let n = g.len();
        let mut f = vec![usize::MAX; n];
        for (v, &t) in g.iter().enumerate() {
            if t >= n || f[t] != usize::MAX {
                return Err(SequentialError::NotAPermutation(n));
            }
            f[t] = v;
        }
        Ok(SequentialOrder { f, g })
    }

    pub fn identity(n: usize) -> Self {
        SequentialOrder { f: (0..n).collect(), g: (0..n).collect() }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut f: Vec<Vertex> = (0..n).collect();
        f.shuffle(rng);
        SequentialOrder::new(f).expect("shuffle is a permutation")
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }

    pub fn vertex_at(&self, turn: usize) -> Vertex {
        self.f[turn]
    }

    pub fn turn_of(&self, v: Vertex) -> usize {
        self.g[v]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Painted before all of its neighbors.
    Source,
    /// Painted after both of its neighbors.
    Closed,
    Constrained,
}

/// Player 1 owns the even (0-based) turns.
fn player_one(turn: usize) -> bool {
    turn % 2 == 0
}

fn path_of(path: &Graph, order: &SequentialOrder) -> Result<Vec<Vertex>, SequentialError> {
    if order.len() != path.n() {
        return Err(SequentialError::OrderLength { got: order.len(), n: path.n() });
    }
    match path.path_sequence() {
        Some(seq) => Ok(seq),
        None if !path.is_directed()
            && path.n() >= 3
            && path.is_connected()
            && (0..path.n()).all(|v| path.degree(v) == 2) =>
        {
            Err(SequentialError::CycleUnsupported)
        }
        None => Err(SequentialError::NotAPath),
    }
}

/// Class of every vertex (indexed by vertex id).
pub fn classify(path: &Graph, order: &SequentialOrder) -> Result<Vec<VertexClass>, SequentialError> {
    let seq = path_of(path, order)?;
    Ok(classify_seq(&seq, order))
}

fn classify_seq(seq: &[Vertex], order: &SequentialOrder) -> Vec<VertexClass> {
    let n = seq.len();
    let mut class = vec![VertexClass::Source; n];
    for i in 0..n {
        let t = order.turn_of(seq[i]);
        let before = |j: usize| order.turn_of(seq[j]) > t;
        let left = (i > 0).then(|| before(i - 1));
        let right = (i + 1 < n).then(|| before(i + 1));
        class[seq[i]] = match (left, right) {
            (Some(true) | None, Some(true) | None) => VertexClass::Source,
            (Some(false), Some(false)) => VertexClass::Closed,
            _ => VertexClass::Constrained,
        };
    }
    class
}

/// Linear-time outcome of the uncolored sequential 2-coloring game on a path.
pub fn decide_outcome(path: &Graph, order: &SequentialOrder) -> Result<Outcome, SequentialError> {
    let seq = path_of(path, order)?;
    let n = seq.len();
    let turn: Vec<u32> = seq.iter().map(|&v| order.turn_of(v) as u32).collect();
    drop(seq);

    // Doubly linked list over path positions with constrained ones spliced
    // out, and the closed positions filed by turn.
    const NONE: u32 = u32::MAX;
    let mut prev = vec![NONE; n];
    let mut next = vec![NONE; n];
    let mut closed_at = vec![NONE; n];
    let mut last = NONE;
    for i in 0..n {
        let t = turn[i];
        let left = i > 0 && turn[i - 1] < t;
        let right = i + 1 < n && turn[i + 1] < t;
        let class = match (left, right) {
            (false, false) => VertexClass::Source,
            (true, true) => VertexClass::Closed,
            _ => VertexClass::Constrained,
        };
        if class == VertexClass::Constrained {
            continue;
        }
        if last != NONE {
            next[last as usize] = i as u32;
        }
        prev[i] = last;
        last = i as u32;
        if class == VertexClass::Closed {
            closed_at[t as usize] = i as u32;
        }
    }
    let unlink = |i: usize, prev: &mut [u32], next: &mut [u32]| {
        let (p, q) = (prev[i], next[i]);
        if p != NONE {
            next[p as usize] = q;
        }
        if q != NONE {
            prev[q as usize] = p;
        }
    };

    // A closed vertex is only ever removed on its own turn, so every entry
    // reached here is still linked.
    for (t, &u) in closed_at.iter().enumerate() {
        if u == NONE {
            continue;
        }
        let u = u as usize;
        let (a, b) = (prev[u], next[u]);
        debug_assert!(a != NONE && b != NONE, "a closed vertex sits between two sources");
        let (a, b) = (a as usize, b as usize);
        let hi = if turn[a] > turn[b] { a } else { b };
        if player_one(turn[hi] as usize) == player_one(t) {
            unlink(u, &mut prev, &mut next);
            unlink(hi, &mut prev, &mut next);
        } else {
            // The later source's owner blocks u; u's owner is stuck.
            return Ok(if player_one(t) { Outcome::P } else { Outcome::N });
        }
    }
    Ok(if n % 2 == 1 { Outcome::N } else { Outcome::P })
}

/// Exhaustive search through the generic solver.
pub fn brute_force_outcome(path: &Graph, order: &SequentialOrder) -> Result<Outcome, SequentialError> {
    path_of(path, order)?;
    if path.n() > BRUTE_FORCE_MAX_N {
        return Err(SequentialError::TooLarge { n: path.n(), cap: BRUTE_FORCE_MAX_N });
    }
    let board = Arc::new(
        Board::new(path.clone(), Ruleset::Sequential, 2, Some(order.clone())).expect("validated path and order"),
    );
    let solver = Solver::new(Arc::clone(&board));
    Ok(solver.outcome(&Position::start(board)).expect("unbounded table"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use VertexClass::*;

    fn path(n: usize) -> Graph {
        Family::Path(n).build().unwrap()
    }

    /// Orders from 1-based turns per vertex, as written in examples.
    fn turns(g: &[usize]) -> SequentialOrder {
        SequentialOrder::from_turns(g.iter().map(|t| t - 1).collect()).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&path(3), &turns(&[2, 1, 3])).unwrap(), vec![Constrained, Source, Constrained]);
        assert_eq!(classify(&path(3), &turns(&[1, 3, 2])).unwrap(), vec![Source, Closed, Source]);
        assert_eq!(classify(&path(1), &turns(&[1])).unwrap(), vec![Source]);
    }

    #[test]
    fn decision_examples() {
        for f in permutations(2) {
            let o = SequentialOrder::new(f).unwrap();
            assert_eq!(decide_outcome(&path(2), &o), Ok(Outcome::P));
            assert_eq!(brute_force_outcome(&path(2), &o), Ok(Outcome::P));
        }
        let o = turns(&[1, 3, 2]);
        assert_eq!(decide_outcome(&path(3), &o), Ok(Outcome::P));
        assert_eq!(brute_force_outcome(&path(3), &o), Ok(Outcome::P));
        let o = turns(&[2, 1, 3]);
        assert_eq!(decide_outcome(&path(3), &o), Ok(Outcome::N));
        assert_eq!(brute_force_outcome(&path(3), &o), Ok(Outcome::N));
        assert_eq!(brute_force_outcome(&path(4), &turns(&[1, 2, 3, 4])), Ok(Outcome::P));
        assert_eq!(decide_outcome(&path(1), &turns(&[1])), Ok(Outcome::N));
    }

    #[test]
    fn relabelled_paths_are_accepted() {
        // Path 2 - 0 - 1 with the middle vertex painted last.
        let g = Graph::from_edges(3, false, [(2, 0), (0, 1)]).unwrap();
        let o = SequentialOrder::new(vec![2, 1, 0]).unwrap();
        assert_eq!(classify(&g, &o).unwrap(), vec![Closed, Source, Source]);
        assert_eq!(decide_outcome(&g, &o), brute_force_outcome(&g, &o));
    }

    #[test]
    fn rejects_unsupported_inputs() {
        let o = SequentialOrder::identity(5);
        assert_eq!(decide_outcome(&Family::Cycle(5).build().unwrap(), &o), Err(SequentialError::CycleUnsupported));
        let star = Graph::from_edges(4, false, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(classify(&star, &SequentialOrder::identity(4)), Err(SequentialError::NotAPath));
        assert!(matches!(decide_outcome(&path(4), &o), Err(SequentialError::OrderLength { .. })));
        assert!(SequentialOrder::new(vec![0, 0]).is_err());
        assert!(matches!(
            brute_force_outcome(&path(23), &SequentialOrder::identity(23)),
            Err(SequentialError::TooLarge { .. })
        ));
    }

    #[test]
    fn agrees_with_brute_force_on_all_small_orders() {
        for n in 1..=7 {
            for f in permutations(n) {
                let o = SequentialOrder::new(f).unwrap();
                assert_eq!(decide_outcome(&path(n), &o), brute_force_outcome(&path(n), &o), "{:?}", o.vertices());
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_random_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 9..=14 {
            for _ in 0..200 {
                let o = SequentialOrder::random(n, &mut rng);
                assert_eq!(decide_outcome(&path(n), &o), brute_force_outcome(&path(n), &o));
            }
        }
    }

    /// Walks every play of the game, checking the color-choice structure.
    fn walk(p: &Position, class: &[VertexClass]) {
        let painted = p.coloring().iter().filter(|&&c| c != 0).count();
        let n = p.coloring().len();
        if painted == n {
            return;
        }
        let v = p.order().unwrap().vertex_at(painted);
        let moves = p.legal_moves();
        match class[v] {
            Source => assert_eq!(moves.len(), 2),
            Constrained => assert_eq!(moves.len(), 1),
            Closed => assert!(moves.len() <= 1),
        }
        for q in p.options() {
            walk(&q, class);
        }
    }

    #[test]
    fn only_closed_vertices_block() {
        for n in 1..=7 {
            for f in permutations(n) {
                let o = SequentialOrder::new(f).unwrap();
                let class = classify(&path(n), &o).unwrap();
                let board = Board::new(path(n), Ruleset::Sequential, 2, Some(o)).unwrap();
                walk(&Position::start(Arc::new(board)), &class);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn order_and_labels_follow_turns(n in 2usize..40, seed in proptest::prelude::any::<u64>()) {
            let order = SequentialOrder::random(n, &mut ChaCha8Rng::seed_from_u64(seed));
            for i in 0..n {
                proptest::prop_assert_eq!(order.turn_of(order.vertex_at(i)), i);
            }
            let mut seen = order.vertices().to_vec();
            seen.sort_unstable();
            proptest::prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
            let t = |v: usize| order.turn_of(v);
            for (v, class) in classify(&path(n), &order).unwrap().into_iter().enumerate() {
                let earlier = [v.checked_sub(1), Some(v + 1).filter(|&w| w < n)]
                    .into_iter()
                    .flatten()
                    .filter(|&w| t(w) < t(v))
                    .count();
                let degree = if v == 0 || v == n - 1 { 1 } else { 2 };
                let want = match (earlier, degree) {
                    (0, _) => Source,
                    (2, 2) => Closed,
                    _ => Constrained,
                };
                proptest::prop_assert_eq!(class, want, "vertex {}", v);
            }
        }
    }
}

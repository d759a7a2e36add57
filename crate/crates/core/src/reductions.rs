//! Node-Kayles reductions into the coloring rulesets.
//!
//! Each construction keeps the Kayles vertices (at the same indices) and adds
//! precolored gadgets so that every Kayles vertex has exactly one usable
//! color and painting it kills its Kayles neighbors.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{Board, Color, Move, Nimber, Position, PositionError, SolveError, Solver, UNCOLORED};
use crate::graph::{Graph, Vertex};
use crate::rules::Ruleset;

/// Largest Kayles graph [`verify_equivalence`] will search.
pub const VERIFY_MAX_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reductions start from an undirected graph")]
    Directed,
    #[error("{target} reduction needs k >= {min}, got {k}")]
    TooFewColors { target: &'static str, k: u32, min: u32 },
    #[error("equivalence check is limited to {cap} Kayles vertices, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("the original position must be Node-Kayles (proper, k = 1)")]
    NotKayles,
    #[error("vertex map has {got} entries for {n} Kayles vertices")]
    MapLength { got: usize, n: usize },
    #[error(transparent)]
    Position(#[from] PositionError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A reduced game and where each Kayles vertex went.
#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub position: Position,
    /// `vertex_map[v]` carries the move on Kayles vertex `v`.
    pub vertex_map: Vec<Vertex>,
}

/// Node-Kayles on `g`: proper coloring with one color.
pub fn kayles_position(g: &Graph) -> Result<Position, ReductionError> {
    if g.is_directed() {
        return Err(ReductionError::Directed);
    }
    Ok(Position::from_parts(g.clone(), Ruleset::Proper, 1, None, None)?)
}

fn check_input(g: &Graph, target: &'static str, k: u32, min: u32) -> Result<(), ReductionError> {
    if g.is_directed() {
        return Err(ReductionError::Directed);
    }
    if k < min {
        return Err(ReductionError::TooFewColors { target, k, min });
    }
    Ok(())
}

fn instance(graph: Graph, ruleset: Ruleset, k: u32, coloring: Vec<Color>, n: usize) -> Result<ReducedInstance, ReductionError> {
    let position = Position::from_parts(graph, ruleset, k, Some(coloring), None)?;
    Ok(ReducedInstance { position, vertex_map: (0..n).collect() })
}

/// Vertex `v` gets pendant neighbors painted `1..k`, leaving it only color `k`.
/// Gadget vertex `v_i` sits at index `n + v(k-1) + (i-1)`.
fn pendant_gadgets(g: &Graph, k: u32, directed: bool) -> (Graph, Vec<Color>) {
    let n = g.n();
    let extra = (k - 1) as usize;
    let mut h = Graph::new(n * k as usize, directed);
    for &(u, w) in g.edges() {
        let (a, b) = if directed { (u.min(w), u.max(w)) } else { (u, w) };
        h.add_edge(a, b).expect("simple input");
    }
    let mut coloring = vec![UNCOLORED; h.n()];
    for v in 0..n {
        for i in 1..=extra {
            let x = n + v * extra + (i - 1);
            h.add_edge(v, x).expect("fresh vertex");
            coloring[x] = i as Color;
        }
    }
    (h, coloring)
}

pub fn reduce_to_proper_k(g: &Graph, k: u32) -> Result<ReducedInstance, ReductionError> {
    check_input(g, "proper", k, 1)?;
    let (h, coloring) = pendant_gadgets(g, k, false);
    instance(h, Ruleset::Proper, k, coloring, g.n())
}

/// Same gadgets with arcs `v -> v_i`; Kayles edges point from the lower to
/// the higher index.
pub fn reduce_to_oriented_k(g: &Graph, k: u32) -> Result<ReducedInstance, ReductionError> {
    check_input(g, "oriented", k, 2)?;
    let (h, coloring) = pendant_gadgets(g, k, true);
    instance(h, Ruleset::OrientedK, k, coloring, g.n())
}

/// Every edge becomes a pair of opposite arcs, so a painted vertex leaves
/// its neighbors no legal color.
pub fn reduce_to_oriented_br(g: &Graph) -> Result<ReducedInstance, ReductionError> {
    check_input(g, "oriented-br", 2, 2)?;
    let mut h = Graph::directed(g.n());
    for &(u, w) in g.edges() {
        h.add_edge(u, w).expect("simple input");
        h.add_edge(w, u).expect("simple input");
    }
    instance(h, Ruleset::OrientedBlueRed, 2, vec![UNCOLORED; g.n()], g.n())
}

/// 2-distance coloring. Edge `j = (u, w)` gets `e0 = n+3j` adjacent to both
/// ends, a path `e0 - e2 - e1` with `e1 = n+3j+1` painted 1 and `e2 = n+3j+2`
/// painted 2, and for each color `c` in `3..=k` one more vertex painted `c`
/// next to `e0`. Kayles vertices can then only take color 1.
pub fn reduce_to_distance_2k(g: &Graph, k: u32) -> Result<ReducedInstance, ReductionError> {
    check_input(g, "distance", k, 2)?;
    let n = g.n();
    let m = g.edge_count();
    let per_edge_extra = (k - 2) as usize;
    let mut h = Graph::undirected(n + 3 * m + per_edge_extra * m);
    let mut coloring = vec![UNCOLORED; h.n()];
    for (j, &(u, w)) in g.edges().iter().enumerate() {
        let (e0, e1, e2) = (n + 3 * j, n + 3 * j + 1, n + 3 * j + 2);
        for (a, b) in [(u, e0), (w, e0), (e0, e2), (e2, e1)] {
            h.add_edge(a, b).expect("fresh gadget");
        }
        coloring[e1] = 1;
        coloring[e2] = 2;
        for c in 3..=k as usize {
            let x = n + 3 * m + per_edge_extra * j + (c - 3);
            h.add_edge(e0, x).expect("fresh gadget");
            coloring[x] = c as Color;
        }
    }
    let position = Position::from_parts(h, Ruleset::Distance { d: 2 }, k, Some(coloring), None)?;
    Ok(ReducedInstance { position, vertex_map: (0..n).collect() })
}

/// What [`verify_equivalence`] found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub original_grundy: Nimber,
    pub reduced_grundy: Nimber,
    /// Matched state pairs visited.
    pub states_checked: usize,
    /// First disagreement, if any.
    pub mismatch: Option<String>,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.mismatch.is_none() && self.original_grundy == self.reduced_grundy
    }
}

/// Plays the Kayles game and the reduced game side by side.
///
/// At every reachable pair of matched states the reduced moves must land
/// only on mapped vertices and cover exactly the Kayles moves, and both
/// states must have the same Grundy value. Every color of a reduced move is
/// followed, so equal values across color choices are checked, not assumed.
pub fn verify_equivalence(original: &Position, reduced: &ReducedInstance) -> Result<EquivalenceReport, ReductionError> {
    if original.ruleset() != Ruleset::Proper || original.k() != 1 {
        return Err(ReductionError::NotKayles);
    }
    let n = original.graph().n();
    if n > VERIFY_MAX_N {
        return Err(ReductionError::TooLarge { n, cap: VERIFY_MAX_N });
    }
    if reduced.vertex_map.len() != n {
        return Err(ReductionError::MapLength { got: reduced.vertex_map.len(), n });
    }
    let mut walk = Walk {
        kayles: Solver::new(Arc::clone(original.board())),
        target: Solver::new(Arc::clone(reduced.position.board())),
        inverse: {
            let mut inv = vec![None; reduced.position.graph().n()];
            for (v, &x) in reduced.vertex_map.iter().enumerate() {
                inv[x] = Some(v);
            }
            inv
        },
        seen: HashSet::new(),
        mismatch: None,
    };
    walk.visit(original, &reduced.position)?;
    Ok(EquivalenceReport {
        original_grundy: walk.kayles.grundy(original)?,
        reduced_grundy: walk.target.grundy(&reduced.position)?,
        states_checked: walk.seen.len(),
        mismatch: walk.mismatch,
    })
}

struct Walk {
    kayles: Solver,
    target: Solver,
    inverse: Vec<Option<Vertex>>,
    seen: HashSet<(Vec<Color>, Vec<Color>)>,
    mismatch: Option<String>,
}

impl Walk {
    fn visit(&mut self, a: &Position, b: &Position) -> Result<(), ReductionError> {
        if self.mismatch.is_some() || !self.seen.insert((a.coloring().to_vec(), b.coloring().to_vec())) {
            return Ok(());
        }
        let kayles_moves: Vec<Vertex> = a.legal_moves().iter().map(|m| m.vertex).collect();
        let reduced_moves = b.legal_moves();
        let mut projected = Vec::new();
        for mv in &reduced_moves {
            match self.inverse[mv.vertex] {
                Some(v) => projected.push(v),
                None => {
                    self.mismatch = Some(format!(
                        "reduced game allows {mv} on gadget vertex {} at {:?}",
                        mv.vertex,
                        b.coloring()
                    ));
                    return Ok(());
                }
            }
        }
        projected.dedup();
        if projected != kayles_moves {
            self.mismatch = Some(format!(
                "Kayles moves {kayles_moves:?} but reduced moves on {projected:?} at {:?}",
                a.coloring()
            ));
            return Ok(());
        }
        let (ga, gb) = (self.kayles.grundy(a)?, self.target.grundy(b)?);
        if ga != gb {
            self.mismatch = Some(format!("Grundy {ga} vs {gb} at {:?}", a.coloring()));
            return Ok(());
        }
        for mv in reduced_moves {
            let v = self.inverse[mv.vertex].expect("checked above");
            let next_a = a.play(Move { vertex: v, color: 1 })?;
            let next_b = b.play(mv)?;
            self.visit(&next_a, &next_b)?;
        }
        Ok(())
    }
}

/// `instance` with vertex `x` deleted. A correct reduction should stop
/// being equivalent once any gadget vertex is gone.
pub fn drop_vertex(instance: &ReducedInstance, x: Vertex) -> Result<ReducedInstance, ReductionError> {
    let p = &instance.position;
    let keep: Vec<Vertex> = (0..p.graph().n()).filter(|&v| v != x).collect();
    let graph = p.graph().induced_subgraph(&keep);
    let coloring: Vec<Color> = keep.iter().map(|&v| p.coloring()[v]).collect();
    let board = Arc::new(Board::new(graph, p.ruleset(), p.k(), None).map_err(PositionError::from)?);
    let position = Position::new(board, coloring)?;
    let vertex_map = instance
        .vertex_map
        .iter()
        .map(|&v| if v > x { v - 1 } else { v })
        .collect();
    Ok(ReducedInstance { position, vertex_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::grundy;
    use crate::graph::{connected_graphs_up_to_isomorphism, is_planar, random_graph, Family};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn edge() -> Graph {
        Family::Path(2).build().unwrap()
    }

    #[test]
    fn proper_k_layout() {
        let k1 = reduce_to_proper_k(&Family::Cycle(5).build().unwrap(), 1).unwrap();
        assert_eq!(k1.position.graph(), &Family::Cycle(5).build().unwrap());
        assert_eq!(k1.vertex_map, vec![0, 1, 2, 3, 4]);

        let r = reduce_to_proper_k(&edge(), 3).unwrap();
        assert_eq!(r.position.graph().n(), 6);
        assert_eq!(r.position.coloring().iter().filter(|&&c| c != 0).count(), 4);
        let moves = r.position.legal_moves();
        assert_eq!(moves, vec![Move { vertex: 0, color: 3 }, Move { vertex: 1, color: 3 }]);
    }

    #[test]
    fn oriented_k_single_vertex() {
        let r = reduce_to_oriented_k(&Graph::undirected(1), 2).unwrap();
        let g = r.position.graph();
        assert!(g.has_edge(0, 1) && !g.has_edge(1, 0));
        assert_eq!(r.position.coloring(), &[0, 1]);
        assert_eq!(r.position.legal_moves(), vec![Move { vertex: 0, color: 2 }]);
        let r = reduce_to_oriented_k(&edge(), 2).unwrap();
        for mv in r.position.legal_moves() {
            assert!(r.position.play(mv).unwrap().legal_moves().is_empty());
        }
    }

    #[test]
    fn blue_red_blocks_neighbors() {
        let r = reduce_to_oriented_br(&edge()).unwrap();
        assert_eq!(r.position.legal_moves().len(), 4);
        for mv in r.position.legal_moves() {
            assert!(r.position.play(mv).unwrap().legal_moves().is_empty());
        }
        for n in 1..=6 {
            let r = reduce_to_oriented_br(&Graph::undirected(n)).unwrap();
            assert_eq!(grundy(&r.position).unwrap(), Nimber((n % 2) as u32));
        }
    }

    #[test]
    fn distance_only_color_one_on_kayles_vertices() {
        for k in [2, 3] {
            let r = reduce_to_distance_2k(&edge(), k).unwrap();
            assert_eq!(r.position.graph().n(), 2 + 3 + (k as usize - 2));
            assert_eq!(r.position.legal_moves(), vec![Move { vertex: 0, color: 1 }, Move { vertex: 1, color: 1 }]);
            for mv in r.position.legal_moves() {
                assert!(r.position.play(mv).unwrap().legal_moves().is_empty());
            }
        }
        assert!(reduce_to_distance_2k(&edge(), 1).is_err());
        assert!(reduce_to_oriented_k(&edge(), 1).is_err());
    }

    #[test]
    fn sizes_are_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let g = random_graph(7, 0.4, &mut rng);
            for k in 1..=4 {
                assert_eq!(reduce_to_proper_k(&g, k).unwrap().position.graph().n(), k as usize * g.n());
            }
            for k in 2..=4 {
                let n = reduce_to_distance_2k(&g, k).unwrap().position.graph().n();
                assert_eq!(n, g.n() + 3 * g.edge_count() + (k as usize - 2) * g.edge_count());
            }
        }
    }

    #[test]
    fn triangle_values_agree() {
        let tri = Family::Cycle(3).build().unwrap();
        let kayles = grundy(&kayles_position(&tri).unwrap()).unwrap();
        assert_eq!(grundy(&reduce_to_proper_k(&tri, 2).unwrap().position).unwrap(), kayles);
    }

    fn all_reductions(g: &Graph) -> Vec<(String, ReducedInstance)> {
        let mut out = vec![("oriented-br".to_string(), reduce_to_oriented_br(g).unwrap())];
        for k in [2, 3] {
            out.push((format!("proper k={k}"), reduce_to_proper_k(g, k).unwrap()));
            out.push((format!("oriented k={k}"), reduce_to_oriented_k(g, k).unwrap()));
            out.push((format!("distance k={k}"), reduce_to_distance_2k(g, k).unwrap()));
        }
        out
    }

    #[test]
    fn equivalent_on_small_connected_graphs() {
        for n in 1..=4 {
            for g in connected_graphs_up_to_isomorphism(n) {
                let kayles = kayles_position(&g).unwrap();
                for (name, r) in all_reductions(&g) {
                    let report = verify_equivalence(&kayles, &r).unwrap();
                    assert!(report.is_equivalent(), "{name} on {:?}: {:?}", g.edges(), report.mismatch);
                }
            }
        }
    }

    #[test]
    fn identity_and_path_examples() {
        let p3 = Family::Path(3).build().unwrap();
        let kayles = kayles_position(&p3).unwrap();
        let id = reduce_to_proper_k(&p3, 1).unwrap();
        assert!(verify_equivalence(&kayles, &id).unwrap().is_equivalent());
        let r = reduce_to_proper_k(&p3, 2).unwrap();
        let report = verify_equivalence(&kayles, &r).unwrap();
        assert!(report.is_equivalent());
        assert!(report.states_checked > 1);
    }

    #[test]
    fn corrupted_gadget_is_detected() {
        let p3 = Family::Path(3).build().unwrap();
        let kayles = kayles_position(&p3).unwrap();
        let r = reduce_to_proper_k(&p3, 2).unwrap();
        // Vertex 3 is the painted neighbor of Kayles vertex 0.
        let broken = drop_vertex(&r, 3).unwrap();
        assert!(!verify_equivalence(&kayles, &broken).unwrap().is_equivalent());
        let d = reduce_to_distance_2k(&p3, 2).unwrap();
        let broken = drop_vertex(&d, 4).unwrap();
        assert!(!verify_equivalence(&kayles, &broken).unwrap().is_equivalent());
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = Family::DirectedPath(3).build().unwrap();
        assert_eq!(reduce_to_proper_k(&d, 2).unwrap_err(), ReductionError::Directed);
        let big = Family::Path(7).build().unwrap();
        let r = reduce_to_proper_k(&big, 2).unwrap();
        assert!(matches!(
            verify_equivalence(&kayles_position(&big).unwrap(), &r),
            Err(ReductionError::TooLarge { .. })
        ));
        let p2 = Position::from_parts(edge(), Ruleset::Proper, 2, None, None).unwrap();
        let r = reduce_to_proper_k(&edge(), 2).unwrap();
        assert_eq!(verify_equivalence(&p2, &r).unwrap_err(), ReductionError::NotKayles);
    }

    #[test]
    fn proper_reduction_keeps_planarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut planar_inputs = 0;
        for n in 3..=8 {
            for _ in 0..6 {
                let g = random_graph(n, 0.5, &mut rng);
                if is_planar(&g).unwrap() {
                    planar_inputs += 1;
                    for k in 2..=3 {
                        assert!(is_planar(reduce_to_proper_k(&g, k).unwrap().position.graph()).unwrap());
                    }
                }
            }
        }
        assert!(planar_inputs > 10);
    }

    proptest::proptest! {
        #[test]
        fn vertex_maps_are_injective_onto_uncolored(n in 1usize..9, seed in proptest::prelude::any::<u64>(), k in 2u32..5) {
            let g = random_graph(n, 0.4, &mut ChaCha8Rng::seed_from_u64(seed));
            for r in [
                reduce_to_proper_k(&g, k).unwrap(),
                reduce_to_oriented_k(&g, k).unwrap(),
                reduce_to_oriented_br(&g).unwrap(),
                reduce_to_distance_2k(&g, k).unwrap(),
            ] {
                proptest::prop_assert_eq!(r.vertex_map.len(), n);
                let mut targets = r.vertex_map.clone();
                targets.sort_unstable();
                targets.dedup();
                proptest::prop_assert_eq!(targets.len(), n);
                for &t in &r.vertex_map {
                    proptest::prop_assert_eq!(r.position.coloring()[t], 0);
                }
            }
        }
    }
}

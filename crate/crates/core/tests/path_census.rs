//! The D-path P-positions from the recursion, checked against plain game-tree
//! search on the explicit paths.

use std::sync::Arc;

use coloring_games::oriented_path::class_position;
use coloring_games::{GrundyTable, Nimber, PathClass, Solver, TableMode};

const SEARCH_LIMIT: usize = 60;

#[test]
fn d_path_p_positions_match_search() {
    let table = GrundyTable::compute(SEARCH_LIMIT, TableMode::Naive).unwrap();
    let mut searched = Vec::new();
    for k in 1..=SEARCH_LIMIT {
        let p = class_position(PathClass::D, k).unwrap();
        let g = Solver::new(Arc::clone(p.board())).grundy(&p).unwrap();
        assert_eq!(Some(g), table.get(PathClass::D, k), "D_{k}");
        if g == Nimber(0) {
            searched.push(k);
        }
    }
    assert_eq!(searched, vec![3, 6, 11, 15, 16, 22, 27, 32, 38, 43, 49, 55, 59]);
    assert_eq!(table.p_positions(PathClass::D), searched);
}

#[test]
fn census_to_8084() {
    let table = GrundyTable::compute(8084, TableMode::Accelerated).unwrap();
    let p = table.p_positions(PathClass::D);
    assert_eq!(p.last(), Some(&8084));
    assert_eq!(p.len(), 34);
    assert_eq!(&p[..7], &[3, 6, 11, 15, 16, 22, 27]);
    assert_eq!(table.p_positions(PathClass::A), vec![1]);
}

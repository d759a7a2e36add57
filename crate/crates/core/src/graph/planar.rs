//! Planarity for small graphs via Wagner's theorem: a graph is planar iff it
//! has neither K5 nor K3,3 as a minor.
//!
//! The graph is first stripped of vertices of degree at most one and of
//! degree-two vertices (which are smoothed away), then the remaining core is
//! searched for the two forbidden minors by assigning vertices to branch sets.

use std::collections::BTreeSet;

use thiserror::Error;

use super::Graph;

/// Largest reduced core the branch-set search will attempt.
pub const MAX_CORE_VERTICES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("reduced core has {0} vertices; the minor search is limited to {MAX_CORE_VERTICES}")]
    TooLarge(usize),
}

/// Planarity of the undirected view of `g`.
pub fn is_planar(g: &Graph) -> Result<bool, PlanarityError> {
    let core = reduce(g);
    let n = core.len();
    if n <= 4 {
        return Ok(true);
    }
    let edges: usize = core.iter().map(|s| s.len()).sum::<usize>() / 2;
    if edges > 3 * n - 6 {
        return Ok(false);
    }
    if n > MAX_CORE_VERTICES {
        return Err(PlanarityError::TooLarge(n));
    }
    let adj: Vec<u32> = core
        .iter()
        .map(|s| s.iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    Ok(!has_minor(&adj, &K5) && !has_minor(&adj, &K33))
}

/// Simple undirected core after removing low-degree vertices, relabelled to
/// `0..m`.
fn reduce(g: &Graph) -> Vec<BTreeSet<usize>> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            match adj[v].len() {
                0 | 1 => {
                    for w in std::mem::take(&mut adj[v]) {
                        adj[w].remove(&v);
                    }
                    alive[v] = false;
                    changed = true;
                }
                2 => {
                    let mut it = adj[v].iter().copied();
                    let (a, b) = (it.next().unwrap(), it.next().unwrap());
                    adj[a].remove(&v);
                    adj[b].remove(&v);
                    adj[v].clear();
                    // A parallel edge would be redundant for planarity.
                    adj[a].insert(b);
                    adj[b].insert(a);
                    alive[v] = false;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let index: Vec<usize> = {
        let mut next = 0;
        alive
            .iter()
            .map(|&a| {
                let i = next;
                if a {
                    next += 1;
                }
                i
            })
            .collect()
    };
    (0..n)
        .filter(|&v| alive[v])
        .map(|v| adj[v].iter().map(|&w| index[w]).collect())
        .collect()
}

/// A forbidden minor: branch-set count, symmetry groups (labels that may be
/// permuted freely), and the required adjacencies between branch sets.
struct Minor {
    sets: usize,
    groups: &'static [&'static [usize]],
    required: &'static [(usize, usize)],
}

const K5: Minor = Minor {
    sets: 5,
    groups: &[&[0, 1, 2, 3, 4]],
    required: &[
        (0, 1), (0, 2), (0, 3), (0, 4), (1, 2),
        (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
    ],
};

const K33: Minor = Minor {
    sets: 6,
    groups: &[&[0, 1, 2], &[3, 4, 5]],
    required: &[
        (0, 3), (0, 4), (0, 5), (1, 3), (1, 4),
        (1, 5), (2, 3), (2, 4), (2, 5),
    ],
};

fn has_minor(adj: &[u32], minor: &Minor) -> bool {
    let mut sets = vec![0u32; minor.sets];
    search(adj, minor, 0, &mut sets)
}

fn search(adj: &[u32], minor: &Minor, v: usize, sets: &mut [u32]) -> bool {
    if v == adj.len() {
        return check(adj, minor, sets);
    }
    // Leave v out of every branch set.
    if search(adj, minor, v + 1, sets) {
        return true;
    }
    for label in 0..minor.sets {
        if sets[label] == 0 && !first_empty_in_group(minor, sets, label) {
            continue;
        }
        sets[label] |= 1 << v;
        let found = search(adj, minor, v + 1, sets);
        sets[label] &= !(1 << v);
        if found {
            return true;
        }
    }
    false
}

/// Opening a new branch set is only allowed for the lowest empty label of
/// its symmetry group.
fn first_empty_in_group(minor: &Minor, sets: &[u32], label: usize) -> bool {
    let group = minor.groups.iter().find(|g| g.contains(&label)).unwrap();
    group.iter().find(|&&l| sets[l] == 0) == Some(&label)
}

fn check(adj: &[u32], minor: &Minor, sets: &[u32]) -> bool {
    if sets.iter().any(|&s| s == 0 || !connected(adj, s)) {
        return false;
    }
    minor.required.iter().all(|&(a, b)| {
        let mut touch = 0u32;
        let mut s = sets[a];
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            touch |= adj[v];
        }
        touch & sets[b] != 0
    })
}

fn connected(adj: &[u32], set: u32) -> bool {
    let start = set & set.wrapping_neg();
    let mut reached = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & set & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == set
}

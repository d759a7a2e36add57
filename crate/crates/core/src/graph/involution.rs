//! Involutive automorphisms used by the mirror strategies for proper coloring.
//!
//! Deciding whether a graph has such an involution is hard in general, so the
//! search is exhaustive only below a configurable vertex count. Above it only
//! the natural reflections of a recognised [`Family`] are tried.

use thiserror::Error;

use super::{Family, Graph, Vertex};

/// Which shape of involution is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPointConstraint {
    /// Exactly one fixed point and no edge between `v` and `s(v)`.
    /// Gives a first-player mirror strategy for any number of colors.
    OneFixedNoMirrorEdge,
    /// No fixed point. Gives a second-player strategy with two colors.
    FixedPointFree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("mapping is not an involution at vertex {0}")]
    NotAnInvolution(Vertex),
    #[error("mapping has length {got}, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("{n} vertices is above the exhaustive search cap of {cap}")]
    AboveExhaustiveCap { n: usize, cap: usize },
}

/// A permutation `s` of the vertices with `s(s(v)) = v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    mapping: Vec<Vertex>,
    fixed_points: usize,
}

impl Involution {
    pub fn new(mapping: Vec<Vertex>) -> Result<Self, InvolutionError> {
        let n = mapping.len();
        for (v, &w) in mapping.iter().enumerate() {
            if w >= n || mapping[w] != v {
                return Err(InvolutionError::NotAnInvolution(v));
            }
        }
        let fixed_points = mapping.iter().enumerate().filter(|(v, &w)| *v == w).count();
        Ok(Involution { mapping, fixed_points })
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.mapping[v]
    }

    pub fn mapping(&self) -> &[Vertex] {
        &self.mapping
    }

    pub fn fixed_points(&self) -> usize {
        self.fixed_points
    }

    /// Edges (arcs, with direction) are mapped onto edges.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.mapping.len() == g.n()
            && g
                .edges()
                .iter()
                .all(|&(u, v)| g.has_edge(self.mapping[u], self.mapping[v]))
    }

    /// Automorphism plus the fixed-point and mirror-edge requirements.
    pub fn satisfies(&self, g: &Graph, constraint: FixedPointConstraint) -> bool {
        if !self.is_automorphism_of(g) {
            return false;
        }
        match constraint {
            FixedPointConstraint::FixedPointFree => self.fixed_points == 0,
            FixedPointConstraint::OneFixedNoMirrorEdge => {
                self.fixed_points == 1
                    && (0..g.n()).all(|v| !g.adjacent(v, self.mapping[v]))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct InvolutionSearch {
    /// Graphs with at most this many vertices are searched exhaustively.
    pub exhaustive_cap: usize,
    /// Backtracking nodes allowed before giving up.
    pub node_budget: u64,
    /// Family the graph was built from, enabling its canonical reflections.
    pub hint: Option<Family>,
}

impl Default for InvolutionSearch {
    fn default() -> Self {
        InvolutionSearch { exhaustive_cap: 24, node_budget: 20_000_000, hint: None }
    }
}

impl InvolutionSearch {
    pub fn with_hint(hint: Family) -> Self {
        InvolutionSearch { hint: Some(hint), ..Self::default() }
    }
}

/// Looks for an involutive automorphism of `g` meeting `constraint`.
///
/// `Ok(None)` means the exhaustive search proved there is none. Running out
/// of budget, or a graph above the cap whose family reflections all fail, is
/// reported as an error instead.
pub fn find_involution(
    g: &Graph,
    constraint: FixedPointConstraint,
    search: &InvolutionSearch,
) -> Result<Option<Involution>, InvolutionError> {
    if let Some(family) = &search.hint {
        for candidate in family_reflections(family, g.n()) {
            if let Ok(s) = Involution::new(candidate) {
                if s.satisfies(g, constraint) {
                    return Ok(Some(s));
                }
            }
        }
    }
    let n = g.n();
    let parity_ok = match constraint {
        FixedPointConstraint::OneFixedNoMirrorEdge => n % 2 == 1,
        FixedPointConstraint::FixedPointFree => n % 2 == 0,
    };
    if !parity_ok {
        return Ok(None);
    }
    if n > search.exhaustive_cap {
        return Err(InvolutionError::AboveExhaustiveCap { n, cap: search.exhaustive_cap });
    }
    let mut state = Backtrack {
        g,
        constraint,
        mapping: vec![usize::MAX; n],
        fixed: 0,
        nodes: 0,
        budget: search.node_budget,
    };
    match state.extend() {
        Err(()) => Err(InvolutionError::BudgetExceeded(search.node_budget)),
        Ok(false) => Ok(None),
        Ok(true) => {
            let s = Involution::new(state.mapping).expect("search builds involutions");
            debug_assert!(s.satisfies(g, constraint));
            Ok(Some(s))
        }
    }
}

struct Backtrack<'a> {
    g: &'a Graph,
    constraint: FixedPointConstraint,
    mapping: Vec<Vertex>,
    fixed: usize,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    /// `Err(())` on budget exhaustion, otherwise whether a completion exists.
    fn extend(&mut self) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let Some(v) = self.mapping.iter().position(|&w| w == usize::MAX) else {
            return Ok(match self.constraint {
                FixedPointConstraint::OneFixedNoMirrorEdge => self.fixed == 1,
                FixedPointConstraint::FixedPointFree => self.fixed == 0,
            });
        };
        for w in v..self.g.n() {
            if self.mapping[w] != usize::MAX || !self.compatible(v, w) {
                continue;
            }
            self.mapping[v] = w;
            self.mapping[w] = v;
            if v == w {
                self.fixed += 1;
            }
            if self.consistent(v, w) && self.extend()? {
                return Ok(true);
            }
            if v == w {
                self.fixed -= 1;
            }
            self.mapping[v] = usize::MAX;
            self.mapping[w] = usize::MAX;
        }
        Ok(false)
    }

    fn compatible(&self, v: Vertex, w: Vertex) -> bool {
        let g = self.g;
        if g.successors(v).len() != g.successors(w).len()
            || g.predecessors(v).len() != g.predecessors(w).len()
        {
            return false;
        }
        match self.constraint {
            FixedPointConstraint::OneFixedNoMirrorEdge => {
                if v == w {
                    self.fixed == 0
                } else {
                    !g.adjacent(v, w)
                }
            }
            FixedPointConstraint::FixedPointFree => v != w,
        }
    }

    /// Edge relations between the new pair and every mapped vertex are
    /// preserved.
    fn consistent(&self, v: Vertex, w: Vertex) -> bool {
        let g = self.g;
        for x in 0..g.n() {
            let sx = self.mapping[x];
            if sx == usize::MAX {
                continue;
            }
            for (a, sa) in [(v, w), (w, v)] {
                if g.has_edge(a, x) != g.has_edge(sa, sx) || g.has_edge(x, a) != g.has_edge(sx, sa) {
                    return false;
                }
            }
        }
        true
    }
}

/// Natural reflections of the family layouts produced by [`Family::build`].
fn family_reflections(family: &Family, n: usize) -> Vec<Vec<Vertex>> {
    match family {
        Family::Path(_) => vec![(0..n).rev().collect()],
        Family::Cycle(_) => (0..n)
            .map(|a| (0..n).map(|i| (a + n - i) % n).collect())
            .collect(),
        Family::Grid(dims) => {
            let mut strides = vec![1usize; dims.len()];
            for i in (0..dims.len().saturating_sub(1)).rev() {
                strides[i] = strides[i + 1] * dims[i + 1];
            }
            // Largest flip set first: flipping every axis is the central symmetry.
            (1u32..(1 << dims.len()))
                .rev()
                .map(|flips| {
                    (0..n)
                        .map(|v| {
                            let mut image = 0;
                            for (axis, (&side, &stride)) in dims.iter().zip(&strides).enumerate() {
                                let c = (v / stride) % side;
                                let c = if flips >> axis & 1 == 1 { side - 1 - c } else { c };
                                image += c * stride;
                            }
                            image
                        })
                        .collect()
                })
                .collect()
        }
        Family::Hypercube(_) => {
            let all = n - 1;
            let mut out: Vec<Vec<Vertex>> = vec![(0..n).map(|x| x ^ all).collect()];
            out.extend((1..n).filter(|&m| m != all).map(|m| (0..n).map(|x| x ^ m).collect()));
            out
        }
        Family::CompleteBinaryTree(_) => vec![swap_root_subtrees(n)],
        Family::DirectedPath(_) | Family::DirectedCycle(_) => Vec::new(),
    }
}

fn swap_root_subtrees(n: usize) -> Vec<Vertex> {
    // In heap layout the vertex at depth d with offset j maps to offset j
    // shifted by half the level width.
    (0..n)
        .map(|v| {
            if v == 0 {
                return 0;
            }
            let depth = usize::BITS - 1 - (v + 1).leading_zeros();
            let level_start = (1usize << depth) - 1;
            let width = 1usize << depth;
            let offset = v - level_start;
            level_start + (offset + width / 2) % width
        })
        .collect()
}

//! Boards: simple graphs and digraphs on vertices `0..n`.
//!
//! A [`Graph`] is immutable once built and cheap to share behind an `Arc`.
//! Edges are remembered in insertion order so that the text format can be
//! written back exactly as it was read.

mod family;
mod involution;
mod planar;
mod text;

pub use family::{connected_graphs_up_to_isomorphism, random_graph, Family};
pub use involution::{
    find_involution, FixedPointConstraint, Involution, InvolutionError, InvolutionSearch,
};
pub use planar::{is_planar, PlanarityError};
pub use text::{GraphDocument, ParseError};

use std::collections::VecDeque;

use thiserror::Error;

/// Vertex identifier, always in `0..graph.n()`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("power graph distance must be at least 1")]
    ZeroDistance,
}

#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    directed: bool,
    edges: Vec<(Vertex, Vertex)>,
    // Sorted successor lists. For undirected graphs these are the neighbors.
    out: Vec<Vec<Vertex>>,
    // Sorted predecessor lists. Equal to `out` for undirected graphs.
    inc: Vec<Vec<Vertex>>,
    // Sorted neighbors ignoring orientation.
    nbrs: Vec<Vec<Vertex>>,
}

impl PartialEq for Graph {
    /// Structural equality: same vertex count, kind and edge set. The order
    /// in which edges were inserted is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.directed == other.directed && self.out == other.out
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize, directed: bool) -> Self {
        Graph {
            n,
            directed,
            edges: Vec::new(),
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            nbrs: vec![Vec::new(); n],
        }
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    pub fn directed(n: usize) -> Self {
        Self::new(n, true)
    }

    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n, directed);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}`, or the arc `u -> v` for a digraph. A digraph may
    /// hold both `u -> v` and `v -> u`.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.edges.push((u, v));
        insert_sorted(&mut self.out[u], v);
        insert_sorted(&mut self.inc[v], u);
        if !self.directed {
            insert_sorted(&mut self.out[v], u);
            insert_sorted(&mut self.inc[u], v);
        }
        insert_sorted(&mut self.nbrs[u], v);
        insert_sorted(&mut self.nbrs[v], u);
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Edges (or arcs) in insertion order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Out-neighbors; the plain neighborhood for undirected graphs.
    #[inline]
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    /// In-neighbors; the plain neighborhood for undirected graphs.
    #[inline]
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.inc[v]
    }

    /// Neighbors with orientation forgotten.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.nbrs[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs[v].len()
    }

    /// `{u, v}` is an edge, or `u -> v` is an arc.
    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// Adjacent in either direction.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.nbrs[u].binary_search(&v).is_ok()
    }

    /// BFS distances from `src` over the undirected view. Unreachable
    /// vertices get `None`.
    pub fn distances_from(&self, src: Vertex) -> Vec<Option<usize>> {
        self.bounded_distances(src, usize::MAX)
    }

    fn bounded_distances(&self, src: Vertex, limit: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == limit {
                continue;
            }
            for &w in &self.nbrs[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The undirected graph on the same vertices joining every pair at
    /// distance at most `d`. Orientation is ignored.
    pub fn power_graph(&self, d: usize) -> Result<Graph, GraphError> {
        if d == 0 {
            return Err(GraphError::ZeroDistance);
        }
        let mut g = Graph::undirected(self.n);
        for u in 0..self.n {
            let dist = self.bounded_distances(u, d);
            for (v, dv) in dist.iter().enumerate().skip(u + 1) {
                if dv.is_some() {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Connected components of the undirected view, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.nbrs[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len(), self.directed);
        for &(u, v) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                g.add_edge(index[u], index[v])
                    .expect("induced subgraph of a simple graph is simple");
            }
        }
        g
    }

    /// Vertex sequence from one end to the other if this is an undirected
    /// path graph (a single vertex counts). The end with the smaller label
    /// comes first.
    pub fn path_sequence(&self) -> Option<Vec<Vertex>> {
        if self.directed || self.n == 0 || self.edges.len() != self.n - 1 {
            return None;
        }
        if self.n == 1 {
            return Some(vec![0]);
        }
        // Works off the flat edge list: each vertex keeps its degree and the
        // XOR of its neighbors, which is enough to walk a path.
        let mut deg = vec![0u8; self.n];
        let mut link = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] = deg[u].saturating_add(1);
            deg[v] = deg[v].saturating_add(1);
            link[u] ^= v;
            link[v] ^= u;
        }
        if deg.iter().any(|&d| d == 0 || d > 2) {
            return None;
        }
        let start = deg.iter().position(|&d| d == 1)?;
        let mut seq = Vec::with_capacity(self.n);
        seq.push(start);
        let mut prev = start;
        let mut cur = link[start];
        while seq.len() < self.n {
            seq.push(cur);
            if deg[cur] == 1 {
                break;
            }
            (prev, cur) = (cur, link[cur] ^ prev);
        }
        (seq.len() == self.n).then_some(seq)
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, v: Vertex) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_bad_endpoints() {
        let mut g = Graph::undirected(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(1, 0)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn digraph_allows_antiparallel_arcs() {
        let mut g = Graph::directed(2);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 0).unwrap();
        assert!(g.add_edge(0, 1).is_err());
        assert_eq!(g.neighbors(0), &[1]);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn power_graph_examples() {
        let p3 = Family::Path(3).build().unwrap();
        let tri = Family::Cycle(3).build().unwrap();
        assert_eq!(p3.power_graph(2).unwrap(), tri);

        let p5 = Family::Path(5).build().unwrap();
        let sq = p5.power_graph(2).unwrap();
        for u in 0usize..5 {
            for v in 0..5 {
                let expect = u != v && u.abs_diff(v) <= 2;
                assert_eq!(sq.adjacent(u, v), expect, "{u} {v}");
            }
        }
        assert_eq!(p5.power_graph(1).unwrap(), p5);
        assert_eq!(p5.power_graph(0), Err(GraphError::ZeroDistance));
    }

    #[test]
    fn power_graph_is_monotone_in_distance() {
        let g = Family::Grid(vec![3, 4]).build().unwrap();
        for d in 1..6 {
            let a = g.power_graph(d).unwrap();
            let b = g.power_graph(d + 1).unwrap();
            for &(u, v) in a.edges() {
                assert!(b.adjacent(u, v));
            }
        }
    }

    #[test]
    fn square_of_paths_and_cycles_has_expected_degrees() {
        for n in 1..=20 {
            let sq = Family::Path(n).build().unwrap().power_graph(2).unwrap();
            for v in 0..n {
                let expect = (v.min(2)) + ((n - 1 - v).min(2));
                assert_eq!(sq.degree(v), expect, "path {n} vertex {v}");
            }
        }
        for n in 3..=20 {
            let sq = Family::Cycle(n).build().unwrap().power_graph(2).unwrap();
            let expect = (n - 1).min(4);
            for v in 0..n {
                assert_eq!(sq.degree(v), expect, "cycle {n} vertex {v}");
            }
        }
    }

    #[test]
    fn path_sequence_recognises_relabelled_paths() {
        let g = Graph::from_edges(4, false, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(g.path_sequence(), Some(vec![1, 3, 0, 2]));
        assert_eq!(Family::Cycle(4).build().unwrap().path_sequence(), None);
        let star = Graph::from_edges(4, false, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.path_sequence(), None);
        let split = Graph::from_edges(4, false, [(0, 1), (2, 3), (1, 0 + 2)]).unwrap();
        assert!(split.path_sequence().is_some());
        assert_eq!(Graph::undirected(1).path_sequence(), Some(vec![0]));
        assert_eq!(Graph::undirected(2).path_sequence(), None);
    }

    #[test]
    fn components_and_induced_subgraph() {
        let g = Graph::from_edges(5, false, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        let sub = g.induced_subgraph(&[3, 4, 0]);
        assert_eq!(sub.edges(), &[(0, 1)]);
    }
}

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{Graph, GraphError};

/// Named graph families used as game boards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    /// Grid with the given side lengths, one per dimension.
    Grid(Vec<usize>),
    Hypercube(usize),
    /// Complete binary tree with `depth` levels below the root.
    CompleteBinaryTree(usize),
    /// Path with arcs `v_i -> v_{i+1}`.
    DirectedPath(usize),
    /// Cycle with arcs `v_i -> v_{i+1 mod n}`.
    DirectedCycle(usize),
}

impl Family {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match *self {
            Family::Path(n) | Family::DirectedPath(n) => {
                positive(n, "path length")?;
                let directed = matches!(self, Family::DirectedPath(_));
                Graph::from_edges(n, directed, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(GraphError::InvalidParameter(format!(
                        "cycle needs at least 3 vertices, got {n}"
                    )));
                }
                Graph::from_edges(n, false, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::DirectedCycle(n) => {
                if n < 2 {
                    return Err(GraphError::InvalidParameter(format!(
                        "directed cycle needs at least 2 vertices, got {n}"
                    )));
                }
                Graph::from_edges(n, true, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Grid(ref dims) => grid(dims),
            Family::Hypercube(d) => {
                positive(d, "hypercube dimension")?;
                let n = 1usize << d;
                let mut g = Graph::undirected(n);
                for x in 0..n {
                    for bit in 0..d {
                        let y = x ^ (1 << bit);
                        if x < y {
                            g.add_edge(x, y)?;
                        }
                    }
                }
                Ok(g)
            }
            Family::CompleteBinaryTree(depth) => {
                let n = (1usize << (depth + 1)) - 1;
                Graph::from_edges(n, false, (1..n).map(|i| ((i - 1) / 2, i)))
            }
        }
    }

    pub fn grid_dims(&self) -> Option<&[usize]> {
        match self {
            Family::Grid(d) => Some(d),
            _ => None,
        }
    }
}

fn positive(x: usize, what: &str) -> Result<(), GraphError> {
    if x == 0 {
        Err(GraphError::InvalidParameter(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn grid(dims: &[usize]) -> Result<Graph, GraphError> {
    if dims.is_empty() {
        return Err(GraphError::InvalidParameter("grid needs at least one dimension".into()));
    }
    for &d in dims {
        positive(d, "grid side")?;
    }
    let n: usize = dims.iter().product();
    // Last coordinate varies fastest.
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let mut g = Graph::undirected(n);
    for v in 0..n {
        for (&side, &stride) in dims.iter().zip(&strides) {
            let coord = (v / stride) % side;
            if coord + 1 < side {
                g.add_edge(v, v + stride)?;
            }
        }
    }
    Ok(g)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Grid(dims) => {
                let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                write!(f, "grid:{}", parts.join(","))
            }
            Family::Hypercube(d) => write!(f, "hypercube:{d}"),
            Family::CompleteBinaryTree(d) => write!(f, "tree:{d}"),
            Family::DirectedPath(n) => write!(f, "dpath:{n}"),
            Family::DirectedCycle(n) => write!(f, "dcycle:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    /// Parses shorthands such as `path:9`, `grid:3,5` or `dcycle:7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))?;
        let nums = args
            .split(',')
            .map(|a| {
                a.trim()
                    .parse::<usize>()
                    .map_err(|_| GraphError::InvalidParameter(format!("`{a}` in `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let one = || -> Result<usize, GraphError> {
            match nums.as_slice() {
                [x] => Ok(*x),
                _ => Err(GraphError::InvalidParameter(format!(
                    "`{name}` takes exactly one parameter"
                ))),
            }
        };
        let family = match name.trim() {
            "path" => Family::Path(one()?),
            "cycle" => Family::Cycle(one()?),
            "grid" => Family::Grid(nums.clone()),
            "hypercube" => Family::Hypercube(one()?),
            "tree" | "binary-tree" => Family::CompleteBinaryTree(one()?),
            "dpath" | "directed-path" => Family::DirectedPath(one()?),
            "dcycle" | "directed-cycle" => Family::DirectedCycle(one()?),
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        };
        Ok(family)
    }
}

/// Erdős–Rényi `G(n, p)` graph.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// One representative of every connected simple graph on `n` vertices, up to
/// isomorphism. Brute force over all labelled graphs, so only for small `n`.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive enumeration is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, false, edges.iter().copied()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut code = 0u64;
                for &(u, v) in &edges {
                    code |= 1 << pair_index[p[u]][p[v]];
                }
                code
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

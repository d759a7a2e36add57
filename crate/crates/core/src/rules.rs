//! The six coloring rulesets: legality predicates and proven shortcuts.
//!
//! Colors are `1..=k`; `0` marks an uncolored vertex. In the oriented
//! Blue-Red game [`BLUE`] is color 1 and [`RED`] is color 2.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::game::{Board, Color, Nimber, Outcome};
use crate::graph::{
    find_involution, Family, FixedPointConstraint, Graph, InvolutionSearch, Vertex,
};
use crate::sequential::SequentialOrder;

pub const BLUE: Color = 1;
pub const RED: Color = 2;

/// Upper bound on `k`: color sets are handled as 32-bit masks.
pub const MAX_COLORS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ruleset {
    /// Adjacent vertices never share a color. With `k = 1` this is Node-Kayles.
    Proper,
    /// Proper on a digraph, and no color pair is used along arcs in both
    /// directions.
    OrientedK,
    /// Two colors; every fully painted arc goes from Blue to Red.
    OrientedBlueRed,
    /// Two colors; a monochromatic edge is allowed only when both ends also
    /// see the other color.
    Weak2,
    /// Vertices within distance `d` never share a color.
    Distance { d: usize },
    /// Proper, but turn `i` must paint the `i`-th vertex of a fixed order.
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RulesetError {
    #[error("{0} is played on a directed graph")]
    NeedsDirected(Ruleset),
    #[error("{ruleset} is played with {expected} colors, got k = {k}")]
    WrongColorCount { ruleset: Ruleset, expected: u32, k: u32 },
    #[error("k must be in 1..={MAX_COLORS}, got {0}")]
    ColorCountOutOfRange(u32),
    #[error("distance must be at least 1")]
    ZeroDistance,
    #[error("sequential play needs a turn order")]
    MissingOrder,
    #[error("{0} does not take a turn order")]
    UnexpectedOrder(Ruleset),
    #[error("turn order has {got} entries for {n} vertices")]
    OrderLength { got: usize, n: usize },
    #[error("coloring has {got} entries for {n} vertices")]
    ColoringLength { got: usize, n: usize },
    #[error("color {color} on vertex {vertex} is outside 1..={k}")]
    ColorOutOfRange { vertex: Vertex, color: Color, k: u32 },
    #[error("unknown ruleset `{0}`")]
    Unknown(String),
}

impl Ruleset {
    pub fn name(&self) -> &'static str {
        match self {
            Ruleset::Proper => "proper",
            Ruleset::OrientedK => "oriented",
            Ruleset::OrientedBlueRed => "oriented-br",
            Ruleset::Weak2 => "weak",
            Ruleset::Distance { .. } => "distance",
            Ruleset::Sequential => "sequential",
        }
    }

    /// Parses a CLI token; `distance` takes its `d` separately.
    pub fn from_token(token: &str, d: Option<usize>) -> Result<Self, RulesetError> {
        match token {
            "distance" => match d.unwrap_or(2) {
                0 => Err(RulesetError::ZeroDistance),
                d => Ok(Ruleset::Distance { d }),
            },
            other => other.parse(),
        }
    }

    /// Whether independent parts of the board can be solved separately and
    /// nim-summed.
    ///
    /// Oriented k-coloring is excluded: its color-pair constraint couples
    /// arcs anywhere in the graph. Sequential play is excluded because the
    /// turn order is global.
    pub fn is_component_local(&self) -> bool {
        !matches!(self, Ruleset::OrientedK | Ruleset::Sequential)
    }

    /// Renaming colors maps legal positions to legal positions.
    pub fn is_color_symmetric(&self) -> bool {
        !matches!(self, Ruleset::OrientedBlueRed)
    }

    /// Checks the ruleset can be played on `graph` with `k` colors.
    pub fn validate(&self, graph: &Graph, k: u32, order: Option<&SequentialOrder>) -> Result<(), RulesetError> {
        if k == 0 || k > MAX_COLORS {
            return Err(RulesetError::ColorCountOutOfRange(k));
        }
        match self {
            Ruleset::OrientedK if !graph.is_directed() => return Err(RulesetError::NeedsDirected(*self)),
            Ruleset::OrientedBlueRed if !graph.is_directed() => {
                return Err(RulesetError::NeedsDirected(*self))
            }
            Ruleset::OrientedBlueRed | Ruleset::Weak2 if k != 2 => {
                return Err(RulesetError::WrongColorCount { ruleset: *self, expected: 2, k })
            }
            Ruleset::Distance { d: 0 } => return Err(RulesetError::ZeroDistance),
            _ => {}
        }
        match (self, order) {
            (Ruleset::Sequential, None) => Err(RulesetError::MissingOrder),
            (Ruleset::Sequential, Some(o)) if o.len() != graph.n() => {
                Err(RulesetError::OrderLength { got: o.len(), n: graph.n() })
            }
            (Ruleset::Sequential, Some(_)) => Ok(()),
            (_, Some(_)) => Err(RulesetError::UnexpectedOrder(*self)),
            (_, None) => Ok(()),
        }
    }
}

impl fmt::Display for Ruleset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ruleset::Distance { d } => write!(f, "distance(d={d})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Ruleset {
    type Err = RulesetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "proper" => Ruleset::Proper,
            "oriented" => Ruleset::OrientedK,
            "oriented-br" => Ruleset::OrientedBlueRed,
            "weak" => Ruleset::Weak2,
            "distance" => Ruleset::Distance { d: 2 },
            "sequential" => Ruleset::Sequential,
            other => return Err(RulesetError::Unknown(other.to_string())),
        })
    }
}

/// Whether `coloring` satisfies `ruleset` on `graph` with `k` colors.
pub fn is_legal_coloring(
    ruleset: Ruleset,
    graph: &Graph,
    k: u32,
    coloring: &[Color],
    order: Option<&SequentialOrder>,
) -> Result<bool, RulesetError> {
    ruleset.validate(graph, k, order)?;
    check_colors(graph, k, coloring)?;
    let power;
    let rules_graph = match ruleset {
        Ruleset::Distance { d } => {
            power = graph.power_graph(d).expect("d validated");
            &power
        }
        _ => graph,
    };
    Ok(legal(ruleset, graph, rules_graph, coloring, order))
}

pub(crate) fn check_colors(graph: &Graph, k: u32, coloring: &[Color]) -> Result<(), RulesetError> {
    if coloring.len() != graph.n() {
        return Err(RulesetError::ColoringLength { got: coloring.len(), n: graph.n() });
    }
    match coloring.iter().enumerate().find(|(_, &c)| c as u32 > k) {
        Some((vertex, &color)) => Err(RulesetError::ColorOutOfRange { vertex, color, k }),
        None => Ok(()),
    }
}

/// Whole-position legality. `rules_graph` is the power graph for the
/// distance ruleset and `graph` otherwise.
pub(crate) fn legal(
    ruleset: Ruleset,
    graph: &Graph,
    rules_graph: &Graph,
    coloring: &[Color],
    order: Option<&SequentialOrder>,
) -> bool {
    let proper = |g: &Graph| {
        g.edges()
            .iter()
            .all(|&(u, v)| coloring[u] == 0 || coloring[u] != coloring[v])
    };
    match ruleset {
        Ruleset::Proper => proper(graph),
        Ruleset::Distance { .. } => proper(rules_graph),
        Ruleset::Sequential => {
            let order = order.expect("validated");
            let painted = coloring.iter().filter(|&&c| c != 0).count();
            proper(graph) && (0..graph.n()).all(|t| (coloring[order.vertex_at(t)] != 0) == (t < painted))
        }
        Ruleset::OrientedBlueRed => graph.edges().iter().all(|&(u, v)| {
            coloring[u] == 0 || coloring[v] == 0 || (coloring[u] == BLUE && coloring[v] == RED)
        }),
        Ruleset::OrientedK => {
            let mut pairs = [0u64; MAX_COLORS as usize + 1];
            for &(u, v) in graph.edges() {
                let (a, b) = (coloring[u], coloring[v]);
                if a != 0 && b != 0 {
                    if a == b {
                        return false;
                    }
                    pairs[a as usize] |= 1 << b;
                }
            }
            // No arc may run from a b-vertex to an a-vertex when another runs a -> b.
            (1..=MAX_COLORS as usize).all(|a| {
                let mut bs = pairs[a];
                while bs != 0 {
                    let b = bs.trailing_zeros() as usize;
                    bs &= bs - 1;
                    if pairs[b] >> a & 1 == 1 {
                        return false;
                    }
                }
                true
            })
        }
        Ruleset::Weak2 => {
            let supported = |x: Vertex| {
                graph
                    .neighbors(x)
                    .iter()
                    .any(|&y| coloring[y] != 0 && coloring[y] != coloring[x])
            };
            graph.edges().iter().all(|&(u, v)| {
                coloring[u] == 0 || coloring[u] != coloring[v] || (supported(u) && supported(v))
            })
        }
    }
}

/// Whether painting the uncolored `v` with `c` keeps the (legal) coloring
/// legal.
pub(crate) fn can_paint(board: &Board, coloring: &[Color], v: Vertex, c: Color) -> bool {
    debug_assert_eq!(coloring[v], 0);
    let graph = board.graph();
    let proper_in = |g: &Graph| g.neighbors(v).iter().all(|&w| coloring[w] != c);
    match board.ruleset() {
        Ruleset::Proper => proper_in(graph),
        Ruleset::Distance { .. } => proper_in(board.rules_graph()),
        Ruleset::Sequential => {
            let painted = coloring.iter().filter(|&&x| x != 0).count();
            let order = board.order().expect("validated");
            painted < order.len() && order.vertex_at(painted) == v && proper_in(graph)
        }
        Ruleset::OrientedBlueRed => {
            graph.successors(v).iter().all(|&w| coloring[w] == 0 || (c == BLUE && coloring[w] == RED))
                && graph
                    .predecessors(v)
                    .iter()
                    .all(|&u| coloring[u] == 0 || (coloring[u] == BLUE && c == RED))
        }
        Ruleset::OrientedK => {
            let mut fresh = [0u64; MAX_COLORS as usize + 1];
            for &w in graph.successors(v) {
                if coloring[w] != 0 {
                    fresh[c as usize] |= 1 << coloring[w];
                }
            }
            for &u in graph.predecessors(v) {
                if coloring[u] != 0 {
                    fresh[coloring[u] as usize] |= 1 << c;
                }
            }
            if fresh.iter().all(|&m| m == 0) {
                return true;
            }
            let mut all = fresh;
            for &(x, y) in graph.edges() {
                if coloring[x] != 0 && coloring[y] != 0 {
                    all[coloring[x] as usize] |= 1 << coloring[y];
                }
            }
            (1..=MAX_COLORS as usize).all(|a| {
                let mut bs = fresh[a];
                while bs != 0 {
                    let b = bs.trailing_zeros() as usize;
                    bs &= bs - 1;
                    if a == b || all[b] >> a & 1 == 1 {
                        return false;
                    }
                }
                true
            })
        }
        Ruleset::Weak2 => {
            let sees_other = |x: Vertex, cx: Color| {
                graph.neighbors(x).iter().any(|&y| {
                    let cy = if y == v { c } else { coloring[y] };
                    cy != 0 && cy != cx
                })
            };
            graph
                .neighbors(v)
                .iter()
                .all(|&u| coloring[u] != c || (sees_other(v, c) && sees_other(u, c)))
        }
    }
}

/// Outcome of a starting position, when a shortcut settles it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    N,
    P,
    Unknown,
}

impl Verdict {
    pub fn outcome(self) -> Option<Outcome> {
        match self {
            Verdict::N => Some(Outcome::N),
            Verdict::P => Some(Outcome::P),
            Verdict::Unknown => None,
        }
    }
}

impl From<Outcome> for Verdict {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::N => Verdict::N,
            Outcome::P => Verdict::P,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::N => "N",
            Verdict::P => "P",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Mirror strategies for proper coloring from the empty position.
///
/// An involutive automorphism with a single fixed point and no edge between
/// any vertex and its image lets the first player open on the fixed point and
/// copy every reply, for any `k`. A fixed-point-free involution lets the
/// second player answer with the opposite color when `k = 2`.
pub fn outcome_by_involution(graph: &Graph, k: u32, search: &InvolutionSearch) -> Verdict {
    if let Ok(Some(_)) = find_involution(graph, FixedPointConstraint::OneFixedNoMirrorEdge, search) {
        return Verdict::N;
    }
    if k == 2 {
        if let Ok(Some(_)) = find_involution(graph, FixedPointConstraint::FixedPointFree, search) {
            return Verdict::P;
        }
    }
    Verdict::Unknown
}

/// A closed-form result for the empty position of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm {
    pub verdict: Verdict,
    pub grundy: Option<Nimber>,
}

impl ClosedForm {
    const UNKNOWN: ClosedForm = ClosedForm { verdict: Verdict::Unknown, grundy: None };

    fn outcome(verdict: Verdict) -> Self {
        ClosedForm { verdict, grundy: None }
    }

    fn value(g: u32) -> Self {
        let verdict = if g == 0 { Verdict::P } else { Verdict::N };
        ClosedForm { verdict, grundy: Some(Nimber(g)) }
    }
}

/// Odd path lengths with a computed 2-distance 2-coloring outcome.
const DISTANCE_ODD_PATHS: [(usize, Verdict); 8] = [
    (3, Verdict::P),
    (5, Verdict::N),
    (7, Verdict::N),
    (9, Verdict::P),
    (11, Verdict::P),
    (13, Verdict::N),
    (15, Verdict::P),
    (17, Verdict::P),
];

/// Known outcomes (and values, where known) of empty starting positions.
pub fn closed_form_outcome(ruleset: Ruleset, family: &Family, k: u32) -> ClosedForm {
    use Family::*;
    match (ruleset, family) {
        // Mirror play around the middle vertex works once a second color can
        // fill the centre, so the value is exactly 1.
        (Ruleset::Proper, Path(n)) if n % 2 == 1 && k >= 2 => ClosedForm::value(1),
        (Ruleset::Proper, Path(n)) if n % 2 == 0 && k == 2 => ClosedForm::value(0),
        (Ruleset::Proper, Cycle(_)) if k == 2 => ClosedForm::value(0),
        (Ruleset::Proper, Path(n)) if n % 2 == 1 => ClosedForm::outcome(Verdict::N),
        (Ruleset::Proper, Grid(dims)) => {
            if dims.iter().all(|d| d % 2 == 1) {
                ClosedForm::outcome(Verdict::N)
            } else if k == 2 {
                ClosedForm::outcome(Verdict::P)
            } else {
                ClosedForm::UNKNOWN
            }
        }
        (Ruleset::Proper, Hypercube(_)) if k == 2 => ClosedForm::outcome(Verdict::P),
        (Ruleset::Proper, CompleteBinaryTree(_)) => ClosedForm::outcome(Verdict::N),
        (Ruleset::OrientedBlueRed, DirectedCycle(l)) if *l > 3 => ClosedForm::value(0),
        (Ruleset::Weak2, Cycle(n)) if n % 2 == 1 => ClosedForm::value(1),
        (Ruleset::Distance { d: 2 }, Path(n) | Cycle(n)) if n % 2 == 0 && k == 2 => ClosedForm::value(0),
        (Ruleset::Distance { d: 2 }, Path(n)) if k == 2 => DISTANCE_ODD_PATHS
            .iter()
            .find(|(len, _)| len == n)
            .map_or(ClosedForm::UNKNOWN, |&(_, v)| ClosedForm::outcome(v)),
        _ => ClosedForm::UNKNOWN,
    }
}

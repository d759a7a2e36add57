use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use coloring_games::reductions::VERIFY_MAX_N;
use coloring_games::{
    kayles_position, reduce_to_distance_2k, reduce_to_oriented_br, reduce_to_oriented_k, reduce_to_proper_k,
    verify_equivalence, GraphDocument, ReducedInstance, UNCOLORED,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::load_graph;
use crate::output::Output;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Proper,
    Oriented,
    OrientedBr,
    Distance,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Node-Kayles graph: shorthand or graph file.
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_enum)]
    pub to: Target,
    /// Colors in the target game (ignored for oriented-br).
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Write the reduced position here in the graph text format.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Check the two games match move for move (small graphs only).
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Serialize)]
pub struct ReduceRecord {
    pub ruleset: String,
    pub k: u32,
    pub vertices: usize,
    pub edges: usize,
    pub precolored: usize,
    pub vertex_map: Vec<usize>,
    pub equivalent: Option<bool>,
    /// The reduced position in the text format, when no output file is given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
}

impl fmt::Display for ReduceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(doc) = &self.document {
            write!(f, "{doc}")?;
        }
        write!(
            f,
            "# {} k={}: {} vertices, {} edges, {} precolored",
            self.ruleset, self.k, self.vertices, self.edges, self.precolored
        )?;
        if let Some(eq) = self.equivalent {
            write!(f, "\n# equivalent to Node-Kayles: {eq}")?;
        }
        Ok(())
    }
}

pub fn reduce(args: &ReduceArgs) -> Result<(ReduceRecord, String), CliError> {
    let inst = load_graph(&args.graph)?;
    let g = &inst.graph;
    let reduced: ReducedInstance = match args.to {
        Target::Proper => reduce_to_proper_k(g, args.k)?,
        Target::Oriented => reduce_to_oriented_k(g, args.k)?,
        Target::OrientedBr => reduce_to_oriented_br(g)?,
        Target::Distance => reduce_to_distance_2k(g, args.k)?,
    };
    let equivalent = if args.verify {
        if g.n() > VERIFY_MAX_N {
            return Err(CliError::Budget(format!("--verify is limited to {VERIFY_MAX_N} vertices")));
        }
        Some(verify_equivalence(&kayles_position(g)?, &reduced)?.is_equivalent())
    } else {
        None
    };
    let p = &reduced.position;
    let colors: BTreeMap<usize, u32> = p
        .coloring()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != UNCOLORED)
        .map(|(v, &c)| (v, c as u32))
        .collect();
    let doc = GraphDocument { graph: p.graph().clone(), k: Some(p.k()), colors, order: None };
    let record = ReduceRecord {
        ruleset: p.ruleset().to_string(),
        k: p.k(),
        vertices: p.graph().n(),
        edges: p.graph().edge_count(),
        precolored: doc.colors.len(),
        vertex_map: reduced.vertex_map.clone(),
        equivalent,
        document: None,
    };
    Ok((record, doc.to_text()))
}

pub fn run(args: ReduceArgs, out: &Output) -> Result<(), CliError> {
    let (mut record, text) = reduce(&args)?;
    match &args.output {
        Some(path) => std::fs::write(path, &text)?,
        None => record.document = Some(text),
    }
    out.emit(&record)?;
    if record.equivalent == Some(false) {
        return Err(CliError::Verification("reduced game is not equivalent to Node-Kayles".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_document_parses_back() {
        let args = ReduceArgs { graph: "path:3".into(), to: Target::Distance, k: 3, output: None, verify: true };
        let (record, text) = reduce(&args).unwrap();
        assert_eq!(record.equivalent, Some(true));
        assert_eq!(record.vertices, 3 + 2 * 4);
        let doc = GraphDocument::parse(&text).unwrap();
        assert_eq!(doc.graph.n(), record.vertices);
        assert_eq!(doc.colors.len(), record.precolored);
    }

    #[test]
    fn verify_is_size_capped() {
        let args = ReduceArgs { graph: "path:7".into(), to: Target::Proper, k: 2, output: None, verify: true };
        assert_eq!(reduce(&args).unwrap_err().exit_code(), 3);
    }
}

use std::collections::BTreeMap;
use std::path::Path;

use coloring_games::{Color, Family, Graph, GraphDocument, GraphError, Vertex};

use crate::error::CliError;

/// A graph named on the command line, with whatever the source file adds.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub family: Option<Family>,
    pub k: Option<u32>,
    pub colors: BTreeMap<Vertex, u32>,
    pub order: Option<Vec<Vertex>>,
    pub label: String,
}

/// Reads `path:9`-style shorthands, or a graph file in the text format.
pub fn load_graph(source: &str) -> Result<Instance, CliError> {
    let file = Path::new(source);
    if file.is_file() {
        let text = std::fs::read_to_string(file)?;
        let doc = GraphDocument::parse(&text).map_err(|e| CliError::usage(format!("{source}: {e}")))?;
        return Ok(Instance {
            graph: doc.graph,
            family: None,
            k: doc.k,
            colors: doc.colors,
            order: doc.order,
            label: source.to_string(),
        });
    }
    let family: Family = source.parse().map_err(|e: GraphError| match e {
        GraphError::UnknownFamily(_) => CliError::usage(format!("`{source}` is neither a graph file nor a family shorthand")),
        other => other.into(),
    })?;
    Ok(Instance {
        graph: family.build()?,
        label: family.to_string(),
        family: Some(family),
        k: None,
        colors: BTreeMap::new(),
        order: None,
    })
}

/// Comma- or space-separated non-negative integers.
pub fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::usage(format!("bad {what} entry `{s}`"))))
        .collect()
}

/// A full coloring from `--coloring` (0 = uncolored), or the file's colors.
pub fn coloring(instance: &Instance, flag: Option<&str>) -> Result<Vec<Color>, CliError> {
    let n = instance.graph.n();
    let raw: Vec<usize> = match flag {
        Some(text) => {
            let list = parse_list(text, "coloring")?;
            if list.len() != n {
                return Err(CliError::usage(format!("--coloring has {} entries for {n} vertices", list.len())));
            }
            list
        }
        None => {
            let mut c = vec![0; n];
            for (&v, &col) in &instance.colors {
                c[v] = col as usize;
            }
            c
        }
    };
    raw.into_iter()
        .map(|c| Color::try_from(c).map_err(|_| CliError::usage(format!("color {c} is out of range"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn shorthand_and_file() {
        let inst = load_graph("cycle:5").unwrap();
        assert_eq!(inst.graph.n(), 5);
        assert_eq!(inst.label, "cycle:5");

        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(f, "graph undirected\nvertices 3\nk 2\nedge 0 1\nedge 1 2\ncolor 1 2\n").unwrap();
        let inst = load_graph(f.path().to_str().unwrap()).unwrap();
        assert_eq!(inst.k, Some(2));
        assert_eq!(coloring(&inst, None).unwrap(), vec![0, 2, 0]);
        assert_eq!(coloring(&inst, Some("1,0,0")).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn bad_sources_are_usage_errors() {
        assert_eq!(load_graph("blob:3").unwrap_err().exit_code(), 2);
        assert_eq!(load_graph("path:0").unwrap_err().exit_code(), 2);
        assert_eq!(parse_list("1,x", "order").unwrap_err().exit_code(), 2);
        let inst = load_graph("path:2").unwrap();
        assert!(coloring(&inst, Some("1")).is_err());
        assert!(coloring(&inst, Some("1,300")).is_err());
    }
}

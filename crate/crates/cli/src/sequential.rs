use std::fmt;

use clap::Args;
use coloring_games::sequential::BRUTE_FORCE_MAX_N;
use coloring_games::{brute_force_outcome, classify, decide_outcome, Family, SequentialOrder, VertexClass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{load_graph, parse_list};
use crate::output::Output;

#[derive(Debug, Args)]
pub struct SequentialArgs {
    /// Path length (shorthand for `--graph path:N`).
    #[arg(long, conflicts_with = "graph")]
    pub n: Option<usize>,
    /// A path given as a shorthand or graph file.
    #[arg(long)]
    pub graph: Option<String>,
    /// Vertices in the order they are painted, or `random`.
    #[arg(long)]
    pub order: Option<String>,
    /// Seed for `--order random`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-check with exhaustive search (paths up to the brute-force cap).
    #[arg(long)]
    pub brute_force: bool,
}

#[derive(Debug, Serialize)]
pub struct SequentialRecord {
    pub n: usize,
    pub order: Vec<usize>,
    /// One letter per vertex: S(ource), C(losed) or K (constrained).
    pub classes: String,
    pub outcome: String,
    pub brute_force: Option<String>,
}

impl fmt::Display for SequentialRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 64 {
            let order: Vec<String> = self.order.iter().map(|v| v.to_string()).collect();
            writeln!(f, "order: {}", order.join(","))?;
            writeln!(f, "classes: {}", self.classes)?;
        }
        write!(f, "outcome: {} (n = {})", self.outcome, self.n)?;
        if let Some(b) = &self.brute_force {
            write!(f, "\nbrute force: {b}")?;
        }
        Ok(())
    }
}

fn letter(c: VertexClass) -> char {
    match c {
        VertexClass::Source => 'S',
        VertexClass::Closed => 'C',
        VertexClass::Constrained => 'K',
    }
}

pub fn run(args: SequentialArgs, out: &Output) -> Result<(), CliError> {
    let record = decide(&args)?;
    out.emit(&record)?;
    if let Some(b) = &record.brute_force {
        if *b != record.outcome {
            return Err(CliError::Verification(format!(
                "linear algorithm says {}, exhaustive search says {b}",
                record.outcome
            )));
        }
    }
    Ok(())
}

pub fn decide(args: &SequentialArgs) -> Result<SequentialRecord, CliError> {
    let (graph, file_order) = match (&args.graph, args.n) {
        (Some(src), _) => {
            let inst = load_graph(src)?;
            (inst.graph, inst.order)
        }
        (None, Some(n)) => (Family::Path(n).build()?, None),
        (None, None) => return Err(CliError::usage("give --n or --graph")),
    };
    let n = graph.n();
    let order = match args.order.as_deref() {
        Some("random") => {
            let seed = args.seed.ok_or_else(|| CliError::usage("--order random needs --seed"))?;
            SequentialOrder::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
        }
        Some(text) => SequentialOrder::new(parse_list(text, "order")?)?,
        None => match file_order {
            Some(f) => SequentialOrder::new(f)?,
            None => return Err(CliError::usage("give --order (a vertex list or `random`)")),
        },
    };
    let classes = classify(&graph, &order)?;
    let outcome = decide_outcome(&graph, &order)?;
    let brute_force = if args.brute_force {
        if n > BRUTE_FORCE_MAX_N {
            return Err(CliError::Budget(format!("--brute-force is limited to {BRUTE_FORCE_MAX_N} vertices")));
        }
        Some(brute_force_outcome(&graph, &order)?.to_string())
    } else {
        None
    };
    Ok(SequentialRecord {
        n,
        order: order.vertices().to_vec(),
        classes: classes.into_iter().map(letter).collect(),
        outcome: outcome.to_string(),
        brute_force,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(n: usize, order: &str) -> SequentialArgs {
        SequentialArgs { n: Some(n), graph: None, order: Some(order.into()), seed: None, brute_force: true }
    }

    #[test]
    fn small_orders() {
        let r = decide(&args(3, "0,2,1")).unwrap();
        assert_eq!((r.classes.as_str(), r.outcome.as_str()), ("SCS", "P"));
        assert_eq!(r.brute_force.as_deref(), Some("P"));
        let r = decide(&args(3, "1,2,0")).unwrap();
        assert_eq!((r.classes.as_str(), r.outcome.as_str()), ("KSK", "N"));
    }

    #[test]
    fn random_orders_need_a_seed() {
        let mut a = args(10, "random");
        assert_eq!(decide(&a).unwrap_err().exit_code(), 2);
        a.seed = Some(4);
        let first = decide(&a).unwrap();
        assert_eq!(first.order, decide(&a).unwrap().order);
        assert_eq!(first.brute_force.as_deref(), Some(first.outcome.as_str()));
    }

    #[test]
    fn cycles_are_rejected() {
        let a = SequentialArgs { n: None, graph: Some("cycle:5".into()), order: Some("0,1,2,3,4".into()), seed: None, brute_force: false };
        assert_eq!(decide(&a).unwrap_err().exit_code(), 2);
    }
}

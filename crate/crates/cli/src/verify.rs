use std::fmt;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use coloring_games::graph::{connected_graphs_up_to_isomorphism, InvolutionSearch};
use coloring_games::oriented_path::class_position;
use coloring_games::reductions::VERIFY_MAX_N;
use coloring_games::{
    brute_force_outcome, closed_form_outcome, decide_outcome, kayles_position, outcome_by_involution,
    reduce_to_distance_2k, reduce_to_oriented_br, reduce_to_oriented_k, reduce_to_proper_k, verify_equivalence,
    Family, GrundyTable, Nimber, Outcome, PathClass, Position, ReducedInstance, Ruleset, SequentialOrder, Solver,
    TableMode, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;
use crate::output::Output;
use crate::solve::solver_config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Path-class recursions against game-tree search.
    Recursion,
    /// Linear sequential algorithm against exhaustive search.
    Sequential,
    /// Node-Kayles reductions, move for move.
    Reductions,
    /// Closed forms and symmetry shortcuts against search.
    ClosedForms,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Size bound: path length for sequential, vertex count for reductions,
    /// largest k for recursion.
    #[arg(long)]
    pub n: Option<usize>,
    /// Check every turn order of every length up to `--n`.
    #[arg(long)]
    pub exhaustive: bool,
    /// Random turn orders per length when not exhaustive.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
    pub passed: bool,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, {} mismatches)",
            self.suite,
            if self.passed { "pass" } else { "FAIL" },
            self.cases,
            self.mismatches
        )?;
        if let Some(m) = &self.first_mismatch {
            write!(f, "\nfirst mismatch: {m}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    mismatches: usize,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(what());
            }
        }
    }

    fn report(self, suite: Suite) -> Report {
        Report {
            suite: suite.to_possible_value().expect("no skipped variants").get_name().to_string(),
            cases: self.cases,
            mismatches: self.mismatches,
            first_mismatch: self.first,
            passed: self.mismatches == 0,
        }
    }
}

pub fn run(args: VerifyArgs, threads: usize, out: &Output) -> Result<(), CliError> {
    let report = suite(&args, threads)?;
    out.emit(&report)?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!("{} suite found {} mismatches", report.suite, report.mismatches)))
    }
}

pub fn suite(args: &VerifyArgs, threads: usize) -> Result<Report, CliError> {
    let search = |p: &Position| -> Result<Nimber, CliError> {
        Ok(Solver::with_config(Arc::clone(p.board()), solver_config(threads)?).grundy(p)?)
    };
    let mut t = Tally::default();
    match args.suite {
        Suite::Recursion => {
            let max_k = args.n.unwrap_or(12);
            let table = GrundyTable::compute(max_k, TableMode::Naive)?;
            for class in PathClass::ALL {
                let first = if class == PathClass::C { 2 } else { 1 };
                for k in first..=max_k {
                    let want = search(&class_position(class, k)?)?;
                    let got = table.get(class, k).expect("within bound");
                    t.check(got == want, || format!("{class}_{k}: table {got}, search {want}"));
                }
            }
        }
        Suite::Sequential => {
            let max_n = args.n.unwrap_or(8);
            if !args.exhaustive && args.seed.is_none() {
                return Err(CliError::usage("random sampling needs --seed (or use --exhaustive)"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed.unwrap_or(0));
            for n in 1..=max_n {
                let path = Family::Path(n).build()?;
                let orders: Vec<SequentialOrder> = if args.exhaustive {
                    permutations(n).into_iter().map(|f| SequentialOrder::new(f).expect("permutation")).collect()
                } else {
                    (0..args.samples).map(|_| SequentialOrder::random(n, &mut rng)).collect()
                };
                for order in orders {
                    let fast = decide_outcome(&path, &order)?;
                    let slow = brute_force_outcome(&path, &order)?;
                    t.check(fast == slow, || format!("order {:?}: linear {fast}, search {slow}", order.vertices()));
                }
            }
        }
        Suite::Reductions => {
            let max_n = args.n.unwrap_or(5);
            if max_n > VERIFY_MAX_N {
                return Err(CliError::Budget(format!("reductions are checked up to {VERIFY_MAX_N} vertices")));
            }
            for n in 1..=max_n {
                for g in connected_graphs_up_to_isomorphism(n) {
                    let kayles = kayles_position(&g)?;
                    let mut instances: Vec<ReducedInstance> = vec![reduce_to_oriented_br(&g)?];
                    for k in [2, 3] {
                        instances.push(reduce_to_proper_k(&g, k)?);
                        instances.push(reduce_to_oriented_k(&g, k)?);
                        instances.push(reduce_to_distance_2k(&g, k)?);
                    }
                    for r in instances {
                        let report = verify_equivalence(&kayles, &r)?;
                        t.check(report.is_equivalent(), || {
                            format!(
                                "{} k={} on edges {:?}: {}",
                                r.position.ruleset(),
                                r.position.k(),
                                g.edges(),
                                report.mismatch.clone().unwrap_or_else(|| "values differ".into())
                            )
                        });
                    }
                }
            }
        }
        Suite::ClosedForms => {
            for (ruleset, family, k) in closed_form_cases() {
                let cf = closed_form_outcome(ruleset, &family, k);
                let Some(expected) = cf.verdict.outcome() else { continue };
                let p = Position::from_parts(family.build()?, ruleset, k, None, None)?;
                let g = search(&p)?;
                let ok = Outcome::of(g) == expected && cf.grundy.is_none_or(|v| v == g);
                t.check(ok, || format!("{ruleset} k={k} on {family}: closed form {:?}, search {g}", cf));
            }
            for (family, k) in involution_cases() {
                let g = family.build()?;
                let verdict = outcome_by_involution(&g, k, &InvolutionSearch::with_hint(family.clone()));
                if verdict == Verdict::Unknown {
                    continue;
                }
                let got = Outcome::of(search(&Position::from_parts(g, Ruleset::Proper, k, None, None)?)?);
                t.check(verdict.outcome() == Some(got), || format!("involution on {family} k={k}: {verdict}, search {got}"));
            }
        }
    }
    Ok(t.report(args.suite))
}

fn closed_form_cases() -> Vec<(Ruleset, Family, u32)> {
    let mut cases = Vec::new();
    for n in 1..=12 {
        for k in 1..=3 {
            cases.push((Ruleset::Proper, Family::Path(n), k));
        }
        cases.push((Ruleset::Distance { d: 2 }, Family::Path(n), 2));
    }
    cases.push((Ruleset::Distance { d: 2 }, Family::Path(13), 2));
    for n in 3..=10 {
        cases.push((Ruleset::Proper, Family::Cycle(n), 2));
        cases.push((Ruleset::Distance { d: 2 }, Family::Cycle(n), 2));
        cases.push((Ruleset::Weak2, Family::Cycle(n), 2));
        cases.push((Ruleset::OrientedBlueRed, Family::DirectedCycle(n), 2));
    }
    for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![1, 5], vec![2, 2, 2]] {
        for k in 2..=3 {
            cases.push((Ruleset::Proper, Family::Grid(dims.clone()), k));
        }
    }
    for d in 1..=3 {
        cases.push((Ruleset::Proper, Family::Hypercube(d), 2));
    }
    for depth in 1..=2 {
        for k in 1..=3 {
            cases.push((Ruleset::Proper, Family::CompleteBinaryTree(depth), k));
        }
    }
    cases
}

fn involution_cases() -> Vec<(Family, u32)> {
    let mut cases = Vec::new();
    for k in 1..=3 {
        for n in 1..=10 {
            cases.push((Family::Path(n), k));
        }
        for dims in [vec![2, 3], vec![3, 3], vec![2, 4], vec![3, 5]] {
            cases.push((Family::Grid(dims), k));
        }
        cases.push((Family::Hypercube(3), k));
        cases.push((Family::CompleteBinaryTree(2), k));
    }
    cases
}

/// Every permutation of `0..n`, by Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![a.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            a.swap(j, i);
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

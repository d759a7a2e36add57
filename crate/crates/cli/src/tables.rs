use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Subcommand};
use coloring_games::oriented_path::MAX_BOUND;
use coloring_games::{GrundyTable, PathClass, PathError, TableMode};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{Format, Output};

#[derive(Debug, Args)]
pub struct GrundySeqArgs {
    /// Largest path index.
    #[arg(long)]
    pub max_k: usize,
    /// `naive` or `accelerated`; both give identical tables.
    #[arg(long, default_value = "accelerated")]
    pub mode: TableMode,
    /// Write rows here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Table file to resume from and to save progress into.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Indices computed between checkpoint saves.
    #[arg(long, default_value_t = 100_000)]
    pub chunk: usize,
    /// Stop after this many seconds (checked between chunks).
    #[arg(long)]
    pub time_budget: Option<u64>,
    /// Print only the summary line.
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Args)]
pub struct PPositionsArgs {
    #[arg(long, default_value = "D")]
    pub class: PathClass,
    #[arg(long)]
    pub max_k: usize,
    #[arg(long, default_value = "accelerated")]
    pub mode: TableMode,
    /// Read values from a saved table instead of computing them.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum TablesCommand {
    /// Compute a table and write it to a file.
    Save {
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value = "accelerated")]
        mode: TableMode,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check a table file and summarize it.
    Load {
        #[arg(long)]
        input: PathBuf,
        /// Also export the values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Grow a saved table.
    Extend {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value = "accelerated")]
        mode: TableMode,
        /// Defaults to overwriting the input.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub max_k: usize,
    pub d_p_positions: usize,
    pub max_value: u16,
    pub largest_rare_index: Option<usize>,
}

impl Summary {
    fn of(table: &GrundyTable, max_k: usize) -> Self {
        let report = table.classify_rare_common(max_k);
        Summary {
            max_k,
            d_p_positions: table.p_positions(PathClass::D).into_iter().filter(|&k| k <= max_k).count(),
            max_value: report.max_value,
            largest_rare_index: report.largest_rare_index_overall(),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "summary: max_k={} d_p_positions={} max_value={} largest_rare_index={}",
            self.max_k,
            self.d_p_positions,
            self.max_value,
            self.largest_rare_index.map_or("none".to_string(), |k| k.to_string())
        )
    }
}

#[derive(Serialize)]
struct Row {
    k: usize,
    #[serde(rename = "gA")]
    ga: u16,
    #[serde(rename = "gC")]
    gc: u16,
    #[serde(rename = "gD")]
    gd: u16,
}

/// Grows `table` to `max_k` in chunks, saving to `checkpoint` after each.
fn fill(
    table: &mut GrundyTable,
    max_k: usize,
    mode: TableMode,
    chunk: usize,
    checkpoint: Option<&Path>,
    budget: Option<Duration>,
) -> Result<(), CliError> {
    if max_k > MAX_BOUND {
        return Err(PathError::BoundTooLarge { k: max_k, max: MAX_BOUND }.into());
    }
    let start = Instant::now();
    while table.bound() < max_k {
        let next = max_k.min(table.bound() + chunk.max(1));
        table.extend(next, mode)?;
        if let Some(p) = checkpoint {
            table.save(p)?;
        }
        if table.bound() < max_k && budget.is_some_and(|b| start.elapsed() >= b) {
            let saved = match checkpoint {
                Some(p) => format!("; progress saved to {}", p.display()),
                None => String::new(),
            };
            return Err(CliError::Budget(format!(
                "time budget exhausted at k = {} of {max_k}{saved}",
                table.bound()
            )));
        }
    }
    Ok(())
}

fn write_rows<W: Write>(w: &mut W, table: &GrundyTable, max_k: usize, format: Format) -> Result<(), CliError> {
    let (a, c, d) = (table.ga(), table.gc(), table.gd());
    match format {
        Format::Text => {
            writeln!(w, "k,gA,gC,gD")?;
            for k in 1..=max_k {
                writeln!(w, "{k},{},{},{}", a[k], c[k], d[k])?;
            }
        }
        Format::Json => {
            for k in 1..=max_k {
                serde_json::to_writer(&mut *w, &Row { k, ga: a[k], gc: c[k], gd: d[k] })?;
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

pub fn grundy_seq(args: GrundySeqArgs, out: &Output) -> Result<(), CliError> {
    let mut table = match &args.checkpoint {
        Some(p) if p.exists() => GrundyTable::load(p)?,
        _ => GrundyTable::default(),
    };
    let budget = args.time_budget.map(Duration::from_secs);
    fill(&mut table, args.max_k, args.mode, args.chunk, args.checkpoint.as_deref(), budget)?;
    let summary = Summary::of(&table, args.max_k);

    if args.summary_only {
        out.emit(&summary)?;
        return Ok(());
    }
    match &args.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_rows(&mut w, &table, args.max_k, out.format())?;
            w.flush()?;
            out.emit(&summary)?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write_rows(&mut w, &table, args.max_k, out.format())?;
            w.flush()?;
            drop(w);
            // Keep stdout pure CSV in text mode.
            match out.format() {
                Format::Text => eprintln!("{summary}"),
                Format::Json => out.emit(&summary)?,
            }
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct PPositions {
    pub class: String,
    pub max_k: usize,
    pub count: usize,
    pub positions: Vec<usize>,
}

impl fmt::Display for PPositions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} P-positions of class {} for 1 <= k <= {}", self.count, self.class, self.max_k)?;
        let list: Vec<String> = self.positions.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", list.join(" "))
    }
}

pub fn p_positions(args: PPositionsArgs, out: &Output) -> Result<(), CliError> {
    let table = match &args.table {
        Some(p) => {
            let t = GrundyTable::load(p)?;
            if t.bound() < args.max_k {
                return Err(CliError::usage(format!(
                    "{} only reaches k = {}, asked for {}",
                    p.display(),
                    t.bound(),
                    args.max_k
                )));
            }
            t
        }
        None => GrundyTable::compute(args.max_k, args.mode)?,
    };
    let positions: Vec<usize> = table.p_positions(args.class).into_iter().filter(|&k| k <= args.max_k).collect();
    out.emit(&PPositions {
        class: args.class.to_string(),
        max_k: args.max_k,
        count: positions.len(),
        positions,
    })?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct TableInfo {
    file: String,
    #[serde(flatten)]
    summary: Summary,
}

impl fmt::Display for TableInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file, self.summary)
    }
}

pub fn run(cmd: TablesCommand, out: &Output) -> Result<(), CliError> {
    let (table, file) = match cmd {
        TablesCommand::Save { max_k, mode, output } => {
            let table = GrundyTable::compute(max_k, mode)?;
            table.save(&output)?;
            (table, output)
        }
        TablesCommand::Load { input, csv } => {
            let table = GrundyTable::load(&input)?;
            if let Some(path) = csv {
                let mut w = BufWriter::new(File::create(path)?);
                table.write_csv(&mut w)?;
                w.flush()?;
            }
            (table, input)
        }
        TablesCommand::Extend { input, max_k, mode, output } => {
            let mut table = GrundyTable::load(&input)?;
            table.extend(max_k, mode)?;
            let output = output.unwrap_or(input);
            table.save(&output)?;
            (table, output)
        }
    };
    out.emit(&TableInfo { file: file.display().to_string(), summary: Summary::of(&table, table.bound()) })?;
    Ok(())
}

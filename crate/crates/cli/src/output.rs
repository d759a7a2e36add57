use std::fmt::Display;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line.
    Json,
}

/// Writes records to stdout in the chosen format.
pub struct Output {
    format: Format,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn emit<T: Serialize + Display>(&self, record: &T) -> io::Result<()> {
        let stdout = io::stdout();
        let mut w = stdout.lock();
        match self.format {
            Format::Text => writeln!(w, "{record}"),
            Format::Json => {
                serde_json::to_writer(&mut w, record)?;
                writeln!(w)
            }
        }
    }
}

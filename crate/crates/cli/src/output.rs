use std::fs;
use std::io::{self, Write};
use std::time::Duration;

use clap::ValueEnum;
use serde::Serialize;

use crate::{Cli, Command, Global};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
}

/// A rendered report: pretty JSON plus a CSV table.
pub struct Report {
    json: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new<T: Serialize>(value: &T, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Report {
            json: serde_json::to_string_pretty(value).expect("reports serialize"),
            header,
            rows,
        }
    }

    fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json).into_bytes()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.into_inner().map_err(|e| e.into_error())
            }
        }
    }
}

pub fn emit(global: &Global, report: &Report) -> io::Result<()> {
    let bytes = report.render(global.format)?;
    match &global.out {
        Some(path) => fs::write(path, bytes),
        None => io::stdout().lock().write_all(&bytes),
    }
}

#[derive(Serialize)]
struct Bounds {
    n: Option<usize>,
    l: Option<usize>,
    d: Option<usize>,
    p: Option<usize>,
    budget: Option<u64>,
    threads: Option<usize>,
}

/// Everything needed to rerun a command. The report itself never depends on
/// the thread count or on timing; those are recorded here only.
#[derive(Serialize)]
pub struct Manifest {
    tool: &'static str,
    version: &'static str,
    command_line: Vec<String>,
    family: Option<String>,
    bounds: Bounds,
    determinism: &'static str,
    wall_time_s: Option<f64>,
    exit_code: Option<u8>,
}

impl Manifest {
    pub fn new(cli: &Cli) -> Self {
        let (family, n, lpd) = match &cli.command {
            Command::Enumerate(a) => (Some(a.family.clone()), Some(a.n), None),
            Command::Estimate(a) => (Some(a.family.clone()), Some(a.n), None),
            Command::Check(a) => (a.family.clone(), a.n, Some((a.l, a.d, a.p))),
        };
        Manifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command_line: std::env::args().collect(),
            family,
            bounds: Bounds {
                n,
                l: lpd.map(|t| t.0),
                d: lpd.map(|t| t.1),
                p: lpd.map(|t| t.2),
                budget: cli.global.budget,
                threads: cli.global.threads,
            },
            determinism: "no randomness; output is identical for any thread count",
            wall_time_s: None,
            exit_code: None,
        }
    }

    pub fn finish(&mut self, elapsed: Duration, code: u8) {
        self.wall_time_s = Some(elapsed.as_secs_f64());
        self.exit_code = Some(code);
    }

    pub fn write(&self, target: Option<&str>) -> io::Result<()> {
        let text = serde_json::to_string(self).expect("manifest serializes");
        match target {
            Some("none") => Ok(()),
            Some(path) => fs::write(path, text + "\n"),
            None => writeln!(io::stderr().lock(), "{text}"),
        }
    }
}

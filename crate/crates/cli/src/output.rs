use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;
use sqtele_core::C64;

use crate::args::{Common, Format};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexJson {
    fn from(z: C64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

/// Echo of the configuration a report was produced with.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub protocol: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_plus: Option<ComplexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_minus: Option<ComplexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta_grid: Option<Vec<f64>>,
    /// Cutoff actually used; absent for grids where it varies with r.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    pub tail_tolerance: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchJson {
    pub counts: Vec<usize>,
    pub probability: f64,
    pub fidelity_to_target: f64,
    pub outcome: &'static str,
}

/// Full report of a single protocol run.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolJson {
    pub command: &'static str,
    pub params: Params,
    pub branches: Vec<BranchJson>,
    pub success_probability: f64,
    pub analytic_reference: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub truncation_tail: f64,
    pub mean_success_fidelity: f64,
    pub min_success_fidelity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy_after_concentration: Option<f64>,
    pub pass: bool,
}

/// Report of a tabulating command (entropy, bs-demo, sweep).
#[derive(Debug, Clone, Serialize)]
pub struct TableJson<R> {
    pub command: &'static str,
    pub params: Params,
    pub rows: Vec<R>,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
struct BranchCsv<'a> {
    command: &'static str,
    counts: String,
    probability: f64,
    fidelity_to_target: f64,
    outcome: &'a str,
}

pub trait Emit {
    fn write_json(&self, out: &mut dyn Write) -> io::Result<()>;
    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()>;
    fn pass(&self) -> bool;
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn pretty<T: Serialize>(value: &T, out: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

impl Emit for ProtocolJson {
    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        pretty(self, out)
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for b in &self.branches {
            let counts = b.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
            w.serialize(BranchCsv {
                command: self.command,
                counts,
                probability: b.probability,
                fidelity_to_target: b.fidelity_to_target,
                outcome: b.outcome,
            })
            .map_err(csv_err)?;
        }
        w.flush()
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

impl<R: Serialize> Emit for TableJson<R> {
    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        pretty(self, out)
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row).map_err(csv_err)?;
        }
        w.flush()
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

/// Write a report in the requested format to the requested destination.
pub fn emit(report: &dyn Emit, common: &Common) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match &common.output {
        Some(path) => Box::new(io::BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match common.format {
        Format::Json => report.write_json(&mut sink)?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush()
}

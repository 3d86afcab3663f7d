//! Experiment report rows and their CSV rendering.
//!
//! The CSV is the single output format of the harness. Byte-identical output
//! for identical (config, seed) is part of the contract, so `elapsed_ms` is
//! fixed at zero in emitted rows; wall-clock timing goes to stderr.

use crate::graph::Vertex;
use std::io::Write;

pub const CSV_HEADER: &str =
    "mode,n,p,r,ell,k,trial,pair_u,pair_v,achieved,theory,ratio,regime,seed,elapsed_ms";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub mode: &'static str,
    pub n: usize,
    pub p: f64,
    pub r: u32,
    pub ell: usize,
    pub k: Option<usize>,
    pub trial: u64,
    pub pair_u: Vertex,
    pub pair_v: Vertex,
    pub achieved: u64,
    pub theory: f64,
    pub ratio: f64,
    pub regime: &'static str,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl ReportRow {
    pub fn csv_line(&self) -> String {
        let k = self.k.map(|k| k.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.mode,
            self.n,
            self.p,
            self.r,
            self.ell,
            k,
            self.trial,
            self.pair_u,
            self.pair_v,
            self.achieved,
            self.theory,
            self.ratio,
            self.regime,
            self.seed,
            self.elapsed_ms
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

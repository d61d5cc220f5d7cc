//! CSV output.
//!
//! Each file starts with `# key: value` metadata lines followed by a header
//! row. Floats are written in Rust's shortest round-trip form, so reading a
//! file back gives the exact values that were written.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::cdf::CdfCurve;
use crate::error::{Error, Result};
use crate::experiment::{CdfStudy, LabeledCurve, SirRun, UeClass};
use crate::numerology::NumerologyIndex;
use crate::sir::SirReport;

fn writer(path: &Path, metadata: &[String]) -> Result<csv::Writer<BufWriter<File>>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let mut out = BufWriter::new(File::create(path)?);
    for line in metadata {
        writeln!(out, "# {line}")?;
    }
    Ok(csv::Writer::from_writer(out))
}

fn finish(w: csv::Writer<BufWriter<File>>) -> Result<()> {
    let mut inner = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    inner.flush()?;
    Ok(())
}

/// Columns: numerology, absolute_bin, ue_id, sir_db.
pub fn write_bins_csv(report: &SirReport, path: &Path, metadata: &[String]) -> Result<()> {
    let mut w = writer(path, metadata)?;
    w.write_record(["numerology", "absolute_bin", "ue_id", "sir_db"])?;
    for b in &report.per_bin {
        w.write_record([
            b.numerology.to_string(),
            b.absolute_bin.to_string(),
            b.ue.to_string(),
            b.sir_db.to_string(),
        ])?;
    }
    finish(w)
}

/// Columns: ue_id, per_ue_sir_db.
pub fn write_ue_csv(report: &SirReport, path: &Path, metadata: &[String]) -> Result<()> {
    let mut w = writer(path, metadata)?;
    w.write_record(["ue_id", "per_ue_sir_db"])?;
    for u in &report.per_ue {
        w.write_record([u.ue.to_string(), u.sir_db.to_string()])?;
    }
    finish(w)
}

/// Writes `<stem>_bins.csv` and `<stem>_ues.csv` into `dir`.
pub fn write_sir_run(run: &SirRun, dir: &Path, stem: &str) -> Result<Vec<PathBuf>> {
    let meta = run.metadata();
    let bins = dir.join(format!("{stem}_bins.csv"));
    let ues = dir.join(format!("{stem}_ues.csv"));
    write_bins_csv(&run.report, &bins, &meta)?;
    write_ue_csv(&run.report, &ues, &meta)?;
    Ok(vec![bins, ues])
}

/// Columns: algorithm, ue_class, numerology, sir_db, prob.
pub fn write_cdf_csv(curves: &[LabeledCurve], path: &Path, metadata: &[String]) -> Result<()> {
    let mut w = writer(path, metadata)?;
    w.write_record(["algorithm", "ue_class", "numerology", "sir_db", "prob"])?;
    for c in curves {
        for (v, p) in c.curve.values.iter().zip(&c.curve.probs) {
            w.write_record([
                c.algorithm.to_string(),
                c.class.to_string(),
                c.numerology.to_string(),
                v.to_string(),
                p.to_string(),
            ])?;
        }
    }
    finish(w)
}

pub fn write_cdf_study(study: &CdfStudy, path: &Path) -> Result<()> {
    write_cdf_csv(&study.curves, path, &study.metadata())
}

fn parse_field<T: std::str::FromStr>(record: &csv::StringRecord, idx: usize, name: &str) -> Result<T> {
    let raw = record.get(idx).unwrap_or("");
    raw.parse().map_err(|_| {
        let line = record.position().map_or(0, |p| p.line());
        Error::argument(format!("line {line}: bad {name} value `{raw}`"))
    })
}

/// Reads curves written by [`write_cdf_csv`], in file order.
pub fn read_cdf_csv(path: &Path) -> Result<Vec<LabeledCurve>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    let mut curves: Vec<LabeledCurve> = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let algorithm = parse_field(&rec, 0, "algorithm")?;
        let class: UeClass = parse_field(&rec, 1, "ue_class")?;
        let num: u8 = parse_field(&rec, 2, "numerology")?;
        let numerology =
            NumerologyIndex::from_number(num).ok_or_else(|| Error::argument(format!("bad numerology {num}")))?;
        let value: f64 = parse_field(&rec, 3, "sir_db")?;
        let prob: f64 = parse_field(&rec, 4, "prob")?;
        match curves.last_mut() {
            Some(c) if c.algorithm == algorithm && c.class == class && c.numerology == numerology => {
                c.curve.values.push(value);
                c.curve.probs.push(prob);
            }
            _ => curves.push(LabeledCurve {
                algorithm,
                class,
                numerology,
                curve: CdfCurve {
                    values: vec![value],
                    probs: vec![prob],
                },
            }),
        }
    }
    Ok(curves)
}

//! CSV emission and re-reading.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::{Row, RunConfig, Table};
use crate::error::{Error, Result};

const COLUMNS: [&str; 4] = ["n1_23", "n2_13", "n3_12", "n3"];
const GAP_COLUMNS: [&str; 2] = ["solver_gap", "closedform_gap"];

fn io_error(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_error(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |e| match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Config(format!("{}: {:?}", path.display(), other)),
    }
}

fn header(table: &Table) -> Vec<&'static str> {
    let mut header = vec![table.axis.column()];
    header.extend(COLUMNS);
    if table.has_gaps() {
        header.extend(GAP_COLUMNS);
    }
    header
}

fn fields(row: &Row, gaps: bool) -> Vec<String> {
    let r = &row.record;
    let mut values = vec![r.t, r.n1_23, r.n2_13, r.n3_12, r.n3];
    if gaps {
        values.push(row.solver_gap.unwrap_or(f64::NAN));
        values.push(row.closedform_gap.unwrap_or(f64::NAN));
    }
    values.iter().map(|v| format!("{v:.16e}")).collect()
}

fn write_to<W: Write>(table: &Table, w: &mut csv::Writer<W>) -> csv::Result<()> {
    let gaps = table.has_gaps();
    w.write_record(header(table))?;
    for row in &table.rows {
        w.write_record(fields(row, gaps))?;
    }
    w.flush()?;
    Ok(())
}

/// Renders `table` as CSV text: one header line plus one line per row,
/// every value with 17 significant digits.
pub fn render_csv(table: &Table) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write_to(table, &mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flushed")).expect("ASCII output")
}

pub fn write_csv(table: &Table, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(io_error(path))?;
    let mut w = csv::Writer::from_writer(file);
    write_to(table, &mut w).map_err(csv_error(path))
}

/// Writes each table to `dir` joined with its configuration's output path.
pub fn write_bundle(dir: &Path, configs: &[RunConfig], tables: &[Table]) -> Result<Vec<PathBuf>> {
    if configs.len() != tables.len() {
        return Err(Error::Config(format!(
            "{} configurations but {} tables",
            configs.len(),
            tables.len()
        )));
    }
    configs
        .iter()
        .zip(tables)
        .map(|(c, t)| {
            let path = dir.join(&c.output);
            write_csv(t, &path)?;
            Ok(path)
        })
        .collect()
}

/// A parsed CSV file: header names and numeric rows.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn read_csv(path: &Path) -> Result<CsvTable> {
    let file = fs::File::open(path).map_err(io_error(path))?;
    let mut reader = csv::Reader::from_reader(file);
    let columns = reader
        .headers()
        .map_err(csv_error(path))?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error(path))?;
        let row = record
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    Error::Config(format!("{}:{}: bad number `{f}`", path.display(), i + 2))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { columns, rows })
}

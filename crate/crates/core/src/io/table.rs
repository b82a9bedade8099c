//! CSV tables. Numbers use Rust's shortest round-trip formatting, so a
//! re-parse reproduces every value bit for bit.

use crate::curve::Polyline;
use crate::error::{Error, Result};
use crate::interp::MonotoneDataset;

/// Column names for a polyline of dimension `dim`: `t,x,y[,z,x4,…]`.
pub fn polyline_header(dim: usize) -> Vec<String> {
    let mut header = vec!["t".to_string()];
    for k in 0..dim {
        header.push(match k {
            0 => "x".into(),
            1 => "y".into(),
            2 => "z".into(),
            _ => format!("x{}", k + 1),
        });
    }
    header
}

pub fn format_number(v: f64) -> String {
    format!("{v:?}")
}

/// Write a header and numeric rows.
pub fn export_table(header: &[String], rows: &[Vec<f64>]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::InvalidInput(format!(
                "row has {} values, header has {}",
                row.len(),
                header.len()
            )));
        }
        w.write_record(row.iter().map(|v| format_number(*v)))
            .map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))
}

/// `t,x,y[,z…]` rows for a sampled curve.
pub fn export_csv(samples: &Polyline) -> Result<Vec<u8>> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("cannot export an empty polyline".into()));
    }
    if samples.params.len() != samples.points.len() {
        return Err(Error::InvalidInput("parameter and point counts differ".into()));
    }
    let rows: Vec<Vec<f64>> = samples
        .params
        .iter()
        .zip(&samples.points)
        .map(|(t, p)| std::iter::once(*t).chain(p.iter().copied()).collect())
        .collect();
    export_table(&polyline_header(samples.dim()), &rows)
}

fn read_rows(bytes: &[u8]) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let header: Vec<String> = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("row {}: `{cell}` is not a number", line + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Inverse of [`export_csv`].
pub fn parse_polyline_csv(bytes: &[u8]) -> Result<Polyline> {
    let (header, rows) = read_rows(bytes)?;
    if header.len() < 3 || header[0] != "t" {
        return Err(Error::InvalidInput("expected header `t,x,y[,…]`".into()));
    }
    let params = rows.iter().map(|r| r[0]).collect();
    let points = rows.into_iter().map(|r| r[1..].to_vec()).collect();
    Ok(Polyline { params, points })
}

/// Dataset with header `x,f`.
pub fn parse_dataset_csv(bytes: &[u8]) -> Result<MonotoneDataset> {
    let (header, rows) = read_rows(bytes)?;
    if header != ["x", "f"] {
        return Err(Error::InvalidInput(format!(
            "expected header `x,f`, got `{}`",
            header.join(",")
        )));
    }
    MonotoneDataset::new(rows.iter().map(|r| r[0]).collect(), rows.iter().map(|r| r[1]).collect())
}

pub fn export_dataset_csv(data: &MonotoneDataset) -> Result<Vec<u8>> {
    let rows: Vec<Vec<f64>> = data.pairs().into_iter().map(|(x, f)| vec![x, f]).collect();
    export_table(&["x".to_string(), "f".to_string()], &rows)
}

fn csv_error(e: csv::Error) -> Error {
    Error::InvalidInput(format!("csv: {e}"))
}

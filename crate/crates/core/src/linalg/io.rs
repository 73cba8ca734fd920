//! Text blocks for matrices: a header `rows cols Z|Lambda`, then one row per
//! line with entries separated by commas.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::novikov::NovikovSeries;

use super::matrix::{IntMatrix, LambdaMatrix, Matrix};
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixBlock {
    Int(IntMatrix),
    Lambda(LambdaMatrix),
}

fn write_block<E: std::fmt::Display + Clone>(m: &Matrix<E>, tag: &str) -> String {
    let mut out = format!("{} {} {tag}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|e| e.to_string()).collect();
        writeln!(out, "{}", row.join(", ")).expect("string write");
    }
    out
}

impl MatrixBlock {
    pub fn to_text(&self) -> String {
        match self {
            MatrixBlock::Int(m) => write_block(m, "Z"),
            MatrixBlock::Lambda(m) => write_block(m, "Lambda"),
        }
    }

    pub fn parse(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LinalgError::Parse("missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [rows, cols, tag] = fields[..] else {
            return Err(LinalgError::Parse(format!("bad header {header:?}")));
        };
        let rows: usize = rows.parse().map_err(|_| LinalgError::Parse(format!("bad row count {rows:?}")))?;
        let cols: usize = cols.parse().map_err(|_| LinalgError::Parse(format!("bad column count {cols:?}")))?;
        let mut cells: Vec<&str> = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| LinalgError::Parse(format!("missing row {i}")))?;
            let row: Vec<&str> = line.split(',').map(str::trim).collect();
            if row.len() != cols {
                return Err(LinalgError::Parse(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            cells.extend(row);
        }
        if lines.next().is_some() {
            return Err(LinalgError::Parse("trailing lines after the last row".into()));
        }
        match tag {
            "Z" => {
                let data = cells
                    .iter()
                    .map(|c| c.parse::<BigInt>().map_err(|_| LinalgError::Parse(format!("bad integer {c:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MatrixBlock::Int(Matrix::new(rows, cols, data)))
            }
            "Lambda" => {
                let data = cells
                    .iter()
                    .map(|c| c.parse::<NovikovSeries>().map_err(LinalgError::Novikov))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(MatrixBlock::Lambda(Matrix::new(rows, cols, data)))
            }
            other => Err(LinalgError::Parse(format!("unknown ring {other:?}"))),
        }
    }
}

//! Typed result tables and their CSV form.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), so every finite
//! value survives a write/read cycle bit for bit. Non-finite values are written
//! as `inf`, `-inf` and `NaN`.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl PartialEq for Cell {
    /// Floats compare by bit pattern, except that any two NaNs are equal.
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cell::Float(a), Cell::Float(b)) => (a.is_nan() && b.is_nan()) || a.to_bits() == b.to_bits(),
            (Cell::Int(a), Cell::Int(b)) => a == b,
            (Cell::Text(a), Cell::Text(b)) => a == b,
            _ => false,
        }
    }
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            Cell::Text(_) => None,
        }
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }

    /// Reads a field back into the variant that wrote it.
    pub fn parse(field: &str) -> Cell {
        if looks_numeric(field) {
            if !field.contains(['.', 'e', 'E']) {
                if let Ok(v) = field.parse::<i64>() {
                    return Cell::Int(v);
                }
            }
            if let Ok(v) = field.parse::<f64>() {
                return Cell::Float(v);
            }
        }
        Cell::Text(field.to_owned())
    }
}

fn looks_numeric(s: &str) -> bool {
    if matches!(s, "inf" | "-inf" | "NaN") {
        return true;
    }
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    digits.starts_with(|c: char| c.is_ascii_digit())
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Float(v) if v.is_nan() => f.write_str("NaN"),
            Cell::Float(v) if v.is_infinite() => f.write_str(if *v > 0.0 { "inf" } else { "-inf" }),
            Cell::Float(v) => write!(f, "{v:.16e}"),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(i64::try_from(v).expect("integer column fits in i64"))
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        ResultTable {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a numeric column; non-numeric cells become NaN.
    pub fn column_f64(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_f64().unwrap_or(f64::NAN)).collect())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let table_err = |e: csv::Error| HarnessError::Table(e.to_string());
        w.write_record(&self.columns).map_err(table_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).map_err(table_err)?;
        }
        w.flush().map_err(|e| HarnessError::Table(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let table_err = |e: csv::Error| HarnessError::Table(e.to_string());
        let columns: Vec<String> = r.headers().map_err(table_err)?.iter().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record.map_err(table_err)?;
            if record.len() != columns.len() {
                return Err(HarnessError::Table(format!(
                    "row has {} fields, header has {}",
                    record.len(),
                    columns.len()
                )));
            }
            rows.push(record.iter().map(Cell::parse).collect());
        }
        Ok(ResultTable { columns, rows })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
        self.write_csv(std::io::BufWriter::new(file))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
        Self::read_csv(std::io::BufReader::new(file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(Cell::Float(1.0 / 3.0).to_string(), "3.3333333333333331e-1");
        assert_eq!(Cell::Float(f64::INFINITY).to_string(), "inf");
        assert_eq!(Cell::Float(f64::NAN).to_string(), "NaN");
    }

    #[test]
    fn parse_recovers_variants() {
        assert_eq!(Cell::parse("42"), Cell::Int(42));
        assert_eq!(Cell::parse("-7"), Cell::Int(-7));
        assert_eq!(Cell::parse("1.0000000000000000e0"), Cell::Float(1.0));
        assert_eq!(Cell::parse("-inf"), Cell::Float(f64::NEG_INFINITY));
        assert_eq!(Cell::parse("NaN"), Cell::Float(f64::NAN));
        assert_eq!(Cell::parse("nan"), Cell::Text("nan".into()));
        assert_eq!(Cell::parse("frozen"), Cell::Text("frozen".into()));
        assert_eq!(Cell::parse(""), Cell::Text(String::new()));
    }

    #[test]
    fn csv_round_trip() {
        let mut t = ResultTable::new(&["r", "N", "label"]);
        t.push(vec![0.1.into(), 10u64.into(), "a,b \"q\"".into()]);
        t.push(vec![f64::INFINITY.into(), (-3i64).into(), "never".into()]);
        let back = ResultTable::read_csv(t.to_csv_string().as_bytes()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(ResultTable::read_csv("a,b\n1\n".as_bytes()).is_err());
    }
}

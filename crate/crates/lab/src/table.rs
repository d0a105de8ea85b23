//! Homogeneous tables written as CSV (with header) or as a JSON array of flat
//! objects. Numbers carry 12 significant digits.

use std::fs;
use std::path::Path;

use serde_json::{Map, Number, Value as Json};

use crate::format::fmt_sig;

/// Significant digits of every number written to a table.
pub const TABLE_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Self::Int(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Self::Int(v as i64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Self::Text(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

impl Value {
    fn to_text(&self) -> String {
        match self {
            Self::Num(v) => fmt_sig(*v, TABLE_DIGITS),
            Self::Int(v) => v.to_string(),
            Self::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Self::Num(v) => {
                let rounded: f64 = fmt_sig(*v, TABLE_DIGITS).parse().unwrap_or(f64::NAN);
                Number::from_f64(rounded).map_or(Json::Null, Json::Number)
            }
            Self::Int(v) => Json::Number((*v).into()),
            Self::Text(s) => Json::String(s.clone()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("row has {found} cells, table has {expected} columns")]
    RowLength { expected: usize, found: usize },
    #[error("csv encoding failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl TableFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) -> Result<(), TableError> {
        if row.len() != self.columns.len() {
            return Err(TableError::RowLength {
                expected: self.columns.len(),
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, TableError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Value::to_text))?;
        }
        writer.into_inner().map_err(|e| TableError::Io {
            path: "<memory>".to_owned(),
            source: std::io::Error::other(e.to_string()),
        })
    }

    pub fn to_json(&self) -> String {
        let array: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let object: Map<String, Json> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(row.iter().map(Value::to_json))
                    .collect();
                Json::Object(object)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&Json::Array(array)).expect("plain JSON values");
        text.push('\n');
        text
    }

    pub fn encode(&self, format: TableFormat) -> Result<Vec<u8>, TableError> {
        match format {
            TableFormat::Csv => self.to_csv(),
            TableFormat::Json => Ok(self.to_json().into_bytes()),
        }
    }
}

/// Encodes `table` and writes it to `path`.
pub fn write_table(table: &Table, format: TableFormat, path: &Path) -> Result<(), TableError> {
    let bytes = table.encode(format)?;
    fs::write(path, bytes).map_err(|source| TableError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaps() -> Table {
        let mut t = Table::new(["alpha", "gap"]);
        for (a, g) in [(50.0, 5.2e-5), (200.0, 1.2045e-9), (800.0, 1.2e-18)] {
            t.push(vec![a.into(), g.into()]).unwrap();
        }
        t
    }

    #[test]
    fn empty_tables() {
        let t = Table::new(["alpha", "gap"]);
        assert_eq!(t.to_csv().unwrap(), b"alpha,gap\n");
        assert_eq!(t.to_json(), "[]\n");
    }

    #[test]
    fn csv_lines() {
        let text = String::from_utf8(gaps().to_csv().unwrap()).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().nth(2).unwrap(), "200,1.2045e-9");
    }

    #[test]
    fn json_objects_keep_column_order() {
        let json: Json = serde_json::from_str(&gaps().to_json()).unwrap();
        let first = json.as_array().unwrap()[0].as_object().unwrap();
        assert_eq!(first.keys().collect::<Vec<_>>(), ["alpha", "gap"]);
        assert_eq!(first["gap"].as_f64().unwrap(), 5.2e-5);
    }

    #[test]
    fn mixed_values_and_non_finite() {
        let mut t = Table::new(["n", "parity", "energy"]);
        t.push(vec![1usize.into(), "even".into(), f64::NAN.into()]).unwrap();
        let json: Json = serde_json::from_str(&t.to_json()).unwrap();
        assert!(json[0]["energy"].is_null());
        assert_eq!(json[0]["n"], 1);
        assert!(t.push(vec![1usize.into()]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let mut t = Table::new(["x"]);
        let values = [std::f64::consts::PI, -1.0 / 7.0, 2.053800130460391];
        for v in values {
            t.push(vec![v.into()]).unwrap();
        }
        let bytes = t.to_csv().unwrap();
        let mut reader = csv::Reader::from_reader(bytes.as_slice());
        for (record, v) in reader.records().zip(values) {
            let back: f64 = record.unwrap()[0].parse().unwrap();
            assert!((back - v).abs() <= 5e-12 * v.abs());
        }
    }

    #[test]
    fn write_to_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gaps.csv");
        write_table(&gaps(), TableFormat::Csv, &path).unwrap();
        assert_eq!(std::fs::read_to_string(path).unwrap().lines().count(), 4);
        let missing = dir.path().join("no/such/dir.csv");
        assert!(matches!(
            write_table(&gaps(), TableFormat::Csv, &missing),
            Err(TableError::Io { .. })
        ));
    }
}

//! `{"n": 2, "unit": [1, 0], "table": [[[1, 0], [0, 1]], [[0, 1], [5, 0]]]}`

use ordclosure::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} is not an integer")]
    NotInteger(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct RawTable {
    n: usize,
    unit: Vec<Value>,
    table: Vec<Vec<Vec<Value>>>,
}

/// Parsed table file; shape is checked when the order is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFile {
    pub n: usize,
    pub unit: Vec<BigInt>,
    pub table: Vec<Vec<Vec<BigInt>>>,
}

fn integer(v: &Value) -> Result<BigInt, TableError> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(TableError::NotInteger(other.to_string())),
    };
    text.parse().map_err(|_| TableError::NotInteger(v.to_string()))
}

/// Entries may be JSON integers or decimal strings.
pub fn parse_table(src: &str) -> Result<TableFile, TableError> {
    let raw: RawTable = serde_json::from_str(src)?;
    let unit = raw.unit.iter().map(integer).collect::<Result<_, _>>()?;
    let table = raw
        .table
        .iter()
        .map(|row| row.iter().map(|c| c.iter().map(integer).collect()).collect())
        .collect::<Result<_, _>>()?;
    Ok(TableFile { n: raw.n, unit, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_integers_and_strings() {
        let t = parse_table(r#"{"n": 2, "unit": [1, "0"], "table": [[[1, 0], [0, 1]], [[0, 1], ["5", 0]]]}"#).unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.table[1][1][0], BigInt::from(5));
        assert!(parse_table(r#"{"n": 1, "unit": [1.5], "table": [[[1]]]}"#).is_err());
        assert!(parse_table(r#"{"n": 1}"#).is_err());
    }
}

//! JSON form of a configuration matrix:
//! `{"rows": [["1","0","1/2"], ...], "field": "Q" | "Fp", "p": 7}`.

use serde::{Deserialize, Serialize};

use crate::arith::{Field, Matrix};

use super::ConfigError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

/// A matrix entry: either a string `"a"` / `"a/b"` or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl MatrixJson {
    pub fn field(&self) -> Result<Field, ConfigError> {
        match (self.field.as_deref(), self.p) {
            (None | Some("Q"), None) => Ok(Field::Rational),
            (None | Some("Fp"), Some(p)) => Ok(Field::prime(p)?),
            (Some("Fp"), None) => Err(ConfigError::Parse("field Fp requires \"p\"".into())),
            (Some("Q"), Some(_)) => Err(ConfigError::Parse("field Q takes no \"p\"".into())),
            (Some(other), _) => Err(ConfigError::Parse(format!("unknown field {other:?}"))),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix, ConfigError> {
        let f = self.field()?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Int(v) => Ok(f.from_i64(*v)),
                        Entry::Text(s) => f.parse_scalar(s),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.is_empty() {
            return Err(ConfigError::Parse("matrix has no rows".into()));
        }
        Ok(Matrix::from_rows(f, rows)?)
    }
}

pub fn matrix_from_json(text: &str) -> Result<Matrix, ConfigError> {
    let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    parsed.to_matrix()
}

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    let (field, p) = match m.field() {
        Field::Rational => (None, None),
        Field::Prime(p) => (Some("Fp".to_string()), Some(p)),
    };
    MatrixJson {
        rows: m.to_rows().iter().map(|r| r.iter().map(|s| Entry::Text(s.to_string())).collect()).collect(),
        field,
        p,
    }
}

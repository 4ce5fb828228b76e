//! JSON lattice files: `{"name": string, "labels": [string], "gram": [[int]]}`.

use std::fmt;
use std::path::Path;

use quadlat::{IntMatrix, IntegralLattice, LatticeError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub name: String,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

/// Loader failure. Syntax errors carry a 1-based source position.
#[derive(Debug)]
pub enum LoadError {
    Io(std::io::Error),
    Syntax { line: usize, column: usize, message: String },
    /// First asymmetric entry, 0-based matrix position.
    Asymmetric { row: usize, col: usize, upper: i64, lower: i64 },
    NotSquare { row: usize, expected: usize, found: usize },
    Lattice(LatticeError),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "{e}"),
            Self::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            Self::Asymmetric { row, col, upper, lower } => {
                write!(f, "gram is not symmetric: entry ({row}, {col}) = {upper} but ({col}, {row}) = {lower}")
            }
            Self::NotSquare { row, expected, found } => {
                write!(f, "gram row {row} has {found} entries, expected {expected}")
            }
            Self::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LoadError {}

pub fn parse(text: &str) -> Result<IntegralLattice, LoadError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| LoadError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let n = file.gram.len();
    if let Some((row, r)) = file.gram.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(LoadError::NotSquare { row, expected: n, found: r.len() });
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if file.gram[i][j] != file.gram[j][i] {
                return Err(LoadError::Asymmetric { row: i, col: j, upper: file.gram[i][j], lower: file.gram[j][i] });
            }
        }
    }
    IntegralLattice::new(Some(&file.name), file.labels, IntMatrix::from_rows(&file.gram)).map_err(LoadError::Lattice)
}

pub fn load(path: &Path) -> Result<IntegralLattice, LoadError> {
    parse(&std::fs::read_to_string(path).map_err(LoadError::Io)?)
}

pub fn to_file(lattice: &IntegralLattice) -> LatticeFile {
    LatticeFile {
        name: lattice.name().unwrap_or("L").to_owned(),
        labels: lattice.labels().to_vec(),
        gram: lattice.gram().row_vecs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let l = quadlat::catalog::prim_lattice_m();
        let text = serde_json::to_string(&to_file(&l)).unwrap();
        let back = parse(&text).unwrap();
        assert_eq!(back.gram(), l.gram());
        assert_eq!(back.labels(), l.labels());
    }

    #[test]
    fn syntax_error_position() {
        let err = parse("{\n  \"name\": \"x\",\n  \"labels\": [\"a\"],\n  \"gram\": [[2,]]\n}").unwrap_err();
        match err {
            LoadError::Syntax { line, .. } => assert_eq!(line, 4),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn asymmetric_rejected() {
        let err = parse(r#"{"name": "x", "labels": ["a", "b"], "gram": [[2, 1], [0, 2]]}"#).unwrap_err();
        assert!(matches!(err, LoadError::Asymmetric { row: 0, col: 1, upper: 1, lower: 0 }));
    }

    #[test]
    fn ragged_rejected() {
        let err = parse(r#"{"name": "x", "labels": ["a", "b"], "gram": [[2, 1], [1]]}"#).unwrap_err();
        assert!(matches!(err, LoadError::NotSquare { row: 1, .. }));
    }
}

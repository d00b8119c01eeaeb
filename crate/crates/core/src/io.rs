//! JSON file formats.
//!
//! Matrices are `{"dim": n, "entries": [[[re, im], ...], ...]}` in row-major
//! order. States use the same entry convention under `"density"`, function
//! algebra elements are `{"points": [...], "values": [[re, im], ...]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

fn entries_to_matrix(dim: usize, entries: &[Vec<[f64; 2]>]) -> Result<CMatrix> {
    if entries.len() != dim {
        return Err(Error::NonSquare {
            rows: entries.len(),
            row: 0,
            cols: dim,
        });
    }
    for (i, row) in entries.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::NonSquare {
                rows: dim,
                row: i,
                cols: row.len(),
            });
        }
        for (j, z) in row.iter().enumerate() {
            if !(z[0].is_finite() && z[1].is_finite()) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    if dim == 0 {
        return Err(Error::Empty("matrix of dimension 0"));
    }
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        C64::new(entries[r][c][0], entries[r][c][1])
    }))
}

fn matrix_to_entries(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

impl TryFrom<MatrixFile> for AlgebraElement {
    type Error = Error;
    fn try_from(f: MatrixFile) -> Result<Self> {
        AlgebraElement::new(entries_to_matrix(f.dim, &f.entries)?)
    }
}

impl From<AlgebraElement> for MatrixFile {
    fn from(a: AlgebraElement) -> Self {
        MatrixFile {
            dim: a.dim(),
            entries: matrix_to_entries(a.matrix()),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub density: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        entries_to_matrix(self.dim, &self.density)
    }

    pub fn from_matrix(m: &CMatrix) -> Self {
        StateFile {
            dim: m.nrows(),
            density: matrix_to_entries(m),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionFile {
    pub points: Vec<String>,
    pub values: Vec<[f64; 2]>,
}

/// Grid configuration `{"N": 512, "L": 10.0}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct GridConfig {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: f64,
}

/// Discrete Weyl system `{"n": 7, "conjugator_seed": 3}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct WeylConfig {
    pub n: usize,
    #[serde(default)]
    pub conjugator_seed: Option<u64>,
}

/// Operator-integral configuration `{"cutoff": 12.0, "depth": 6}`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct IntegralConfig {
    pub cutoff: f64,
    pub depth: u32,
}

pub fn parse_matrix(text: &str) -> Result<AlgebraElement> {
    let f: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    AlgebraElement::try_from(f)
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn read_matrix(path: &Path) -> Result<AlgebraElement> {
    parse_matrix(&read_to_string(path)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    parse_json(&read_to_string(path)?)
}

pub fn matrix_to_json(a: &AlgebraElement) -> String {
    serde_json::to_string(&MatrixFile::from(a.clone())).expect("matrix serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_square() {
        let e = parse_matrix(r#"{"dim": 2, "entries": [[[1,0],[0,0]],[[0,0]]]}"#).unwrap_err();
        assert!(matches!(e, Error::NonSquare { .. }));
        assert!(e.to_string().contains("non-square input"));
        let e = parse_matrix(r#"{"dim": 3, "entries": [[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap_err();
        assert!(matches!(e, Error::NonSquare { .. }));
    }

    #[test]
    fn rejects_overflowing_numbers() {
        assert!(parse_matrix(r#"{"dim": 1, "entries": [[[1e999,0]]]}"#).is_err());
    }

    #[test]
    fn roundtrip() {
        let a = AlgebraElement::from_rows(&[
            vec![C64::new(1.0, 2.0), C64::new(0.5, 0.0)],
            vec![C64::new(0.0, -1.0), C64::new(3.0, 0.25)],
        ])
        .unwrap();
        assert_eq!(parse_matrix(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn grid_config_keys() {
        let g: GridConfig = parse_json(r#"{"N": 512, "L": 10.0}"#).unwrap();
        assert_eq!(g, GridConfig { n: 512, l: 10.0 });
        let w: WeylConfig = parse_json(r#"{"n": 7}"#).unwrap();
        assert_eq!(w.conjugator_seed, None);
    }
}

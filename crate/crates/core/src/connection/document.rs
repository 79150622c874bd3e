//! The JSON connection document. Every number is an exact string: `"a/b"`
//! for rationals and `"a/b+c/d*i"` for Gaussian rationals.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::data::{
    ConnectionError, EigenDatum, IrregularData, ParabolicConnection, RegularSingularity,
};
use crate::arith::{format_rational, parse_rational, GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionDocument {
    pub rank: usize,
    pub regular_singularities: Vec<RegularDocument>,
    pub irregular: IrregularDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegularDocument {
    /// `[re, im]`.
    pub point: [String; 2],
    pub residue_matrix: Vec<Vec<String>>,
    pub eigen: Vec<EigenDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenDocument {
    pub value: String,
    pub weight: String,
    pub vector: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrregularDocument {
    #[serde(rename = "A_diagonal")]
    pub a_diagonal: Vec<String>,
    /// Sizes of the runs of equal entries of `A_diagonal`.
    pub blocks: Vec<usize>,
    #[serde(rename = "C_diagonal")]
    pub c_diagonal: Vec<String>,
    pub weights: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Connection(#[from] ConnectionError),
}

fn gaussian(path: String, s: &str) -> Result<GaussianRational, DocumentError> {
    s.parse().map_err(|_| DocumentError::Field {
        path,
        message: format!("{s:?} is not an exact Gaussian rational"),
    })
}

fn rational(path: String, s: &str) -> Result<BigRational, DocumentError> {
    parse_rational(s).map_err(|_| DocumentError::Field {
        path,
        message: format!("{s:?} is not an exact fraction"),
    })
}

impl ConnectionDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e
                .to_string()
                .trim_end_matches(&format!(" at line {} column {}", e.line(), e.column()))
                .to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise")
    }

    pub fn to_connection(&self) -> Result<ParabolicConnection, DocumentError> {
        let r = self.rank;
        let mut regular = Vec::with_capacity(self.regular_singularities.len());
        for (j, s) in self.regular_singularities.iter().enumerate() {
            let base = format!("regular_singularities[{j}]");
            let point = GaussianRational::new(
                rational(format!("{base}.point[0]"), &s.point[0])?,
                rational(format!("{base}.point[1]"), &s.point[1])?,
            );
            if s.residue_matrix.len() != r || s.residue_matrix.iter().any(|row| row.len() != r) {
                return Err(DocumentError::Field {
                    path: format!("{base}.residue_matrix"),
                    message: format!("expected a {r}x{r} array"),
                });
            }
            let mut entries = Vec::with_capacity(r * r);
            for (a, row) in s.residue_matrix.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    entries.push(gaussian(format!("{base}.residue_matrix[{a}][{b}]"), v)?);
                }
            }
            let residue = Matrix::new(r, r, entries).expect("checked shape");
            let mut eigen = Vec::with_capacity(s.eigen.len());
            for (k, e) in s.eigen.iter().enumerate() {
                let at = format!("{base}.eigen[{k}]");
                let vector = e
                    .vector
                    .iter()
                    .enumerate()
                    .map(|(i, v)| gaussian(format!("{at}.vector[{i}]"), v))
                    .collect::<Result<Vec<_>, _>>()?;
                eigen.push(EigenDatum {
                    value: gaussian(format!("{at}.value"), &e.value)?,
                    weight: rational(format!("{at}.weight"), &e.weight)?,
                    vector,
                });
            }
            regular.push(RegularSingularity {
                point,
                residue,
                eigen,
            });
        }
        let irr = &self.irregular;
        let list = |name: &str, v: &[String]| {
            v.iter()
                .enumerate()
                .map(|(k, s)| gaussian(format!("irregular.{name}[{k}]"), s))
                .collect::<Result<Vec<_>, _>>()
        };
        let irregular = IrregularData {
            leading: list("A_diagonal", &irr.a_diagonal)?,
            blocks: irr.blocks.clone(),
            residue: list("C_diagonal", &irr.c_diagonal)?,
            weights: irr
                .weights
                .iter()
                .enumerate()
                .map(|(k, s)| rational(format!("irregular.weights[{k}]"), s))
                .collect::<Result<Vec<_>, _>>()?,
        };
        Ok(ParabolicConnection::new(r, regular, irregular)?)
    }

    pub fn from_connection(conn: &ParabolicConnection) -> Self {
        let strs = |v: &[GaussianRational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        ConnectionDocument {
            rank: conn.rank(),
            regular_singularities: conn
                .regular()
                .iter()
                .map(|s| RegularDocument {
                    point: [format_rational(s.point.re()), format_rational(s.point.im())],
                    residue_matrix: (0..conn.rank()).map(|i| strs(&s.residue.row(i))).collect(),
                    eigen: s
                        .eigen
                        .iter()
                        .map(|e| EigenDocument {
                            value: e.value.to_string(),
                            weight: format_rational(&e.weight),
                            vector: strs(&e.vector),
                        })
                        .collect(),
                })
                .collect(),
            irregular: IrregularDocument {
                a_diagonal: strs(&conn.irregular().leading),
                blocks: conn.irregular().blocks.clone(),
                c_diagonal: strs(&conn.irregular().residue),
                weights: conn.irregular().weights.iter().map(format_rational).collect(),
            },
        }
    }
}

/// Parses and validates a connection document.
pub fn parse_connection(text: &str) -> Result<ParabolicConnection, DocumentError> {
    ConnectionDocument::from_json(text)?.to_connection()
}

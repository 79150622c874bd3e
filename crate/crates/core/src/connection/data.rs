use std::ops::Range;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{GaussianRational, Matrix};

/// One eigenvalue of a residue together with its parabolic weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Exponent {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub value: GaussianRational,
    #[serde(serialize_with = "crate::connection::ser_rational")]
    pub weight: BigRational,
}

impl Exponent {
    pub fn new(value: GaussianRational, weight: BigRational) -> Self {
        Self { value, weight }
    }
}

/// An eigenvector of a finite residue with its eigenvalue and weight.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDatum {
    pub value: GaussianRational,
    pub weight: BigRational,
    pub vector: Vec<GaussianRational>,
}

/// A logarithmic pole `A^j/(x - p_j)` with a diagonalising eigenbasis.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularSingularity {
    pub point: GaussianRational,
    pub residue: Matrix<GaussianRational>,
    pub eigen: Vec<EigenDatum>,
}

impl RegularSingularity {
    /// Multiplicity `r_j` of the eigenvalue zero.
    pub fn zero_multiplicity(&self) -> usize {
        self.eigen.iter().filter(|e| e.value.is_zero()).count()
    }

    /// `rank A^j = r - r_j`.
    pub fn residue_rank(&self) -> usize {
        self.eigen.len() - self.zero_multiplicity()
    }

    /// Eigen data with nonzero eigenvalue, in the stored order.
    pub fn nonzero_eigen(&self) -> impl Iterator<Item = &EigenDatum> {
        self.eigen.iter().filter(|e| !e.value.is_zero())
    }

    pub fn exponents(&self) -> Vec<Exponent> {
        self.eigen
            .iter()
            .map(|e| Exponent::new(e.value.clone(), e.weight.clone()))
            .collect()
    }
}

/// The rank-one irregular part `A + C/x` at infinity, with `A` and `C`
/// diagonal. `blocks` lists the sizes of the runs of equal entries of `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct IrregularData {
    pub leading: Vec<GaussianRational>,
    pub blocks: Vec<usize>,
    pub residue: Vec<GaussianRational>,
    pub weights: Vec<BigRational>,
}

impl IrregularData {
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    /// The distinct eigenvalues `ξ_l` of `A`, one per block.
    pub fn block_values(&self) -> Vec<GaussianRational> {
        self.block_ranges()
            .into_iter()
            .map(|r| self.leading[r.start].clone())
            .collect()
    }

    pub fn block_exponents(&self, block: usize) -> Vec<Exponent> {
        self.block_ranges()[block]
            .clone()
            .map(|k| Exponent::new(self.residue[k].clone(), self.weights[k].clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("{location}: {message}")]
    Shape { location: String, message: String },
    #[error("{location}: vector {index} is not an eigenvector for {value}")]
    NotEigenvector {
        location: String,
        index: usize,
        value: String,
    },
    #[error("{location}: eigenvectors do not form a basis")]
    NotABasis { location: String },
    #[error("{location}: weight {weight} outside [0, 1)")]
    WeightOutOfRange { location: String, weight: String },
    #[error("singular points {first} and {second} coincide")]
    RepeatedPoint { first: usize, second: usize },
    #[error("infinity: {0}")]
    Blocks(String),
    #[error("infinity: block-diagonal part of the residue sum is {found}, expected -C = {expected}")]
    Compatibility { found: String, expected: String },
    #[error("residue traces sum to {0}, not 0")]
    TraceSum(String),
}

/// `d + (A + Σ_j A^j/(x - p_j)) dx` on the trivial bundle of rank `r`,
/// with parabolic weights at every singularity.
///
/// The residue at infinity in the coordinate `1/x` is `-Σ_j A^j`; its
/// block-diagonal part with respect to the eigenblocks of `A` must be the
/// diagonal matrix `C` of exponents `μ^∞_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicConnection {
    rank: usize,
    regular: Vec<RegularSingularity>,
    irregular: IrregularData,
    data: SingularityData,
}

fn check_weight(location: &str, w: &BigRational) -> Result<(), ConnectionError> {
    if w.is_negative() || *w >= BigRational::one() {
        return Err(ConnectionError::WeightOutOfRange {
            location: location.to_string(),
            weight: crate::arith::format_rational(w),
        });
    }
    Ok(())
}

impl ParabolicConnection {
    pub fn new(
        rank: usize,
        regular: Vec<RegularSingularity>,
        irregular: IrregularData,
    ) -> Result<Self, ConnectionError> {
        if rank == 0 {
            return Err(ConnectionError::ZeroRank);
        }
        let shape = |location: String, message: String| ConnectionError::Shape { location, message };

        for (j, s) in regular.iter().enumerate() {
            let loc = format!("regular singularity {j}");
            if s.residue.rows() != rank || s.residue.cols() != rank {
                return Err(shape(loc, format!("residue matrix must be {rank}x{rank}")));
            }
            if s.eigen.len() != rank {
                return Err(shape(loc, format!("expected {rank} eigen entries, found {}", s.eigen.len())));
            }
            for (k, e) in s.eigen.iter().enumerate() {
                if e.vector.len() != rank {
                    return Err(shape(loc, format!("eigenvector {k} has length {}", e.vector.len())));
                }
                check_weight(&loc, &e.weight)?;
                let av = s.residue.mul_vec(&e.vector).expect("checked shape");
                let lv: Vec<GaussianRational> = e.vector.iter().map(|c| c * &e.value).collect();
                if e.vector.iter().all(GaussianRational::is_zero) || av != lv {
                    return Err(ConnectionError::NotEigenvector {
                        location: loc,
                        index: k,
                        value: e.value.to_string(),
                    });
                }
            }
            let basis = Matrix::from_columns(
                &s.eigen.iter().map(|e| e.vector.clone()).collect::<Vec<_>>(),
                rank,
            )
            .expect("checked shape");
            if basis.rank() != rank {
                return Err(ConnectionError::NotABasis { location: loc });
            }
        }
        for a in 0..regular.len() {
            for b in a + 1..regular.len() {
                if regular[a].point == regular[b].point {
                    return Err(ConnectionError::RepeatedPoint { first: a, second: b });
                }
            }
        }

        let irr = &irregular;
        if irr.leading.len() != rank || irr.residue.len() != rank || irr.weights.len() != rank {
            return Err(ConnectionError::Blocks(format!(
                "A_diagonal, C_diagonal and weights must each have {rank} entries"
            )));
        }
        if irr.blocks.contains(&0) || irr.blocks.iter().sum::<usize>() != rank {
            return Err(ConnectionError::Blocks(format!(
                "block sizes {:?} must be positive and sum to {rank}",
                irr.blocks
            )));
        }
        for (l, range) in irr.block_ranges().into_iter().enumerate() {
            if range.clone().any(|k| irr.leading[k] != irr.leading[range.start]) {
                return Err(ConnectionError::Blocks(format!("A is not constant on block {l}")));
            }
        }
        let values = irr.block_values();
        for a in 0..values.len() {
            for b in a + 1..values.len() {
                if values[a] == values[b] {
                    return Err(ConnectionError::Blocks(format!(
                        "blocks {a} and {b} share the eigenvalue {}",
                        values[a]
                    )));
                }
            }
        }
        for w in &irr.weights {
            check_weight("infinity", w)?;
        }

        let mut sum = Matrix::<GaussianRational>::zeros(rank, rank);
        for s in &regular {
            sum = sum.checked_add(&s.residue).expect("checked shape");
        }
        let ranges = irr.block_ranges();
        let mut found = Vec::new();
        let mut diagonal = true;
        for range in &ranges {
            for i in range.clone() {
                for j in range.clone() {
                    if i != j && !sum.get(i, j).is_zero() {
                        diagonal = false;
                    }
                }
                found.push(-sum.get(i, i));
            }
        }
        if !diagonal || found != irr.residue {
            let show = |v: &[GaussianRational]| {
                v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            };
            let found = if diagonal {
                format!("-diag({})", show(&found))
            } else {
                "not diagonal".to_string()
            };
            return Err(ConnectionError::Compatibility {
                found,
                expected: format!("diag({})", show(&irr.residue)),
            });
        }
        let trace: GaussianRational = regular
            .iter()
            .map(|s| s.residue.trace())
            .chain(irr.residue.iter().cloned())
            .sum();
        if !trace.is_zero() {
            return Err(ConnectionError::TraceSum(trace.to_string()));
        }

        let data = SingularityData {
            rank,
            regular: regular
                .iter()
                .map(|s| LocalExponents {
                    point: s.point.clone(),
                    exponents: s.exponents(),
                })
                .collect(),
            irregular: (0..irr.blocks.len())
                .map(|l| IrregularBlock {
                    leading: values[l].clone(),
                    exponents: irr.block_exponents(l),
                })
                .collect(),
        };
        Ok(Self {
            rank,
            regular,
            irregular,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn regular(&self) -> &[RegularSingularity] {
        &self.regular
    }

    pub fn irregular(&self) -> &IrregularData {
        &self.irregular
    }

    /// Eigenvalues and weights at every singularity.
    pub fn data(&self) -> &SingularityData {
        &self.data
    }

    /// `Σ_j (r - r_j)`, the rank of the transform.
    pub fn transform_rank(&self) -> usize {
        self.regular.iter().map(RegularSingularity::residue_rank).sum()
    }

    /// The diagonal matrix `A`.
    pub fn leading_matrix(&self) -> Matrix<GaussianRational> {
        Matrix::diagonal(&self.irregular.leading)
    }
}

impl AsRef<SingularityData> for ParabolicConnection {
    fn as_ref(&self) -> &SingularityData {
        &self.data
    }
}

/// Eigenvalues and weights at a finite point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalExponents {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub point: GaussianRational,
    pub exponents: Vec<Exponent>,
}

/// One eigenblock of the leading term at infinity with its residue
/// exponents `μ^∞_k` and weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrregularBlock {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub leading: GaussianRational,
    pub exponents: Vec<Exponent>,
}

/// The local invariants of a connection: everything the validators and the
/// degree formulas look at, without residue matrices or eigenvectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityData {
    pub rank: usize,
    pub regular: Vec<LocalExponents>,
    pub irregular: Vec<IrregularBlock>,
}

impl AsRef<SingularityData> for SingularityData {
    fn as_ref(&self) -> &SingularityData {
        self
    }
}

impl SingularityData {
    pub fn empty() -> Self {
        Self {
            rank: 0,
            regular: Vec::new(),
            irregular: Vec::new(),
        }
    }

    /// All weights, at finite points and at infinity.
    pub fn weights(&self) -> impl Iterator<Item = &BigRational> {
        self.regular
            .iter()
            .flat_map(|s| s.exponents.iter())
            .chain(self.irregular.iter().flat_map(|b| b.exponents.iter()))
            .map(|e| &e.weight)
    }

    /// All eigenvalues, including zeros.
    pub fn eigenvalues(&self) -> impl Iterator<Item = &GaussianRational> {
        self.regular
            .iter()
            .flat_map(|s| s.exponents.iter())
            .chain(self.irregular.iter().flat_map(|b| b.exponents.iter()))
            .map(|e| &e.value)
    }
}


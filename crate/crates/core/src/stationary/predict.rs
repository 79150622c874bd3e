//! Singularity data of the transform read off from the input alone.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::arith::GaussianRational;
use crate::connection::{
    dmodule_degrees, validate_admissible, validate_resonance_free, Exponent, IrregularBlock,
    LocalExponents, ParabolicConnection, SingularityData, ValidationReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PredictError {
    #[error("connection rejected: {} violation(s)", .0.violations.len())]
    Rejected(ValidationReport),
}

/// Formal data at infinity contributed by one finite point `p_j`:
/// `Â` has eigenvalue `p_j` with multiplicity `r - r_j`, and `Ĉ` restricted
/// to that block has the nonzero exponents of `A^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedBlock {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub point: GaussianRational,
    pub multiplicity: usize,
    pub exponents: Vec<Exponent>,
}

/// `λ^j_k = (μ^j_k - β^j_k)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaDatum {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub point: GaussianRational,
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub mu: GaussianRational,
    #[serde(serialize_with = "crate::connection::ser_rational")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub lambda: GaussianRational,
}

/// Two exponents at infinity in different blocks that agree modulo `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub blocks: (usize, usize),
    #[serde(serialize_with = "ser_pair")]
    pub values: (GaussianRational, GaussianRational),
}

fn ser_pair<S: serde::Serializer>(
    v: &(GaussianRational, GaussianRational),
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&v.0.to_string())?;
    t.serialize_element(&v.1.to_string())?;
    t.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedData {
    pub rank: usize,
    /// The poles `ξ_l` of the transform with the exponents of `Res_{ξ_l}`.
    pub regular: Vec<LocalExponents>,
    pub infinity: Vec<PredictedBlock>,
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub pdeg: GaussianRational,
    pub lambda: Vec<LambdaDatum>,
    pub collisions: Vec<Collision>,
}

impl PredictedData {
    pub fn empty() -> Self {
        Self {
            rank: 0,
            regular: Vec::new(),
            infinity: Vec::new(),
            pdeg: GaussianRational::zero(),
            lambda: Vec::new(),
            collisions: Vec::new(),
        }
    }

    /// The prediction as the local data of a connection on the dual line,
    /// with leading term `-p_j` at infinity as in the input normal form.
    pub fn dual_data(&self) -> SingularityData {
        SingularityData {
            rank: self.rank,
            regular: self.regular.clone(),
            irregular: self
                .infinity
                .iter()
                .map(|b| IrregularBlock {
                    leading: -&b.point,
                    exponents: b.exponents.clone(),
                })
                .collect(),
        }
    }

    /// `Â` eigenvalues with multiplicity.
    pub fn leading_multiset(&self) -> Vec<GaussianRational> {
        let mut out: Vec<GaussianRational> = self
            .infinity
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.point.clone(), b.multiplicity))
            .collect();
        out.sort();
        out
    }

    /// `Ĉ` eigenvalues with multiplicity.
    pub fn residue_multiset(&self) -> Vec<GaussianRational> {
        let mut out: Vec<GaussianRational> = self
            .infinity
            .iter()
            .flat_map(|b| b.exponents.iter().map(|e| e.value.clone()))
            .collect();
        out.sort();
        out
    }
}

/// Stationary phase: block `l` of `(μ^∞, β^∞)` moves to `ξ_l`, padded with
/// `N - b_l` zeros of weight 0; the nonzero `(μ^j_k, β^j_k)` move to
/// infinity with leading value `p_j`.
pub fn predict(conn: &ParabolicConnection) -> Result<PredictedData, PredictError> {
    let n = conn.transform_rank();
    if n == 0 {
        return Ok(PredictedData::empty());
    }
    let report = validate_resonance_free(conn.data()).merge(validate_admissible(conn.data()));
    if !report.passed() {
        return Err(PredictError::Rejected(report));
    }

    let irr = conn.irregular();
    let values = irr.block_values();
    let block_exps: Vec<Vec<Exponent>> = (0..values.len()).map(|b| irr.block_exponents(b)).collect();
    let regular = values
        .iter()
        .zip(&block_exps)
        .map(|(xi, exps)| {
            let mut exponents = exps.clone();
            exponents.extend(
                std::iter::repeat_n(Exponent::new(GaussianRational::zero(), BigRational::zero()), n - exps.len()),
            );
            LocalExponents {
                point: xi.clone(),
                exponents,
            }
        })
        .collect();

    let infinity = conn
        .regular()
        .iter()
        .filter(|s| s.residue_rank() > 0)
        .map(|s| PredictedBlock {
            point: s.point.clone(),
            multiplicity: s.residue_rank(),
            exponents: s
                .nonzero_eigen()
                .map(|e| Exponent::new(e.value.clone(), e.weight.clone()))
                .collect(),
        })
        .collect();

    let two = GaussianRational::from_integer(2);
    let lambda = conn
        .regular()
        .iter()
        .flat_map(|s| {
            s.eigen.iter().map(|e| LambdaDatum {
                point: s.point.clone(),
                mu: e.value.clone(),
                beta: e.weight.clone(),
                lambda: &(&e.value - &GaussianRational::from_real(e.weight.clone())) / &two,
            })
        })
        .collect();

    let mut collisions = Vec::new();
    for (l, a) in block_exps.iter().enumerate() {
        for (m, b) in block_exps.iter().enumerate().skip(l + 1) {
            for ea in a {
                for eb in b {
                    if (&ea.value - &eb.value).is_integer() {
                        collisions.push(Collision {
                            blocks: (l, m),
                            values: (ea.value.clone(), eb.value.clone()),
                        });
                    }
                }
            }
        }
    }

    let mut out = PredictedData {
        rank: n,
        regular,
        infinity,
        pdeg: GaussianRational::zero(),
        lambda,
        collisions,
    };
    out.pdeg = dmodule_degrees(&out.dual_data()).pdeg;
    Ok(out)
}

//! Reading a transformed connection back as a connection datum on the dual
//! line, and the inverse transform.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::model::{build_model, ModelError};
use super::reduce::ReduceError;
use super::transformed::{transform_connection, DualPole, TransformedConnection};
use crate::arith::{GaussianRational, Matrix};
use crate::connection::{
    ConnectionError, EigenDatum, IrregularData, ParabolicConnection, RegularSingularity,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarvestError {
    #[error("the transform has rank 0")]
    Empty,
    #[error("residue at {point} has characteristic polynomial {char_poly}, which does not split over Q(i)")]
    Unsplit { point: String, char_poly: String },
    #[error("residue at {point} is not semi-simple")]
    NotSemisimple { point: String },
    #[error("eigenvalue {value} at {point} has no matching source exponent")]
    UnmatchedEigenvalue { point: String, value: String },
    #[error("leading term at infinity is not diag(p_j)")]
    LeadingNotDiagonal,
    #[error(transparent)]
    Invalid(#[from] ConnectionError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InverseError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// The connection `d - X(ξ) dξ` written in input normal form: finite poles
/// at the `ξ_l` with residue `Res_{ξ_l}(-X)`, leading term `-Â` at infinity.
///
/// Weights: 0 on the kernel at each `ξ_l`; a nonzero eigenvalue takes the
/// weights of the equal source exponents `μ^∞_k` of its block, in ascending
/// order; at infinity each basis class keeps the weight `β^j_k` of its label.
/// Poles whose residue vanishes are regular points and are dropped.
pub fn harvest(t: &TransformedConnection) -> Result<ParabolicConnection, HarvestError> {
    let n = t.rank();
    if n == 0 {
        return Err(HarvestError::Empty);
    }
    let mut regular = Vec::new();
    for pole in t.poles() {
        if let Some(s) = harvest_pole(t, pole)? {
            regular.push(s);
        }
    }

    let formal = t.formal_data_at_infinity();
    if !formal.leading.is_diagonal() || formal.leading.diagonal_entries() != t.label_points() {
        return Err(HarvestError::LeadingNotDiagonal);
    }
    let leading: Vec<GaussianRational> = t.label_points().iter().map(|p| -p).collect();
    let blocks: Vec<usize> = formal.blocks.iter().map(|(_, r)| r.len()).collect();

    let mut sum = Matrix::<GaussianRational>::zeros(n, n);
    for s in &regular {
        sum = sum.checked_add(&s.residue).expect("equal shapes");
    }
    let residue = sum.diagonal_entries().iter().map(|c| -c).collect();
    let weights = t.label_exponents().iter().map(|e| e.weight.clone()).collect();
    Ok(ParabolicConnection::new(
        n,
        regular,
        IrregularData {
            leading,
            blocks,
            residue,
            weights,
        },
    )?)
}

fn harvest_pole(
    t: &TransformedConnection,
    pole: &DualPole,
) -> Result<Option<RegularSingularity>, HarvestError> {
    let n = t.rank();
    let data = t.residue_data_at(&pole.point);
    if data.residue.is_zero() {
        return Ok(None);
    }
    let point = pole.point.to_string();
    let Some(mut values) = data.eigenvalues else {
        return Err(HarvestError::Unsplit {
            point,
            char_poly: data.char_poly.display_with("λ"),
        });
    };
    values.dedup();
    let mut eigen = Vec::with_capacity(n);
    for value in values {
        let shifted = data
            .residue
            .checked_sub(&Matrix::identity(n).scale(&value))
            .expect("square");
        let kernel = shifted.kernel_basis();
        let weights: Vec<BigRational> = if value.is_zero() {
            vec![BigRational::zero(); kernel.len()]
        } else {
            let mut w: Vec<BigRational> = pole
                .source_exponents
                .iter()
                .filter(|e| e.value == value)
                .map(|e| e.weight.clone())
                .collect();
            w.sort();
            if w.len() != kernel.len() {
                return Err(HarvestError::UnmatchedEigenvalue {
                    point,
                    value: value.to_string(),
                });
            }
            w
        };
        for (vector, weight) in kernel.into_iter().zip(weights) {
            eigen.push(EigenDatum {
                value: value.clone(),
                weight,
                vector,
            });
        }
    }
    if eigen.len() != n {
        return Err(HarvestError::NotSemisimple { point });
    }
    Ok(Some(RegularSingularity {
        point: pole.point.clone(),
        residue: data.residue,
        eigen,
    }))
}

/// Inverse transform of a connection on the dual line: the direct transform
/// followed by `x ↦ -x`, i.e. `X_inv(x) = -X'(-x)`. The result lives on the
/// original line with connection form `-X_inv(x) dx`.
pub fn inverse_transform(dual: &ParabolicConnection) -> Result<TransformedConnection, InverseError> {
    let model = build_model(dual)?;
    let t = transform_connection(&model)?;
    let x_action = t.x_action().map(|f| -f.negate_variable());
    let poles = t
        .poles()
        .iter()
        .map(|p| DualPole {
            point: -&p.point,
            source_exponents: p.source_exponents.clone(),
        })
        .collect();
    let label_points = t.label_points().iter().map(|p| -p).collect();
    Ok(TransformedConnection::from_parts(
        t.labels().to_vec(),
        x_action,
        poles,
        t.label_exponents().to_vec(),
        label_points,
        "x",
    ))
}

//! Parabolic degree, D-module degree and slope.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::data::{ParabolicConnection, SingularityData};
use crate::arith::{GaussianRational, Matrix};

/// Sum of all weights, at finite points and at infinity.
pub fn parabolic_degree(data: &SingularityData) -> BigRational {
    data.weights().fold(BigRational::zero(), |a, w| a + w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degrees {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub deg: GaussianRational,
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub pdeg: GaussianRational,
    /// `None` for rank 0.
    #[serde(serialize_with = "crate::connection::ser_opt_gaussian")]
    pub slope: Option<GaussianRational>,
}

/// `deg = -Σ α` over every eigenvalue of every residue of the given
/// lattice (zeros included), `pdeg = deg + Σ β`, `slope = pdeg / rank`.
pub fn dmodule_degrees(data: &SingularityData) -> Degrees {
    let deg = -data.eigenvalues().cloned().sum::<GaussianRational>();
    let pdeg = &deg + &GaussianRational::from_real(parabolic_degree(data));
    let slope = (data.rank > 0)
        .then(|| &pdeg / &GaussianRational::from_integer(data.rank as i64));
    Degrees { deg, pdeg, slope }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("{alpha} - {mu} is not an integer; no transport exists")]
    NotIntegralShift { alpha: String, mu: String },
    #[error("{alpha} - {mu} = {actual}, not {expected}")]
    ShiftMismatch {
        alpha: String,
        mu: String,
        actual: String,
        expected: i64,
    },
}

/// Transport of the filtration on `ψ^μ` to `ψ^α` along `(x - p)^N`:
/// returns `(α, β + N)`.
pub fn extend_filtration(
    alpha: &GaussianRational,
    mu: &GaussianRational,
    beta: &BigRational,
    n: i64,
) -> Result<(GaussianRational, BigRational), FiltrationError> {
    let d = alpha - mu;
    if !d.is_integer() {
        return Err(FiltrationError::NotIntegralShift {
            alpha: alpha.to_string(),
            mu: mu.to_string(),
        });
    }
    if d.re().to_integer().to_i64() != Some(n) {
        return Err(FiltrationError::ShiftMismatch {
            alpha: alpha.to_string(),
            mu: mu.to_string(),
            actual: d.to_string(),
            expected: n,
        });
    }
    Ok((alpha.clone(), beta + BigRational::from_integer(BigInt::from(n))))
}

/// A subspace `W` of the fibre of the trivial bundle, given by spanning
/// vectors, viewed as a candidate sub-connection.
#[derive(Debug, Clone, PartialEq)]
pub struct SubDatum {
    pub spanning: Vec<Vec<GaussianRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubDatumError {
    #[error("the subspace is zero")]
    ZeroSubspace,
    #[error("spanning vector {index} has length {found}, expected {expected}")]
    RankMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("the subspace is not spanned by eigenvectors at {location}")]
    NotEigenSpanned { location: String },
}

fn span_dim(vectors: &[Vec<GaussianRational>], r: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(vectors, r).expect("uniform length").rank()
}

/// One local eigen-decomposition. Entries sharing a `group` span one
/// eigenspace; at infinity the group is the pair `(ξ_l, μ^∞_k)`.
struct LocalFrame {
    location: String,
    entries: Vec<FrameEntry>,
}

struct FrameEntry {
    group: (GaussianRational, GaussianRational),
    value: GaussianRational,
    weight: BigRational,
    vector: Vec<GaussianRational>,
}

/// Contribution of one singularity to `(Σ α·dim, Σ β·dim)` on `W`.
fn local_contribution(
    frame: &LocalFrame,
    w: &[Vec<GaussianRational>],
    r: usize,
) -> Result<(GaussianRational, BigRational), SubDatumError> {
    let dim_w = span_dim(w, r);
    let intersect = |u: &[Vec<GaussianRational>]| {
        let mut both = w.to_vec();
        both.extend_from_slice(u);
        dim_w + span_dim(u, r) - span_dim(&both, r)
    };
    let mut groups: Vec<&(GaussianRational, GaussianRational)> =
        frame.entries.iter().map(|e| &e.group).collect();
    groups.sort();
    groups.dedup();

    let mut alpha_sum = GaussianRational::zero();
    let mut beta_sum = BigRational::zero();
    let mut covered = 0;
    for group in groups {
        let members: Vec<&FrameEntry> = frame.entries.iter().filter(|e| &e.group == group).collect();
        let eigenspace: Vec<_> = members.iter().map(|e| e.vector.clone()).collect();
        let d = intersect(&eigenspace);
        covered += d;
        alpha_sum += &(&members[0].value * &GaussianRational::from_integer(d as i64));
        // Jumps of dim(W ∩ F^{≥β}) give the induced weights on W.
        let mut weights: Vec<&BigRational> = members.iter().map(|e| &e.weight).collect();
        weights.sort();
        weights.dedup();
        let mut previous = 0;
        for beta in weights.into_iter().rev() {
            let step: Vec<_> = members
                .iter()
                .filter(|e| &e.weight >= beta)
                .map(|e| e.vector.clone())
                .collect();
            let d_beta = intersect(&step);
            beta_sum += beta * BigRational::from_integer(BigInt::from(d_beta - previous));
            previous = d_beta;
        }
    }
    if covered != dim_w {
        return Err(SubDatumError::NotEigenSpanned {
            location: frame.location.clone(),
        });
    }
    Ok((alpha_sum, beta_sum))
}

/// Parabolic slope of the sub-datum `W`, with the induced filtrations
/// `ψ^{α,β}W = ψ^α W ∩ ψ^{α,β}M`. `W` must be a sum of its intersections
/// with the eigenspaces at every singularity.
pub fn slope_of_subdata(
    conn: &ParabolicConnection,
    sub: &SubDatum,
) -> Result<GaussianRational, SubDatumError> {
    let r = conn.rank();
    for (index, v) in sub.spanning.iter().enumerate() {
        if v.len() != r {
            return Err(SubDatumError::RankMismatch {
                index,
                found: v.len(),
                expected: r,
            });
        }
    }
    let dim_w = span_dim(&sub.spanning, r);
    if dim_w == 0 {
        return Err(SubDatumError::ZeroSubspace);
    }
    let mut frames: Vec<LocalFrame> = conn
        .regular()
        .iter()
        .map(|s| LocalFrame {
            location: format!("p = {}", s.point),
            entries: s
                .eigen
                .iter()
                .map(|e| FrameEntry {
                    group: (GaussianRational::zero(), e.value.clone()),
                    value: e.value.clone(),
                    weight: e.weight.clone(),
                    vector: e.vector.clone(),
                })
                .collect(),
        })
        .collect();
    let irr = conn.irregular();
    frames.push(LocalFrame {
        location: "infinity".to_string(),
        entries: (0..r)
            .map(|k| {
                let mut e = vec![GaussianRational::zero(); r];
                e[k] = GaussianRational::one();
                FrameEntry {
                    group: (irr.leading[k].clone(), irr.residue[k].clone()),
                    value: irr.residue[k].clone(),
                    weight: irr.weights[k].clone(),
                    vector: e,
                }
            })
            .collect(),
    });
    let mut alpha = GaussianRational::zero();
    let mut beta = BigRational::zero();
    for frame in &frames {
        let (a, b) = local_contribution(frame, &sub.spanning, r)?;
        alpha += &a;
        beta += b;
    }
    let pdeg = &(-alpha) + &GaussianRational::from_real(beta);
    Ok(&pdeg / &GaussianRational::from_integer(dim_w as i64))
}

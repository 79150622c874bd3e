//! The transformed connection: the matrix `X(ξ)` of multiplication by `x`
//! on the cokernel, and the local data of `-X(ξ) dξ`.

use serde::Serialize;

use super::model::{BasisLabel, GlobalSectionModel};
use super::reduce::{reduce_section, ReduceError};
use super::section::MeromorphicSection;
use crate::arith::{roots, GaussianRational, Matrix, Point, Polynomial, RationalFunction};
use crate::connection::Exponent;

/// A pole `ξ_l` of `X`, with the exponents `(μ^∞_k, β^∞_k)` of the block
/// of the source connection it comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPole {
    #[serde(serialize_with = "crate::connection::ser_gaussian")]
    pub point: GaussianRational,
    pub source_exponents: Vec<Exponent>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformedConnection {
    labels: Vec<BasisLabel>,
    x_action: Matrix<RationalFunction>,
    poles: Vec<DualPole>,
    /// `(μ^j_k, β^j_k)` for each basis label.
    label_exponents: Vec<Exponent>,
    /// `p_j` for each basis label.
    label_points: Vec<GaussianRational>,
    variable: String,
}

/// `Res_{ξ_l}(-X)` and its spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueData {
    pub point: GaussianRational,
    pub residue: Matrix<GaussianRational>,
    pub char_poly: Polynomial,
    /// Eigenvalues with repetition when the characteristic polynomial splits
    /// over `Q(i)`.
    pub eigenvalues: Option<Vec<GaussianRational>>,
}

/// The ζ⁰ and ζ¹ coefficients of `X(1/ζ)`, so that
/// `-X dξ = -Â dξ - Ĉ dξ/ξ + O(ζ) dξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalData {
    pub leading: Matrix<GaussianRational>,
    pub residue: Matrix<GaussianRational>,
    /// Index ranges of the eigenblocks of `Â`, with their eigenvalue.
    pub blocks: Vec<(GaussianRational, std::ops::Range<usize>)>,
}

impl FormalData {
    /// Block-diagonal part of `Ĉ` with respect to the blocks of `Â`.
    pub fn residue_block_diagonal(&self) -> Matrix<GaussianRational> {
        let n = self.residue.rows();
        let mut out = Matrix::zeros(n, n);
        for (_, range) in &self.blocks {
            for i in range.clone() {
                for j in range.clone() {
                    out.set(i, j, self.residue.get(i, j).clone());
                }
            }
        }
        out
    }
}

/// `X(ξ)`: column `(j,k)` is the class of `x e_{j,k}/(x - p_j) dx`, which is
/// `p_j [e_{j,k}/(x - p_j) dx]` plus the reduction of `e_{j,k} dx`.
pub fn transform_connection(model: &GlobalSectionModel) -> Result<TransformedConnection, ReduceError> {
    let r = model.rank();
    let n = model.connection().regular().len();
    let labels = model.labels().to_vec();
    let xi = RationalFunction::variable();
    let mut cols = Vec::with_capacity(labels.len());
    for (idx, l) in labels.iter().enumerate() {
        let mut s = MeromorphicSection::<RationalFunction>::zero(r, n);
        let e: Vec<RationalFunction> = model
            .eigenvector(*l)
            .iter()
            .map(|c| RationalFunction::constant(c.clone()))
            .collect();
        s.add_poly(0, &e);
        let mut col = reduce_section(model, &s, &xi)?.coordinates;
        col[idx] = &col[idx] + &RationalFunction::constant(model.point(l.point).clone());
        cols.push(col);
    }
    let x_action = Matrix::from_columns(&cols, labels.len()).expect("square");

    let conn = model.connection();
    let irr = conn.irregular();
    let poles = irr
        .block_values()
        .into_iter()
        .enumerate()
        .map(|(b, point)| DualPole {
            point,
            source_exponents: irr.block_exponents(b),
        })
        .collect();
    let label_exponents = labels
        .iter()
        .map(|l| {
            let e = &conn.regular()[l.point].eigen[l.eigen];
            Exponent::new(e.value.clone(), e.weight.clone())
        })
        .collect();
    let label_points = labels.iter().map(|l| model.point(l.point).clone()).collect();
    Ok(TransformedConnection {
        labels,
        x_action,
        poles,
        label_exponents,
        label_points,
        variable: "xi".to_string(),
    })
}

impl TransformedConnection {
    pub(crate) fn from_parts(
        labels: Vec<BasisLabel>,
        x_action: Matrix<RationalFunction>,
        poles: Vec<DualPole>,
        label_exponents: Vec<Exponent>,
        label_points: Vec<GaussianRational>,
        variable: &str,
    ) -> Self {
        Self {
            labels,
            x_action,
            poles,
            label_exponents,
            label_points,
            variable: variable.to_string(),
        }
    }

    /// `Σ_j (r - r_j)`.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn x_action(&self) -> &Matrix<RationalFunction> {
        &self.x_action
    }

    /// The matrix `-X(ξ)` of the connection form `-X(ξ) dξ`.
    pub fn connection_matrix(&self) -> Matrix<RationalFunction> {
        self.x_action.map(|f| -f)
    }

    pub fn poles(&self) -> &[DualPole] {
        &self.poles
    }

    pub fn label_exponents(&self) -> &[Exponent] {
        &self.label_exponents
    }

    pub fn label_points(&self) -> &[GaussianRational] {
        &self.label_points
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    /// `Res_{ξ_l}(-X)`; the zero matrix at a regular point.
    pub fn residue_data_at(&self, point: &GaussianRational) -> ResidueData {
        let at = Point::Finite(point.clone());
        let residue = self
            .x_action
            .map(|f| -f.laurent_coefficients(&at, -1..=-1).remove(0));
        let char_poly = residue.char_poly().expect("square");
        let split = roots(&char_poly);
        let eigenvalues = split.splits().then(|| split.multiset());
        ResidueData {
            point: point.clone(),
            residue,
            char_poly,
            eigenvalues,
        }
    }

    pub fn formal_data_at_infinity(&self) -> FormalData {
        let coeff = |k: i64| {
            self.x_action
                .map(|f| f.laurent_coefficients(&Point::Infinity, k..=k).remove(0))
        };
        let leading = coeff(0);
        let residue = coeff(1);
        let mut blocks: Vec<(GaussianRational, std::ops::Range<usize>)> = Vec::new();
        for (k, p) in self.label_points.iter().enumerate() {
            match blocks.last_mut() {
                Some((q, range)) if q == p => range.end = k + 1,
                _ => blocks.push((p.clone(), k..k + 1)),
            }
        }
        FormalData {
            leading,
            residue,
            blocks,
        }
    }

    /// Entries whose poles are not simple poles at the `ξ_l`, as
    /// `(row, col)`.
    pub fn pole_confinement_violations(&self) -> Vec<(usize, usize)> {
        let allowed = self
            .poles
            .iter()
            .fold(Polynomial::one(), |acc, p| &acc * &Polynomial::linear_root(&p.point));
        let n = self.rank();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let den = self.x_action.get(i, j).denominator();
                if allowed.div_exact(den).is_none() {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// `X` with `ξ = ξ₀`; `None` at a pole.
    pub fn specialize(&self, xi0: &GaussianRational) -> Option<Matrix<GaussianRational>> {
        let n = self.rank();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.x_action.get(i, j).eval(xi0)?);
            }
        }
        Some(out)
    }

    /// Entries of `X` as exact strings in partial-fraction form, row major.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| self.x_action.get(i, j).display_with(&self.variable))
                    .collect()
            })
            .collect()
    }
}

//! Global sections of the sheaf `F`: one-forms with at most a double pole at
//! infinity and simple poles at the `p_j` whose residues lie in `im A^j`.

use serde::Serialize;
use thiserror::Error;

use super::section::MeromorphicSection;
use crate::arith::{Field, GaussianRational, Matrix};
use crate::connection::{
    validate_admissible, validate_resonance_free_in, ParabolicConnection, Scope, ValidationReport,
};

/// Index of the basis class `[e_{j,k}/(x - p_j) dx]`: `point` is `j`,
/// `eigen` is the position of `e_{j,k}` in the stored eigenbasis at `p_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisLabel {
    pub point: usize,
    pub eigen: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("connection rejected: {} violation(s)", .0.violations.len())]
    Rejected(ValidationReport),
}

/// Finite model of `H⁰(F)`: basis `e_a dx` (`a < r`) followed by
/// `e_{j,k}/(x - p_j) dx` for the eigenvectors of `A^j` with nonzero
/// eigenvalue, ordered by `j` then `k`.
#[derive(Debug, Clone)]
pub struct GlobalSectionModel {
    conn: ParabolicConnection,
    labels: Vec<BasisLabel>,
    /// Inverse of the eigenvector matrix at each point.
    eigen_inverse: Vec<Matrix<GaussianRational>>,
}

/// Builds the model. Requires the finite-point resonance conditions and
/// admissibility; the conditions at infinity do not enter the reduction.
pub fn build_model(conn: &ParabolicConnection) -> Result<GlobalSectionModel, ModelError> {
    let report = validate_resonance_free_in(conn.data(), Scope::FinitePoints)
        .merge(validate_admissible(conn.data()));
    if !report.passed() {
        return Err(ModelError::Rejected(report));
    }
    let r = conn.rank();
    let mut labels = Vec::new();
    let mut eigen_inverse = Vec::new();
    for (j, s) in conn.regular().iter().enumerate() {
        let basis = Matrix::from_columns(
            &s.eigen.iter().map(|e| e.vector.clone()).collect::<Vec<_>>(),
            r,
        )
        .expect("validated shape");
        eigen_inverse.push(
            basis
                .inverse()
                .expect("square")
                .expect("eigenvectors form a basis"),
        );
        labels.extend(
            s.eigen
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.value.is_zero())
                .map(|(k, _)| BasisLabel { point: j, eigen: k }),
        );
    }
    Ok(GlobalSectionModel {
        conn: conn.clone(),
        labels,
        eigen_inverse,
    })
}

impl GlobalSectionModel {
    pub fn connection(&self) -> &ParabolicConnection {
        &self.conn
    }

    pub fn rank(&self) -> usize {
        self.conn.rank()
    }

    /// The cokernel basis labels, i.e. the basis of the transform.
    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// `dim H⁰(F) = r + Σ_j rank A^j`.
    pub fn dimension(&self) -> usize {
        self.rank() + self.labels.len()
    }

    pub fn point(&self, j: usize) -> &GaussianRational {
        &self.conn.regular()[j].point
    }

    pub fn eigenvector(&self, label: BasisLabel) -> &[GaussianRational] {
        &self.conn.regular()[label.point].eigen[label.eigen].vector
    }

    pub fn eigenvalue(&self, label: BasisLabel) -> &GaussianRational {
        &self.conn.regular()[label.point].eigen[label.eigen].value
    }

    /// Coordinates of `v` in the eigenbasis at `p_j`.
    pub fn eigen_coordinates<F: Field>(&self, j: usize, v: &[F]) -> Vec<F> {
        mat_vec(&self.eigen_inverse[j], v)
    }

    /// Cokernel coordinates of `Σ_j r_j/(x - p_j) dx`, or the first `j` with
    /// `r_j ∉ im A^j`.
    pub fn coordinates_of_residues<F: Field>(&self, residues: &[Vec<F>]) -> Result<Vec<F>, usize> {
        let mut per_point = Vec::with_capacity(residues.len());
        for (j, r_j) in residues.iter().enumerate() {
            let c = self.eigen_coordinates(j, r_j);
            let s = &self.conn.regular()[j];
            if s.eigen.iter().zip(&c).any(|(e, c)| e.value.is_zero() && !c.is_zero()) {
                return Err(j);
            }
            per_point.push(c);
        }
        Ok(self
            .labels
            .iter()
            .map(|l| per_point[l.point][l.eigen].clone())
            .collect())
    }

    /// Matrix of `∇_ξ: C^r → H⁰(F)`, `v ↦ (A - ξ)v dx + Σ_j A^j v/(x - p_j) dx`,
    /// in the model basis; size `dimension × r`.
    pub fn nabla_matrix<F: Field>(&self, xi: &F) -> Matrix<F> {
        let r = self.rank();
        let mut m = Matrix::zeros(self.dimension(), r);
        for a in 0..r {
            m.set(a, a, F::from_gaussian(&self.conn.irregular().leading[a]) - xi);
        }
        for (idx, l) in self.labels.iter().enumerate() {
            let mu = self.eigenvalue(*l);
            for b in 0..r {
                let v = mu * self.eigen_inverse[l.point].get(l.eigen, b);
                m.set(r + idx, b, F::from_gaussian(&v));
            }
        }
        m
    }

    /// `∇_ξ t` for an arbitrary section `t`, as a section of `Ω¹` written in
    /// the same partial-fraction form.
    pub fn apply_nabla<F: Field>(&self, t: &MeromorphicSection<F>, xi: &F) -> MeromorphicSection<F> {
        let r = self.rank();
        let n = self.conn.regular().len();
        let leading = &self.conn.irregular().leading;
        let shifted = |v: &[F]| -> Vec<F> {
            v.iter()
                .zip(leading)
                .map(|(c, a)| c.scale(a) - c.clone() * xi)
                .collect()
        };
        let mut out = MeromorphicSection::zero(r, n);

        for j in 0..n {
            let pj = self.point(j);
            for m in 1..=t.pole_order(j) {
                let Some(v) = t.pole(j, m) else { continue };
                let mf = GaussianRational::from_integer(m as i64);
                // derivative
                out.add_pole(j, m + 1, &scale_vec(v, &-mf));
                out.add_pole(j, m, &shifted(v));
                for (i, s) in self.conn.regular().iter().enumerate() {
                    let av = mat_vec(&s.residue, v);
                    if i == j {
                        out.add_pole(j, m + 1, &av);
                        continue;
                    }
                    // 1/((x-a)(x-b)^m) = d^{-m}/(x-a) - Σ_{k=1}^m d^{-(m-k+1)}/(x-b)^k
                    let d = &s.point - pj;
                    out.add_pole(i, 1, &scale_vec(&av, &d.powi(-(m as i64)).expect("distinct points")));
                    for k in 1..=m {
                        let c = -d.powi(-((m - k + 1) as i64)).expect("distinct points");
                        out.add_pole(j, k, &scale_vec(&av, &c));
                    }
                }
            }
        }
        for k in 0..t.poly_len() {
            let Some(v) = t.poly(k) else { continue };
            if k > 0 {
                out.add_poly(k - 1, &scale_vec(v, &GaussianRational::from_integer(k as i64)));
            }
            out.add_poly(k, &shifted(v));
            for (i, s) in self.conn.regular().iter().enumerate() {
                let av = mat_vec(&s.residue, v);
                // x^k/(x-a) = Σ_{l<k} a^{k-1-l} x^l + a^k/(x-a)
                for l in 0..k {
                    out.add_poly(l, &scale_vec(&av, &s.point.pow((k - 1 - l) as u32)));
                }
                out.add_pole(i, 1, &scale_vec(&av, &s.point.pow(k as u32)));
            }
        }
        out
    }

    /// The section `Σ_{(j,k)} c_{j,k} e_{j,k}/(x - p_j)`.
    pub fn basis_section<F: Field>(&self, coordinates: &[F]) -> MeromorphicSection<F> {
        let mut out = MeromorphicSection::zero(self.rank(), self.conn.regular().len());
        for (l, c) in self.labels.iter().zip(coordinates) {
            let v: Vec<F> = self.eigenvector(*l).iter().map(|e| c.scale(e)).collect();
            out.add_pole(l.point, 1, &v);
        }
        out
    }
}

pub(crate) fn mat_vec<F: Field>(m: &Matrix<GaussianRational>, v: &[F]) -> Vec<F> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(F::zero(), |acc, j| {
                let a = m.get(i, j);
                if a.is_zero() || v[j].is_zero() {
                    acc
                } else {
                    acc + v[j].scale(a)
                }
            })
        })
        .collect()
}

pub(crate) fn scale_vec<F: Field>(v: &[F], c: &GaussianRational) -> Vec<F> {
    v.iter().map(|x| x.scale(c)).collect()
}

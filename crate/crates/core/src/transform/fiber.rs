//! The fibre `coker(∇_{ξ₀}: C^r → H⁰(F))` at a numeric `ξ₀`, computed by
//! plain linear algebra on the model, independently of the reduction.

use thiserror::Error;

use super::model::{BasisLabel, GlobalSectionModel};
use crate::arith::{GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("ξ₀ = {0} is an eigenvalue of A; the fibre model jumps there, use residue_data_at")]
    SpectralPoint(String),
    #[error("∇ at ξ₀ has a nonzero kernel")]
    NonInjective,
}

#[derive(Debug, Clone)]
pub struct FiberCokernel {
    xi0: GaussianRational,
    labels: Vec<BasisLabel>,
    rank: usize,
    /// `[∇_{ξ₀} | unit vectors of the basis classes]`, square and invertible.
    presentation_inverse: Matrix<GaussianRational>,
    model: GlobalSectionModel,
}

pub fn fiber_cokernel(
    model: &GlobalSectionModel,
    xi0: &GaussianRational,
) -> Result<FiberCokernel, FiberError> {
    if model.connection().irregular().leading.contains(xi0) {
        return Err(FiberError::SpectralPoint(xi0.to_string()));
    }
    let r = model.rank();
    let dim = model.dimension();
    let nabla = model.nabla_matrix(xi0);
    if !nabla.kernel_basis().is_empty() {
        return Err(FiberError::NonInjective);
    }
    let mut presentation = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..r {
            presentation.set(i, j, nabla.get(i, j).clone());
        }
    }
    for k in 0..model.labels().len() {
        presentation.set(r + k, r + k, GaussianRational::one());
    }
    let presentation_inverse = presentation
        .inverse()
        .expect("square")
        .ok_or(FiberError::NonInjective)?;
    Ok(FiberCokernel {
        xi0: xi0.clone(),
        labels: model.labels().to_vec(),
        rank: r,
        presentation_inverse,
        model: model.clone(),
    })
}

impl FiberCokernel {
    pub fn xi0(&self) -> &GaussianRational {
        &self.xi0
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Class of an element of `H⁰(F)` given in model coordinates.
    pub fn represent(&self, h: &[GaussianRational]) -> Vec<GaussianRational> {
        let z = self
            .presentation_inverse
            .mul_vec(h)
            .expect("model-sized vector");
        z[self.rank..].to_vec()
    }

    /// Matrix of multiplication by `x` on the fibre: the class of
    /// `x e_{j,k}/(x - p_j) dx = e_{j,k} dx + p_j e_{j,k}/(x - p_j) dx`.
    pub fn x_action(&self) -> Matrix<GaussianRational> {
        let r = self.rank;
        let cols: Vec<Vec<GaussianRational>> = self
            .labels
            .iter()
            .enumerate()
            .map(|(idx, l)| {
                let mut h = vec![GaussianRational::zero(); r + self.labels.len()];
                h[..r].clone_from_slice(self.model.eigenvector(*l));
                h[r + idx] = self.model.point(l.point).clone();
                self.represent(&h)
            })
            .collect();
        Matrix::from_columns(&cols, self.labels.len()).expect("square")
    }
}

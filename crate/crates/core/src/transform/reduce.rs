//! Pole-order reduction: rewrites a meromorphic one-form `s dx` modulo the
//! image of `∇_ξ` in the cokernel basis `[e_{j,k}/(x - p_j) dx]`.

use thiserror::Error;

use super::model::{GlobalSectionModel, mat_vec};
use super::section::MeromorphicSection;
use crate::arith::{Field, GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("res(∇, p_{j}) - {m}·Id is singular")]
    GradedStepSingular { j: usize, m: usize },
    #[error("A - ξ is singular at the requested ξ")]
    LeadingSingular,
    #[error("residue at p_{j} is not in the image of A^{j}; the section is not in the minimal extension")]
    NotInMinimalExtension { j: usize },
    #[error("section has {found} points, the model has {expected}")]
    Shape { found: usize, expected: usize },
}

/// Cokernel coordinates of `s dx` together with the certificate `t`:
/// `s = ∇_ξ t + Σ c_{j,k} e_{j,k}/(x - p_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<F> {
    pub coordinates: Vec<F>,
    pub correction: MeromorphicSection<F>,
}

fn graded_inverse(
    model: &GlobalSectionModel,
    j: usize,
    m: usize,
) -> Result<Matrix<GaussianRational>, ReduceError> {
    let r = model.rank();
    let res = &model.connection().regular()[j].residue;
    let shifted = res
        .checked_sub(&Matrix::identity(r).scale(&GaussianRational::from_integer(m as i64)))
        .expect("square residue");
    shifted
        .inverse()
        .expect("square")
        .ok_or(ReduceError::GradedStepSingular { j, m })
}

/// Reduces `s dx`: (a) cancel poles of order `m + 1 ≥ 2` at each `p_j` with
/// `(A^j - m)t = top coefficient`; (b) cancel the polynomial part from the
/// top degree down with `(A - ξ)v = c`; (c) read off the residues, which
/// must lie in `im A^j`.
pub fn reduce_section<F: Field>(
    model: &GlobalSectionModel,
    s: &MeromorphicSection<F>,
    xi: &F,
) -> Result<Reduction<F>, ReduceError> {
    let r = model.rank();
    let n = model.connection().regular().len();
    if s.points() != n || s.rank() != r {
        return Err(ReduceError::Shape {
            found: s.points(),
            expected: n,
        });
    }
    let mut rest = s.clone();
    let mut correction = MeromorphicSection::zero(r, n);
    let mut inverses: Vec<Vec<Matrix<GaussianRational>>> = vec![Vec::new(); n];

    for j in 0..n {
        while rest.pole_order(j) >= 2 {
            let top = rest.pole_order(j);
            let m = top - 1;
            while inverses[j].len() < m {
                let next = inverses[j].len() + 1;
                inverses[j].push(graded_inverse(model, j, next)?);
            }
            let t = mat_vec(&inverses[j][m - 1], rest.pole(j, top).expect("top order present"));
            let mut term = MeromorphicSection::zero(r, n);
            term.add_pole(j, m, &t);
            rest = rest.sub(&model.apply_nabla(&term, xi));
            correction = correction.add(&term);
        }
    }

    let leading = &model.connection().irregular().leading;
    while rest.poly_len() > 0 {
        let k = rest.poly_len() - 1;
        let c = rest.poly(k).expect("top degree present");
        let mut v = Vec::with_capacity(r);
        for (ca, a) in c.iter().zip(leading) {
            let d = F::from_gaussian(a) - xi;
            if d.is_zero() {
                return Err(ReduceError::LeadingSingular);
            }
            v.push(ca.clone() / d);
        }
        let mut term = MeromorphicSection::zero(r, n);
        term.add_poly(k, &v);
        rest = rest.sub(&model.apply_nabla(&term, xi));
        correction = correction.add(&term);
    }

    debug_assert!((0..n).all(|j| rest.pole_order(j) <= 1));
    let residues: Vec<Vec<F>> = (0..n)
        .map(|j| {
            rest.pole(j, 1)
                .map(<[F]>::to_vec)
                .unwrap_or_else(|| vec![F::zero(); r])
        })
        .collect();
    let coordinates = model
        .coordinates_of_residues(&residues)
        .map_err(|j| ReduceError::NotInMinimalExtension { j })?;
    Ok(Reduction {
        coordinates,
        correction,
    })
}

/// Checks `s = ∇_ξ(correction) + Σ c_{j,k} e_{j,k}/(x - p_j)` term by term.
pub fn verify_certificate<F: Field>(
    model: &GlobalSectionModel,
    s: &MeromorphicSection<F>,
    reduction: &Reduction<F>,
    xi: &F,
) -> bool {
    let rebuilt = model
        .apply_nabla(&reduction.correction, xi)
        .add(&model.basis_section(&reduction.coordinates));
    rebuilt == *s
}

//! Exact computation of the minimal Laplace transform of parabolic
//! meromorphic connections on the Riemann sphere.
//!
//! Inputs are connections `d + (A + Σ_j A^j/(x - p_j)) dx` on the trivial
//! bundle: logarithmic, semi-simple singularities at finitely many points
//! `p_j` and an irregular singularity of Poincaré rank one at infinity. All
//! arithmetic happens over the Gaussian rationals `Q(i)` and over the
//! rational function field `Q(i)(ξ)`; nothing is ever rounded.
//!
//! Layout:
//! - [`arith`]: `Q(i)`, polynomials and rational functions over it, dense
//!   linear algebra, Laurent expansions.
//! - [`connection`]: the parabolic connection data model, resonance and
//!   admissibility validators, degrees and slopes, the document format.
//! - [`transform`]: the global-section model of the twisted de Rham complex,
//!   pole-order reduction, fibres and the transformed connection `X(ξ)`.
//! - [`stationary`]: prediction of the transform's singularity data from the
//!   input alone, and the cross-checks against the computed transform.

pub mod arith;
pub mod connection;
pub mod stationary;
pub mod transform;

pub use arith::{Field, GaussianRational, Matrix, Point, Polynomial, RationalFunction};
pub use connection::{ParabolicConnection, SingularityData};
pub use stationary::{predict, verify_involution, verify_stationary_phase, PredictedData};
pub use transform::{build_model, transform_connection, GlobalSectionModel, TransformedConnection};

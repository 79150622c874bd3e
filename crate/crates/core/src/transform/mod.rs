//! The minimal Laplace transform as a cokernel: `H⁰(F)` modulo the image of
//! `∇_ξ = ∂_x - ξ + Φ(x)` on constant sections, with `ξ` acting as `∂_x`
//! and `∂_ξ` as `-x`.

mod fiber;
mod inverse;
mod model;
mod reduce;
mod section;
mod transformed;

pub use fiber::{fiber_cokernel, FiberCokernel, FiberError};
pub use inverse::{harvest, inverse_transform, HarvestError, InverseError};
pub use model::{build_model, BasisLabel, GlobalSectionModel, ModelError};
pub use reduce::{reduce_section, verify_certificate, ReduceError, Reduction};
pub use section::{MeromorphicSection, SectionTerm};
pub use transformed::{
    transform_connection, DualPole, FormalData, ResidueData, TransformedConnection,
};

//! Formal stationary phase: the singularity data of the transform predicted
//! from the input, and checks of the prediction against the computation.

mod predict;
mod verify;

pub use predict::{predict, Collision, LambdaDatum, PredictError, PredictedBlock, PredictedData};
pub use verify::{verify_involution, verify_stationary_phase, Check, InvolutionReport, PhaseReport};

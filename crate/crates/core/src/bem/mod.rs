//! Nyström boundary-integral solver for the DtN spectrum of smooth planar
//! domains.

mod curve;
mod nystrom;
mod solve;

pub use curve::{BoundaryCurve, CurvePoint, CurveSpec};
pub use nystrom::{assemble, assemble_with_shift, BemDiscretization, Kernel, MAX_DECAY_PRODUCT};
pub use solve::{
    bulk_eigenfunction, solve_discretization, solve_dtn_spectrum, solve_dtn_spectrum_with_shift,
    GeneralizedEigenSolution, ReductionMethod, REDUCTION_COND, RESIDUAL_TOL,
};

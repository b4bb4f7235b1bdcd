pub mod bem;
pub mod branches;
pub mod canonical;
pub mod domain;
pub mod error;
pub mod perturb;
pub mod roots;
pub mod specfun;
pub mod validate;

pub use domain::{BoundaryCondition, BranchId, BranchLabel, DomainSpec, Parity, Spectrum, SpectrumEntry};
pub use error::{DtnError, Result};

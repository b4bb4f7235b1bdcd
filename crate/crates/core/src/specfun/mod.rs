//! Bessel functions, their zeros, and adaptive quadrature.

mod bessel;
mod quadrature;
mod zeros;

pub use bessel::{
    bessel, bessel_derivative, bessel_scaled, i_log_derivative, i_ratio, j_log_derivative, j_ratio, BesselKind,
    BesselOrder,
};
pub(crate) use bessel::{ik_scaled, jy};
pub use quadrature::integrate;
pub use zeros::{
    bessel_j_zero, bessel_j_zeros, bessel_j_zeros_below, bessel_j_zeros_bracketing, bessel_jprime_zero, dini_zero, mcmahon_zero,
};

//! Branch handling, contour construction and quadrature shared by the
//! integral representations.

mod branch;
mod contour;
mod probe;
pub(crate) mod quadrature;
mod special;

pub use branch::{
    barnes_kernel, log_distance, log_inv_sin_pi, log_kernel_from_log, log_neg, log_two_sin, neg_pow,
    reduce_log, SectorSpec,
};
pub use contour::{
    build_contour, build_separating_contour, contour_integral, contour_integral_multi, verify_contour,
    Contour, ContourRequest, IndexRange, PoleFamily, QuadratureConfig,
};
pub use probe::{residue_probe, winding_number, winding_number_from_log};
pub use quadrature::{integrate_interval, Integral};
pub use special::{expm1, gamma, ln_gamma, rising};

//! Scalar special functions.

mod bessel;
mod cylinder;
mod gamma;
mod hyper;

pub use bessel::{bessel_k, whittaker_w};
pub use cylinder::parabolic_cylinder_d;
pub use gamma::{
    cos_pi, gamma, gamma_complex, gamma_ratio, gauss_legendre_check, ln_gamma, ln_gamma_real,
    ln_gamma_sign, nonpositive_integer, pochhammer, pochhammer_real, reflection_check, rgamma,
    sin_pi,
};
pub use hyper::{
    delta_list, hyp1f1, phyper, phyper_real, tricomi_u, ParamLists, SeriesControl, SeriesValue,
    TailTracker,
};

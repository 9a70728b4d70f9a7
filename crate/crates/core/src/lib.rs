//! Densities of two-scale stable Lévy processes and the conservation laws
//! they drive.
//!
//! The crate evaluates single-scale stable densities from closed forms and
//! series, two-scale convolution kernels from double series, finite
//! hypergeometric sums and Meijer-G integrals, and checks all of them
//! against direct Fourier inversion. It also ships a pseudospectral solver
//! for `u_t + A u + (g(u))_x = 0` with the matching asymptotic diagnostics.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod claw;
pub mod error;
pub mod moments;
pub mod multiscale;
pub mod oracle;
pub mod profile;
pub mod quad;
pub mod specfun;
pub mod stable;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};

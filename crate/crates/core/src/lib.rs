#![no_std]
//! Numerical core for the Ψ-transform family T_s: special functions,
//! kernels, orthogonal polynomials on the unit circle, the half-line
//! hierarchy, Wiener–Hopf factorization checks and the associated DPP.

extern crate alloc;

pub mod dd;
pub mod dpp;
pub mod error;
pub mod hierarchy;
pub mod kernel;
pub mod opuc;
pub mod quadrature;
pub mod special_fn;
pub mod transform;
pub mod wiener_hopf;

pub use error::{Error, Result};

pub type Complex = num_complex::Complex64;

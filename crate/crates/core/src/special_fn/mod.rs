//! Complex Γ and hypergeometric functions.
//!
//! Everything downstream (kernel, transform, circular ensemble) is built on
//! these routines. All Γ quotients go through log-Γ sums.

mod confluent;
mod gamma;
mod gauss;

pub use confluent::{hyp1f1, hyp1f1_asymptotic, hyp1f1_integral_oracle, Confluent, EvalConfig};
pub use gamma::{gamma_complex, gamma_ratio, is_gamma_pole, ln_gamma, pochhammer, rgamma};
pub use gauss::hyp2f1_terminating;

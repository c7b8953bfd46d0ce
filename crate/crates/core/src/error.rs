use core::fmt;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of Γ or of a hypergeometric denominator.
    Pole(&'static str),
    /// Argument outside the domain where the routine is defined.
    Domain(&'static str),
    /// Evaluation point is a singularity of ρ, ψ or the kernel.
    Singularity(&'static str),
    /// A series did not reach tolerance within the configured term budget.
    NonConvergence { terms: usize },
    /// Polynomial degree above the conditioning limit.
    Degree { requested: usize, max: usize },
    /// A least-squares fit was fed non-finite or underflowed values.
    Fit(&'static str),
    /// Sampled window holds too much mass in its outer band.
    TailMass { fraction: f64 },
    /// A frequency integral kept growing as the cutoff was doubled.
    Divergence,
    /// Eigendecomposition failed or produced non-finite values.
    EigFailure,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole(what) => write!(f, "pole: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Singularity(what) => write!(f, "singular point: {what}"),
            Error::NonConvergence { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::Degree { requested, max } => {
                write!(f, "degree {requested} exceeds the supported maximum {max}")
            }
            Error::Fit(what) => write!(f, "fit failed: {what}"),
            Error::TailMass { fraction } => {
                write!(f, "window too small: {fraction:.3} of the energy sits in the outer band")
            }
            Error::Divergence => write!(f, "frequency integral does not converge"),
            Error::EigFailure => write!(f, "eigendecomposition failed"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

//! Subcommand bodies. Each returns the process exit code.

use std::fmt;
use std::fs;
use std::io::{self, Write};

use chk_core::dpp::nystrom_eig;
use chk_core::hierarchy::{basis_l_adjoint_route, basis_l_closed_form};
use chk_core::kernel::SpectralParameter;
use chk_core::{opuc, Complex};

use crate::checks::{bnr_errors, ker_conv_errors, run_suite, strictly_decreasing, unit_norm_errors};
use crate::cli::{Command, Quantity, Target};
use crate::output::{complex_json, configurations_jsonl, fmt17};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Numeric(chk_core::Error),
    Io(io::Error),
    Csv(csv::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Csv(e) => write!(f, "csv error: {e}"),
        }
    }
}

impl From<chk_core::Error> for CliError {
    fn from(e: chk_core::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

/// Runs a parsed command, writing results to `out`. Errors map to exit 3.
pub fn run(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { s, x, y, what } => {
            let s = SpectralParameter::new(s.0)?;
            let v = match what {
                Quantity::Kernel => s.kernel(x, y.unwrap_or(x))?,
                Quantity::Tcal => s.tcal(x)?,
                // sign x is undefined at 0, so the CLI rejects it for every s
                Quantity::Rho if x == 0.0 => return Err(chk_core::Error::Singularity("rho needs x != 0").into()),
                Quantity::Rho => Complex::new(s.rho(x)?, 0.0),
                Quantity::Psi => s.psi(x)?,
                Quantity::Z => s.z_fun(x)?,
                Quantity::Weight => Complex::new(opuc::weight(&s, x)?, 0.0),
            };
            writeln!(out, "{}", complex_json(v))?;
            Ok(EXIT_PASS)
        }
        Command::Verify { suite, s, level } => {
            let s = SpectralParameter::new(s.0)?;
            let checks = run_suite(suite, &s, level)?;
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            Ok(if checks.iter().all(|c| c.pass) { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Converge { target, s, n_list, ceiling } => {
            let s = SpectralParameter::new(s.0)?;
            let ns = &n_list.0;
            let (errors, default_ceiling) = match target {
                Target::Bnr => (bnr_errors(&s, ns)?, 1e-2),
                Target::KerConv => (ker_conv_errors(&s, ns)?, 1e-2),
                Target::UnitNorm => (unit_norm_errors(&s, ns)?, 0.1),
            };
            {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(["n", "error"])?;
                for (n, e) in ns.iter().zip(&errors) {
                    w.write_record([n.to_string(), fmt17(*e)])?;
                }
                w.flush()?;
            }
            writeln!(out, "# monotone-decrease: {}", strictly_decreasing(&errors))?;
            let last = errors.last().copied().unwrap_or(f64::NAN);
            Ok(if last <= ceiling.unwrap_or(default_ceiling) { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Basis { s, n, grid, out: path, check } => {
            let s = SpectralParameter::new(s.0)?;
            let xs = grid.points();
            let n = n as usize;
            let (_, adj) = basis_l_adjoint_route(&s, n, &xs)?;
            let mut text = Vec::new();
            let mut footer = None;
            {
                let mut w = csv::Writer::from_writer(&mut text);
                if check {
                    // the closed form differs by a constant factor, fixed at the first nonzero sample
                    let (_, closed) = basis_l_closed_form(&s, n, &xs)?;
                    let anchor = adj.iter().zip(&closed).find(|(a, c)| a.norm() > 0.0 && c.norm() > 0.0);
                    let r0 = anchor.map(|(a, c)| a / c).unwrap_or(Complex::new(1.0, 0.0));
                    let mut dev = 0.0f64;
                    w.write_record(["x", "re", "im", "re_closed", "im_closed"])?;
                    for ((&x, a), c) in xs.iter().zip(&adj).zip(&closed) {
                        let c = c * r0;
                        if a.norm() > 0.0 && c.norm() > 0.0 {
                            dev = dev.max((a / c - 1.0).norm());
                        }
                        w.write_record([fmt17(x), fmt17(a.re), fmt17(a.im), fmt17(c.re), fmt17(c.im)])?;
                    }
                    footer = Some(dev);
                } else {
                    w.write_record(["x", "re", "im"])?;
                    for (&x, a) in xs.iter().zip(&adj) {
                        w.write_record([fmt17(x), fmt17(a.re), fmt17(a.im)])?;
                    }
                }
                w.flush()?;
            }
            let mut code = EXIT_PASS;
            if let Some(dev) = footer {
                writeln!(text, "# route-ratio-deviation: {}", fmt17(dev))?;
                if !(dev <= 1e-6) {
                    code = EXIT_FAIL;
                }
            }
            fs::write(&path, text)?;
            Ok(code)
        }
        Command::Sample { s, interval, nodes, count, seed, out: path } => {
            let s = SpectralParameter::new(s.0)?;
            let d = nystrom_eig(&s, interval.a, interval.b, nodes as usize)?;
            let configs: Vec<_> = (0..count).map(|k| d.sample(seed.wrapping_add(k))).collect();
            fs::write(&path, configurations_jsonl(&configs))?;
            Ok(EXIT_PASS)
        }
    }
}

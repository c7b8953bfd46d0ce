//! Complex Γ via the Lanczos approximation (g = 7, nine coefficients).

use core::f64::consts::PI;


use crate::{Complex, Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// True when `z` is a non-positive integer, i.e. a pole of Γ.
pub fn is_gamma_pole(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == libm::round(z.re)
}

fn ln_gamma_lanczos(z: Complex) -> Complex {
    let z = z - 1.0;
    let mut x = Complex::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + x.ln()
}

/// ln sin(πz) without overflow for large |Im z|. Branch is irrelevant
/// because callers only exponentiate sums of logarithms.
fn ln_sin_pi(z: Complex) -> Complex {
    let i = Complex::i();
    if z.im > 20.0 {
        // sin(πz) = e^{-iπz}(1 - e^{2iπz}) / (-2i)
        -i * PI * z - (-2.0 * i).ln() + (1.0 - (2.0 * i * PI * z).exp()).ln()
    } else if z.im < -20.0 {
        i * PI * z - (2.0 * i).ln() + (1.0 - (-2.0 * i * PI * z).exp()).ln()
    } else {
        (PI * z).sin().ln()
    }
}

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// ln Γ(z) up to a multiple of 2πi.
pub fn ln_gamma(z: Complex) -> Result<Complex> {
    if is_gamma_pole(z) {
        return Err(Error::Pole("gamma at a non-positive integer"));
    }
    if z.re < 0.5 {
        Ok(Complex::new(LN_PI, 0.0) - ln_sin_pi(z) - ln_gamma_lanczos(1.0 - z))
    } else {
        Ok(ln_gamma_lanczos(z))
    }
}

pub fn gamma_complex(z: Complex) -> Result<Complex> {
    if is_gamma_pole(z) {
        return Err(Error::Pole("gamma at a non-positive integer"));
    }
    if z.re < 0.5 {
        // direct reflection keeps full relative accuracy for moderate |z|
        if z.im.abs() <= 20.0 {
            let g = ln_gamma_lanczos(1.0 - z).exp();
            return Ok(PI / ((PI * z).sin() * g));
        }
        return Ok(ln_gamma(z)?.exp());
    }
    Ok(ln_gamma_lanczos(z).exp())
}

/// ∏Γ(numerators) / ∏Γ(denominators), summed in log space.
pub fn gamma_ratio(numerators: &[Complex], denominators: &[Complex]) -> Result<Complex> {
    let mut acc = Complex::new(0.0, 0.0);
    for &z in numerators {
        acc += ln_gamma(z)?;
    }
    for &z in denominators {
        if is_gamma_pole(z) {
            return Err(Error::Pole("gamma ratio with a denominator at a pole"));
        }
        acc -= ln_gamma(z)?;
    }
    Ok(acc.exp())
}

/// 1/Γ(z), zero at the poles.
pub fn rgamma(z: Complex) -> Complex {
    if is_gamma_pole(z) {
        Complex::new(0.0, 0.0)
    } else {
        // ln_gamma only fails at poles
        (-ln_gamma(z).unwrap_or_default()).exp()
    }
}

/// Rising factorial (a)_k = a(a+1)…(a+k-1).
pub fn pochhammer(a: Complex, k: usize) -> Complex {
    (0..k).fold(Complex::new(1.0, 0.0), |acc, j| acc * (a + j as f64))
}

use crate::dd::CDd;
use crate::{Complex, Error, Result};

/// ₂F₁(−n, b; c; z) as the exact finite sum of n+1 terms.
///
/// The sum is accumulated in double-double so that moderate cancellation
/// (|z| ≳ 1 with large n) costs nothing beyond the final rounding.
pub fn hyp2f1_terminating(n: usize, b: Complex, c: Complex, z: Complex) -> Result<Complex> {
    for j in 0..n {
        if c.im == 0.0 && c.re == -(j as f64) {
            return Err(Error::Pole("2F1 with c in {0, -1, ..., -(n-1)}"));
        }
    }
    let bd = CDd::from_c64(b);
    let cd = CDd::from_c64(c);
    let zd = CDd::from_c64(z);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    for k in 0..n {
        let kf = k as f64;
        // (−n+k)(b+k) z / ((c+k)(k+1))
        let num = bd.add_real(kf) * zd.scale(((kf - n as f64)).into());
        let den = cd.add_real(kf).scale((kf + 1.0).into());
        term = term * num / den;
        sum = sum + term;
    }
    Ok(sum.to_c64())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn degree_zero_is_one() {
        let v = hyp2f1_terminating(0, c(0.3, 2.0), c(-4.5, 1.0), c(9.0, -3.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn binomial_collapse() {
        let b = c(1.3, -0.2);
        let v = hyp2f1_terminating(2, b, b, c(0.5, 0.0)).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_term_series() {
        let v = hyp2f1_terminating(1, c(2.0, 0.0), c(1.0, 0.0), c(0.3, 0.0)).unwrap();
        assert!((v - c(0.4, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pole_in_c() {
        assert!(hyp2f1_terminating(3, c(1.0, 0.0), c(-1.0, 0.0), c(0.5, 0.0)).is_err());
        // c = -3 is harmless when n = 3: the series stops before (c)_4
        assert!(hyp2f1_terminating(3, c(1.0, 0.0), c(-3.0, 0.0), c(0.5, 0.0)).is_ok());
    }
}

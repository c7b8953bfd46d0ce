//! Pointwise ρ, ψ, Z_s, the confluent hypergeometric kernel K^s and the
//! generalized exponent T_s.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::special_fn::{gamma_ratio, Confluent, EvalConfig};
use crate::{Complex, Error, Result};

const I: Complex = Complex::new(0.0, 1.0);

fn inv_sqrt_2pi() -> f64 {
    1.0 / (2.0 * PI).sqrt()
}

/// A spectral parameter s with Re s > −1/2, together with the Γ constant
/// and ₁F₁ evaluators needed for Z_s and its first two derivatives.
#[derive(Debug, Clone)]
pub struct SpectralParameter {
    s: Complex,
    b: f64,
    z0: Complex,
    m0: Confluent,
    m1: Confluent,
    m2: Confluent,
    m3: Confluent,
}

/// Precomputed data at one abscissa, enough for off-diagonal kernel entries.
#[derive(Debug, Clone, Copy)]
pub struct KernelPoint {
    pub x: f64,
    pub rho: f64,
    pub z: Complex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex,
    pub x: f64,
    pub y: f64,
}

impl SpectralParameter {
    pub fn new(s: Complex) -> Result<Self> {
        Self::with_config(s, EvalConfig::default())
    }

    pub fn with_config(s: Complex, cfg: EvalConfig) -> Result<Self> {
        if !(s.re > -0.5) || !s.im.is_finite() {
            return Err(Error::Domain("spectral parameter needs Re s > -1/2"));
        }
        cfg.validate()?;
        let b = 1.0 + 2.0 * s.re;
        let sb = s.conj();
        let bc = Complex::new(b, 0.0);
        let one = Complex::new(1.0, 0.0);
        Ok(SpectralParameter {
            s,
            b,
            z0: gamma_ratio(&[one + s], &[bc])?,
            m0: Confluent::new(sb, bc, cfg)?,
            m1: Confluent::new(sb + 1.0, bc + 1.0, cfg)?,
            m2: Confluent::new(sb + 2.0, bc + 2.0, cfg)?,
            m3: Confluent::new(sb + 3.0, bc + 3.0, cfg)?,
        })
    }

    pub fn s(&self) -> Complex {
        self.s
    }

    /// 1 + 2 Re s.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Γ(1+s)/Γ(1+2Re s) = Z_s(0).
    pub fn z_at_origin(&self) -> Complex {
        self.z0
    }

    pub fn rho(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            if self.s.re < 0.0 {
                return Err(Error::Singularity("rho at x = 0 with Re s < 0"));
            }
            return Ok(if self.s.re > 0.0 { 0.0 } else { 1.0 });
        }
        Ok((self.s.re * x.abs().ln() - 0.5 * PI * self.s.im * x.signum()).exp())
    }

    pub fn psi(&self, x: f64) -> Result<Complex> {
        if x == 0.0 {
            return Err(Error::Singularity("psi at x = 0"));
        }
        let phase = -0.5 * PI * self.s.re * x.signum() - self.s.im * x.abs().ln();
        Ok(Complex::from_polar(1.0, phase))
    }

    pub fn z_fun(&self, x: f64) -> Result<Complex> {
        Ok(self.z0 * self.m0.eval(Complex::new(0.0, x))?)
    }

    /// dZ_s/dx via d/dz ₁F₁(a;b;z) = (a/b) ₁F₁(a+1;b+1;z).
    pub fn z_prime(&self, x: f64) -> Result<Complex> {
        let a = self.s.conj();
        Ok(self.z0 * I * a / self.b * self.m1.eval(Complex::new(0.0, x))?)
    }

    pub fn z_second(&self, x: f64) -> Result<Complex> {
        let a = self.s.conj();
        let c = a * (a + 1.0) / (self.b * (self.b + 1.0));
        Ok(-self.z0 * c * self.m2.eval(Complex::new(0.0, x))?)
    }

    pub fn z_third(&self, x: f64) -> Result<Complex> {
        let a = self.s.conj();
        let c = a * (a + 1.0) * (a + 2.0) / (self.b * (self.b + 1.0) * (self.b + 2.0));
        Ok(-I * self.z0 * c * self.m3.eval(Complex::new(0.0, x))?)
    }

    pub fn point(&self, x: f64) -> Result<KernelPoint> {
        Ok(KernelPoint { x, rho: self.rho(x)?, z: self.z_fun(x)? })
    }

    /// Taylor expansion in h of N(h)/h, where N(h) is the numerator of K^s(x, x+h).
    fn near_diagonal_numerator(&self, x: f64, h: f64) -> Result<Complex> {
        let z = self.z_fun(x)?;
        let zp = self.z_prime(x)?;
        let n1 = I * (z.norm_sqr() + 2.0 * (z * zp.conj()).im);
        if h == 0.0 {
            return Ok(n1);
        }
        let zpp = self.z_second(x)?;
        let zppp = self.z_third(x)?;
        let zc = z.conj();
        let n2 = 0.5 * (z * zpp.conj() + z.norm_sqr() + 2.0 * I * zc * zp - zc * zpp);
        let n3 = (z * zppp.conj() - zc * (I * z - 3.0 * zp - 3.0 * I * zpp + zppp)) / 6.0;
        Ok(n1 + (n2 + n3 * h) * h)
    }

    /// K^s(x, y), with the L'Hôpital limit on and near the diagonal.
    pub fn kernel_at(&self, p: &KernelPoint, q: &KernelPoint) -> Result<Complex> {
        let (x, y) = (p.x, q.x);
        let delta = (1e-6 * (1.0 + x.abs())).min(1e-4);
        let same_side = (x > 0.0 && y > 0.0) || (x < 0.0 && y < 0.0);
        if same_side && (y - x).abs() < delta {
            let num = self.near_diagonal_numerator(x, y - x)?;
            return Ok(num * (p.rho * q.rho) / (2.0 * PI * I));
        }
        if x == y {
            // x = y = 0 with Re s ≥ 0
            if self.s.re > 0.0 {
                return Ok(Complex::new(0.0, 0.0));
            }
            let num = self.near_diagonal_numerator(0.0, 0.0)?;
            return Ok(num * (p.rho * q.rho) / (2.0 * PI * I));
        }
        // A − e^{2iθ} conj(A) = 2i e^{iθ} Im(e^{−iθ} A), θ = (x − y)/2
        let theta = 0.5 * (x - y);
        let rot = Complex::from_polar(1.0, theta);
        let a = p.z * q.z.conj();
        let im = (rot.conj() * a).im;
        Ok(rot * (im * p.rho * q.rho / (PI * (y - x))))
    }

    pub fn kernel(&self, x: f64, y: f64) -> Result<Complex> {
        self.kernel_at(&self.point(x)?, &self.point(y)?)
    }

    pub fn kernel_value(&self, x: f64, y: f64) -> Result<KernelValue> {
        Ok(KernelValue { value: self.kernel(x, y)?, x, y })
    }

    /// T_s(x) = e^{−ix}/√(2π) · ρ(x) · conj ψ(x) · Z_s(x).
    pub fn tcal(&self, x: f64) -> Result<Complex> {
        if x == 0.0 {
            if self.s.re > 0.0 {
                return Ok(Complex::new(0.0, 0.0));
            }
            return Err(Error::Singularity("T_s at x = 0 needs Re s > 0"));
        }
        let rho = self.rho(x)?;
        let psi = self.psi(x)?;
        Ok(Complex::from_polar(inv_sqrt_2pi() * rho, -x) * psi.conj() * self.z_fun(x)?)
    }

    /// max over the grid of |Z ρ ψ − 1| (1 + |x|^{1+Re s}) / |x|^{Re s}.
    pub fn z_deviation_bound_check(&self, grid: &[f64]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &x in grid {
            if x == 0.0 {
                return Err(Error::Singularity("deviation grid must exclude 0"));
            }
            let dev = (self.z_fun(x)? * self.rho(x)? * self.psi(x)? - 1.0).norm();
            let ax = x.abs();
            let w = (1.0 + ax.powf(1.0 + self.s.re)) / ax.powf(self.s.re);
            worst = worst.max(dev * w);
        }
        Ok(worst)
    }

    /// Hermitian kernel matrix on the given points, row-major.
    pub fn kernel_matrix(&self, xs: &[f64]) -> Result<Vec<Complex>> {
        let pts = xs.iter().map(|&x| self.point(x)).collect::<Result<Vec<_>>>()?;
        let n = pts.len();
        let mut m = alloc::vec![Complex::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in i..n {
                let v = self.kernel_at(&pts[i], &pts[j])?;
                m[i * n + j] = v;
                m[j * n + i] = v.conj();
            }
            m[i * n + i] = Complex::new(m[i * n + i].re, 0.0);
        }
        Ok(m)
    }
}

/// The s = 0 kernel (1 − e^{i(x−y)}) / (2πi(y−x)), 1/(2π) on the diagonal.
pub fn sine_kernel(x: f64, y: f64) -> Complex {
    let h = x - y;
    if h == 0.0 {
        return Complex::new(1.0 / (2.0 * PI), 0.0);
    }
    Complex::from_polar((0.5 * h).sin() / (PI * h), 0.5 * h)
}

pub fn rho(s: &SpectralParameter, x: f64) -> Result<f64> {
    s.rho(x)
}

pub fn psi(s: &SpectralParameter, x: f64) -> Result<Complex> {
    s.psi(x)
}

pub fn z_fun(s: &SpectralParameter, x: f64) -> Result<Complex> {
    s.z_fun(x)
}

pub fn kernel(s: &SpectralParameter, x: f64, y: f64) -> Result<Complex> {
    s.kernel(x, y)
}

pub fn tcal(s: &SpectralParameter, x: f64) -> Result<Complex> {
    s.tcal(x)
}

pub fn z_deviation_bound_check(s: &SpectralParameter, x_grid: &[f64]) -> Result<f64> {
    s.z_deviation_bound_check(x_grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(re: f64, im: f64) -> SpectralParameter {
        SpectralParameter::new(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn rho_and_psi_examples() {
        assert!((sp(0.5, 0.0).rho(4.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((sp(0.0, 1.0).rho(1.0).unwrap() - (-PI / 2.0).exp()).abs() < 1e-15);
        assert!((sp(0.0, 1.0).rho(-1.0).unwrap() - (PI / 2.0).exp()).abs() < 1e-14);
        assert!((sp(1.0, 0.0).psi(3.0).unwrap() - Complex::new(0.0, -1.0)).norm() < 1e-15);
        assert!((sp(0.4, -2.0).psi(-7.5).unwrap().norm() - 1.0).abs() < 1e-15);
        assert!(matches!(sp(-0.2, 0.0).rho(0.0), Err(Error::Singularity(_))));
        assert!(matches!(sp(0.2, 0.0).psi(0.0), Err(Error::Singularity(_))));
        assert!(SpectralParameter::new(Complex::new(-0.5, 0.0)).is_err());
    }

    #[test]
    fn s_zero_reduces_to_sine_kernel() {
        let k = sp(0.0, 0.0);
        for &(x, y) in &[(1.0, 2.0), (-3.5, 7.25), (40.0, -49.0), (0.3, 0.3)] {
            assert!((k.kernel(x, y).unwrap() - sine_kernel(x, y)).norm() < 1e-12);
        }
        assert!((k.kernel(5.0, 5.0).unwrap().re - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((k.tcal(2.0).unwrap() - Complex::from_polar(inv_sqrt_2pi(), -2.0)).norm() < 1e-15);
    }

    #[test]
    fn tcal_at_origin() {
        assert_eq!(sp(0.3, 0.1).tcal(0.0).unwrap(), Complex::new(0.0, 0.0));
        assert!(sp(0.0, 0.4).tcal(0.0).is_err());
        assert!(sp(-0.3, 0.0).tcal(0.0).is_err());
    }

    #[test]
    fn diagonal_matches_limit_from_both_sides() {
        let k = sp(0.3, 0.7);
        let d = k.kernel(2.0, 2.0).unwrap();
        for &h in &[1e-3, 1e-4] {
            let a = k.kernel(2.0, 2.0 + h).unwrap();
            assert!((a - d).norm() < 0.05 * h);
        }
        let near = k.kernel(2.0, 2.0 + 5e-7).unwrap();
        let far = k.kernel(2.0, 2.0 + 5e-5).unwrap();
        assert!((near - d).norm() < 1e-7);
        assert!((far - near).norm() < 1e-5);
    }
}

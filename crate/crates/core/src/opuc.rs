//! The circular ensemble with weight
//! w_s(e^{iθ}) = (1/2π)·Γ(1+s)Γ(1+s̄)/Γ(1+2Re s)·(1−e^{iθ})^{s̄}(1−e^{−iθ})^s,
//! its orthogonal polynomials, the Christoffel–Darboux kernel and the
//! scaling limit of that kernel.
//!
//! Polynomials are evaluated from explicit coefficients. With
//! b_k = (s̄+1)_k/k! and c_m = (s)_m/m!, the monic polynomial is
//! Φ_n(z) = Σ_k b_k c_{n−k} z^k / b_n. This is the terminating ₂F₁ in
//! 1 − z re-expanded in powers of z. On the circle every term is O(1), while the
//! ₂F₁ terms grow like binomial(n,k)·2^k and cancel.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::kernel::SpectralParameter;
use crate::quadrature::QuadratureRule;
use crate::special_fn::{gamma_ratio, hyp2f1_terminating};
use crate::{Complex, Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// The weight w_s on the unit circle, parametrised by θ ∈ (−π, π).
#[derive(Debug, Clone, Copy)]
pub struct CircleWeight {
    s: Complex,
    prefactor: f64,
}

impl CircleWeight {
    pub fn new(s: &SpectralParameter) -> Result<Self> {
        let s = s.s();
        let g = gamma_ratio(&[ONE + s, ONE + s.conj()], &[Complex::new(1.0 + 2.0 * s.re, 0.0)])?;
        Ok(CircleWeight { s, prefactor: g.re / (2.0 * PI) })
    }

    pub fn s(&self) -> Complex {
        self.s
    }

    /// w_s(e^{iθ}). With 1 − e^{iθ} = 2 sin(θ/2)·e^{i(θ−π sgn θ)/2} the two
    /// conjugate powers combine to |2 sin(θ/2)|^{2Re s}·e^{Im s·(θ − π sgn θ)}.
    pub fn eval(&self, theta: f64) -> Result<f64> {
        if !(theta > -PI && theta < PI) && theta.abs() != PI {
            return Err(Error::Domain("weight needs theta in [-pi, pi]"));
        }
        if theta == 0.0 {
            if self.s.re > 0.0 {
                return Ok(0.0);
            }
            if self.s == ZERO {
                return Ok(self.prefactor);
            }
            return Err(Error::Singularity("weight at theta = 0"));
        }
        let modulus = (2.0 * (0.5 * theta).sin()).abs();
        let exponent = 2.0 * self.s.re * modulus.ln() + self.s.im * (theta - PI * theta.signum());
        Ok(self.prefactor * exponent.exp())
    }

    /// exp(s̄·Log(1−e^{iθ}) + s·Log(1−e^{−iθ})) with the principal Log, times the
    /// prefactor. Kept complex so that realness can be checked rather than assumed.
    pub fn eval_principal_log(&self, theta: f64) -> Result<Complex> {
        if theta == 0.0 {
            return self.eval(theta).map(|w| Complex::new(w, 0.0));
        }
        let e = Complex::from_polar(1.0, theta);
        let l1 = (ONE - e).ln();
        let l2 = (ONE - e.conj()).ln();
        Ok((self.s.conj() * l1 + self.s * l2).exp() * self.prefactor)
    }
}

pub fn weight(s: &SpectralParameter, theta: f64) -> Result<f64> {
    CircleWeight::new(s)?.eval(theta)
}

/// ‖Φ_n‖² = Γ(c+n)Γ(n+1)Γ(s+1)Γ(s̄+1) / (Γ(s̄+n+1)Γ(s+n+1)Γ(c)), c = 1 + 2Re s.
pub fn phi_norm_sq(s: &SpectralParameter, n: usize) -> Result<f64> {
    let s = s.s();
    let sb = s.conj();
    let c = Complex::new(1.0 + 2.0 * s.re, 0.0);
    let nf = n as f64;
    let v = gamma_ratio(&[c + nf, Complex::new(nf + 1.0, 0.0), s + 1.0, sb + 1.0], &[sb + nf + 1.0, s + nf + 1.0, c])?;
    Ok(v.re)
}

/// The monic orthogonal polynomial Φ_n as an explicit coefficient list.
#[derive(Debug, Clone)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex>,
    norm_sq: f64,
}

impl MonicPolynomial {
    pub fn new(s: &SpectralParameter, n: usize) -> Result<Self> {
        let (b, c) = coefficient_sequences(s.s(), n);
        let bn = b[n];
        let coeffs = (0..=n).map(|k| b[k] * c[n - k] / bn).collect();
        Ok(MonicPolynomial { coeffs, norm_sq: phi_norm_sq(s, n)? })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients of z^0, …, z^n.
    pub fn coefficients(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// Φ*_n(z) = z^n conj Φ_n(1/z̄) = Σ conj(a_k) z^{n−k}.
    pub fn eval_reversed(&self, z: Complex) -> Complex {
        self.coeffs.iter().fold(ZERO, |acc, &a| acc * z + a.conj())
    }

    pub fn eval_orthonormal(&self, z: Complex) -> Complex {
        self.eval(z) / self.norm_sq.sqrt()
    }

    pub fn eval_orthonormal_reversed(&self, z: Complex) -> Complex {
        self.eval_reversed(z) / self.norm_sq.sqrt()
    }
}

/// b_k = (s̄+1)_k/k! and c_m = (s)_m/m! for k, m ≤ n.
fn coefficient_sequences(s: Complex, n: usize) -> (Vec<Complex>, Vec<Complex>) {
    let sb1 = s.conj() + 1.0;
    let mut b = Vec::with_capacity(n + 1);
    let mut c = Vec::with_capacity(n + 1);
    b.push(ONE);
    c.push(ONE);
    for k in 0..n {
        let kf = k as f64;
        b.push(b[k] * (sb1 + kf) / (kf + 1.0));
        c.push(c[k] * (s + kf) / (kf + 1.0));
    }
    (b, c)
}

pub fn monic_phi(s: &SpectralParameter, n: usize, z: Complex) -> Result<Complex> {
    Ok(MonicPolynomial::new(s, n)?.eval(z))
}

/// Φ_n through Γ(c+n)Γ(s̄+1)/(Γ(s̄+n+1)Γ(c))·₂F₁(−n, s̄+1; c; 1−z).
/// Cancellation grows like 3^n on the circle; usable for small n only.
pub fn monic_phi_hypergeometric(s: &SpectralParameter, n: usize, z: Complex) -> Result<Complex> {
    let s = s.s();
    let sb = s.conj();
    let c = Complex::new(1.0 + 2.0 * s.re, 0.0);
    let nf = n as f64;
    let pre = gamma_ratio(&[c + nf, sb + 1.0], &[sb + nf + 1.0, c])?;
    Ok(pre * hyp2f1_terminating(n, sb + 1.0, c, ONE - z)?)
}

pub fn orthonormal_phi(s: &SpectralParameter, n: usize, z: Complex) -> Result<Complex> {
    Ok(MonicPolynomial::new(s, n)?.eval_orthonormal(z))
}

pub fn reversed_phi(s: &SpectralParameter, n: usize, z: Complex) -> Result<Complex> {
    Ok(MonicPolynomial::new(s, n)?.eval_orthonormal_reversed(z))
}

/// φ_0(z), …, φ_{n−1}(z) in O(n²): Φ_j(z) = Σ_{k≤j} (b_k z^k) c_{j−k} / b_j is a
/// discrete convolution, and ‖Φ_j‖² follows from
/// ‖Φ_{j+1}‖²/‖Φ_j‖² = (c+j)(j+1)/|s+j+1|².
pub fn orthonormal_table(s: &SpectralParameter, n: usize, z: Complex) -> Vec<Complex> {
    let sv = s.s();
    let (b, c) = coefficient_sequences(sv, n);
    let mut bz = Vec::with_capacity(n);
    let mut zk = ONE;
    for bk in b.iter().take(n) {
        bz.push(*bk * zk);
        zk *= z;
    }
    let cc = 1.0 + 2.0 * sv.re;
    let mut norm_sq = 1.0;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = ZERO;
        for k in 0..=j {
            acc += bz[k] * c[j - k];
        }
        out.push(acc / (b[j] * norm_sq.sqrt()));
        let jf = j as f64;
        norm_sq *= (cc + jf) * (jf + 1.0) / (sv + jf + 1.0).norm_sqr();
    }
    out
}

/// Which side of the Christoffel–Darboux formula to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdForm {
    /// √(w w)·Σ_{j<n} φ_j(e^{iτ}) conj φ_j(e^{iθ}).
    Sum,
    /// √(w w)·(conj φ*_n(e^{iθ}) φ*_n(e^{iτ}) − conj φ_n(e^{iθ}) φ_n(e^{iτ})) / (1 − e^{i(τ−θ)}).
    Ratio,
}

/// K_n(e^{iτ}, e^{iθ}).
pub fn cd_kernel(s: &SpectralParameter, n: usize, tau: f64, theta: f64, form: CdForm) -> Result<Complex> {
    let w = CircleWeight::new(s)?;
    let sw = (w.eval(tau)? * w.eval(theta)?).sqrt();
    let zt = Complex::from_polar(1.0, tau);
    let zh = Complex::from_polar(1.0, theta);
    match form {
        CdForm::Sum => {
            let a = orthonormal_table(s, n, zt);
            let b = orthonormal_table(s, n, zh);
            Ok(a.iter().zip(&b).fold(ZERO, |acc, (p, q)| acc + p * q.conj()) * sw)
        }
        CdForm::Ratio => {
            if tau == theta {
                return Err(Error::Singularity("ratio form of the CD kernel on the diagonal"));
            }
            let p = MonicPolynomial::new(s, n)?;
            let num = p.eval_orthonormal_reversed(zh).conj() * p.eval_orthonormal_reversed(zt)
                - p.eval_orthonormal(zh).conj() * p.eval_orthonormal(zt);
            // 1 − e^{ih} = −2i sin(h/2) e^{ih/2}
            let h = tau - theta;
            let den = Complex::from_polar(2.0 * (0.5 * h).sin(), 0.5 * h) * Complex::new(0.0, -1.0);
            Ok(num / den * sw)
        }
    }
}

/// (1/n)·K_n(e^{ix/n}, e^{iy/n}).
pub fn scaled_cd(s: &SpectralParameter, n: usize, x: f64, y: f64) -> Result<Complex> {
    check_scaled_range(n, &[x, y])?;
    let nf = n as f64;
    let form = if x == y { CdForm::Sum } else { CdForm::Ratio };
    Ok(cd_kernel(s, n, x / nf, y / nf, form)? / nf)
}

/// (1/n)·K_n(e^{ix_i/n}, e^{ix_j/n}) on all pairs of a grid, by the sum form with
/// one table of φ_j per grid point.
pub fn scaled_cd_matrix(s: &SpectralParameter, n: usize, xs: &[f64]) -> Result<DMatrix<Complex>> {
    check_scaled_range(n, xs)?;
    let nf = n as f64;
    let w = CircleWeight::new(s)?;
    let mut tables = Vec::with_capacity(xs.len());
    let mut roots = Vec::with_capacity(xs.len());
    for &x in xs {
        tables.push(orthonormal_table(s, n, Complex::from_polar(1.0, x / nf)));
        roots.push(w.eval(x / nf)?.sqrt());
    }
    let m = xs.len();
    let mut out = DMatrix::from_element(m, m, ZERO);
    for i in 0..m {
        for j in i..m {
            let sum = tables[i].iter().zip(&tables[j]).fold(ZERO, |acc, (p, q)| acc + p * q.conj());
            let v = sum * (roots[i] * roots[j] / nf);
            out[(i, j)] = v;
            out[(j, i)] = v.conj();
        }
    }
    Ok(out)
}

fn check_scaled_range(n: usize, xs: &[f64]) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("scaled CD kernel needs n >= 1"));
    }
    if xs.iter().any(|x| !(x.abs() < PI * n as f64)) {
        return Err(Error::Domain("scaled CD kernel needs |x| < pi n"));
    }
    Ok(())
}

/// conj T_s^n(y, x) = [nx]^{−i Im s}·√(w_s(e^{iy/n}))·φ_{[nx]}(e^{iy/n}), x > 0.
pub fn discrete_transform_kernel(s: &SpectralParameter, n: usize, x: f64, y: f64) -> Result<Complex> {
    if !(x > 0.0) {
        return Err(Error::Domain("discrete transform kernel needs x > 0"));
    }
    let nf = n as f64;
    let theta = y / nf;
    let m = (nf * x).floor() as usize;
    let phase = if m == 0 { ONE } else { Complex::from_polar(1.0, -s.s().im * (m as f64).ln()) };
    let root = weight(s, theta)?.sqrt();
    Ok(phase * root * orthonormal_phi(s, m, Complex::from_polar(1.0, theta))?)
}

/// Split rule on (−π, 0) ∪ (0, π) with Gauss–Jacobi exponent 2Re s at θ = 0,
/// `nodes` split evenly between the halves.
pub fn circle_rule(s: &SpectralParameter, nodes: usize) -> Result<QuadratureRule> {
    let half = nodes / 2;
    let a = 2.0 * s.s().re;
    let right = QuadratureRule::gauss_jacobi(half, a, 0.0, 0.0, PI)?;
    right.reflected().join(&right)
}

/// G_{jk} = ∫ φ_j conj φ_k w_s dθ for j, k < n on the given θ rule.
pub fn orthogonality_gram(s: &SpectralParameter, n: usize, theta_rule: &QuadratureRule) -> Result<DMatrix<Complex>> {
    let w = CircleWeight::new(s)?;
    let mut gram = DMatrix::from_element(n, n, ZERO);
    for (&t, &q) in theta_rule.nodes().iter().zip(theta_rule.weights()) {
        let wt = w.eval(t)? * q;
        let phis = orthonormal_table(s, n, Complex::from_polar(1.0, t));
        for j in 0..n {
            for k in 0..n {
                gram[(j, k)] += phis[j] * phis[k].conj() * wt;
            }
        }
    }
    Ok(gram)
}

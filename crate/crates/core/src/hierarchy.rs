//! The filtration H^{(s,n)} of the generalized Paley–Wiener space and the
//! one-dimensional layers L^{(s,n)} between consecutive levels.
//!
//! L^{(s,n)} is spanned by ψ*T_s*(𝕀_{[0,1]} t^{s} p_n) where p_n is the
//! orthonormal polynomial for t^{2Re s}dt on [0,1]. f = ρ·h_f with
//! h_f(x) = ∫₀¹ e^{ixt} Z_{s̄}(−xt) t^{s̄} g(t) dt, up to 1/√(2π), and h_f vanishes
//! to order n exactly when ∫ t^{k} t^{s̄} g = 0 for k < n. For g = t^{s} p_n these
//! are the weighted moments ∫ t^{k+2Re s} p_n, which vanish by construction.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dd::Dd;
use crate::kernel::SpectralParameter;
use crate::quadrature::{QuadratureRule, WindowGrid};
use crate::special_fn::{gamma_ratio, hyp2f1_terminating, Confluent, EvalConfig};
use crate::transform::adjoint;
use crate::{Complex, Error, Result};

/// Highest degree the monomial Gram–Schmidt supports. The moment matrix is a
/// shifted Hilbert matrix; at degree 16 its condition number is ~1e22, which
/// double-double arithmetic still resolves to ~1e-10.
pub const MAX_DEGREE: usize = 16;

/// Nodes per panel in the t-quadrature of the basis functions.
const PANEL_NODES: usize = 16;

/// Fit window points for the vanishing order.
const FIT_POINTS: usize = 40;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Orthonormal polynomials for t^{2Re s}dt on [0,1], as double-double
/// monomial coefficients with positive leading coefficient.
#[derive(Debug, Clone)]
pub struct WeightedPolynomialBasis {
    exponent: f64,
    coeffs: Vec<Vec<Dd>>,
}

impl WeightedPolynomialBasis {
    /// Degrees 0..=max_degree by modified Gram–Schmidt on 1, t, t², … with the
    /// exact moments ∫₀¹ t^{a+m} dt = 1/(a+m+1), each vector orthogonalized twice.
    pub fn new(s: &SpectralParameter, max_degree: usize) -> Result<Self> {
        if max_degree > MAX_DEGREE {
            return Err(Error::Degree { requested: max_degree, max: MAX_DEGREE });
        }
        let a = 2.0 * s.s().re;
        let moments: Vec<Dd> = (0..=2 * max_degree)
            .map(|m| Dd::ONE / (Dd::from(a) + Dd::from((m + 1) as f64)))
            .collect();
        let inner = |p: &[Dd], q: &[Dd]| {
            let mut acc = Dd::ZERO;
            for (i, &pi) in p.iter().enumerate() {
                for (j, &qj) in q.iter().enumerate() {
                    acc = acc + pi * qj * moments[i + j];
                }
            }
            acc
        };
        let mut coeffs: Vec<Vec<Dd>> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut v = alloc::vec![Dd::ZERO; k + 1];
            v[k] = Dd::ONE;
            for _ in 0..2 {
                for q in &coeffs {
                    let proj = inner(&v, q);
                    for (vi, &qi) in v.iter_mut().zip(q) {
                        *vi = *vi - proj * qi;
                    }
                }
            }
            let norm = inner(&v, &v).sqrt();
            for vi in v.iter_mut() {
                *vi = *vi / norm;
            }
            coeffs.push(v);
        }
        Ok(WeightedPolynomialBasis { exponent: a, coeffs })
    }

    /// The weight exponent 2Re s.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn poly(&self, n: usize) -> Result<&[Dd]> {
        self.coeffs
            .get(n)
            .map(|v| v.as_slice())
            .ok_or(Error::Degree { requested: n, max: self.max_degree() })
    }

    /// Monomial coefficients of p_n, rounded to f64.
    pub fn coefficients(&self, n: usize) -> Result<Vec<f64>> {
        Ok(self.poly(n)?.iter().map(|c| c.to_f64()).collect())
    }

    /// p_n(t), Horner in double-double (the coefficients alternate in sign and
    /// grow like binomials).
    pub fn eval(&self, n: usize, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Domain("orthonormal polynomial needs 0 <= t <= 1"));
        }
        let td = Dd::from(t);
        Ok(self.poly(n)?.iter().rev().fold(Dd::ZERO, |acc, &c| acc * td + c).to_f64())
    }

    /// ∫₀¹ t^{k+2Re s} p_n(t) dt from the exact moments.
    pub fn weighted_moment(&self, n: usize, k: usize) -> Result<f64> {
        let a = Dd::from(self.exponent);
        let acc = self.poly(n)?.iter().enumerate().fold(Dd::ZERO, |acc, (j, &c)| {
            acc + c / (a + Dd::from((j + k + 1) as f64))
        });
        Ok(acc.to_f64())
    }
}

pub fn jacobi_orthonormal(s: &SpectralParameter, n: usize, t: f64) -> Result<f64> {
    WeightedPolynomialBasis::new(s, n)?.eval(n, t)
}

/// |∫₀¹ t^{k−1} t^{2Re s} p_n(t) dt|; zero for 1 ≤ k ≤ n.
pub fn moment_annihilation(s: &SpectralParameter, n: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("moment index k starts at 1"));
    }
    Ok(WeightedPolynomialBasis::new(s, n)?.weighted_moment(n, k - 1)?.abs())
}

/// ∫₀¹ t^{2Re s} ₂F₁(−n, n+1+2Re s; 1; −t) dt. If the printed argument −t
/// gave the orthogonal polynomial this would vanish for n ≥ 1; at Re s = 0,
/// n = 1 the integrand is 1 + 2t and the integral is 2.
pub fn printed_argument_mean(s: &SpectralParameter, n: usize) -> Result<f64> {
    let a = 2.0 * s.s().re;
    let rule = QuadratureRule::gauss_jacobi(n + 2, a, 0.0, 0.0, 1.0)?;
    let (b, c) = (Complex::new(n as f64 + 1.0 + a, 0.0), Complex::new(1.0, 0.0));
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        acc += w * hyp2f1_terminating(n, b, c, Complex::new(-t, 0.0))?.re;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisRoute {
    /// conj ψ(x)·(T_s* t^{s}p_n)(x).
    Adjoint,
    /// |x|^{Re s}e^{−(π/2)Im s·sgn x}∫₀¹e^{ixt}₁F₁(s;1+2Re s;−ixt) t^{2Re s} ₂F₁(−n,n+1+2Re s;1;1−t)dt.
    ClosedForm,
}

/// A spanning function of L^{(s,n)}, valid for |x| up to a fixed bandwidth.
#[derive(Debug, Clone)]
pub struct BasisFunction {
    s: SpectralParameter,
    n: usize,
    route: BasisRoute,
    bandwidth: f64,
    rule: QuadratureRule,
    g: Vec<Complex>,
    m: Option<Confluent>,
}

impl BasisFunction {
    pub fn new(s: &SpectralParameter, n: usize, route: BasisRoute, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) || !bandwidth.is_finite() {
            return Err(Error::Domain("basis bandwidth must be positive"));
        }
        let sv = s.s();
        let a = 2.0 * sv.re;
        // two periods of e^{ixt} per 16-node panel
        let panels = (bandwidth / (4.0 * PI)).ceil().max(2.0) as usize;
        let rule = QuadratureRule::composite(panels, PANEL_NODES, 0.0, 1.0, a)?;
        let (g, m) = match route {
            BasisRoute::Adjoint => {
                let basis = WeightedPolynomialBasis::new(s, n)?;
                let g = rule
                    .nodes()
                    .iter()
                    .map(|&t| Ok(t_power(sv, t) * basis.eval(n, t)?))
                    .collect::<Result<Vec<_>>>()?;
                (g, None)
            }
            BasisRoute::ClosedForm => {
                let b2 = Complex::new(n as f64 + 1.0 + a, 0.0);
                let one = Complex::new(1.0, 0.0);
                let g = rule
                    .nodes()
                    .iter()
                    .map(|&t| Ok(t.powf(a) * hyp2f1_terminating(n, b2, one, Complex::new(1.0 - t, 0.0))?))
                    .collect::<Result<Vec<_>>>()?;
                let m = Confluent::new(sv, Complex::new(1.0 + a, 0.0), EvalConfig::default())?;
                (g, Some(m))
            }
        };
        Ok(BasisFunction { s: s.clone(), n, route, bandwidth, rule, g, m })
    }

    pub fn index(&self) -> usize {
        self.n
    }

    pub fn route(&self) -> BasisRoute {
        self.route
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn sample(&self, xs: &[f64]) -> Result<Vec<Complex>> {
        if xs.iter().any(|x| !(x.abs() <= self.bandwidth)) {
            return Err(Error::Domain("sample point beyond the basis bandwidth"));
        }
        if xs.contains(&0.0) {
            // |x|^{Re s} kills the origin when Re s > 0; otherwise the phase of ψ is undefined there
            if self.s.s().re <= 0.0 {
                return Err(Error::Singularity("basis functions with Re s <= 0 are sampled away from x = 0"));
            }
            let rest: Vec<f64> = xs.iter().copied().filter(|&x| x != 0.0).collect();
            let mut vals = self.sample(&rest)?.into_iter();
            return Ok(xs.iter().map(|&x| if x == 0.0 { ZERO } else { vals.next().unwrap_or(ZERO) }).collect());
        }
        match (&self.route, &self.m) {
            (BasisRoute::Adjoint, _) => {
                let raw = adjoint(&self.s, &self.g, &self.rule, xs)?;
                xs.iter().zip(raw).map(|(&x, v)| Ok(self.s.psi(x)?.conj() * v)).collect()
            }
            (BasisRoute::ClosedForm, Some(m)) => xs
                .iter()
                .map(|&x| {
                    let sv = self.s.s();
                    let pre = (sv.re * x.abs().ln() - 0.5 * PI * sv.im * x.signum()).exp();
                    let mut acc = ZERO;
                    for ((&t, &w), &g) in self.rule.nodes().iter().zip(self.rule.weights()).zip(&self.g) {
                        let u = x * t;
                        acc += Complex::from_polar(w, u) * m.eval(Complex::new(0.0, -u))? * g;
                    }
                    Ok(acc * pre)
                })
                .collect(),
            (BasisRoute::ClosedForm, None) => unreachable!("closed form always carries its 1F1"),
        }
    }

    pub fn eval(&self, x: f64) -> Result<Complex> {
        Ok(self.sample(&[x])?[0])
    }
}

/// t^{s} for t ≥ 0 (0 at t = 0 when Re s > 0).
fn t_power(s: Complex, t: f64) -> Complex {
    if t == 0.0 {
        return ZERO;
    }
    Complex::from_polar(t.powf(s.re), s.im * t.ln())
}

pub fn basis_l_adjoint_route(s: &SpectralParameter, n: usize, xs: &[f64]) -> Result<(BasisFunction, Vec<Complex>)> {
    basis_l(s, n, xs, BasisRoute::Adjoint)
}

pub fn basis_l_closed_form(s: &SpectralParameter, n: usize, xs: &[f64]) -> Result<(BasisFunction, Vec<Complex>)> {
    basis_l(s, n, xs, BasisRoute::ClosedForm)
}

fn basis_l(s: &SpectralParameter, n: usize, xs: &[f64], route: BasisRoute) -> Result<(BasisFunction, Vec<Complex>)> {
    let bw = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let f = BasisFunction::new(s, n, route, bw.max(1.0))?;
    let v = f.sample(xs)?;
    Ok((f, v))
}

/// G_{jk} = Σ_x w(x) L_j(x) conj L_k(x) over the window, adjoint route.
pub fn gram_of_basis(s: &SpectralParameter, n: usize, window: &WindowGrid) -> Result<DMatrix<Complex>> {
    let xs = window.nodes();
    let samples = (0..n)
        .map(|j| Ok(basis_l_adjoint_route(s, j, xs)?.1))
        .collect::<Result<Vec<_>>>()?;
    let mut g = DMatrix::from_element(n, n, ZERO);
    for j in 0..n {
        for k in j..n {
            let v: Complex = samples[j]
                .iter()
                .zip(&samples[k])
                .zip(window.weights())
                .map(|((a, b), &w)| a * b.conj() * w)
                .sum();
            g[(j, k)] = v;
            g[(k, j)] = v.conj();
        }
    }
    Ok(g)
}

/// max_{j≠k} |G_jk| / √(G_jj G_kk).
pub fn normalized_off_diagonal(g: &DMatrix<Complex>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..g.nrows() {
        for k in 0..g.ncols() {
            if j != k {
                worst = worst.max(g[(j, k)].norm() / (g[(j, j)].re * g[(k, k)].re).sqrt());
            }
        }
    }
    worst
}

/// h(x) = L_{(s,n)}(x)/ρ(x)·√(2π) from its Taylor series
/// Σ_k ℓ_k m_k x^k, where e^{iz}Z_{s̄}(−z) = Γ(1+s̄)/Γ(1+2Re s)·₁F₁(1+s̄; 1+2Re s; iz) = Σ ℓ_k z^k
/// and m_k = ∫₀¹ t^{k+2Re s} p_n(t) dt. Needs |x| ≤ 1.
pub fn entire_part(s: &SpectralParameter, basis: &WeightedPolynomialBasis, n: usize, x: f64) -> Result<Complex> {
    if !(x.abs() <= 1.0) {
        return Err(Error::Domain("Taylor route for the entire part needs |x| <= 1"));
    }
    let sb = s.s().conj();
    let b = 1.0 + 2.0 * s.s().re;
    let mut ell = gamma_ratio(&[sb + 1.0], &[Complex::new(b, 0.0)])?;
    let mut xk = 1.0;
    let mut acc = ZERO;
    let terms = n + 40;
    for k in 0..terms {
        acc += ell * basis.weighted_moment(n, k)? * xk;
        let kf = k as f64;
        ell *= Complex::new(0.0, 1.0) * (sb + 1.0 + kf) / ((b + kf) * (kf + 1.0));
        xk *= x;
    }
    Ok(acc)
}

/// Least-squares slope of log|L_{(s,n)}/ρ| against log x at FIT_POINTS
/// log-spaced points of [lo, hi].
pub fn vanishing_order(s: &SpectralParameter, n: usize, lo: f64, hi: f64) -> Result<f64> {
    if !(lo > 0.0 && hi > lo && hi <= 0.5) {
        return Err(Error::Domain("fit window must lie in (0, 0.5]"));
    }
    let basis = WeightedPolynomialBasis::new(s, n)?;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    let step = (hi / lo).ln() / (FIT_POINTS - 1) as f64;
    for i in 0..FIT_POINTS {
        let lx = lo.ln() + step * i as f64;
        let h = entire_part(s, &basis, n, lx.exp())?.norm();
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::Fit("entire part underflowed in the fit window"));
        }
        let ly = h.ln();
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let m = FIT_POINTS as f64;
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(re: f64, im: f64) -> SpectralParameter {
        SpectralParameter::new(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn legendre_at_re_s_zero() {
        let s = sp(0.0, 0.4);
        for &t in &[0.0, 0.3, 1.0] {
            assert!((jacobi_orthonormal(&s, 0, t).unwrap() - 1.0).abs() < 1e-15);
            let want = 3f64.sqrt() * (2.0 * t - 1.0);
            assert!((jacobi_orthonormal(&s, 1, t).unwrap() - want).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            WeightedPolynomialBasis::new(&sp(0.5, 0.0), MAX_DEGREE + 1),
            Err(Error::Degree { .. })
        ));
    }

    #[test]
    fn taylor_route_matches_quadrature() {
        let s = sp(0.3, 0.7);
        let basis = WeightedPolynomialBasis::new(&s, 2).unwrap();
        let f = BasisFunction::new(&s, 2, BasisRoute::Adjoint, 1.0).unwrap();
        for &x in &[0.4, -0.9] {
            let l = f.eval(x).unwrap();
            let h = entire_part(&s, &basis, 2, x).unwrap();
            let want = l * (2.0 * PI).sqrt() / s.rho(x).unwrap();
            assert!((h - want).norm() < 1e-12 * want.norm(), "{x}: {h} vs {want}");
        }
    }
}

//! Discretized T_s, its adjoint, and numerical checks of the diagonalization
//! identity, the half-line projector identity and the unit-interval norms.
//!
//! Fourier convention: f̂(ω) = (1/2π)∫e^{−iωx}f(x)dx and F = √(2π)·f̂, so
//! that F coincides with T_0.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::kernel::{sine_kernel, KernelPoint, SpectralParameter};
use crate::quadrature::{QuadratureRule, RuleKind, WindowGrid};
use crate::{Complex, Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Nodes per Gauss–Legendre panel in oscillatory inner integrals.
const PANEL_NODES: usize = 16;

/// Geometric refinements of the panel touching a |t|^s endpoint.
const GRADING_LEVELS: usize = 12;

/// A dense operator sampled on quadrature grids.
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub matrix: DMatrix<Complex>,
    pub row_grid: QuadratureRule,
    pub col_grid: QuadratureRule,
}

impl DiscreteOperator {
    /// Largest |M_ij − conj M_ji|.
    pub fn hermitian_defect(&self) -> f64 {
        let m = &self.matrix;
        let mut worst = 0.0f64;
        for i in 0..m.nrows() {
            for j in 0..m.ncols().min(m.nrows()) {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues of D^{1/2} M D^{1/2} with D the quadrature weights.
    pub fn nystrom_eigenvalues(&self) -> Result<Vec<f64>> {
        if self.row_grid != self.col_grid {
            return Err(Error::Domain("Nystrom spectrum needs matching row and column grids"));
        }
        let sw: Vec<f64> = self.row_grid.weights().iter().map(|w| w.sqrt()).collect();
        let n = sw.len();
        let sym = DMatrix::from_fn(n, n, |i, j| {
            let v = self.matrix[(i, j)] * (sw[i] * sw[j]);
            if i == j {
                Complex::new(v.re, 0.0)
            } else {
                0.5 * (v + (self.matrix[(j, i)] * (sw[i] * sw[j])).conj())
            }
        });
        let eig = sym.symmetric_eigen();
        let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::EigFailure);
        }
        Ok(vals)
    }
}

fn gl_reference() -> Result<QuadratureRule> {
    QuadratureRule::gauss_legendre(PANEL_NODES, 0.0, 1.0)
}

/// Composite Gauss–Legendre rule on [lo, hi] resolving e^{iκt} for |κ| ≤ kappa.
pub fn oscillatory_rule(lo: f64, hi: f64, kappa: f64) -> Result<QuadratureRule> {
    let periods = kappa.abs() * (hi - lo) / (2.0 * PI);
    let panels = (periods / 2.0).ceil().max(1.0) as usize;
    QuadratureRule::composite(panels, PANEL_NODES, lo, hi, 0.0)
}

/// A_ij = T_s(ω_i x_j).
pub fn tcal_matrix(s: &SpectralParameter, omegas: &[f64], xs: &[f64]) -> Result<DMatrix<Complex>> {
    let mut m = DMatrix::from_element(omegas.len(), xs.len(), ZERO);
    for (i, &w) in omegas.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            m[(i, j)] = s.tcal(w * x)?;
        }
    }
    Ok(m)
}

/// T_s f(ω) = ∫ T_s(ωx) f(x) dx over the window.
pub fn forward(s: &SpectralParameter, f: &[Complex], window: &WindowGrid, omegas: &[f64]) -> Result<Vec<Complex>> {
    if f.len() != window.len() {
        return Err(Error::Domain("sample count must match the window"));
    }
    let (xs, ws) = (window.nodes(), window.weights());
    omegas
        .iter()
        .map(|&w| {
            if w == 0.0 && s.s().re <= 0.0 {
                return Err(Error::Singularity("forward transform at omega = 0"));
            }
            let mut acc = ZERO;
            for j in 0..xs.len() {
                if f[j] != ZERO {
                    acc += s.tcal(w * xs[j])? * f[j] * ws[j];
                }
            }
            Ok(acc)
        })
        .collect()
}

/// (T_s* g)(x) = ∫ conj T_s(xt) g(t) dt over the rule.
pub fn adjoint(s: &SpectralParameter, g: &[Complex], rule: &QuadratureRule, xs: &[f64]) -> Result<Vec<Complex>> {
    adjoint_impl(g, rule, xs, |u| Ok(s.tcal(u)?.conj()))
}

/// The same adjoint through T_s* = J T_{s̄}: (T_{s̄} g)(−x).
pub fn adjoint_reflected(s: &SpectralParameter, g: &[Complex], rule: &QuadratureRule, xs: &[f64]) -> Result<Vec<Complex>> {
    let sbar = SpectralParameter::new(s.s().conj())?;
    adjoint_impl(g, rule, xs, |u| sbar.tcal(-u))
}

fn adjoint_impl<F>(g: &[Complex], rule: &QuadratureRule, xs: &[f64], mut kernel: F) -> Result<Vec<Complex>>
where
    F: FnMut(f64) -> Result<Complex>,
{
    if g.len() != rule.len() {
        return Err(Error::Domain("sample count must match the rule"));
    }
    let (ts, ws) = (rule.nodes(), rule.weights());
    xs.iter()
        .map(|&x| {
            let mut acc = ZERO;
            for k in 0..ts.len() {
                if g[k] != ZERO {
                    acc += kernel(x * ts[k])? * g[k] * ws[k];
                }
            }
            Ok(acc)
        })
        .collect()
}

fn check_unit_interval_rule(s: &SpectralParameter, rule: &QuadratureRule) -> Result<()> {
    if rule.domain() != (0.0, 1.0) {
        return Err(Error::Domain("rule must live on [0, 1]"));
    }
    let alpha = 2.0 * s.s().re;
    let ok = match rule.kind() {
        RuleKind::GaussJacobi { left, right } => (left - alpha).abs() < 1e-12 && right == 0.0,
        RuleKind::GaussLegendre => alpha == 0.0,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain("rule must be Gauss-Jacobi with exponent 2 Re s at t = 0"))
    }
}

/// |∫₀¹ conj T_s(xt) T_s(yt) dt − ψ(x) K^s(x,y) conj ψ(y)|.
pub fn verify_cd_identity(s: &SpectralParameter, x: f64, y: f64, rule: &QuadratureRule) -> Result<f64> {
    check_unit_interval_rule(s, rule)?;
    let lhs = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&t, &w)| Ok(s.tcal(x * t)?.conj() * s.tcal(y * t)? * w))
        .sum::<Result<Complex>>()?;
    let rhs = s.psi(x)? * s.kernel(x, y)? * s.psi(y)?.conj();
    Ok((lhs - rhs).norm())
}

/// Matrix of T_s* 𝕀_{[0,1]} T_s on the window, by quadrature over [0,1].
pub fn projector_unit_interval(s: &SpectralParameter, window: &WindowGrid, rule: &QuadratureRule) -> Result<DiscreteOperator> {
    check_unit_interval_rule(s, rule)?;
    let xs = window.nodes();
    let a = tcal_matrix(s, rule.nodes(), xs)?;
    let n = xs.len();
    let mut m = DMatrix::from_element(n, n, ZERO);
    for i in 0..n {
        for j in i..n {
            let mut acc = ZERO;
            for (k, &w) in rule.weights().iter().enumerate() {
                acc += a[(k, i)].conj() * a[(k, j)] * w;
            }
            m[(i, j)] = acc;
            m[(j, i)] = acc.conj();
        }
    }
    Ok(DiscreteOperator { matrix: m, row_grid: window.rule().clone(), col_grid: window.rule().clone() })
}

/// [ψ(x_i) K^s(x_i, x_j) conj ψ(x_j)].
pub fn gauged_kernel_matrix(s: &SpectralParameter, xs: &[f64]) -> Result<DMatrix<Complex>> {
    let pts: Vec<KernelPoint> = xs.iter().map(|&x| s.point(x)).collect::<Result<_>>()?;
    let psi: Vec<Complex> = xs.iter().map(|&x| s.psi(x)).collect::<Result<_>>()?;
    let n = xs.len();
    let mut m = DMatrix::from_element(n, n, ZERO);
    for i in 0..n {
        for j in i..n {
            let v = psi[i] * s.kernel_at(&pts[i], &pts[j])? * psi[j].conj();
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    Ok(m)
}

/// ‖T_s T_s* g − g‖ / ‖g‖ measured on `eval_rule`, with the intermediate
/// function T_s* g sampled on the window.
pub fn roundtrip_relative_error<G>(
    s: &SpectralParameter,
    g: G,
    g_rule: &QuadratureRule,
    eval_rule: &QuadratureRule,
    window: &WindowGrid,
) -> Result<f64>
where
    G: Fn(f64) -> Complex,
{
    let g_samples: Vec<Complex> = g_rule.nodes().iter().map(|&t| g(t)).collect();
    let q = adjoint(s, &g_samples, g_rule, window.nodes())?;
    let back = forward(s, &q, window, eval_rule.nodes())?;
    let mut err = 0.0;
    let mut norm = 0.0;
    for ((&t, &w), b) in eval_rule.nodes().iter().zip(eval_rule.weights()).zip(back) {
        let gt = g(t);
        err += w * (b - gt).norm_sqr();
        norm += w * gt.norm_sqr();
    }
    if norm == 0.0 {
        return Err(Error::Domain("roundtrip test function vanishes on the evaluation rule"));
    }
    Ok((err / norm).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    Positive,
    Negative,
}

impl HalfLine {
    fn sign(self) -> f64 {
        match self {
            HalfLine::Positive => 1.0,
            HalfLine::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PwResidual {
    pub residual: f64,
    pub cutoff: f64,
    pub half_width: f64,
}

/// Input rules for the truncated projectors on [−support, support]: the
/// first carries Jacobi panels at 0 for the |y|^{Re s} factor of the T_s
/// side, the second is plain Gauss–Legendre for the Fourier side. Both
/// resolve oscillation at frequency `cutoff`.
pub fn pw_input_rules(s: &SpectralParameter, support: f64, cutoff: f64) -> Result<(QuadratureRule, QuadratureRule)> {
    if !(support > 0.0) || !(cutoff > 0.0) {
        return Err(Error::Domain("support and cutoff must be positive"));
    }
    let periods = cutoff * support / (2.0 * PI);
    let panels = (periods / 2.0).ceil().max(2.0) as usize;
    let half_s = QuadratureRule::composite_graded(panels, PANEL_NODES, 0.0, support, s.s().re, GRADING_LEVELS)?;
    let half_f = QuadratureRule::composite(panels, PANEL_NODES, 0.0, support, 0.0)?;
    Ok((half_s.reflected().join(&half_s)?, half_f.reflected().join(&half_f)?))
}

/// ((T_s* 𝕀 T_s − F* 𝕀 F) f)(x_i) with 𝕀 the indicator of [0, L] or
/// [−L, 0], through the exact truncated kernel
/// ∫₀^L conj T_s(xω) T_s(yω) dω = L ψ(Lx) K^s(Lx, Ly) conj ψ(Ly).
pub fn pw_projector_apply<F>(
    s: &SpectralParameter,
    f: F,
    rules: &(QuadratureRule, QuadratureRule),
    xs: &[f64],
    cutoff: f64,
    side: HalfLine,
) -> Result<Vec<Complex>>
where
    F: Fn(f64) -> Complex,
{
    let sg = side.sign() * cutoff;
    let (rule_s, rule_f) = rules;
    let mut ys = Vec::with_capacity(rule_s.len());
    for (&y, &w) in rule_s.nodes().iter().zip(rule_s.weights()) {
        let fy = f(y);
        if fy != ZERO {
            let v = sg * y;
            ys.push((s.point(v)?, s.psi(v)?.conj() * fy * w));
        }
    }
    let fs: Vec<(f64, Complex)> = rule_f
        .nodes()
        .iter()
        .zip(rule_f.weights())
        .map(|(&y, &w)| (sg * y, f(y) * w))
        .filter(|p| p.1 != ZERO)
        .collect();
    xs.iter()
        .map(|&x| {
            let u = sg * x;
            let p = s.point(u)?;
            let mut acc_s = ZERO;
            for (q, c) in &ys {
                acc_s += s.kernel_at(&p, q)? * *c;
            }
            let mut acc_f = ZERO;
            for &(v, c) in &fs {
                acc_f += sine_kernel(u, v) * c;
            }
            Ok((s.psi(u)? * acc_s - acc_f) * cutoff)
        })
        .collect()
}

/// The same operator by direct quadrature in ω over `omega_rule` on [0, L]
/// (mirrored for the negative half-line). Small-scale cross-check.
pub fn pw_projector_apply_direct<F>(
    s: &SpectralParameter,
    f: F,
    rules: &(QuadratureRule, QuadratureRule),
    xs: &[f64],
    omega_rule: &QuadratureRule,
    side: HalfLine,
) -> Result<Vec<Complex>>
where
    F: Fn(f64) -> Complex,
{
    let sg = side.sign();
    let (rule_s, rule_f) = rules;
    let weighted = |r: &QuadratureRule| -> Vec<Complex> { r.nodes().iter().zip(r.weights()).map(|(&y, &w)| f(y) * w).collect() };
    let (fy_s, fy_f) = (weighted(rule_s), weighted(rule_f));
    let mut spec_s = Vec::with_capacity(omega_rule.len());
    let mut spec_f = Vec::with_capacity(omega_rule.len());
    for &om in omega_rule.nodes() {
        let w = sg * om;
        let mut a = ZERO;
        let mut b = ZERO;
        for (&y, &c) in rule_s.nodes().iter().zip(&fy_s) {
            a += s.tcal(w * y)? * c;
        }
        for (&y, &c) in rule_f.nodes().iter().zip(&fy_f) {
            b += Complex::from_polar(1.0, -w * y) * c;
        }
        spec_s.push(a);
        spec_f.push(b / (2.0 * PI).sqrt());
    }
    xs.iter()
        .map(|&x| {
            let mut acc = ZERO;
            for (k, (&om, &wk)) in omega_rule.nodes().iter().zip(omega_rule.weights()).enumerate() {
                let w = sg * om;
                let four = Complex::from_polar(1.0 / (2.0 * PI).sqrt(), w * x);
                acc += (s.tcal(w * x)?.conj() * spec_s[k] - four * spec_f[k]) * wk;
            }
            Ok(acc)
        })
        .collect()
}

/// ‖(T_s* 𝕀 T_s − F* 𝕀 F) f‖₂ over the window, 𝕀 = indicator of [0, L]
/// (or [−L, 0]); f must be negligible outside [−support, support].
pub fn pw_projector_residual<F>(
    s: &SpectralParameter,
    f: F,
    support: f64,
    window: &WindowGrid,
    cutoff: f64,
    side: HalfLine,
) -> Result<PwResidual>
where
    F: Fn(f64) -> Complex,
{
    let rules = pw_input_rules(s, support, cutoff)?;
    let out = pw_projector_apply(s, f, &rules, window.nodes(), cutoff, side)?;
    let r2: f64 = out.iter().zip(window.weights()).map(|(v, &w)| w * v.norm_sqr()).sum();
    Ok(PwResidual { residual: r2.sqrt(), cutoff, half_width: window.half_width() })
}

/// q = T_s* 𝕀_{[1/2,1]} sampled on the window.
pub fn hardy_probe(s: &SpectralParameter, window: &WindowGrid) -> Result<Vec<Complex>> {
    let rule = oscillatory_rule(0.5, 1.0, window.half_width())?;
    let ones = alloc::vec![Complex::new(1.0, 0.0); rule.len()];
    adjoint(s, &ones, &rule, window.nodes())
}

/// Share of the discrete Fourier energy of q at negative frequencies; the
/// zero-frequency bin is split evenly. Needs a midpoint window.
pub fn hardy_membership(q: &[Complex], window: &WindowGrid) -> Result<f64> {
    if window.rule().kind() != RuleKind::Uniform {
        return Err(Error::Domain("Hardy check needs a uniform midpoint window"));
    }
    let n = window.len();
    if q.len() != n {
        return Err(Error::Domain("sample count must match the window"));
    }
    let r = window.half_width();
    let (mut tail, mut total) = (0.0, 0.0);
    for (&x, v) in window.nodes().iter().zip(q) {
        total += v.norm_sqr();
        if x.abs() > 0.9 * r {
            tail += v.norm_sqr();
        }
    }
    if total == 0.0 {
        return Err(Error::Domain("Hardy check on a vanishing function"));
    }
    let fraction = tail / total;
    if fraction >= 0.1 {
        return Err(Error::TailMass { fraction });
    }
    let twiddle: Vec<Complex> = (0..n).map(|m| Complex::from_polar(1.0, -2.0 * PI * m as f64 / n as f64)).collect();
    let (mut neg, mut all) = (0.0, 0.0);
    let half = (n / 2) as i64;
    for k in -half..(n as i64 - half) {
        let kk = k.rem_euclid(n as i64) as usize;
        let mut acc = ZERO;
        let mut idx = 0usize;
        for v in q {
            acc += *v * twiddle[idx];
            idx += kk;
            if idx >= n {
                idx -= n;
            }
        }
        let e = acc.norm_sqr();
        all += e;
        if k < 0 {
            neg += e;
        } else if k == 0 {
            neg += 0.5 * e;
        }
    }
    Ok(neg / all)
}

/// ‖T_s 𝕀_{[n, n+1]}‖₂ restricted to the ω-window.
pub fn unit_interval_norm(s: &SpectralParameter, n: usize, window: &WindowGrid) -> Result<f64> {
    let reference = gl_reference()?;
    let lo = n as f64;
    let mut acc = 0.0;
    for (&om, &w) in window.nodes().iter().zip(window.weights()) {
        let periods = om.abs() / (2.0 * PI);
        let panels = (periods / 2.0).ceil().max(1.0) as usize;
        let h = 1.0 / panels as f64;
        let mut v = ZERO;
        for p in 0..panels {
            let a = lo + p as f64 * h;
            for (&t, &wt) in reference.nodes().iter().zip(reference.weights()) {
                v += s.tcal(om * (a + h * t))? * (wt * h);
            }
        }
        acc += w * v.norm_sqr();
    }
    Ok(acc.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(re: f64, im: f64) -> SpectralParameter {
        SpectralParameter::new(Complex::new(re, im)).unwrap()
    }

    #[test]
    fn rule_kind_is_enforced() {
        let s = sp(0.3, 0.0);
        let gl = QuadratureRule::gauss_legendre(32, 0.0, 1.0).unwrap();
        assert!(verify_cd_identity(&s, 1.0, 2.0, &gl).is_err());
        let gj = QuadratureRule::gauss_jacobi(32, 0.6, 0.0, 0.0, 1.0).unwrap();
        assert!(verify_cd_identity(&s, 1.0, 2.0, &gj).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_of_indicator_at_s_zero() {
        let s = sp(0.0, 0.0);
        let rule = QuadratureRule::gauss_legendre(40, 0.0, 1.0).unwrap();
        let ones = alloc::vec![Complex::new(1.0, 0.0); rule.len()];
        let xs = [-7.0, -0.5, 0.3, 4.0];
        let got = adjoint(&s, &ones, &rule, &xs).unwrap();
        for (x, g) in xs.iter().zip(got) {
            let want = (Complex::new(0.0, *x).exp() - 1.0) / (Complex::new(0.0, *x) * (2.0 * PI).sqrt());
            assert!((g - want).norm() < 1e-14);
        }
    }

    #[test]
    fn forward_of_indicator_at_s_zero() {
        let s = sp(0.0, 0.0);
        let w = WindowGrid::split_singular(1.0, 0.0, 1, 40).unwrap();
        let ones = alloc::vec![Complex::new(1.0, 0.0); w.len()];
        let om = [0.5, 3.0, -2.0];
        let got = forward(&s, &ones, &w, &om).unwrap();
        for (o, g) in om.iter().zip(got) {
            let want = (2.0 / PI).sqrt() * o.sin() / o;
            assert!((g - want).norm() < 1e-13);
        }
        assert!(forward(&s, &ones, &w, &[0.0]).is_err());
    }

    #[test]
    fn direct_and_kernel_projector_routes_agree() {
        let s = sp(0.4, 0.3);
        let cutoff = 3.0;
        let f = |y: f64| Complex::new((-y * y / 2.0).exp(), 0.0);
        let rules = pw_input_rules(&s, 9.0, cutoff).unwrap();
        let xs = [-2.5, -0.7, 0.4, 1.9];
        let a = pw_projector_apply(&s, f, &rules, &xs, cutoff, HalfLine::Positive).unwrap();
        let omega = QuadratureRule::composite_graded(12, 16, 0.0, cutoff, 0.8, 12).unwrap();
        let b = pw_projector_apply_direct(&s, f, &rules, &xs, &omega, HalfLine::Positive).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).norm() < 1e-7, "{u} vs {v}");
        }
    }
}

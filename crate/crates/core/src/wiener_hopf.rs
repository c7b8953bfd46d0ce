//! Wiener–Hopf operators W_f = 𝕀₊ F f F* 𝕀₊ and their T_s counterparts
//! G_f = 𝕀₊ T_s f T_s* 𝕀₊, discretized on a truncated half-line.
//!
//! With f(x) = ∫ f̂(ω) e^{iωx} dω, W_f is the integral operator with kernel
//! f̂(x − y) on the half-line, and G_f has kernel ∫ T_s(ωx) f(x) conj T_s(ω'x) dx.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
#[allow(unused_imports)]
use num_traits::Float;

use crate::kernel::SpectralParameter;
use crate::quadrature::{HalfLineGrid, QuadratureRule, WindowGrid};
use crate::transform::{tcal_matrix, DiscreteOperator};
use crate::{Complex, Error, Result};

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Gauss–Legendre nodes per panel for frequency integrals.
const PANEL_NODES: usize = 16;

/// How f̂ decays, which fixes the frequency range integrals are taken over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// f̂ vanishes outside [lo, hi].
    Compact { lo: f64, hi: f64 },
    /// f̂ is below double precision outside [−cutoff, cutoff].
    Rapid { cutoff: f64 },
    /// No certified decay; integrals are extended until they settle.
    Unknown,
}

/// A symbol f given through its Fourier transform f̂.
#[derive(Clone)]
pub struct SymbolFunction {
    fhat: Arc<dyn Fn(f64) -> Complex + Send + Sync>,
    decay: Decay,
}

impl core::fmt::Debug for SymbolFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("SymbolFunction").field("decay", &self.decay).finish_non_exhaustive()
    }
}

impl SymbolFunction {
    pub fn new<F>(fhat: F, decay: Decay) -> Self
    where
        F: Fn(f64) -> Complex + Send + Sync + 'static,
    {
        SymbolFunction { fhat: Arc::new(fhat), decay }
    }

    pub fn zero() -> Self {
        Self::new(|_| ZERO, Decay::Compact { lo: 0.0, hi: 0.0 })
    }

    /// f̂(ω) = e^{−ω²/σ²}·amplitude.
    pub fn gaussian(amplitude: f64, sigma: f64) -> Self {
        Self::new(move |w| Complex::new(amplitude * (-(w / sigma).powi(2)).exp(), 0.0), Decay::Rapid { cutoff: 9.0 * sigma })
    }

    /// A C^∞ bump exp(1 − 1/(1−u²)) on [lo, hi], u the rescaled coordinate.
    pub fn bump(lo: f64, hi: f64) -> Self {
        let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        Self::new(
            move |w| {
                let u = (w - c) / r;
                if u.abs() >= 1.0 {
                    ZERO
                } else {
                    Complex::new((1.0 - 1.0 / (1.0 - u * u)).exp(), 0.0)
                }
            },
            Decay::Compact { lo, hi },
        )
    }

    pub fn fhat(&self, omega: f64) -> Complex {
        (self.fhat)(omega)
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    /// The frequency interval outside which f̂ is zero or negligible.
    pub fn effective_support(&self) -> Option<(f64, f64)> {
        match self.decay {
            Decay::Compact { lo, hi } => Some((lo, hi)),
            Decay::Rapid { cutoff } => Some((-cutoff, cutoff)),
            Decay::Unknown => None,
        }
    }

    fn support_or_err(&self) -> Result<(f64, f64)> {
        self.effective_support().ok_or(Error::Domain("symbol needs a certified frequency support"))
    }

    /// f(x) = ∫ f̂(ω) e^{iωx} dω at each x.
    pub fn space_side(&self, xs: &[f64]) -> Result<Vec<Complex>> {
        let (lo, hi) = self.support_or_err()?;
        if hi <= lo {
            return Ok(alloc::vec![ZERO; xs.len()]);
        }
        xs.iter()
            .map(|&x| {
                let rule = frequency_rule(lo, hi, x.abs())?;
                Ok(rule.integrate_complex(|w| self.fhat(w) * Complex::from_polar(1.0, w * x)))
            })
            .collect()
    }

    /// The symbol f·g, with (fg)^ = f̂ * ĝ evaluated by quadrature over the support of f̂.
    pub fn product(&self, other: &SymbolFunction) -> Result<SymbolFunction> {
        let (a0, a1) = self.support_or_err()?;
        let (b0, b1) = other.support_or_err()?;
        let decay = match (self.decay, other.decay) {
            (Decay::Compact { .. }, Decay::Compact { .. }) => Decay::Compact { lo: a0 + b0, hi: a1 + b1 },
            _ => Decay::Rapid { cutoff: (a0 + b0).abs().max((a1 + b1).abs()) },
        };
        if a1 <= a0 || b1 <= b0 {
            return Ok(SymbolFunction::new(|_| ZERO, decay));
        }
        let rule = QuadratureRule::composite(8, PANEL_NODES, a0, a1, 0.0)?;
        let (f, g) = (self.clone(), other.clone());
        Ok(SymbolFunction::new(
            move |w| {
                if w < a0 + b0 || w > a1 + b1 {
                    return ZERO;
                }
                rule.integrate_complex(|a| f.fhat(a) * g.fhat(w - a))
            },
            decay,
        ))
    }
}

/// Composite Gauss–Legendre on [lo, hi] resolving e^{iωx} for the given |x|.
fn frequency_rule(lo: f64, hi: f64, x: f64) -> Result<QuadratureRule> {
    let periods = x * (hi - lo) / (2.0 * PI);
    let panels = (periods / 2.0).ceil().max(8.0) as usize;
    QuadratureRule::composite(panels, PANEL_NODES, lo, hi, 0.0)
}

/// f̂₊ = f̂·𝟙_{ω>0}, f̂₋ = f̂·𝟙_{ω<0}, with half of f̂(0) in each.
pub fn split_frequencies(f: &SymbolFunction) -> (SymbolFunction, SymbolFunction) {
    let half = |sign: f64| {
        let g = f.clone();
        move |w: f64| {
            if w == 0.0 {
                g.fhat(0.0) * 0.5
            } else if w * sign > 0.0 {
                g.fhat(w)
            } else {
                ZERO
            }
        }
    };
    let (plus, minus) = match f.decay {
        Decay::Compact { lo, hi } => (
            Decay::Compact { lo: lo.max(0.0), hi: hi.max(0.0) },
            Decay::Compact { lo: lo.min(0.0), hi: hi.min(0.0) },
        ),
        Decay::Rapid { cutoff } => (Decay::Compact { lo: 0.0, hi: cutoff }, Decay::Compact { lo: -cutoff, hi: 0.0 }),
        Decay::Unknown => (Decay::Unknown, Decay::Unknown),
    };
    (SymbolFunction::new(half(1.0), plus), SymbolFunction::new(half(-1.0), minus))
}

/// Which operator family a symbol is mapped to.
#[derive(Debug, Clone, Copy)]
pub enum Maker<'a> {
    /// W_f, kernel f̂(x − y).
    WienerHopf,
    /// G_f composed through T_s on a space-side window.
    G { s: &'a SpectralParameter, window: &'a WindowGrid },
}

/// Kernel of the maker's operator for f between two sets of half-line points.
pub fn kernel_block(f: &SymbolFunction, maker: Maker<'_>, rows: &[f64], cols: &[f64]) -> Result<DMatrix<Complex>> {
    match maker {
        Maker::WienerHopf => Ok(DMatrix::from_fn(rows.len(), cols.len(), |i, j| f.fhat(rows[i] - cols[j]))),
        Maker::G { s, window } => {
            let xs = window.nodes();
            let fx = f.space_side(xs)?;
            let a = tcal_matrix(s, rows, xs)?;
            let b = if rows == cols { a.clone() } else { tcal_matrix(s, cols, xs)? };
            let scaled = DMatrix::from_fn(rows.len(), xs.len(), |i, k| a[(i, k)] * fx[k] * window.weights()[k]);
            Ok(scaled * b.adjoint())
        }
    }
}

pub fn wiener_hopf_matrix(f: &SymbolFunction, grid: &HalfLineGrid) -> Result<DiscreteOperator> {
    operator(f, Maker::WienerHopf, grid)
}

pub fn g_matrix(f: &SymbolFunction, s: &SpectralParameter, grid: &HalfLineGrid, window: &WindowGrid) -> Result<DiscreteOperator> {
    operator(f, Maker::G { s, window }, grid)
}

pub fn operator(f: &SymbolFunction, maker: Maker<'_>, grid: &HalfLineGrid) -> Result<DiscreteOperator> {
    let m = kernel_block(f, maker, grid.nodes(), grid.nodes())?;
    Ok(DiscreteOperator { matrix: m, row_grid: grid.rule().clone(), col_grid: grid.rule().clone() })
}

/// D^{1/2} K D^{1/2}, so that operator products become matrix products.
fn symmetric_weighting(k: &DMatrix<Complex>, rw: &[f64], cw: &[f64]) -> DMatrix<Complex> {
    DMatrix::from_fn(k.nrows(), k.ncols(), |i, j| k[(i, j)] * (rw[i] * cw[j]).sqrt())
}

/// Largest singular value of the discretized M_{f₊f₋} − M_{f₋}M_{f₊}, restricted
/// to x, y ≤ L − margin where margin is the frequency reach of the two symbols.
/// Near x = L the truncated product misses intermediate points beyond L.
pub fn factorization_residual(
    f_plus: &SymbolFunction,
    f_minus: &SymbolFunction,
    grid: &HalfLineGrid,
    maker: Maker<'_>,
) -> Result<f64> {
    let (p0, p1) = f_plus.support_or_err()?;
    let (m0, m1) = f_minus.support_or_err()?;
    let margin = p0.abs().max(p1.abs()).max(m0.abs()).max(m1.abs());
    let keep: Vec<usize> = (0..grid.len()).filter(|&i| grid.nodes()[i] <= grid.cutoff() - margin).collect();
    if keep.is_empty() {
        return Err(Error::Domain("half-line cutoff shorter than the symbol reach"));
    }
    let w = grid.weights();
    let kp = symmetric_weighting(&operator(f_plus, maker, grid)?.matrix, w, w);
    let km = symmetric_weighting(&operator(f_minus, maker, grid)?.matrix, w, w);
    let prod = symmetric_weighting(&operator(&f_plus.product(f_minus)?, maker, grid)?.matrix, w, w);
    let full = prod - km * kp;
    let r = DMatrix::from_fn(keep.len(), keep.len(), |i, j| full[(keep[i], keep[j])]);
    let sv = r.singular_values();
    Ok(sv.iter().fold(0.0f64, |m, &v| m.max(v)))
}

/// Tr[M_{f₋}, M_{f₊}] by Mercer's theorem: the trace of 𝕀₊ M_{f₊} 𝕀₋ M_{f₋} 𝕀₊ as the
/// double quadrature Σ w_x w_y K₊(x, y) K₋(y, x) over x ∈ [0, L], y ∈ [−L, 0].
pub fn commutator_trace(f: &SymbolFunction, grid: &HalfLineGrid, maker: Maker<'_>) -> Result<Complex> {
    let (fp, fm) = split_frequencies(f);
    let xs = grid.nodes();
    let ys: Vec<f64> = xs.iter().map(|x| -x).collect();
    let (kp, km) = match maker {
        Maker::WienerHopf => (kernel_block(&fp, maker, xs, &ys)?, kernel_block(&fm, maker, &ys, xs)?),
        Maker::G { s, window } => {
            // both blocks share the two T_s tables
            let a = tcal_matrix(s, xs, window.nodes())?;
            let b = tcal_matrix(s, &ys, window.nodes())?;
            let wx = window.weights();
            let gp = fp.space_side(window.nodes())?;
            let gm = fm.space_side(window.nodes())?;
            let ap = DMatrix::from_fn(a.nrows(), a.ncols(), |i, k| a[(i, k)] * gp[k] * wx[k]);
            let bm = DMatrix::from_fn(b.nrows(), b.ncols(), |i, k| b[(i, k)] * gm[k] * wx[k]);
            (ap * b.adjoint(), bm * a.adjoint())
        }
    };
    let w = grid.weights();
    let mut acc = ZERO;
    for i in 0..xs.len() {
        for j in 0..ys.len() {
            acc += kp[(i, j)] * km[(j, i)] * (w[i] * w[j]);
        }
    }
    Ok(acc)
}

/// `commutator_trace` for G_f, extrapolated in the frequency cutoff.
///
/// For Re s > 0 the G kernels decay only algebraically away from the origin
/// and the truncated trace approaches its limit like 1/L, so the values at L
/// and 2L are combined as 2·T(2L) − T(L). Panels have the given width.
pub fn extrapolated_g_trace(
    f: &SymbolFunction,
    s: &SpectralParameter,
    window: &WindowGrid,
    cutoff: f64,
    panel_width: f64,
) -> Result<Complex> {
    if !(cutoff > 0.0 && panel_width > 0.0) {
        return Err(Error::Domain("cutoff and panel width must be positive"));
    }
    let at = |l: f64| -> Result<Complex> {
        let panels = (l / panel_width).ceil().max(1.0) as usize;
        commutator_trace(f, &HalfLineGrid::new(l, panels, PANEL_NODES)?, Maker::G { s, window })
    };
    Ok(at(2.0 * cutoff)? * 2.0 - at(cutoff)?)
}

/// ∫₀^∞ ω f̂(ω) f̂(−ω) dω.
pub fn trace_formula(f: &SymbolFunction) -> Result<Complex> {
    let (lo, hi) = f.support_or_err()?;
    let top = hi.max(-lo);
    if top <= 0.0 {
        return Ok(ZERO);
    }
    let rule = QuadratureRule::composite(32, PANEL_NODES, 0.0, top, 0.0)?;
    Ok(rule.integrate_complex(|w| f.fhat(w) * f.fhat(-w) * w))
}

/// ∫₀^L dx ∫_{−L}^0 dy |f̂₊(x − y)|², the squared Hilbert–Schmidt norm of 𝕀₊W_{f₊}𝕀₋.
pub fn hilbert_schmidt_sq(f: &SymbolFunction, grid: &HalfLineGrid) -> Result<f64> {
    let (fp, _) = split_frequencies(f);
    let xs = grid.nodes();
    let w = grid.weights();
    let mut acc = 0.0;
    for i in 0..xs.len() {
        for j in 0..xs.len() {
            acc += fp.fhat(xs[i] + xs[j]).norm_sqr() * w[i] * w[j];
        }
    }
    Ok(acc)
}

/// ∫₀^∞ ω |f̂(ω)|² dω, the closed form of `hilbert_schmidt_sq` as L → ∞.
pub fn hilbert_schmidt_formula(f: &SymbolFunction) -> Result<f64> {
    let (_, hi) = f.support_or_err()?;
    if hi <= 0.0 {
        return Ok(0.0);
    }
    let rule = QuadratureRule::composite(32, PANEL_NODES, 0.0, hi, 0.0)?;
    Ok(rule.integrate(|w| w * f.fhat(w).norm_sqr()))
}

/// ‖f‖_{L₂} + (∫|ω||f̂(ω)|²dω)^{1/2}, with ‖f‖²_{L₂} = 2π∫|f̂|² for this convention.
pub fn sobolev_half(f: &SymbolFunction) -> Result<f64> {
    let (l2, semi) = match f.effective_support() {
        Some((lo, hi)) if hi > lo => {
            let rule = QuadratureRule::composite(32, PANEL_NODES, lo, hi, 0.0)?;
            let l2 = rule.integrate(|w| f.fhat(w).norm_sqr());
            (l2, rule.integrate(|w| w.abs() * f.fhat(w).norm_sqr()))
        }
        Some(_) => (0.0, 0.0),
        None => unbounded_sobolev(f)?,
    };
    Ok((2.0 * PI * l2).sqrt() + semi.sqrt())
}

/// Integrates over [−Λ, Λ], doubling Λ until both integrals settle.
fn unbounded_sobolev(f: &SymbolFunction) -> Result<(f64, f64)> {
    const MAX_DOUBLINGS: usize = 24;
    let band = |a: f64, b: f64| -> Result<(f64, f64)> {
        let rule = QuadratureRule::composite(16, PANEL_NODES, a, b, 0.0)?;
        Ok((rule.integrate(|w| f.fhat(w).norm_sqr()), rule.integrate(|w| w.abs() * f.fhat(w).norm_sqr())))
    };
    let mut lam = 1.0;
    let (mut l2, mut semi) = band(-lam, lam)?;
    for _ in 0..MAX_DOUBLINGS {
        let (a1, b1) = band(lam, 2.0 * lam)?;
        let (a2, b2) = band(-2.0 * lam, -lam)?;
        let (dl, ds) = (a1 + a2, b1 + b2);
        l2 += dl;
        semi += ds;
        lam *= 2.0;
        if !l2.is_finite() || !semi.is_finite() {
            return Err(Error::Divergence);
        }
        if dl <= 1e-14 * l2.max(f64::MIN_POSITIVE) && ds <= 1e-14 * semi.max(f64::MIN_POSITIVE) {
            return Ok((l2, semi));
        }
    }
    Err(Error::Divergence)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_space_side() {
        // ∫ e^{−ω²} e^{iωx} dω = √π e^{−x²/4}
        let f = SymbolFunction::gaussian(1.0, 1.0);
        let v = f.space_side(&[0.0, 1.5, 7.0]).unwrap();
        for (&x, y) in [0.0, 1.5, 7.0].iter().zip(v) {
            let want = PI.sqrt() * (-x * x / 4.0).exp();
            assert!((y - want).norm() < 1e-13, "{x}: {y}");
        }
    }

    #[test]
    fn split_recomposes() {
        let f = SymbolFunction::gaussian(1.0, 1.0);
        let (p, m) = split_frequencies(&f);
        for &w in &[-2.0, -0.1, 0.0, 0.3, 4.0] {
            assert!((p.fhat(w) + m.fhat(w) - f.fhat(w)).norm() < 1e-16);
        }
        assert_eq!(p.fhat(-0.5), ZERO);
        assert_eq!(m.fhat(0.5), ZERO);
    }

    #[test]
    fn product_of_gaussians() {
        // e^{−ω²} * e^{−ω²} = √(π/2) e^{−ω²/2}
        let f = SymbolFunction::gaussian(1.0, 1.0);
        let g = f.product(&f).unwrap();
        for &w in &[0.0, 0.7, -2.0] {
            let want = (PI / 2.0).sqrt() * (-w * w / 2.0).exp();
            assert!((g.fhat(w) - want).norm() < 1e-13);
        }
    }

    #[test]
    fn sobolev_of_unknown_decay_settles_or_diverges() {
        let f = SymbolFunction::new(|w| Complex::new((-w * w).exp(), 0.0), Decay::Unknown);
        let want = (2.0 * PI).sqrt() * (PI / 2.0).sqrt().sqrt() + 0.5f64.sqrt();
        assert!((sobolev_half(&f).unwrap() - want).abs() < 1e-12);
        let g = SymbolFunction::new(|w| Complex::new(1.0 / (1.0 + w.abs()), 0.0), Decay::Unknown);
        assert_eq!(sobolev_half(&g), Err(Error::Divergence));
    }
}

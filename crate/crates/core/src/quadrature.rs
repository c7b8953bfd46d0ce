//! Quadrature rules on intervals and the window grids built from them.
//!
//! Every rule stores plain `dt` weights: for a Gauss–Jacobi rule the
//! endpoint factor (t−a)^α(b−t)^β is divided back out of the weights, so
//! `Σ wᵢ F(tᵢ)` approximates `∫ F dt` and is exact when F is that factor
//! times a polynomial of degree < 2n.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::special_fn::ln_gamma;
use crate::{Complex, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    GaussLegendre,
    /// Exponents at the left and right endpoint.
    GaussJacobi { left: f64, right: f64 },
    Uniform,
    Composite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    domain: (f64, f64),
    kind: RuleKind,
}

/// Eigenvalues and squared first eigenvector components of the symmetric
/// tridiagonal matrix (diag, off). Implicit QL with Wilkinson shifts; only
/// the first row of the eigenvector matrix is tracked.
fn tridiagonal_eig_first_row(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = alloc::vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(core::cmp::Ordering::Equal));
    Ok((idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[i] * z[i]).collect()))
}

/// Gauss–Jacobi nodes/weights on [−1,1] for (1−x)^a (1+x)^b (Golub–Welsch).
fn gauss_jacobi_reference(n: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || !(a > -1.0) || !(b > -1.0) {
        return Err(Error::Domain("Gauss-Jacobi needs n >= 1 and exponents > -1"));
    }
    let ab = a + b;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let kf = k as f64;
        let t = 2.0 * kf + ab;
        let ak = if k == 0 { (b - a) / (ab + 2.0) } else { (b * b - a * a) / (t * (t + 2.0)) };
        diag.push(ak);
        if k + 1 < n {
            let j = kf + 1.0;
            let t = 2.0 * j + ab;
            let bk = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + ab) / (t * t * (t + 1.0) * (t - 1.0))
            };
            off.push(bk.sqrt());
        }
    }
    let ln_mu0 = (ab + 1.0) * 2.0f64.ln()
        + ln_gamma(Complex::new(a + 1.0, 0.0))?.re
        + ln_gamma(Complex::new(b + 1.0, 0.0))?.re
        - ln_gamma(Complex::new(ab + 2.0, 0.0))?.re;
    let mu0 = ln_mu0.exp();
    let (x, v) = tridiagonal_eig_first_row(&diag, &off)?;
    Ok((x, v.into_iter().map(|v| mu0 * v).collect()))
}

impl QuadratureRule {
    /// Gauss–Jacobi rule on [lo, hi] for the factor (t−lo)^left (hi−t)^right.
    pub fn gauss_jacobi(n: usize, left: f64, right: f64, lo: f64, hi: f64) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::Domain("quadrature interval must have hi > lo"));
        }
        let (x, w) = gauss_jacobi_reference(n, right, left)?;
        let half = 0.5 * (hi - lo);
        let scale = half.powf(left + right + 1.0);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (xi, wi) in x.into_iter().zip(w) {
            let dl = half * (1.0 + xi);
            let dr = half * (1.0 - xi);
            nodes.push(lo + dl);
            let mut wt = scale * wi;
            if left != 0.0 {
                wt /= dl.powf(left);
            }
            if right != 0.0 {
                wt /= dr.powf(right);
            }
            weights.push(wt);
        }
        let kind = if left == 0.0 && right == 0.0 {
            RuleKind::GaussLegendre
        } else {
            RuleKind::GaussJacobi { left, right }
        };
        Ok(QuadratureRule { nodes, weights, domain: (lo, hi), kind })
    }

    pub fn gauss_legendre(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::gauss_jacobi(n, 0.0, 0.0, lo, hi)
    }

    /// Midpoint rule with `n` equal cells.
    pub fn midpoint(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n == 0 || !(hi > lo) {
            return Err(Error::Domain("midpoint rule needs n >= 1 and hi > lo"));
        }
        let h = (hi - lo) / n as f64;
        let nodes = (0..n).map(|j| lo + (j as f64 + 0.5) * h).collect();
        Ok(QuadratureRule { nodes, weights: alloc::vec![h; n], domain: (lo, hi), kind: RuleKind::Uniform })
    }

    /// `panels` equal Gauss–Legendre panels; when `left_exponent` is
    /// non-zero the first panel is Gauss–Jacobi for (t−lo)^left_exponent.
    pub fn composite(panels: usize, nodes_per_panel: usize, lo: f64, hi: f64, left_exponent: f64) -> Result<Self> {
        if panels == 0 || !(hi > lo) {
            return Err(Error::Domain("composite rule needs panels >= 1 and hi > lo"));
        }
        let h = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * nodes_per_panel);
        let mut weights = Vec::with_capacity(panels * nodes_per_panel);
        let reference = Self::gauss_legendre(nodes_per_panel, 0.0, 1.0)?;
        for p in 0..panels {
            let a = lo + p as f64 * h;
            let b = if p + 1 == panels { hi } else { a + h };
            if p == 0 && left_exponent != 0.0 {
                let first = Self::gauss_jacobi(nodes_per_panel, left_exponent, 0.0, a, b)?;
                nodes.extend_from_slice(&first.nodes);
                weights.extend_from_slice(&first.weights);
            } else {
                for (&t, &w) in reference.nodes.iter().zip(&reference.weights) {
                    nodes.push(a + (b - a) * t);
                    weights.push((b - a) * w);
                }
            }
        }
        Ok(QuadratureRule { nodes, weights, domain: (lo, hi), kind: RuleKind::Composite })
    }

    /// Composite rule whose first panel is split geometrically toward `lo`
    /// (ratio 0.15, `levels` splits) with a Jacobi panel for
    /// (t−lo)^left_exponent innermost. Suited to factors such as
    /// |t|^{a+ib} whose imaginary part oscillates logarithmically.
    pub fn composite_graded(
        panels: usize,
        nodes_per_panel: usize,
        lo: f64,
        hi: f64,
        left_exponent: f64,
        levels: usize,
    ) -> Result<Self> {
        if panels == 0 || !(hi > lo) {
            return Err(Error::Domain("composite rule needs panels >= 1 and hi > lo"));
        }
        if levels == 0 {
            return Self::composite(panels, nodes_per_panel, lo, hi, left_exponent);
        }
        const RATIO: f64 = 0.15;
        let h = (hi - lo) / panels as f64;
        let mut edges = Vec::with_capacity(levels + 1);
        let mut w = h;
        for _ in 0..levels {
            w *= RATIO;
            edges.push(lo + w);
        }
        edges.reverse();
        let mut rule = Self::gauss_jacobi(nodes_per_panel, left_exponent, 0.0, lo, edges.first().copied().unwrap_or(lo + h))?;
        let mut a = rule.domain.1;
        for &b in edges.iter().skip(1).chain(core::iter::once(&(lo + h))) {
            rule = rule.join(&Self::gauss_legendre(nodes_per_panel, a, b)?)?;
            a = b;
        }
        if panels > 1 {
            rule = rule.join(&Self::composite(panels - 1, nodes_per_panel, lo + h, hi, 0.0)?)?;
        }
        rule.domain = (lo, hi);
        rule.kind = RuleKind::Composite;
        Ok(rule)
    }

    /// Concatenates two rules on adjacent intervals (self to the left).
    pub fn join(&self, right: &QuadratureRule) -> Result<Self> {
        if self.domain.1 != right.domain.0 {
            return Err(Error::Domain("joined rules must share an endpoint"));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&right.nodes);
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&right.weights);
        Ok(QuadratureRule { nodes, weights, domain: (self.domain.0, right.domain.1), kind: RuleKind::Composite })
    }

    /// The rule reflected through the origin (t ↦ −t), nodes kept increasing.
    pub fn reflected(&self) -> Self {
        let nodes = self.nodes.iter().rev().map(|&t| -t).collect();
        let weights = self.weights.iter().rev().copied().collect();
        let kind = match self.kind {
            RuleKind::GaussJacobi { left, right } => RuleKind::GaussJacobi { left: right, right: left },
            k => k,
        };
        QuadratureRule { nodes, weights, domain: (-self.domain.1, -self.domain.0), kind }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    pub fn integrate_complex<F: FnMut(f64) -> Complex>(&self, mut f: F) -> Complex {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| f(t) * w).sum()
    }
}

/// Symmetric grid on [−R, R] that never samples the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowGrid {
    half_width: f64,
    rule: QuadratureRule,
}

impl WindowGrid {
    /// `n_points` midpoint cells; n must be even so that 0 is a cell edge.
    pub fn midpoint(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) || n_points < 2 || n_points % 2 != 0 {
            return Err(Error::Domain("window needs R > 0 and an even n_points >= 2"));
        }
        Ok(WindowGrid { half_width, rule: QuadratureRule::midpoint(n_points, -half_width, half_width)? })
    }

    /// Composite Gauss rule on each half with a Jacobi panel at the origin
    /// for integrands that behave like |x|^alpha there.
    pub fn split_singular(half_width: f64, alpha: f64, panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::Domain("window needs R > 0"));
        }
        let right = QuadratureRule::composite(panels, nodes_per_panel, 0.0, half_width, alpha)?;
        let rule = right.reflected().join(&right)?;
        Ok(WindowGrid { half_width, rule })
    }

    /// Like `split_singular`, with the panels at the origin graded
    /// geometrically (see `QuadratureRule::composite_graded`).
    pub fn split_graded(half_width: f64, alpha: f64, panels: usize, nodes_per_panel: usize, levels: usize) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::Domain("window needs R > 0"));
        }
        let right = QuadratureRule::composite_graded(panels, nodes_per_panel, 0.0, half_width, alpha, levels)?;
        let rule = right.reflected().join(&right)?;
        Ok(WindowGrid { half_width, rule })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn nodes(&self) -> &[f64] {
        self.rule.nodes()
    }

    pub fn weights(&self) -> &[f64] {
        self.rule.weights()
    }

    pub fn len(&self) -> usize {
        self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rule.is_empty()
    }
}

/// Rule on the truncated half-line [0, L].
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineGrid {
    cutoff: f64,
    rule: QuadratureRule,
}

impl HalfLineGrid {
    pub fn new(cutoff: f64, panels: usize, nodes_per_panel: usize) -> Result<Self> {
        if !(cutoff > 0.0) {
            return Err(Error::Domain("half-line cutoff must be positive"));
        }
        Ok(HalfLineGrid { cutoff, rule: QuadratureRule::composite(panels, nodes_per_panel, 0.0, cutoff, 0.0)? })
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn nodes(&self) -> &[f64] {
        self.rule.nodes()
    }

    pub fn weights(&self) -> &[f64] {
        self.rule.weights()
    }

    pub fn len(&self) -> usize {
        self.rule.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rule.is_empty()
    }
}

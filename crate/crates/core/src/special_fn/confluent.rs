//! Kummer's confluent hypergeometric function ₁F₁(a; b; z).
//!
//! Inside `asymptotic_switch_radius` the power series is summed, with
//! Kummer's transformation applied for Re z < 0. When the f64 partial sums
//! show heavy cancellation (the imaginary axis is the usual culprit) the
//! series is re-summed in double-double. Beyond the radius the two-family
//! asymptotic expansion is used, truncated at its smallest term.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::{gamma_ratio, is_gamma_pole, rgamma};
use crate::dd::{CDd, Dd};
use crate::quadrature::QuadratureRule;
use crate::{Complex, Error, Result};

/// Tuning knobs for [`hyp1f1`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    pub series_tol: f64,
    pub max_terms: usize,
    pub asymptotic_switch_radius: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { series_tol: 1e-14, max_terms: 10_000, asymptotic_switch_radius: 40.0 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0) || self.max_terms < 1 || !(self.asymptotic_switch_radius > 0.0) {
            return Err(Error::Domain("EvalConfig needs series_tol > 0, max_terms >= 1, radius > 0"));
        }
        Ok(())
    }
}

// f64 partial sums are trusted while max|term| / |sum| stays below this.
const CANCELLATION_LIMIT: f64 = 1e3;

struct SeriesOutcome {
    sum: Complex,
    max_term: f64,
}

fn series_f64(a: Complex, b: Complex, z: Complex, cfg: &EvalConfig) -> Result<SeriesOutcome> {
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    let mut max_sq = 1.0f64;
    let zabs = z.norm();
    let tol_sq = cfg.series_tol * cfg.series_tol;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term = term * (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        let t = term.norm_sqr();
        max_sq = max_sq.max(t);
        if t == 0.0 || (kf + 1.0 > zabs && t <= tol_sq * sum.norm_sqr()) {
            return Ok(SeriesOutcome { sum, max_term: max_sq.sqrt() });
        }
    }
    Err(Error::NonConvergence { terms: cfg.max_terms })
}

fn series_dd(a: Complex, b: Complex, z: Complex, cfg: &EvalConfig) -> Result<Complex> {
    let ad = CDd::from_c64(a);
    let bd = CDd::from_c64(b);
    let zd = CDd::from_c64(z);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let zabs = z.norm();
    // the DD sum is good to ~1e-30 relative to the largest term
    let tol = cfg.series_tol.min(1e-17);
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        let num = ad.add_real(kf) * zd;
        let den = bd.add_real(kf).scale(Dd::from_f64(kf + 1.0));
        term = term * num / den;
        sum = sum + term;
        let t = term.norm_f64();
        if t == 0.0 || (kf + 1.0 > zabs && t <= tol * sum.norm_f64()) {
            return Ok(sum.to_c64());
        }
    }
    Err(Error::NonConvergence { terms: cfg.max_terms })
}

fn series(a: Complex, b: Complex, z: Complex, cfg: &EvalConfig) -> Result<Complex> {
    // near the imaginary axis the plain sum is known to cancel badly
    if z.re >= 0.0 && z.im.abs() > 12.0 && z.re < 0.5 * z.im.abs() {
        if let Some(v) = recentred_series(a, b, z, cfg) {
            return Ok(v);
        }
    }
    let out = series_f64(a, b, z, cfg)?;
    if out.max_term <= CANCELLATION_LIMIT * out.sum.norm() {
        return Ok(out.sum);
    }
    if z.re >= 0.0 {
        if let Some(v) = recentred_series(a, b, z, cfg) {
            return Ok(v);
        }
    }
    series_dd(a, b, z, cfg)
}

// radius of the plain series used to start the recentred expansion
const START_RADIUS: f64 = 4.0;
// largest step of the recentred expansion
const MAX_STEP: f64 = 8.0;

/// Taylor series of M = ₁F₁(a; b; ·) re-expanded along the ray to z.
///
/// Around z₀ ≠ 0 the Taylor coefficients follow from zM'' + (b−z)M' − aM = 0:
/// c_{k+2} = [(k+a)c_k − (k+1)(k+b−z₀)c_{k+1}] / (z₀(k+1)(k+2)).
/// Steps are kept below |z₀|/2 and MAX_STEP so each local sum stays well
/// conditioned. Meant for Re z ≥ 0, where M is not recessive.
fn recentred_series(a: Complex, b: Complex, z: Complex, cfg: &EvalConfig) -> Option<Complex> {
    let r = z.norm();
    let dir = z / r;
    let z_start = dir * START_RADIUS.min(r);
    // M and M' at the starting point from the series at the origin
    let mut term = Complex::new(1.0, 0.0);
    let mut m = term;
    let mut dm = Complex::new(0.0, 0.0);
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term = term * (a + kf) * z_start / ((b + kf) * (kf + 1.0));
        m += term;
        dm += term * (kf + 1.0);
        if term.norm_sqr() * (kf + 1.0) * (kf + 1.0) <= 1e-34 * (m.norm_sqr() + dm.norm_sqr() * START_RADIUS * START_RADIUS) && kf > 2.0 {
            break;
        }
    }
    dm /= z_start;
    let mut z0 = z_start;
    while z0 != z {
        let left = r - z0.norm();
        let h = (0.5 * z0.norm()).min(MAX_STEP);
        let last = left <= h;
        let t = if last { z - z0 } else { dir * h };
        let (mut c0, mut c1) = (m, dm);
        let mut tk = t; // t^{k+1}
        let (mut sum, mut dsum) = (c0 + c1 * t, c1);
        let inv_z0 = 1.0 / z0;
        let bz = b - z0;
        let mut small = 0;
        for k in 0..cfg.max_terms {
            let kf = k as f64;
            let c2 = ((a + kf) * c0 - (bz + kf) * c1 * (kf + 1.0)) * inv_z0 / ((kf + 1.0) * (kf + 2.0));
            dsum += c2 * tk * (kf + 2.0);
            tk *= t;
            let add = c2 * tk;
            sum += add;
            c0 = c1;
            c1 = c2;
            if add.norm_sqr() <= 1e-34 * sum.norm_sqr() {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            if k + 1 == cfg.max_terms {
                return None;
            }
        }
        m = sum;
        dm = dsum;
        z0 = if last { z } else { z0 + t };
    }
    (m.re.is_finite() && m.im.is_finite()).then_some(m)
}

fn check_b(b: Complex) -> Result<()> {
    if is_gamma_pole(b) {
        Err(Error::Pole("1F1 with b a non-positive integer"))
    } else {
        Ok(())
    }
}

fn check_finite(v: Complex) -> Result<Complex> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain("1F1 overflowed"))
    }
}

/// Sign of the e^{±iπa} factor: upper for arg z ∈ (−π/2, π], lower otherwise.
fn upper_sign(z: Complex) -> bool {
    z.arg() > -PI / 2.0
}

/// Asymptotic expansion for large |z|, keeping at most `max_terms` terms of
/// each family (stops earlier at the smallest term). `max_terms = 1` gives
/// the bare leading-order pair.
pub fn hyp1f1_asymptotic(a: Complex, b: Complex, z: Complex, max_terms: usize) -> Result<Complex> {
    check_b(b)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("asymptotic expansion at z = 0"));
    }
    let gb = gamma_ratio(&[b], &[])?;
    let c1 = gb * rgamma(b - a);
    let c2 = gb * rgamma(a);
    Ok(asymptotic_with(a, b, z, c1, c2, max_terms, 1e-17))
}

fn asymptotic_with(
    a: Complex,
    b: Complex,
    z: Complex,
    c1: Complex,
    c2: Complex,
    max_terms: usize,
    tol: f64,
) -> Complex {
    let i = Complex::i();
    let lnz = z.ln();
    let mut total = Complex::new(0.0, 0.0);
    if c1.norm() != 0.0 {
        let phase = if upper_sign(z) { (i * PI * a).exp() } else { (-i * PI * a).exp() };
        let s1 = truncated_series(a, a - b + 1.0, -z, max_terms, tol);
        total += c1 * phase * (-a * lnz).exp() * s1;
    }
    if c2.norm() != 0.0 {
        let s2 = truncated_series(b - a, 1.0 - a, z, max_terms, tol);
        total += c2 * (z + (a - b) * lnz).exp() * s2;
    }
    total
}

/// Σ (p)_k (q)_k / k! · w^{-k}, truncated before the terms start to grow.
fn truncated_series(p: Complex, q: Complex, w: Complex, max_terms: usize, tol: f64) -> Complex {
    let mut term = Complex::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0f64;
    for k in 1..max_terms {
        let kf = (k - 1) as f64;
        let next = term * (p + kf) * (q + kf) / (w * (kf + 1.0));
        let t = next.norm();
        if t > last {
            break;
        }
        term = next;
        sum += term;
        last = t;
        if t <= tol * sum.norm() {
            break;
        }
    }
    sum
}

/// ₁F₁(a; b; z) to about 1e-10 relative accuracy or better.
pub fn hyp1f1(a: Complex, b: Complex, z: Complex, cfg: &EvalConfig) -> Result<Complex> {
    Confluent::new(a, b, *cfg)?.eval(z)
}

/// ₁F₁ with fixed parameters and cached Γ constants for repeated evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Confluent {
    a: Complex,
    b: Complex,
    cfg: EvalConfig,
    c1: Complex,
    c2: Complex,
}

impl Confluent {
    pub fn new(a: Complex, b: Complex, cfg: EvalConfig) -> Result<Self> {
        cfg.validate()?;
        check_b(b)?;
        let gb = gamma_ratio(&[b], &[])?;
        Ok(Confluent { a, b, cfg, c1: gb * rgamma(b - a), c2: gb * rgamma(a) })
    }

    pub fn a(&self) -> Complex {
        self.a
    }

    pub fn b(&self) -> Complex {
        self.b
    }

    pub fn eval(&self, z: Complex) -> Result<Complex> {
        let (a, b) = (self.a, self.b);
        if z.norm() == 0.0 {
            return Ok(Complex::new(1.0, 0.0));
        }
        // terminating series: the polynomial is exact at any |z|
        if is_gamma_pole(a) && -a.re < 200.0 {
            return check_finite(series_f64(a, b, z, &self.cfg)?.sum);
        }
        if z.norm() >= self.cfg.asymptotic_switch_radius {
            return check_finite(asymptotic_with(a, b, z, self.c1, self.c2, 200, 1e-17));
        }
        if z.re < 0.0 {
            let m = series(b - a, b, -z, &self.cfg)?;
            return check_finite(z.exp() * m);
        }
        check_finite(series(a, b, z, &self.cfg)?)
    }
}

/// Euler integral cross-check Γ(b)/(Γ(a)Γ(b−a)) ∫₀¹ t^{a−1}(1−t)^{b−a−1} e^{tz} dt.
///
/// The rule carries plain dt weights; a Jacobi rule matched to Re a − 1 and
/// Re(b−a) − 1 integrates the endpoint singularities exactly.
pub fn hyp1f1_integral_oracle(a: Complex, b: Complex, z: Complex, rule: &QuadratureRule) -> Result<Complex> {
    if !(a.re > 0.0) || !((b - a).re > 0.0) {
        return Err(Error::Domain("integral representation needs Re a > 0 and Re(b-a) > 0"));
    }
    let (lo, hi) = rule.domain();
    if lo != 0.0 || hi != 1.0 {
        return Err(Error::Domain("integral oracle needs a rule on [0, 1]"));
    }
    let pref = gamma_ratio(&[b], &[a, b - a])?;
    let e1 = a - 1.0;
    let e2 = b - a - 1.0;
    let mut acc = Complex::new(0.0, 0.0);
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let f = (e1 * t.ln() + e2 * (1.0 - t).ln() + z * t).exp();
        acc += w * f;
    }
    Ok(pref * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn rel(a: Complex, b: Complex) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn equal_parameters_give_exponential() {
        let cfg = EvalConfig::default();
        let z = c(2.0, -1.0);
        let v = hyp1f1(c(1.7, 0.0), c(1.7, 0.0), z, &cfg).unwrap();
        assert!(rel(v, z.exp()) < 1e-13);
    }

    #[test]
    fn origin_and_terminating_cases() {
        let cfg = EvalConfig::default();
        assert_eq!(hyp1f1(c(0.4, 1.0), c(2.0, 0.0), c(0.0, 0.0), &cfg).unwrap(), c(1.0, 0.0));
        let v = hyp1f1(c(-1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), &cfg).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_b() {
        let cfg = EvalConfig::default();
        assert!(matches!(hyp1f1(c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0), &cfg), Err(Error::Pole(_))));
    }

    #[test]
    fn config_validation() {
        let bad = EvalConfig { series_tol: 0.0, ..EvalConfig::default() };
        assert!(hyp1f1(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), &bad).is_err());
        let tight = EvalConfig { max_terms: 3, ..EvalConfig::default() };
        assert!(matches!(
            hyp1f1(c(0.5, 0.0), c(2.0, 0.0), c(10.0, 0.0), &tight),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn overlap_band_series_vs_asymptotic() {
        // the DD series and the asymptotic expansion must agree where both apply
        let a = c(0.3, -0.7);
        let b = c(1.6, 0.0);
        let cfg = EvalConfig { asymptotic_switch_radius: 1e9, ..EvalConfig::default() };
        for r in [30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0] {
            for z in [c(0.0, r), c(0.0, -r)] {
                let s = hyp1f1(a, b, z, &cfg).unwrap();
                let asy = hyp1f1_asymptotic(a, b, z, 200).unwrap();
                assert!(rel(s, asy) < 1e-8, "r={r}: {s} vs {asy}");
            }
        }
    }
}

#[cfg(test)]
mod recentred_tests {
    use super::*;

    #[test]
    fn recentred_matches_double_double() {
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for &(a, b) in &[(Complex::new(0.3, -0.7), Complex::new(1.6, 0.0)), (Complex::new(1.5, 0.2), Complex::new(2.0, 0.0)), (Complex::new(-0.3, 0.4), Complex::new(0.4, 0.0))] {
            for k in 0..60 {
                let r = 12.0 + 28.0 * k as f64 / 59.0;
                for &ang in &[0.5, 1.2, 1.5707963267948966] {
                    let z = Complex::from_polar(r, ang);
                    let want = series_dd(a, b, z, &cfg).unwrap();
                    let got = recentred_series(a, b, z, &cfg).unwrap();
                    worst = worst.max((got - want).norm() / want.norm());
                }
            }
        }
        assert!(worst < 1e-12, "{worst}");
    }
}

use core::f64::consts::PI;

use chk_core::dpp::*;
use chk_core::kernel::SpectralParameter;
use chk_core::quadrature::QuadratureRule;
use chk_core::Complex;
use nalgebra::DMatrix;

fn sp(re: f64, im: f64) -> SpectralParameter {
    SpectralParameter::new(Complex::new(re, im)).unwrap()
}

fn draws(d: &SpectralDecomposition, n: u64, offset: u64) -> Vec<PointConfiguration> {
    (0..n).map(|k| d.sample(offset + k)).collect()
}

#[test]
fn spectrum_of_the_sine_process() {
    let s = sp(0.0, 0.0);
    let d = nystrom_eig(&s, -10.0, 10.0, 400).unwrap();
    assert!(d.clip_norm() <= 1e-8, "{}", d.clip_norm());
    // Σλ = Σ w_i K(x_i, x_i) = 20/(2π)
    assert!((d.expected_count() - 20.0 / (2.0 * PI)).abs() < 1e-10);
    let near_one = d.eigenvalues().iter().filter(|&&v| v > 0.5).count();
    assert_eq!(near_one, 3);
}

#[test]
fn spectrum_with_singular_diagonal() {
    let s = sp(0.5, 0.3);
    let d = nystrom_eig(&s, -6.0, 8.0, 400).unwrap();
    assert!(d.clip_norm() <= 1e-8, "{}", d.clip_norm());
    let trace: f64 = d.grid().nodes().iter().zip(d.grid().weights()).map(|(&x, w)| w * s.kernel(x, x).unwrap().re).sum();
    assert!((d.expected_count() - trace).abs() < 1e-10);
}

#[test]
fn empty_spectrum_gives_no_points() {
    let grid = QuadratureRule::composite(1, 16, 0.0, 1.0, 0.0).unwrap();
    let d = SpectralDecomposition::from_parts(grid, vec![0.0; 16], DMatrix::identity(16, 16)).unwrap();
    for seed in 0..20 {
        assert!(d.sample(seed).points.is_empty());
    }
}

#[test]
fn sampling_is_deterministic_per_seed() {
    let d = nystrom_eig(&sp(0.0, 0.0), -10.0, 10.0, 160).unwrap();
    assert_eq!(d.sample(42), d.sample(42));
    assert_ne!(d.sample(42).points, d.sample(43).points);
    let c = d.sample(7);
    assert!(c.points.windows(2).all(|w| w[0] < w[1]));
    assert!(c.points.iter().all(|&x| (-10.0..=10.0).contains(&x)));
    assert_eq!(c.interval, (-10.0, 10.0));
}

#[test]
fn projection_draws_have_fixed_size() {
    // all eigenvalues 1 on a subspace: every draw has exactly that many points
    let grid = QuadratureRule::composite(1, 16, 0.0, 1.0, 0.0).unwrap();
    let mut vals = vec![0.0; 16];
    vals[3] = 1.0;
    vals[9] = 1.0;
    vals[11] = 1.0;
    let q = DMatrix::from_fn(16, 16, |i, j| Complex::from_polar(0.25, (i * j) as f64 * PI / 8.0));
    let d = SpectralDecomposition::from_parts(grid, vals, q).unwrap();
    for seed in 0..50 {
        assert_eq!(d.sample(seed).points.len(), 3);
    }
}

#[test]
fn mean_count_and_intensity_for_the_sine_process() {
    let s = sp(0.0, 0.0);
    let d = nystrom_eig(&s, -10.0, 10.0, 400).unwrap();
    let configs = draws(&d, 2000, 1000);
    let counts: Vec<f64> = configs.iter().map(|c| c.points.len() as f64).collect();
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    assert!((mean - 20.0 / (2.0 * PI)).abs() < 3.0 * se, "{mean} ± {se}");

    let bins = 10;
    let h = empirical_intensity(&configs, bins).unwrap();
    for k in 0..bins {
        assert!((h.density[k] - 1.0 / (2.0 * PI)).abs() < 3.0 * h.std_err[k], "bin {k}: {} ± {}", h.density[k], h.std_err[k]);
    }
    assert!(empirical_intensity(&configs[..100], bins).is_err());
}

#[test]
fn error_bars_scale_with_sample_size() {
    let d = nystrom_eig(&sp(0.0, 0.0), -10.0, 10.0, 160).unwrap();
    let a = empirical_intensity(&draws(&d, 1000, 0), 5).unwrap();
    let b = empirical_intensity(&draws(&d, 4000, 50_000), 5).unwrap();
    // four times the draws halves the error bars
    for k in 0..5 {
        let r = a.std_err[k] / b.std_err[k];
        assert!((r - 2.0).abs() < 0.3, "{r}");
    }
}

#[test]
fn intensity_vanishes_linearly_at_the_origin_for_half() {
    let s = sp(0.5, 0.0);
    let d = nystrom_eig(&s, -4.0, 4.0, 256).unwrap();
    let p = d.node_intensity();
    let g = d.grid();
    // p_i / w_i ≈ K(x_i, x_i) ~ c|x| near 0
    let near: Vec<(f64, f64)> = g
        .nodes()
        .iter()
        .zip(g.weights())
        .zip(&p)
        .filter(|((x, _), _)| x.abs() < 0.05)
        .map(|((&x, &w), &pi)| (x, pi / w))
        .collect();
    assert!(!near.is_empty());
    for &(x, v) in &near {
        let k = s.kernel(x, x).unwrap().re;
        assert!((v - k).abs() < 1e-6, "{x}: {v} vs {k}");
        assert!(v < x.abs(), "{x}: {v}");
    }
    let e = d.expected_intensity(8);
    assert!(e[3] < e[0] && e[4] < e[7]);
}

#[test]
fn number_variance_grows_slower_than_poisson() {
    let s = sp(0.0, 0.0);
    let variance = |r: f64| {
        let d = nystrom_eig(&s, -r, r, (r * 16.0) as usize).unwrap();
        let c: Vec<f64> = draws(&d, 1500, 9000).iter().map(|c| c.points.len() as f64).collect();
        let m = c.iter().sum::<f64>() / c.len() as f64;
        c.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (c.len() as f64 - 1.0)
    };
    let (v5, v20) = (variance(5.0), variance(20.0));
    // a Poisson process at the same intensity has variance ratio 4
    assert!(v20 / v5 < 2.0, "{v5} {v20}");
    assert!(v20 < 0.5 * 40.0 / (2.0 * PI));
}

use chk_core::dpp::nystrom_eig;
use chk_core::kernel::SpectralParameter;
use chk_core::opuc::CircleWeight;
use chk_core::special_fn::{gamma_ratio, hyp1f1, EvalConfig};
use chk_core::transform::gauged_kernel_matrix;
use chk_core::Complex;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn spectral() -> impl Strategy<Value = SpectralParameter> {
    (-0.45f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| SpectralParameter::new(Complex::new(re, im)).unwrap())
}

/// Points kept away from the origin, where Re s < 0 is singular.
fn point() -> impl Strategy<Value = f64> {
    (0.05f64..30.0, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_hermitian(s in spectral(), x in point(), y in point()) {
        let a = s.kernel(x, y).unwrap();
        let b = s.kernel(y, x).unwrap();
        prop_assert!((a - b.conj()).norm() <= 1e-12 * (1.0 + a.norm()), "{} {x} {y}: {a} {b}", s.s());
    }

    #[test]
    fn kernel_diagonal_is_positive(s in spectral(), x in point()) {
        let d = s.kernel(x, x).unwrap();
        prop_assert!(d.re > 0.0 && d.im.abs() <= 1e-14 * d.re, "{} {x}: {d}", s.s());
    }

    #[test]
    fn gauge_leaves_the_spectrum_unchanged(s in spectral(), xs in proptest::collection::vec(point(), 2..7)) {
        let n = xs.len();
        let k = s.kernel_matrix(&xs).unwrap();
        let plain = DMatrix::from_row_slice(n, n, &k).symmetric_eigenvalues();
        let gauged = gauged_kernel_matrix(&s, &xs).unwrap().symmetric_eigenvalues();
        let mut a: Vec<f64> = plain.iter().copied().collect();
        let mut b: Vec<f64> = gauged.iter().copied().collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        for (p, q) in a.iter().zip(&b) {
            prop_assert!((p - q).abs() <= 1e-12 * (1.0 + p.abs()));
        }
    }

    #[test]
    fn kummer_transformation(
        ar in -3.0f64..3.0, ai in -3.0f64..3.0,
        br in 0.2f64..4.0, bi in -3.0f64..3.0,
        r in 0.0f64..20.0, t in -3.14f64..3.14,
    ) {
        let (a, b, z) = (Complex::new(ar, ai), Complex::new(br, bi), Complex::from_polar(r, t));
        let cfg = EvalConfig::default();
        let m = hyp1f1(a, b, z, &cfg).unwrap();
        let k = z.exp() * hyp1f1(b - a, b, -z, &cfg).unwrap();
        prop_assert!((m - k).norm() <= 1e-11 * (1.0 + m.norm()), "{a} {b} {z}: {m} {k}");
    }

    #[test]
    fn gamma_recurrence(re in -8.0f64..8.0, im in 0.1f64..30.0) {
        let z = Complex::new(re, im);
        let r = gamma_ratio(&[z + 1.0], &[z]).unwrap();
        prop_assert!((r - z).norm() <= 1e-12 * z.norm());
    }

    #[test]
    fn circle_weight_is_real_and_nonnegative(s in spectral(), theta in -3.14f64..3.14) {
        prop_assume!(theta.abs() > 1e-6);
        let w = CircleWeight::new(&s).unwrap();
        let v = w.eval(theta).unwrap();
        let l = w.eval_principal_log(theta).unwrap();
        prop_assert!(v >= 0.0 && v.is_finite());
        prop_assert!((l.re - v).abs() <= 1e-12 * v.max(1e-300) && l.im.abs() <= 1e-14 * v.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn draws_stay_on_the_grid(seed in any::<u64>(), re in 0.0f64..1.0) {
        let s = SpectralParameter::new(Complex::new(re, 0.0)).unwrap();
        let d = nystrom_eig(&s, -4.0, 6.0, 64).unwrap();
        let c = d.sample(seed);
        prop_assert!(c.points.iter().all(|p| d.grid().nodes().contains(p)));
        prop_assert!(c.points.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(c.points.len() <= d.eigenvalues().iter().filter(|&&v| v > 0.0).count());
    }
}

//! Values frozen from an independent 40-digit evaluation (tests/oracle/mp_oracle.py).

use chk_core::kernel::SpectralParameter;
use chk_core::special_fn::{gamma_complex, hyp1f1, hyp1f1_asymptotic, EvalConfig};
use chk_core::Complex;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn rel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn gamma_reference() {
    let cases = [
        (c(0.5, 0.0), c(1.7724538509055160273, 0.0)),
        (c(2.3, 0.4), c(1.0846629002497225615, 0.26894490555028865623)),
        (c(-3.7, 1.2), c(0.004910735090013594441, 0.0099625517191866704861)),
        (c(10.5, -20.0), c(-0.84402295270177025793, -0.16043283204864407647)),
        (c(0.1, 45.0), c(1.0947824051721626712e-31, 7.5929746307463992159e-34)),
        (c(-19.5, 0.3), c(2.4533092983994316452e-18, 3.0837108670273930372e-18)),
        (c(48.0, 3.0), c(1.306292166521649252e+59, -1.9566411553550460573e+59)),
    ];
    for (z, want) in cases {
        let got = gamma_complex(z).unwrap();
        assert!(rel(got, want) < 1e-12, "Γ({z}) = {got}, want {want}");
    }
}

#[test]
fn hyp1f1_reference() {
    let cfg = EvalConfig::default();
    let cases = [
        (c(0.3, -0.7), c(1.6, 0.0), c(0.0, 25.0), c(-1.3275137339091465988, 0.57760816762303260255)),
        (c(0.3, -0.7), c(1.6, 0.0), c(0.0, -33.0), c(-0.072813827674265459125, 0.13343813056908071145)),
        (c(0.5, 0.0), c(2.0, 0.0), c(0.0, 39.5), c(0.12967019334486442491, 0.12492332381729036937)),
        (c(-0.3, 0.0), c(0.4, 0.0), c(0.0, 12.0), c(3.2124301551347067118, -1.571394317676818162)),
        (c(1.3, -0.7), c(2.6, 0.0), c(0.0, 45.0), c(-0.035697288009161938097, -0.019913794206067208265)),
        (c(0.7, 0.2), c(1.9, -0.3), c(-15.0, 8.0), c(0.13042960634314054766, -0.061387817917234367327)),
        (c(-2.5, 1.0), c(3.5, 0.0), c(18.0, -4.0), c(54.931784993320673734, 494.64560050532779419)),
    ];
    for (a, b, z, want) in cases {
        let got = hyp1f1(a, b, z, &cfg).unwrap();
        assert!(rel(got, want) < 1e-11, "1F1({a};{b};{z}) = {got}, want {want}");
    }
}

const FAR_FIELD: [(f64, f64, f64); 4] = [
    (50.0, -1.1694936914900004518, -0.13639855722078208288),
    (100.0, -0.79317999297465884176, -0.55794313622435920309),
    (200.0, -0.36292901406056064932, -0.703836164372494811),
    (400.0, 0.0048635681016348558376, -0.64063997931750835482),
];

#[test]
fn hyp1f1_far_field() {
    let cfg = EvalConfig::default();
    let (a, b) = (c(0.3, -0.7), c(1.6, 0.0));
    for (r, re, im) in FAR_FIELD {
        let got = hyp1f1(a, b, c(0.0, r), &cfg).unwrap();
        assert!(rel(got, c(re, im)) < 1e-12, "R = {r}: {got}");
    }
}

#[test]
fn leading_order_gap_decays_like_inverse_radius() {
    let (a, b) = (c(0.3, -0.7), c(1.6, 0.0));
    let gaps: Vec<f64> = FAR_FIELD
        .iter()
        .map(|&(r, re, im)| r * (hyp1f1_asymptotic(a, b, c(0.0, r), 1).unwrap() - c(re, im)).norm())
        .collect();
    let (lo, hi) = gaps.iter().fold((f64::MAX, 0.0f64), |(l, h), &g| (l.min(g), h.max(g)));
    assert!(hi / lo < 2.0, "R·gap not bounded: {gaps:?}");
}

#[test]
fn kernel_reference() {
    let cases = [
        (c(0.3, 0.7), 3.0, -5.0, c(0.01891574724359967061, 0.021901054730185058125)),
        (c(0.3, 0.7), 1.5, 2.5, c(0.0211146770970749021, -0.011535000670379677862)),
        (c(0.3, 0.7), 2.0, 2.0, c(0.025161443323320498075, 0.0)),
        (c(0.3, 0.7), -7.0, -7.0, c(0.19067923320529013232, 0.0)),
        (c(0.5, 0.0), 2.0, 2.0, c(0.11061158183690547212, 0.0)),
        (c(-0.3, 0.0), 0.7, -1.9, c(0.01682305996872118924, 0.060598385495642678049)),
        (c(-0.3, 0.4), -4.0, -4.0, c(0.19278753454190780303, 0.0)),
    ];
    for (s, x, y, want) in cases {
        let k = SpectralParameter::new(s).unwrap();
        let got = k.kernel(x, y).unwrap();
        assert!(rel(got, want) < 1e-11, "K^{s}({x},{y}) = {got}, want {want}");
    }
}

#[test]
fn tcal_reference() {
    let cases = [
        (c(0.3, 0.7), 3.0, c(0.17123785775251795608, -0.28161107426936471051)),
        (c(0.3, 0.7), -11.0, c(0.27246150026549179962, 0.32000159303750648072)),
        (c(0.5, 0.0), 60.0, c(-0.12322945406643028599, -0.38278430950566540436)),
        (c(-0.3, 0.2), 0.25, c(0.049910554440990965259, -0.27764769775202754738)),
    ];
    for (s, x, want) in cases {
        let got = SpectralParameter::new(s).unwrap().tcal(x).unwrap();
        assert!(rel(got, want) < 1e-11, "T_{s}({x}) = {got}, want {want}");
    }
}

//! Number formatting and the JSON shapes written by the CLI.
//!
//! Every float goes out with 17 significant digits so that reparsing gives
//! back the same bits.

use std::fmt::Write;

use chk_core::dpp::PointConfiguration;
use chk_core::Complex;

pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn complex_json(z: Complex) -> String {
    format!("{{\"re\":{},\"im\":{}}}", fmt17(z.re), fmt17(z.im))
}

/// One JSON line, without the trailing newline.
pub fn configuration_json(c: &PointConfiguration) -> String {
    let mut s = format!("{{\"seed\":{},\"interval\":[{},{}],\"points\":[", c.seed, fmt17(c.interval.0), fmt17(c.interval.1));
    for (i, &p) in c.points.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}", fmt17(p));
    }
    s.push_str("]}");
    s
}

pub fn configurations_jsonl(configs: &[PointConfiguration]) -> String {
    let mut s = String::new();
    for c in configs {
        s.push_str(&configuration_json(c));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_roundtrip() {
        for x in [1.0 / 3.0, -2.5e-300, 0.1, 12345.678901234567] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn configuration_shape() {
        let c = PointConfiguration { points: vec![-1.0, 2.0], seed: 9, interval: (-3.0, 3.0) };
        assert_eq!(
            configuration_json(&c),
            "{\"seed\":9,\"interval\":[-3.0000000000000000e0,3.0000000000000000e0],\"points\":[-1.0000000000000000e0,2.0000000000000000e0]}"
        );
    }
}

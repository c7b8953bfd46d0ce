//! Parsers for the textual flag forms.

use std::fmt;
use std::str::FromStr;

use chk_core::Complex;

/// A complex number written "a", "a+bi", "a-bi" or "bi".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let z: Complex = t.parse().map_err(|_| format!("not a complex number: {text:?}"))?;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(format!("complex number must be finite: {text:?}"));
        }
        Ok(ComplexArg(z))
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// "a:b". Ordering is checked by the command, since a ≥ b is a domain error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl FromStr for Interval {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (a, b) = text.split_once(':').ok_or_else(|| format!("expected a:b, got {text:?}"))?;
        Ok(Interval { a: finite(a)?, b: finite(b)? })
    }
}

/// "64,256,1024" or an inclusive range "1..8"; must ascend strictly.
#[derive(Debug, Clone, PartialEq)]
pub struct NList(pub Vec<usize>);

impl FromStr for NList {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad integer {s:?} in {text:?}"));
        let v: Vec<usize> = if let Some((lo, hi)) = text.split_once("..") {
            (parse(lo)?..=parse(hi)?).collect()
        } else {
            text.split(',').map(parse).collect::<Result<_, _>>()?
        };
        if v.is_empty() {
            return Err("empty n-list".into());
        }
        if v.windows(2).any(|w| w[0] >= w[1]) {
            return Err(format!("n-list must ascend: {text:?}"));
        }
        Ok(NList(v))
    }
}

/// "a:b:count", count equispaced points including both ends.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub a: f64,
    pub b: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.a];
        }
        let h = (self.b - self.a) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.b } else { self.a + h * i as f64 }).collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("expected a:b:count, got {text:?}"));
        };
        let count: usize = n.trim().parse().map_err(|_| format!("bad point count in {text:?}"))?;
        if count == 0 {
            return Err("grid needs at least one point".into());
        }
        let (a, b) = (finite(a)?, finite(b)?);
        if count > 1 && !(b > a) {
            return Err(format!("grid needs a < b: {text:?}"));
        }
        Ok(GridSpec { a, b, count })
    }
}

fn finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("not a finite number: {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!("0.3+0.7i".parse::<ComplexArg>().unwrap().0, Complex::new(0.3, 0.7));
        assert_eq!("-0.3-2i".parse::<ComplexArg>().unwrap().0, Complex::new(-0.3, -2.0));
        assert_eq!("0.5".parse::<ComplexArg>().unwrap().0, Complex::new(0.5, 0.0));
        assert_eq!("1.5i".parse::<ComplexArg>().unwrap().0, Complex::new(0.0, 1.5));
        assert!("abc".parse::<ComplexArg>().is_err());
        assert!("inf".parse::<ComplexArg>().is_err());
    }

    #[test]
    fn lists_and_grids() {
        assert_eq!("1..4".parse::<NList>().unwrap().0, vec![1, 2, 3, 4]);
        assert_eq!("64,256".parse::<NList>().unwrap().0, vec![64, 256]);
        assert!("256,64".parse::<NList>().is_err());
        let g: GridSpec = "-1:1:5".parse().unwrap();
        assert_eq!(g.points(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!("1:0:3".parse::<GridSpec>().is_err());
        let i: Interval = "-10:10".parse().unwrap();
        assert_eq!((i.a, i.b), (-10.0, 10.0));
    }
}

//! Double-double arithmetic (about 32 significant digits).
//!
//! Used where a power series cancels heavily: the terms of ₁F₁ on the
//! imaginary axis and the monomial Gram–Schmidt of the Jacobi-type basis.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = 134_217_729.0 * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // one Newton step on top of the f64 root
        let x = libm::sqrt(self.hi);
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).to_f64();
        let (s, t) = quick_two_sum(x, r / (2.0 * x));
        Dd { hi: s, lo: t }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * b.lo + self.lo * b.hi));
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: CDd = CDd { re: Dd::ONE, im: Dd::ZERO };

    #[inline]
    pub fn from_c64(z: Complex) -> CDd {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    #[inline]
    pub fn to_c64(self) -> Complex {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Magnitude estimate in f64 (only used for stopping rules).
    #[inline]
    pub fn norm_f64(self) -> f64 {
        libm::hypot(self.re.hi, self.im.hi)
    }

    #[inline]
    pub fn add_real(self, x: f64) -> CDd {
        CDd { re: self.re + Dd::from_f64(x), im: self.im }
    }

    #[inline]
    pub fn scale(self, x: Dd) -> CDd {
        CDd { re: self.re * x, im: self.im * x }
    }
}

impl Add for CDd {
    type Output = CDd;
    #[inline]
    fn add(self, b: CDd) -> CDd {
        CDd { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for CDd {
    type Output = CDd;
    #[inline]
    fn sub(self, b: CDd) -> CDd {
        CDd { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    #[inline]
    fn mul(self, b: CDd) -> CDd {
        CDd {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for CDd {
    type Output = CDd;
    #[inline]
    fn div(self, b: CDd) -> CDd {
        let den = b.re * b.re + b.im * b.im;
        CDd {
            re: (self.re * b.re + self.im * b.im) / den,
            im: (self.im * b.re - self.re * b.im) / den,
        }
    }
}

//! Minimal complex scalar used by the matrix kernels.

use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::math;

/// A complex number with `f64` components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

pub const ZERO: Cx = Cx { re: 0.0, im: 0.0 };
pub const ONE: Cx = Cx { re: 1.0, im: 0.0 };

impl Cx {
    #[inline]
    pub const fn new(re: f64, im: f64) -> Self {
        Cx { re, im }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Cx { re, im: 0.0 }
    }

    #[inline]
    pub fn conj(self) -> Self {
        Cx::new(self.re, -self.im)
    }

    /// Squared modulus.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    #[inline]
    pub fn abs(self) -> f64 {
        math::hypot(self.re, self.im)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Cx::new(self.re * s, self.im * s)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Add for Cx {
    type Output = Cx;
    #[inline]
    fn add(self, rhs: Cx) -> Cx {
        Cx::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Cx {
    #[inline]
    fn add_assign(&mut self, rhs: Cx) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for Cx {
    type Output = Cx;
    #[inline]
    fn sub(self, rhs: Cx) -> Cx {
        Cx::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for Cx {
    #[inline]
    fn sub_assign(&mut self, rhs: Cx) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl Mul for Cx {
    type Output = Cx;
    #[inline]
    fn mul(self, rhs: Cx) -> Cx {
        Cx::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl MulAssign for Cx {
    #[inline]
    fn mul_assign(&mut self, rhs: Cx) {
        *self = *self * rhs;
    }
}

impl Div for Cx {
    type Output = Cx;
    #[inline]
    fn div(self, rhs: Cx) -> Cx {
        let d = rhs.norm_sqr();
        Cx::new(
            (self.re * rhs.re + self.im * rhs.im) / d,
            (self.im * rhs.re - self.re * rhs.im) / d,
        )
    }
}

impl Neg for Cx {
    type Output = Cx;
    #[inline]
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = Cx::new(1.0, 2.0);
        let b = Cx::new(-3.0, 0.5);
        let p = a * b;
        assert_eq!(p, Cx::new(-3.0 - 1.0, 0.5 - 6.0));
        let q = p / b;
        assert!((q - a).abs() < 1e-14);
        assert_eq!(a.conj().im, -2.0);
        assert!((a.norm_sqr() - 5.0).abs() < 1e-15);
    }
}

//! Complex numbers carried as mantissa times `exp(e)` so that products of
//! exponentially large and small Airy factors never overflow.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::C64;

/// The value `m * exp(e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub m: C64,
    pub e: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled { m: C64 { re: 0.0, im: 0.0 }, e: f64::NEG_INFINITY };

    pub fn new(m: C64, e: f64) -> Self {
        Scaled { m, e }.normalized()
    }

    pub fn from_c(z: C64) -> Self {
        Scaled::new(z, 0.0)
    }

    /// `exp(w)` for complex `w`, kept in scaled form.
    pub fn exp(w: C64) -> Self {
        Scaled { m: crate::cis(w.im), e: w.re }
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    fn normalized(self) -> Self {
        let a = self.m.norm();
        if a == 0.0 || !a.is_finite() {
            if a == 0.0 {
                return Scaled::ZERO;
            }
            return self;
        }
        let l = a.ln();
        Scaled { m: self.m / a, e: self.e + l }
    }

    /// Natural log of the modulus.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.e + self.m.norm().ln()
        }
    }

    /// Plain complex value; overflows to infinity and underflows to zero.
    pub fn value(&self) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        self.m * self.e.exp()
    }

    /// Value after dividing by `exp(shift)`.
    pub fn value_shifted(&self, shift: f64) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        self.m * (self.e - shift).exp()
    }

    pub fn scale_by(&self, z: C64) -> Self {
        Scaled::new(self.m * z, self.e)
    }

    pub fn recip(&self) -> Self {
        Scaled::new(self.m.inv(), -self.e)
    }
}

impl From<C64> for Scaled {
    fn from(z: C64) -> Self {
        Scaled::from_c(z)
    }
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, o: Scaled) -> Scaled {
        if self.is_zero() || o.is_zero() {
            return Scaled::ZERO;
        }
        Scaled::new(self.m * o.m, self.e + o.e)
    }
}

impl Mul<C64> for Scaled {
    type Output = Scaled;
    fn mul(self, o: C64) -> Scaled {
        self.scale_by(o)
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, o: Scaled) -> Scaled {
        Scaled::new(self.m / o.m, self.e - o.e)
    }
}

impl Neg for Scaled {
    type Output = Scaled;
    fn neg(self) -> Scaled {
        Scaled { m: -self.m, e: self.e }
    }
}

impl Add for Scaled {
    type Output = Scaled;
    fn add(self, o: Scaled) -> Scaled {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let e = self.e.max(o.e);
        Scaled::new(self.m * (self.e - e).exp() + o.m * (o.e - e).exp(), e)
    }
}

impl Sub for Scaled {
    type Output = Scaled;
    fn sub(self, o: Scaled) -> Scaled {
        self + (-o)
    }
}

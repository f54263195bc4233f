use std::fmt;

use crate::error::{domain, Error, Result};

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(domain("interval", format!("need finite a < b, got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    /// The unit interval `[0, 1]`.
    pub fn unit() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    /// Maps `t` into the interval, absorbing rounding slack of `1e-12·(b-a)`
    /// at either end. Points further outside are rejected.
    pub(crate) fn clamp_checked(&self, op: &'static str, t: f64) -> Result<f64> {
        let slack = 1e-12 * self.len();
        if !t.is_finite() || t < self.a - slack || t > self.b + slack {
            return Err(domain(op, format!("t = {t} outside [{}, {}]", self.a, self.b)));
        }
        Ok(t.clamp(self.a, self.b))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

/// Derivative order α with `0 < α <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha <= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

impl fmt::Display for FracOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

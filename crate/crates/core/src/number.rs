use std::fmt;

/// A finite JSON number that prints integral values without a fraction.
///
/// `268` and `268.0` both print as `268`; other values use the shortest
/// representation that parses back to the same `f64`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Number(f64);

/// Largest magnitude at which every integer is exactly representable.
const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

impl Number {
    /// Returns `None` for NaN and infinities.
    pub fn new(value: f64) -> Option<Self> {
        value.is_finite().then_some(Number(value))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0.fract() == 0.0
    }

    pub fn as_i64(self) -> Option<i64> {
        (self.is_integral() && self.0.abs() < EXACT_INT_LIMIT).then_some(self.0 as i64)
    }
}

impl From<i64> for Number {
    fn from(v: i64) -> Self {
        Number(v as f64)
    }
}

impl From<u32> for Number {
    fn from(v: u32) -> Self {
        Number(f64::from(v))
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_i64() {
            Some(i) => write!(f, "{i}"),
            None => write!(f, "{}", self.0),
        }
    }
}

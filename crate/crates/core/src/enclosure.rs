use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numeric::{widen_down, widen_up};

/// A real value with a two-sided enclosure `lower <= true value <= upper`.
///
/// `value` is the best point estimate. Serializes as an object of decimal
/// strings `{value, lower, upper}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Enclosure {
    pub fn exact(value: f64) -> Self {
        Enclosure { value, lower: value, upper: value }
    }

    pub fn new(value: f64, lower: f64, upper: f64) -> Self {
        debug_assert!(lower <= value && value <= upper, "bad enclosure {lower} {value} {upper}");
        Enclosure { value, lower, upper }
    }

    /// Tight enclosure of an exact rational.
    pub fn from_rational(x: &dashu::rational::RBig) -> Self {
        let (lower, value, upper) = crate::numeric::rational_bounds(x);
        Enclosure { value, lower, upper }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Width relative to the magnitude of `value` (absolute width when the
    /// value is zero).
    pub fn relative_width(&self) -> f64 {
        let scale = self.value.abs();
        if scale == 0.0 {
            self.width()
        } else {
            self.width() / scale
        }
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Applies a nondecreasing function computed with libm accuracy, widening
    /// the bounds by a couple of ulps.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Enclosure {
        let value = f(self.value);
        let lower = widen_down(f(self.lower)).min(value);
        let upper = widen_up(f(self.upper)).max(value);
        Enclosure { value, lower, upper }
    }

    /// Applies a nonincreasing function, as in [`Enclosure::map_increasing`].
    pub fn map_decreasing(&self, f: impl Fn(f64) -> f64) -> Enclosure {
        let value = f(self.value);
        let lower = widen_down(f(self.upper)).min(value);
        let upper = widen_up(f(self.lower)).max(value);
        Enclosure { value, lower, upper }
    }

    /// Product of two nonnegative enclosures.
    pub fn mul_nonneg(&self, other: &Enclosure) -> Enclosure {
        debug_assert!(self.lower >= 0.0 && other.lower >= 0.0);
        let value = self.value * other.value;
        Enclosure {
            value,
            lower: (self.lower * other.lower).next_down().max(0.0).min(value),
            upper: (self.upper * other.upper).next_up().max(value),
        }
    }

    pub fn scale(&self, k: f64) -> Enclosure {
        let (a, b) = (self.lower * k, self.upper * k);
        let value = self.value * k;
        Enclosure {
            value,
            lower: a.min(b).next_down().min(value),
            upper: a.max(b).next_up().max(value),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EnclosureRepr {
    value: String,
    lower: String,
    upper: String,
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EnclosureRepr {
            value: format_f64(self.value),
            lower: format_f64(self.lower),
            upper: format_f64(self.upper),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Enclosure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = EnclosureRepr::deserialize(deserializer)?;
        let parse = |s: &str| s.parse::<f64>().map_err(D::Error::custom);
        Ok(Enclosure {
            value: parse(&repr.value)?,
            lower: parse(&repr.lower)?,
            upper: parse(&repr.upper)?,
        })
    }
}

/// Shortest decimal string that round-trips to the same `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_as_decimal_strings() {
        let e = Enclosure::new(0.5, 0.25, 1.0);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"value":"0.5","lower":"0.25","upper":"1.0"}"#);
        let back: Enclosure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn monotone_maps_keep_containment() {
        let e = Enclosure::new(2.0, 1.9, 2.1);
        let s = e.map_increasing(f64::sqrt);
        assert!(s.contains(2f64.sqrt()) && s.lower <= 1.9f64.sqrt() && s.upper >= 2.1f64.sqrt());
        let r = e.map_decreasing(|x| 1.0 / x);
        assert!(r.lower <= 1.0 / 2.1 && r.upper >= 1.0 / 1.9);
    }
}

use std::fmt;

use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, rational_to_f64};

/// A closed real segment `[a, b]` with rational endpoints, `a < b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    a: RBig,
    b: RBig,
}

impl Interval {
    pub fn new(a: RBig, b: RBig) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidInterval { a: a.to_string(), b: b.to_string() });
        }
        Ok(Interval { a, b })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        Self::new(RBig::from(IBig::from(a)), RBig::from(IBig::from(b)))
    }

    /// `[c - 2, c + 2]`, the segment of capacity one centered at `c`.
    pub fn centered(c: RBig) -> Self {
        let two = RBig::from(IBig::from(2));
        Interval { a: &c - &two, b: c + two }
    }

    /// Parses `"a,b"` where each endpoint is an integer, a fraction `p/q` or
    /// a finite decimal.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::InvalidArgument(format!("interval `{s}` must look like a,b")))?;
        Self::new(parse_rational(a)?, parse_rational(b)?)
    }

    pub fn a(&self) -> &RBig {
        &self.a
    }

    pub fn b(&self) -> &RBig {
        &self.b
    }

    pub fn length(&self) -> RBig {
        &self.b - &self.a
    }

    pub fn midpoint(&self) -> RBig {
        (&self.a + &self.b) / RBig::from(IBig::from(2))
    }

    pub fn a_f64(&self) -> f64 {
        rational_to_f64(&self.a)
    }

    pub fn b_f64(&self) -> f64 {
        rational_to_f64(&self.b)
    }

    pub fn contains(&self, x: &RBig) -> bool {
        &self.a <= x && x <= &self.b
    }

    /// `n` Chebyshev nodes of the first kind mapped into the interval, in
    /// increasing order.
    pub fn chebyshev_nodes(&self, n: usize) -> Vec<f64> {
        let (a, b) = (self.a_f64(), self.b_f64());
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        (0..n)
            .rev()
            .map(|k| {
                let theta = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * n) as f64;
                mid + half * theta.cos()
            })
            .collect()
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let [a, b] = <[String; 2]>::deserialize(deserializer)?;
        let a = parse_rational(&a).map_err(D::Error::custom)?;
        let b = parse_rational(&b).map_err(D::Error::custom)?;
        Interval::new(a, b).map_err(D::Error::custom)
    }
}

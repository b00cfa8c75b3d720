//! Conversions between exact big numbers and `f64`, plus a few integer helpers.

use dashu::base::{Approximation, BitTest, Sign, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{Error, Result};

/// Natural log of `|x|` for a nonzero big integer, accurate to a few ulps even
/// when `x` is far outside the `f64` range.
pub fn ln_abs(x: &IBig) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let mag: UBig = x.unsigned_abs();
    let bits = mag.bit_len();
    if bits <= 1000 {
        return to_f64(&IBig::from(mag)).ln();
    }
    let shift = bits - 64;
    let top: UBig = &mag >> shift;
    to_f64(&IBig::from(top)).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(x: &RBig) -> f64 {
    assert!(x.numerator().signum() > IBig::ZERO, "ln of nonpositive rational");
    ln_abs(x.numerator()) - ln_abs(&IBig::from(x.denominator().clone()))
}

pub fn to_f64(x: &IBig) -> f64 {
    x.to_f64().value()
}

pub fn rational_to_f64(x: &RBig) -> f64 {
    x.to_f64().value()
}

/// Rounds `x` to the nearest `f64` and returns `(lower, nearest, upper)` with
/// `lower <= x <= upper`.
pub fn rational_bounds(x: &RBig) -> (f64, f64, f64) {
    match x.to_f64() {
        Approximation::Exact(v) => (v, v, v),
        Approximation::Inexact(v, Sign::Positive) => (v.next_down(), v, v),
        Approximation::Inexact(v, Sign::Negative) => (v, v, v.next_up()),
    }
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> RBig {
    RBig::try_from(x).expect("finite float")
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"0.25"` into an exact
/// rational.
/// Serde helper writing a rational as its exact `p/q` string.
pub fn serialize_rational<S: serde::Serializer>(x: &RBig, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn parse_rational(s: &str) -> Result<RBig> {
    let t = s.trim();
    let bad = || Error::MalformedNumber(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: IBig = num.trim().parse().map_err(|_| bad())?;
        let den: IBig = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(RBig::from_parts_signed(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut num: IBig = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = UBig::from(10u8).pow(frac.len());
        return Ok(RBig::from_parts(num, den));
    }
    let n: IBig = t.parse().map_err(|_| bad())?;
    Ok(RBig::from(n))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> IBig {
    if k > n {
        return IBig::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = IBig::ONE;
    for i in 0..k {
        acc *= IBig::from(n - i);
        acc /= IBig::from(i + 1);
    }
    acc
}

/// The first `k` primes in increasing order.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut candidate = 2u64;
    while out.len() < k {
        if is_prime(candidate) {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational square root when `x` is a perfect square of a rational.
pub fn exact_sqrt(x: &RBig) -> Option<RBig> {
    if x.numerator().signum() < IBig::ZERO {
        return None;
    }
    let num = x.numerator().unsigned_abs();
    let den = x.denominator().clone();
    let rn = isqrt(&num);
    let rd = isqrt(&den);
    if &rn * &rn == num && &rd * &rd == den {
        Some(RBig::from_parts(IBig::from(rn), rd))
    } else {
        None
    }
}

/// Floor of the square root of a big unsigned integer.
pub fn isqrt(n: &UBig) -> UBig {
    if n.is_zero() {
        return UBig::ZERO;
    }
    // Newton iteration from an upper bound.
    let bits = n.bit_len();
    let mut x = UBig::ONE << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Steps `x` outward by two ulps. Used to turn results of correctly rounded
/// or faithfully rounded libm calls into safe bounds.
pub fn widen_down(x: f64) -> f64 {
    x.next_down().next_down()
}

pub fn widen_up(x: f64) -> f64 {
    x.next_up().next_up()
}

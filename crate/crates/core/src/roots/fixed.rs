//! Fixed-point complex numbers: a pair of big integers read as `x / 2^q` for
//! a scale `q` held by the caller. Horner evaluation truncates after every
//! product, so its error has a simple rigorous bound that is independent of
//! the coefficient sizes.

use dashu::base::{BitTest, UnsignedAbs};
use dashu::integer::IBig;
use num_complex::Complex64;

/// `m * 2^e` without overflow in the intermediate power.
pub(crate) fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e as i32)
}

/// `x` as `m * 2^e` with `m` an `f64` carrying the top 60 bits.
fn split(x: &IBig, drop: usize) -> f64 {
    if drop == 0 {
        crate::numeric::to_f64(x)
    } else {
        crate::numeric::to_f64(&(x >> drop))
    }
}

/// Nearest fixed-point value of `x` at scale `q`, rounded toward minus infinity.
pub(crate) fn f64_to_fixed(x: f64, q: usize) -> IBig {
    assert!(x.is_finite(), "non-finite coordinate");
    if x == 0.0 {
        return IBig::ZERO;
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if biased == 0 { (frac, -1074) } else { (frac | (1 << 52), biased - 1075) };
    let m = if x < 0.0 { -IBig::from(mant) } else { IBig::from(mant) };
    let shift = e + q as i64;
    if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Fix {
    pub re: IBig,
    pub im: IBig,
}

impl Fix {
    pub fn zero() -> Self {
        Fix { re: IBig::ZERO, im: IBig::ZERO }
    }

    pub fn from_c64(z: Complex64, q: usize) -> Self {
        Fix { re: f64_to_fixed(z.re, q), im: f64_to_fixed(z.im, q) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Moves from scale `from` to the larger scale `to`.
    pub fn rescale(&self, from: usize, to: usize) -> Self {
        Fix { re: &self.re << (to - from), im: &self.im << (to - from) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Fix { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// `(c, e)` with `self ≈ c * 2^e` as raw integers; relative error below
    /// `2^-52` in each coordinate.
    pub fn scaled(&self) -> (Complex64, i64) {
        let bits = (&self.re).unsigned_abs().bit_len().max((&self.im).unsigned_abs().bit_len());
        let drop = bits.saturating_sub(60);
        (Complex64::new(split(&self.re, drop), split(&self.im, drop)), drop as i64)
    }

    pub fn to_c64(&self, q: usize) -> Complex64 {
        let (c, e) = self.scaled();
        let s = e - q as i64;
        Complex64::new(ldexp(c.re, s), ldexp(c.im, s))
    }

    /// Natural log of the modulus of the raw integers, `-inf` at zero.
    pub fn ln_abs_raw(&self) -> f64 {
        let (c, e) = self.scaled();
        c.norm().ln() + e as f64 * std::f64::consts::LN_2
    }

    /// `floor(self * z)` at scale `q`.
    fn mul_trunc(&self, z: &Fix, q: usize) -> Fix {
        let re = &self.re * &z.re - &self.im * &z.im;
        let im = &self.re * &z.im + &self.im * &z.re;
        Fix { re: re >> q, im: im >> q }
    }

    /// `p(self)` for integer coefficients already scaled by `2^q`
    /// (low-to-high). The result differs from the exact value, times `2^q`,
    /// by less than `sqrt 2 * sum_{k<n} |self|^k`.
    pub fn horner(&self, scaled_coeffs: &[IBig], q: usize) -> Fix {
        let mut p = Fix::zero();
        for a in scaled_coeffs.iter().rev() {
            p = p.mul_trunc(self, q);
            p.re += a;
        }
        p
    }

    /// `p(self)` and `p'(self)` as in [`Fix::horner`].
    pub fn horner_with_derivative(&self, scaled_coeffs: &[IBig], q: usize) -> (Fix, Fix) {
        let mut p = Fix::zero();
        let mut dp = Fix::zero();
        for a in scaled_coeffs.iter().rev() {
            dp = dp.mul_trunc(self, q);
            dp.re += &p.re;
            dp.im += &p.im;
            p = p.mul_trunc(self, q);
            p.re += a;
        }
        (p, dp)
    }
}

/// Natural log of `sqrt 2 * sum_{k<n} r^k * 2^-q`, slightly enlarged: the
/// truncation error of [`Fix::horner`] in absolute terms.
pub(crate) fn ln_horner_error(n: usize, r: f64, q: usize) -> f64 {
    let lr = r.ln().max(0.0);
    let ln = std::f64::consts::SQRT_2.ln() + (n as f64).ln() + (n as f64 - 1.0) * lr - q as f64 * std::f64::consts::LN_2;
    ln + 1e-9 * (ln.abs() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip() {
        for x in [0.0, 1.0, -2.5, 1e-200, -3.75e150, 0.1] {
            let q = 1200;
            let f = Fix::from_c64(Complex64::new(x, -x), q);
            assert_eq!(f.to_c64(q), Complex64::new(x, -x), "{x}");
        }
        assert_eq!(f64_to_fixed(0.75, 2), IBig::from(3));
        assert_eq!(f64_to_fixed(-0.75, 1), IBig::from(-2));
    }

    #[test]
    fn horner_error_within_bound() {
        let q = 40;
        let coeffs: Vec<IBig> = [-1i64, 0, 1].iter().map(|&c| IBig::from(c) << q).collect();
        let z = Fix::from_c64(Complex64::new(1.0, 2.0), q);
        let (p, dp) = z.horner_with_derivative(&coeffs, q);
        // z^2 - 1 at 1 + 2i: -4 + 4i; derivative 2 + 4i
        assert_eq!(p.to_c64(q), Complex64::new(-4.0, 4.0));
        assert_eq!(dp.to_c64(q), Complex64::new(2.0, 4.0));
        // 1/3 is not representable: the truncation error stays in bound
        let third = Fix::from_c64(Complex64::new(1.0 / 3.0, 0.0), q);
        let exact = third.to_c64(q).re.powi(2) - 1.0;
        let got = third.horner(&coeffs, q).to_c64(q).re;
        assert!((got - exact).abs() <= ln_horner_error(2, 1.0 / 3.0, q).exp() + 1e-15);
    }
}

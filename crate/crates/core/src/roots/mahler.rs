use dashu::rational::RBig;
use num_complex::Complex64;
use serde::Serialize;

use super::find::{find_roots, CertifiedRoot, Reality, RootSet};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use dashu::base::UnsignedAbs;
use crate::numeric::{f64_to_rational, ln_abs, rational_bounds, widen_down, widen_up};
use crate::poly::IntPoly;

/// Root radius used before any refinement.
const FIRST_ROOT_EPS: f64 = 1e-12;

/// `|a_n| prod max(|z_k|, 1)`.
///
/// Roots certified on the unit circle contribute exactly one, so cyclotomic
/// factors leave no error at all.
pub fn mahler_measure(p: &IntPoly, eps: f64) -> Result<Enclosure> {
    check(p, eps)?;
    let mut root_eps = FIRST_ROOT_EPS;
    loop {
        let roots = find_roots(p, root_eps)?;
        let out = log_sum(p, &roots, |r| {
            let (lo, hi) = r.modulus_bounds();
            let c = r.center().norm();
            if hi <= 1.0 {
                return (0.0, 0.0, 0.0);
            }
            (c.max(1.0).ln(), widen_down(lo.max(1.0).ln()).max(0.0), widen_up(hi.ln()))
        });
        if out.relative_width() <= eps || root_eps < 1e-30 {
            return Ok(out);
        }
        root_eps *= 1e-6;
    }
}

/// Generalized Mahler measure for the segment `[c - 2, c + 2]` together with
/// the number of roots whose discs touch the segment without being certified
/// inside it. Those contribute a factor 1 to `value.value` and widen the
/// enclosure upward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneralizedMahler {
    pub value: Enclosure,
    pub boundary_roots: usize,
}

/// The exterior conformal map of the segment `[c - 2, c + 2]`, normalized by
/// `Φ(∞) = ∞`: the solution of `Φ + 1/Φ = z - c` with `|Φ| >= 1`.
pub fn conformal_map(z: Complex64, c: f64) -> Complex64 {
    let w = z - c;
    let root = (w * w - 4.0).sqrt();
    let (p, q) = ((w + root) / 2.0, (w - root) / 2.0);
    if p.norm() >= q.norm() {
        p
    } else {
        q
    }
}

/// `|Φ|` as a function of `S = (|w - 2| + |w + 2|) / 2`, half the sum of the
/// distances to the segment ends: `|Φ| = R` with `R + 1/R = S`.
fn modulus_from_focal_sum(s: f64) -> f64 {
    let s = s.max(2.0);
    (s + (s * s - 4.0).max(0.0).sqrt()) / 2.0
}

/// `|a_n| prod |Φ(z_k)|`, roots on the segment counting as one.
pub fn generalized_mahler(p: &IntPoly, c: &RBig, eps: f64) -> Result<GeneralizedMahler> {
    check(p, eps)?;
    let two = RBig::from(2u8);
    let (lo_end, hi_end) = (c - &two, c + &two);
    // a root exactly at an endpoint sits on the segment whatever its disc says
    let end_roots = [p.eval_rational(&lo_end).is_zero(), p.eval_rational(&hi_end).is_zero()];
    let (c_lo, c_mid, c_hi) = rational_bounds(c);
    let c_err = (c_hi - c_mid).max(c_mid - c_lo);
    let mut root_eps = FIRST_ROOT_EPS;
    loop {
        let roots = find_roots(p, root_eps)?;
        let mut boundary = 0;
        let value = log_sum(p, &roots, |r| {
            let disc_lo = f64_to_rational(r.re) - f64_to_rational(r.radius);
            let disc_hi = f64_to_rational(r.re) + f64_to_rational(r.radius);
            if r.reality == Reality::Real && disc_lo >= lo_end && disc_hi <= hi_end {
                return (0.0, 0.0, 0.0);
            }
            for (end, is_root) in [(&lo_end, end_roots[0]), (&hi_end, end_roots[1])] {
                if is_root && r.reality == Reality::Real && &disc_lo <= end && end <= &disc_hi {
                    return (0.0, 0.0, 0.0);
                }
            }
            let w = r.center() - c_mid;
            let s = ((w - 2.0).norm() + (w + 2.0).norm()) / 2.0;
            let slack = r.radius + c_err;
            let s_lo = (s - slack) * (1.0 - 4.0 * f64::EPSILON);
            let s_hi = (s + slack) * (1.0 + 4.0 * f64::EPSILON);
            let lower = widen_down(modulus_from_focal_sum(s_lo).ln()).max(0.0);
            let upper = widen_up(modulus_from_focal_sum(s_hi).ln());
            if s_lo <= 2.0 {
                boundary += r.multiplicity as usize;
                return (0.0, 0.0, upper);
            }
            (modulus_from_focal_sum(s).ln(), lower, upper)
        });
        if value.relative_width() <= eps || root_eps < 1e-30 {
            return Ok(GeneralizedMahler { value, boundary_roots: boundary });
        }
        root_eps *= 1e-6;
    }
}

fn check(p: &IntPoly, eps: f64) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    Ok(())
}

/// `|a_n| exp(sum mult * log factor)` from per-root `(value, lower, upper)`
/// logs of the factor.
fn log_sum(p: &IntPoly, roots: &RootSet, mut factor: impl FnMut(&CertifiedRoot) -> (f64, f64, f64)) -> Enclosure {
    let logs: Vec<((f64, f64, f64), f64)> = roots.roots.iter().map(|r| (factor(r), r.multiplicity as f64)).collect();
    let lc = p.leading().unsigned_abs();
    if logs.iter().all(|(l, _)| *l == (0.0, 0.0, 0.0)) {
        // every factor is exactly one
        let (l, m, h) = rational_bounds(&RBig::from(lc));
        return Enclosure::new(m, l, h);
    }
    let ln_lc = ln_abs(&p.leading());
    let (mut v, mut lo, mut hi) = (ln_lc, ln_lc, ln_lc);
    for ((fv, fl, fh), m) in logs {
        v += m * fv;
        lo += m * fl;
        hi += m * fh;
    }
    // rounding in the sums themselves
    let slack = 4.0 * f64::EPSILON * (roots.roots.len() as f64 + 1.0) * (hi.abs() + ln_lc.abs() + 1.0);
    let value = v.exp();
    Enclosure::new(value, widen_down((lo - slack).exp()).min(value), widen_up((hi + slack).exp()).max(value))
}

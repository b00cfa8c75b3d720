use dashu::rational::RBig;
use serde::Serialize;
use serde_json::json;

use super::factors::roots_inside;
use super::hilbert::sqrt_enclosure;
use super::report::{BoundKind, BoundReport, Certificate};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{ln_abs, widen_down, widen_up};
use crate::poly::{resultant, IntPoly, Interval};
use crate::roots::sup_norm_int;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeadingReport {
    pub report: BoundReport,
    /// `||R|| >= 1` (or `R` constant): the bound says nothing beyond 1.
    pub vacuous: bool,
    /// The interval-only bound `2 / sqrt(b - a)`.
    pub generic: Enclosure,
}

/// Lower bound `||R||_I^(-1/deg R)` for `liminf |a_n|^(1/n)` over integer
/// polynomials with simple zeros in `I` that share no zero with `R`.
///
/// Each such `P` of degree `n` has `1 <= |Res(P, R)| <= |a_n|^m ||R||^n`
/// with `m = deg R`, since `Res(P, R) = a_n^m prod R(z_j)` is a nonzero
/// integer and every `|R(z_j)|` is at most the norm.
pub fn leading_coeff_lower_bound(r: &IntPoly, interval: &Interval, eps: f64) -> Result<LeadingReport> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let generic = match generic_leading_bound_exact(interval) {
        Some(q) => {
            let (lo, mid, hi) = crate::numeric::rational_bounds(&q);
            Enclosure::new(mid, lo, hi)
        }
        None => sqrt_enclosure(&interval.length()).map_decreasing(|x| 2.0 / x),
    };
    let norm = sup_norm_int(r, interval, eps)?;
    let degree = r.degree();
    let vacuous = r.is_constant() || norm.lower >= 1.0;
    let value = if vacuous {
        Enclosure::exact(1.0)
    } else {
        let inv = -1.0 / degree as f64;
        norm.map_decreasing(|x| x.powf(inv))
    };
    let report = BoundReport {
        kind: BoundKind::LowerL,
        value,
        certificate: Certificate::Polynomial { coeffs: r.to_strings(), degree, norm },
        params: json!({ "interval": interval, "eps": eps, "vacuous": vacuous }),
    };
    Ok(LeadingReport { report, vacuous, generic })
}

/// The finite-degree form of the bound for one pair, in logs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultantCheck {
    /// `ln |Res(P, R)|`, from the exact integer.
    pub ln_resultant: f64,
    /// `ln(|a_n|^m ||R||^n)`.
    pub ln_bound: Enclosure,
    /// `|Res| >= 1`: a nonzero integer.
    pub resultant_at_least_one: bool,
    /// The enclosure is consistent with `|a_n|^m ||R||^n >= |Res|`.
    pub holds: bool,
}

/// Checks `|a_n|^m ||R||_I^n >= |Res(P, R)| >= 1` for `P` with all roots in
/// `I` and `R` coprime to it.
pub fn resultant_inequality(p: &IntPoly, r: &IntPoly, interval: &Interval, eps: f64) -> Result<ResultantCheck> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !roots_inside(p, interval)? {
        return Err(Error::Precondition("P must have all roots in the interval".into()));
    }
    let res = resultant(p, r)?;
    if res.is_zero() {
        return Err(Error::Precondition("P and R share a root".into()));
    }
    let (n, m) = (p.degree() as f64, r.degree() as f64);
    let norm = sup_norm_int(r, interval, eps)?;
    let lead = ln_abs(&p.leading());
    let ln_bound = Enclosure::new(
        m * lead + n * norm.value.ln(),
        widen_down(m * lead + n * norm.lower.ln()),
        widen_up(m * lead + n * norm.upper.ln()),
    );
    let ln_resultant = ln_abs(&res);
    let tolerance = 1e-12 * (1.0 + ln_resultant.abs());
    Ok(ResultantCheck {
        ln_resultant,
        resultant_at_least_one: !res.is_zero(),
        holds: ln_bound.upper + tolerance >= ln_resultant,
        ln_bound,
    })
}

/// `2 / sqrt(b - a)` as a rational when the length is a rational square.
pub fn generic_leading_bound_exact(interval: &Interval) -> Option<RBig> {
    crate::numeric::exact_sqrt(&interval.length()).map(|s| RBig::from(2) / s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{change_variable, VariableChange};

    #[test]
    fn squared_variable_bound() {
        let base = IntPoly::from_i64s(&[0, 1, -1]).to_rat();
        let r = change_variable(&base, &VariableChange::Square).to_int().unwrap();
        assert_eq!(r, IntPoly::from_i64s(&[0, 0, 1, 0, -1]));
        let i = Interval::from_i64(-1, 1).unwrap();
        let out = leading_coeff_lower_bound(&r, &i, 1e-12).unwrap();
        assert!(!out.vacuous);
        assert!((out.report.value.value - 2f64.sqrt()).abs() < 1e-10);
        assert!(out.report.value.contains(2f64.sqrt()));
    }

    #[test]
    fn constant_is_vacuous() {
        let i = Interval::from_i64(0, 1).unwrap();
        let out = leading_coeff_lower_bound(&IntPoly::one(), &i, 1e-12).unwrap();
        assert!(out.vacuous);
        assert_eq!(out.report.value, Enclosure::exact(1.0));
        assert_eq!(out.generic, Enclosure::exact(2.0));
        assert_eq!(generic_leading_bound_exact(&i), Some(RBig::from(2)));
        let wide = leading_coeff_lower_bound(&IntPoly::from_i64s(&[-2, 1]), &Interval::from_i64(0, 4).unwrap(), 1e-12).unwrap();
        assert!(wide.vacuous);
    }

    #[test]
    fn resultant_check() {
        // P = 6x^2 - 6x + 1 has roots in (0, 1); R = x(1 - x), Res = 36 * (1/6)^2 = 1
        let p = IntPoly::from_i64s(&[1, -6, 6]);
        let r = IntPoly::from_i64s(&[0, 1, -1]);
        let i = Interval::from_i64(0, 1).unwrap();
        let c = resultant_inequality(&p, &r, &i, 1e-12).unwrap();
        assert!(c.holds && c.resultant_at_least_one);
        assert_eq!(c.ln_resultant, 0.0);
        assert!(resultant_inequality(&p, &p, &i, 1e-12).is_err());
        assert!(resultant_inequality(&IntPoly::from_i64s(&[1, 0, 1]), &r, &i, 1e-12).is_err());
    }
}

use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::Serialize;
use serde_json::json;

use super::report::{BoundKind, BoundReport, Certificate};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{exact_sqrt, rational_bounds, widen_down, widen_up};
use crate::poly::Interval;

/// Enclosure of `sqrt(x)` for a nonnegative rational, exact when `x` is a
/// rational square.
pub(crate) fn sqrt_enclosure(x: &RBig) -> Enclosure {
    if let Some(r) = exact_sqrt(x) {
        let (lo, mid, hi) = rational_bounds(&r);
        return Enclosure::new(mid, lo, hi);
    }
    let (lo, mid, hi) = rational_bounds(x);
    let value = mid.sqrt();
    Enclosure::new(value, widen_down(lo.sqrt()).min(value), widen_up(hi.sqrt()).max(value))
}

/// `t_Z(I) <= min(1, sqrt(|I| / 4))`.
pub fn hilbert_upper_bound(interval: &Interval) -> BoundReport {
    let quarter = interval.length() / RBig::from(IBig::from(4));
    let (value, expression) = if quarter >= RBig::ONE {
        (Enclosure::exact(1.0), "1 (length at least 4)".to_string())
    } else {
        (sqrt_enclosure(&quarter), "sqrt((b - a) / 4)".to_string())
    };
    BoundReport {
        kind: BoundKind::Hilbert,
        value,
        certificate: Certificate::Formula { expression },
        params: json!({ "interval": interval }),
    }
}

/// Bounds for `I_m = [1/(m+4), 1/m]`: the lower bound `1/(m+2)` against the
/// Hilbert upper bound, and their ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigubReport {
    pub m: u64,
    pub interval: Interval,
    pub lower: Enclosure,
    pub upper: Enclosure,
    pub ratio: Enclosure,
    pub report: BoundReport,
}

pub fn trigub_interval_report(m: u64) -> Result<TrigubReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let r = |num: u64, den: u64| RBig::from_parts(IBig::from(num), den.into());
    let interval = Interval::new(r(1, m + 4), r(1, m))?;
    let (lo, mid, hi) = rational_bounds(&r(1, m + 2));
    let lower = Enclosure::new(mid, lo, hi);
    let upper = hilbert_upper_bound(&interval).value;
    // ratio = sqrt(m (m + 4)) / (m + 2), increasing to 1
    let ratio = sqrt_enclosure(&r(m * (m + 4), (m + 2) * (m + 2)));
    let report = BoundReport {
        kind: BoundKind::Trigub,
        value: lower,
        certificate: Certificate::Formula { expression: "1 / (m + 2)".into() },
        params: json!({ "m": m, "interval": interval }),
    };
    Ok(TrigubReport { m, interval, lower, upper, ratio, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_upper_bound(&Interval::from_i64(0, 1).unwrap()).value, Enclosure::exact(0.5));
        assert_eq!(hilbert_upper_bound(&Interval::from_i64(0, 4).unwrap()).value, Enclosure::exact(1.0));
        assert_eq!(hilbert_upper_bound(&Interval::from_i64(-3, 7).unwrap()).value, Enclosure::exact(1.0));
        assert!(hilbert_upper_bound(&Interval::from_i64(-1, 1).unwrap()).value.contains(std::f64::consts::FRAC_1_SQRT_2));
    }

    #[test]
    fn trigub_examples() {
        let t1 = trigub_interval_report(1).unwrap();
        assert!(t1.lower.contains(1.0 / 3.0));
        assert!(t1.upper.contains(0.2f64.sqrt()));
        let t10 = trigub_interval_report(10).unwrap();
        assert!(t10.lower.contains(1.0 / 12.0));
        assert!(t10.ratio.lower > t1.ratio.upper);
        let mut prev = 0.0;
        for m in 1..=100 {
            let t = trigub_interval_report(m).unwrap();
            assert!(t.ratio.lower > prev && t.ratio.upper <= 1.0);
            prev = t.ratio.upper;
        }
        assert!(trigub_interval_report(0).is_err());
    }
}

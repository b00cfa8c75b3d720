use dashu::base::UnsignedAbs;
use dashu::integer::IBig;
use serde::Serialize;
use serde_json::json;

use super::report::{BoundKind, BoundReport, Certificate};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::f64_to_rational;
use crate::par;
use crate::poly::{IntPoly, Interval};
use crate::roots::sup_norm_int;

const SAMPLE_NODES: usize = 48;
const BLOCK: u64 = 4096;
const NORM_EPS: f64 = 1e-12;

/// One row of the exhaustive table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveRow {
    pub n: usize,
    /// Minimizer of the sup norm over nonzero polynomials of degree `<= n`.
    pub winner: Vec<String>,
    pub norm: Enclosure,
    /// `norm^(1/n)`.
    pub norm_root: Enclosure,
    /// Best `||P||^(1/deg P)` over searched `P` with `1 <= deg P <= n`, an
    /// upper bound for the integer Chebyshev constant. Absent while no
    /// nonconstant candidate has norm at most 1.
    pub best_bound: Option<Enclosure>,
    pub best_bound_poly: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveReport {
    pub interval: Interval,
    pub n_max: usize,
    pub height: u32,
    pub rows: Vec<ExhaustiveRow>,
    /// The budget ran out before degree `n_max`; `rows` stops early.
    pub truncated: bool,
    pub candidates: u64,
    pub report: BoundReport,
}

#[derive(Clone)]
struct Best {
    poly: IntPoly,
    norm: Enclosure,
}

/// Strict order used for winners: smaller certified value first, then the
/// coefficient vectors (low-to-high, zero padded) compared lexicographically
/// by absolute value and then by sign. Candidates have positive leading
/// coefficient, which picks the representative of `P` and `-P`.
fn better(a: &Best, b: &Best) -> bool {
    match a.norm.value.total_cmp(&b.norm.value) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => padded_lt(a.poly.coeffs(), b.poly.coeffs()),
    }
}

fn padded_lt(a: &[IBig], b: &[IBig]) -> bool {
    let n = a.len().max(b.len());
    let pad = |v: &[IBig], k: usize| v.get(k).cloned().unwrap_or(IBig::ZERO);
    let abs_key = |v: &[IBig]| (0..n).map(|k| pad(v, k).unsigned_abs()).collect::<Vec<_>>();
    let signed_key = |v: &[IBig]| (0..n).map(|k| pad(v, k)).collect::<Vec<_>>();
    (abs_key(a), signed_key(a)) < (abs_key(b), signed_key(b))
}

fn root_enclosure(e: &Enclosure, k: usize) -> Enclosure {
    let inv = 1.0 / k as f64;
    e.map_increasing(|x| x.powf(inv))
}

/// Sample points inside the interval with their powers, endpoints first:
/// integer-valued endpoints prune most candidates immediately.
struct Samples {
    powers: Vec<Vec<f64>>,
}

impl Samples {
    fn new(interval: &Interval, degree: usize) -> Self {
        let mut xs = vec![interval.a_f64(), interval.b_f64(), crate::numeric::rational_to_f64(&interval.midpoint())];
        xs.extend(interval.chebyshev_nodes(SAMPLE_NODES));
        let xs: Vec<f64> = xs.into_iter().filter(|&x| interval.contains(&f64_to_rational(x))).collect();
        let powers = xs
            .iter()
            .map(|&x| {
                let mut p = vec![1.0; degree + 1];
                for k in 1..=degree {
                    p[k] = p[k - 1] * x;
                }
                p
            })
            .collect();
        Samples { powers }
    }

    /// True when some sample proves `||P|| > threshold`.
    fn exceeds(&self, coeffs: &[i64], threshold: f64) -> bool {
        let d = coeffs.len();
        for pw in &self.powers {
            let (mut v, mut mag) = (0.0, 0.0);
            for k in 0..d {
                let t = coeffs[k] as f64 * pw[k];
                v += t;
                mag += t.abs();
            }
            // rounding of the sum and of the powers
            if v.abs() - 4.0 * (2 * d + 2) as f64 * f64::EPSILON * mag > threshold {
                return true;
            }
        }
        false
    }
}

fn decode(index: u64, degree: usize, height: i64) -> Vec<i64> {
    let base = (2 * height + 1) as u64;
    let mut rest = index;
    let mut c = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        c.push((rest % base) as i64 - height);
        rest /= base;
    }
    c.push(1 + rest as i64);
    c
}

/// Minimal sup norms over integer polynomials with coefficients bounded by
/// `height` in absolute value, for every degree up to `n_max`.
///
/// Candidates are enumerated with positive leading coefficient (the norm is
/// sign-blind). Samples inside the interval give rigorous lower bounds that
/// discard everything unable to beat the current bests; survivors get a
/// certified sup norm.
pub fn exhaustive_integer_chebyshev(interval: &Interval, n_max: usize, height: u32, budget: u64) -> Result<ExhaustiveReport> {
    if height == 0 {
        return Err(Error::InvalidArgument("height must be at least 1".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let h = height as i64;
    let samples = Samples::new(interval, n_max);
    // degree <= n minimizer, starting from the constant 1
    let mut q = Best { poly: IntPoly::one(), norm: Enclosure::exact(1.0) };
    let mut u: Option<(Best, usize, Enclosure)> = None;
    let mut rows = Vec::new();
    let mut examined: u64 = 0;
    let mut truncated = false;
    for d in 1..=n_max {
        let count = (h as u64).checked_mul((2 * h as u64 + 1).checked_pow(d as u32).unwrap_or(u64::MAX)).unwrap_or(u64::MAX);
        if examined.saturating_add(count) > budget {
            truncated = true;
            break;
        }
        examined += count;
        // anything useful must beat Q_{d-1} or the running root bound
        let u_thr = u.as_ref().map_or(0.0, |(_, _, r)| r.upper.powi(d as i32) * (1.0 + 1e-12));
        let threshold = q.norm.upper.max(u_thr);
        let survivors: Vec<u64> = par::fold_blocks(
            0..count,
            BLOCK,
            Vec::new(),
            |mut acc, i| {
                if !samples.exceeds(&decode(i, d, h), threshold) {
                    acc.push(i);
                }
                acc
            },
            |mut a, b| {
                a.extend(b);
                a
            },
        );
        let certified: Vec<Result<Best>> = par::map(&survivors, |&i| {
            let poly = IntPoly::from_i64s(&decode(i, d, h));
            let norm = sup_norm_int(&poly, interval, NORM_EPS)?;
            Ok(Best { poly, norm })
        });
        for c in certified {
            let c = c?;
            if better(&c, &q) {
                q = c.clone();
            }
            let root = root_enclosure(&c.norm, d);
            let replace = match &u {
                None => true,
                Some((ub, _, r)) => {
                    root.value < r.value || (root.value == r.value && padded_lt(c.poly.coeffs(), ub.poly.coeffs()))
                }
            };
            if replace {
                u = Some((c, d, root));
            }
        }
        rows.push(ExhaustiveRow {
            n: d,
            winner: q.poly.to_strings(),
            norm: q.norm,
            norm_root: root_enclosure(&q.norm, d),
            best_bound: u.as_ref().map(|(_, _, r)| *r),
            best_bound_poly: u.as_ref().map(|(b, _, _)| b.poly.to_strings()),
        });
    }
    let (value, certificate) = match &u {
        Some((ub, deg, r)) if r.value < 1.0 => {
            (*r, Certificate::Polynomial { coeffs: ub.poly.to_strings(), degree: *deg, norm: ub.norm })
        }
        _ => (Enclosure::exact(1.0), Certificate::Polynomial { coeffs: vec!["1".into()], degree: 0, norm: Enclosure::exact(1.0) }),
    };
    let report = BoundReport {
        kind: BoundKind::UpperTz,
        value,
        certificate,
        params: json!({ "interval": interval, "n_max": n_max, "height": height, "budget": budget }),
    };
    Ok(ExhaustiveReport { interval: interval.clone(), n_max, height, rows, truncated, candidates: examined, report })
}

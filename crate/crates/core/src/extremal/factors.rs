use microlp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, SolveOutcome};
use serde::Serialize;
use serde_json::json;

use super::report::{BoundKind, BoundReport, Certificate};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{f64_to_rational, widen_down, widen_up};
use crate::par;
use crate::poly::{IntPoly, Interval};
use crate::roots::{find_roots, sup_norm_int, Reality};

const DEFAULT_BASIS_01: &str = include_str!("../../data/basis_01.json");

/// Integer polynomial factors for the weighted potential, each flagged with
/// whether all of its roots provably lie in the target interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorBasis {
    #[serde(serialize_with = "serialize_polys")]
    pub factors: Vec<IntPoly>,
    pub roots_in_interval: Vec<bool>,
}

fn serialize_polys<S: serde::Serializer>(v: &[IntPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_strings()))
}

impl FactorBasis {
    /// Validates the factors: nonconstant, primitive, pairwise non-associate.
    pub fn new(factors: Vec<IntPoly>, interval: &Interval) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("factor basis is empty".into()));
        }
        for (i, q) in factors.iter().enumerate() {
            if q.is_constant() {
                return Err(Error::InvalidArgument(format!("factor {i} is constant")));
            }
            if q.content() != dashu::integer::UBig::ONE {
                return Err(Error::InvalidArgument(format!("factor {i} is not primitive")));
            }
            for (j, r) in factors[..i].iter().enumerate() {
                if q == r || *q == -r {
                    return Err(Error::InvalidArgument(format!("factors {j} and {i} are associates")));
                }
            }
        }
        let roots_in_interval = factors.iter().map(|q| roots_inside(q, interval)).collect::<Result<_>>()?;
        Ok(FactorBasis { factors, roots_in_interval })
    }

    /// Reads a JSON list of coefficient lists (low-to-high, integers or
    /// integer strings).
    pub fn from_json(text: &str, interval: &Interval) -> Result<Self> {
        let raw: Vec<Vec<serde_json::Value>> =
            serde_json::from_str(text).map_err(|e| Error::MalformedPolynomial(format!("factor basis: {e}")))?;
        let factors = raw
            .iter()
            .map(|c| {
                let items: Vec<String> = c
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::String(s) => Ok(s.clone()),
                        serde_json::Value::Number(n) if n.is_i64() => Ok(n.to_string()),
                        other => Err(Error::MalformedPolynomial(format!("bad coefficient {other}"))),
                    })
                    .collect::<Result<_>>()?;
                IntPoly::from_strings(&items)
            })
            .collect::<Result<_>>()?;
        Self::new(factors, interval)
    }

    /// The shipped basis for `[0, 1]`.
    pub fn default_unit_interval() -> Self {
        let i = Interval::from_i64(0, 1).expect("valid interval");
        Self::from_json(DEFAULT_BASIS_01, &i).expect("shipped basis is valid")
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(IntPoly::degree).collect()
    }
}

pub(crate) fn roots_inside(q: &IntPoly, interval: &Interval) -> Result<bool> {
    let roots = find_roots(q, 1e-12)?;
    Ok(roots.roots.iter().all(|r| {
        r.reality == Reality::Real
            && interval.contains(&f64_to_rational(r.re - r.radius))
            && interval.contains(&f64_to_rational(r.re + r.radius))
    }))
}

/// Nonnegative exponent weights with `sum s_i deg Q_i = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Weights {
    pub s: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorOptions {
    /// Initial Chebyshev grid size.
    pub grid_size: usize,
    /// Exchange stops once the potential maximum exceeds the discrete optimum
    /// by at most this much (in log scale).
    pub grid_eps: f64,
    /// Target gap between the realized polynomial bound and the optimum.
    pub lp_eps: f64,
    pub max_exchange_rounds: usize,
    /// Total degree of the integer realization; `None` skips it.
    pub realize_degree: Option<usize>,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { grid_size: 2048, grid_eps: 1e-12, lp_eps: 1e-6, max_exchange_rounds: 50, realize_degree: Some(60) }
    }
}

/// An integer polynomial `prod Q_i^k_i` with `k_i` the rounded `s_i m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realization {
    pub exponents: Vec<u32>,
    pub coeffs: Vec<String>,
    pub degree: usize,
    pub norm: Enclosure,
    /// `norm^(1/degree)`: a certified upper bound for the constant.
    pub bound: Enclosure,
    /// `bound.upper <= value.upper + lp_eps`.
    pub within_lp_eps: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorReport {
    pub weights: Weights,
    pub report: BoundReport,
    /// Final `max V - t` on the log scale.
    pub gap: f64,
    pub exchange_rounds: usize,
    pub realization: Option<Realization>,
}

/// `sum_i s_i ln |Q_i(x)|`.
fn potential(logs: &[f64], s: &[f64]) -> f64 {
    logs.iter().zip(s).map(|(l, w)| if *w == 0.0 { 0.0 } else { l * w }).sum()
}

fn log_row(factors: &[Vec<f64>], x: f64) -> Option<Vec<f64>> {
    let row: Vec<f64> = factors
        .iter()
        .map(|c| c.iter().rev().fold(0.0, |acc, a| acc * x + a).abs().ln())
        .collect();
    row.iter().all(|l| l.is_finite()).then_some(row)
}

/// One LP step around the weights `s0`.
///
/// Unknowns are rescaled deviations `s = s0 + eps d`, `t = top + eps tau`,
/// so the solver's absolute tolerance acts on the scale of the current gap.
/// Deviations are boxed by `radius`; rows that no step in the box can make
/// binding are left out. Returns the new weights, the LP value and whether
/// that value is a lower bound for the discrete problem (box inactive).
fn lp_step(rows: &[Vec<f64>], degrees: &[usize], s0: &[f64], top: f64, eps: f64, radius: f64) -> Result<(Vec<f64>, f64, bool)> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let d: Vec<_> = s0.iter().map(|&w| lp.add_var(0.0, ((-w / eps).max(-radius), radius))).collect();
    let tau = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    for row in rows {
        let rhs = (top - potential(row, s0)) / eps;
        let reach: f64 = row.iter().map(|l| l.abs()).sum::<f64>() * radius;
        if rhs > reach + 2.0 {
            continue;
        }
        let mut e = LinearExpr::empty();
        for (v, l) in d.iter().zip(row) {
            e.add(*v, *l);
        }
        e.add(tau, -1.0);
        lp.add_constraint(e, ComparisonOp::Le, rhs);
    }
    let mut norm = LinearExpr::empty();
    for (v, m) in d.iter().zip(degrees) {
        norm.add(*v, *m as f64);
    }
    lp.add_constraint(norm, ComparisonOp::Eq, 0.0);
    let sol = match lp.solve().map_err(|e| Error::LinearProgram(format!("degenerate factor LP: {e}")))? {
        SolveOutcome::Solution(sol) => sol,
        SolveOutcome::Interrupted(_) => return Err(Error::LinearProgram("factor LP interrupted".into())),
    };
    let boxed = d.iter().zip(s0).any(|(v, w)| {
        let x = sol.var_value(*v);
        x >= radius * (1.0 - 1e-9) || (x <= -radius * (1.0 - 1e-9) && radius < w / eps)
    });
    let mut w: Vec<f64> = s0.iter().zip(&d).map(|(w, v)| (w + eps * sol.var_value(*v)).max(0.0)).collect();
    let total: f64 = w.iter().zip(degrees).map(|(x, m)| x * *m as f64).sum();
    for x in &mut w {
        *x /= total;
    }
    // the solver's absolute tolerance, on the rescaled problem
    Ok((w, top + eps * (sol.var_value(tau) - 1e-7), !boxed))
}

/// Local maxima of the potential: a dense scan followed by golden-section
/// refinement of the best brackets.
fn maximizers(factors: &[Vec<f64>], s: &[f64], interval: &Interval, count: usize) -> Vec<(f64, f64)> {
    let mut xs = vec![interval.a_f64(), interval.b_f64()];
    xs.extend(interval.chebyshev_nodes(16384));
    xs.retain(|&x| interval.contains(&f64_to_rational(x)));
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let v: Vec<f64> = par::map(&xs, |&x| log_row(factors, x).map_or(f64::NEG_INFINITY, |r| potential(&r, s)));
    let mut peaks: Vec<usize> = (0..xs.len())
        .filter(|&k| v[k].is_finite() && (k == 0 || v[k] >= v[k - 1]) && (k + 1 == xs.len() || v[k] >= v[k + 1]))
        .collect();
    peaks.sort_by(|&i, &j| v[j].total_cmp(&v[i]).then(i.cmp(&j)));
    peaks.truncate(count);
    let f = |x: f64| log_row(factors, x).map_or(f64::NEG_INFINITY, |r| potential(&r, s));
    peaks
        .into_iter()
        .map(|k| {
            let lo = xs[k.saturating_sub(1)];
            let hi = xs[(k + 1).min(xs.len() - 1)];
            let (x, fx) = golden_max(&f, lo, hi);
            if fx >= v[k] {
                (x, fx)
            } else {
                (xs[k], v[k])
            }
        })
        .collect()
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * (lo.abs() + hi.abs()).max(1e-300) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Minimizes `max_{x in I} sum s_i ln|Q_i(x)|` over weights with
/// `sum s_i deg Q_i = 1`.
///
/// The semi-infinite problem is discretized on Chebyshev nodes and solved as
/// an LP; exchange rounds then add the maximizers of the current potential
/// until the discrete and continuous maxima agree to `grid_eps`. The value
/// encloses `exp(F(s))` between the discrete optimum and the located maximum.
/// The optional integer realization gives a fully certified upper bound.
pub fn factor_exponent_optimize(basis: &FactorBasis, interval: &Interval, opts: &FactorOptions) -> Result<FactorReport> {
    if opts.grid_size < 2 {
        return Err(Error::InvalidArgument("grid_size must be at least 2".into()));
    }
    let degrees = basis.degrees();
    let factors: Vec<Vec<f64>> = basis.factors.iter().map(IntPoly::to_f64_coeffs).collect();
    let nodes = interval.chebyshev_nodes(opts.grid_size);
    // nodes at roots of a factor are dropped: they cannot carry the maximum
    let mut rows: Vec<Vec<f64>> = par::map(&nodes, |&x| log_row(&factors, x)).into_iter().flatten().collect();
    if rows.is_empty() {
        return Err(Error::InvalidArgument("every grid node is a root of the basis".into()));
    }
    let k = degrees.len() as f64;
    let mut s: Vec<f64> = degrees.iter().map(|&m| 1.0 / (k * m as f64)).collect();
    let top = rows.iter().map(|r| potential(r, &s)).fold(f64::NEG_INFINITY, f64::max);
    let (s1, mut t, _) = lp_step(&rows, &degrees, &s, top, 1.0, f64::INFINITY)?;
    s = s1;
    let mut rounds = 0;
    let (mut vmax, mut gap);
    loop {
        let peaks = maximizers(&factors, &s, interval, 4);
        vmax = peaks.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        gap = (vmax - t).max(0.0);
        if gap <= opts.grid_eps || rounds >= opts.max_exchange_rounds {
            break;
        }
        rounds += 1;
        for &(x, _) in &peaks {
            if let Some(row) = log_row(&factors, x) {
                if !rows.contains(&row) {
                    rows.push(row);
                }
            }
        }
        let eps = gap.max(1e-15);
        let (s1, t1, bound) = lp_step(&rows, &degrees, &s, vmax, eps, 10.0 / eps.sqrt())?;
        s = s1;
        if bound {
            t = t.max(t1);
        }
    }
    let slack = 1e-12 * (1.0 + vmax.abs());
    let value = Enclosure::new(vmax.exp(), widen_down(t.min(vmax).exp()), widen_up((vmax + slack).exp()));
    let realization = match opts.realize_degree {
        Some(m) => Some(realize(basis, &s, m, interval, &value, opts.lp_eps)?),
        None => None,
    };
    let report = BoundReport {
        kind: BoundKind::UpperTz,
        value,
        certificate: Certificate::Weights {
            factors: basis.factors.iter().map(IntPoly::to_strings).collect(),
            weights: s.clone(),
            grid_size: rows.len(),
            exchange_rounds: rounds,
        },
        params: json!({
            "interval": interval,
            "grid_size": opts.grid_size,
            "grid_eps": opts.grid_eps,
            "lp_eps": opts.lp_eps,
            "realize_degree": opts.realize_degree,
        }),
    };
    Ok(FactorReport { weights: Weights { s }, report, gap, exchange_rounds: rounds, realization })
}

fn realize(basis: &FactorBasis, s: &[f64], m: usize, interval: &Interval, value: &Enclosure, lp_eps: f64) -> Result<Realization> {
    let exponents: Vec<u32> = s.iter().map(|w| (w * m as f64).round() as u32).collect();
    let mut p = IntPoly::one();
    for (q, &k) in basis.factors.iter().zip(&exponents) {
        p = &p * &q.pow(k);
    }
    if p.is_constant() {
        return Err(Error::InvalidArgument(format!("realization degree {m} rounds every exponent to zero")));
    }
    let degree = p.degree();
    let norm = sup_norm_int(&p, interval, 1e-12)?;
    let inv = 1.0 / degree as f64;
    let bound = norm.map_increasing(|x| x.powf(inv));
    Ok(Realization {
        exponents,
        coeffs: p.to_strings(),
        degree,
        norm,
        within_lp_eps: bound.upper <= value.upper + lp_eps,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::from_i64(0, 1).unwrap()
    }

    fn basis(polys: &[&[i64]]) -> Result<FactorBasis> {
        FactorBasis::new(polys.iter().map(|c| IntPoly::from_i64s(c)).collect(), &unit())
    }

    #[test]
    fn symmetric_pair() {
        let b = basis(&[&[0, 1], &[1, -1]]).unwrap();
        assert_eq!(b.roots_in_interval, vec![true, true]);
        let r = factor_exponent_optimize(&b, &unit(), &FactorOptions::default()).unwrap();
        assert!((r.report.value.value - 0.5).abs() < 1e-6, "{:?}", r.report.value);
        assert!(r.report.value.contains(0.5));
        for w in &r.weights.s {
            assert!((w - 0.5).abs() < 1e-6);
        }
        let real = r.realization.unwrap();
        assert_eq!(real.exponents, vec![30, 30]);
        assert!(real.bound.contains(0.5) && real.within_lp_eps);
    }

    #[test]
    fn rejects_bad_bases() {
        assert!(basis(&[&[1]]).is_err());
        assert!(basis(&[&[0, 2]]).is_err());
        assert!(basis(&[&[0, 1], &[0, -1]]).is_err());
        assert!(basis(&[]).is_err());
    }

    #[test]
    fn richer_basis_improves() {
        let b = basis(&[&[0, 1], &[1, -1], &[-1, 2], &[1, -5, 5]]).unwrap();
        let r = factor_exponent_optimize(&b, &unit(), &FactorOptions::default()).unwrap();
        let v = r.report.value;
        assert!(v.upper < 0.5 && v.lower > 0.4213, "{v:?}");
        let w: f64 = r.weights.s.iter().zip(b.degrees()).map(|(s, m)| s * m as f64).sum();
        assert!((w - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shipped_basis_flags() {
        let b = FactorBasis::default_unit_interval();
        assert_eq!(b.factors.len(), 8);
        assert_eq!(b.roots_in_interval, vec![true, true, true, true, true, false, true, false]);
    }
}

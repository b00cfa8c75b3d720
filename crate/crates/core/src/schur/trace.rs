use dashu::base::Abs;
use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::Serialize;

use super::check::{enclosure_cells, CheckResult, CheckRow, RowVerdict};
use super::family::{FamilySpec, Member};
use super::growth::elementary;
use crate::enclosure::{format_f64, Enclosure};
use crate::error::{Error, Result};
use crate::numeric::{binomial, ln_abs, rational_to_f64, widen_down, widen_up};
use crate::par;
use crate::roots::{find_roots, generalized_mahler, Reality};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCell {
    pub m: usize,
    /// `sigma_m / C(n, m)` as an exact fraction.
    pub exact: String,
    pub value: Enclosure,
    /// `|a_0|^(m/n)`, the geometric-mean floor.
    pub floor: Enclosure,
    /// `c^m` for families equidistributed on `[c - 2, c + 2]`.
    pub equilibrium: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRow {
    pub label: String,
    pub n: usize,
    /// Mean of the roots `sigma_1 / n`, exact.
    pub mean: String,
    pub mean_value: f64,
    pub ratios: Vec<RatioCell>,
    /// Roots certified real (positivity is exact from the signs).
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceTable {
    pub m_max: usize,
    pub rows: Vec<TraceRow>,
    /// Entry `m - 1`: `sigma_m / C(n, m)` strictly increases along the rows.
    pub increasing: Vec<bool>,
    pub check: CheckResult,
}

fn ratio(p: &crate::poly::IntPoly, m: usize) -> RBig {
    elementary(p, m) / RBig::from(binomial(p.degree(), m))
}

/// Whether all roots of `P` are certified real (`Some(false)` when some
/// root is unresolved) and positive; certified non-real or non-positive
/// roots are precondition errors.
fn totally_positive(member: &Member, eps: f64) -> Result<bool> {
    let p = &member.poly;
    if p.leading() != IBig::ONE {
        return Err(Error::Precondition(format!("{} is not monic", member.label)));
    }
    let roots = find_roots(p, eps)?.roots;
    if roots.iter().any(|r| r.reality == Reality::NonReal) {
        return Err(Error::Precondition(format!("{} has a non-real root", member.label)));
    }
    // with every root real, all are positive exactly when the coefficients
    // strictly alternate in sign
    let c = p.coeffs();
    let alternating = (0..c.len()).all(|k| {
        let want_positive = (c.len() - 1 - k) % 2 == 0;
        if want_positive {
            c[k] > IBig::ZERO
        } else {
            c[k] < IBig::ZERO
        }
    });
    let certified = roots.iter().all(|r| r.reality == Reality::Real);
    if certified && !alternating {
        return Err(Error::Precondition(format!("{} has a non-positive root", member.label)));
    }
    Ok(certified)
}

fn equilibrium_center(family: &FamilySpec) -> Option<f64> {
    matches!(family, FamilySpec::Chebyshev04 { .. } | FamilySpec::Chebyshev04Trace { .. }).then_some(2.0)
}

/// Trace statistics of monic totally positive family members: the root mean
/// `A_n`, the normalized elementary symmetric functions `sigma_m / C(n, m)`
/// and their geometric-mean floor `|a_0|^(m/n) >= 1`, all from coefficients.
///
/// The checked inequality `sigma_m / C(n, m) >= |a_0|^(m/n)` is decided
/// exactly in rationals. `A_n >= sqrt(e)` is reported as context.
pub fn trace_mean_table(family: &FamilySpec, m_max: usize, eps: f64) -> Result<TraceTable> {
    let members = family.members()?;
    let certified = par::map(&members, |m| totally_positive(m, eps));
    let center = equilibrium_center(family);
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let sqrt_e = Enclosure::new(0.5f64.exp(), widen_down(0.5f64.exp()), widen_up(0.5f64.exp()));
    for (member, ok) in members.iter().zip(certified) {
        let ok = ok?;
        let p = &member.poly;
        let n = p.degree();
        let a0 = p.coeff(0).abs();
        let ln_a0 = ln_abs(&a0);
        let mut ratios = Vec::new();
        if !ok {
            let mut row = CheckRow::new(n, "roots real", Enclosure::exact(0.0), Enclosure::exact(0.0));
            row.verdict = RowVerdict::Inconclusive;
            checks.push(row);
        }
        checks.push(CheckRow::exact(n, "1 <= |a_0|", &RBig::ONE, &RBig::from(a0.clone())));
        for m in 1..=m_max.min(n) {
            let r = ratio(p, m);
            let e = ln_a0 * m as f64 / n as f64;
            let floor = Enclosure::new(e.exp(), widen_down((e * (1.0 - 1e-15)).exp()), widen_up((e * (1.0 + 1e-15)).exp()));
            // (sigma_m / C(n, m))^n >= |a_0|^m
            let holds = r >= RBig::ZERO && r.clone().pow(n) >= RBig::from(a0.clone().pow(m));
            checks.push(CheckRow::new(n, format!("sigma_{m}/C(n,{m}) >= |a_0|^({m}/n)"), floor, Enclosure::from_rational(&r)).decided(holds));
            ratios.push(RatioCell {
                m,
                exact: r.to_string(),
                value: Enclosure::from_rational(&r),
                floor,
                equilibrium: center.map(|c| c.powi(m as i32)),
            });
        }
        let mean = elementary(p, 1) / RBig::from(IBig::from(n));
        checks.push(CheckRow::new(n, "A_n >= sqrt(e)", sqrt_e, Enclosure::from_rational(&mean)).informational());
        rows.push(TraceRow {
            label: member.label.clone(),
            n,
            mean: mean.to_string(),
            mean_value: rational_to_f64(&mean),
            ratios,
            certified: ok,
        });
    }
    let increasing = (1..=m_max)
        .map(|m| {
            let seq: Vec<RBig> = members.iter().filter(|x| x.poly.degree() >= m).map(|x| ratio(&x.poly, m)).collect();
            seq.windows(2).all(|w| w[0] < w[1])
        })
        .collect();
    Ok(TraceTable { m_max, rows, increasing, check: CheckResult::new("trace", checks, None) })
}

impl TraceTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,n,mean,m,ratio_exact,ratio,ratio_lower,ratio_upper,floor,floor_lower,floor_upper,equilibrium,certified\n");
        for r in &self.rows {
            for c in &r.ratios {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    r.label,
                    r.n,
                    r.mean,
                    c.m,
                    c.exact,
                    enclosure_cells(&c.value),
                    enclosure_cells(&c.floor),
                    c.equilibrium.map(format_f64).unwrap_or_default(),
                    r.certified
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MahlerHypothesisRow {
    pub label: String,
    pub n: usize,
    /// `M(P)^(1/n)` for the conformal map of the complement of
    /// `[c - 2, c + 2]`.
    pub mahler_root: Enclosure,
    pub boundary_roots: usize,
    pub mean: String,
    pub mean_value: f64,
    /// `M(P)^(1/n) = 1` exactly at this degree.
    pub hypothesis_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MahlerHypothesisTable {
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub c: RBig,
    pub rows: Vec<MahlerHypothesisRow>,
}

/// Pairs the generalized Mahler measure with the root mean for each member:
/// when `M(P_n)^(1/n) -> 1` the means tend to `c`. Finite-degree data only;
/// no limit is claimed.
pub fn generalized_mahler_hypothesis_report(family: &FamilySpec, c: &RBig, eps: f64) -> Result<MahlerHypothesisTable> {
    if *c < RBig::from(2) {
        return Err(Error::InvalidArgument("c must be at least 2".into()));
    }
    let members = family.members()?;
    let computed = par::map(&members, |member| -> Result<MahlerHypothesisRow> {
        totally_positive(member, eps)?;
        let p = &member.poly;
        let n = p.degree();
        let g = generalized_mahler(p, c, eps)?;
        let inv = 1.0 / n as f64;
        let root = if g.value == Enclosure::exact(1.0) { g.value } else { g.value.map_increasing(|x| x.powf(inv)) };
        let mean = elementary(p, 1) / RBig::from(IBig::from(n));
        Ok(MahlerHypothesisRow {
            label: member.label.clone(),
            n,
            hypothesis_holds: root == Enclosure::exact(1.0),
            mahler_root: root,
            boundary_roots: g.boundary_roots,
            mean: mean.to_string(),
            mean_value: rational_to_f64(&mean),
        })
    });
    Ok(MahlerHypothesisTable { c: c.clone(), rows: computed.into_iter().collect::<Result<_>>()? })
}

impl MahlerHypothesisTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,n,mahler_root,mahler_root_lower,mahler_root_upper,boundary_roots,mean,hypothesis_holds\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.label,
                r.n,
                enclosure_cells(&r.mahler_root),
                r.boundary_roots,
                r.mean,
                r.hypothesis_holds
            ));
        }
        out
    }
}

use dashu::base::Abs;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::find::{find_roots_with, Reality, RootOptions};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{f64_to_rational, ln_abs, rational_bounds};
use crate::par;
use crate::poly::{IntPoly, Interval, RatPoly};

/// The sup norm of a polynomial on an interval together with a point where
/// it is (up to the enclosure width) attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNorm {
    pub norm: Enclosure,
    pub argmax: f64,
}

/// Encloses `max_{x in I} |P(x)|`.
///
/// The maximum sits at an endpoint or at a real critical point. Endpoints are
/// evaluated exactly. Each critical point comes from a certified root disc of
/// `P'`; the value there is bounded by the exact Taylor expansion of `P`
/// about the disc center, so the enclosure width scales with the square of
/// the root radius. The root radius is tightened until the relative width is
/// at most `eps` or the `f64` resolution of the root centers is reached.
pub fn sup_norm(p: &RatPoly, interval: &Interval, eps: f64) -> Result<Enclosure> {
    Ok(sup_norm_with_argmax(p, interval, eps)?.norm)
}

pub fn sup_norm_int(p: &IntPoly, interval: &Interval, eps: f64) -> Result<Enclosure> {
    sup_norm(&p.to_rat(), interval, eps)
}

pub fn sup_norm_with_argmax(p: &RatPoly, interval: &Interval, eps: f64) -> Result<SupNorm> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let (f, d) = p.clear_denominators();
    let scale = RBig::from_parts(IBig::ONE, d);
    let mut out = integer_sup_norm(&f, interval, eps.min(1e-12), &scale)?;
    for root_eps in [1e-18, 1e-30] {
        if out.norm.relative_width() <= eps {
            break;
        }
        out = integer_sup_norm(&f, interval, root_eps, &scale)?;
    }
    Ok(out)
}

struct Candidate {
    /// Exact `|P(x)|` at a point of the interval, if the center lies in it.
    attained: Option<(RBig, f64)>,
    /// Upper bound for `|P|` at the critical point in the disc.
    upper: f64,
}

fn integer_sup_norm(f: &IntPoly, interval: &Interval, root_eps: f64, scale: &RBig) -> Result<SupNorm> {
    let mut attained: Vec<(RBig, f64)> = Vec::new();
    for x in [interval.a(), interval.b()] {
        attained.push(((f.eval_rational(x) * scale).abs(), crate::numeric::rational_to_f64(x)));
    }
    let mut uppers: Vec<f64> = Vec::new();
    if f.degree() >= 2 {
        let df = f.derivative().primitive_part();
        let roots = find_roots_with(&df, &RootOptions { eps: root_eps, ..RootOptions::default() })?;
        let (a, b) = (interval.a_f64(), interval.b_f64());
        let relevant: Vec<(f64, f64)> = roots
            .roots
            .iter()
            .filter(|r| r.reality != Reality::NonReal)
            .map(|r| (r.re, r.radius + r.im.abs()))
            .filter(|&(x, rho)| x + rho >= a.next_down() && x - rho <= b.next_up())
            .collect();
        let candidates = par::map(&relevant, |&(x, rho)| critical_candidate(f, interval, x, rho, scale));
        for c in candidates {
            if let Some(at) = c.attained {
                attained.push(at);
            }
            uppers.push(c.upper);
        }
    }
    let (best, argmax) = attained
        .iter()
        .max_by(|l, r| l.0.cmp(&r.0))
        .map(|(v, x)| (v.clone(), *x))
        .expect("endpoints are always candidates");
    let (lower, value, upper_exact) = rational_bounds(&best);
    let upper = uppers.into_iter().fold(upper_exact, f64::max).max(value);
    Ok(SupNorm { norm: Enclosure::new(value, lower, upper), argmax })
}

/// Bounds `|P|` at the critical point within `rho` of `x`.
fn critical_candidate(f: &IntPoly, interval: &Interval, x: f64, rho: f64, scale: &RBig) -> Candidate {
    let (m, s) = dyadic(x);
    let taylor = shifted_taylor(f, &m, s);
    let n = f.degree();
    let center = RBig::from_parts(taylor[0].clone(), UBig::ONE << (s * n)) * scale;
    let center_abs = center.abs();
    let xr = f64_to_rational(x);
    let attained = interval.contains(&xr).then(|| (center_abs.clone(), x));
    // sum_{j>=1} |t_j| rho^j with t_j = g_j / 2^(s(n-j)), in logs
    let ln_scale = -crate::numeric::ln_rational(&scale.clone().abs());
    let ln_rho = rho.max(f64::MIN_POSITIVE).ln();
    let terms: Vec<f64> = taylor
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, g)| !g.is_zero())
        .map(|(j, g)| ln_abs(g) - (s * (n - j)) as f64 * std::f64::consts::LN_2 + j as f64 * ln_rho - ln_scale)
        .collect();
    let remainder = if terms.is_empty() {
        0.0
    } else {
        let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ln = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
        (ln + 1e-9 * (ln.abs() + 1.0)).exp()
    };
    let (_, _, hi) = rational_bounds(&center_abs);
    Candidate { attained, upper: ((hi + remainder) * (1.0 + 4.0 * f64::EPSILON)).next_up() }
}

/// `x = m / 2^s` exactly.
fn dyadic(x: f64) -> (IBig, usize) {
    if x == 0.0 {
        return (IBig::ZERO, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if biased == 0 { (frac, -1074) } else { (frac | (1 << 52), biased - 1075) };
    let m = if x < 0.0 { -IBig::from(mant) } else { IBig::from(mant) };
    if e >= 0 {
        (m << e as usize, 0)
    } else {
        (m, (-e) as usize)
    }
}

/// Integer coefficients `g_j` of `G(u) = 2^(sn) f((u + m) / 2^s)`; the
/// Taylor coefficients of `f` about `m / 2^s` are `g_j / 2^(s(n-j))`.
fn shifted_taylor(f: &IntPoly, m: &IBig, s: usize) -> Vec<IBig> {
    let n = f.degree();
    let mut acc: Vec<IBig> = vec![f.leading()];
    for k in (0..n).rev() {
        // acc <- acc * (u + m) + a_k 2^(s(n-k))
        let mut next = vec![IBig::ZERO; acc.len() + 1];
        for (j, c) in acc.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * m;
        }
        next[0] += f.coeff(k) << (s * (n - k));
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{chebyshev_04, monic_chebyshev, monic_chebyshev_norm};

    fn rat(s: &str) -> RBig {
        crate::numeric::parse_rational(s).unwrap()
    }

    #[test]
    fn examples() {
        let i = Interval::from_i64(-1, 1).unwrap();
        let p = RatPoly::new(vec![rat("-1/2"), rat("0"), rat("1")]);
        let e = sup_norm(&p, &i, 1e-12).unwrap();
        assert_eq!((e.lower, e.value), (0.5, 0.5));
        assert!(e.upper - 0.5 < 1e-14);

        let q = IntPoly::from_i64s(&[1, -5, 5]);
        let e = sup_norm_int(&q, &Interval::from_i64(0, 1).unwrap(), 1e-12).unwrap();
        assert_eq!(e.value, 1.0);
        assert!(e.upper - 1.0 < 1e-14);
    }

    #[test]
    fn interior_maximum() {
        // x(1 - x) on [0, 1]: max 1/4 at 1/2, endpoints vanish
        let p = IntPoly::from_i64s(&[0, 1, -1]);
        let s = sup_norm_with_argmax(&p.to_rat(), &Interval::from_i64(0, 1).unwrap(), 1e-12).unwrap();
        assert!(s.norm.contains(0.25) && s.norm.relative_width() < 1e-12);
        assert_eq!(s.argmax, 0.5);
    }

    #[test]
    fn chebyshev_norms() {
        for (a, b) in [("0", "1"), ("1/5", "1"), ("0", "4")] {
            let i = Interval::new(rat(a), rat(b)).unwrap();
            for n in [1, 2, 7, 20] {
                let e = sup_norm(&monic_chebyshev(n, &i), &i, 1e-10).unwrap();
                let want = crate::numeric::rational_to_f64(&monic_chebyshev_norm(n, &i));
                assert!(e.lower <= want * (1.0 + 1e-15) && want <= e.upper * (1.0 + 1e-15), "n={n} [{a},{b}] {e:?} {want}");
                assert!(e.relative_width() <= 1e-10, "{e:?}");
            }
        }
        let e = sup_norm_int(&chebyshev_04(9), &Interval::from_i64(0, 4).unwrap(), 1e-10).unwrap();
        assert!(e.contains(2.0));
    }

    #[test]
    fn taylor_shift_matches_derivatives() {
        // f = x^3 - 2x + 5 about 3/2: f = 43/8, f' = 19/4, f''/2 = 9/2, f'''/6 = 1
        let f = IntPoly::from_i64s(&[5, -2, 0, 1]);
        let (m, s) = dyadic(1.5);
        let g = shifted_taylor(&f, &m, s);
        let t: Vec<RBig> = g
            .iter()
            .enumerate()
            .map(|(j, gj)| RBig::from_parts(gj.clone(), UBig::ONE << (s * (3 - j))))
            .collect();
        assert_eq!(t, vec![rat("43/8"), rat("19/4"), rat("9/2"), rat("1")]);
    }
}

use dashu::base::{Abs, UnsignedAbs};
use dashu::integer::IBig;
use dashu::rational::RBig;
use num_complex::Complex64;

use super::check::{CheckResult, CheckRow};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{widen_down, widen_up};
use crate::poly::{discriminant, power_sums, IntPoly};
use crate::roots::{find_roots, mahler_measure, CertifiedRoot};

/// Smallest degree at which the growth and equidistribution estimates apply.
pub const MIN_DEGREE: usize = 55;

/// Asymptotic ceiling for `|A_n|` over unit-disk families.
pub const MEAN_CEILING: &str = "0.1757";

fn rat(n: i64) -> RBig {
    RBig::from(IBig::from(n))
}

/// `sqrt(n log n)`.
fn sqrt_n_log_n(n: usize) -> Enclosure {
    let v = (n as f64 * (n as f64).ln()).sqrt();
    Enclosure::new(v, widen_down(v * (1.0 - 4.0 * f64::EPSILON)), widen_up(v * (1.0 + 4.0 * f64::EPSILON)))
}

fn max_modulus(roots: &[CertifiedRoot]) -> Enclosure {
    let (mut lo, mut hi, mut mid) = (0.0f64, 0.0f64, 0.0f64);
    for r in roots {
        let (l, h) = r.modulus_bounds();
        lo = lo.max(l);
        hi = hi.max(h);
        mid = mid.max(r.center().norm().clamp(l, h));
    }
    Enclosure::new(mid, lo, hi)
}

/// Certified roots of a squarefree `P`, rejecting any provably outside the
/// closed unit disk.
fn disk_roots(p: &IntPoly, eps: f64) -> Result<Vec<CertifiedRoot>> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if discriminant(p)?.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let roots = find_roots(p, eps)?.roots;
    if let Some(r) = roots.iter().find(|r| r.modulus_bounds().0 > 1.0) {
        return Err(Error::Precondition(format!(
            "root {}{:+}i lies outside the closed unit disk (modulus >= {})",
            r.re,
            r.im,
            r.modulus_bounds().0
        )));
    }
    Ok(roots)
}

/// `sigma_m = (-1)^m a_{n-m} / a_n`, with `sigma_0 = 1`.
pub(crate) fn elementary(p: &IntPoly, m: usize) -> RBig {
    let n = p.degree();
    if m > n {
        return RBig::ZERO;
    }
    let v = RBig::from(p.coeff(n - m)) / RBig::from(p.leading());
    if m % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Growth of the subleading coefficient and of the power sums for a
/// polynomial with simple zeros in the closed unit disk and leading
/// coefficient at most `M` in absolute value:
/// `|a_{n-1}| <= 8 M sqrt(n log n)` and `|s_m| <= (24m + 16) sqrt(n log n)`.
///
/// Also checks, exactly, the recursive step that bounds elementary symmetric
/// functions by power sums: `|sigma_m| <= (1/m) sum_j |s_j| |sigma_{m-j}|`.
/// Below degree `max(M, 55)` the rows are informational.
pub fn schur_growth_check(p: &IntPoly, leading_bound: u64, m_max: usize, eps: f64) -> Result<CheckResult> {
    if leading_bound == 0 {
        return Err(Error::InvalidArgument("the leading-coefficient bound must be positive".into()));
    }
    if p.leading().unsigned_abs() > dashu::integer::UBig::from(leading_bound) {
        return Err(Error::Precondition(format!("|leading coefficient| exceeds M = {leading_bound}")));
    }
    let roots = disk_roots(p, eps)?;
    let n = p.degree();
    let root_term = sqrt_n_log_n(n);
    let mut rows = vec![CheckRow::new(n, "max |root|", max_modulus(&roots), Enclosure::exact(1.0))];

    let sub = Enclosure::from_rational(&RBig::from(p.coeff(n - 1)).abs());
    rows.push(CheckRow::new(n, "|a_(n-1)|", sub, root_term.scale(8.0 * leading_bound as f64)));

    let s = power_sums(p, m_max.max(1))?;
    for m in 1..=m_max {
        let lhs = Enclosure::from_rational(&s[m - 1].clone().abs());
        rows.push(CheckRow::new(n, format!("|s_{m}|"), lhs, root_term.scale((24 * m + 16) as f64)));
    }
    for m in 1..=m_max {
        let bound = (1..=m).fold(RBig::ZERO, |acc, j| acc + s[j - 1].clone().abs() * elementary(p, m - j).abs()) / rat(m as i64);
        rows.push(CheckRow::exact(n, format!("|sigma_{m}| recursion"), &elementary(p, m).abs(), &bound));
    }
    let mean = (elementary(p, 1) / rat(n as i64)).abs();
    let ceiling = crate::numeric::parse_rational(MEAN_CEILING)?;
    rows.push(CheckRow::exact(n, "|A_n|", &mean, &ceiling).informational());

    let threshold = MIN_DEGREE.max(leading_bound.min(usize::MAX as u64) as usize);
    let hypothesis = (n < threshold).then(|| format!("degree {n} below max(M, {MIN_DEGREE}) = {threshold}"));
    Ok(CheckResult::new("growth", rows, hypothesis))
}

/// The truncated power test function: `Re(z^m)` on the closed disk, tapered
/// linearly to zero on `1 <= |z| <= 1 + 1/m`.
pub fn test_function(z: Complex64, m: usize) -> f64 {
    let r = z.norm();
    let mf = m as f64;
    if r <= 1.0 {
        z.powi(m as i32).re
    } else if r <= 1.0 + 1.0 / mf {
        z.powi(m as i32).re * (mf + 1.0 - mf * r)
    } else {
        0.0
    }
}

/// Largest difference quotient of the test function over neighboring points
/// of a square grid covering its support.
pub fn sampled_lipschitz(m: usize) -> f64 {
    let reach = 1.0 + 1.0 / m as f64 + 0.25;
    let steps = 200;
    let h = 2.0 * reach / steps as f64;
    let at = |i: usize, j: usize| Complex64::new(-reach + i as f64 * h, -reach + j as f64 * h);
    let mut best = 0.0f64;
    for i in 0..steps {
        for j in 0..steps {
            let z = at(i, j);
            let fz = test_function(z, m);
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                let w = at(i + di, j + dj);
                best = best.max((test_function(w, m) - fz).abs() / (w - z).norm());
            }
        }
    }
    best
}

/// Equidistribution estimate for the test function with Lipschitz constant
/// `A = 8m` and support radius `R = 1 + 1/m`:
/// `|(1/n) sum phi(z_k)| <= A (2R + 1) sqrt(log max(n, M(P)) / n)`.
pub fn lipschitz_mean_bound_check(p: &IntPoly, m: usize, eps: f64) -> Result<CheckResult> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if discriminant(p)?.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let n = p.degree();
    let roots = find_roots(p, eps)?.roots;
    let lhs = if roots.iter().all(|r| r.modulus_bounds().1 <= 1.0) {
        // phi = Re(z^m) on every root, so the sum is the exact power sum
        let s = power_sums(p, m)?;
        Enclosure::from_rational(&(s[m - 1].clone().abs() / rat(n as i64)))
    } else {
        let sum: f64 = roots.iter().map(|r| test_function(r.center(), m)).sum();
        let err: f64 = roots.iter().map(|r| 8.0 * m as f64 * r.radius).sum::<f64>() + 4.0 * n as f64 * f64::EPSILON * (1.0 + 1.0 / m as f64).powi(m as i32);
        let v = (sum / n as f64).abs();
        let e = err / n as f64;
        Enclosure::new(v, widen_down((v - e).max(0.0)), widen_up(v + e))
    };
    let mahler = mahler_measure(p, eps)?;
    let nf = n as f64;
    let lf = |x: f64| (x.max(nf).ln() / nf).sqrt();
    let a = 8.0 * m as f64;
    let coeff = a * (2.0 * (1.0 + 1.0 / m as f64) + 1.0);
    let rhs = Enclosure::new(coeff * lf(mahler.value), widen_down(coeff * lf(mahler.lower) * (1.0 - 8.0 * f64::EPSILON)), widen_up(coeff * lf(mahler.upper) * (1.0 + 8.0 * f64::EPSILON)));
    let rows = vec![
        CheckRow::new(n, format!("|mean phi_{m}|"), lhs, rhs),
        CheckRow::new(n, format!("lipschitz(phi_{m}) sampled"), Enclosure::exact(sampled_lipschitz(m)), Enclosure::exact(a)),
    ];
    let hypothesis = (n < MIN_DEGREE).then(|| format!("degree {n} below {MIN_DEGREE}"));
    Ok(CheckResult::new("lipschitz", rows, hypothesis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{chebyshev_04, prime_cyclotomic_product};
    use crate::schur::check::{RowVerdict, Verdict};

    #[test]
    fn cyclotomic_growth() {
        let p = prime_cyclotomic_product(8);
        assert_eq!(p.degree(), 69);
        let r = schur_growth_check(&p, 1, 5, 1e-12).unwrap();
        assert!(r.all_hold(), "{:?}", r.verdict);
        let sub = r.rows.iter().find(|x| x.quantity == "|a_(n-1)|").unwrap();
        assert_eq!(sub.lhs, Enclosure::exact(8.0));
        // 8 sqrt(69 log 69) ~ 136.7
        assert!((sub.rhs.value - 136.7).abs() < 0.1);
        let mean = r.rows.iter().find(|x| x.quantity == "|A_n|").unwrap();
        assert_eq!(mean.verdict, RowVerdict::Holds);
    }

    #[test]
    fn small_degree_is_informational() {
        let p = prime_cyclotomic_product(7);
        assert_eq!(p.degree(), 51);
        let r = schur_growth_check(&p, 1, 3, 1e-12).unwrap();
        assert!(matches!(r.verdict, Verdict::Informational { .. }));
    }

    #[test]
    fn roots_outside_disk_rejected() {
        assert!(matches!(schur_growth_check(&chebyshev_04(10), 1, 2, 1e-12), Err(Error::Precondition(_))));
        assert!(matches!(schur_growth_check(&IntPoly::from_i64s(&[1, 0, 2]), 1, 2, 1e-12), Err(Error::Precondition(_))));
    }

    #[test]
    fn elementary_signs() {
        // (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
        let p = IntPoly::from_i64s(&[-6, 11, -6, 1]);
        assert_eq!(elementary(&p, 1), rat(6));
        assert_eq!(elementary(&p, 2), rat(11));
        assert_eq!(elementary(&p, 3), rat(6));
        assert_eq!(elementary(&p, 4), RBig::ZERO);
        let q = IntPoly::from_i64s(&[3, -2]);
        assert_eq!(elementary(&q, 1), RBig::from_parts(IBig::from(3), 2u8.into()));
    }

    #[test]
    fn test_function_shape() {
        assert_eq!(test_function(Complex64::new(0.5, 0.0), 2), 0.25);
        assert_eq!(test_function(Complex64::new(2.0, 0.0), 2), 0.0);
        assert!((test_function(Complex64::new(1.25, 0.0), 2) - 1.5625 * 0.5).abs() < 1e-15);
        for m in [1, 2, 5] {
            let l = sampled_lipschitz(m);
            assert!(l <= 8.0 * m as f64 && l > m as f64, "m={m} {l}");
        }
    }

    #[test]
    fn lipschitz_cyclotomic() {
        let p = prime_cyclotomic_product(8);
        let r = lipschitz_mean_bound_check(&p, 2, 1e-12).unwrap();
        assert!(r.all_hold(), "{:?}", r.rows);
        let s = power_sums(&p, 2).unwrap();
        assert_eq!(r.rows[0].lhs, Enclosure::from_rational(&(s[1].clone().abs() / rat(69))));
        // 16 * 4 * sqrt(log 69 / 69)
        assert!((r.rows[0].rhs.value - 64.0 * (69f64.ln() / 69.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn roots_beyond_support_contribute_nothing() {
        // roots +-3: outside 1 + 1/m for every m
        let p = IntPoly::from_i64s(&[-9, 0, 1]);
        let r = lipschitz_mean_bound_check(&p, 1, 1e-12).unwrap();
        assert_eq!(r.rows[0].lhs.value, 0.0);
        assert_eq!(r.rows[0].verdict, RowVerdict::Holds);
    }
}

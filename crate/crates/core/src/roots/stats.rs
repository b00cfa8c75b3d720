use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::Serialize;

use super::find::find_roots;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::numeric::{binomial, ln_abs, rational_bounds, widen_down, widen_up};
use crate::poly::{discriminant, power_sums, IntPoly, Interval};

/// Moment statistics of the zero counting measure of a polynomial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroStats {
    pub degree: usize,
    /// Mean of the roots.
    pub mean: Enclosure,
    /// `s_m / n` for `m = 1..=m_max`; entry 0 is `m = 1`.
    pub powersum_means: Vec<Enclosure>,
    /// `(1/n^2) log(|a_n|^(2n-2) / |disc|)`.
    pub log_energy: Enclosure,
    pub max_modulus: Enclosure,
}

/// Root statistics of a squarefree polynomial.
///
/// Power sums come from the coefficients through Newton's identities, so they
/// are exact; the certified roots are still summed with propagated radii and
/// must agree, which guards both computations. The energy uses the integer
/// discriminant only.
pub fn zero_stats(p: &IntPoly, m_max: usize, eps: f64) -> Result<ZeroStats> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let disc = discriminant(p)?;
    if disc.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let roots = find_roots(p, eps)?;
    let exact = power_sums(p, m_max.max(1))?;
    let nr = RBig::from(IBig::from(n));
    for (m, s) in exact.iter().enumerate().map(|(i, s)| (i + 1, s)) {
        let (mut sum, mut err, mut mag) = (0.0, 0.0, 0.0);
        for r in &roots.roots {
            let c = r.center();
            let a = c.norm();
            sum += c.powi(m as i32).re;
            err += (a + r.radius).powi(m as i32) - a.powi(m as i32);
            mag += (a + r.radius).powi(m as i32);
        }
        let slack = err * (1.0 + 1e-12) + 8.0 * (m + n) as f64 * f64::EPSILON * mag;
        let (lo, _, hi) = rational_bounds(s);
        if hi < sum - slack || lo > sum + slack {
            return Err(Error::Inconsistent(format!("power sum s_{m}: roots give {sum} +- {slack}, coefficients give {lo}")));
        }
    }
    let powersum_means: Vec<Enclosure> = exact.iter().take(m_max).map(|s| Enclosure::from_rational(&(s / &nr))).collect();
    let mean = Enclosure::from_rational(&(&exact[0] / &nr));

    let n2 = (n * n) as f64;
    let ln = ((2 * n - 2) as f64 * ln_abs(&p.leading()) - ln_abs(&disc)) / n2;
    let slack = 8.0 * f64::EPSILON * (ln.abs() + ln_abs(&disc).abs() / n2 + 1.0);
    let log_energy = Enclosure::new(ln, widen_down(ln - slack), widen_up(ln + slack));

    let (mut lo, mut hi, mut mid) = (0.0f64, 0.0f64, 0.0f64);
    for r in &roots.roots {
        let (l, h) = r.modulus_bounds();
        lo = lo.max(l);
        hi = hi.max(h);
        mid = mid.max(r.center().norm());
    }
    let max_modulus = Enclosure::new(mid.clamp(lo, hi), lo, hi);
    Ok(ZeroStats { degree: n, mean, powersum_means, log_energy, max_modulus })
}

/// The equilibrium (arcsine) measure of the segment `[c - 2, c + 2]`, with
/// density `1 / (pi sqrt(4 - (x - c)^2))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquilibriumMeasure {
    #[serde(serialize_with = "crate::numeric::serialize_rational")]
    pub c: RBig,
}

impl EquilibriumMeasure {
    pub fn new(c: RBig) -> Self {
        EquilibriumMeasure { c }
    }

    pub fn support(&self) -> Interval {
        Interval::centered(self.c.clone())
    }

    pub fn moment(&self, m: usize) -> RBig {
        arcsine_moment(self, m)
    }
}

/// `∫ x^m dμ` exactly. With `x = c + 2 cos θ` and `θ` uniform on `[0, π]`,
/// the odd cosine powers integrate to zero and `(2 cos θ)^k` averages to
/// `C(k, k/2)` for even `k`.
pub fn arcsine_moment(mu: &EquilibriumMeasure, m: usize) -> RBig {
    let mut acc = RBig::ZERO;
    for k in (0..=m).step_by(2) {
        let weight = binomial(m, k) * binomial(k, k / 2);
        acc += RBig::from(weight) * pow(&mu.c, m - k);
    }
    acc
}

fn pow(x: &RBig, e: usize) -> RBig {
    let mut acc = RBig::ONE;
    for _ in 0..e {
        acc = &acc * x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{chebyshev_04, prime_cyclotomic_product};

    fn rat(s: &str) -> RBig {
        crate::numeric::parse_rational(s).unwrap()
    }

    #[test]
    fn stats_examples() {
        let z = zero_stats(&IntPoly::from_i64s(&[-1, 0, 1]), 2, 1e-12).unwrap();
        assert_eq!(z.mean, Enclosure::exact(0.0));
        assert_eq!(z.powersum_means[1], Enclosure::exact(1.0));
        assert!(z.max_modulus.contains(1.0));
        // disc(x^2 - 1) = 4: energy = log(1/4) / 4
        assert!(z.log_energy.contains((0.25f64).ln() / 4.0) || (z.log_energy.value - (0.25f64).ln() / 4.0).abs() < 1e-15);

        for n in [3, 10, 25] {
            assert_eq!(zero_stats(&chebyshev_04(n), 1, 1e-12).unwrap().mean, Enclosure::exact(2.0));
        }
        for k in [2, 3, 5] {
            let q = prime_cyclotomic_product(k);
            let z = zero_stats(&q, 3, 1e-12).unwrap();
            let want = Enclosure::from_rational(&(-RBig::from(IBig::from(k)) / RBig::from(IBig::from(q.degree()))));
            assert_eq!(z.mean, want);
            assert!(z.max_modulus.contains(1.0));
        }
    }

    #[test]
    fn repeated_roots_rejected() {
        assert_eq!(zero_stats(&IntPoly::from_i64s(&[1, -2, 1]), 1, 1e-12), Err(Error::RepeatedRoot));
    }

    #[test]
    fn moment_examples() {
        let mu = EquilibriumMeasure::new(rat("7/2"));
        assert_eq!(mu.moment(0), RBig::ONE);
        assert_eq!(mu.moment(1), rat("7/2"));
        assert_eq!(arcsine_moment(&EquilibriumMeasure::new(RBig::ZERO), 2), rat("2"));
        // c = 0: central binomial coefficients, odd moments vanish
        assert_eq!(arcsine_moment(&EquilibriumMeasure::new(RBig::ZERO), 4), rat("6"));
        assert_eq!(arcsine_moment(&EquilibriumMeasure::new(RBig::ZERO), 5), RBig::ZERO);
        assert_eq!(mu.support(), Interval::new(rat("3/2"), rat("11/2")).unwrap());
    }
}

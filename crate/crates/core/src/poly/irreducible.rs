use dashu::integer::IBig;
use dashu::base::UnsignedAbs;
use dashu::rational::RBig;

use super::modp::PolyModP;
use super::{IntPoly, RatPoly};
use crate::error::{Error, Result};
use crate::numeric::first_primes;

/// Largest degree [`irreducible_over_q`] will decide.
pub const IRREDUCIBILITY_DEGREE_CAP: usize = 8;

// Kronecker search limits; exceeding either yields an "undecided" error.
const MAX_POINT_VALUE: u64 = 100_000_000_000_000;
const MAX_TUPLES: u64 = 2_000_000;
const DDF_PRIMES: usize = 40;

/// Exact irreducibility over the rationals for `1 <= deg P <= 8`.
///
/// Distinct-degree factorization modulo several primes first restricts the
/// possible factor degrees; any degree that survives is settled by
/// Kronecker's interpolation search, so the answer never depends on luck.
pub fn irreducible_over_q(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n > IRREDUCIBILITY_DEGREE_CAP {
        return Err(Error::IrreducibilityUndecided { degree: n, cap: IRREDUCIBILITY_DEGREE_CAP });
    }
    let f = p.primitive_part();
    if n == 1 {
        return Ok(true);
    }
    if f.coeff(0).is_zero() || f.gcd(&f.derivative()).degree() > 0 {
        return Ok(false);
    }
    let candidates = feasible_factor_degrees(&f);
    for d in candidates {
        if kronecker_factor(&f, d)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degrees `1..=n/2` that a factor could have, judged by the factorization
/// patterns modulo primes where `f` stays squarefree of full degree.
fn feasible_factor_degrees(f: &IntPoly) -> Vec<usize> {
    let n = f.degree();
    let mut feasible = vec![true; n / 2 + 1];
    feasible[0] = false;
    let lc = f.leading();
    for p in first_primes(DDF_PRIMES) {
        if (&lc % IBig::from(p)).is_zero() {
            continue;
        }
        let fp = PolyModP::from_int(f, p);
        if !fp.is_squarefree() {
            continue;
        }
        // subset sums of the irreducible factor degrees mod p
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for (d, total) in fp.distinct_degree() {
            for _ in 0..total / d {
                for s in (d..=n).rev() {
                    if reach[s - d] {
                        reach[s] = true;
                    }
                }
            }
        }
        for (d, ok) in feasible.iter_mut().enumerate() {
            *ok &= reach[d];
        }
        if !feasible.iter().any(|&b| b) {
            break;
        }
    }
    (1..feasible.len()).filter(|&d| feasible[d]).collect()
}

fn divisors(v: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut m = v;
    let mut q = 2u64;
    while q * q <= m {
        if m % q == 0 {
            let mut e = 0;
            while m % q == 0 {
                m /= q;
                e += 1;
            }
            primes.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (q, e) in primes {
        let base = divs.clone();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= q;
            divs.extend(base.iter().map(|d| d * pw));
        }
    }
    divs.sort_unstable();
    divs
}

/// Searches for an integer factor of exact degree `d` by interpolating
/// through divisors of `f` at `d + 1` integer points. A linear factor found
/// on the way is returned whatever `d` is.
fn kronecker_factor(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let n = f.degree();
    let undecided = || Error::FactorSearchExhausted(format!("degree {d} factor search of a degree {n} polynomial"));
    let mut points: Vec<(i64, IBig)> = Vec::new();
    for k in 0..(4 * n as i64 + 8) {
        let x = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let v = f.eval_int(&IBig::from(x));
        if v.is_zero() {
            // an integer root already gives a proper factor
            return Ok(Some(IntPoly::linear_root(x)));
        }
        points.push((x, v));
    }
    points.sort_by(|a, b| (&a.1).unsigned_abs().cmp(&(&b.1).unsigned_abs()).then(a.0.abs().cmp(&b.0.abs())).then(a.0.cmp(&b.0)));
    points.truncate(d + 1);

    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(d + 1);
    let mut total: u64 = 1;
    for (i, (_, v)) in points.iter().enumerate() {
        let mag = u64::try_from(v.unsigned_abs()).ok().filter(|&m| m <= MAX_POINT_VALUE).ok_or_else(undecided)?;
        let divs = divisors(mag);
        let signed: Vec<i64> = if i == 0 {
            // a factor and its negative are the same factor
            divs.iter().map(|&x| x as i64).collect()
        } else {
            divs.iter().flat_map(|&x| [x as i64, -(x as i64)]).collect()
        };
        total = total.saturating_mul(signed.len() as u64);
        choices.push(signed);
    }
    if total > MAX_TUPLES {
        return Err(undecided());
    }

    let xs: Vec<RBig> = points.iter().map(|(x, _)| RBig::from(IBig::from(*x))).collect();
    let basis = lagrange_basis(&xs);
    let lc = f.leading();
    let a0 = f.coeff(0);
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut g = RatPoly::zero();
        for (j, b) in basis.iter().enumerate() {
            g = &g + &b.scale(&RBig::from(IBig::from(choices[j][idx[j]])));
        }
        if g.degree() == d {
            if let Some(gi) = g.to_int() {
                let divides_ends = (&lc % gi.leading()).is_zero() && (&a0 % gi.coeff(0)).is_zero();
                if divides_ends && f.div_exact(&gi).is_some() {
                    return Ok(Some(gi));
                }
            }
        }
        // odometer increment
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(None);
            }
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

fn lagrange_basis(xs: &[RBig]) -> Vec<RatPoly> {
    (0..xs.len())
        .map(|i| {
            let mut l = RatPoly::one();
            for (j, xj) in xs.iter().enumerate() {
                if j != i {
                    let denom = &xs[i] - xj;
                    let lin = RatPoly::linear(RBig::ONE / &denom, -(xj / &denom));
                    l = &l * &lin;
                }
            }
            l
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::chebyshev_04_trace;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn small_examples() {
        assert_eq!(irreducible_over_q(&p(&[1, 1, 1])), Ok(true));
        assert_eq!(irreducible_over_q(&p(&[2, -3, 1])), Ok(false));
        assert_eq!(irreducible_over_q(&p(&[-2, 0, 1])), Ok(true));
        assert_eq!(irreducible_over_q(&p(&[4, 6])), Ok(true));
        assert_eq!(irreducible_over_q(&p(&[1, 0, 0, 0, 4])), Ok(false)); // Sophie Germain
        assert_eq!(irreducible_over_q(&p(&[1, 0, 1, 0, 1])), Ok(false)); // (x^2+x+1)(x^2-x+1)
        assert_eq!(irreducible_over_q(&p(&[7])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn trace_family() {
        for q in [3, 5, 7] {
            assert_eq!(irreducible_over_q(&chebyshev_04_trace(q).unwrap()), Ok(true), "p = {q}");
        }
    }

    #[test]
    fn swinnerton_dyer_needs_search() {
        // x^4 - 10x^2 + 1 factors modulo every prime but not over Q
        assert_eq!(irreducible_over_q(&p(&[1, 0, -10, 0, 1])), Ok(true));
        // (x^2 - 2)(x^2 - 3) splits the same way mod p and is reducible
        assert_eq!(irreducible_over_q(&p(&[6, 0, -5, 0, 1])), Ok(false));
    }

    #[test]
    fn cap_enforced() {
        let f = p(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(irreducible_over_q(&f), Err(Error::IrreducibilityUndecided { degree: 9, cap: 8 })));
    }

    #[test]
    fn products_of_quartics() {
        let a = p(&[1, -6, 19, -26, 13]);
        let b = p(&[1, -11, 40, -58, 29]);
        assert_eq!(irreducible_over_q(&a), Ok(true));
        assert_eq!(irreducible_over_q(&b), Ok(true));
        assert_eq!(irreducible_over_q(&(&a * &b)), Ok(false));
    }
}

use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::Serialize;

use super::IntPoly;
use crate::error::{Error, Result};

/// Elementary symmetric functions `sigma_1..` and power sums `s_1..` of the
/// `n` roots of a polynomial. Index 0 of each vector holds order 1.
///
/// One side may be empty; [`newton_convert`] fills it from the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetricData {
    pub n: usize,
    #[serde(serialize_with = "serialize_rationals")]
    pub sigma: Vec<RBig>,
    #[serde(serialize_with = "serialize_rationals")]
    pub powersums: Vec<RBig>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[RBig], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NewtonDirection {
    /// sigma -> s
    ElementaryToPowerSums,
    /// s -> sigma
    PowerSumsToElementary,
}

impl SymmetricData {
    pub fn from_elementary(n: usize, sigma: Vec<RBig>) -> Self {
        SymmetricData { n, sigma, powersums: Vec::new() }
    }

    pub fn from_power_sums(n: usize, powersums: Vec<RBig>) -> Self {
        SymmetricData { n, sigma: Vec::new(), powersums }
    }

    /// Reads `sigma_m = (-1)^m a_{n-m} / a_n` for `m = 1..=order`.
    pub fn from_poly(p: &IntPoly, order: usize) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = p.degree();
        if order > n {
            return Err(Error::OrderTooLarge { requested: order, available: n });
        }
        let lc = RBig::from(p.leading());
        let sigma = (1..=order)
            .map(|m| {
                let v = RBig::from(p.coeff(n - m)) / &lc;
                if m % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect();
        Ok(SymmetricData::from_elementary(n, sigma))
    }

    /// `sigma_m`, which vanishes for `m > n` once the full list is known.
    fn sigma_at(&self, m: usize) -> Option<RBig> {
        if m == 0 {
            return Some(RBig::ONE);
        }
        if m <= self.sigma.len() {
            return Some(self.sigma[m - 1].clone());
        }
        (self.sigma.len() >= self.n && m > self.n).then_some(RBig::ZERO)
    }
}

/// Converts the populated side to the other one, up to the same order.
pub fn newton_convert(input: &SymmetricData, direction: NewtonDirection) -> Result<SymmetricData> {
    let order = match direction {
        NewtonDirection::ElementaryToPowerSums => input.sigma.len(),
        NewtonDirection::PowerSumsToElementary => input.powersums.len(),
    };
    newton_convert_to(input, direction, order)
}

/// Converts up to an explicit `order`, using
/// `m sigma_m = sum_{j=1}^m (-1)^(j-1) s_j sigma_{m-j}`.
///
/// From the elementary side, orders past `n` are available when all of
/// `sigma_1..sigma_n` are given (higher `sigma` vanish).
pub fn newton_convert_to(input: &SymmetricData, direction: NewtonDirection, order: usize) -> Result<SymmetricData> {
    let mut out = input.clone();
    match direction {
        NewtonDirection::ElementaryToPowerSums => {
            let sigma: Vec<RBig> = (0..=order)
                .map(|m| {
                    input.sigma_at(m).ok_or(Error::OrderTooLarge { requested: order, available: input.sigma.len() })
                })
                .collect::<Result<_>>()?;
            let mut s: Vec<RBig> = Vec::with_capacity(order);
            for m in 1..=order {
                // (-1)^(m-1) s_m = m sigma_m - sum_{j<m} (-1)^(j-1) s_j sigma_{m-j}
                let mut acc = RBig::from(IBig::from(m)) * &sigma[m];
                for j in 1..m {
                    let term = &s[j - 1] * &sigma[m - j];
                    if j % 2 == 1 {
                        acc -= term;
                    } else {
                        acc += term;
                    }
                }
                s.push(if m % 2 == 1 { acc } else { -acc });
            }
            out.powersums = s;
        }
        NewtonDirection::PowerSumsToElementary => {
            if order > input.powersums.len() {
                return Err(Error::OrderTooLarge { requested: order, available: input.powersums.len() });
            }
            let mut sigma = vec![RBig::ONE];
            for m in 1..=order {
                let mut acc = RBig::ZERO;
                for j in 1..=m {
                    let term = &input.powersums[j - 1] * &sigma[m - j];
                    if j % 2 == 1 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                sigma.push(acc / RBig::from(IBig::from(m)));
            }
            sigma.remove(0);
            out.sigma = sigma;
        }
    }
    Ok(out)
}

/// Exact power sums `s_1..s_order` of the roots of `p`, any order.
pub fn power_sums(p: &IntPoly, order: usize) -> Result<Vec<RBig>> {
    let data = SymmetricData::from_poly(p, p.degree())?;
    Ok(newton_convert_to(&data, NewtonDirection::ElementaryToPowerSums, order)?.powersums)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> RBig {
        RBig::from(IBig::from(v))
    }

    #[test]
    fn quadratic_example() {
        let p = IntPoly::from_i64s(&[2, -3, 1]);
        let d = SymmetricData::from_poly(&p, 2).unwrap();
        assert_eq!(d.sigma, vec![r(3), r(2)]);
        let out = newton_convert(&d, NewtonDirection::ElementaryToPowerSums).unwrap();
        assert_eq!(out.powersums, vec![r(3), r(5)]);
    }

    #[test]
    fn zero_case() {
        let d = SymmetricData::from_elementary(4, vec![RBig::ZERO; 4]);
        let out = newton_convert(&d, NewtonDirection::ElementaryToPowerSums).unwrap();
        assert!(out.powersums.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn cyclotomic_cubic() {
        // z^3 + 2z^2 + 2z + 1 = (z + 1)(z^2 + z + 1)
        let p = IntPoly::from_i64s(&[1, 2, 2, 1]);
        let s = power_sums(&p, 6).unwrap();
        // roots -1, w, w^2: s_m = (-1)^m + (2 if 3|m else -1)
        let expected: Vec<RBig> = (1..=6)
            .map(|m: i64| r(if m % 2 == 0 { 1 } else { -1 } + if m % 3 == 0 { 2 } else { -1 }))
            .collect();
        assert_eq!(s, expected);
        assert_eq!(s[0], r(-2));
        assert_eq!(s[1], r(0));
    }

    #[test]
    fn order_errors() {
        let p = IntPoly::from_i64s(&[2, -3, 1]);
        assert!(matches!(SymmetricData::from_poly(&p, 3), Err(Error::OrderTooLarge { .. })));
        let d = SymmetricData::from_power_sums(5, vec![r(1), r(2)]);
        assert!(newton_convert_to(&d, NewtonDirection::PowerSumsToElementary, 3).is_err());
        let partial = SymmetricData::from_elementary(5, vec![r(1)]);
        assert!(newton_convert_to(&partial, NewtonDirection::ElementaryToPowerSums, 2).is_err());
    }
}

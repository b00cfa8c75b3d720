use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::poly::{chebyshev_04, chebyshev_04_trace, discriminant, prime_cyclotomic_product, IntPoly};

/// A family of integer polynomials indexed by a parameter list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// `t_n` on `[0, 4]` for each listed `n`.
    Chebyshev04 { degrees: Vec<usize> },
    /// `t_p / (x - 2)` for each listed odd prime `p`.
    Chebyshev04Trace { primes: Vec<usize> },
    /// Products of `(z^p - 1)/(z - 1)` over the first `k` primes.
    PrimeCyclotomic { ks: Vec<usize> },
    /// Explicit coefficient lists, low-to-high.
    UserList { polys: Vec<Vec<String>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub label: String,
    pub poly: IntPoly,
}

impl FamilySpec {
    /// Builds the members, ordered by degree (stable), and rejects any with a
    /// repeated root.
    pub fn members(&self) -> Result<Vec<Member>> {
        let mut out: Vec<Member> = match self {
            FamilySpec::Chebyshev04 { degrees } => degrees
                .iter()
                .map(|&n| {
                    if n == 0 {
                        return Err(Error::InvalidArgument("chebyshev04 degree must be positive".into()));
                    }
                    Ok(Member { label: format!("chebyshev04({n})"), poly: chebyshev_04(n) })
                })
                .collect::<Result<_>>()?,
            FamilySpec::Chebyshev04Trace { primes } => primes
                .iter()
                .map(|&p| {
                    if p < 3 || !crate::numeric::is_prime(p as u64) {
                        return Err(Error::InvalidArgument(format!("chebyshev04_trace needs an odd prime, got {p}")));
                    }
                    let poly = chebyshev_04_trace(p).expect("x - 2 divides t_p for odd p");
                    Ok(Member { label: format!("chebyshev04_trace({p})"), poly })
                })
                .collect::<Result<_>>()?,
            FamilySpec::PrimeCyclotomic { ks } => ks
                .iter()
                .map(|&k| {
                    if k == 0 {
                        return Err(Error::InvalidArgument("prime_cyclotomic needs k >= 1".into()));
                    }
                    Ok(Member { label: format!("prime_cyclotomic({k})"), poly: prime_cyclotomic_product(k) })
                })
                .collect::<Result<_>>()?,
            FamilySpec::UserList { polys } => polys
                .iter()
                .enumerate()
                .map(|(i, c)| Ok(Member { label: format!("user[{i}]"), poly: IntPoly::from_strings(c)? }))
                .collect::<Result<_>>()?,
        };
        for m in &out {
            if m.poly.is_constant() {
                return Err(Error::ConstantPolynomial);
            }
        }
        let squarefree = par::map(&out, |m| discriminant(&m.poly).map(|d| !d.is_zero()));
        for (m, ok) in out.iter().zip(squarefree) {
            if !ok? {
                return Err(Error::Precondition(format!("{} has a repeated root", m.label)));
            }
        }
        out.sort_by_key(|m| m.poly.degree());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_orders() {
        let f = FamilySpec::Chebyshev04 { degrees: vec![5, 2, 3] };
        let m = f.members().unwrap();
        assert_eq!(m.iter().map(|x| x.poly.degree()).collect::<Vec<_>>(), vec![2, 3, 5]);
        let t = FamilySpec::Chebyshev04Trace { primes: vec![7] }.members().unwrap();
        assert_eq!(t[0].poly.degree(), 6);
        assert!(FamilySpec::Chebyshev04Trace { primes: vec![9] }.members().is_err());
        let bad = FamilySpec::UserList { polys: vec![vec!["1".into(), "2".into(), "1".into()]] };
        assert!(matches!(bad.members(), Err(Error::Precondition(_))));
    }

    #[test]
    fn json_shape() {
        let f: FamilySpec = serde_json::from_str(r#"{"kind":"prime_cyclotomic","ks":[3,4]}"#).unwrap();
        assert_eq!(f, FamilySpec::PrimeCyclotomic { ks: vec![3, 4] });
    }
}

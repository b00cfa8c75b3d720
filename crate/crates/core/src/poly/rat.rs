use std::fmt;
use std::ops::{Add, Mul, Sub};

use dashu::base::Gcd;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::IntPoly;

/// Dense polynomial with exact rational coefficients, low-to-high.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<RBig>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<RBig>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![RBig::ONE])
    }

    pub fn constant(c: RBig) -> Self {
        RatPoly::new(vec![c])
    }

    /// `alpha * x + beta`.
    pub fn linear(alpha: RBig, beta: RBig) -> Self {
        RatPoly::new(vec![beta, alpha])
    }

    pub fn coeffs(&self) -> &[RBig] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RBig {
        self.coeffs.get(k).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> RBig {
        self.coeffs.last().cloned().unwrap_or(RBig::ZERO)
    }

    pub fn eval(&self, x: &RBig) -> RBig {
        self.coeffs.iter().rev().fold(RBig::ZERO, |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::numeric::rational_to_f64(c))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * RBig::from(IBig::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &RBig) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    /// `P(alpha * x + beta)`.
    pub fn compose_affine(&self, alpha: &RBig, beta: &RBig) -> RatPoly {
        let inner = RatPoly::linear(alpha.clone(), beta.clone());
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// `P(x^2)`.
    pub fn substitute_square(&self) -> RatPoly {
        let mut coeffs = vec![RBig::ZERO; 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        RatPoly::new(coeffs)
    }

    /// Clears denominators: returns `(Q, d)` with `Q = d * P` integral and
    /// `d > 0` the lcm of the coefficient denominators.
    pub fn clear_denominators(&self) -> (IntPoly, UBig) {
        let mut lcm = UBig::ONE;
        for c in &self.coeffs {
            let d = c.denominator();
            let g = lcm.clone().gcd(d.clone());
            lcm = &lcm / g * d;
        }
        let scale = RBig::from(IBig::from(lcm.clone()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &scale;
                debug_assert!(v.denominator().is_one());
                v.numerator().clone()
            })
            .collect();
        (IntPoly::new(ints), lcm)
    }

    /// Primitive integer polynomial with the same roots (and the same sign of
    /// leading coefficient after normalization to positive).
    pub fn to_primitive_int(&self) -> IntPoly {
        self.clear_denominators().0.primitive_part()
    }

    /// Division with remainder over `Q`.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (RatPoly::zero(), self.clone());
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![RBig::ZERO; self.coeffs.len() - d.coeffs.len() + 1];
        while r.len() >= d.coeffs.len() {
            let factor = r.last().unwrap() / &lc;
            let shift = r.len() - d.coeffs.len();
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &factor * dc;
            }
            q[shift] = factor;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    /// Monic gcd over `Q` by the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> crate::Result<RatPoly> {
        items
            .iter()
            .map(|s| {
                crate::numeric::parse_rational(s.as_ref())
                    .map_err(|_| crate::Error::MalformedPolynomial(format!("bad rational coefficient `{}`", s.as_ref())))
            })
            .collect::<crate::Result<Vec<_>>>()
            .map(RatPoly::new)
    }

    /// Returns the integer polynomial when every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.denominator().is_one().then(|| c.numerator().clone()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        p.to_rat()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.to_string()))
            .collect();
        super::write_terms(f, terms.into_iter().rev())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![RBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

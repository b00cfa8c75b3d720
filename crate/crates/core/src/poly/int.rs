use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu::base::{Gcd, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use super::RatPoly;

/// Dense polynomial with arbitrary-precision integer coefficients, stored
/// low-to-high: `coeffs[k]` multiplies `x^k`.
///
/// The coefficient vector never ends in a zero; the zero polynomial has an
/// empty vector and reports degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<IBig>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<IBig>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| IBig::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(IBig::ONE)
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: IBig) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: IBig, k: usize) -> Self {
        let mut coeffs = vec![IBig::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - r` for an integer `r`.
    pub fn linear_root(r: i64) -> Self {
        Self::from_i64s(&[-r, 1])
    }

    pub fn coeffs(&self) -> &[IBig] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<IBig> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> IBig {
        self.coeffs.get(k).cloned().unwrap_or(IBig::ZERO)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> IBig {
        self.coeffs.last().cloned().unwrap_or(IBig::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> UBig {
        let mut g = UBig::ZERO;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            // dashu panics on gcd(0, 0)
            g = if g.is_zero() { c.unsigned_abs() } else { g.gcd(c.unsigned_abs()) };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let g = IBig::from(self.content());
        let sign = self.leading().signum();
        IntPoly::new(self.coeffs.iter().map(|c| c / &g * &sign).collect())
    }

    pub fn scale(&self, k: &IBig) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides every coefficient by `k`, which must divide them all.
    pub fn div_scalar_exact(&self, k: &IBig) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * IBig::from(k)).collect())
    }

    pub fn eval_int(&self, x: &IBig) -> IBig {
        self.coeffs.iter().rev().fold(IBig::ZERO, |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &RBig) -> RBig {
        // Homogenized Horner on numerator/denominator keeps everything integral.
        let (num, den) = (x.numerator().clone(), IBig::from(x.denominator().clone()));
        let mut acc = IBig::ZERO;
        let mut den_pow = IBig::ONE;
        for c in self.coeffs.iter().rev() {
            acc = acc * &num + c * &den_pow;
            den_pow *= &den;
        }
        // acc = den^n * P(x); den_pow = den^(n+1)
        let scale = if self.coeffs.is_empty() { IBig::ONE } else { den_pow / &den };
        RBig::from_parts_signed(acc, scale)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::numeric::to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::numeric::to_f64).collect()
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `P(x^2)`.
    pub fn substitute_square(&self) -> IntPoly {
        let mut coeffs = vec![IBig::ZERO; 2 * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// `x^n P(1/x)` for `n = deg P`.
    pub fn reversed(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Returns `Some(+1)` for palindromic and `Some(-1)` for anti-palindromic
    /// coefficient vectors; either way the root set is closed under
    /// `z -> 1/z`.
    pub fn reciprocal_symmetry(&self) -> Option<i8> {
        if self.is_zero() || self.coeffs[0].is_zero() {
            return None;
        }
        let n = self.coeffs.len();
        let palindromic = (0..n).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k]);
        if palindromic {
            return Some(1);
        }
        let anti = (0..n).all(|k| self.coeffs[k] == -&self.coeffs[n - 1 - k]);
        anti.then_some(-1)
    }

    /// Pseudo-remainder: `lc(d)^(deg self - deg d + 1) * self mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        let dd = d.degree();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut steps = self.degree() - dd + 1;
        while r.len() >= d.coeffs.len() {
            let top = r.last().unwrap().clone();
            let shift = r.len() - d.coeffs.len();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (k, dc) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &top * dc;
            }
            r.pop();
            steps -= 1;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        // Multiply out the remaining powers so the result matches the
        // textbook definition regardless of early zero leading terms.
        if steps > 0 {
            let f = lc.pow(steps);
            for c in r.iter_mut() {
                *c *= &f;
            }
        }
        IntPoly::new(r)
    }

    /// Exact quotient `self / d` when `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_z(d)?;
        r.is_zero().then_some(q)
    }

    /// Division in `Z[x]` when every step is integral; `None` if some
    /// intermediate quotient coefficient is not an integer.
    pub fn div_rem_z(&self, d: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return Some((IntPoly::zero(), self.clone()));
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![IBig::ZERO; self.coeffs.len() - d.coeffs.len() + 1];
        while r.len() >= d.coeffs.len() {
            let top = r.last().unwrap();
            if !(top % &lc).is_zero() {
                return None;
            }
            let factor = top / &lc;
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
        Some((IntPoly::new(q), IntPoly::new(r)))
    }

    /// Primitive gcd in `Z[x]` (positive leading coefficient), via the
    /// primitive remainder sequence.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Squarefree decomposition (Yun): returns `(f_k, k)` with
    /// `primitive_part(self) = prod f_k^k`, each `f_k` squarefree and
    /// nonconstant.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, u32)> {
        let f = self.primitive_part();
        if f.degree() == 0 {
            return Vec::new();
        }
        let df = f.derivative();
        let mut a = f.gcd(&df);
        if a.degree() == 0 {
            return vec![(f, 1)];
        }
        let mut b = f.div_exact_q(&a);
        let mut c = df.div_exact_q(&a);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut k = 1u32;
        loop {
            a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), k));
            }
            b = b.div_exact_q(&a);
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact_q(&a);
            d = &c - &b.derivative();
            k += 1;
        }
        out
    }

    // Divisions inside Yun's algorithm are by primitive gcds, which divide
    // over Z by Gauss's lemma.
    fn div_exact_q(&self, d: &IntPoly) -> IntPoly {
        self.div_exact(d).expect("exact division by a primitive divisor")
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(RBig::from).collect())
    }

    /// `max |a_k|`.
    pub fn height(&self) -> UBig {
        self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(UBig::ZERO)
    }

    /// Returns the coefficients as decimal strings, low-to-high.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> crate::Result<IntPoly> {
        items
            .iter()
            .map(|s| {
                s.as_ref()
                    .trim()
                    .parse::<IBig>()
                    .map_err(|_| crate::Error::MalformedPolynomial(format!("bad integer coefficient `{}`", s.as_ref())))
            })
            .collect::<crate::Result<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
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

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![IBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

//! Dense polynomials over a small prime field, enough for distinct-degree
//! factorization. Coefficients are `u64` residues, low-to-high.

use dashu::integer::IBig;

use super::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PolyModP {
    pub p: u64,
    pub c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

fn reduce(x: &IBig, p: u64) -> u64 {
    let m = IBig::from(p);
    let mut r = x % &m;
    if r < IBig::ZERO {
        r += &m;
    }
    u64::try_from(r).expect("residue fits in u64")
}

impl PolyModP {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyModP { p, c }
    }

    pub fn from_int(f: &IntPoly, p: u64) -> Self {
        PolyModP::new(p, f.coeffs().iter().map(|x| reduce(x, p)).collect())
    }

    fn x(p: u64) -> Self {
        PolyModP::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(&lc) => {
                let li = inv(lc, self.p);
                PolyModP::new(self.p, self.c.iter().map(|&a| mulmod(a, li, self.p)).collect())
            }
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        PolyModP::new(p, c)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyModP::new(self.p, vec![]);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        PolyModP::new(self.p, c)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self.c.iter().enumerate().skip(1).map(|(k, &a)| mulmod(a, k as u64 % p, p)).collect();
        PolyModP::new(p, c)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        let mut r = self.c.clone();
        let dl = d.c.len();
        if r.len() < dl {
            return (PolyModP::new(p, vec![]), self.clone());
        }
        let li = inv(*d.c.last().unwrap(), p);
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let coef = mulmod(r[i + dl - 1], li, p);
            q[i] = coef;
            if coef != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulmod(coef, dj, p)) % p;
                }
            }
        }
        r.truncate(dl - 1);
        (PolyModP::new(p, q), PolyModP::new(p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = PolyModP::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Distinct-degree factorization of a squarefree polynomial: pairs
    /// `(d, k)` meaning the product of the degree-`d` irreducible factors has
    /// degree `k` (so there are `k / d` of them).
    pub fn distinct_degree(&self) -> Vec<(usize, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = PolyModP::x(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.degree() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(p, &f);
            let g = h.sub(&x).gcd(&f);
            if g.degree() > 0 {
                out.push((d, g.degree()));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
        }
        if f.degree() > 0 {
            out.push((f.degree(), f.degree()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ddf_splits_by_degree() {
        // (x - 1)(x - 2)(x^2 + 1) over F_3: x^2 + 1 is irreducible mod 3
        let f = IntPoly::from_i64s(&[-1, 1]) * IntPoly::from_i64s(&[-2, 1]) * IntPoly::from_i64s(&[1, 0, 1]);
        let fp = PolyModP::from_int(&f, 3);
        assert!(fp.is_squarefree());
        assert_eq!(fp.distinct_degree(), vec![(1, 2), (2, 2)]);
        // over F_13, x^2 + 1 = (x - 5)(x - 8)
        assert_eq!(PolyModP::from_int(&f, 13).distinct_degree(), vec![(1, 4)]);
    }

    #[test]
    fn negative_coefficients_reduce() {
        let f = PolyModP::from_int(&IntPoly::from_i64s(&[-1, 0, 1]), 7);
        assert_eq!(f.c, vec![6, 0, 1]);
        assert!(!PolyModP::from_int(&IntPoly::from_i64s(&[1, 2, 1]), 7).is_squarefree());
    }
}

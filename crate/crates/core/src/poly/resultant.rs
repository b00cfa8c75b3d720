use dashu::integer::IBig;

use super::IntPoly;
use crate::error::{Error, Result};

/// Resultant `Res(P, Q) = lc(P)^deg(Q) * prod Q(z_j)` over the roots `z_j`
/// of `P`, computed exactly with the subresultant remainder sequence.
///
/// Both inputs must be nonzero. The value is zero exactly when `P` and `Q`
/// share a complex root.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<IBig> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(subresultant(p, q))
}

fn subresultant(p: &IntPoly, q: &IntPoly) -> IBig {
    let (dp, dq) = (p.degree(), q.degree());
    if dp == 0 {
        return p.leading().pow(dq);
    }
    if dq == 0 {
        return q.leading().pow(dp);
    }
    let ca = IBig::from(p.content());
    let cb = IBig::from(q.content());
    let mut a = p.div_scalar_exact(&ca);
    let mut b = q.div_scalar_exact(&cb);
    let t = ca.pow(dq) * cb.pow(dp);
    let mut s = IBig::ONE;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if dp % 2 == 1 && dq % 2 == 1 {
            s = -s;
        }
    }
    let mut g = IBig::ONE;
    let mut h = IBig::ONE;
    loop {
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return IBig::ZERO;
        }
        let divisor = &g * h.pow(delta);
        b = r.div_scalar_exact(&divisor);
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta) / h.pow(delta - 1)
        };
        if b.degree() == 0 {
            let da = a.degree();
            let lb = b.leading();
            let hh = if da == 0 { h.clone() } else { lb.pow(da) / h.pow(da - 1) };
            return s * t * hh;
        }
    }
}

/// Sylvester matrix of `P` (degree `n`) and `Q` (degree `m`): `m` shifted
/// rows of `P`'s coefficients followed by `n` shifted rows of `Q`'s,
/// coefficients high-to-low.
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Vec<Vec<IBig>> {
    let (n, m) = (p.degree(), q.degree());
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    let high_to_low = |poly: &IntPoly| poly.coeffs().iter().rev().cloned().collect::<Vec<_>>();
    let (pc, qc) = (high_to_low(p), high_to_low(q));
    for i in 0..m {
        let mut row = vec![IBig::ZERO; size];
        row[i..i + pc.len()].clone_from_slice(&pc);
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![IBig::ZERO; size];
        row[i..i + qc.len()].clone_from_slice(&qc);
        rows.push(row);
    }
    rows
}

/// Determinant of the Sylvester matrix by fraction-free (Bareiss)
/// elimination; equals [`resultant`] with the same sign convention.
pub fn sylvester_determinant(p: &IntPoly, q: &IntPoly) -> IBig {
    if p.degree() + q.degree() == 0 {
        return IBig::ONE;
    }
    determinant(sylvester_matrix(p, q))
}

fn determinant(mut m: Vec<Vec<IBig>>) -> IBig {
    let n = m.len();
    let mut sign = IBig::ONE;
    let mut prev = IBig::ONE;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return IBig::ZERO;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
        for row in m.iter_mut().skip(k + 1) {
            row[k] = IBig::ZERO;
        }
    }
    sign * &m[n - 1][n - 1]
}

/// Discriminant `lc^(2n-2) prod_{j<k} (z_j - z_k)^2`, computed as
/// `(-1)^(n(n-1)/2) Res(P, P') / lc(P)`.
pub fn discriminant(p: &IntPoly) -> Result<IBig> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(IBig::ONE);
    }
    let res = subresultant(p, &p.derivative());
    let lc = p.leading();
    debug_assert!((&res % &lc).is_zero());
    let d = res / lc;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

use dashu::integer::IBig;
use dashu::rational::RBig;

use super::{IntPoly, Interval, RatPoly};

/// Classical Chebyshev polynomial `T_n` (leading coefficient `2^(n-1)`).
fn classical_chebyshev(n: usize) -> IntPoly {
    let two_x = IntPoly::from_i64s(&[0, 2]);
    let mut prev = IntPoly::one();
    let mut cur = IntPoly::x();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monic Chebyshev polynomial of degree `n >= 1` for the segment `[a, b]`:
/// `((b-a)/2)^n * 2^(1-n) * T_n((2x - a - b)/(b - a))`.
pub fn monic_chebyshev(n: usize, interval: &Interval) -> RatPoly {
    assert!(n >= 1, "monic Chebyshev polynomial needs n >= 1");
    let t = classical_chebyshev(n).to_rat();
    let len = interval.length();
    let alpha = RBig::from(IBig::from(2)) / &len;
    let beta = -(interval.a() + interval.b()) / &len;
    t.compose_affine(&alpha, &beta).scale(&monic_chebyshev_norm(n, interval))
}

/// Exact sup norm of [`monic_chebyshev`] on its segment: `2 ((b-a)/4)^n`.
pub fn monic_chebyshev_norm(n: usize, interval: &Interval) -> RBig {
    let quarter = interval.length() / RBig::from(IBig::from(4));
    let mut acc = RBig::from(IBig::from(2));
    for _ in 0..n {
        acc *= &quarter;
    }
    acc
}

/// `t_n(x) = 2 cos(n arccos((x - 2)/2))`, the integer Chebyshev polynomial of
/// `[0, 4]`, from `t_{k+1} = (x - 2) t_k - t_{k-1}` with `t_0 = 2`,
/// `t_1 = x - 2`.
pub fn chebyshev_04(n: usize) -> IntPoly {
    assert!(n >= 1, "chebyshev_04 needs n >= 1");
    let shift = IntPoly::from_i64s(&[-2, 1]);
    let mut prev = IntPoly::from_i64s(&[2]);
    let mut cur = shift.clone();
    for _ in 1..n {
        let next = &(&shift * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `t_p(x) / (x - 2)` for an odd `p`: the minimal polynomial family whose
/// roots are `2 + 2cos((2j-1)pi/p)` with the root `2` removed.
///
/// Returns `None` when `x - 2` does not divide `t_p` (even `p`).
pub fn chebyshev_04_trace(p: usize) -> Option<IntPoly> {
    chebyshev_04(p).div_exact(&IntPoly::linear_root(2))
}

use dashu::integer::IBig;

use super::IntPoly;
use crate::numeric::first_primes;

/// `Q_n(z) = prod_{m=1}^k (z^{p_m} - 1)/(z - 1)` over the first `k` primes.
///
/// Monic of degree `sum p_m - k`, simple roots on the unit circle, and the
/// coefficient of `z^{n-1}` equals `k`.
pub fn prime_cyclotomic_product(k: usize) -> IntPoly {
    assert!(k >= 1, "prime_cyclotomic_product needs k >= 1");
    first_primes(k)
        .into_iter()
        .map(|p| IntPoly::new(vec![IBig::ONE; p as usize]))
        .product()
}

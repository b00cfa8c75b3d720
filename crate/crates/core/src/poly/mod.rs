//! Exact integer and rational polynomial arithmetic, together with the
//! classical constructions: Chebyshev polynomials, resultants and
//! discriminants, Newton's identities, cyclotomic products, changes of
//! variable and an exact irreducibility test for small degrees.

mod chebyshev;
mod cyclotomic;
mod int;
mod interval;
mod irreducible;
pub(crate) mod modp;
mod rat;
mod resultant;
mod substitution;
mod symmetric;

use std::fmt;

pub use chebyshev::{chebyshev_04, chebyshev_04_trace, monic_chebyshev, monic_chebyshev_norm};
pub use cyclotomic::prime_cyclotomic_product;
pub use int::IntPoly;
pub use interval::Interval;
pub use irreducible::{irreducible_over_q, IRREDUCIBILITY_DEGREE_CAP};
pub use rat::RatPoly;
pub use resultant::{discriminant, resultant, sylvester_determinant, sylvester_matrix};
pub use substitution::{change_variable, VariableChange};
pub use symmetric::{newton_convert, newton_convert_to, power_sums, NewtonDirection, SymmetricData};

fn write_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (usize, String)>) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let (negative, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        let show_coeff = k == 0 || mag != "1";
        if show_coeff {
            f.write_str(&mag)?;
        }
        match k {
            0 => {}
            1 => f.write_str("x")?,
            _ => write!(f, "x^{k}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

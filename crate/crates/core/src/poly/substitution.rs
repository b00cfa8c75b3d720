use dashu::rational::RBig;

use super::{Interval, RatPoly};

/// A change of the independent variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariableChange {
    /// Returns `Q(y) = P(phi(y))` where `phi` maps `to` affinely onto `from`,
    /// so the values of `Q` on `to` are the values of `P` on `from`.
    Affine { from: Interval, to: Interval },
    /// `P(t) -> P(x^2)`; the norm of `P` on `[0, 1]` equals that of `P(x^2)`
    /// on `[-1, 1]`.
    Square,
}

pub fn change_variable(p: &RatPoly, kind: &VariableChange) -> RatPoly {
    match kind {
        VariableChange::Square => p.substitute_square(),
        VariableChange::Affine { from, to } => {
            // phi(y) = from.a + (y - to.a) * |from| / |to|
            let alpha: RBig = from.length() / to.length();
            let beta = from.a() - to.a() * &alpha;
            p.compose_affine(&alpha, &beta)
        }
    }
}

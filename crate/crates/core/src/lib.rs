pub mod enclosure;
pub mod error;
pub mod extremal;
pub mod numeric;
pub mod par;
pub mod poly;
pub mod roots;
pub mod schur;

pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use poly::{IntPoly, Interval, RatPoly};

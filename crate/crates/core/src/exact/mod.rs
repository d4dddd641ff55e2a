//! Exact arithmetic over the rationals.

mod error;
mod exterior;
mod gcd;
mod laurent;
pub mod linalg;
mod poly;
mod rational;
pub(crate) mod sparse;

pub use error::AlgebraError;
pub use exterior::{koszul_sign, ExteriorContext, ExteriorElement, FormTermList, Generator, GeneratorKind, LaurentTermList};
pub use laurent::{LaurentContext, LaurentPoly};
pub use poly::{MultiPoly, Vars};
pub use rational::{format_rational, parse_rational, rat, Rational};

//! Rota-Baxter algebras of weight -1.
//!
//! Every algebra here is a commutative (on the even part) algebra `R` with a
//! linear operator `T` satisfying
//!
//! ```text
//! T(x)T(y) = T(xT(y)) + T(T(x)y) - T(xy)
//! ```
//!
//! `T` extracts the "polar" part and `1 - T` the regular part.

mod descriptor;
mod forms;
mod laurent;
mod sample;
mod saito;

use std::fmt;

use thiserror::Error;

use crate::exact::{AlgebraError, Rational};

pub use descriptor::{AlgebraContextSpec, RBAlgebraDescriptor, RbAlgebra, RbElement, RbKind};
pub(crate) use descriptor::rational_from_json;
pub use forms::{MeromForms, NcLogForms};
pub use laurent::{LaurentMs, NaiveProductLaurent};
pub use saito::{SaitoForm, SaitoForms};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RbError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element kind {got} does not belong to a {expected} algebra")]
    KindMismatch { expected: String, got: String },
    #[error("odd-degree element where an even one is required: {0}")]
    OddElement(String),
    #[error("negative power of divisor variable {0} in a log form")]
    NegativePower(String),
    #[error("denominator shares a factor with the divisor h: gcd = {0}")]
    NotCoprime(String),
    #[error("divisor index {index} out of range for {count} divisors")]
    DivisorIndex { index: usize, count: usize },
    #[error("repeated divisor index {0} in an iterated residue")]
    RepeatedIndex(usize),
    #[error("unsupported weight {0}; only -1 is provided")]
    Weight(String),
    #[error("invalid algebra descriptor: {0}")]
    Descriptor(String),
    #[error("invalid element JSON: {0}")]
    Json(String),
}

/// A weight -1 Rota-Baxter algebra with operator [`RotaBaxterAlgebra::polar`].
pub trait RotaBaxterAlgebra {
    type Element: Clone + PartialEq + fmt::Debug + fmt::Display;

    /// Short name used in error messages and reports.
    fn label(&self) -> String;
    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn add(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, RbError>;
    fn neg(&self, a: &Self::Element) -> Self::Element;
    fn scale(&self, a: &Self::Element, c: &Rational) -> Self::Element;
    fn mul(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, RbError>;
    fn is_zero(&self, a: &Self::Element) -> bool;
    /// The operator `T`.
    fn polar(&self, a: &Self::Element) -> Self::Element;

    /// Checks that `a` lies in this algebra (context, pole and parity constraints).
    fn validate(&self, a: &Self::Element) -> Result<(), RbError>;

    /// Whether `T² = T` and `T(T(x)y) = T(x)y` hold identically, the
    /// hypotheses of the non-recursive counterterm formula.
    fn absorbing_projection(&self) -> bool;

    fn weight(&self) -> Rational {
        -Rational::from_integer(1.into())
    }

    fn sub(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, RbError> {
        self.add(a, &self.neg(b))
    }

    /// `(1 - T)(a)`.
    fn regular(&self, a: &Self::Element) -> Result<Self::Element, RbError> {
        self.sub(a, &self.polar(a))
    }
}

/// `T(x)T(y) - T(xT(y)) - T(T(x)y) - λT(xy)` with λ = -1; zero certifies the
/// identity on the pair.
pub fn rb_defect<A: RotaBaxterAlgebra>(
    alg: &A,
    x: &A::Element,
    y: &A::Element,
) -> Result<A::Element, RbError> {
    let tx = alg.polar(x);
    let ty = alg.polar(y);
    let lhs = alg.mul(&tx, &ty)?;
    let a = alg.polar(&alg.mul(x, &ty)?);
    let b = alg.polar(&alg.mul(&tx, y)?);
    let c = alg.scale(&alg.polar(&alg.mul(x, y)?), &alg.weight());
    let d = alg.sub(&lhs, &a)?;
    let d = alg.sub(&d, &b)?;
    alg.sub(&d, &c)
}

/// `T(xy) - T(x)y - xT(y) + T(x)T(y)`: the simplified identity that holds when
/// `T` is a projection onto an ideal whose complement is a subalgebra.
pub fn simplified_defect<A: RotaBaxterAlgebra>(
    alg: &A,
    x: &A::Element,
    y: &A::Element,
) -> Result<A::Element, RbError> {
    let tx = alg.polar(x);
    let ty = alg.polar(y);
    let d = alg.sub(&alg.polar(&alg.mul(x, y)?), &alg.mul(&tx, y)?)?;
    let d = alg.sub(&d, &alg.mul(x, &ty)?)?;
    alg.add(&d, &alg.mul(&tx, &ty)?)
}

/// `T(xy) - T(x)y - xT(y)`: zero when `T` is a derivation.
pub fn leibniz_defect<A: RotaBaxterAlgebra>(
    alg: &A,
    x: &A::Element,
    y: &A::Element,
) -> Result<A::Element, RbError> {
    let d = alg.sub(&alg.polar(&alg.mul(x, y)?), &alg.mul(&alg.polar(x), y)?)?;
    alg.sub(&d, &alg.mul(x, &alg.polar(y))?)
}

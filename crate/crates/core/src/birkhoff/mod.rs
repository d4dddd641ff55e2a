//! Characters of the Hopf algebra with values in a Rota-Baxter algebra, their
//! convolution, Birkhoff factorization `φ = (φ₋∘S)⋆φ₊` and the Atkinson
//! fixed-point solution.

mod atkinson;
mod character;

use std::collections::BTreeMap;

use num_traits::One;
use thiserror::Error;

pub use atkinson::{atkinson_closed_form, atkinson_closed_form_table, atkinson_solve, AtkinsonSolution, ConvolutionElement, Unitized};
pub use character::{
    birkhoff_factorize, close_registry, degree_cutoff, phi_minus_nonrecursive, pole_power_values, Character, CharacterSpec, Counterterm,
    Renormalized, DEFAULT_DEGREE_CUTOFF, DEGREE_CUTOFF_ENV,
};

use crate::exact::Rational;
use crate::hopf::{GeneratorRegistry, HopfElement, HopfError, Monomial};
use crate::rb::{RbError, RotaBaxterAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirkhoffError {
    #[error(transparent)]
    Rb(#[from] RbError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("no value assigned to generator {0}")]
    MissingValue(String),
    #[error("monomial {monomial} has degree {degree}, beyond the cutoff {cutoff}")]
    DegreeCutoff { monomial: String, degree: usize, cutoff: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("invalid degree cutoff {0:?}")]
    BadCutoff(String),
    #[error("invalid character JSON: {0}")]
    Json(String),
}

/// A linear map from the Hopf algebra to the target, given on monomials.
pub trait HopfFunctional<A: RotaBaxterAlgebra> {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError>;

    fn on_element(&self, alg: &A, x: &HopfElement) -> Result<A::Element, BirkhoffError> {
        let mut acc = alg.zero();
        for (m, c) in x.terms() {
            acc = alg.add(&acc, &alg.scale(&self.on_monomial(alg, m)?, c))?;
        }
        Ok(acc)
    }
}

/// The counit composed with the unit: `e(1) = 1`, zero in positive degree.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unit;

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for Unit {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        Ok(if m.is_one() { alg.one() } else { alg.zero() })
    }
}

/// Multiplicative extension of explicit generator values.
#[derive(Clone, Debug)]
pub struct GeneratorValues<E> {
    pub values: BTreeMap<String, E>,
}

impl<E> GeneratorValues<E> {
    pub fn new(values: BTreeMap<String, E>) -> Self {
        GeneratorValues { values }
    }
}

pub(crate) fn multiplicative<A: RotaBaxterAlgebra>(
    alg: &A,
    m: &Monomial,
    mut value: impl FnMut(&str) -> Result<A::Element, BirkhoffError>,
) -> Result<A::Element, BirkhoffError> {
    let mut acc = alg.one();
    for g in m.factors() {
        acc = alg.mul(&acc, &value(g)?)?;
    }
    Ok(acc)
}

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for GeneratorValues<A::Element> {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        multiplicative(alg, m, |g| self.values.get(g).cloned().ok_or_else(|| BirkhoffError::MissingValue(g.into())))
    }
}

/// `(f ⋆ g)(x) = Σ f(x') g(x'')` over `Δ(x)`.
pub fn convolve<A, F, G>(
    alg: &A,
    registry: &GeneratorRegistry,
    f: &F,
    g: &G,
    x: &HopfElement,
) -> Result<A::Element, BirkhoffError>
where
    A: RotaBaxterAlgebra,
    F: HopfFunctional<A> + ?Sized,
    G: HopfFunctional<A> + ?Sized,
{
    let mut acc = alg.zero();
    for (legs, c) in registry.coproduct(x)?.terms() {
        let t = alg.mul(&f.on_monomial(alg, &legs[0])?, &g.on_monomial(alg, &legs[1])?)?;
        acc = alg.add(&acc, &alg.scale(&t, c))?;
    }
    Ok(acc)
}

/// `((φ₋∘S) ⋆ φ₊)(Γ) - φ(Γ)`; the factorization holds at `Γ` iff this is zero.
pub fn factorization_defect<A, P, M, Q>(
    alg: &A,
    registry: &GeneratorRegistry,
    phi: &P,
    minus: &M,
    plus: &Q,
    x: &HopfElement,
) -> Result<A::Element, BirkhoffError>
where
    A: RotaBaxterAlgebra,
    P: HopfFunctional<A> + ?Sized,
    M: HopfFunctional<A> + ?Sized,
    Q: HopfFunctional<A> + ?Sized,
{
    let mut acc = alg.zero();
    for (legs, c) in registry.coproduct(x)?.terms() {
        let s = registry.antipode_monomial(&legs[0])?;
        let t = alg.mul(&minus.on_element(alg, &s)?, &plus.on_monomial(alg, &legs[1])?)?;
        acc = alg.add(&acc, &alg.scale(&t, c))?;
    }
    Ok(alg.sub(&acc, &phi.on_element(alg, x)?)?)
}

/// Result of [`verify_factorization`].
#[derive(Clone, Debug, PartialEq)]
pub struct Verification<E> {
    pub holds: bool,
    pub defect: E,
}

/// Checks `φ = (φ₋∘S) ⋆ φ₊` at `x`.
pub fn verify_factorization<A, P, M, Q>(
    alg: &A,
    registry: &GeneratorRegistry,
    phi: &P,
    minus: &M,
    plus: &Q,
    x: &HopfElement,
) -> Result<Verification<A::Element>, BirkhoffError>
where
    A: RotaBaxterAlgebra,
    P: HopfFunctional<A> + ?Sized,
    M: HopfFunctional<A> + ?Sized,
    Q: HopfFunctional<A> + ?Sized,
{
    let defect = factorization_defect(alg, registry, phi, minus, plus, x)?;
    Ok(Verification { holds: alg.is_zero(&defect), defect })
}

pub(crate) fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

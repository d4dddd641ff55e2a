use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{BirkhoffError, Character, HopfFunctional, Unit};
use crate::exact::Rational;
use crate::hopf::{GeneratorRegistry, Monomial};
use crate::rb::RotaBaxterAlgebra;

/// An element of the unitization `K ⊕ T(R)`: `unit · 1 + polar`.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitized<E> {
    pub unit: Rational,
    pub polar: E,
}

impl<E: Clone + PartialEq + std::fmt::Display> Unitized<E> {
    /// Splits the value of a counterterm-like map at `m`: the empty monomial
    /// carries the unit, anything else must lie in `T(R)`.
    pub fn split<A: RotaBaxterAlgebra<Element = E>>(alg: &A, m: &Monomial, v: E) -> Result<Self, BirkhoffError> {
        if m.is_one() {
            let rest = alg.sub(&v, &alg.one())?;
            if !alg.is_zero(&rest) {
                return Err(BirkhoffError::Precondition(format!("value at 1 is {v}, not the unit")));
            }
            return Ok(Unitized { unit: Rational::one(), polar: alg.zero() });
        }
        if alg.polar(&v) != v {
            return Err(BirkhoffError::Precondition(format!("value at {m} is not in the image of T: {v}")));
        }
        Ok(Unitized { unit: Rational::zero(), polar: v })
    }
}

/// A linear map on the Hopf algebra truncated at degree `cutoff`, stored as a
/// table over a monomial basis (including `1`).
pub struct ConvolutionElement<A: RotaBaxterAlgebra> {
    cutoff: usize,
    registry: Arc<GeneratorRegistry>,
    table: BTreeMap<Monomial, A::Element>,
}

impl<A: RotaBaxterAlgebra> Clone for ConvolutionElement<A> {
    fn clone(&self) -> Self {
        ConvolutionElement { cutoff: self.cutoff, registry: self.registry.clone(), table: self.table.clone() }
    }
}

impl<A: RotaBaxterAlgebra> ConvolutionElement<A> {
    /// `1` plus every monomial of degree `1..=cutoff` in the given generators.
    pub fn basis(
        registry: &GeneratorRegistry,
        generators: &[String],
        cutoff: usize,
    ) -> Result<Vec<Monomial>, BirkhoffError> {
        let mut out = vec![Monomial::one()];
        out.extend(
            registry
                .monomials_up_to(cutoff)?
                .into_iter()
                .filter(|m| m.factors().iter().all(|g| generators.contains(g))),
        );
        Ok(out)
    }

    pub fn from_fn(
        registry: Arc<GeneratorRegistry>,
        cutoff: usize,
        basis: &[Monomial],
        mut f: impl FnMut(&Monomial) -> Result<A::Element, BirkhoffError>,
    ) -> Result<Self, BirkhoffError> {
        let mut table = BTreeMap::new();
        for m in basis {
            table.insert(m.clone(), f(m)?);
        }
        Ok(ConvolutionElement { cutoff, registry, table })
    }

    pub fn unit(alg: &A, registry: Arc<GeneratorRegistry>, cutoff: usize, basis: &[Monomial]) -> Self {
        Self::from_fn(registry, cutoff, basis, |m| Unit.on_monomial(alg, m)).expect("the unit is total")
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn table(&self) -> &BTreeMap<Monomial, A::Element> {
        &self.table
    }

    pub fn get(&self, m: &Monomial) -> Result<&A::Element, BirkhoffError> {
        if let Some(v) = self.table.get(m) {
            return Ok(v);
        }
        let degree = self.registry.monomial_degree(m)?;
        if degree > self.cutoff {
            Err(BirkhoffError::DegreeCutoff { monomial: m.to_string(), degree, cutoff: self.cutoff })
        } else {
            let missing = m.factors().iter().find(|g| !self.table.contains_key(&Monomial::generator(g.as_str())));
            Err(BirkhoffError::MissingValue(missing.cloned().unwrap_or_else(|| m.to_string())))
        }
    }

    fn map(&self, f: impl Fn(&A::Element) -> A::Element) -> Self {
        ConvolutionElement {
            cutoff: self.cutoff,
            registry: self.registry.clone(),
            table: self.table.iter().map(|(m, v)| (m.clone(), f(v))).collect(),
        }
    }

    /// `T ∘ f`.
    pub fn project(&self, alg: &A) -> Self {
        self.map(|v| alg.polar(v))
    }

    pub fn scale(&self, alg: &A, c: &Rational) -> Self {
        self.map(|v| alg.scale(v, c))
    }

    pub fn add(&self, alg: &A, other: &Self) -> Result<Self, BirkhoffError> {
        let mut table = BTreeMap::new();
        for (m, v) in &self.table {
            table.insert(m.clone(), alg.add(v, other.get(m)?)?);
        }
        Ok(ConvolutionElement { cutoff: self.cutoff, registry: self.registry.clone(), table })
    }

    pub fn sub(&self, alg: &A, other: &Self) -> Result<Self, BirkhoffError> {
        self.add(alg, &other.scale(alg, &-Rational::one()))
    }

    /// Convolution product on the common basis.
    pub fn convolve(&self, alg: &A, other: &Self) -> Result<Self, BirkhoffError> {
        let mut table = BTreeMap::new();
        for m in self.table.keys() {
            let mut acc = alg.zero();
            for (legs, c) in self.registry.coproduct_monomial(m)?.terms() {
                let t = alg.mul(self.get(&legs[0])?, other.get(&legs[1])?)?;
                acc = alg.add(&acc, &alg.scale(&t, c))?;
            }
            table.insert(m.clone(), acc);
        }
        Ok(ConvolutionElement { cutoff: self.cutoff, registry: self.registry.clone(), table })
    }
}

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for ConvolutionElement<A> {
    fn on_monomial(&self, _alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        self.get(m).cloned()
    }
}

/// Solutions of `b_l = e + T(b_l ⋆ a)` and `b_r = e + (1-T)(a ⋆ b_r)` with
/// `a = e - φ`, truncated at the cutoff.
pub struct AtkinsonSolution<A: RotaBaxterAlgebra> {
    pub a: ConvolutionElement<A>,
    pub left: ConvolutionElement<A>,
    pub right: ConvolutionElement<A>,
}

impl<A: RotaBaxterAlgebra> AtkinsonSolution<A> {
    /// `(b_l ⋆ (e - a) ⋆ b_r - e)(m)` for every basis monomial; all zero when
    /// the factorization holds through the cutoff.
    pub fn defects(&self, alg: &A) -> Result<BTreeMap<Monomial, A::Element>, BirkhoffError> {
        let basis: Vec<Monomial> = self.a.table().keys().cloned().collect();
        let e = ConvolutionElement::unit(alg, self.a.registry.clone(), self.a.cutoff, &basis);
        let phi = e.sub(alg, &self.a)?;
        let prod = self.left.convolve(alg, &phi)?.convolve(alg, &self.right)?;
        Ok(prod.sub(alg, &e)?.table)
    }

    /// `b_l(m)` in the unitization `K ⊕ T(R)`.
    pub fn left_unitized(&self, alg: &A, m: &Monomial) -> Result<Unitized<A::Element>, BirkhoffError> {
        Unitized::split(alg, m, self.left.get(m)?.clone())
    }
}

fn alpha_table<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    depth: usize,
) -> Result<(Vec<Monomial>, ConvolutionElement<A>), BirkhoffError> {
    if depth == 0 {
        return Err(BirkhoffError::BadCutoff("0".into()));
    }
    let alg = phi.algebra();
    let gens: Vec<String> = phi.values().keys().cloned().collect();
    let basis = ConvolutionElement::<A>::basis(phi.registry(), &gens, depth)?;
    let a = ConvolutionElement::from_fn(phi.registry().clone(), depth, &basis, |m| {
        if m.is_one() {
            Ok(alg.zero())
        } else {
            Ok(alg.neg(&phi.on_monomial(alg, m)?))
        }
    })?;
    Ok((basis, a))
}

/// Solves the Atkinson fixed-point equations degree by degree over all
/// monomials of degree `≤ depth` in the generators that `φ` assigns.
pub fn atkinson_solve<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    depth: usize,
) -> Result<AtkinsonSolution<A>, BirkhoffError> {
    let alg = phi.algebra();
    let registry = phi.registry();
    let (basis, a) = alpha_table(phi, depth)?;
    let mut left: BTreeMap<Monomial, A::Element> = BTreeMap::new();
    let mut right: BTreeMap<Monomial, A::Element> = BTreeMap::new();
    for m in &basis {
        if m.is_one() {
            left.insert(m.clone(), alg.one());
            right.insert(m.clone(), alg.one());
            continue;
        }
        let (mut sl, mut sr) = (alg.zero(), alg.zero());
        for (legs, c) in registry.coproduct_monomial(m)?.terms() {
            // a(1) = 0 drops the terms that would need b(m) itself.
            if !legs[1].is_one() {
                let bl = left.get(&legs[0]).ok_or_else(|| BirkhoffError::MissingValue(legs[0].to_string()))?;
                sl = alg.add(&sl, &alg.scale(&alg.mul(bl, a.get(&legs[1])?)?, c))?;
            }
            if !legs[0].is_one() {
                let br = right.get(&legs[1]).ok_or_else(|| BirkhoffError::MissingValue(legs[1].to_string()))?;
                sr = alg.add(&sr, &alg.scale(&alg.mul(a.get(&legs[0])?, br)?, c))?;
            }
        }
        left.insert(m.clone(), alg.polar(&sl));
        right.insert(m.clone(), alg.regular(&sr)?);
    }
    let wrap = |table| ConvolutionElement { cutoff: depth, registry: registry.clone(), table };
    Ok(AtkinsonSolution { a: a.clone(), left: wrap(left), right: wrap(right) })
}

/// `b_l = e + T(a) ⋆ Σ_{n≤depth} a^{⋆n}` on every basis monomial, valid when
/// `T² = T` and `T(T(x)y) = T(x)y`.
pub fn atkinson_closed_form_table<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    depth: usize,
) -> Result<ConvolutionElement<A>, BirkhoffError> {
    let alg = phi.algebra();
    if !alg.absorbing_projection() {
        return Err(BirkhoffError::Precondition(format!(
            "{} does not satisfy T(T(x)y) = T(x)y; the closed form does not apply",
            alg.label()
        )));
    }
    let (basis, a) = alpha_table(phi, depth)?;
    let e = ConvolutionElement::unit(alg, phi.registry().clone(), depth, &basis);
    let mut power = e.clone();
    let mut geometric = e.clone();
    for _ in 0..depth {
        power = power.convolve(alg, &a)?;
        geometric = geometric.add(alg, &power)?;
    }
    e.add(alg, &a.project(alg).convolve(alg, &geometric)?)
}

/// [`atkinson_closed_form_table`] at one monomial.
pub fn atkinson_closed_form<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    m: &Monomial,
    depth: usize,
) -> Result<A::Element, BirkhoffError> {
    atkinson_closed_form_table(phi, depth)?.get(m).cloned()
}

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{multiplicative, sign, verify_factorization, BirkhoffError, HopfFunctional, Verification};
use crate::exact::Rational;
use crate::hopf::{GeneratorRegistry, HopfElement, HopfError, Monomial};
use crate::rb::{RBAlgebraDescriptor, RbAlgebra, RbElement, RotaBaxterAlgebra};

pub const DEFAULT_DEGREE_CUTOFF: usize = 4;
pub const DEGREE_CUTOFF_ENV: &str = "RB_RENORM_DEGREE_CUTOFF";

/// The truncation degree `N` for convolution tables: `RB_RENORM_DEGREE_CUTOFF`
/// if set, else 4.
pub fn degree_cutoff() -> Result<usize, BirkhoffError> {
    match std::env::var(DEGREE_CUTOFF_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(BirkhoffError::BadCutoff(s)),
        },
        Err(_) => Ok(DEFAULT_DEGREE_CUTOFF),
    }
}

/// Computes coproducts until no new generators appear, so every subgraph and
/// quotient reachable from the registered graphs has a name.
pub fn close_registry(registry: &GeneratorRegistry) -> Result<(), HopfError> {
    let mut done = 0;
    loop {
        let names = registry.names();
        if names.len() == done {
            return Ok(());
        }
        done = names.len();
        for n in &names {
            registry.coproduct_generator(n)?;
        }
    }
}

/// An algebra homomorphism `φ` from the Hopf algebra to a commutative
/// Rota-Baxter algebra, given by its values on generators. Birkhoff
/// components are memoised per generator.
pub struct Character<A: RotaBaxterAlgebra> {
    algebra: A,
    registry: Arc<GeneratorRegistry>,
    values: BTreeMap<String, A::Element>,
    memo: Mutex<BTreeMap<String, (A::Element, A::Element)>>,
}

impl<A: RotaBaxterAlgebra> Character<A> {
    pub fn new(
        algebra: A,
        registry: Arc<GeneratorRegistry>,
        values: BTreeMap<String, A::Element>,
    ) -> Result<Self, BirkhoffError> {
        for (name, v) in &values {
            if !registry.contains(name) {
                return Err(HopfError::UnknownGenerator(name.clone()).into());
            }
            algebra.validate(v)?;
        }
        Ok(Character { algebra, registry, values, memo: Mutex::new(BTreeMap::new()) })
    }

    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn registry(&self) -> &Arc<GeneratorRegistry> {
        &self.registry
    }

    pub fn values(&self) -> &BTreeMap<String, A::Element> {
        &self.values
    }

    pub fn value(&self, name: &str) -> Result<&A::Element, BirkhoffError> {
        self.values.get(name).ok_or_else(|| BirkhoffError::MissingValue(name.into()))
    }

    pub fn evaluate(&self, x: &HopfElement) -> Result<A::Element, BirkhoffError> {
        self.on_element(&self.algebra, x)
    }

    /// `(φ₋(Γ), φ₊(Γ))` from `φ₋(Γ) = -T(φ̄(Γ))`, `φ₊(Γ) = (1-T)(φ̄(Γ))` with
    /// `φ̄(Γ) = φ(Γ) + Σ φ₋(Γ')φ(Γ'')` over the reduced coproduct.
    pub fn factorize(&self, name: &str) -> Result<(A::Element, A::Element), BirkhoffError> {
        if let Some(v) = self.memo.lock().expect("memo lock poisoned").get(name) {
            return Ok(v.clone());
        }
        let alg = &self.algebra;
        let mut bar = self.value(name)?.clone();
        for (legs, c) in self.registry.reduced_coproduct_monomial(&Monomial::generator(name))?.terms() {
            let minus = self.counterterm_map().on_monomial(alg, &legs[0])?;
            let t = alg.mul(&minus, &self.on_monomial(alg, &legs[1])?)?;
            bar = alg.add(&bar, &alg.scale(&t, c))?;
        }
        let minus = alg.neg(&alg.polar(&bar));
        let plus = alg.regular(&bar)?;
        self.memo.lock().expect("memo lock poisoned").insert(name.to_string(), (minus.clone(), plus.clone()));
        Ok((minus, plus))
    }

    pub fn counterterm(&self, name: &str) -> Result<A::Element, BirkhoffError> {
        Ok(self.factorize(name)?.0)
    }

    pub fn renormalized(&self, name: &str) -> Result<A::Element, BirkhoffError> {
        Ok(self.factorize(name)?.1)
    }

    /// `φ₋` as a character.
    pub fn counterterm_map(&self) -> Counterterm<'_, A> {
        Counterterm(self)
    }

    /// `φ₊` as a character.
    pub fn renormalized_map(&self) -> Renormalized<'_, A> {
        Renormalized(self)
    }

    /// [`verify_factorization`] with this character's own components.
    pub fn verify(&self, x: &HopfElement) -> Result<Verification<A::Element>, BirkhoffError> {
        verify_factorization(&self.algebra, &self.registry, self, &self.counterterm_map(), &self.renormalized_map(), x)
    }
}

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for Character<A> {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        multiplicative(alg, m, |g| self.value(g).cloned())
    }
}

pub struct Counterterm<'a, A: RotaBaxterAlgebra>(&'a Character<A>);

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for Counterterm<'_, A> {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        multiplicative(alg, m, |g| self.0.counterterm(g))
    }
}

pub struct Renormalized<'a, A: RotaBaxterAlgebra>(&'a Character<A>);

impl<A: RotaBaxterAlgebra> HopfFunctional<A> for Renormalized<'_, A> {
    fn on_monomial(&self, alg: &A, m: &Monomial) -> Result<A::Element, BirkhoffError> {
        multiplicative(alg, m, |g| self.0.renormalized(g))
    }
}

/// `(φ₋(Γ), φ₊(Γ))`; see [`Character::factorize`].
pub fn birkhoff_factorize<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    name: &str,
) -> Result<(A::Element, A::Element), BirkhoffError> {
    phi.factorize(name)
}

/// `φ₋(Γ) = -T(φ(Γ)) - Σ_{n≥1} (-1)^n Σ T(φ(Γ¹)) φ(Γ²) ⋯ φ(Γⁿ⁺¹)` over the
/// `n`-fold reduced coproduct. Valid when `T² = T` and `T(T(x)y) = T(x)y`.
pub fn phi_minus_nonrecursive<A: RotaBaxterAlgebra>(
    phi: &Character<A>,
    name: &str,
) -> Result<A::Element, BirkhoffError> {
    let alg = phi.algebra();
    if !alg.absorbing_projection() {
        return Err(BirkhoffError::Precondition(format!(
            "{} does not satisfy T(T(x)y) = T(x)y; use the recursive factorization",
            alg.label()
        )));
    }
    let x = HopfElement::generator(name);
    let mut out = alg.neg(&alg.polar(&phi.evaluate(&x)?));
    for n in 1.. {
        let t = phi.registry().reduced_coproduct_iterated(&x, n)?;
        if t.is_zero() {
            break;
        }
        let mut s = alg.zero();
        for (legs, c) in t.terms() {
            let mut term = alg.polar(&phi.on_monomial(alg, &legs[0])?);
            for m in &legs[1..] {
                term = alg.mul(&term, &phi.on_monomial(alg, m)?)?;
            }
            s = alg.add(&s, &alg.scale(&term, c))?;
        }
        out = alg.sub(&out, &alg.scale(&s, &sign(n)))?;
    }
    Ok(out)
}

/// Character JSON: `{"target": descriptor, "values": {name: element}}`,
/// optionally with `"rule": "pole_power"` and `"c"` to fill in every
/// generator as `z^-max(ω(Γ),1) + c`, `ω` the superficial degree. Explicit
/// values take precedence over the rule.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub target: RBAlgebraDescriptor,
    #[serde(default)]
    pub values: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Value>,
}

impl CharacterSpec {
    pub fn build(&self, registry: Arc<GeneratorRegistry>) -> Result<Character<RbAlgebra>, BirkhoffError> {
        let alg = self.target.build()?;
        let mut values = match self.rule.as_deref() {
            None => BTreeMap::new(),
            Some("pole_power") => {
                let c = match &self.c {
                    Some(v) => crate::rb::rational_from_json(v)?,
                    None => Rational::from_integer(0.into()),
                };
                pole_power_values(&alg, &registry, &c)?
            }
            Some(other) => return Err(BirkhoffError::Json(format!("unknown rule {other:?}"))),
        };
        for (name, v) in &self.values {
            values.insert(name.clone(), alg.element_from_json(v)?);
        }
        Character::new(alg, registry, values)
    }
}

/// `φ(Γ) = v^{-max(ω(Γ),1)} + c` on every generator reachable from the
/// registry, `v` the pole variable of the target.
pub fn pole_power_values(
    alg: &RbAlgebra,
    registry: &GeneratorRegistry,
    c: &Rational,
) -> Result<BTreeMap<String, RbElement>, BirkhoffError> {
    close_registry(registry)?;
    let dim = registry.config().dim;
    let mut out = BTreeMap::new();
    for name in registry.names() {
        let omega = registry.graph(&name)?.superficial_degree(dim);
        let power = -(omega.max(1) as i32);
        out.insert(name, alg.pole_scalar(power, c)?);
    }
    Ok(out)
}

impl Character<RbAlgebra> {
    /// The toy rule `φ(Γ) = z^{-max(ω(Γ),1)} + c` over the closed registry.
    pub fn pole_power(alg: RbAlgebra, registry: Arc<GeneratorRegistry>, c: &Rational) -> Result<Self, BirkhoffError> {
        let values = pole_power_values(&alg, &registry, c)?;
        Character::new(alg, registry, values)
    }

    pub fn from_json(text: &str, registry: Arc<GeneratorRegistry>) -> Result<Self, BirkhoffError> {
        let spec: CharacterSpec = serde_json::from_str(text).map_err(|e| BirkhoffError::Json(e.to_string()))?;
        spec.build(registry)
    }

    pub fn to_spec(&self) -> CharacterSpec {
        CharacterSpec {
            target: self.algebra.descriptor(),
            values: self.values.iter().map(|(k, v)| (k.clone(), self.algebra.element_to_json(v))).collect(),
            rule: None,
            c: None,
        }
    }
}

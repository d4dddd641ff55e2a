use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::sample::{masks_of_parity, random_form, small_rational, CoeffShape};
use super::{RbError, RotaBaxterAlgebra};
use crate::exact::{
    AlgebraError, ExteriorContext, ExteriorElement, Generator, GeneratorKind, LaurentContext, LaurentPoly,
    MultiPoly, Rational, Vars,
};

/// A form `ω` with `f ω = dlog h ∧ ξ + η`, stored as the triple `(f, ξ, η)`.
///
/// Triples are kept reduced: the common gcd of `f` and all coefficients of
/// `ξ, η` is divided out and `f` is monic. Equality compares cross-multiplied
/// numerators, so it does not depend on the reduction.
#[derive(Clone, Debug)]
pub struct SaitoForm {
    f: MultiPoly,
    xi: ExteriorElement,
    eta: ExteriorElement,
}

impl SaitoForm {
    pub fn denominator(&self) -> &MultiPoly {
        &self.f
    }
    pub fn xi(&self) -> &ExteriorElement {
        &self.xi
    }
    pub fn eta(&self) -> &ExteriorElement {
        &self.eta
    }
    pub fn is_zero(&self) -> bool {
        self.xi.is_zero() && self.eta.is_zero()
    }
}

fn lift(ctx: &Arc<ExteriorContext>, p: &MultiPoly) -> LaurentPoly {
    LaurentPoly::from_ambient(&ctx.coeffs, p).expect("denominator lives in the ambient ring")
}

impl PartialEq for SaitoForm {
    fn eq(&self, other: &Self) -> bool {
        if self.xi.context() != other.xi.context() {
            return false;
        }
        let ctx = self.xi.context();
        let (f1, f2) = (lift(ctx, &self.f), lift(ctx, &other.f));
        self.xi.mul_scalar(&f2) == other.xi.mul_scalar(&f1) && self.eta.mul_scalar(&f2) == other.eta.mul_scalar(&f1)
    }
}

impl fmt::Display for SaitoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(dlogh^({}) + ({}))/({})", self.xi, self.eta, self.f)
    }
}

/// Saito's logarithmic forms along a divisor `h = 0` on affine space with
/// coordinates `h.vars()`. `T(f, ξ, η) = (f, ξ, 0)` is a derivation with
/// `T(x)T(y) = 0`, hence Rota-Baxter of weight -1.
///
/// The requirement that `{f = 0}` meet `{h = 0}` in codimension two is
/// replaced by the checkable proxy `gcd(f, h) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaitoForms {
    h: MultiPoly,
    ctx: Arc<ExteriorContext>,
}

impl SaitoForms {
    pub fn new(h: MultiPoly) -> Result<Self, RbError> {
        if h.is_constant() {
            return Err(RbError::Descriptor(format!("divisor polynomial h = {h} is constant")));
        }
        let vars = h.vars().clone();
        let gens = vars
            .names()
            .iter()
            .enumerate()
            .map(|(k, x)| Generator { name: format!("d{x}"), kind: GeneratorKind::Dx(k) })
            .collect();
        let coeffs = LaurentContext::new(Vars::new(Vec::<String>::new()), vars);
        Ok(SaitoForms { h, ctx: ExteriorContext::new(gens, coeffs)? })
    }

    /// `h = x1 x2` on the affine plane.
    pub fn standard() -> Self {
        let vars = Vars::numbered("x", 2);
        let h = MultiPoly::monomial(&vars, vec![1, 1], Rational::from_integer(1.into()));
        Self::new(h).expect("x1*x2 is not constant")
    }

    pub fn h(&self) -> &MultiPoly {
        &self.h
    }

    pub fn vars(&self) -> &Vars {
        self.h.vars()
    }

    /// Exterior algebra in `dx_k` that houses `ξ` and `η`.
    pub fn context(&self) -> &Arc<ExteriorContext> {
        &self.ctx
    }

    pub fn poly(&self, p: &MultiPoly) -> Result<LaurentPoly, RbError> {
        Ok(LaurentPoly::from_ambient(&self.ctx.coeffs, p)?)
    }

    /// Builds `(dlog h ∧ ξ + η)/f` after checking parities and `gcd(f, h) = 1`.
    pub fn form(&self, f: MultiPoly, xi: ExteriorElement, eta: ExteriorElement) -> Result<SaitoForm, RbError> {
        if f.vars() != self.h.vars() {
            return Err(AlgebraError::ContextMismatch { left: self.h.vars().to_string(), right: f.vars().to_string() }.into());
        }
        if f.is_zero() {
            return Err(AlgebraError::DivisionByZero.into());
        }
        for e in [&xi, &eta] {
            if e.context() != &self.ctx {
                return Err(AlgebraError::ContextMismatch {
                    left: self.ctx.coeffs.to_string(),
                    right: e.context().coeffs.to_string(),
                }
                .into());
            }
        }
        if !xi.is_odd() {
            return Err(RbError::Descriptor(format!("xi must be odd, got {xi}")));
        }
        if !eta.is_even() {
            return Err(RbError::OddElement(eta.to_string()));
        }
        self.check_coprime(&f)?;
        Ok(self.reduce(f, xi, eta))
    }

    /// The form `η` with no pole and no dlog part.
    pub fn regular(&self, eta: ExteriorElement) -> Result<SaitoForm, RbError> {
        let f = MultiPoly::one(self.h.vars());
        self.form(f, ExteriorElement::zero(&self.ctx), eta)
    }

    fn check_coprime(&self, f: &MultiPoly) -> Result<(), RbError> {
        let g = f.gcd(&self.h);
        if g.is_constant() {
            Ok(())
        } else {
            Err(RbError::NotCoprime(g.to_string()))
        }
    }

    fn reduce(&self, f: MultiPoly, xi: ExteriorElement, eta: ExteriorElement) -> SaitoForm {
        if xi.is_zero() && eta.is_zero() {
            return SaitoForm { f: MultiPoly::one(self.h.vars()), xi, eta };
        }
        let mut g = f.clone();
        for (_, c) in xi.terms().chain(eta.terms()) {
            if g.is_constant() {
                break;
            }
            g = g.gcd(&c.to_flat().expect("Saito coefficients are polynomial"));
        }
        let (mut f, mut xi, mut eta) = (f, xi, eta);
        if !g.is_constant() {
            let div = |c: &LaurentPoly| {
                let q = c.to_flat().expect("polynomial").div_exact(&g).expect("gcd divides every coefficient");
                LaurentPoly::from_ambient(&self.ctx.coeffs, &q).expect("same ring")
            };
            f = f.div_exact(&g).expect("gcd divides f");
            xi = xi.map_coefficients(div);
            eta = eta.map_coefficients(div);
        }
        let lc = f.leading_term().map(|(_, c)| c.clone()).expect("f is nonzero");
        let inv = Rational::from_integer(1.into()) / lc;
        SaitoForm { f: f.scale(&inv), xi: xi.scale(&inv), eta: eta.scale(&inv) }
    }

    /// Wedge product: `(f1 f2, ξ1∧η2 + ĝ(η1)∧ξ2, η1∧η2)` where `ĝ` is the
    /// parity involution (moving `dlog h` past `η1`).
    pub fn wedge(&self, a: &SaitoForm, b: &SaitoForm) -> Result<SaitoForm, RbError> {
        self.check_member(a)?;
        self.check_member(b)?;
        let f = &a.f * &b.f;
        let xi = &a.xi.wedge(&b.eta) + &a.eta.parity_involution().wedge(&b.xi);
        let eta = a.eta.wedge(&b.eta);
        Ok(self.reduce(f, xi, eta))
    }

    fn random_denominator<R: Rng + ?Sized>(&self, rng: &mut R) -> MultiPoly {
        let vars = self.h.vars();
        let one = MultiPoly::one(vars);
        let mut candidates: Vec<MultiPoly> = (0..vars.len()).map(|k| &MultiPoly::var(vars, k) + &one).collect();
        let sum = (0..vars.len()).fold(one.clone(), |acc, k| &acc + &MultiPoly::var(vars, k));
        candidates.push(sum);
        candidates.retain(|c| c.gcd(&self.h).is_constant());
        let mut f = MultiPoly::constant(vars, small_rational(rng));
        if candidates.is_empty() {
            return f;
        }
        for _ in 0..rng.gen_range(0..=2) {
            f = &f * &candidates[rng.gen_range(0..candidates.len())];
        }
        f
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> SaitoForm {
        let n = self.ctx.generators.len();
        let shape = CoeffShape { distinguished: 0..=0, ambient_max: 1, max_terms: 2 };
        let f = self.random_denominator(rng);
        let xi = random_form(&self.ctx, &masks_of_parity(n, false), 2, &shape, rng);
        let eta = random_form(&self.ctx, &masks_of_parity(n, true), 2, &shape, rng);
        self.form(f, xi, eta).expect("sampled denominators are coprime to h")
    }
}

impl RotaBaxterAlgebra for SaitoForms {
    type Element = SaitoForm;

    fn label(&self) -> String {
        "saito_form".into()
    }
    fn zero(&self) -> SaitoForm {
        SaitoForm { f: MultiPoly::one(self.h.vars()), xi: ExteriorElement::zero(&self.ctx), eta: ExteriorElement::zero(&self.ctx) }
    }
    fn one(&self) -> SaitoForm {
        SaitoForm { f: MultiPoly::one(self.h.vars()), xi: ExteriorElement::zero(&self.ctx), eta: ExteriorElement::one(&self.ctx) }
    }
    fn add(&self, a: &SaitoForm, b: &SaitoForm) -> Result<SaitoForm, RbError> {
        self.check_member(a)?;
        self.check_member(b)?;
        if a.f == b.f {
            return Ok(self.reduce(a.f.clone(), &a.xi + &b.xi, &a.eta + &b.eta));
        }
        let (fa, fb) = (lift(&self.ctx, &a.f), lift(&self.ctx, &b.f));
        let xi = &a.xi.mul_scalar(&fb) + &b.xi.mul_scalar(&fa);
        let eta = &a.eta.mul_scalar(&fb) + &b.eta.mul_scalar(&fa);
        Ok(self.reduce(&a.f * &b.f, xi, eta))
    }
    fn neg(&self, a: &SaitoForm) -> SaitoForm {
        SaitoForm { f: a.f.clone(), xi: -&a.xi, eta: -&a.eta }
    }
    fn scale(&self, a: &SaitoForm, c: &Rational) -> SaitoForm {
        self.reduce(a.f.clone(), a.xi.scale(c), a.eta.scale(c))
    }
    fn mul(&self, a: &SaitoForm, b: &SaitoForm) -> Result<SaitoForm, RbError> {
        self.wedge(a, b)
    }
    fn is_zero(&self, a: &SaitoForm) -> bool {
        a.is_zero()
    }
    fn polar(&self, a: &SaitoForm) -> SaitoForm {
        self.reduce(a.f.clone(), a.xi.clone(), ExteriorElement::zero(&self.ctx))
    }
    fn validate(&self, a: &SaitoForm) -> Result<(), RbError> {
        self.check_member(a)?;
        self.check_coprime(&a.f)
    }
    fn absorbing_projection(&self) -> bool {
        true
    }
}

impl SaitoForms {
    // Cheap structural check; coprimality is established by `form` and
    // preserved by sums and products.
    fn check_member(&self, a: &SaitoForm) -> Result<(), RbError> {
        if a.xi.context() != &self.ctx || a.f.vars() != self.h.vars() {
            return Err(RbError::KindMismatch { expected: self.label(), got: "foreign Saito form".into() });
        }
        if !a.eta.is_even() {
            return Err(RbError::OddElement(a.eta.to_string()));
        }
        Ok(())
    }
}

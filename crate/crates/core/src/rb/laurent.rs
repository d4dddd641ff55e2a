use std::sync::Arc;

use rand::Rng;

use super::sample::{random_laurent, CoeffShape};
use super::{RbError, RotaBaxterAlgebra};
use crate::exact::{LaurentContext, LaurentPoly, Rational, Vars};

fn check_ctx(ctx: &Arc<LaurentContext>, a: &LaurentPoly) -> Result<(), RbError> {
    if a.context() == ctx {
        Ok(())
    } else {
        Err(crate::exact::AlgebraError::ContextMismatch { left: ctx.to_string(), right: a.context().to_string() }.into())
    }
}

/// Laurent polynomials in one variable `z` (with optional polynomial ambient
/// coefficients); `T` is minimal subtraction, the projection onto negative
/// powers of `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMs {
    ctx: Arc<LaurentContext>,
}

impl LaurentMs {
    pub fn new(variable: &str, ambient: Vars) -> Self {
        LaurentMs { ctx: LaurentContext::new(Vars::new([variable]), ambient) }
    }

    /// `Q[z, z^-1]`.
    pub fn standard() -> Self {
        Self::new("z", Vars::new(Vec::<String>::new()))
    }

    pub fn context(&self) -> &Arc<LaurentContext> {
        &self.ctx
    }

    pub fn z_power(&self, p: i32) -> LaurentPoly {
        LaurentPoly::distinguished_power(&self.ctx, 0, p)
    }

    pub fn constant(&self, c: Rational) -> LaurentPoly {
        LaurentPoly::constant(&self.ctx, c)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> LaurentPoly {
        let shape = CoeffShape { distinguished: -3..=3, ambient_max: 1, max_terms: 4 };
        random_laurent(&self.ctx, &shape, rng)
    }
}

impl RotaBaxterAlgebra for LaurentMs {
    type Element = LaurentPoly;

    fn label(&self) -> String {
        "laurent_ms".into()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(&self.ctx)
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(&self.ctx)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_add(b)?)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn scale(&self, a: &LaurentPoly, c: &Rational) -> LaurentPoly {
        a.scale(c)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_mul(b)?)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn polar(&self, a: &LaurentPoly) -> LaurentPoly {
        a.polar_part_in(0)
    }
    fn validate(&self, a: &LaurentPoly) -> Result<(), RbError> {
        check_ctx(&self.ctx, a)
    }
    fn absorbing_projection(&self) -> bool {
        // T(T(x)y) keeps only the polar part of T(x)y.
        false
    }
}

/// Diagnostic only: Laurent polynomials in several divisor variables with the
/// inclusion-exclusion operator `T = 1 - Π_j (1 - T_j)`, i.e. keep every
/// monomial with some negative exponent. This is *not* a Rota-Baxter
/// operator: `x = f1^-1 f2`, `y = f1 f2^-1` gives defect 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveProductLaurent {
    ctx: Arc<LaurentContext>,
}

impl NaiveProductLaurent {
    pub fn new(divisors: usize) -> Self {
        NaiveProductLaurent {
            ctx: LaurentContext::new(Vars::numbered("f", divisors), Vars::new(Vec::<String>::new())),
        }
    }

    pub fn context(&self) -> &Arc<LaurentContext> {
        &self.ctx
    }

    /// `Π f_j^{e_j}`.
    pub fn monomial(&self, exps: &[i32]) -> Result<LaurentPoly, RbError> {
        Ok(LaurentPoly::monomial(&self.ctx, exps.to_vec(), Rational::from_integer(1.into()))?)
    }
}

impl RotaBaxterAlgebra for NaiveProductLaurent {
    type Element = LaurentPoly;

    fn label(&self) -> String {
        "naive_product".into()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(&self.ctx)
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one(&self.ctx)
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_add(b)?)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        -a
    }
    fn scale(&self, a: &LaurentPoly, c: &Rational) -> LaurentPoly {
        a.scale(c)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_mul(b)?)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn polar(&self, a: &LaurentPoly) -> LaurentPoly {
        a.polar_part()
    }
    fn validate(&self, a: &LaurentPoly) -> Result<(), RbError> {
        check_ctx(&self.ctx, a)
    }
    fn absorbing_projection(&self) -> bool {
        false
    }
}

use std::sync::Arc;

use rand::Rng;

use super::sample::{masks_of_parity, random_form, CoeffShape};
use super::{RbError, RotaBaxterAlgebra};
use crate::exact::{
    AlgebraError, ExteriorContext, ExteriorElement, Generator, GeneratorKind, LaurentContext, LaurentPoly,
    Rational, Vars,
};

fn dx_generators(n: usize) -> Vec<Generator> {
    (0..n).map(|k| Generator { name: format!("dx{}", k + 1), kind: GeneratorKind::Dx(k) }).collect()
}

fn check_ctx(ctx: &Arc<ExteriorContext>, a: &ExteriorElement) -> Result<(), RbError> {
    if a.context() == ctx {
        Ok(())
    } else {
        let names = |c: &ExteriorContext| c.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>().join(",");
        Err(AlgebraError::ContextMismatch { left: names(ctx), right: names(a.context()) }.into())
    }
}

fn check_even(a: &ExteriorElement) -> Result<(), RbError> {
    if a.is_even() {
        Ok(())
    } else {
        Err(RbError::OddElement(a.to_string()))
    }
}

/// Even meromorphic forms `Σ_p α_p / f^p` on affine space with poles along a
/// single divisor `f`; `T` keeps the terms with `p ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeromForms {
    ctx: Arc<ExteriorContext>,
}

impl MeromForms {
    /// Forms in `dx1..dxN` with coefficients in `Q[x1..xN][f, 1/f]`.
    pub fn new(ambient: usize) -> Result<Self, RbError> {
        let coeffs = LaurentContext::new(Vars::new(["f"]), Vars::numbered("x", ambient));
        Ok(MeromForms { ctx: ExteriorContext::new(dx_generators(ambient), coeffs)? })
    }

    pub fn context(&self) -> &Arc<ExteriorContext> {
        &self.ctx
    }

    pub fn coefficient_context(&self) -> &Arc<LaurentContext> {
        &self.ctx.coeffs
    }

    /// `c · dx_{i1} ∧ ... ` (0-based indices).
    pub fn form(&self, indices: &[usize], c: LaurentPoly) -> Result<ExteriorElement, RbError> {
        Ok(ExteriorElement::basis(&self.ctx, indices, c)?)
    }

    pub fn f_power(&self, p: i32) -> LaurentPoly {
        LaurentPoly::distinguished_power(&self.ctx.coeffs, 0, p)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ExteriorElement {
        let shape = CoeffShape { distinguished: -2..=2, ambient_max: 1, max_terms: 2 };
        random_form(&self.ctx, &masks_of_parity(self.ctx.generators.len(), true), 3, &shape, rng)
    }
}

impl RotaBaxterAlgebra for MeromForms {
    type Element = ExteriorElement;

    fn label(&self) -> String {
        "merom_form".into()
    }
    fn zero(&self) -> ExteriorElement {
        ExteriorElement::zero(&self.ctx)
    }
    fn one(&self) -> ExteriorElement {
        ExteriorElement::one(&self.ctx)
    }
    fn add(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_add(b)?)
    }
    fn neg(&self, a: &ExteriorElement) -> ExteriorElement {
        -a
    }
    fn scale(&self, a: &ExteriorElement, c: &Rational) -> ExteriorElement {
        a.scale(c)
    }
    fn mul(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, RbError> {
        check_ctx(&self.ctx, a)?;
        check_even(a)?;
        check_even(b)?;
        Ok(a.try_wedge(b)?)
    }
    fn is_zero(&self, a: &ExteriorElement) -> bool {
        a.is_zero()
    }
    fn polar(&self, a: &ExteriorElement) -> ExteriorElement {
        a.map_coefficients(|c| c.polar_part_in(0))
    }
    fn validate(&self, a: &ExteriorElement) -> Result<(), RbError> {
        check_ctx(&self.ctx, a)?;
        check_even(a)
    }
    fn absorbing_projection(&self) -> bool {
        false
    }
}

/// Forms with logarithmic poles along a normal-crossings divisor
/// `f_1 ⋯ f_m = 0`: the exterior algebra on `dlog1..dlogm, dx1..dxN` with
/// coefficients polynomial in `f_1..f_m, x_1..x_N`.
///
/// `T` is the projection onto the ideal spanned by terms containing some
/// `dlog_j`. The dlog-free terms form a subalgebra, so `1 - T` is a ring
/// homomorphism and the weight -1 identity reduces to
/// `T(xy) = T(x)y + xT(y) - T(x)T(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcLogForms {
    ctx: Arc<ExteriorContext>,
    divisors: usize,
    dlog_mask: u64,
    smooth: bool,
}

impl NcLogForms {
    pub fn new(divisors: usize, ambient: usize) -> Result<Self, RbError> {
        if divisors == 0 {
            return Err(RbError::Descriptor("a log-form algebra needs at least one divisor".into()));
        }
        let coeffs = LaurentContext::new(Vars::numbered("f", divisors), Vars::numbered("x", ambient));
        let mut gens: Vec<Generator> = (0..divisors)
            .map(|j| Generator { name: format!("dlog{}", j + 1), kind: GeneratorKind::DlogDivisor(j) })
            .collect();
        gens.extend(dx_generators(ambient));
        let ctx = ExteriorContext::new(gens, coeffs)?;
        let dlog_mask = ctx.mask_where(|k| matches!(k, GeneratorKind::DlogDivisor(_)));
        Ok(NcLogForms { ctx, divisors, dlog_mask, smooth: false })
    }

    /// The smooth-hypersurface case `m = 1`, where `T(x)T(y) = 0` and `T` is a derivation.
    pub fn smooth(ambient: usize) -> Result<Self, RbError> {
        Ok(NcLogForms { smooth: true, ..Self::new(1, ambient)? })
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn divisors(&self) -> usize {
        self.divisors
    }

    pub fn ambient(&self) -> usize {
        self.ctx.generators.len() - self.divisors
    }

    pub fn context(&self) -> &Arc<ExteriorContext> {
        &self.ctx
    }

    pub fn coefficient_context(&self) -> &Arc<LaurentContext> {
        &self.ctx.coeffs
    }

    pub fn dlog_mask(&self) -> u64 {
        self.dlog_mask
    }

    /// Generator index of `dlog_{j+1}`.
    pub fn dlog_index(&self, j: usize) -> usize {
        j
    }

    /// Generator index of `dx_{k+1}`.
    pub fn dx_index(&self, k: usize) -> usize {
        self.divisors + k
    }

    /// `c · g_{i1} ∧ ...` over generator indices (see [`Self::dlog_index`], [`Self::dx_index`]).
    pub fn form(&self, indices: &[usize], c: LaurentPoly) -> Result<ExteriorElement, RbError> {
        Ok(ExteriorElement::basis(&self.ctx, indices, c)?)
    }

    fn check_divisor(&self, j: usize) -> Result<(), RbError> {
        if j < self.divisors {
            Ok(())
        } else {
            Err(RbError::DivisorIndex { index: j, count: self.divisors })
        }
    }

    /// Residue along `f_j = 0` (0-based `j`): move `dlog_j` to the front with its
    /// Koszul sign, drop it, and restrict the coefficient to `f_j = 0`.
    pub fn residue(&self, w: &ExteriorElement, j: usize) -> Result<ExteriorElement, RbError> {
        check_ctx(&self.ctx, w)?;
        self.check_divisor(j)?;
        let bit = 1u64 << self.dlog_index(j);
        let mut terms = Vec::new();
        for (mask, c) in w.terms() {
            if mask & bit == 0 {
                continue;
            }
            let c = c.set_distinguished_zero(j)?;
            let c = if (mask & (bit - 1)).count_ones() % 2 == 1 { -&c } else { c };
            terms.push((mask & !bit, c));
        }
        Ok(ExteriorElement::from_terms(&self.ctx, terms)?)
    }

    /// `Res_{i_k} ∘ ⋯ ∘ Res_{i_1}`: the first index is applied first.
    pub fn iterated_residue(&self, w: &ExteriorElement, indices: &[usize]) -> Result<ExteriorElement, RbError> {
        for (a, &i) in indices.iter().enumerate() {
            self.check_divisor(i)?;
            if indices[..a].contains(&i) {
                return Err(RbError::RepeatedIndex(i));
            }
        }
        let mut out = w.clone();
        for &i in indices {
            out = self.residue(&out, i)?;
        }
        Ok(out)
    }

    fn shape() -> CoeffShape {
        CoeffShape { distinguished: 0..=2, ambient_max: 1, max_terms: 3 }
    }

    /// Random even form.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> ExteriorElement {
        random_form(&self.ctx, &masks_of_parity(self.ctx.generators.len(), true), 3, &Self::shape(), rng)
    }

    /// Random form of mixed parity whose terms carry at most one dlog factor.
    pub fn random_single_dlog<R: Rng + ?Sized>(&self, rng: &mut R) -> ExteriorElement {
        let dlog = self.dlog_mask;
        let masks: Vec<u64> = (0u64..(1 << self.ctx.generators.len()))
            .filter(|m| (m & dlog).count_ones() <= 1)
            .collect();
        random_form(&self.ctx, &masks, 4, &Self::shape(), rng)
    }

    /// Random form of mixed parity with arbitrary dlog content.
    pub fn random_form<R: Rng + ?Sized>(&self, rng: &mut R) -> ExteriorElement {
        let masks: Vec<u64> = (0u64..(1 << self.ctx.generators.len())).collect();
        random_form(&self.ctx, &masks, 4, &Self::shape(), rng)
    }
}

impl RotaBaxterAlgebra for NcLogForms {
    type Element = ExteriorElement;

    fn label(&self) -> String {
        if self.smooth { "smooth_log_form" } else { "nc_log_form" }.into()
    }
    fn zero(&self) -> ExteriorElement {
        ExteriorElement::zero(&self.ctx)
    }
    fn one(&self) -> ExteriorElement {
        ExteriorElement::one(&self.ctx)
    }
    fn add(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, RbError> {
        check_ctx(&self.ctx, a)?;
        Ok(a.try_add(b)?)
    }
    fn neg(&self, a: &ExteriorElement) -> ExteriorElement {
        -a
    }
    fn scale(&self, a: &ExteriorElement, c: &Rational) -> ExteriorElement {
        a.scale(c)
    }
    fn mul(&self, a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement, RbError> {
        check_ctx(&self.ctx, a)?;
        check_even(a)?;
        check_even(b)?;
        Ok(a.try_wedge(b)?)
    }
    fn is_zero(&self, a: &ExteriorElement) -> bool {
        a.is_zero()
    }
    fn polar(&self, a: &ExteriorElement) -> ExteriorElement {
        let dlog = self.dlog_mask;
        a.filter_terms(|m| m & dlog != 0)
    }
    fn validate(&self, a: &ExteriorElement) -> Result<(), RbError> {
        check_ctx(&self.ctx, a)?;
        for (_, c) in a.terms() {
            for j in 0..self.divisors {
                if c.min_exponent(j).is_some_and(|e| e < 0) {
                    return Err(RbError::NegativePower(self.ctx.coeffs.distinguished.names()[j].clone()));
                }
            }
        }
        check_even(a)
    }
    fn absorbing_projection(&self) -> bool {
        true
    }
}

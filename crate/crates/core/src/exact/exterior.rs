use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, LaurentContext, LaurentPoly, Rational, Vars};

/// Laurent coefficient as `[coefficient, exponents]` pairs.
pub type LaurentTermList = Vec<(String, Vec<i32>)>;
/// Form as `[generator indices, coefficient]` pairs.
pub type FormTermList = Vec<(Vec<usize>, LaurentTermList)>;

/// What an odd generator stands for. Purely a label: the algebra is free on
/// the generators regardless of kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// `dlog f_j` for the `j`-th divisor component.
    DlogDivisor(usize),
    /// `dx_k`.
    Dx(usize),
    /// `dlog h` for a fixed divisor equation.
    DlogH,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
}

/// Ordered odd generators plus the coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExteriorContext {
    pub generators: Vec<Generator>,
    pub coeffs: Arc<LaurentContext>,
}

impl ExteriorContext {
    pub fn new(generators: Vec<Generator>, coeffs: Arc<LaurentContext>) -> Result<Arc<Self>, AlgebraError> {
        if generators.len() > 64 {
            return Err(AlgebraError::GeneratorIndex { index: generators.len(), count: 64 });
        }
        Ok(Arc::new(ExteriorContext { generators, coeffs }))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Bit mask of the generators satisfying `pred`.
    pub fn mask_where(&self, pred: impl Fn(&GeneratorKind) -> bool) -> u64 {
        self.generators
            .iter()
            .enumerate()
            .filter(|(_, g)| pred(&g.kind))
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

/// Sign of `e_A ∧ e_B` relative to the sorted basis word of `A ∪ B`, or
/// `None` when `A` and `B` overlap.
pub fn koszul_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a.checked_shr(i + 1).unwrap_or(0)).count_ones();
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn mask_indices(mut m: u64) -> Vec<usize> {
    let mut v = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// Element of the exterior algebra on the context's generators with Laurent
/// coefficients. Keys are generator subsets encoded as bit masks.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ExteriorRepr", try_from = "ExteriorRepr")]
pub struct ExteriorElement {
    ctx: Arc<ExteriorContext>,
    terms: BTreeMap<u64, LaurentPoly>,
}

impl ExteriorElement {
    pub fn zero(ctx: &Arc<ExteriorContext>) -> Self {
        ExteriorElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ctx: &Arc<ExteriorContext>, c: LaurentPoly) -> Self {
        Self::from_mask(ctx, 0, c)
    }

    pub fn one(ctx: &Arc<ExteriorContext>) -> Self {
        Self::scalar(ctx, LaurentPoly::one(&ctx.coeffs))
    }

    pub fn generator(ctx: &Arc<ExteriorContext>, i: usize) -> Result<Self, AlgebraError> {
        Self::basis(ctx, &[i], LaurentPoly::one(&ctx.coeffs))
    }

    /// `c · g_{i1} ∧ g_{i2} ∧ ...` in the given (not necessarily sorted) order.
    pub fn basis(ctx: &Arc<ExteriorContext>, indices: &[usize], c: LaurentPoly) -> Result<Self, AlgebraError> {
        let mut mask = 0u64;
        let mut sign = 1;
        for &i in indices {
            if i >= ctx.generators.len() {
                return Err(AlgebraError::GeneratorIndex { index: i, count: ctx.generators.len() });
            }
            match koszul_sign(mask, 1 << i) {
                Some(s) => {
                    sign *= s;
                    mask |= 1 << i;
                }
                None => return Ok(Self::zero(ctx)),
            }
        }
        let c = if sign < 0 { -&c } else { c };
        Ok(Self::from_mask(ctx, mask, c))
    }

    pub(crate) fn from_mask(ctx: &Arc<ExteriorContext>, mask: u64, c: LaurentPoly) -> Self {
        assert_eq!(c.context(), &ctx.coeffs, "coefficient context mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        ExteriorElement { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Arc<ExteriorContext> {
        &self.ctx
    }

    /// Terms as (generator mask, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (u64, &LaurentPoly)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mask: u64) -> LaurentPoly {
        self.terms.get(&mask).cloned().unwrap_or_else(|| LaurentPoly::zero(&self.ctx.coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(terms: &mut BTreeMap<u64, LaurentPoly>, mask: u64, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: format!("{:?}", self.ctx.generators.iter().map(|g| &g.name).collect::<Vec<_>>()),
                right: format!("{:?}", other.ctx.generators.iter().map(|g| &g.name).collect::<Vec<_>>()),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, *m, c.clone());
        }
        Ok(ExteriorElement { ctx: self.ctx.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(s) = koszul_sign(*ma, *mb) {
                    let c = ca * cb;
                    Self::insert_add(&mut terms, ma | mb, if s < 0 { -&c } else { c });
                }
            }
        }
        Ok(ExteriorElement { ctx: self.ctx.clone(), terms })
    }

    /// Panics on context mismatch; see [`Self::try_wedge`].
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("exterior context mismatch")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coefficients(|x| x.scale(c))
    }

    /// Multiplies every coefficient by the (even) scalar `c`.
    pub fn mul_scalar(&self, c: &LaurentPoly) -> Self {
        self.map_coefficients(|x| x * c)
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, *m, f(c));
        }
        ExteriorElement { ctx: self.ctx.clone(), terms }
    }

    pub fn try_map_coefficients(
        &self,
        f: impl Fn(&LaurentPoly) -> Result<LaurentPoly, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, *m, f(c)?);
        }
        Ok(ExteriorElement { ctx: self.ctx.clone(), terms })
    }

    pub fn filter_terms(&self, keep: impl Fn(u64) -> bool) -> Self {
        ExteriorElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Rebuilds with explicitly given terms (mask, coefficient); zero coefficients are dropped.
    pub fn from_terms(
        ctx: &Arc<ExteriorContext>,
        terms: impl IntoIterator<Item = (u64, LaurentPoly)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            if m >> ctx.generators.len() != 0 && ctx.generators.len() < 64 {
                return Err(AlgebraError::GeneratorIndex {
                    index: 63 - m.leading_zeros() as usize,
                    count: ctx.generators.len(),
                });
            }
            if c.context() != &ctx.coeffs {
                return Err(AlgebraError::ContextMismatch {
                    left: ctx.coeffs.to_string(),
                    right: c.context().to_string(),
                });
            }
            Self::insert_add(&mut out.terms, m, c);
        }
        Ok(out)
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.count_ones()).collect()
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 1)
    }

    /// The degree-`k` component.
    pub fn homogeneous(&self, k: u32) -> Self {
        self.filter_terms(|m| m.count_ones() == k)
    }

    /// `Σ (-1)^deg ω_deg`: the sign picked up when an odd element moves past ω.
    pub fn parity_involution(&self) -> Self {
        ExteriorElement {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.count_ones() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn to_term_list(&self) -> FormTermList {
        self.terms.iter().map(|(m, c)| (mask_indices(*m), c.to_term_list())).collect()
    }

    pub fn from_term_list(
        ctx: &Arc<ExteriorContext>,
        list: &[(Vec<usize>, LaurentTermList)],
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(ctx);
        for (idx, coeff) in list {
            let c = LaurentPoly::from_term_list(&ctx.coeffs, coeff)?;
            out = out.try_add(&Self::basis(ctx, idx, c)?)?;
        }
        Ok(out)
    }

    pub fn mask_indices(mask: u64) -> Vec<usize> {
        mask_indices(mask)
    }
}

impl Add for &ExteriorElement {
    type Output = ExteriorElement;
    fn add(self, rhs: &ExteriorElement) -> ExteriorElement {
        self.try_add(rhs).expect("exterior context mismatch")
    }
}

impl Sub for &ExteriorElement {
    type Output = ExteriorElement;
    fn sub(self, rhs: &ExteriorElement) -> ExteriorElement {
        self.try_sub(rhs).expect("exterior context mismatch")
    }
}

impl Neg for &ExteriorElement {
    type Output = ExteriorElement;
    fn neg(self) -> ExteriorElement {
        ExteriorElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let word: Vec<&str> = mask_indices(*m).iter().map(|&i| self.ctx.generators[i].name.as_str()).collect();
                if word.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", word.join("^"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorElement({self})")
    }
}

type TermList = Vec<(Vec<usize>, Vec<(String, Vec<i32>)>)>;

#[derive(Serialize, Deserialize)]
pub(crate) struct ExteriorRepr {
    generators: Vec<Generator>,
    distinguished: Vec<String>,
    ambient: Vec<String>,
    terms: TermList,
}

impl From<ExteriorElement> for ExteriorRepr {
    fn from(e: ExteriorElement) -> Self {
        ExteriorRepr {
            generators: e.ctx.generators.clone(),
            distinguished: e.ctx.coeffs.distinguished.names().to_vec(),
            ambient: e.ctx.coeffs.ambient.names().to_vec(),
            terms: e.to_term_list(),
        }
    }
}

impl TryFrom<ExteriorRepr> for ExteriorElement {
    type Error = AlgebraError;
    fn try_from(r: ExteriorRepr) -> Result<Self, AlgebraError> {
        let coeffs = LaurentContext::new(Vars::new(r.distinguished), Vars::new(r.ambient));
        let ctx = ExteriorContext::new(r.generators, coeffs)?;
        ExteriorElement::from_term_list(&ctx, &r.terms)
    }
}

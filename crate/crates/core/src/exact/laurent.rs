use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sparse::{add_into, add_maps, monomial_string, mul_maps, write_term};
use super::{format_rational, parse_rational, AlgebraError, MultiPoly, Rational, Vars};

/// Distinguished variables (integer exponents) followed by ambient variables
/// (non-negative exponents).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentContext {
    pub distinguished: Vars,
    pub ambient: Vars,
}

impl LaurentContext {
    pub fn new(distinguished: Vars, ambient: Vars) -> Arc<Self> {
        Arc::new(LaurentContext { distinguished, ambient })
    }

    pub fn width(&self) -> usize {
        self.distinguished.len() + self.ambient.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.distinguished.names().iter().chain(self.ambient.names())
    }

    /// All variables, distinguished first, as one polynomial context.
    pub fn flat_vars(&self) -> Vars {
        Vars::new(self.names().cloned())
    }
}

impl fmt::Display for LaurentContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.distinguished, self.ambient)
    }
}

/// Laurent polynomial in the distinguished variables with polynomial
/// coefficients in the ambient ones, stored as one flat term map whose keys
/// are `distinguished ++ ambient` exponent vectors.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "LaurentRepr", try_from = "LaurentRepr")]
pub struct LaurentPoly {
    ctx: Arc<LaurentContext>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(ctx: &Arc<LaurentContext>) -> Self {
        LaurentPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Arc<LaurentContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        add_into(&mut p.terms, vec![0; ctx.width()], c);
        p
    }

    pub fn one(ctx: &Arc<LaurentContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    /// `d_j^power` for the `j`-th distinguished variable.
    pub fn distinguished_power(ctx: &Arc<LaurentContext>, j: usize, power: i32) -> Self {
        let mut e = vec![0; ctx.width()];
        e[j] = power;
        let mut p = Self::zero(ctx);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn ambient_var(ctx: &Arc<LaurentContext>, k: usize) -> Self {
        let mut e = vec![0; ctx.width()];
        e[ctx.distinguished.len() + k] = 1;
        let mut p = Self::zero(ctx);
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn monomial(ctx: &Arc<LaurentContext>, exps: Vec<i32>, c: Rational) -> Result<Self, AlgebraError> {
        Self::from_terms(ctx, [(exps, c)])
    }

    pub fn from_terms(
        ctx: &Arc<LaurentContext>,
        terms: impl IntoIterator<Item = (Vec<i32>, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let nd = ctx.distinguished.len();
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.width() {
                return Err(AlgebraError::ExponentLength { expected: ctx.width(), got: e.len() });
            }
            if let Some(k) = e[nd..].iter().position(|&x| x < 0) {
                return Err(AlgebraError::NegativeAmbientExponent(ctx.ambient.names()[k].clone()));
            }
            add_into(&mut p.terms, e, c);
        }
        Ok(p)
    }

    /// Lifts a polynomial in the ambient variables.
    pub fn from_ambient(ctx: &Arc<LaurentContext>, p: &MultiPoly) -> Result<Self, AlgebraError> {
        if p.vars() != &ctx.ambient {
            return Err(AlgebraError::ContextMismatch {
                left: ctx.ambient.to_string(),
                right: p.vars().to_string(),
            });
        }
        let nd = ctx.distinguished.len();
        Ok(LaurentPoly {
            ctx: ctx.clone(),
            terms: p
                .terms()
                .map(|(e, c)| {
                    let mut k = vec![0; nd];
                    k.extend(e.iter().map(|&x| x as i32));
                    (k, c.clone())
                })
                .collect(),
        })
    }

    /// Lifts a polynomial over `distinguished ++ ambient`.
    pub fn from_flat(ctx: &Arc<LaurentContext>, p: &MultiPoly) -> Result<Self, AlgebraError> {
        let flat = ctx.flat_vars();
        if p.vars() != &flat {
            return Err(AlgebraError::ContextMismatch { left: flat.to_string(), right: p.vars().to_string() });
        }
        Ok(LaurentPoly {
            ctx: ctx.clone(),
            terms: p.terms().map(|(e, c)| (e.iter().map(|&x| x as i32).collect(), c.clone())).collect(),
        })
    }

    pub fn context(&self) -> &Arc<LaurentContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.ctx.width()]).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_ctx(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        Ok(LaurentPoly { ctx: self.ctx.clone(), terms: add_maps(&self.terms, &other.terms, false) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        Ok(LaurentPoly { ctx: self.ctx.clone(), terms: add_maps(&self.terms, &other.terms, true) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let terms = mul_maps(&self.terms, &other.terms, |a, b| a.iter().zip(b).map(|(x, y)| x + y).collect());
        Ok(LaurentPoly { ctx: self.ctx.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        LaurentPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn filter(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        LaurentPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Terms with a negative exponent in some distinguished variable.
    pub fn polar_part(&self) -> Self {
        let nd = self.ctx.distinguished.len();
        self.filter(|e| e[..nd].iter().any(|&x| x < 0))
    }

    /// Terms with a negative exponent in the `j`-th distinguished variable.
    pub fn polar_part_in(&self, j: usize) -> Self {
        self.filter(|e| e[j] < 0)
    }

    pub fn is_polynomial(&self) -> bool {
        let nd = self.ctx.distinguished.len();
        self.terms.keys().all(|e| e[..nd].iter().all(|&x| x >= 0))
    }

    pub fn min_exponent(&self, j: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[j]).min()
    }

    /// Substitutes `d_j = 0`; fails if `d_j` occurs with a negative exponent.
    pub fn set_distinguished_zero(&self, j: usize) -> Result<Self, AlgebraError> {
        if self.min_exponent(j).is_some_and(|m| m < 0) {
            return Err(AlgebraError::Pole { var: self.ctx.distinguished.names()[j].clone() });
        }
        Ok(self.filter(|e| e[j] == 0))
    }

    /// Substitutes the ambient variable `x_k = 0`.
    pub fn set_ambient_zero(&self, k: usize) -> Self {
        let i = self.ctx.distinguished.len() + k;
        self.filter(|e| e[i] == 0)
    }

    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgebraError> {
        let names: Vec<&String> = self.ctx.names().collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = point.get(names[k]).ok_or_else(|| AlgebraError::Unassigned(names[k].clone()))?;
                if x < 0 {
                    if v.is_zero() {
                        return Err(AlgebraError::Pole { var: names[k].clone() });
                    }
                    t /= num_traits::pow(v.clone(), (-x) as usize);
                } else {
                    t *= num_traits::pow(v.clone(), x as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Groups terms by their distinguished exponents, with coefficients in the ambient ring.
    pub fn coefficients(&self) -> BTreeMap<Vec<i32>, MultiPoly> {
        let nd = self.ctx.distinguished.len();
        let mut grouped: BTreeMap<Vec<i32>, Vec<(Vec<u32>, Rational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            grouped
                .entry(e[..nd].to_vec())
                .or_default()
                .push((e[nd..].iter().map(|&x| x as u32).collect(), c.clone()));
        }
        grouped
            .into_iter()
            .map(|(k, t)| (k, MultiPoly::from_terms(&self.ctx.ambient, t).expect("lengths match")))
            .collect()
    }

    /// Reinterprets a polynomial (no negative exponents) over `distinguished ++ ambient`.
    pub fn to_flat(&self) -> Option<MultiPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let flat = self.ctx.flat_vars();
        Some(
            MultiPoly::from_terms(&flat, self.terms.iter().map(|(e, c)| (e.iter().map(|&x| x as u32).collect(), c.clone())))
                .expect("lengths match"),
        )
    }

    pub fn to_term_list(&self) -> Vec<(String, Vec<i32>)> {
        self.terms.iter().rev().map(|(e, c)| (format_rational(c), e.clone())).collect()
    }

    pub fn from_term_list(ctx: &Arc<LaurentContext>, list: &[(String, Vec<i32>)]) -> Result<Self, AlgebraError> {
        let terms = list
            .iter()
            .map(|(c, e)| parse_rational(c).map(|c| (e.clone(), c)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(ctx, terms)
    }
}

fn ctx_panic(a: &LaurentContext, b: &LaurentContext) -> ! {
    panic!("Laurent context mismatch: {a} vs {b}")
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).unwrap_or_else(|_| ctx_panic(&self.ctx, &rhs.ctx))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).unwrap_or_else(|_| ctx_panic(&self.ctx, &rhs.ctx))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).unwrap_or_else(|_| ctx_panic(&self.ctx, &rhs.ctx))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut s, c, &monomial_string(self.ctx.names(), e), i == 0);
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self} over {})", self.ctx)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct LaurentRepr {
    distinguished: Vec<String>,
    ambient: Vec<String>,
    terms: Vec<(String, Vec<i32>)>,
}

impl From<LaurentPoly> for LaurentRepr {
    fn from(p: LaurentPoly) -> Self {
        LaurentRepr {
            distinguished: p.ctx.distinguished.names().to_vec(),
            ambient: p.ctx.ambient.names().to_vec(),
            terms: p.to_term_list(),
        }
    }
}

impl TryFrom<LaurentRepr> for LaurentPoly {
    type Error = AlgebraError;
    fn try_from(r: LaurentRepr) -> Result<Self, AlgebraError> {
        let ctx = LaurentContext::new(Vars::new(r.distinguished), Vars::new(r.ambient));
        LaurentPoly::from_term_list(&ctx, &r.terms)
    }
}

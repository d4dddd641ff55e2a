use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::sparse::{add_into, add_maps, monomial_string, mul_maps, write_term};
use super::{format_rational, parse_rational, AlgebraError, Rational};

/// An ordered list of variable names shared by every polynomial built over it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(Into::into).collect())
    }

    /// `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(","))
    }
}

/// Sparse polynomial in `Q[x_1..x_n]`; keys are exponent vectors, so the
/// `BTreeMap` order is lexicographic with `x_1 > x_2 > ...`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        add_into(&mut p.terms, vec![0; vars.len()], c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The `i`-th variable (0-based).
    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, AlgebraError> {
        let i = vars.index_of(name).ok_or_else(|| AlgebraError::UnknownVariable(name.into()))?;
        Ok(Self::var(vars, i))
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        add_into(&mut p.terms, exps, c);
        p
    }

    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgebraError::ExponentLength { expected: vars.len(), got: e.len() });
            }
            add_into(&mut p.terms, e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_ctx(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        Ok(MultiPoly { vars: self.vars.clone(), terms: add_maps(&self.terms, &other.terms, false) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        Ok(MultiPoly { vars: self.vars.clone(), terms: add_maps(&self.terms, &other.terms, true) })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_ctx(other)?;
        let terms = mul_maps(&self.terms, &other.terms, |a, b| {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        });
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point given by name; every variable that occurs must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgebraError> {
        let mut vals = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match point.get(name) {
                Some(v) => vals.push(Some(v.clone())),
                None if self.degree_in(i).unwrap_or(0) == 0 => vals.push(None),
                None => return Err(AlgebraError::Unassigned(name.clone())),
            }
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= num_traits::pow(vals[k].clone().expect("assigned"), x as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates at a point given positionally.
    pub fn eval_at(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x > 0 {
                    t *= num_traits::pow(point[k].clone(), x as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `x_i = 0`.
    pub fn set_zero(&self, i: usize) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Rewrites the polynomial over a larger variable list containing all current names.
    pub fn embed(&self, target: &Vars) -> Result<Self, AlgebraError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| AlgebraError::UnknownVariable(n.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (k, &x) in e.iter().enumerate() {
                ne[map[k]] += x;
            }
            add_into(&mut out.terms, ne, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.vars, d.vars, "context mismatch in division");
        let (ld, lc) = d.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((lr, cr)) = rem.leading_term() {
            let mut e = Vec::with_capacity(lr.len());
            for (a, b) in lr.iter().zip(ld) {
                if a < b {
                    return None;
                }
                e.push(a - b);
            }
            let q = Self::monomial(&self.vars, e, cr / lc);
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&(Rational::one() / c)),
            None => self.clone(),
        }
    }

    /// `[coefficient, exponents]` pairs, leading term first.
    pub fn to_term_list(&self) -> Vec<(String, Vec<u32>)> {
        self.terms.iter().rev().map(|(e, c)| (format_rational(c), e.clone())).collect()
    }

    pub fn from_term_list(vars: &Vars, list: &[(String, Vec<u32>)]) -> Result<Self, AlgebraError> {
        let terms = list
            .iter()
            .map(|(c, e)| parse_rational(c).map(|c| (e.clone(), c)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(vars, terms)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "context mismatch in gcd");
        super::gcd::gcd(self, other)
    }
}

fn ctx_panic(a: &Vars, b: &Vars) -> ! {
    panic!("polynomial context mismatch: {a} vs {b}")
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).unwrap_or_else(|_| ctx_panic(&self.vars, &rhs.vars))
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).unwrap_or_else(|_| ctx_panic(&self.vars, &rhs.vars))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).unwrap_or_else(|_| ctx_panic(&self.vars, &rhs.vars))
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut s, c, &monomial_string(self.vars.names().iter(), e), i == 0);
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self} over {})", self.vars)
    }
}

/// Wire format: `{"vars": [...], "terms": [["coef", [exps]], ...]}`.
#[derive(Serialize, Deserialize)]
pub(crate) struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<(String, Vec<u32>)>,
}

impl From<MultiPoly> for PolyRepr {
    fn from(p: MultiPoly) -> Self {
        PolyRepr {
            vars: p.vars.names().to_vec(),
            terms: p.terms.iter().rev().map(|(e, c)| (format_rational(c), e.clone())).collect(),
        }
    }
}

impl TryFrom<PolyRepr> for MultiPoly {
    type Error = AlgebraError;
    fn try_from(r: PolyRepr) -> Result<Self, AlgebraError> {
        let vars = Vars::new(r.vars);
        let terms = r
            .terms
            .into_iter()
            .map(|(c, e)| parse_rational(&c).map(|c| (e, c)))
            .collect::<Result<Vec<_>, _>>()?;
        MultiPoly::from_terms(&vars, terms)
    }
}

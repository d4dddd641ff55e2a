use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use serde_json::Value;

use super::HopfError;
use crate::exact::sparse::add_into;
use crate::exact::{format_rational, parse_rational, rat, Rational};

/// A commutative monomial in generator names, kept as a sorted multiset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<String>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Monomial(vec![name.into()])
    }

    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let mut v: Vec<String> = names.into_iter().map(Into::into).collect();
        v.sort();
        Monomial(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Factors with multiplicity, sorted.
    pub fn factors(&self) -> &[String] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let j = (i..self.0.len()).find(|&j| self.0[j] != self.0[i]).unwrap_or(self.0.len());
            if j - i == 1 {
                parts.push(self.0[i].clone());
            } else {
                parts.push(format!("{}^{}", self.0[i], j - i));
            }
            i = j;
        }
        f.write_str(&parts.join("*"))
    }
}

fn write_coefficient(out: &mut String, c: &Rational, body: &str, first: bool) {
    if c.is_negative() {
        out.push_str(if first { "-" } else { " - " });
    } else if !first {
        out.push_str(" + ");
    }
    let a = c.abs();
    if !a.is_one() {
        out.push_str(&format_rational(&a));
        out.push(' ');
    }
    out.push_str(body);
}

/// Finite rational combination of monomials.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct HopfElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl HopfElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(Monomial::one(), Rational::one())
    }

    pub fn scalar(c: Rational) -> Self {
        Self::from_monomial(Monomial::one(), c)
    }

    pub fn generator(name: impl Into<String>) -> Self {
        Self::from_monomial(Monomial::generator(name), Rational::one())
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, m, c);
        HopfElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            add_into(&mut out, m, c);
        }
        HopfElement { terms: out }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// ε: the coefficient of the unit.
    pub fn counit(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        add_into(&mut self.terms, m, c);
    }
}

impl Add for &HopfElement {
    type Output = HopfElement;
    fn add(self, rhs: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HopfElement {
    type Output = HopfElement;
    fn sub(self, rhs: &HopfElement) -> HopfElement {
        self + &-rhs
    }
}

impl Neg for &HopfElement {
    type Output = HopfElement;
    fn neg(self) -> HopfElement {
        HopfElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &HopfElement {
    type Output = HopfElement;
    fn mul(self, rhs: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient(&mut s, c, &m.to_string(), i == 0);
        }
        f.write_str(&s)
    }
}

/// Element of the `arity`-fold tensor power, as combinations of monomial words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Rational>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, legs: Vec<Monomial>, c: Rational) {
        assert_eq!(legs.len(), self.arity, "tensor arity");
        add_into(&mut self.terms, legs, c);
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<Monomial>, Rational)>) -> Self {
        let mut t = Self::zero(arity);
        for (legs, c) in terms {
            t.add_term(legs, c);
        }
        t
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, legs: &[Monomial]) -> Rational {
        self.terms.get(legs).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.arity, self.terms.iter().map(|(l, x)| (l.clone(), x * c)))
    }

    /// Replaces leg `i` of every word by the `k` legs of `f(leg)`.
    pub fn expand_leg(&self, i: usize, k: usize, mut f: impl FnMut(&Monomial) -> TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1 + k);
        for (legs, c) in &self.terms {
            let image = f(&legs[i]);
            assert_eq!(image.arity, k, "leg image arity");
            for (sub, d) in &image.terms {
                let mut w = legs[..i].to_vec();
                w.extend(sub.iter().cloned());
                w.extend(legs[i + 1..].iter().cloned());
                out.add_term(w, c * d);
            }
        }
        out
    }

    /// Multiplies all legs together.
    pub fn multiply_legs(&self) -> HopfElement {
        let mut out = HopfElement::zero();
        for (legs, c) in &self.terms {
            let m = legs.iter().fold(Monomial::one(), |acc, l| acc.mul(l));
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, rhs.arity, "tensor arity");
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &TensorElement {
    type Output = TensorElement;
    /// Legwise product in the tensor power of the algebra.
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.arity, rhs.arity, "tensor arity");
        let mut out = TensorElement::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x.mul(y)).collect(), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (legs, c)) in self.terms.iter().enumerate() {
            let body: Vec<String> = legs.iter().map(|m| m.to_string()).collect();
            write_coefficient(&mut s, c, &body.join("⊗"), i == 0);
        }
        f.write_str(&s)
    }
}

fn monomial_json(m: &Monomial) -> Value {
    Value::from(m.0.clone())
}

fn monomial_from_json(v: &Value) -> Result<Monomial, HopfError> {
    let names = v.as_array().ok_or_else(|| HopfError::Json(format!("monomial must be a list of names, got {v}")))?;
    names
        .iter()
        .map(|n| n.as_str().map(str::to_string).ok_or_else(|| HopfError::Json(format!("bad generator name {n}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Monomial::from_names)
}

fn coefficient_from_json(v: &Value) -> Result<Rational, HopfError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| HopfError::Json(e.to_string())),
        Value::Number(n) => n.as_i64().map(rat).ok_or_else(|| HopfError::Json(format!("{n} is not an integer"))),
        other => Err(HopfError::Json(format!("expected a coefficient, got {other}"))),
    }
}

fn pair(v: &Value) -> Result<(&Value, &Value), HopfError> {
    match v.as_array().map(Vec::as_slice) {
        Some([c, body]) => Ok((c, body)),
        _ => Err(HopfError::Json(format!("expected [coefficient, body], got {v}"))),
    }
}

impl HopfElement {
    /// `[[coefficient, [generator, ...]], ...]`.
    pub fn to_json_value(&self) -> Value {
        Value::from(
            self.terms.iter().map(|(m, c)| Value::from(vec![Value::from(format_rational(c)), monomial_json(m)])).collect::<Vec<_>>(),
        )
    }

    pub fn from_json_value(v: &Value) -> Result<Self, HopfError> {
        let terms = v.as_array().ok_or_else(|| HopfError::Json("expected a list of terms".into()))?;
        let mut out = HopfElement::zero();
        for t in terms {
            let (c, m) = pair(t)?;
            out.add_term(monomial_from_json(m)?, coefficient_from_json(c)?);
        }
        Ok(out)
    }
}

impl TensorElement {
    /// `[[coefficient, [[generator, ...], ...]], ...]`, one inner list per leg.
    pub fn to_json_value(&self) -> Value {
        Value::from(
            self.terms
                .iter()
                .map(|(legs, c)| {
                    Value::from(vec![Value::from(format_rational(c)), Value::from(legs.iter().map(monomial_json).collect::<Vec<_>>())])
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_json_value(v: &Value) -> Result<Self, HopfError> {
        let terms = v.as_array().ok_or_else(|| HopfError::Json("expected a list of terms".into()))?;
        let mut out: Option<TensorElement> = None;
        for t in terms {
            let (c, legs) = pair(t)?;
            let legs = legs.as_array().ok_or_else(|| HopfError::Json("legs must be a list".into()))?;
            let legs = legs.iter().map(monomial_from_json).collect::<Result<Vec<_>, _>>()?;
            let acc = out.get_or_insert_with(|| TensorElement::zero(legs.len()));
            if acc.arity != legs.len() {
                return Err(HopfError::Json("terms of different arity".into()));
            }
            acc.add_term(legs, coefficient_from_json(c)?);
        }
        Ok(out.unwrap_or_else(|| TensorElement::zero(2)))
    }
}

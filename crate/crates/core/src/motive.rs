//! Grothendieck classes in the Tate subring `ℤ[𝕃]`: projective spaces,
//! `GL_ℓ`, Grassmannians, blowups along Tate centres and complements of
//! hyperplane arrangements.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exact::linalg::EchelonBasis;
use crate::exact::{format_rational, Rational};

/// Largest arrangement for which the Whitney subset sum is attempted.
pub const DEFAULT_ARRANGEMENT_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("{0} must be non-negative")]
    Negative(&'static str),
    #[error("GL_ℓ needs ℓ >= 1, got {0}")]
    LoopNumber(i64),
    #[error("G({d},{n}) needs 0 <= d <= n")]
    Grassmannian { d: i64, n: i64 },
    #[error("blowup centre codimension must be at least 1")]
    Codimension,
    #[error("hyperplane {index}: {reason}")]
    Hyperplane { index: usize, reason: String },
    #[error("arrangement has {size} hyperplanes, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("f = ℓ - 2g + 1 = {0} is below 2")]
    SigmaRange(i64),
    #[error("pole-order bound needs {0}")]
    PoleHypothesis(String),
    #[error("characteristic polynomial is not divisible by L - 1")]
    Indivisible,
    #[error("cannot parse {0:?} as a polynomial in L")]
    Parse(String),
    #[error("invalid arrangement JSON: {0}")]
    Json(String),
}

/// Integer polynomial stored as exponent → non-zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly(BTreeMap<u32, BigInt>);

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly(BTreeMap::new())
    }

    pub fn monomial(e: u32, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `x^e - 1`.
    fn power_minus_one(e: u32) -> Self {
        &Self::monomial(e, 1) - &Self::one()
    }

    fn add_term(&mut self, e: u32, c: BigInt) {
        let slot = self.0.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.0.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &BigInt)> {
        self.0.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let Some(top) = self.degree() else {
            return BigInt::zero();
        };
        // Horner over all exponents down from the top.
        (0..=top).rev().fold(BigInt::zero(), |acc, e| acc * x + self.coefficient(e))
    }

    /// Exact quotient by `x - 1`; `None` if the remainder is non-zero.
    pub fn div_x_minus_one(&self) -> Option<Self> {
        let Some(top) = self.degree() else {
            return Some(Self::zero());
        };
        let mut q = Self::zero();
        let mut carry = BigInt::zero();
        for e in (1..=top).rev() {
            carry += self.coefficient(e);
            q.add_term(e - 1, carry.clone());
        }
        (carry + self.coefficient(0)).is_zero().then_some(q)
    }

    fn fmt_in(&self, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.0.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match i {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            match (a.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(&mono)?,
                (false, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }

    fn parse_in(var: &str, s: &str) -> Result<Self, MotiveError> {
        let bad = || MotiveError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef, mono) = match term.split_once('*') {
                Some((c, m)) => (c, m),
                None if term.starts_with(var) => ("1", term),
                None => (term, ""),
            };
            let mut c: BigInt = coef.parse().map_err(|_| bad())?;
            if neg {
                c = -c;
            }
            let e = if mono.is_empty() {
                0
            } else if mono == var {
                1
            } else {
                mono.strip_prefix(var)
                    .and_then(|m| m.strip_prefix('^'))
                    .and_then(|m| m.parse().ok())
                    .ok_or_else(bad)?
            };
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &-rhs
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

macro_rules! int_poly_newtype {
    ($name:ident, $var:literal) => {
        impl $name {
            pub fn poly(&self) -> &IntPoly {
                &self.0
            }

            pub fn eval(&self, x: impl Into<BigInt>) -> BigInt {
                self.0.eval(&x.into())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in($var, f)
            }
        }

        impl FromStr for $name {
            type Err = MotiveError;
            fn from_str(s: &str) -> Result<Self, MotiveError> {
                IntPoly::parse_in($var, s).map($name)
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

/// A class in `ℤ[𝕃]`, printed in `L`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LefschetzPolynomial(pub IntPoly);

/// Characteristic polynomial of a central arrangement, printed in `t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CharPoly(pub IntPoly);

int_poly_newtype!(LefschetzPolynomial, "L");
int_poly_newtype!(CharPoly, "t");

impl LefschetzPolynomial {
    pub fn zero() -> Self {
        LefschetzPolynomial(IntPoly::zero())
    }

    pub fn one() -> Self {
        LefschetzPolynomial(IntPoly::one())
    }

    /// `c·𝕃^e`.
    pub fn lefschetz_power(e: u32, c: impl Into<BigInt>) -> Self {
        LefschetzPolynomial(IntPoly::monomial(e, c))
    }
}

impl Add for &LefschetzPolynomial {
    type Output = LefschetzPolynomial;
    fn add(self, rhs: &LefschetzPolynomial) -> LefschetzPolynomial {
        LefschetzPolynomial(&self.0 + &rhs.0)
    }
}

impl Sub for &LefschetzPolynomial {
    type Output = LefschetzPolynomial;
    fn sub(self, rhs: &LefschetzPolynomial) -> LefschetzPolynomial {
        LefschetzPolynomial(&self.0 - &rhs.0)
    }
}

impl Mul for &LefschetzPolynomial {
    type Output = LefschetzPolynomial;
    fn mul(self, rhs: &LefschetzPolynomial) -> LefschetzPolynomial {
        LefschetzPolynomial(&self.0 * &rhs.0)
    }
}

/// `[ℙ^n] = 1 + 𝕃 + … + 𝕃^n`.
pub fn projective_class(n: i64) -> Result<LefschetzPolynomial, MotiveError> {
    if n < 0 {
        return Err(MotiveError::Negative("n"));
    }
    Ok(LefschetzPolynomial((0..=n as u32).fold(IntPoly::zero(), |acc, e| &acc + &IntPoly::monomial(e, 1))))
}

/// `[GL_ℓ] = 𝕃^{ℓ(ℓ-1)/2} Π_{i=1}^ℓ (𝕃^i - 1)`.
pub fn gl_class(l: i64) -> Result<LefschetzPolynomial, MotiveError> {
    if l < 1 {
        return Err(MotiveError::LoopNumber(l));
    }
    let l = l as u32;
    let p = (1..=l).fold(IntPoly::monomial(l * (l - 1) / 2, 1), |acc, i| &acc * &IntPoly::power_minus_one(i));
    Ok(LefschetzPolynomial(p))
}

/// `Σ_λ 𝕃^{|λ|}` over partitions `n-d ≥ λ₁ ≥ … ≥ λ_d ≥ 0`.
pub fn grassmannian_class(d: i64, n: i64) -> Result<LefschetzPolynomial, MotiveError> {
    if d < 0 || d > n {
        return Err(MotiveError::Grassmannian { d, n });
    }
    fn go(parts_left: u32, max_part: u32, size: u32, out: &mut IntPoly) {
        if parts_left == 0 {
            out.add_term(size, BigInt::one());
            return;
        }
        for p in 0..=max_part {
            go(parts_left - 1, p, size + p, out);
        }
    }
    let mut out = IntPoly::zero();
    go(d as u32, (n - d) as u32, 0, &mut out);
    Ok(LefschetzPolynomial(out))
}

/// Blowup along a centre of class `center` and codimension `codim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupStep {
    pub center: LefschetzPolynomial,
    pub codim: u32,
}

/// `[X̃] = [X] + [Y](𝕃 + … + 𝕃^{c-1})` per step, `c` the codimension of `Y`.
pub fn blowup_class(x: &LefschetzPolynomial, steps: &[BlowupStep]) -> Result<LefschetzPolynomial, MotiveError> {
    let mut out = x.clone();
    for s in steps {
        if s.codim < 1 {
            return Err(MotiveError::Codimension);
        }
        let exceptional = (1..s.codim).fold(IntPoly::zero(), |acc, k| &acc + &IntPoly::monomial(k, 1));
        out = &out + &LefschetzPolynomial(&s.center.0 * &exceptional);
    }
    Ok(out)
}

/// A central arrangement of linear hyperplanes in `𝔸^ambient`, or equivalently
/// a projective arrangement in `ℙ^{ambient-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ambient: usize,
    hyperplanes: Vec<Vec<Rational>>,
}

impl Arrangement {
    /// Rejects zero forms, wrong lengths and repeated hyperplanes (forms that
    /// are proportional).
    pub fn new(ambient: usize, hyperplanes: Vec<Vec<Rational>>) -> Result<Self, MotiveError> {
        let mut seen: Vec<EchelonBasis> = Vec::new();
        for (index, h) in hyperplanes.iter().enumerate() {
            let err = |reason: &str| MotiveError::Hyperplane { index, reason: reason.into() };
            if h.len() != ambient {
                return Err(err(&format!("has {} coefficients, expected {ambient}", h.len())));
            }
            if h.iter().all(Zero::is_zero) {
                return Err(err("is the zero form"));
            }
            if seen.iter().any(|b| b.reduce(h).iter().all(Zero::is_zero)) {
                return Err(err("repeats an earlier hyperplane"));
            }
            let mut b = EchelonBasis::new();
            b.insert(h);
            seen.push(b);
        }
        Ok(Arrangement { ambient, hyperplanes })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn hyperplanes(&self) -> &[Vec<Rational>] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// `{"ambient": n, "hyperplanes": [[c, ...], ...]}`, coefficients as
    /// integers or `"p/q"` strings.
    pub fn from_json(text: &str) -> Result<Self, MotiveError> {
        let v: Value = serde_json::from_str(text).map_err(|e| MotiveError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self, MotiveError> {
        let bad = |m: &str| MotiveError::Json(m.to_string());
        let ambient = v.get("ambient").and_then(Value::as_u64).ok_or_else(|| bad("missing integer \"ambient\""))?;
        let rows = v.get("hyperplanes").and_then(Value::as_array).ok_or_else(|| bad("missing array \"hyperplanes\""))?;
        let mut hs = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("a hyperplane must be an array"))?;
            let h = row
                .iter()
                .map(|c| crate::rb::rational_from_json(c).map_err(|e| MotiveError::Json(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            hs.push(h);
        }
        Self::new(ambient as usize, hs)
    }

    pub fn to_json_value(&self) -> Value {
        let coef = |c: &Rational| match (c.denom().is_one(), i64::try_from(c.numer())) {
            (true, Ok(n)) => Value::from(n),
            _ => Value::from(format_rational(c)),
        };
        serde_json::json!({
            "ambient": self.ambient,
            "hyperplanes": self.hyperplanes.iter().map(|h| h.iter().map(coef).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// `χ(t) = Σ_{S⊆A} (-1)^{|S|} t^{n - rank S}` with `n` the ambient dimension.
pub fn char_poly(a: &Arrangement) -> Result<CharPoly, MotiveError> {
    char_poly_with_bound(a, DEFAULT_ARRANGEMENT_BOUND)
}

pub fn char_poly_with_bound(a: &Arrangement, bound: usize) -> Result<CharPoly, MotiveError> {
    if a.len() > bound {
        return Err(MotiveError::TooLarge { size: a.len(), bound });
    }
    fn go(a: &Arrangement, next: usize, size: usize, basis: &EchelonBasis, out: &mut IntPoly) {
        if next == a.len() {
            let sign = if size.is_multiple_of(2) { 1 } else { -1 };
            out.add_term((a.ambient - basis.rank()) as u32, BigInt::from(sign));
            return;
        }
        go(a, next + 1, size, basis, out);
        let mut with = basis.clone();
        with.insert(&a.hyperplanes[next]);
        go(a, next + 1, size + 1, &with, out);
    }
    let mut out = IntPoly::zero();
    go(a, 0, 0, &EchelonBasis::new(), &mut out);
    Ok(CharPoly(out))
}

/// Class of the union of the hyperplanes in `ℙ^{ambient-1}`:
/// `[ℙ^n] - χ(𝕃)/(𝕃 - 1)`; the empty union has class 0.
pub fn arrangement_class(a: &Arrangement) -> Result<LefschetzPolynomial, MotiveError> {
    if a.is_empty() || a.ambient == 0 {
        return Ok(LefschetzPolynomial::zero());
    }
    let chi = char_poly(a)?;
    let complement = chi.0.div_x_minus_one().ok_or(MotiveError::Indivisible)?;
    Ok(&projective_class(a.ambient as i64 - 1)? - &LefschetzPolynomial(complement))
}

/// The arrangement `Σ_{ℓ,g}` in the `ℓ²` matrix coordinates `x_{ij}` (index
/// `(i-1)ℓ + (j-1)`), with `f = ℓ - 2g + 1`: the hyperplanes `x_{ij} = 0` for
/// `1 ≤ i < j ≤ f-1` and `x_{i1} + … + x_{i,f-1} = 0` for `1 ≤ i ≤ f-1`.
pub fn sigma_arrangement(l: i64, g: i64) -> Result<Arrangement, MotiveError> {
    let f = l - 2 * g + 1;
    if l < 1 || g < 0 || f < 2 {
        return Err(MotiveError::SigmaRange(f));
    }
    let (l, f) = (l as usize, f as usize);
    let coord = |i: usize, j: usize| (i - 1) * l + (j - 1);
    let unit = |idx: &[usize]| {
        let mut h = vec![Rational::zero(); l * l];
        for &k in idx {
            h[k] = Rational::one();
        }
        h
    };
    let mut hs = Vec::new();
    for i in 1..f {
        for j in i + 1..f {
            hs.push(unit(&[coord(i, j)]));
        }
    }
    for i in 1..f {
        hs.push(unit(&(1..f).map(|j| coord(i, j)).collect::<Vec<_>>()));
    }
    Arrangement::new(l * l, hs)
}

/// `n - (ℓ-1)(-n + (ℓ+1)D/2) + (ℓ-1)²`, the order needed to cancel the pole
/// of the integrand along the determinant hypersurface.
pub fn pole_order_bound(n: i64, l: i64, dim: i64) -> Result<i64, MotiveError> {
    if l < 1 {
        return Err(MotiveError::PoleHypothesis(format!("ℓ >= 1, got {l}")));
    }
    if n < l - 2 {
        return Err(MotiveError::PoleHypothesis(format!("n >= ℓ - 2, got n = {n}, ℓ = {l}")));
    }
    if ((l + 1) * dim) % 2 != 0 {
        return Err(MotiveError::PoleHypothesis(format!("(ℓ+1)D even, got {}", (l + 1) * dim)));
    }
    let b = -n + (l + 1) * dim / 2;
    Ok(n - (l - 1) * b + (l - 1) * (l - 1))
}

/// One blowup stage of the Kausz compactification: a centre fibred over
/// `base` with fibre `fiber`, of codimension `codim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KauszStratum {
    pub base: LefschetzPolynomial,
    pub fiber: LefschetzPolynomial,
    pub codim: u32,
}

/// Start from `[ℙ^{ℓ²}]` and blow up the given centres in order, each of
/// class `base · fiber`.
pub fn kausz_class(l: i64, strata: &[KauszStratum]) -> Result<LefschetzPolynomial, MotiveError> {
    if l < 1 {
        return Err(MotiveError::LoopNumber(l));
    }
    let steps: Vec<BlowupStep> =
        strata.iter().map(|s| BlowupStep { center: &s.base * &s.fiber, codim: s.codim }).collect();
    blowup_class(&projective_class(l * l)?, &steps)
}

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{LaurentMs, MeromForms, NcLogForms, RbError, RotaBaxterAlgebra, SaitoForm, SaitoForms};
use crate::exact::FormTermList;
use crate::exact::{format_rational, parse_rational, ExteriorElement, LaurentPoly, MultiPoly, Rational, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RbKind {
    LaurentMs,
    MeromForm,
    NcLogForm,
    SmoothLogForm,
    SaitoForm,
}

impl fmt::Display for RbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RbKind::LaurentMs => "laurent_ms",
            RbKind::MeromForm => "merom_form",
            RbKind::NcLogForm => "nc_log_form",
            RbKind::SmoothLogForm => "smooth_log_form",
            RbKind::SaitoForm => "saito_form",
        };
        f.write_str(s)
    }
}

/// Variable declarations. Ambient coordinates are always `x1..xN`, divisor
/// variables `f1..fm`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraContextSpec {
    /// Name of the Laurent variable (`laurent_ms` only; default `z`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    /// Number of divisor components `m` (`nc_log_form`; default 1).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<usize>,
    /// Number of ambient coordinates `N`.
    #[serde(default)]
    pub ambient: usize,
    /// Divisor polynomial `h` as `[coefficient, exponents]` pairs over
    /// `x1..xN` (`saito_form`; default `x1⋯xN`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<(String, Vec<u32>)>>,
}

mod weight_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(w: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(w))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Rational::from_integer(n.into())),
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
        }
    }
}

fn minus_one() -> Rational {
    Rational::from_integer((-1).into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RBAlgebraDescriptor {
    pub kind: RbKind,
    #[serde(default = "minus_one", with = "weight_text")]
    pub weight: Rational,
    #[serde(default)]
    pub context: AlgebraContextSpec,
}

impl RBAlgebraDescriptor {
    pub fn new(kind: RbKind, context: AlgebraContextSpec) -> Self {
        RBAlgebraDescriptor { kind, weight: minus_one(), context }
    }

    pub fn build(&self) -> Result<RbAlgebra, RbError> {
        RbAlgebra::from_descriptor(self)
    }
}

/// One of the provided weight -1 algebras, chosen at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum RbAlgebra {
    Laurent(LaurentMs),
    Merom(MeromForms),
    /// Both `nc_log_form` and `smooth_log_form`.
    Log(NcLogForms),
    Saito(SaitoForms),
}

/// An element of an [`RbAlgebra`].
#[derive(Clone, Debug, PartialEq)]
pub enum RbElement {
    Laurent(LaurentPoly),
    Form(ExteriorElement),
    Saito(SaitoForm),
}

impl fmt::Display for RbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RbElement::Laurent(x) => x.fmt(f),
            RbElement::Form(x) => x.fmt(f),
            RbElement::Saito(x) => x.fmt(f),
        }
    }
}

impl RbElement {
    fn variant(&self) -> &'static str {
        match self {
            RbElement::Laurent(_) => "laurent",
            RbElement::Form(_) => "form",
            RbElement::Saito(_) => "saito",
        }
    }
}

trait Wrap: Sized {
    fn wrap(self) -> RbElement;
    fn peel(e: &RbElement) -> Option<&Self>;
}

impl Wrap for LaurentPoly {
    fn wrap(self) -> RbElement {
        RbElement::Laurent(self)
    }
    fn peel(e: &RbElement) -> Option<&Self> {
        match e {
            RbElement::Laurent(x) => Some(x),
            _ => None,
        }
    }
}

impl Wrap for ExteriorElement {
    fn wrap(self) -> RbElement {
        RbElement::Form(self)
    }
    fn peel(e: &RbElement) -> Option<&Self> {
        match e {
            RbElement::Form(x) => Some(x),
            _ => None,
        }
    }
}

impl Wrap for SaitoForm {
    fn wrap(self) -> RbElement {
        RbElement::Saito(self)
    }
    fn peel(e: &RbElement) -> Option<&Self> {
        match e {
            RbElement::Saito(x) => Some(x),
            _ => None,
        }
    }
}

fn peel<'a, T: Wrap>(alg: &RbAlgebra, e: &'a RbElement) -> Result<&'a T, RbError> {
    T::peel(e).ok_or_else(|| RbError::KindMismatch { expected: alg.kind().to_string(), got: e.variant().into() })
}

macro_rules! on_alg {
    ($s:expr, $a:ident => $body:expr) => {
        match $s {
            RbAlgebra::Laurent($a) => $body,
            RbAlgebra::Merom($a) => $body,
            RbAlgebra::Log($a) => $body,
            RbAlgebra::Saito($a) => $body,
        }
    };
}


#[derive(Serialize, Deserialize)]
struct SaitoRepr {
    f: Vec<(String, Vec<u32>)>,
    xi: FormTermList,
    eta: FormTermList,
}

fn json_err(e: impl fmt::Display) -> RbError {
    RbError::Json(e.to_string())
}

impl RbAlgebra {
    pub fn from_descriptor(d: &RBAlgebraDescriptor) -> Result<Self, RbError> {
        if d.weight != minus_one() {
            return Err(RbError::Weight(format_rational(&d.weight)));
        }
        let c = &d.context;
        let n = c.ambient;
        Ok(match d.kind {
            RbKind::LaurentMs => {
                RbAlgebra::Laurent(LaurentMs::new(c.variable.as_deref().unwrap_or("z"), Vars::numbered("x", n)))
            }
            RbKind::MeromForm => RbAlgebra::Merom(MeromForms::new(n)?),
            RbKind::NcLogForm => RbAlgebra::Log(NcLogForms::new(c.divisors.unwrap_or(1), n)?),
            RbKind::SmoothLogForm => {
                if c.divisors.is_some_and(|m| m != 1) {
                    return Err(RbError::Descriptor("smooth_log_form has exactly one divisor".into()));
                }
                RbAlgebra::Log(NcLogForms::smooth(n)?)
            }
            RbKind::SaitoForm => {
                if n == 0 {
                    return Err(RbError::Descriptor("saito_form needs at least one ambient coordinate".into()));
                }
                let vars = Vars::numbered("x", n);
                let h = match &c.h {
                    Some(terms) => MultiPoly::from_term_list(&vars, terms)?,
                    None => MultiPoly::monomial(&vars, vec![1; n], Rational::from_integer(1.into())),
                };
                RbAlgebra::Saito(SaitoForms::new(h)?)
            }
        })
    }

    pub fn kind(&self) -> RbKind {
        match self {
            RbAlgebra::Laurent(_) => RbKind::LaurentMs,
            RbAlgebra::Merom(_) => RbKind::MeromForm,
            RbAlgebra::Log(a) if a.is_smooth() => RbKind::SmoothLogForm,
            RbAlgebra::Log(_) => RbKind::NcLogForm,
            RbAlgebra::Saito(_) => RbKind::SaitoForm,
        }
    }

    pub fn descriptor(&self) -> RBAlgebraDescriptor {
        let context = match self {
            RbAlgebra::Laurent(a) => AlgebraContextSpec {
                variable: Some(a.context().distinguished.names()[0].clone()),
                ambient: a.context().ambient.len(),
                ..Default::default()
            },
            RbAlgebra::Merom(a) => {
                AlgebraContextSpec { ambient: a.context().generators.len(), ..Default::default() }
            }
            RbAlgebra::Log(a) => {
                AlgebraContextSpec { divisors: Some(a.divisors()), ambient: a.ambient(), ..Default::default() }
            }
            RbAlgebra::Saito(a) => AlgebraContextSpec {
                ambient: a.vars().len(),
                h: Some(a.h().to_term_list()),
                ..Default::default()
            },
        };
        RBAlgebraDescriptor::new(self.kind(), context)
    }

    /// Parses an element from its JSON term list (see the README for the layouts).
    pub fn element_from_json(&self, v: &Value) -> Result<RbElement, RbError> {
        let form = |ctx, v: &Value| -> Result<ExteriorElement, RbError> {
            let terms: FormTermList = serde_json::from_value(v.clone()).map_err(json_err)?;
            Ok(ExteriorElement::from_term_list(ctx, &terms)?)
        };
        let e = match self {
            RbAlgebra::Laurent(a) => {
                let terms: Vec<(String, Vec<i32>)> = serde_json::from_value(v.clone()).map_err(json_err)?;
                RbElement::Laurent(LaurentPoly::from_term_list(a.context(), &terms)?)
            }
            RbAlgebra::Merom(a) => RbElement::Form(form(a.context(), v)?),
            RbAlgebra::Log(a) => RbElement::Form(form(a.context(), v)?),
            RbAlgebra::Saito(a) => {
                let r: SaitoRepr = serde_json::from_value(v.clone()).map_err(json_err)?;
                let f = MultiPoly::from_term_list(a.vars(), &r.f)?;
                let xi = ExteriorElement::from_term_list(a.context(), &r.xi)?;
                let eta = ExteriorElement::from_term_list(a.context(), &r.eta)?;
                RbElement::Saito(a.form(f, xi, eta)?)
            }
        };
        self.validate(&e)?;
        Ok(e)
    }

    pub fn element_to_json(&self, e: &RbElement) -> Value {
        match e {
            RbElement::Laurent(x) => serde_json::to_value(x.to_term_list()),
            RbElement::Form(x) => serde_json::to_value(x.to_term_list()),
            RbElement::Saito(x) => serde_json::to_value(SaitoRepr {
                f: x.denominator().to_term_list(),
                xi: x.xi().to_term_list(),
                eta: x.eta().to_term_list(),
            }),
        }
        .expect("term lists serialize")
    }

    /// A seeded-test sample from the algebra (even where parity matters).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> RbElement {
        match self {
            RbAlgebra::Laurent(a) => a.random_element(rng).wrap(),
            RbAlgebra::Merom(a) => a.random_element(rng).wrap(),
            RbAlgebra::Log(a) => a.random_element(rng).wrap(),
            RbAlgebra::Saito(a) => a.random_element(rng).wrap(),
        }
    }

    /// `v^power + constant` for the pole variable `v` (`z` or `f`); used by toy
    /// characters. Only `laurent_ms` and `merom_form` have one.
    pub fn pole_scalar(&self, power: i32, constant: &Rational) -> Result<RbElement, RbError> {
        match self {
            RbAlgebra::Laurent(a) => {
                Ok((&a.z_power(power) + &LaurentPoly::constant(a.context(), constant.clone())).wrap())
            }
            RbAlgebra::Merom(a) => {
                let c = &LaurentPoly::distinguished_power(a.coefficient_context(), 0, power)
                    + &LaurentPoly::constant(a.coefficient_context(), constant.clone());
                Ok(ExteriorElement::scalar(a.context(), c).wrap())
            }
            _ => Err(RbError::Descriptor(format!(
                "pole_power needs a Laurent or meromorphic target, got {}",
                self.kind()
            ))),
        }
    }
}

impl RotaBaxterAlgebra for RbAlgebra {
    type Element = RbElement;

    fn label(&self) -> String {
        self.kind().to_string()
    }
    fn zero(&self) -> RbElement {
        on_alg!(self, a => a.zero().wrap())
    }
    fn one(&self) -> RbElement {
        on_alg!(self, a => a.one().wrap())
    }
    fn add(&self, x: &RbElement, y: &RbElement) -> Result<RbElement, RbError> {
        on_alg!(self, a => Ok(a.add(peel(self, x)?, peel(self, y)?)?.wrap()))
    }
    fn neg(&self, x: &RbElement) -> RbElement {
        on_alg!(self, a => match peel(self, x) {
            Ok(v) => a.neg(v).wrap(),
            Err(_) => panic!("element of the wrong kind for {}", self.kind()),
        })
    }
    fn scale(&self, x: &RbElement, c: &Rational) -> RbElement {
        on_alg!(self, a => match peel(self, x) {
            Ok(v) => a.scale(v, c).wrap(),
            Err(_) => panic!("element of the wrong kind for {}", self.kind()),
        })
    }
    fn mul(&self, x: &RbElement, y: &RbElement) -> Result<RbElement, RbError> {
        on_alg!(self, a => Ok(a.mul(peel(self, x)?, peel(self, y)?)?.wrap()))
    }
    fn is_zero(&self, x: &RbElement) -> bool {
        on_alg!(self, a => peel(self, x).map(|v| a.is_zero(v)).unwrap_or(false))
    }
    fn polar(&self, x: &RbElement) -> RbElement {
        on_alg!(self, a => match peel(self, x) {
            Ok(v) => a.polar(v).wrap(),
            Err(_) => panic!("element of the wrong kind for {}", self.kind()),
        })
    }
    fn validate(&self, x: &RbElement) -> Result<(), RbError> {
        on_alg!(self, a => a.validate(peel(self, x)?))
    }
    fn absorbing_projection(&self) -> bool {
        on_alg!(self, a => a.absorbing_projection())
    }
}

/// Parses a scalar written as `"p/q"` or an integer; shared by the JSON loaders.
pub(crate) fn rational_from_json(v: &Value) -> Result<Rational, RbError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| Rational::from_integer(n.into()))
            .ok_or_else(|| RbError::Json(format!("{n} is not an integer"))),
        Value::String(s) => Ok(parse_rational(s)?),
        other => Err(RbError::Json(format!("expected a rational, got {other}"))),
    }
}

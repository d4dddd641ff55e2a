//! Term-map helpers shared by the polynomial types.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::Rational;

pub(crate) fn add_into<K: Ord + Clone>(acc: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn add_maps<K: Ord + Clone>(
    a: &BTreeMap<K, Rational>,
    b: &BTreeMap<K, Rational>,
    negate_b: bool,
) -> BTreeMap<K, Rational> {
    let mut out = a.clone();
    for (k, c) in b {
        let c = if negate_b { -c.clone() } else { c.clone() };
        add_into(&mut out, k.clone(), c);
    }
    out
}

pub(crate) fn mul_maps<K: Ord + Clone>(
    a: &BTreeMap<K, Rational>,
    b: &BTreeMap<K, Rational>,
    combine: impl Fn(&K, &K) -> K,
) -> BTreeMap<K, Rational> {
    let mut out = BTreeMap::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            add_into(&mut out, combine(ka, kb), ca * cb);
        }
    }
    out
}

/// Writes `c*mono` into `out` in the compact `2*x^2*y` style.
pub(crate) fn write_term(out: &mut String, c: &Rational, mono: &str, first: bool) {
    use num_traits::{One, Signed};
    let neg = c.is_negative();
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let a = c.abs();
    if mono.is_empty() {
        out.push_str(&super::format_rational(&a));
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&super::format_rational(&a));
        out.push('*');
        out.push_str(mono);
    }
}

pub(crate) fn monomial_string<E: std::fmt::Display + PartialEq + Zero + num_traits::One>(
    names: impl Iterator<Item = impl AsRef<str>>,
    exps: &[E],
) -> String {
    let mut parts = Vec::new();
    for (name, e) in names.zip(exps) {
        if e.is_zero() {
            continue;
        }
        if e.is_one() {
            parts.push(name.as_ref().to_string());
        } else {
            parts.push(format!("{}^{}", name.as_ref(), e));
        }
    }
    parts.join("*")
}

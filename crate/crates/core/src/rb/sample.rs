use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::Rng;

use crate::exact::{ExteriorContext, ExteriorElement, LaurentContext, LaurentPoly, Rational};

/// Small nonzero rational, occasionally with denominator 2 or 3.
pub(crate) fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut n: i64 = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    let d: i64 = if rng.gen_bool(0.2) { rng.gen_range(2..=3) } else { 1 };
    Rational::new(n.into(), d.into())
}

/// Shape of random Laurent coefficients.
#[derive(Clone, Debug)]
pub(crate) struct CoeffShape {
    pub distinguished: RangeInclusive<i32>,
    pub ambient_max: u32,
    pub max_terms: usize,
}

pub(crate) fn random_laurent<R: Rng + ?Sized>(
    ctx: &Arc<LaurentContext>,
    shape: &CoeffShape,
    rng: &mut R,
) -> LaurentPoly {
    let n = rng.gen_range(1..=shape.max_terms);
    let nd = ctx.distinguished.len();
    let terms = (0..n).map(|_| {
        let mut e = Vec::with_capacity(ctx.width());
        for _ in 0..nd {
            e.push(rng.gen_range(shape.distinguished.clone()));
        }
        for _ in 0..ctx.ambient.len() {
            e.push(rng.gen_range(0..=shape.ambient_max) as i32);
        }
        (e, small_rational(rng))
    });
    LaurentPoly::from_terms(ctx, terms.collect::<Vec<_>>()).expect("sampled exponents fit the context")
}

/// Random element supported on the given generator masks.
pub(crate) fn random_form<R: Rng + ?Sized>(
    ctx: &Arc<ExteriorContext>,
    masks: &[u64],
    max_terms: usize,
    shape: &CoeffShape,
    rng: &mut R,
) -> ExteriorElement {
    if masks.is_empty() {
        return ExteriorElement::zero(ctx);
    }
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| (masks[rng.gen_range(0..masks.len())], random_laurent(&ctx.coeffs, shape, rng)))
        .collect();
    ExteriorElement::from_terms(ctx, terms).expect("sampled masks fit the context")
}

/// All generator masks of the given parity (`even = true` includes the empty mask).
pub(crate) fn masks_of_parity(n: usize, even: bool) -> Vec<u64> {
    (0u64..(1 << n)).filter(|m| (m.count_ones() % 2 == 0) == even).collect()
}

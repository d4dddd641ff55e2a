//! Brute-force point counts over small prime fields.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rb_renorm::motive::Arrangement;
use rb_renorm::Rational;

/// All vectors of `F_q^n`.
pub fn vectors(q: i64, n: usize) -> Vec<Vec<i64>> {
    (0..q.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % q;
                    k /= q;
                    d
                })
                .collect()
        })
        .collect()
}

pub fn det_mod(m: &[Vec<i64>], q: i64) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let s = if j % 2 == 0 { 1 } else { q - 1 };
            s * m[0][j] % q * det_mod(&minor, q) % q
        })
        .sum::<i64>()
        % q
}

pub fn count_gl(l: usize, q: i64) -> i64 {
    vectors(q, l * l).iter().filter(|v| det_mod(&v.chunks(l).map(<[i64]>::to_vec).collect::<Vec<_>>(), q) != 0).count()
        as i64
}

/// Number of `d`-dimensional subspaces of `F_q^n`, as distinct spans.
pub fn count_subspaces(d: usize, n: usize, q: i64) -> i64 {
    let vs = vectors(q, n);
    let mut spans: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut pick = vec![0usize; d];
    loop {
        let mut span: BTreeSet<Vec<i64>> = BTreeSet::new();
        for coeffs in vectors(q, d) {
            let v: Vec<i64> =
                (0..n).map(|k| (0..d).map(|i| coeffs[i] * vs[pick[i]][k]).sum::<i64>().rem_euclid(q)).collect();
            span.insert(v);
        }
        if span.len() as i64 == q.pow(d as u32) {
            spans.insert(span.into_iter().collect());
        }
        let mut i = 0;
        loop {
            if i == d {
                return spans.len() as i64;
            }
            pick[i] += 1;
            if pick[i] < vs.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

pub fn reduce(c: &Rational, q: i64) -> i64 {
    assert!(c.denom() == &BigInt::from(1), "integral forms only");
    let n: i64 = c.numer().try_into().unwrap();
    n.rem_euclid(q)
}

/// Points of `ℙ^{n-1}(F_q)` on the union of the hyperplanes.
pub fn count_union(a: &Arrangement, q: i64) -> i64 {
    let forms: Vec<Vec<i64>> = a.hyperplanes().iter().map(|h| h.iter().map(|c| reduce(c, q)).collect()).collect();
    let hits = vectors(q, a.ambient())
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .filter(|v| forms.iter().any(|f| f.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() % q == 0))
        .count() as i64;
    hits / (q - 1)
}

//! Multivariate gcd over Q by recursive primitive polynomial remainder sequences.

use super::poly::MultiPoly;

pub(crate) fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let n = a.vars().len();
    let v = (0..n)
        .find(|&i| a.degree_in(i).unwrap_or(0) > 0 || b.degree_in(i).unwrap_or(0) > 0)
        .expect("non-constant polynomial has a variable");
    let ua = split(a, v);
    let ub = split(b, v);
    if ua.len() == 1 {
        return gcd(a, &content(&ub));
    }
    if ub.len() == 1 {
        return gcd(&content(&ua), b);
    }
    let ca = content(&ua);
    let cb = content(&ub);
    let g = gcd(&ca, &cb);
    let mut p = primitive(ua, &ca);
    let mut q = primitive(ub, &cb);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            q = vec![MultiPoly::one(a.vars())];
            break;
        }
        let c = content(&r);
        p = q;
        q = primitive(r, &c);
    }
    (&g * &join(&q, v, a)).monic()
}

/// Coefficients of `p` as a polynomial in `x_v`, lowest degree first.
fn split(p: &MultiPoly, v: usize) -> Vec<MultiPoly> {
    let d = p.degree_in(v).unwrap_or(0) as usize;
    let mut parts: Vec<Vec<(Vec<u32>, _)>> = vec![Vec::new(); d + 1];
    for (e, c) in p.terms() {
        let mut e2 = e.clone();
        let k = e2[v] as usize;
        e2[v] = 0;
        parts[k].push((e2, c.clone()));
    }
    parts
        .into_iter()
        .map(|t| MultiPoly::from_terms(p.vars(), t).expect("same context"))
        .collect()
}

fn join(coeffs: &[MultiPoly], v: usize, like: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(like.vars());
    for (k, c) in coeffs.iter().enumerate() {
        let mut e = vec![0; like.vars().len()];
        e[v] = k as u32;
        let xk = MultiPoly::monomial(like.vars(), e, num_traits::One::one());
        out = &out + &(&xk * c);
    }
    out
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g: Option<MultiPoly> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic(),
            Some(g) => gcd(&g, c),
        });
    }
    g.expect("content of a nonzero polynomial")
}

fn primitive(coeffs: Vec<MultiPoly>, c: &MultiPoly) -> Vec<MultiPoly> {
    coeffs
        .into_iter()
        .map(|x| x.div_exact(c).expect("content divides every coefficient"))
        .collect()
}

fn trim(r: &mut Vec<MultiPoly>) {
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
}

/// Pseudo-remainder of `p` by `q` (as univariate polynomials); empty when zero.
fn prem(p: &[MultiPoly], q: &[MultiPoly]) -> Vec<MultiPoly> {
    let dq = q.len() - 1;
    let lc = &q[dq];
    let mut r = p.to_vec();
    trim(&mut r);
    while r.len() > dq {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (j, qj) in q.iter().enumerate() {
            let k = j + dr - dq;
            r[k] = &r[k] - &(&lr * qj);
        }
        trim(&mut r);
    }
    r
}

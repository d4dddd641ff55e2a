//! Dense linear algebra over Q and determinants of polynomial matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{MultiPoly, Rational, Vars};

/// Row-reduced basis that grows one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue (zero iff dependent).
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v`; returns `false` (and leaves the basis alone) when `v` is dependent.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[p];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r);
    }
    b.rank()
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    d
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// rows, memoised on the set of remaining columns.
pub fn poly_det(m: &[Vec<MultiPoly>], vars: &Vars) -> MultiPoly {
    let n = m.len();
    assert!(n < 32, "matrix too large for subset memoisation");
    let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
    fn go(m: &[Vec<MultiPoly>], vars: &Vars, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        if cols == 0 {
            return MultiPoly::one(vars);
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = m.len() - cols.count_ones() as usize;
        let mut acc = MultiPoly::zero(vars);
        let mut pos = 0;
        for j in 0..m.len() {
            if cols & (1 << j) == 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let minor = go(m, vars, cols & !(1 << j), memo);
                let t = &m[row][j] * &minor;
                acc = if pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            pos += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    go(m, vars, if n == 0 { 0 } else { (1u32 << n) - 1 }, &mut memo)
}

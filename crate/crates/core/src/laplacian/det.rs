use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::polyring::{div_exact, Monomial, Polynomial};

use super::PolyMatrix;

/// Matrices up to this size use cofactor expansion.
pub const COFACTOR_MAX: usize = 4;

/// Matrices up to this size use the memoized minor expansion; larger ones
/// fall back to Bareiss elimination.
pub const MINOR_DP_MAX: usize = 22;

/// Exact determinant over the Laurent polynomial ring.
///
/// Rows carrying negative exponents are first multiplied by a monomial that
/// clears them; the product of those monomials is divided back out at the
/// end. Sizes up to [`COFACTOR_MAX`] use cofactor expansion, up to
/// [`MINOR_DP_MAX`] the division-free memoized minor expansion, and larger
/// ones fraction-free (Bareiss) elimination.
pub fn determinant(m: &PolyMatrix) -> Polynomial {
    let (shifted, shift) = clear_negative_exponents(m);
    let d = if shifted.size() <= COFACTOR_MAX {
        determinant_cofactor(&shifted)
    } else if shifted.size() <= MINOR_DP_MAX {
        determinant_minors(&shifted)
    } else {
        determinant_bareiss(&shifted)
    };
    d.mul_monomial(&shift)
}

fn clear_negative_exponents(m: &PolyMatrix) -> (PolyMatrix, Monomial) {
    let mut out = m.clone();
    let mut total = Monomial::one();
    for i in 0..m.size() {
        let row_min = m
            .row(i)
            .iter()
            .filter(|p| !p.is_zero())
            .fold(Monomial::one(), |acc, p| {
                acc.gcd_exponents(&p.min_exponents())
            });
        if row_min.is_one() {
            continue;
        }
        let inv = row_min.inverse();
        for j in 0..m.size() {
            let p = out.get(i, j).mul_monomial(&inv);
            out.set(i, j, p);
        }
        total = total.mul(&row_min);
    }
    (out, total)
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor(m: &PolyMatrix) -> Polynomial {
    let n = m.size();
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(m, 0, &cols)
}

fn cofactor_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Polynomial {
    match cols.len() {
        0 => return Polynomial::one(),
        1 => return m.get(row, cols[0]).clone(),
        _ => {}
    }
    let mut acc = Polynomial::zero();
    for (k, &c) in cols.iter().enumerate() {
        let a = m.get(row, c);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_rec(m, row + 1, &rest);
        let term = a * &minor;
        if k % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// Division-free expansion by minors: after processing the first `k` rows,
/// the table holds the `k×k` minor on those rows for every `k`-subset of
/// columns. Each step extends a minor by one row along its last row.
///
/// Costs `O(n·2^n)` polynomial products but never divides, which keeps
/// intermediate polynomials as small as the minors themselves.
pub fn determinant_minors(m: &PolyMatrix) -> Polynomial {
    let n = m.size();
    assert!(
        n < usize::BITS as usize,
        "matrix too large for subset expansion"
    );
    let mut level: HashMap<usize, Polynomial> = HashMap::from([(0usize, Polynomial::one())]);
    for k in 0..n {
        let row = m.row(k);
        let mut next: HashMap<usize, Polynomial> = HashMap::new();
        for (&mask, minor) in &level {
            if minor.is_zero() {
                continue;
            }
            for (c, a) in row.iter().enumerate() {
                if mask >> c & 1 == 1 || a.is_zero() {
                    continue;
                }
                // position of c among the columns of mask ∪ {c}
                let before = (mask & ((1usize << c) - 1)).count_ones() as usize;
                let term = a * minor;
                let slot = next.entry(mask | 1 << c).or_insert_with(Polynomial::zero);
                if (k + before).is_multiple_of(2) {
                    *slot += &term;
                } else {
                    *slot -= &term;
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        level = next;
    }
    level
        .remove(&((1usize << n) - 1))
        .unwrap_or_else(Polynomial::zero)
}

/// Fraction-free Gaussian elimination. Every interior division is exact
/// over an integral domain; a failure is a bug and panics.
///
/// Pivots are taken in column order; a zero pivot is replaced by the first
/// lower row with a nonzero entry in that column, flipping the sign.
pub fn determinant_bareiss(m: &PolyMatrix) -> Polynomial {
    let n = m.size();
    if n == 0 {
        return Polynomial::one();
    }
    let mut a = m.rows();
    let mut prev = Polynomial::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Polynomial::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        let prev_ref = &prev;
        tail.par_iter_mut().for_each(|row| {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut num = pivot * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    num -= &(&lead * &pivot_row[j]);
                }
                row[j] = if prev_ref.is_one() {
                    num
                } else {
                    div_exact(&num, prev_ref)
                        .unwrap_or_else(|e| panic!("inexact Bareiss division at step {k}: {e}"))
                };
            }
        });
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Integer determinant, for counting.
pub fn determinant_int(rows: &[Vec<BigInt>]) -> BigInt {
    let m = PolyMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().cloned().map(Polynomial::constant).collect())
            .collect(),
    );
    determinant_bareiss(&m)
        .as_constant()
        .expect("constant matrix has a constant determinant")
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Monomial, PolyError, Polynomial};

/// Exact quotient `n / d`.
///
/// When both operands are ordinary polynomials the quotient must be an
/// ordinary polynomial too. If either operand carries a negative exponent,
/// division happens in the Laurent ring: each operand is shifted by its
/// minimal exponent vector, divided as an ordinary polynomial, and the
/// quotient shifted back.
///
/// The ordinary division is single-divisor multivariate division under
/// graded-lex order; a nonzero remainder means `d` does not divide `n`.
pub fn div_exact(n: &Polynomial, d: &Polynomial) -> Result<Polynomial, PolyError> {
    if d.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    if n.is_zero() {
        return Ok(Polynomial::zero());
    }
    if n.is_ordinary() && d.is_ordinary() {
        return divide_ordinary(n, d);
    }
    let (sn, sd) = (n.min_exponents(), d.min_exponents());
    let n0 = n.mul_monomial(&sn.inverse());
    let d0 = d.mul_monomial(&sd.inverse());
    match divide_ordinary(&n0, &d0) {
        Ok(q) => Ok(q.mul_monomial(&sn.div(&sd))),
        Err(PolyError::NotDivisible { remainder }) => Err(PolyError::NotDivisible {
            remainder: Box::new(remainder.mul_monomial(&sn)),
        }),
        Err(e) => Err(e),
    }
}

/// Divides by a nonzero integer constant.
pub fn div_exact_int(n: &Polynomial, d: &BigInt) -> Result<Polynomial, PolyError> {
    div_exact(n, &Polynomial::constant(d.clone()))
}

/// True when `d` divides `n` exactly.
pub fn divides(d: &Polynomial, n: &Polynomial) -> bool {
    div_exact(n, d).is_ok()
}

fn divide_ordinary(n: &Polynomial, d: &Polynomial) -> Result<Polynomial, PolyError> {
    let (lead_m, lead_c) = d.leading_term().ok_or(PolyError::DivisionByZero)?;
    let tail = &d.terms()[1..];

    if tail.is_empty() {
        // monomial divisor: termwise, order preserved
        let mut out = Vec::with_capacity(n.num_terms());
        let mut rem = Vec::new();
        for (m, c) in n.terms() {
            let (qc, rc) = c.div_rem(lead_c);
            if lead_m.divides(m) && rc.is_zero() {
                out.push((m.div(lead_m), qc));
            } else {
                rem.push((m.clone(), c.clone()));
            }
        }
        if !rem.is_empty() {
            return Err(PolyError::NotDivisible {
                remainder: Box::new(Polynomial::from_terms(rem)),
            });
        }
        return Ok(Polynomial::from_sorted_unchecked(out));
    }

    let mut work: BTreeMap<Monomial, BigInt> = n.terms().iter().cloned().collect();
    let mut quotient = Vec::new();
    let mut remainder = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let (qc, rc) = c.div_rem(lead_c);
        if !lead_m.divides(&m) || !rc.is_zero() {
            remainder.push((m, c));
            continue;
        }
        let qm = m.div(lead_m);
        for (tm, tc) in tail {
            let key = tm.mul(&qm);
            let delta = tc * &qc;
            match work.get_mut(&key) {
                Some(v) => {
                    *v -= delta;
                    if v.is_zero() {
                        work.remove(&key);
                    }
                }
                None => {
                    work.insert(key, -delta);
                }
            }
        }
        quotient.push((qm, qc));
    }
    if !remainder.is_empty() {
        return Err(PolyError::NotDivisible {
            remainder: Box::new(Polynomial::from_sorted_unchecked(remainder)),
        });
    }
    Ok(Polynomial::from_sorted_unchecked(quotient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Variable;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::x(i))
    }

    fn xinv(i: u32) -> Polynomial {
        Monomial::var_pow(Variable::x(i), -1).into()
    }

    #[test]
    fn known_factorization() {
        let n = &x(1).pow(2) - &x(2).pow(2);
        assert_eq!(div_exact(&n, &(&x(1) + &x(2))).unwrap(), &x(1) - &x(2));
    }

    #[test]
    fn laurent_monomial_quotient() {
        let f = &xinv(1) + &x(1);
        let n = &Polynomial::var(Variable::q(1)) * &f;
        assert_eq!(div_exact(&n, &f).unwrap(), Polynomial::var(Variable::q(1)));
    }

    #[test]
    fn remainder_is_reported() {
        let err = div_exact(&(&x(1) + &x(2)), &x(1)).unwrap_err();
        match err {
            PolyError::NotDivisible { remainder } => assert_eq!(*remainder, x(2)),
            e => panic!("unexpected {e:?}"),
        }
        // non-monomial divisor
        let n = &(&x(1) * &x(2)) + &Polynomial::one();
        assert!(matches!(
            div_exact(&n, &(&x(1) + &x(2))),
            Err(PolyError::NotDivisible { .. })
        ));
    }

    #[test]
    fn zero_divisor() {
        assert!(matches!(
            div_exact(&x(1), &Polynomial::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn integer_division_checks_coefficients() {
        let p = &x(1).scale(6) + &Polynomial::constant(4);
        assert_eq!(
            div_exact_int(&p, &BigInt::from(2)).unwrap(),
            &x(1).scale(3) + &Polynomial::constant(2)
        );
        assert!(div_exact_int(&p, &BigInt::from(4)).is_err());
    }

    #[test]
    fn laurent_quotient_with_negative_exponents() {
        // (x1^-1 + x2) * (x1 + x1^-2 x2) divided back
        let a = &xinv(1) + &x(2);
        let b = &x(1) + &(&xinv(1).pow(2) * &x(2));
        let n = &a * &b;
        assert_eq!(div_exact(&n, &b).unwrap(), a);
        assert_eq!(div_exact(&n, &a).unwrap(), b);
    }
}

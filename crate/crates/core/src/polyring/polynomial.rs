use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{Monomial, PolyError, Variable};

/// Products with at least this many term pairs are split across threads.
const PAR_MUL_PAIRS: usize = 1 << 16;

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: Variable) -> Self {
        Self::term(Monomial::var(v), 1)
    }

    pub fn term<C: Into<BigInt>>(m: Monomial, c: C) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
    }

    /// Wraps terms already sorted descending with distinct monomials.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_default()
    }

    /// Componentwise minimum exponent over all terms, a term lacking a
    /// variable counting as exponent 0. Multiplying by its inverse yields an
    /// ordinary polynomial with no monomial content.
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, (m, _)| acc.gcd_exponents(m))
    }

    pub fn is_ordinary(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_ordinary())
    }

    /// Variables that occur with nonzero exponent, in variable order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.exponents().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplication by a monomial preserves the term order
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), d * &c))
                .collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the ring map sending each bound variable to its binding.
    ///
    /// A variable appearing with a negative exponent must be bound to a
    /// unit, i.e. a single monomial with coefficient `±1`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<Variable, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let mut powers: HashMap<(Variable, i32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = Polynomial::constant(c.clone());
            for &(v, e) in m.exponents() {
                let Some(b) = bindings.get(&v) else {
                    kept.push((v, e));
                    continue;
                };
                let power = match powers.entry((v, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(slot) => slot.insert(if e >= 0 {
                        b.pow(e as u32)
                    } else {
                        b.inverse_unit()
                            .ok_or(PolyError::NonInvertibleSubstitution { variable: v })?
                            .pow(e.unsigned_abs())
                    }),
                };
                image = &image * power;
            }
            let shift = Monomial::from_exponents(kept);
            for (t, d) in image.terms {
                *acc.entry(t.mul(&shift)).or_default() += d;
            }
        }
        Ok(Self::from_map(acc))
    }

    /// Inverse in the Laurent ring, defined only for `±monomial`.
    pub fn inverse_unit(&self) -> Option<Polynomial> {
        let (m, c) = self.as_term()?;
        (c.abs().is_one()).then(|| Polynomial::term(m.inverse(), c.clone()))
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Evaluates at the given integer point; unbound variables are set to 1.
    /// Negative exponents require the bound value to be `±1`.
    pub fn eval_at(&self, point: &BTreeMap<Variable, BigInt>) -> Result<BigInt, PolyError> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.exponents() {
                let Some(x) = point.get(&v) else { continue };
                if e < 0 && !x.abs().is_one() {
                    return Err(PolyError::NonInvertibleSubstitution { variable: v });
                }
                t *= num_traits::pow(x.clone(), e.unsigned_abs() as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn is_nonneg(&self) -> bool {
        self.negative_witness().is_none()
    }

    /// First term (in canonical order) with a negative coefficient.
    pub fn negative_witness(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms
            .iter()
            .find(|(_, c)| c.is_negative())
            .map(|(m, c)| (m, c))
    }

    pub fn min_coefficient(&self) -> Option<&BigInt> {
        self.terms.iter().map(|(_, c)| c).min()
    }

    fn add_signed(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| {
            let c = if negate { -c } else { c.clone() };
            (m.clone(), c)
        }));
        Polynomial { terms: out }
    }

    fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = if self.terms.len() >= other.terms.len() {
            (&self.terms, &other.terms)
        } else {
            (&other.terms, &self.terms)
        };
        if b.is_empty() {
            return Polynomial::zero();
        }
        if b.len() == 1 {
            let (m, c) = &b[0];
            return Polynomial {
                terms: a.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
            };
        }
        if a.len() * b.len() < PAR_MUL_PAIRS {
            return Self::from_map(product_map(a, b));
        }
        let chunk = a
            .len()
            .div_ceil(rayon::current_num_threads().max(1) * 4)
            .max(1);
        let merged = a.par_chunks(chunk).map(|part| product_map(part, b)).reduce(
            HashMap::new,
            |mut x, y| {
                if x.len() < y.len() {
                    return merge_into(y, x);
                }
                x = merge_into(x, y);
                x
            },
        );
        Self::from_map(merged)
    }
}

fn product_map(a: &[(Monomial, BigInt)], b: &[(Monomial, BigInt)]) -> HashMap<Monomial, BigInt> {
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.mul(mb);
            match acc.get_mut(&m) {
                Some(c) => *c += ca * cb,
                None => {
                    acc.insert(m, ca * cb);
                }
            }
        }
    }
    acc
}

fn merge_into(
    mut into: HashMap<Monomial, BigInt>,
    from: HashMap<Monomial, BigInt>,
) -> HashMap<Monomial, BigInt> {
    for (m, c) in from {
        *into.entry(m).or_default() += c;
    }
    into
}

impl From<Variable> for Polynomial {
    fn from(v: Variable) -> Self {
        Polynomial::var(v)
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial::term(m, 1)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_signed(rhs, false)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.add_signed(rhs, true)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for p in iter {
            for (m, c) in p.terms {
                *acc.entry(m).or_default() += c;
            }
        }
        Self::from_map(acc)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::one(), |acc, p| &acc * &p)
    }
}

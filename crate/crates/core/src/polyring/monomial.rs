use std::cmp::Ordering;
use std::fmt;

use super::Variable;

/// A Laurent monomial: sparse exponent vector, sorted by variable, with no
/// zero exponents stored. The empty monomial is `1`.
///
/// `Ord` is graded lexicographic order: total degree first, then the
/// exponent of the smallest variable in the fixed variable order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Variable, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Variable, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// collecting repeated variables.
    pub fn from_exponents<I: IntoIterator<Item = (Variable, i32)>>(pairs: I) -> Self {
        let mut exps: Vec<(Variable, i32)> = pairs.into_iter().collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Variable, i32)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial { exps: out }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(Variable, i32)] {
        &self.exps
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }

    /// True when no exponent is negative.
    pub fn is_ordinary(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, 1)
    }

    /// Exact quotient in the Laurent group; never fails.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.merge(other, -1)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// Divisibility among ordinary monomials: every exponent of `self` is at
    /// most the matching exponent of `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut it = other.exps.iter().peekable();
        for &(v, e) in &self.exps {
            while let Some(&&(w, _)) = it.peek() {
                if w < v {
                    it.next();
                } else {
                    break;
                }
            }
            let f = match it.peek() {
                Some(&&(w, f)) if w == v => f,
                _ => 0,
            };
            if e > f {
                return false;
            }
        }
        true
    }

    /// Componentwise minimum, treating absent variables as exponent zero.
    pub fn gcd_exponents(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, e) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    (va, ea.min(eb))
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    i += 1;
                    (va, ea.min(0))
                }
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea.min(0))
                }
                (_, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, eb.min(0))
                }
                (None, None) => unreachable!(),
            };
            if e != 0 {
                out.push((v, e));
            }
        }
        Monomial { exps: out }
    }

    fn merge(&self, other: &Monomial, sign: i32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, sign * eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ea + sign * eb;
                    if e != 0 {
                        out.push((va, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(v, e)| (v, sign * e)));
        Monomial { exps: out }
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            let ord = match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    ea.cmp(&eb)
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    i += 1;
                    ea.cmp(&0)
                }
                (Some(&(_, ea)), None) => {
                    i += 1;
                    ea.cmp(&0)
                }
                (_, Some(&(_, eb))) => {
                    j += 1;
                    0.cmp(&eb)
                }
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Variable> for Monomial {
    fn from(v: Variable) -> Self {
        Monomial::var(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Canonical text and JSON encodings of [`Polynomial`].
//!
//! Text: terms in descending graded-lex order joined by ` + ` / ` - `, each
//! term `C*v^e*...` with the coefficient omitted when it is 1 and the
//! exponent omitted when it is 1, e.g. `2*q1*q2^2*x(1,2)^-1 - x3`. The zero
//! polynomial is `0`.
//!
//! JSON: a list of `{"coeff": "<decimal>", "exps": [["q1", 1], ...]}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, PolyError, Polynomial, Variable};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn polynomial(mut self) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
        }
        loop {
            self.skip_ws();
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((m, c));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected `+` or `-`"),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), PolyError> {
        let mut coeff = BigInt::one();
        let mut exps = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b) if b.is_ascii_digit() && first => coeff = self.integer()?,
                Some(b'q' | b'x' | b'y' | b'e') => exps.push(self.factor()?),
                _ => return self.err("expected a coefficient or variable"),
            }
            first = false;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(exps), coeff))
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| self.err("bad integer"))
    }

    fn factor(&mut self) -> Result<(Variable, i32), PolyError> {
        let start = self.pos;
        self.pos += 1;
        if self.peek() == Some(b'(') {
            while self.peek().is_some_and(|b| b != b')') {
                self.pos += 1;
            }
            if self.peek() != Some(b')') {
                return self.err("unclosed `(`");
            }
            self.pos += 1;
        } else {
            while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let v: Variable = name.parse().map_err(|_| PolyError::Parse {
            position: start,
            message: format!("invalid variable `{name}`"),
        })?;
        let mut e = 1i32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = self.peek() == Some(b'-');
            if neg {
                self.pos += 1;
            }
            let k = self.integer()?;
            e = i32::try_from(k).or_else(|_| self.err("exponent out of range"))?;
            if neg {
                e = -e;
            }
        }
        Ok((v, e))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exps: Vec<(String, i32)>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms()
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m
                    .exponents()
                    .iter()
                    .map(|&(v, e)| (v.to_string(), e))
                    .collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(D::Error::custom)?;
            let mut exps = Vec::with_capacity(t.exps.len());
            for (name, e) in t.exps {
                exps.push((name.parse::<Variable>().map_err(D::Error::custom)?, e));
            }
            out.push((Monomial::from_exponents(exps), c));
        }
        Ok(Polynomial::from_terms(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text() {
        let p: Polynomial = "2*q1*q2^2*x(1,2)^-1".parse().unwrap();
        assert_eq!(p.to_string(), "2*q1*q2^2*x(1,2)^-1");
        let p: Polynomial = "x1 - x2 + 3 - x1".parse().unwrap();
        assert_eq!(p.to_string(), "-x2 + 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
        let p: Polynomial = "x1*x2^2*x3 + x1^2*x2*x3 + x1*x2*x3^2".parse().unwrap();
        assert_eq!(p.to_string(), "x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "x1 + * x2".parse::<Polynomial>() {
            Err(PolyError::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!("x1 x2".parse::<Polynomial>().is_err());
        assert!("w3".parse::<Polynomial>().is_err());
    }

    #[test]
    fn json_shape() {
        let p: Polynomial = "-3*q1*x2^-1 + 1".parse().unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"[{"coeff":"-3","exps":[["q1",1],["x2",-1]]},{"coeff":"1","exps":[]}]"#
        );
        let back: Polynomial = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}

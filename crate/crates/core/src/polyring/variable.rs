use std::fmt;
use std::str::FromStr;

use super::PolyError;

/// Family tag of a [`Variable`]. The declaration order is the variable order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Direction variables `q_i`.
    Q = 0,
    /// Single-index vertex variables `x_i`.
    X = 1,
    /// Out-degree variables `y_i`.
    Y = 2,
    /// Decoupled variables `x^(i)_j`, one set per product direction `i`.
    XD = 3,
    /// Edge variables `e_{u,v}` with `u <= v`.
    E = 4,
}

const INDEX_BITS: u32 = 12;
const INDEX_MASK: u32 = (1 << INDEX_BITS) - 1;

/// A ring variable, packed so that the derived integer order is the fixed
/// variable order: family first, then indices lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    /// Largest index that fits in the packed representation.
    pub const MAX_INDEX: u32 = INDEX_MASK;

    fn pack(family: Family, i: u32, j: u32) -> Self {
        assert!(
            i <= INDEX_MASK && j <= INDEX_MASK,
            "variable index out of range: ({i}, {j})"
        );
        Variable(((family as u32) << (2 * INDEX_BITS)) | (i << INDEX_BITS) | j)
    }

    pub fn q(i: u32) -> Self {
        Self::pack(Family::Q, i, 0)
    }

    pub fn x(i: u32) -> Self {
        Self::pack(Family::X, i, 0)
    }

    pub fn y(i: u32) -> Self {
        Self::pack(Family::Y, i, 0)
    }

    /// `x^(direction)_value`, rendered `x(direction,value)`.
    pub fn xd(direction: u32, value: u32) -> Self {
        Self::pack(Family::XD, direction, value)
    }

    /// Edge variable; endpoints are stored smaller first so `e(u,v) == e(v,u)`.
    pub fn e(u: u32, v: u32) -> Self {
        Self::pack(Family::E, u.min(v), u.max(v))
    }

    pub fn family(self) -> Family {
        match self.0 >> (2 * INDEX_BITS) {
            0 => Family::Q,
            1 => Family::X,
            2 => Family::Y,
            3 => Family::XD,
            _ => Family::E,
        }
    }

    /// First index (the only one for single-index families).
    pub fn index(self) -> u32 {
        (self.0 >> INDEX_BITS) & INDEX_MASK
    }

    /// Second index; zero for single-index families.
    pub fn second_index(self) -> u32 {
        self.0 & INDEX_MASK
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = (self.index(), self.second_index());
        match self.family() {
            Family::Q => write!(f, "q{i}"),
            Family::X => write!(f, "x{i}"),
            Family::Y => write!(f, "y{i}"),
            Family::XD => write!(f, "x({i},{j})"),
            Family::E => write!(f, "e({i},{j})"),
        }
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Variable {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolyError::Parse {
            position: 0,
            message: format!("invalid variable `{s}`"),
        };
        let index = |t: &str| -> Result<u32, PolyError> {
            let t = t.trim();
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let v: u32 = t.parse().map_err(|_| bad())?;
            if v > Variable::MAX_INDEX {
                return Err(bad());
            }
            Ok(v)
        };
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            let (a, b) = (index(a)?, index(b)?);
            return match head {
                'x' => Ok(Variable::xd(a, b)),
                'e' => Ok(Variable::e(a, b)),
                _ => Err(bad()),
            };
        }
        let i = index(rest)?;
        match head {
            'q' => Ok(Variable::q(i)),
            'x' => Ok(Variable::x(i)),
            'y' => Ok(Variable::y(i)),
            _ => Err(bad()),
        }
    }
}

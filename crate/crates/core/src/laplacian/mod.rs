//! Weighted Laplacians under the edge-weight substitutions, their reductions
//! and exact determinants.

mod det;
mod matrix;

pub use det::{
    determinant, determinant_bareiss, determinant_cofactor, determinant_int, determinant_minors,
    COFACTOR_MAX, MINOR_DP_MAX,
};
pub use matrix::PolyMatrix;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graphs::{Edge, Graph};
use crate::polyring::{Monomial, Polynomial, Variable};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LaplacianError {
    #[error("weight scheme {scheme} does not apply to this graph ({reason})")]
    SchemeMismatch {
        scheme: WeightScheme,
        reason: &'static str,
    },
    #[error("index ({row}, {col}) out of range for a {size}x{size} matrix")]
    IndexOutOfRange { row: usize, col: usize, size: usize },
}

/// Edge-weight substitution applied to the generic Laplacian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightScheme {
    /// `e(u,v)` symbolic, vertices numbered from 1.
    Generic,
    /// `e_ij = x_i x_j`.
    CayleyPrufer,
    /// `e = q_i` for an edge in direction `i`.
    Direction,
    /// `e_kl = q_i · Π_t x(t,k_t) · Π_t x(t,l_t)` for an edge in direction `i`.
    Decoupled,
    /// `e_{S,S△i} = q_i x_S x_{S△i} / x_[n]` on `Q_n`.
    CubeLaurent,
    /// `e_ij = x_min(i,j) · y_max(i,j)`.
    ThresholdInOut,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 6] = [
        WeightScheme::Generic,
        WeightScheme::CayleyPrufer,
        WeightScheme::Direction,
        WeightScheme::Decoupled,
        WeightScheme::CubeLaurent,
        WeightScheme::ThresholdInOut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Generic => "generic",
            WeightScheme::CayleyPrufer => "cayley-prufer",
            WeightScheme::Direction => "direction",
            WeightScheme::Decoupled => "decoupled",
            WeightScheme::CubeLaurent => "cube",
            WeightScheme::ThresholdInOut => "inout",
        }
    }

    pub fn check(self, g: &Graph) -> Result<(), LaplacianError> {
        let fail = |reason| {
            Err(LaplacianError::SchemeMismatch {
                scheme: self,
                reason,
            })
        };
        match self {
            WeightScheme::Generic | WeightScheme::CayleyPrufer => Ok(()),
            WeightScheme::Direction | WeightScheme::Decoupled if g.factor_sizes().is_none() => {
                fail("requires a product of complete graphs")
            }
            WeightScheme::CubeLaurent if g.cube_dimension().is_none() => {
                fail("requires a hypercube")
            }
            WeightScheme::ThresholdInOut if !g.is_plain() => {
                fail("requires integer-labelled vertices")
            }
            _ => Ok(()),
        }
    }

    /// Weight of one copy of `e`. The scheme must apply to `g`.
    pub fn edge_weight(self, g: &Graph, e: &Edge) -> Polynomial {
        let (u, v) = (e.u as u32 + 1, e.v as u32 + 1);
        let dir = e.direction as u32;
        match self {
            WeightScheme::Generic => Polynomial::var(Variable::e(u, v)),
            WeightScheme::CayleyPrufer => {
                Monomial::from_exponents([(Variable::x(u), 1), (Variable::x(v), 1)]).into()
            }
            WeightScheme::Direction => Polynomial::var(Variable::q(dir)),
            WeightScheme::Decoupled => {
                let a = g.coordinates(e.u).expect("product coordinates");
                let b = g.coordinates(e.v).expect("product coordinates");
                let vars = a
                    .iter()
                    .enumerate()
                    .chain(b.iter().enumerate())
                    .map(|(t, &k)| (Variable::xd(t as u32 + 1, k as u32), 1));
                Monomial::from_exponents(std::iter::once((Variable::q(dir), 1)).chain(vars)).into()
            }
            WeightScheme::CubeLaurent => {
                let n = g.cube_dimension().expect("hypercube");
                let s = g.cube_subset(e.u).expect("subset label");
                let r = g.cube_subset(e.v).expect("subset label");
                let full = (1u32 << n) - 1;
                let m = subset_monomial(s)
                    .mul(&subset_monomial(r))
                    .div(&subset_monomial(full))
                    .mul(&Monomial::var(Variable::q(dir)));
                m.into()
            }
            WeightScheme::ThresholdInOut => {
                Monomial::from_exponents([(Variable::x(u.min(v)), 1), (Variable::y(u.max(v)), 1)])
                    .into()
            }
        }
    }
}

/// `x_S = Π_{i∈S} x_i` for a subset bitmask.
pub fn subset_monomial(mask: u32) -> Monomial {
    Monomial::from_exponents(
        (0..32)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (Variable::x(b + 1), 1)),
    )
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WeightScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WeightScheme::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| format!("unknown weight scheme `{s}`"))
    }
}

/// Laplacian with an arbitrary per-copy edge weight: `L_ii = Σ_k e_ik` and
/// `L_ij = -e_ij`, parallel copies adding up.
pub fn laplacian_with<F: Fn(&Edge) -> Polynomial>(g: &Graph, weight: F) -> PolyMatrix {
    let n = g.n_vertices();
    let mut l = PolyMatrix::zeros(n);
    for e in g.edges() {
        let w = weight(e).scale(e.multiplicity);
        *l.get_mut(e.u, e.u) += &w;
        *l.get_mut(e.v, e.v) += &w;
        *l.get_mut(e.u, e.v) -= &w;
        *l.get_mut(e.v, e.u) -= &w;
    }
    l
}

pub fn weighted_laplacian(g: &Graph, w: WeightScheme) -> Result<PolyMatrix, LaplacianError> {
    w.check(g)?;
    Ok(laplacian_with(g, |e| w.edge_weight(g, e)))
}

/// `(-1)^(row+col) det L̂` with `L̂` the Laplacian minor at `(row, col)`.
/// Disconnected graphs have no spanning trees and return 0.
pub fn tree_enumerator_det_at(
    g: &Graph,
    w: WeightScheme,
    row: usize,
    col: usize,
) -> Result<Polynomial, LaplacianError> {
    let l = weighted_laplacian(g, w)?;
    let (minor, sign) = l.reduce(row, col)?;
    if !g.is_connected() {
        return Ok(Polynomial::zero());
    }
    let d = determinant(&minor);
    Ok(if sign < 0 { -d } else { d })
}

/// Default reduction: last row and column.
pub fn tree_enumerator_det(g: &Graph, w: WeightScheme) -> Result<Polynomial, LaplacianError> {
    let last = g.n_vertices().saturating_sub(1);
    tree_enumerator_det_at(g, w, last, last)
}

/// Number of spanning trees (parallel edges distinguished).
pub fn tree_count(g: &Graph) -> BigInt {
    if !g.is_connected() {
        return BigInt::from(0);
    }
    let l = laplacian_with(g, |_| Polynomial::one());
    let n = g.n_vertices();
    let rows: Vec<Vec<BigInt>> = (0..n - 1)
        .map(|i| {
            (0..n - 1)
                .map(|j| l.get(i, j).as_constant().expect("constant entry"))
                .collect()
        })
        .collect();
    determinant_int(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, hypercube, threshold_graph, Partition};

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::x(i))
    }

    #[test]
    fn cayley_prufer_entries() {
        let g = complete_graph(3).unwrap();
        let l = weighted_laplacian(&g, WeightScheme::CayleyPrufer).unwrap();
        assert_eq!(l.get(0, 0), &(&(&x(1) * &x(2)) + &(&x(1) * &x(3))));
        let (m, sign) = l.reduce(2, 2).unwrap();
        assert_eq!(sign, 1);
        let x12 = &x(1) * &x(2);
        assert_eq!(
            m.rows(),
            vec![
                vec![&x12 + &(&x(1) * &x(3)), -&x12],
                vec![-&x12, &x12 + &(&x(2) * &x(3))],
            ]
        );
        let f = &(&x(1) + &x(2)) + &x(3);
        assert_eq!(determinant(&m), &(&x12 * &x(3)) * &f);
    }

    #[test]
    fn reduce_sign_and_bounds() {
        let l = PolyMatrix::identity(3);
        assert_eq!(l.reduce(0, 1).unwrap().1, -1);
        assert!(matches!(
            l.reduce(3, 0),
            Err(LaplacianError::IndexOutOfRange { .. })
        ));
        let k1 = weighted_laplacian(&complete_graph(1).unwrap(), WeightScheme::Generic).unwrap();
        let (m, _) = k1.reduce(0, 0).unwrap();
        assert_eq!(m.size(), 0);
        assert!(determinant(&m).is_one());
    }

    #[test]
    fn cube_entry_is_laurent() {
        let q2 = hypercube(2).unwrap();
        let l = weighted_laplacian(&q2, WeightScheme::CubeLaurent).unwrap();
        // vertex 0 is ∅; {1} has index 2 (coordinate 1 is the slow one)
        assert_eq!(q2.cube_subset(2), Some(1));
        let expected = Polynomial::term(
            Monomial::from_exponents([(Variable::q(1), 1), (Variable::x(2), -1)]),
            -1,
        );
        assert_eq!(l.get(0, 2), &expected);
    }

    #[test]
    fn scheme_applicability() {
        let t = threshold_graph(&Partition::new(vec![2, 2, 2]).unwrap()).unwrap();
        let q2 = hypercube(2).unwrap();
        let k3 = complete_graph(3).unwrap();
        assert!(weighted_laplacian(&t, WeightScheme::Direction).is_err());
        assert!(weighted_laplacian(&t, WeightScheme::Decoupled).is_err());
        assert!(weighted_laplacian(&k3, WeightScheme::CubeLaurent).is_err());
        assert!(weighted_laplacian(&q2, WeightScheme::ThresholdInOut).is_err());
        assert!(weighted_laplacian(&q2, WeightScheme::Decoupled).is_ok());
        assert!(weighted_laplacian(&t, WeightScheme::ThresholdInOut).is_ok());
    }

    #[test]
    fn laplacians_are_symmetric_with_zero_rows() {
        let q2 = hypercube(2).unwrap();
        for w in WeightScheme::ALL {
            if let Ok(l) = weighted_laplacian(&q2, w) {
                assert!(l.is_symmetric(), "{w}");
                assert!(l.row_sums_vanish(), "{w}");
                assert!(determinant(&l).is_zero(), "{w}");
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(tree_count(&complete_graph(4).unwrap()), BigInt::from(16));
        assert_eq!(tree_count(&hypercube(3).unwrap()), BigInt::from(384));
        assert_eq!(tree_count(&complete_graph(1).unwrap()), BigInt::from(1));
        let t = threshold_graph(&Partition::new(vec![2, 2, 2, 0]).unwrap()).unwrap();
        assert_eq!(tree_count(&t), BigInt::from(0));
    }
}

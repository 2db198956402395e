//! Closed-form right-hand sides: the Cayley–Prüfer product, both product
//! forms for complete-graph products, Laplacian spectra of those products,
//! the factor list for the decoupled enumerator, the hypercube product, and
//! the threshold-graph products (Merris count, in/out-degree product and its
//! rewrite through `f_r` and `g_r`).

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::graphs::{threshold_graph, GraphError, Partition};
use crate::polyring::{div_exact_int, Monomial, Polynomial, Variable};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid size: {0}")]
    InvalidSize(&'static str),
    #[error("the two forms of {formula} disagree (difference {difference})")]
    FormMismatch {
        formula: &'static str,
        difference: Box<Polynomial>,
    },
    #[error("eigenvalue product is not divisible by {divisor}")]
    NotDivisible { divisor: BigInt },
    #[error("zero eigenvalue has multiplicity {0}, expected 1")]
    ZeroMultiplicity(u64),
}

fn q(i: usize) -> Polynomial {
    Polynomial::var(Variable::q(i as u32))
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(Variable::x(i as u32))
}

fn y(i: usize) -> Polynomial {
    Polynomial::var(Variable::y(i as u32))
}

fn xd(direction: usize, value: usize) -> Polynomial {
    Polynomial::var(Variable::xd(direction as u32, value as u32))
}

fn x_sum(range: std::ops::RangeInclusive<usize>) -> Polynomial {
    range.map(x).sum()
}

fn y_sum(range: std::ops::RangeInclusive<usize>) -> Polynomial {
    range.map(y).sum()
}

/// `x1···xn·(x1+···+xn)^(n-2)`.
pub fn cayley_prufer_rhs(n: usize) -> Result<Polynomial, FormulaError> {
    if n < 2 {
        return Err(FormulaError::InvalidSize("Cayley–Prüfer needs n ≥ 2"));
    }
    let vars: Polynomial = (1..=n).map(x).product();
    Ok(&vars * &x_sum(1..=n).pow(n as u32 - 2))
}

/// Splits off factors of size 1 (`K_1` is the identity for the Cartesian
/// product). Returns the kept `(direction, n_i)` pairs, directions 1-based
/// in the original list, and the number of dropped factors.
pub fn nontrivial_factors(dims: &[usize]) -> (Vec<(usize, usize)>, usize) {
    let kept: Vec<(usize, usize)> = dims
        .iter()
        .enumerate()
        .filter(|(_, &n)| n >= 2)
        .map(|(i, &n)| (i + 1, n))
        .collect();
    let dropped = dims.len() - kept.len();
    (kept, dropped)
}

fn subset_eigenvalue(
    factors: &[(usize, usize)],
    mask: usize,
    qs: &dyn Fn(usize) -> Polynomial,
) -> Polynomial {
    factors
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &(dir, n))| qs(dir).scale(n))
        .sum()
}

fn subset_multiplicity(factors: &[(usize, usize)], mask: usize) -> u64 {
    factors
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &(_, n))| n as u64 - 1)
        .product()
}

/// First product form: `(1/Π n_i)·Π_{∅≠A} (Σ_{i∈A} q_i n_i)^{Π_{i∈A}(n_i−1)}`,
/// the division done exactly after expansion.
pub fn directions_rhs_quotient_form(dims: &[usize]) -> Result<Polynomial, FormulaError> {
    let (factors, _) = nontrivial_factors(dims);
    let mut acc = Polynomial::one();
    for mask in 1..1usize << factors.len() {
        let base = subset_eigenvalue(&factors, mask, &q);
        acc = &acc * &base.pow(subset_multiplicity(&factors, mask) as u32);
    }
    let n: BigInt = factors.iter().map(|&(_, n)| BigInt::from(n)).product();
    div_exact_int(&acc, &n).map_err(|_| FormulaError::NotDivisible { divisor: n })
}

/// Second product form: `Π q_i^{n_i−1} n_i^{n_i−2} · Π_{|A|≥2} (Σ_{i∈A} q_i n_i)^{Π(n_i−1)}`.
pub fn directions_rhs_product_form(dims: &[usize]) -> Polynomial {
    let (factors, _) = nontrivial_factors(dims);
    let mut acc = Polynomial::one();
    for &(dir, n) in &factors {
        let c = BigInt::from(n).pow(n as u32 - 2);
        acc = &acc * &q(dir).pow(n as u32 - 1).scale(c);
    }
    for mask in (1..1usize << factors.len()).filter(|m: &usize| m.count_ones() >= 2) {
        let base = subset_eigenvalue(&factors, mask, &q);
        acc = &acc * &base.pow(subset_multiplicity(&factors, mask) as u32);
    }
    acc
}

/// Direction enumerator of `K_{n_1} × ··· × K_{n_r}` in closed form. Both
/// product forms are evaluated and must agree. Size-1 factors contribute
/// nothing; callers wanting to warn about them use [`nontrivial_factors`].
pub fn directions_rhs(dims: &[usize]) -> Result<Polynomial, FormulaError> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(FormulaError::InvalidSize("dimensions must be positive"));
    }
    let first = directions_rhs_quotient_form(dims)?;
    let second = directions_rhs_product_form(dims);
    if first != second {
        return Err(FormulaError::FormMismatch {
            formula: "the direction enumerator",
            difference: Box::new(&first - &second),
        });
    }
    Ok(first)
}

/// Eigenvalues of a weighted Laplacian, with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pairs: Vec<(Polynomial, u64)>,
}

impl Spectrum {
    pub fn new(pairs: Vec<(Polynomial, u64)>) -> Self {
        Spectrum { pairs }
    }

    pub fn pairs(&self) -> &[(Polynomial, u64)] {
        &self.pairs
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.pairs.iter().map(|(_, m)| m).sum()
    }

    pub fn zero_multiplicity(&self) -> u64 {
        self.pairs
            .iter()
            .filter(|(e, _)| e.is_zero())
            .map(|(_, m)| m)
            .sum()
    }
}

/// Spectrum of `K_{n_1}^{(q_1)} × ··· × K_{n_r}^{(q_r)}`: one pair per
/// `A ⊆ [r]`, eigenvalue `Σ_{i∈A} q_i n_i`, multiplicity `Π_{i∈A}(n_i−1)`.
/// Pairs with multiplicity 0 (from size-1 factors) are omitted.
pub fn product_spectrum(dims: &[usize], qs: &[Polynomial]) -> Spectrum {
    assert_eq!(dims.len(), qs.len(), "one weight per factor");
    let factors: Vec<(usize, usize)> = dims.iter().enumerate().map(|(i, &n)| (i, n)).collect();
    let weight = |i: usize| qs[i].clone();
    let pairs = (0..1usize << dims.len())
        .map(|mask| {
            (
                subset_eigenvalue(&factors, mask, &weight),
                subset_multiplicity(&factors, mask),
            )
        })
        .filter(|(_, m)| *m > 0)
        .collect();
    Spectrum { pairs }
}

/// `(1/n)·Π` of the nonzero eigenvalues with multiplicity.
pub fn count_from_spectrum(s: &Spectrum, n: u64) -> Result<Polynomial, FormulaError> {
    let zeros = s.zero_multiplicity();
    if zeros != 1 {
        return Err(FormulaError::ZeroMultiplicity(zeros));
    }
    let product: Polynomial = s
        .pairs
        .iter()
        .filter(|(e, _)| !e.is_zero())
        .map(|(e, m)| e.pow(*m as u32))
        .product();
    let n = BigInt::from(n);
    div_exact_int(&product, &n).map_err(|_| FormulaError::NotDivisible { divisor: n })
}

/// A named factor `base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub label: String,
    pub base: Polynomial,
    pub exponent: u32,
}

impl Factor {
    pub fn power(&self) -> Polynomial {
        self.base.pow(self.exponent)
    }
}

/// Every factor known to divide the decoupled enumerator of
/// `K_{n_1} × ··· × K_{n_r}`: `q_i^{n_i−1}`, `x(i,j)^{Π_{t≠i} n_t}` and
/// `(x(i,1)+···+x(i,n_i))^{n_i−2}`. Factors with exponent 0 are omitted.
pub fn decoupled_factors(dims: &[usize]) -> Vec<Factor> {
    let total: usize = dims.iter().product();
    let mut out = Vec::new();
    for (k, &n) in dims.iter().enumerate() {
        let i = k + 1;
        let mut push = |label: String, base: Polynomial, exponent: usize| {
            if exponent > 0 {
                out.push(Factor {
                    label,
                    base,
                    exponent: exponent as u32,
                });
            }
        };
        push(format!("q{i}"), q(i), n.saturating_sub(1));
        for j in 1..=n {
            push(format!("x({i},{j})"), xd(i, j), total / n);
        }
        let sum: Polynomial = (1..=n).map(|j| xd(i, j)).sum();
        push(format!("f({i})"), sum, n.saturating_sub(2));
    }
    out
}

/// `f_A = Σ_{i∈A} q_i (x_i^{-1} + x_i)` for a subset bitmask `A`.
pub fn cube_factor(mask: u32) -> Polynomial {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| {
            let i = b as usize + 1;
            let inv = Polynomial::from(Monomial::var_pow(Variable::x(i as u32), -1));
            &q(i) * &(&inv + &x(i))
        })
        .sum()
}

/// `q1···qn · Π_{A⊆[n], |A|≥2} f_A`.
pub fn cube_rhs(n: usize) -> Result<Polynomial, FormulaError> {
    if n == 0 || n > 20 {
        return Err(FormulaError::InvalidSize(
            "hypercube dimension must be in 1..=20",
        ));
    }
    let mut acc: Polynomial = (1..=n).map(q).product();
    for mask in (0u32..1 << n).filter(|m| m.count_ones() >= 2) {
        acc = &acc * &cube_factor(mask);
    }
    Ok(acc)
}

/// Checks that `λ` is the degree sequence of a connected threshold graph.
pub fn check_connected_threshold(lambda: &Partition) -> Result<(), FormulaError> {
    let g = threshold_graph(lambda)?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(())
}

/// Number of spanning trees of a connected threshold graph: `Π_{r=2}^{n−1} λ'_r`.
pub fn merris_count(lambda: &Partition) -> Result<BigInt, FormulaError> {
    check_connected_threshold(lambda)?;
    let n = lambda.len();
    Ok((2..n)
        .map(|r| BigInt::from(lambda.conjugate_part(r)))
        .product())
}

/// `x1·yn·Π_{r=2}^{n−1} Σ_{i=1}^{λ'_r} x_{min(i,r)} y_{max(i,r)}`.
pub fn threshold_rhs(lambda: &Partition) -> Result<Polynomial, FormulaError> {
    check_connected_threshold(lambda)?;
    let n = lambda.len();
    if n == 1 {
        return Ok(Polynomial::one());
    }
    let mut acc = &x(1) * &y(n);
    for r in 2..n {
        let factor: Polynomial = (1..=lambda.conjugate_part(r))
            .map(|i| &x(i.min(r)) * &y(i.max(r)))
            .sum();
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// The degree-monomial specialization `y = x`:
/// `x1···xn·Π_{r=2}^{n−1} (x_1+···+x_{λ'_r})`.
pub fn threshold_rhs_diagonal(lambda: &Partition) -> Result<Polynomial, FormulaError> {
    check_connected_threshold(lambda)?;
    let n = lambda.len();
    if n == 1 {
        return Ok(Polynomial::one());
    }
    let mut acc: Polynomial = (1..=n).map(x).product();
    for r in 2..n {
        acc = &acc * &x_sum(1..=lambda.conjugate_part(r));
    }
    Ok(acc)
}

/// Substitutes `y_i = x_i` for `i ∈ [n]`.
pub fn set_y_to_x(p: &Polynomial, n: usize) -> Polynomial {
    let bindings = (1..=n).map(|i| (Variable::y(i as u32), x(i))).collect();
    p.substitute(&bindings)
        .expect("binding variables to variables is always invertible")
}

/// `f_r = y_r·Σ_{i=1}^{r} x_i + x_r·Σ_{i=r+1}^{1+λ_r} y_i`.
pub fn threshold_f(lambda: &Partition, r: usize) -> Polynomial {
    &(&y(r) * &x_sum(1..=r)) + &(&x(r) * &y_sum(r + 1..=1 + lambda.part(r)))
}

/// `g_r = Σ_{i=1}^{λ_{r+1}} x_i`.
pub fn threshold_g(lambda: &Partition, r: usize) -> Polynomial {
    x_sum(1..=lambda.part(r + 1))
}

/// `x1 · Π_{r=2}^{s} f_r · Π_{r=s+1}^{n−1} g_r · Π_{r=s+1}^{n} y_r` with `s` the
/// Durfee size; checked against [`threshold_rhs`].
pub fn threshold_rewrite_rhs(lambda: &Partition) -> Result<Polynomial, FormulaError> {
    let product = threshold_rhs(lambda)?;
    let n = lambda.len();
    if n == 1 {
        return Ok(product);
    }
    let s = lambda.durfee();
    let mut acc = x(1);
    for r in 2..=s {
        acc = &acc * &threshold_f(lambda, r);
    }
    for r in s + 1..n {
        acc = &acc * &threshold_g(lambda, r);
    }
    for r in s + 1..=n {
        acc = &acc * &y(r);
    }
    if acc != product {
        return Err(FormulaError::FormMismatch {
            formula: "the threshold product",
            difference: Box::new(&acc - &product),
        });
    }
    Ok(acc)
}

/// `n^(n−2)` for `n ≥ 2`, and 1 for `n = 1`.
pub fn cayley_count(n: usize) -> BigInt {
    if n < 2 {
        return BigInt::one();
    }
    BigInt::from(n).pow(n as u32 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::connected_threshold_sequences;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cayley_prufer_small() {
        assert_eq!(cayley_prufer_rhs(2).unwrap(), &x(1) * &x(2));
        let k3 = &(&(&x(1) * &x(2)) * &x(3)) * &x_sum(1..=3);
        assert_eq!(cayley_prufer_rhs(3).unwrap(), k3);
        assert_eq!(cayley_prufer_rhs(4).unwrap().eval_ones(), BigInt::from(16));
        assert!(cayley_prufer_rhs(1).is_err());
    }

    #[test]
    fn directions_square() {
        let expected = (&(&q(1) * &q(2)) * &(&q(1) + &q(2))).scale(2);
        assert_eq!(directions_rhs(&[2, 2]).unwrap(), expected);
    }

    #[test]
    fn directions_single_factor() {
        for n in 2..=6usize {
            let expected = q(1).pow(n as u32 - 1).scale(cayley_count(n));
            assert_eq!(directions_rhs(&[n]).unwrap(), expected);
        }
    }

    #[test]
    fn directions_counts() {
        assert_eq!(
            directions_rhs(&[2, 2, 2]).unwrap().eval_ones(),
            BigInt::from(384)
        );
        assert_eq!(
            directions_rhs(&[3, 3]).unwrap().eval_ones(),
            BigInt::from(11664)
        );
        // size-1 factors are inert and keep their direction index
        let (kept, dropped) = nontrivial_factors(&[2, 1, 2]);
        assert_eq!(kept, vec![(1, 2), (3, 2)]);
        assert_eq!(dropped, 1);
        let expected = (&(&q(1) * &q(3)) * &(&q(1) + &q(3))).scale(2);
        assert_eq!(directions_rhs(&[2, 1, 2]).unwrap(), expected);
    }

    #[test]
    fn spectra() {
        let s = product_spectrum(&[3], &[q(1)]);
        assert_eq!(s.pairs(), &[(Polynomial::zero(), 1), (q(1).scale(3), 2)]);
        let ones = vec![Polynomial::one(); 2];
        let s = product_spectrum(&[2, 2], &ones);
        let mut values: Vec<BigInt> = s.pairs().iter().map(|(e, _)| e.eval_ones()).collect();
        values.sort();
        assert_eq!(values, [0, 2, 2, 4].map(BigInt::from));
        for dims in [vec![2, 3], vec![3, 3, 2], vec![4]] {
            let s = product_spectrum(&dims, &vec![Polynomial::one(); dims.len()]);
            assert_eq!(
                s.total_multiplicity(),
                dims.iter().product::<usize>() as u64
            );
            assert_eq!(s.zero_multiplicity(), 1);
        }
    }

    #[test]
    fn counts_from_spectra() {
        let k4 = Spectrum::new(vec![(Polynomial::constant(4), 3), (Polynomial::zero(), 1)]);
        assert_eq!(
            count_from_spectrum(&k4, 4).unwrap(),
            Polynomial::constant(16)
        );
        let q3 = product_spectrum(&[2, 2, 2], &vec![Polynomial::one(); 3]);
        assert_eq!(
            count_from_spectrum(&q3, 8).unwrap(),
            Polynomial::constant(384)
        );
        let k2 = product_spectrum(&[2], &[Polynomial::one()]);
        assert_eq!(count_from_spectrum(&k2, 2).unwrap(), Polynomial::one());
        let twice_zero = Spectrum::new(vec![(Polynomial::zero(), 2)]);
        assert!(matches!(
            count_from_spectrum(&twice_zero, 2),
            Err(FormulaError::ZeroMultiplicity(2))
        ));
    }

    #[test]
    fn factor_lists() {
        let f = decoupled_factors(&[3]);
        let labels: Vec<(&str, u32)> = f.iter().map(|f| (f.label.as_str(), f.exponent)).collect();
        assert_eq!(
            labels,
            vec![
                ("q1", 2),
                ("x(1,1)", 1),
                ("x(1,2)", 1),
                ("x(1,3)", 1),
                ("f(1)", 1)
            ]
        );
        assert!(decoupled_factors(&[2, 2])
            .iter()
            .all(|f| !f.label.starts_with('f')));
        let f = decoupled_factors(&[2, 3]);
        let exp = |l: &str| f.iter().find(|f| f.label == l).unwrap().exponent;
        assert_eq!(exp("x(1,2)"), 3);
        assert_eq!(exp("x(2,3)"), 2);
    }

    #[test]
    fn cube_products() {
        assert_eq!(cube_rhs(1).unwrap(), q(1));
        let expected = &(&q(1) * &q(2)) * &cube_factor(0b11);
        assert_eq!(cube_rhs(2).unwrap(), expected);
        assert_eq!(cube_rhs(3).unwrap().eval_ones(), BigInt::from(384));
    }

    #[test]
    fn merris() {
        assert_eq!(merris_count(&part(&[2, 2, 2])).unwrap(), BigInt::from(3));
        assert_eq!(merris_count(&part(&[3, 1, 1, 1])).unwrap(), BigInt::from(1));
        for n in 2..=7 {
            assert_eq!(
                merris_count(&part(&vec![n - 1; n])).unwrap(),
                cayley_count(n)
            );
        }
        assert!(matches!(
            merris_count(&part(&[2, 2, 1, 1])),
            Err(FormulaError::Graph(GraphError::NotThresholdSequence { .. }))
        ));
        assert!(matches!(
            merris_count(&part(&[1, 1, 0])),
            Err(FormulaError::Graph(GraphError::Disconnected))
        ));
    }

    #[test]
    fn threshold_products() {
        let k3 = threshold_rhs(&part(&[2, 2, 2])).unwrap();
        let inner = &(&(&x(1) * &y(2)) + &(&x(2) * &y(2))) + &(&x(2) * &y(3));
        assert_eq!(k3, &(&x(1) * &y(3)) * &inner);
        assert_eq!(threshold_rhs(&part(&[1, 1])).unwrap(), &x(1) * &y(2));
        assert_eq!(
            threshold_rhs_diagonal(&part(&[2, 2, 2])).unwrap(),
            cayley_prufer_rhs(3).unwrap()
        );
        assert_eq!(set_y_to_x(&k3, 3), cayley_prufer_rhs(3).unwrap());
    }

    #[test]
    fn rewrite_agrees_everywhere() {
        let f2 = threshold_f(&part(&[2, 2, 2]), 2);
        assert_eq!(f2, &(&y(2) * &(&x(1) + &x(2))) + &(&x(2) * &y(3)));
        assert_eq!(threshold_g(&part(&[3, 1, 1, 1]), 2), x(1));
        for n in 1..=7 {
            for lambda in connected_threshold_sequences(n) {
                let rewrite = threshold_rewrite_rhs(&lambda).unwrap();
                assert_eq!(
                    rewrite.eval_ones(),
                    merris_count(&lambda).unwrap(),
                    "{lambda}"
                );
                assert_eq!(
                    set_y_to_x(&rewrite, n),
                    threshold_rhs_diagonal(&lambda).unwrap(),
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn threshold_anchor_coefficient() {
        for n in 2..=6 {
            for lambda in connected_threshold_sequences(n) {
                let m = Monomial::from_exponents(
                    std::iter::once((Variable::x(1), n as i32 - 1))
                        .chain((2..=n).map(|i| (Variable::y(i as u32), 1))),
                );
                assert_eq!(
                    threshold_rhs(&lambda).unwrap().coefficient(&m),
                    BigInt::one()
                );
            }
        }
    }
}

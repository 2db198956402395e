//! Machine checks for the factorization identities, the divisibility claims,
//! the nullvector constructions behind them, and the quotient
//! non-negativity scan. Every check produces a [`Verdict`].

mod nullvectors;

pub use nullvectors::{
    threshold_g_blocks, verify_cube_nullvector, verify_decoupled_nullvectors,
    verify_threshold_nullvectors, GBlock,
};

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::formulas::{self, FormulaError};
use crate::graphs::{cartesian_product, complete_graph, Graph, GraphError};
use crate::laplacian::{determinant, tree_enumerator_det, weighted_laplacian, LaplacianError};
use crate::polyring::{div_exact, Polynomial};
use crate::treebrute::{enumerate_sum, TreeError, TreeStatistic};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Laplacian(#[from] LaplacianError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Verified,
    Refuted,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one claim. A refutation always carries a witness: a nonzero
/// remainder, a mismatching term or a negative coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim_id: String,
    pub status: Status,
    pub witness: Option<String>,
    /// Supplementary finding (minimum coefficient, residue sign, case tag).
    pub detail: Option<String>,
    pub elapsed_ms: u128,
}

impl Verdict {
    pub fn verified(claim_id: impl Into<String>) -> Self {
        Verdict {
            claim_id: claim_id.into(),
            status: Status::Verified,
            witness: None,
            detail: None,
            elapsed_ms: 0,
        }
    }

    pub fn refuted(claim_id: impl Into<String>, witness: impl Into<String>) -> Self {
        Verdict {
            claim_id: claim_id.into(),
            status: Status::Refuted,
            witness: Some(witness.into()),
            detail: None,
            elapsed_ms: 0,
        }
    }

    pub fn skipped(claim_id: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict {
            claim_id: claim_id.into(),
            status: Status::Skipped,
            witness: None,
            detail: Some(reason.into()),
            elapsed_ms: 0,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Verified iff `ok`; otherwise refuted with `witness`.
    pub fn check(claim_id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::verified(claim_id)
        } else {
            Verdict::refuted(claim_id, witness())
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<9} {} ({} ms)",
            self.status, self.claim_id, self.elapsed_ms
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " [{d}]")?;
        }
        Ok(())
    }
}

/// Runs `f` and stamps the elapsed wall time on every verdict it returns.
pub fn timed<F>(f: F) -> Result<Vec<Verdict>, VerifyError>
where
    F: FnOnce() -> Result<Vec<Verdict>, VerifyError>,
{
    let start = Instant::now();
    let mut out = f()?;
    let ms = start.elapsed().as_millis();
    for v in &mut out {
        v.elapsed_ms = ms;
    }
    Ok(out)
}

fn timed_one<F>(f: F) -> Result<Verdict, VerifyError>
where
    F: FnOnce() -> Result<Verdict, VerifyError>,
{
    let start = Instant::now();
    let mut v = f()?;
    v.elapsed_ms = start.elapsed().as_millis();
    Ok(v)
}

/// Verified iff `lhs − rhs = 0`; otherwise the leading term of the
/// difference is the witness.
pub fn verify_identity(lhs: &Polynomial, rhs: &Polynomial, claim_id: impl Into<String>) -> Verdict {
    let start = Instant::now();
    let diff = lhs - rhs;
    let mut v = match diff.leading_term() {
        None => Verdict::verified(claim_id),
        Some((m, c)) => {
            Verdict::refuted(claim_id, Polynomial::term(m.clone(), c.clone()).to_string())
        }
    };
    v.elapsed_ms = start.elapsed().as_millis();
    v
}

pub fn dims_label(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `K_{n_1} × ··· × K_{n_r}`.
pub fn complete_product(dims: &[usize]) -> Result<Graph, VerifyError> {
    if dims.is_empty() {
        return Err(VerifyError::InvalidInput(
            "at least one dimension is required".into(),
        ));
    }
    let factors = dims
        .iter()
        .map(|&n| complete_graph(n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(cartesian_product(&factors)?)
}

fn require_nontrivial(dims: &[usize]) -> Result<(), VerifyError> {
    if dims.is_empty() || dims.iter().any(|&n| n < 2) {
        return Err(VerifyError::InvalidInput(format!(
            "every dimension must be at least 2, got ({})",
            dims_label(dims)
        )));
    }
    Ok(())
}

/// Determinant enumerator against the brute-force sum over spanning trees.
pub fn oracle_claim(g: &Graph, stat: TreeStatistic, label: &str) -> Result<Verdict, VerifyError> {
    timed_one(|| {
        let det = tree_enumerator_det(g, stat.weight_scheme())?;
        let brute = enumerate_sum(g, stat)?;
        Ok(verify_identity(
            &det,
            &brute,
            format!("oracle/{label}/{stat}"),
        ))
    })
}

/// Perturbs the full Laplacian entry `(row, col)` by +1, takes the minor at
/// the last row and column and compares its determinant with the
/// brute-force sum. A sound harness reports this as refuted.
pub fn negative_control(
    g: &Graph,
    stat: TreeStatistic,
    row: usize,
    col: usize,
    label: &str,
) -> Result<Verdict, VerifyError> {
    timed_one(|| {
        let mut l = weighted_laplacian(g, stat.weight_scheme())?;
        let last = l.size() - 1;
        if row >= last || col >= last {
            return Err(VerifyError::InvalidInput(format!(
                "entry ({row}, {col}) lies in the removed row or column"
            )));
        }
        *l.get_mut(row, col) += &Polynomial::one();
        let (minor, sign) = l.reduce(last, last)?;
        let det = determinant(&minor);
        let det = if sign < 0 { -det } else { det };
        let brute = enumerate_sum(g, stat)?;
        Ok(verify_identity(
            &det,
            &brute,
            format!("negative-control/{label}/{stat}/entry({row},{col})"),
        ))
    })
}

/// Cayley–Prüfer for `K_n`: determinant against the closed form and the
/// count at all ones against `n^(n−2)`.
pub fn cayley_claims(n: usize) -> Result<Vec<Verdict>, VerifyError> {
    timed(|| {
        let g = complete_graph(n)?;
        let det = tree_enumerator_det(&g, TreeStatistic::Degree.weight_scheme())?;
        let rhs = formulas::cayley_prufer_rhs(n)?;
        let count = det.eval_ones();
        let expected = formulas::cayley_count(n);
        Ok(vec![
            verify_identity(&det, &rhs, format!("cayley-prufer/n={n}")),
            Verdict::check(format!("cayley-count/n={n}"), count == expected, || {
                format!("{count} ≠ {expected}")
            }),
        ])
    })
}

/// Both product forms of the direction enumerator, the determinant under
/// direction weights, and the count through the spectrum.
pub fn directions_claims(dims: &[usize]) -> Result<Vec<Verdict>, VerifyError> {
    timed(|| {
        let label = dims_label(dims);
        let g = complete_product(dims)?;
        let first = formulas::directions_rhs_quotient_form(dims)?;
        let second = formulas::directions_rhs_product_form(dims);
        let det = tree_enumerator_det(&g, TreeStatistic::Direction.weight_scheme())?;
        let ones = vec![Polynomial::one(); dims.len()];
        let spectrum = formulas::product_spectrum(dims, &ones);
        let n = g.n_vertices() as u64;
        let spectral = formulas::count_from_spectrum(&spectrum, n)?
            .as_constant()
            .expect("constant spectrum gives a constant count");
        let at_one = det.eval_ones();
        Ok(vec![
            verify_identity(&first, &second, format!("directions/dims={label}/forms")),
            verify_identity(&det, &first, format!("directions/dims={label}/determinant")),
            Verdict::check(
                format!("directions/dims={label}/spectral-count"),
                at_one == spectral,
                || format!("{at_one} ≠ {spectral}"),
            ),
        ])
    })
}

/// Result of dividing the decoupled enumerator by its known factors.
#[derive(Debug, Clone)]
pub struct DivisibilityReport {
    pub verdicts: Vec<Verdict>,
    pub enumerator: Polynomial,
    /// Enumerator divided by the product of every factor, when all divide.
    pub quotient: Option<Polynomial>,
}

/// Every factor from [`formulas::decoupled_factors`] must divide the
/// decoupled enumerator exactly. The quotient by the product of all factors
/// is computed at once, and again by dividing factor by factor in forward
/// and reverse order; the three must coincide.
pub fn verify_divisibility(dims: &[usize]) -> Result<DivisibilityReport, VerifyError> {
    require_nontrivial(dims)?;
    let start = Instant::now();
    let label = dims_label(dims);
    let g = complete_product(dims)?;
    let enumerator = tree_enumerator_det(&g, TreeStatistic::DirDecoupled.weight_scheme())?;
    let factors = formulas::decoupled_factors(dims);
    let mut verdicts = Vec::new();
    for f in &factors {
        let id = format!("divisibility/dims={label}/{}^{}", f.label, f.exponent);
        verdicts.push(match div_exact(&enumerator, &f.power()) {
            Ok(_) => Verdict::verified(id),
            Err(e) => Verdict::refuted(id, e.to_string()),
        });
    }
    let all_divide = verdicts.iter().all(Verdict::is_verified);
    let quotient = if all_divide {
        let product: Polynomial = factors.iter().map(|f| f.power()).product();
        let at_once = div_exact(&enumerator, &product).ok();
        let stepwise = |order: Vec<&formulas::Factor>| {
            order.into_iter().try_fold(enumerator.clone(), |acc, f| {
                div_exact(&acc, &f.power()).ok()
            })
        };
        let forward = stepwise(factors.iter().collect());
        let backward = stepwise(factors.iter().rev().collect());
        let consistent = at_once.is_some() && at_once == forward && forward == backward;
        verdicts.push(Verdict::check(
            format!("divisibility/dims={label}/quotient-order-independent"),
            consistent,
            || "dividing in different orders gave different quotients".into(),
        ));
        at_once
    } else {
        None
    };
    let ms = start.elapsed().as_millis();
    for v in &mut verdicts {
        v.elapsed_ms = ms;
    }
    Ok(DivisibilityReport {
        verdicts,
        enumerator,
        quotient,
    })
}

/// Coefficient scan of the quotient from [`verify_divisibility`].
#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub verdict: Verdict,
    pub quotient: Option<Polynomial>,
    pub min_coefficient: Option<BigInt>,
    pub num_terms: usize,
}

/// Scans the quotient for negative coefficients. Verified means every
/// coefficient is non-negative; refuted carries the first negative term.
pub fn conjecture_scan(dims: &[usize]) -> Result<ConjectureReport, VerifyError> {
    let start = Instant::now();
    let report = verify_divisibility(dims)?;
    let id = format!("conjecture/dims={}", dims_label(dims));
    let Some(quotient) = report.quotient else {
        let mut v = Verdict::skipped(id, "a listed factor does not divide the enumerator");
        v.elapsed_ms = start.elapsed().as_millis();
        return Ok(ConjectureReport {
            verdict: v,
            quotient: None,
            min_coefficient: None,
            num_terms: 0,
        });
    };
    let min = quotient.min_coefficient().cloned();
    let mut verdict = match quotient.negative_witness() {
        None => Verdict::verified(id),
        Some((m, c)) => Verdict::refuted(id, Polynomial::term(m.clone(), c.clone()).to_string()),
    };
    verdict.detail = Some(format!(
        "{} terms, minimum coefficient {}",
        quotient.num_terms(),
        min.as_ref().map_or("-".to_string(), |c| c.to_string())
    ));
    verdict.elapsed_ms = start.elapsed().as_millis();
    Ok(ConjectureReport {
        verdict,
        num_terms: quotient.num_terms(),
        quotient: Some(quotient),
        min_coefficient: min,
    })
}

/// Hypercube product: brute force (when `brute` is set) and determinant
/// against the closed form.
pub fn cube_claims(n: usize, brute: bool) -> Result<Vec<Verdict>, VerifyError> {
    timed(|| {
        let g = crate::graphs::hypercube(n)?;
        let rhs = formulas::cube_rhs(n)?;
        let stat = TreeStatistic::CubeSubstituted;
        // the row and column of the empty set are removed
        let det = crate::laplacian::tree_enumerator_det_at(&g, stat.weight_scheme(), 0, 0)?;
        let mut out = vec![verify_identity(
            &det,
            &rhs,
            format!("cube/n={n}/determinant"),
        )];
        if brute {
            let lhs = enumerate_sum(&g, stat)?;
            out.push(verify_identity(
                &lhs,
                &rhs,
                format!("cube/n={n}/brute-force"),
            ));
        }
        Ok(out)
    })
}

/// Threshold identities for one degree sequence: in/out-degree sum against
/// the product, the `y = x` specialization, the Merris count and the
/// `f_r`/`g_r` rewrite.
pub fn threshold_claims(lambda: &crate::graphs::Partition) -> Result<Vec<Verdict>, VerifyError> {
    timed(|| {
        let g = crate::graphs::threshold_graph(lambda)?;
        let n = lambda.len();
        let lhs = enumerate_sum(&g, TreeStatistic::InOutDegree)?;
        let rhs = formulas::threshold_rhs(lambda)?;
        let degree_sum = enumerate_sum(&g, TreeStatistic::Degree)?;
        let diagonal = formulas::threshold_rhs_diagonal(lambda)?;
        let merris = formulas::merris_count(lambda)?;
        let count = lhs.eval_ones();
        let id = |what: &str| format!("threshold/{lambda}/{what}");
        let rewrite = match formulas::threshold_rewrite_rhs(lambda) {
            Ok(p) => verify_identity(&lhs, &p, id("rewrite")),
            Err(FormulaError::FormMismatch { difference, .. }) => {
                Verdict::refuted(id("rewrite"), difference.to_string())
            }
            Err(e) => return Err(e.into()),
        };
        Ok(vec![
            verify_identity(&lhs, &rhs, id("product")),
            verify_identity(&formulas::set_y_to_x(&lhs, n), &diagonal, id("y=x")),
            verify_identity(&degree_sum, &diagonal, id("degree-sum")),
            Verdict::check(id("merris"), count == merris, || {
                format!("{count} ≠ {merris}")
            }),
            rewrite,
        ])
    })
}

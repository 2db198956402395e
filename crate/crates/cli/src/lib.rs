//! Command-line front end for `spanfactor`.
//!
//! [`run`] takes the argument list and two output streams and returns the
//! process exit code, so the binary is a thin wrapper and tests can drive
//! the whole interface in-process.

mod spec;

pub use spec::{parse_spec, ParseError, SpecError};

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spanfactor::formulas::product_spectrum;
use spanfactor::graphs::connected_threshold_sequences;
use spanfactor::laplacian::{tree_count, tree_enumerator_det_at};
use spanfactor::treebrute::enumerate_sum_with_cap;
use spanfactor::verify::{
    cayley_claims, conjecture_scan, cube_claims, directions_claims, threshold_claims,
    verify_cube_nullvector, verify_decoupled_nullvectors, verify_divisibility,
    verify_threshold_nullvectors,
};
use spanfactor::{
    Graph, GraphKind, LaplacianError, Partition, Polynomial, Status, TreeError, TreeStatistic,
    Verdict, VerifyError, WeightScheme, DEFAULT_CAP,
};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Exact spanning-tree enumerators and factorization checks.
#[derive(Debug, Parser)]
#[command(name = "spanfactor", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of spanning trees.
    Count {
        /// Graph spec: K4, K3xK4xK2, Q3, K3(2) or T:3,1,1,1.
        spec: String,
    },
    /// Spanning-tree enumerator as a polynomial.
    Enumerate(EnumerateArgs),
    /// Laplacian eigenvalues of a product of complete graphs, with multiplicities.
    Spectrum {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a family of identities and print one verdict per claim.
    Verify(VerifyArgs),
    /// Divide the decoupled enumerator by its known factors and scan the
    /// quotient for negative coefficients.
    ConjectureScan {
        /// Comma-separated factor sizes, e.g. 2,3.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Print the quotient as well.
        #[arg(long)]
        show_quotient: bool,
        #[arg(long)]
        json: bool,
        /// Report elapsed times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Kirchhoff determinant of a reduced weighted Laplacian.
    Det,
    /// Sum of statistic monomials over every spanning tree.
    Brute,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    pub spec: String,
    /// Tree statistic: degree, direction, decoupled, cube or inout.
    /// Defaults to the one matching the graph family.
    #[arg(long)]
    pub stat: Option<TreeStatistic>,
    /// Edge-weight scheme for the determinant, overriding the statistic's:
    /// generic, cayley-prufer, direction, decoupled, cube or inout.
    #[arg(long)]
    pub weights: Option<WeightScheme>,
    #[arg(long, value_enum, default_value_t = Method::Det)]
    pub method: Method,
    /// Maximum number of trees brute force may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Removed row and column of the Laplacian, 1-based vertex positions
    /// (default: the last vertex).
    #[arg(long, value_parser = parse_pair)]
    pub reduce: Option<(usize, usize)>,
    #[arg(long)]
    pub json: bool,
    /// Write the polynomial to FILE instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Cube,
    Cayley,
    Directions,
    Divisibility,
    Threshold,
    Nullvectors,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub claim: Claim,
    /// Size for cube, cayley, threshold (every connected sequence) and cube nullvectors.
    #[arg(long)]
    pub n: Option<usize>,
    /// Factor sizes for directions, divisibility and decoupled nullvectors.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Threshold degree sequence for threshold identities and nullvectors.
    #[arg(long, value_delimiter = ',')]
    pub lambda: Option<Vec<usize>>,
    #[arg(long)]
    pub json: bool,
    /// Report elapsed times (makes output run-dependent).
    #[arg(long)]
    pub timings: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let list = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    match list[..] {
        [r, c] if r > 0 && c > 0 => Ok((r, c)),
        _ => Err("expected two positive positions `r,s`".into()),
    }
}

/// Failures, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Laplacian(#[from] LaplacianError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Tree(TreeError::CapExceeded { .. })
            | CliError::Verify(VerifyError::Tree(TreeError::CapExceeded { .. })) => EXIT_CAP,
            _ => EXIT_USAGE,
        }
    }
}

/// The statistic each family's identity is stated for.
pub fn default_statistic(g: &Graph) -> TreeStatistic {
    match g.kind() {
        GraphKind::Complete { .. } | GraphKind::Multigraph { .. } => TreeStatistic::Degree,
        GraphKind::Product { .. } => TreeStatistic::DirDecoupled,
        GraphKind::Hypercube { .. } => TreeStatistic::CubeSubstituted,
        GraphKind::Threshold { .. } => TreeStatistic::InOutDegree,
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn warn_trivial_factors(g: &Graph, err: &mut dyn Write) -> Result<(), CliError> {
    if let GraphKind::Product { dims } = g.kind() {
        if dims.contains(&1) {
            writeln!(
                err,
                "warning: K1 factors contribute nothing; their directions keep their indices"
            )?;
        }
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Count { spec } => {
            let g = parse_spec(&spec)?;
            warn_trivial_factors(&g, err)?;
            if !g.is_connected() {
                writeln!(err, "warning: graph is disconnected")?;
            }
            writeln!(out, "{}", tree_count(&g))?;
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => enumerate(args, out, err),
        Command::Spectrum { spec, json } => spectrum(&spec, json, out),
        Command::Verify(args) => verify(args, out),
        Command::ConjectureScan {
            dims,
            show_quotient,
            json,
            timings,
        } => {
            let report = conjecture_scan(&dims)?;
            let mut verdict = report.verdict;
            if !timings {
                verdict.elapsed_ms = 0;
            }
            if json {
                #[derive(Serialize)]
                struct Report<'a> {
                    verdict: &'a Verdict,
                    num_terms: usize,
                    min_coefficient: Option<String>,
                    quotient: Option<&'a Polynomial>,
                }
                let report = Report {
                    verdict: &verdict,
                    num_terms: report.num_terms,
                    min_coefficient: report.min_coefficient.map(|c| c.to_string()),
                    quotient: report.quotient.as_ref(),
                };
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report).expect("serializable")
                )?;
            } else {
                writeln!(out, "{}", verdict_line(&verdict, timings))?;
                if let (true, Some(q)) = (show_quotient, &report.quotient) {
                    writeln!(out, "{q}")?;
                }
            }
            Ok(status_code(std::slice::from_ref(&verdict)))
        }
    }
}

fn enumerate(
    args: EnumerateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = parse_spec(&args.spec)?;
    warn_trivial_factors(&g, err)?;
    let stat = args.stat.unwrap_or_else(|| default_statistic(&g));
    let p = match args.method {
        Method::Brute => {
            if args.weights.is_some() {
                writeln!(err, "warning: --weights is ignored by brute force")?;
            }
            if args.reduce.is_some() {
                writeln!(err, "warning: --reduce is ignored by brute force")?;
            }
            enumerate_sum_with_cap(&g, stat, args.cap)?
        }
        Method::Det => {
            let scheme = args.weights.unwrap_or_else(|| stat.weight_scheme());
            let n = g.n_vertices();
            let (r, s) = args.reduce.unwrap_or((n, n));
            if r > n || s > n {
                return Err(CliError::Usage(format!(
                    "--reduce {r},{s} is out of range for {n} vertices"
                )));
            }
            tree_enumerator_det_at(&g, scheme, r - 1, s - 1)?
        }
    };
    let text = if args.json {
        serde_json::to_string(&p).expect("serializable")
    } else {
        p.to_string()
    };
    match args.out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn spectrum(spec: &str, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = parse_spec(spec)?;
    let (dims, qs): (Vec<usize>, Vec<Polynomial>) = match g.kind() {
        GraphKind::Complete { n } => (vec![*n], vec![Polynomial::one()]),
        GraphKind::Multigraph { n, q } => (vec![*n], vec![Polynomial::constant(*q)]),
        GraphKind::Product { dims } => {
            let qs = (1..=dims.len() as u32)
                .map(|i| Polynomial::var(spanfactor::Variable::q(i)))
                .collect();
            (dims.clone(), qs)
        }
        GraphKind::Hypercube { n } => {
            let qs = (1..=*n as u32)
                .map(|i| Polynomial::var(spanfactor::Variable::q(i)))
                .collect();
            (vec![2; *n], qs)
        }
        GraphKind::Threshold { .. } => {
            return Err(CliError::Usage(
                "spectrum is only available for products of complete graphs".into(),
            ))
        }
    };
    let s = product_spectrum(&dims, &qs);
    if json {
        #[derive(Serialize)]
        struct Pair<'a> {
            eigenvalue: &'a Polynomial,
            multiplicity: u64,
        }
        let pairs: Vec<Pair> = s
            .pairs()
            .iter()
            .map(|(e, m)| Pair {
                eigenvalue: e,
                multiplicity: *m,
            })
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string(&pairs).expect("serializable")
        )?;
    } else {
        for (e, m) in s.pairs() {
            writeln!(out, "{e}\t{m}")?;
        }
    }
    Ok(EXIT_OK)
}

fn require<T: Clone>(value: &Option<T>, flag: &str, claim: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("`verify {claim}` needs --{flag}")))
}

fn threshold_inputs(args: &VerifyArgs) -> Result<Vec<Partition>, CliError> {
    match (&args.lambda, args.n) {
        (Some(parts), _) => Ok(vec![Partition::new(parts.clone()).map_err(SpecError::from)?]),
        (None, Some(n)) => Ok(connected_threshold_sequences(n)),
        (None, None) => Err(CliError::Usage(
            "`verify threshold` needs --lambda or --n".into(),
        )),
    }
}

fn nullvector_verdicts(args: &VerifyArgs) -> Result<Vec<Verdict>, CliError> {
    let mut vs = Vec::new();
    if let Some(n) = args.n {
        for a in 0u32..(1 << n) {
            if a.count_ones() >= 2 {
                vs.extend(verify_cube_nullvector(n, a)?);
            }
        }
    }
    if let Some(dims) = &args.dims {
        for i in 1..=dims.len() {
            vs.extend(verify_decoupled_nullvectors(dims, i)?);
        }
    }
    if let Some(parts) = &args.lambda {
        vs.extend(verify_threshold_nullvectors(
            &Partition::new(parts.clone()).map_err(SpecError::from)?,
        )?);
    }
    if args.n.is_none() && args.dims.is_none() && args.lambda.is_none() {
        return Err(CliError::Usage(
            "`verify nullvectors` needs --n, --dims or --lambda".into(),
        ));
    }
    Ok(vs)
}

/// A fixed desk-scale sweep over every claim family.
fn all_verdicts() -> Result<Vec<Verdict>, CliError> {
    let mut vs = Vec::new();
    for n in 2..=6 {
        vs.extend(cayley_claims(n)?);
    }
    for n in 1..=3 {
        vs.extend(cube_claims(n, true)?);
    }
    for dims in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
        vs.extend(directions_claims(&dims)?);
        vs.extend(verify_divisibility(&dims)?.verdicts);
    }
    for n in 1..=5 {
        for lambda in connected_threshold_sequences(n) {
            vs.extend(threshold_claims(&lambda)?);
            vs.extend(verify_threshold_nullvectors(&lambda)?);
        }
    }
    for n in 2..=3usize {
        for a in 0u32..(1 << n) {
            if a.count_ones() >= 2 {
                vs.extend(verify_cube_nullvector(n, a)?);
            }
        }
    }
    for dims in [vec![3], vec![2, 2]] {
        for i in 1..=dims.len() {
            vs.extend(verify_decoupled_nullvectors(&dims, i)?);
        }
    }
    Ok(vs)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut verdicts = match args.claim {
        Claim::Cube => {
            let n = require(&args.n, "n", "cube")?;
            cube_claims(n, n <= 3)?
        }
        Claim::Cayley => cayley_claims(require(&args.n, "n", "cayley")?)?,
        Claim::Directions => directions_claims(&require(&args.dims, "dims", "directions")?)?,
        Claim::Divisibility => {
            verify_divisibility(&require(&args.dims, "dims", "divisibility")?)?.verdicts
        }
        Claim::Threshold => {
            let mut vs = Vec::new();
            for lambda in threshold_inputs(&args)? {
                vs.extend(threshold_claims(&lambda)?);
            }
            vs
        }
        Claim::Nullvectors => nullvector_verdicts(&args)?,
        Claim::All => all_verdicts()?,
    };
    if !args.timings {
        for v in &mut verdicts {
            v.elapsed_ms = 0;
        }
    }
    if args.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string(&verdicts).expect("serializable")
        )?;
    } else {
        for v in &verdicts {
            writeln!(out, "{}", verdict_line(v, args.timings))?;
        }
    }
    Ok(status_code(&verdicts))
}

fn verdict_line(v: &Verdict, timings: bool) -> String {
    if timings {
        return v.to_string();
    }
    let mut line = format!("{:<9} {}", v.status, v.claim_id);
    if let Some(w) = &v.witness {
        line.push_str(&format!(" witness: {w}"));
    }
    if let Some(d) = &v.detail {
        line.push_str(&format!(" [{d}]"));
    }
    line
}

fn status_code(verdicts: &[Verdict]) -> i32 {
    if verdicts.iter().any(|v| v.status == Status::Refuted) {
        EXIT_REFUTED
    } else {
        EXIT_OK
    }
}

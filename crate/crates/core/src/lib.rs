//! Exact weighted spanning-tree enumerators.
//!
//! Sparse Laurent polynomials over arbitrary-precision integers
//! ([`polyring`]), the graph families ([`graphs`]), weighted Laplacians and
//! their exact determinants ([`laplacian`]), a brute-force spanning-tree
//! oracle ([`treebrute`]), closed-form products ([`formulas`]) and the
//! machine checks tying them together ([`verify`]).

pub mod formulas;
pub mod graphs;
pub mod laplacian;
pub mod polyring;
pub mod treebrute;
pub mod verify;

pub use formulas::{FormulaError, Spectrum};
pub use graphs::{Graph, GraphError, GraphKind, Partition};
pub use laplacian::{LaplacianError, PolyMatrix, WeightScheme};
pub use polyring::{div_exact, Monomial, PolyError, Polynomial, Variable};
pub use treebrute::{SpanningTree, TreeError, TreeStatistic, DEFAULT_CAP};
pub use verify::{Status, Verdict, VerifyError};

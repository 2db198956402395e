//! The graph families: complete graphs, multigraph thickenings, Cartesian
//! products, hypercubes and threshold graphs.

mod partition;

pub use partition::{
    connected_threshold_sequences, durfee_identity_violation, threshold_sequences, Partition,
};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph size must be positive")]
    InvalidSize,
    #[error("Cartesian product factor {0} is empty")]
    EmptyFactor(usize),
    #[error("not a partition (must be weakly decreasing): {0:?}")]
    NotPartition(Vec<usize>),
    #[error("{degrees} is not a threshold sequence (the rule realizes {realized})")]
    NotThresholdSequence {
        degrees: Partition,
        realized: Partition,
    },
    #[error("graph is disconnected")]
    Disconnected,
}

/// Vertex labels, matching the family that built the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// `1..=n`.
    Index(usize),
    /// 1-based coordinates in a Cartesian product.
    Tuple(Vec<usize>),
    /// A subset of `[n]`; bit `i-1` set iff `i` is a member.
    Subset(u32),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Index(i) => write!(f, "{i}"),
            VertexLabel::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            VertexLabel::Subset(mask) => {
                let parts: Vec<String> = (0..32)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| (b + 1).to_string())
                    .collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// An undirected edge between vertex indices `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Product coordinate in which the endpoints differ; 1 for plain graphs.
    pub direction: usize,
    /// Number of parallel copies.
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphKind {
    Complete { n: usize },
    Multigraph { n: usize, q: u32 },
    Product { dims: Vec<usize> },
    Hypercube { n: usize },
    Threshold { degrees: Partition },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    kind: GraphKind,
    labels: Vec<VertexLabel>,
    edges: Vec<Edge>,
}

impl Graph {
    fn new(kind: GraphKind, labels: Vec<VertexLabel>, mut edges: Vec<Edge>) -> Self {
        for e in edges.iter_mut() {
            debug_assert_ne!(e.u, e.v, "self-loop");
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        Graph {
            kind,
            labels,
            edges,
        }
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Edge count with multiplicity.
    pub fn total_edges(&self) -> u64 {
        self.edges.iter().map(|e| e.multiplicity as u64).sum()
    }

    /// Degrees with multiplicity, indexed by vertex.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n_vertices()];
        for e in &self.edges {
            deg[e.u] += e.multiplicity as u64;
            deg[e.v] += e.multiplicity as u64;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Factor sizes when the graph is a product of complete (multi)graphs,
    /// including the one-factor case.
    pub fn factor_sizes(&self) -> Option<Vec<usize>> {
        match &self.kind {
            GraphKind::Complete { n } | GraphKind::Multigraph { n, .. } => Some(vec![*n]),
            GraphKind::Product { dims } => Some(dims.clone()),
            GraphKind::Hypercube { n } => Some(vec![2; *n]),
            GraphKind::Threshold { .. } => None,
        }
    }

    /// 1-based product coordinates of vertex `v`, for product-like graphs.
    pub fn coordinates(&self, v: usize) -> Option<Vec<usize>> {
        match (&self.kind, &self.labels[v]) {
            (GraphKind::Threshold { .. }, _) => None,
            (_, VertexLabel::Index(i)) => Some(vec![*i]),
            (_, VertexLabel::Tuple(t)) => Some(t.clone()),
            (GraphKind::Hypercube { n }, VertexLabel::Subset(mask)) => {
                Some((0..*n).map(|b| 1 + (mask >> b & 1) as usize).collect())
            }
            _ => None,
        }
    }

    /// Dimension `n` when the graph is `Q_n` (built directly or as a
    /// product of simple `K_2` factors).
    pub fn cube_dimension(&self) -> Option<usize> {
        match &self.kind {
            GraphKind::Hypercube { n } => Some(*n),
            GraphKind::Product { dims }
                if dims.iter().all(|&d| d == 2)
                    && self.edges.iter().all(|e| e.multiplicity == 1) =>
            {
                Some(dims.len())
            }
            GraphKind::Complete { n: 2 } => Some(1),
            _ => None,
        }
    }

    /// Vertex subset of `[n]` under the cube bijection (coordinate 2 means
    /// membership), as a bitmask.
    pub fn cube_subset(&self, v: usize) -> Option<u32> {
        self.cube_dimension()?;
        if let VertexLabel::Subset(mask) = self.labels[v] {
            return Some(mask);
        }
        let coords = self.coordinates(v)?;
        Some(
            coords
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == 2)
                .map(|(i, _)| 1u32 << i)
                .sum(),
        )
    }

    /// True for graphs whose vertices are plain integers `1..=n`.
    pub fn is_plain(&self) -> bool {
        matches!(
            self.kind,
            GraphKind::Complete { .. } | GraphKind::Multigraph { .. } | GraphKind::Threshold { .. }
        )
    }

    /// Edge set as `(u, v, direction, multiplicity)` with `u < v`, for
    /// comparing graphs up to edge order.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph, GraphError> {
    multigraph_kn(n, 1).map(|mut g| {
        g.kind = GraphKind::Complete { n };
        g
    })
}

/// `K_n^(q)`: every pair of vertices joined by `q` parallel edges.
pub fn multigraph_kn(n: usize, q: u32) -> Result<Graph, GraphError> {
    if n == 0 || q == 0 {
        return Err(GraphError::InvalidSize);
    }
    let labels = (1..=n).map(VertexLabel::Index).collect();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push(Edge {
                u,
                v,
                direction: 1,
                multiplicity: q,
            });
        }
    }
    Ok(Graph::new(GraphKind::Multigraph { n, q }, labels, edges))
}

/// Cartesian product `G_1 × ... × G_r`.
///
/// Vertices are coordinate tuples in row-major order (last coordinate
/// fastest). An edge of factor `i` lifted to the product has direction `i`
/// and keeps the factor edge's multiplicity.
pub fn cartesian_product(factors: &[Graph]) -> Result<Graph, GraphError> {
    if factors.is_empty() {
        return Err(GraphError::InvalidSize);
    }
    if let Some(i) = factors.iter().position(|g| g.n_vertices() == 0) {
        return Err(GraphError::EmptyFactor(i + 1));
    }
    let dims: Vec<usize> = factors.iter().map(Graph::n_vertices).collect();
    let total: usize = dims.iter().product();
    // stride of coordinate i in the row-major index
    let mut stride = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let tuple_of = |mut idx: usize| -> Vec<usize> {
        let mut t = vec![0; dims.len()];
        for i in 0..dims.len() {
            t[i] = idx / stride[i] + 1;
            idx %= stride[i];
        }
        t
    };
    let labels: Vec<VertexLabel> = (0..total)
        .map(|k| VertexLabel::Tuple(tuple_of(k)))
        .collect();

    let mut edges = Vec::new();
    for (i, g) in factors.iter().enumerate() {
        for base in 0..total {
            if !(base / stride[i]).is_multiple_of(dims[i]) {
                continue;
            }
            for e in &g.edges {
                edges.push(Edge {
                    u: base + e.u * stride[i],
                    v: base + e.v * stride[i],
                    direction: i + 1,
                    multiplicity: e.multiplicity,
                });
            }
        }
    }
    Ok(Graph::new(GraphKind::Product { dims }, labels, edges))
}

/// `Q_n` with vertices the subsets of `[n]`, ordered like the product of
/// `n` copies of `K_2` (coordinate 2 meaning membership).
pub fn hypercube(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize);
    }
    if n > 20 {
        return Err(GraphError::InvalidSize);
    }
    let total = 1usize << n;
    // index bit (n-1-b) <-> element b+1
    let subset_of = |idx: usize| -> u32 {
        (0..n)
            .filter(|b| idx >> (n - 1 - b) & 1 == 1)
            .map(|b| 1u32 << b)
            .sum()
    };
    let labels: Vec<VertexLabel> = (0..total)
        .map(|k| VertexLabel::Subset(subset_of(k)))
        .collect();
    let mut edges = Vec::with_capacity(n * total / 2);
    for i in 1..=n {
        let bit = 1usize << (n - i);
        for s in 0..total {
            if s & bit == 0 {
                edges.push(Edge {
                    u: s,
                    v: s | bit,
                    direction: i,
                    multiplicity: 1,
                });
            }
        }
    }
    Ok(Graph::new(GraphKind::Hypercube { n }, labels, edges))
}

/// The threshold graph of a degree sequence: the neighbors of vertex `i` are
/// the `λ_i` smallest members of `[n] \ {i}`.
///
/// The rule is applied to every vertex and the realized degree sequence
/// compared with `λ`; a mismatch means `λ` is not a threshold sequence. A
/// graph with an isolated vertex is returned as is; callers check
/// [`Graph::is_connected`].
pub fn threshold_graph(lambda: &Partition) -> Result<Graph, GraphError> {
    let n = lambda.len();
    if n == 0 {
        return Err(GraphError::InvalidSize);
    }
    let mut set = BTreeSet::new();
    for i in 1..=n {
        let d = lambda.part(i);
        if d > n - 1 {
            return Err(GraphError::NotThresholdSequence {
                degrees: lambda.clone(),
                realized: lambda.clone(),
            });
        }
        for j in (1..=n).filter(|&j| j != i).take(d) {
            set.insert((i.min(j), i.max(j)));
        }
    }
    let mut realized = vec![0usize; n];
    for &(a, b) in &set {
        realized[a - 1] += 1;
        realized[b - 1] += 1;
    }
    if realized != lambda.parts() {
        return Err(GraphError::NotThresholdSequence {
            degrees: lambda.clone(),
            realized: Partition::from_unsorted(realized),
        });
    }
    let labels = (1..=n).map(VertexLabel::Index).collect();
    let edges = set
        .into_iter()
        .map(|(a, b)| Edge {
            u: a - 1,
            v: b - 1,
            direction: 1,
            multiplicity: 1,
        })
        .collect();
    Ok(Graph::new(
        GraphKind::Threshold {
            degrees: lambda.clone(),
        },
        labels,
        edges,
    ))
}

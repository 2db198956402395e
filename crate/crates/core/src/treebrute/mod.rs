//! Brute-force spanning-tree enumeration, the independent oracle for every
//! determinant-based enumerator.
//!
//! Statistics are computed from their combinatorial definitions (vertex
//! degrees, edge directions, orientations), never from Laplacian weights.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::graphs::Graph;
use crate::laplacian::{tree_count, WeightScheme};
use crate::polyring::{Monomial, Polynomial, Variable};

/// Default limit on the number of trees an enumeration may produce.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("{predicted} spanning trees exceeds the cap of {cap}")]
    CapExceeded { predicted: BigInt, cap: u64 },
    #[error("statistic {stat} does not apply to this graph ({reason})")]
    SchemeMismatch {
        stat: TreeStatistic,
        reason: &'static str,
    },
}

/// One copy of a (possibly multiple) edge of the parent graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeEdge {
    /// Index into [`Graph::edges`].
    pub edge: usize,
    /// Which parallel copy, `0..multiplicity`.
    pub copy: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    pub edges: Vec<TreeEdge>,
}

impl SpanningTree {
    /// Tree degree of every vertex.
    pub fn degrees(&self, g: &Graph) -> Vec<u32> {
        let mut deg = vec![0u32; g.n_vertices()];
        for te in &self.edges {
            let e = &g.edges()[te.edge];
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// True when the edges connect every vertex without a cycle.
    pub fn is_spanning_tree_of(&self, g: &Graph) -> bool {
        let n = g.n_vertices();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for te in &self.edges {
            let e = &g.edges()[te.edge];
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }
}

/// Monomial attached to a spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeStatistic {
    /// `Π x_i^deg(i)`.
    Degree,
    /// `Π q_i^(#edges in direction i)`.
    Direction,
    /// Direction monomial times the decoupled degree monomial
    /// `Π_v (x(1,j_1)···x(r,j_r))^deg(v)`.
    DirDecoupled,
    /// Direction monomial times `Π_S (x_S / x_([n]∖S))^(deg(S)/2)` on `Q_n`.
    CubeSubstituted,
    /// `Π x_i^indeg(i) y_i^outdeg(i)`, each edge oriented towards its
    /// smaller endpoint.
    InOutDegree,
}

impl TreeStatistic {
    pub const ALL: [TreeStatistic; 5] = [
        TreeStatistic::Degree,
        TreeStatistic::Direction,
        TreeStatistic::DirDecoupled,
        TreeStatistic::CubeSubstituted,
        TreeStatistic::InOutDegree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeStatistic::Degree => "degree",
            TreeStatistic::Direction => "direction",
            TreeStatistic::DirDecoupled => "decoupled",
            TreeStatistic::CubeSubstituted => "cube",
            TreeStatistic::InOutDegree => "inout",
        }
    }

    /// The Laplacian substitution whose determinant enumerates this statistic.
    pub fn weight_scheme(self) -> WeightScheme {
        match self {
            TreeStatistic::Degree => WeightScheme::CayleyPrufer,
            TreeStatistic::Direction => WeightScheme::Direction,
            TreeStatistic::DirDecoupled => WeightScheme::Decoupled,
            TreeStatistic::CubeSubstituted => WeightScheme::CubeLaurent,
            TreeStatistic::InOutDegree => WeightScheme::ThresholdInOut,
        }
    }

    pub fn check(self, g: &Graph) -> Result<(), TreeError> {
        let fail = |reason| Err(TreeError::SchemeMismatch { stat: self, reason });
        match self {
            TreeStatistic::Degree => Ok(()),
            TreeStatistic::Direction | TreeStatistic::DirDecoupled
                if g.factor_sizes().is_none() =>
            {
                fail("requires a product of complete graphs")
            }
            TreeStatistic::CubeSubstituted if g.cube_dimension().is_none() => {
                fail("requires a hypercube")
            }
            TreeStatistic::InOutDegree if !g.is_plain() => {
                fail("requires integer-labelled vertices")
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TreeStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeStatistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TreeStatistic::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown statistic `{s}`"))
    }
}

/// Every spanning tree exactly once, parallel copies counted as distinct
/// edges.
///
/// Deletion/contraction over the edge list: the first remaining edge is
/// either contracted or deleted, and a bridge is always contracted. The
/// count is predicted from the Laplacian first and must not exceed `cap`.
pub fn all_spanning_trees(g: &Graph, cap: u64) -> Result<Vec<SpanningTree>, TreeError> {
    if !g.is_connected() {
        return Err(TreeError::DisconnectedGraph);
    }
    let predicted = tree_count(g);
    if predicted > BigInt::from(cap) {
        return Err(TreeError::CapExceeded { predicted, cap });
    }
    let mut copies = Vec::new();
    for (k, e) in g.edges().iter().enumerate() {
        for c in 0..e.multiplicity {
            copies.push((TreeEdge { edge: k, copy: c }, e.u, e.v));
        }
    }
    let n = g.n_vertices();
    let mut search = Search {
        copies: &copies,
        out: Vec::new(),
        chosen: Vec::with_capacity(n.saturating_sub(1)),
    };
    let comp: Vec<usize> = (0..n).collect();
    let remaining: Vec<usize> = (0..copies.len()).collect();
    search.run(&comp, n, &remaining);
    Ok(search.out)
}

struct Search<'a> {
    copies: &'a [(TreeEdge, usize, usize)],
    out: Vec<SpanningTree>,
    chosen: Vec<TreeEdge>,
}

impl Search<'_> {
    fn run(&mut self, comp: &[usize], components: usize, remaining: &[usize]) {
        if components == 1 {
            self.out.push(SpanningTree {
                edges: self.chosen.clone(),
            });
            return;
        }
        let Some((&first, rest)) = remaining.split_first() else {
            return;
        };
        let (te, u, v) = self.copies[first];
        let (cu, cv) = (comp[u], comp[v]);

        // contract
        let merged: Vec<usize> = comp.iter().map(|&c| if c == cv { cu } else { c }).collect();
        let kept: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&k| {
                let (_, a, b) = self.copies[k];
                merged[a] != merged[b]
            })
            .collect();
        self.chosen.push(te);
        self.run(&merged, components - 1, &kept);
        self.chosen.pop();

        // delete, unless it is a bridge
        if self.connected_without(comp, components, rest) {
            self.run(comp, components, rest);
        }
    }

    fn connected_without(&self, comp: &[usize], components: usize, edges: &[usize]) -> bool {
        let n = comp.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut joins = 0;
        for &k in edges {
            let (_, a, b) = self.copies[k];
            let (ra, rb) = (find(&mut parent, comp[a]), find(&mut parent, comp[b]));
            if ra != rb {
                parent[ra] = rb;
                joins += 1;
                if joins + 1 == components {
                    return true;
                }
            }
        }
        joins + 1 == components
    }
}

/// The monomial of `t` under `stat`.
pub fn statistic_monomial(
    g: &Graph,
    t: &SpanningTree,
    stat: TreeStatistic,
) -> Result<Monomial, TreeError> {
    stat.check(g)?;
    let deg = t.degrees(g);
    let direction = || {
        Monomial::from_exponents(
            t.edges
                .iter()
                .map(|te| (Variable::q(g.edges()[te.edge].direction as u32), 1)),
        )
    };
    let m = match stat {
        TreeStatistic::Degree => Monomial::from_exponents(
            deg.iter()
                .enumerate()
                .map(|(v, &d)| (Variable::x(v as u32 + 1), d as i32)),
        ),
        TreeStatistic::Direction => direction(),
        TreeStatistic::DirDecoupled => {
            let mut exps = Vec::new();
            for (v, &d) in deg.iter().enumerate() {
                let coords = g.coordinates(v).expect("product coordinates");
                for (i, &j) in coords.iter().enumerate() {
                    exps.push((Variable::xd(i as u32 + 1, j as u32), d as i32));
                }
            }
            direction().mul(&Monomial::from_exponents(exps))
        }
        TreeStatistic::CubeSubstituted => {
            let n = g.cube_dimension().expect("hypercube");
            // doubled exponents: x_i gets +deg(S) if i ∈ S, else -deg(S)
            let mut doubled: HashMap<u32, i64> = HashMap::new();
            for (v, &d) in deg.iter().enumerate() {
                let s = g.cube_subset(v).expect("subset label");
                for i in 0..n as u32 {
                    let sign = if s >> i & 1 == 1 { 1 } else { -1 };
                    *doubled.entry(i + 1).or_default() += sign * d as i64;
                }
            }
            let exps = doubled.into_iter().map(|(i, e2)| {
                assert!(e2 % 2 == 0, "odd cube exponent");
                (Variable::x(i), (e2 / 2) as i32)
            });
            direction().mul(&Monomial::from_exponents(exps))
        }
        TreeStatistic::InOutDegree => {
            let n = g.n_vertices();
            let (mut indeg, mut outdeg) = (vec![0i32; n], vec![0i32; n]);
            for te in &t.edges {
                let e = &g.edges()[te.edge];
                // oriented from the larger label to the smaller
                indeg[e.u.min(e.v)] += 1;
                outdeg[e.u.max(e.v)] += 1;
            }
            Monomial::from_exponents((0..n).flat_map(|v| {
                [
                    (Variable::x(v as u32 + 1), indeg[v]),
                    (Variable::y(v as u32 + 1), outdeg[v]),
                ]
            }))
        }
    };
    Ok(m)
}

/// `Σ_T stat(T)` over all spanning trees.
pub fn enumerate_sum(g: &Graph, stat: TreeStatistic) -> Result<Polynomial, TreeError> {
    enumerate_sum_with_cap(g, stat, DEFAULT_CAP)
}

pub fn enumerate_sum_with_cap(
    g: &Graph,
    stat: TreeStatistic,
    cap: u64,
) -> Result<Polynomial, TreeError> {
    stat.check(g)?;
    let trees = all_spanning_trees(g, cap)?;
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for t in &trees {
        *acc.entry(statistic_monomial(g, t, stat)?).or_default() += 1;
    }
    Ok(Polynomial::from_terms(acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{
        cartesian_product, complete_graph, hypercube, multigraph_kn, threshold_graph, Partition,
    };

    fn x(i: u32) -> Polynomial {
        Polynomial::var(Variable::x(i))
    }

    fn y(i: u32) -> Polynomial {
        Polynomial::var(Variable::y(i))
    }

    fn q(i: u32) -> Polynomial {
        Polynomial::var(Variable::q(i))
    }

    fn tree(g: &Graph, pairs: &[(usize, usize)]) -> SpanningTree {
        let edges = pairs
            .iter()
            .map(|&(a, b)| {
                let k = g
                    .edges()
                    .iter()
                    .position(|e| (e.u + 1, e.v + 1) == (a.min(b), a.max(b)))
                    .expect("edge present");
                TreeEdge { edge: k, copy: 0 }
            })
            .collect();
        SpanningTree { edges }
    }

    #[test]
    fn cayley_counts() {
        assert_eq!(
            all_spanning_trees(&complete_graph(3).unwrap(), DEFAULT_CAP)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            all_spanning_trees(&complete_graph(4).unwrap(), DEFAULT_CAP)
                .unwrap()
                .len(),
            16
        );
        assert_eq!(
            all_spanning_trees(&complete_graph(5).unwrap(), DEFAULT_CAP)
                .unwrap()
                .len(),
            125
        );
        assert_eq!(
            all_spanning_trees(&complete_graph(1).unwrap(), DEFAULT_CAP)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn cube_count() {
        let trees = all_spanning_trees(&hypercube(3).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(trees.len(), 384);
        let g = hypercube(3).unwrap();
        assert!(trees.iter().all(|t| t.is_spanning_tree_of(&g)));
        let distinct: std::collections::HashSet<Vec<TreeEdge>> = trees
            .iter()
            .map(|t| {
                let mut e = t.edges.clone();
                e.sort();
                e
            })
            .collect();
        assert_eq!(distinct.len(), 384);
    }

    #[test]
    fn parallel_edges_are_distinct_trees() {
        let g = multigraph_kn(2, 5).unwrap();
        assert_eq!(all_spanning_trees(&g, DEFAULT_CAP).unwrap().len(), 5);
        let g = multigraph_kn(3, 2).unwrap();
        assert_eq!(all_spanning_trees(&g, DEFAULT_CAP).unwrap().len(), 12);
    }

    #[test]
    fn cap_and_connectivity() {
        let g = complete_graph(5).unwrap();
        assert!(matches!(
            all_spanning_trees(&g, 100),
            Err(TreeError::CapExceeded { .. })
        ));
        let t = threshold_graph(&Partition::new(vec![1, 1, 0]).unwrap()).unwrap();
        assert_eq!(
            all_spanning_trees(&t, DEFAULT_CAP),
            Err(TreeError::DisconnectedGraph)
        );
    }

    #[test]
    fn statistic_examples() {
        let k3 = complete_graph(3).unwrap();
        let path = tree(&k3, &[(1, 2), (2, 3)]);
        assert_eq!(
            statistic_monomial(&k3, &path, TreeStatistic::Degree).unwrap(),
            Monomial::from_exponents([
                (Variable::x(1), 1),
                (Variable::x(2), 2),
                (Variable::x(3), 1)
            ])
        );
        let star = tree(&k3, &[(1, 2), (1, 3)]);
        assert_eq!(
            Polynomial::from(statistic_monomial(&k3, &star, TreeStatistic::InOutDegree).unwrap()),
            &(&x(1).pow(2) * &y(2)) * &y(3)
        );

        // Q_2 without the edge ∅-{1}: vertices ∅=0, {2}=1, {1}=2, {1,2}=3
        let q2 = hypercube(2).unwrap();
        let t = tree(&q2, &[(1, 2), (2, 4), (3, 4)]);
        assert_eq!(
            Polynomial::from(statistic_monomial(&q2, &t, TreeStatistic::CubeSubstituted).unwrap()),
            &(&q(1) * &q(2).pow(2)) * &x(2)
        );
        assert!(matches!(
            statistic_monomial(&k3, &path, TreeStatistic::CubeSubstituted),
            Err(TreeError::SchemeMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_sum_examples() {
        let k3 = complete_graph(3).unwrap();
        let f = &(&x(1) + &x(2)) + &x(3);
        assert_eq!(
            enumerate_sum(&k3, TreeStatistic::Degree).unwrap(),
            &(&(&x(1) * &x(2)) * &x(3)) * &f
        );
        let k2 = complete_graph(2).unwrap();
        let sq = cartesian_product(&[k2.clone(), k2]).unwrap();
        assert_eq!(
            enumerate_sum(&sq, TreeStatistic::Direction).unwrap(),
            (&(&q(1) * &q(2)) * &(&q(1) + &q(2))).scale(2)
        );
        let t = threshold_graph(&Partition::new(vec![2, 2, 2]).unwrap()).unwrap();
        let inner = &(&(&x(1) * &y(2)) + &(&x(2) * &y(2))) + &(&x(2) * &y(3));
        assert_eq!(
            enumerate_sum(&t, TreeStatistic::InOutDegree).unwrap(),
            &(&x(1) * &y(3)) * &inner
        );
    }

    #[test]
    fn degree_sums_and_orientation() {
        let g = threshold_graph(&Partition::new(vec![4, 4, 2, 2, 2]).unwrap()).unwrap();
        for t in all_spanning_trees(&g, DEFAULT_CAP).unwrap() {
            let deg = t.degrees(&g);
            assert_eq!(deg.iter().sum::<u32>() as usize, 2 * (g.n_vertices() - 1));
            let m = statistic_monomial(&g, &t, TreeStatistic::InOutDegree).unwrap();
            for v in 0..g.n_vertices() as u32 {
                let total = m.exponent(Variable::x(v + 1)) + m.exponent(Variable::y(v + 1));
                assert_eq!(total as u32, deg[v as usize]);
            }
        }
    }
}

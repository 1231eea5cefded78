//! Exhaustive endomorphism enumeration for arc-colored digraphs and simple graphs.

mod engine;
mod odd_cycles;
mod transformation;

pub use engine::{enumerate_endomorphisms, enumerate_graph_endomorphisms};
pub use transformation::{compose, TransformationMonoid};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct EndoConfig {
    /// Search nodes allowed across all workers before giving up.
    pub node_budget: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub odd_cycle_pruning: bool,
    /// Cap on work spent precomputing shortest odd cycles.
    pub preprocessing_limit: u64,
    pub max_vertices: usize,
}

impl Default for EndoConfig {
    fn default() -> Self {
        EndoConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            jobs: None,
            odd_cycle_pruning: true,
            preprocessing_limit: 500_000_000,
            max_vertices: 1 << 24,
        }
    }
}

impl EndoConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        EndoConfig { node_budget, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoError {
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("{vertices} vertices exceeds the cap of {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("the identity map is missing")]
    MissingIdentity,
    #[error("maps are not closed under composition")]
    NotClosed,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monoid;
    use crate::graphcore::{ArcColoredDigraph, SimpleGraph};

    fn brute(d: &ArcColoredDigraph) -> Vec<Vec<usize>> {
        let n = d.vertex_count();
        let mut out = Vec::new();
        let mut f = vec![0usize; n];
        loop {
            if d.is_endomorphism(&f) {
                out.push(f.clone());
            }
            let mut i = 0;
            while i < n && f[i] == n - 1 {
                f[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            f[i] += 1;
        }
        out.sort();
        out
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::new(
            (0..n).map(|i| i.to_string()).collect(),
            (0..n).map(|i| (i, (i + 1) % n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn directed_cycle_is_cyclic_group() {
        let d = ArcColoredDigraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec!["a".into()],
            vec![(0..4).map(|i| (i, (i + 1) % 4)).collect()],
        )
        .unwrap();
        let end = enumerate_endomorphisms(&d, &EndoConfig::default()).unwrap();
        assert_eq!(end.len(), 4);
        assert!(end.table().unwrap().is_isomorphic(&Monoid::cyclic_group(4)));
    }

    #[test]
    fn matches_brute_force_with_loops() {
        let d = ArcColoredDigraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec!["a".into(), "b".into()],
            vec![vec![(0, 1), (1, 1), (2, 3)], vec![(1, 0), (3, 3), (2, 2)]],
        )
        .unwrap();
        for jobs in [Some(1), None] {
            let cfg = EndoConfig { jobs, ..EndoConfig::default() };
            assert_eq!(enumerate_endomorphisms(&d, &cfg).unwrap().maps(), brute(&d).as_slice());
        }
    }

    #[test]
    fn odd_cycles_counts() {
        // C5 has 10 automorphisms and no proper endomorphisms; C7 maps onto C5 never
        let end = enumerate_graph_endomorphisms(&cycle(5), &EndoConfig::default()).unwrap();
        assert_eq!(end.len(), 10);
        let plain = EndoConfig { odd_cycle_pruning: false, ..EndoConfig::default() };
        assert_eq!(enumerate_graph_endomorphisms(&cycle(7), &plain).unwrap().len(), 14);
        // C4 folds: 4^... brute force count is 16 + 16 + ... check against plain search
        let a = enumerate_graph_endomorphisms(&cycle(6), &EndoConfig::default()).unwrap();
        let b = enumerate_graph_endomorphisms(&cycle(6), &plain).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let edgeless = SimpleGraph::new((0..8).map(|i| i.to_string()).collect(), vec![]).unwrap();
        let err = enumerate_graph_endomorphisms(&edgeless, &EndoConfig::with_budget(1000));
        assert_eq!(err.unwrap_err(), EndoError::BudgetExceeded { budget: 1000 });
    }

    #[test]
    fn empty_digraph() {
        let d = ArcColoredDigraph::new(vec![], vec![], vec![]).unwrap();
        assert_eq!(enumerate_endomorphisms(&d, &EndoConfig::default()).unwrap().len(), 1);
    }
}

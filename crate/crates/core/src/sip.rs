//! The rigid gadget H^k (a subdivided K4) and the product that replaces every colored arc
//! of a digraph by a copy of it, producing a simple graph with the same endomorphisms.

use std::collections::VecDeque;

use crate::graphcore::{ArcColoredDigraph, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SipError {
    #[error("the digraph has a loop")]
    HasLoops,
    #[error("some vertex has no outgoing or no incoming arc")]
    MinDegreeViolation,
    #[error("k = {k} is too small for {colors} colors")]
    KTooSmall { k: usize, colors: usize },
    #[error("the map is not an endomorphism")]
    NotEndomorphism,
}

/// Subdivided K4 on branch vertices b0..b3 with its three bounded faces and anchor paths.
#[derive(Clone, Debug)]
pub struct HpGraph {
    pub k: usize,
    pub graph: SimpleGraph,
    pub branch: [usize; 4],
    pub faces: [Vec<usize>; 3],
    /// Anchor vertices for outgoing ends, ordered from the end nearest b1.
    pub plus: Vec<usize>,
    /// Anchor vertices for incoming ends, ordered from the end nearest b2.
    pub minus: Vec<usize>,
}

fn distances(g: &SimpleGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Builds H^k for k ≥ 1. Vertices: b0..b3, then the inner vertices of b0b2 (1), b0b3 (2),
/// b1b2 (2k+1), b2b3 (2k−1) and b3b1 (2k), each path listed from its first endpoint.
pub fn hp_graph(k: usize) -> HpGraph {
    assert!(k >= 1, "H^k needs k >= 1");
    let mut labels: Vec<String> = (0..4).map(|i| format!("b{i}")).collect();
    let mut edges = vec![(0, 1)];
    let mut path = |from: usize, to: usize, inner: usize, labels: &mut Vec<String>| {
        let mut p = vec![from];
        for i in 1..=inner {
            labels.push(format!("p{from}{to}_{i}"));
            p.push(labels.len() - 1);
        }
        p.push(to);
        for w in p.windows(2) {
            edges.push((w[0], w[1]));
        }
        p
    };
    let p02 = path(0, 2, 1, &mut labels);
    let p03 = path(0, 3, 2, &mut labels);
    let p12 = path(1, 2, 2 * k + 1, &mut labels);
    let p23 = path(2, 3, 2 * k - 1, &mut labels);
    let p31 = path(3, 1, 2 * k, &mut labels);
    let graph = SimpleGraph::new(labels, edges).expect("subdivided K4 is simple");

    let rev = |p: &[usize]| p.iter().rev().copied().collect::<Vec<_>>();
    let join = |parts: &[Vec<usize>]| {
        // consecutive parts share their endpoints; the closing vertex is dropped
        let mut cyc: Vec<usize> = Vec::new();
        for p in parts {
            cyc.extend_from_slice(&p[usize::from(!cyc.is_empty())..]);
        }
        cyc.pop();
        cyc
    };
    let z1 = join(&[p12.clone(), rev(&p02), vec![0, 1]]);
    let z2 = join(&[p23.clone(), rev(&p03), p02.clone()]);
    let z3 = join(&[p31.clone(), vec![1, 0], p03.clone()]);

    let g = 2 * k + 5;
    let far = |face: &[usize], a: usize, b: usize| {
        let (da, db) = (distances(&graph, a), distances(&graph, b));
        face.iter().copied().filter(|&v| 4 * da[v] >= g && 4 * db[v] >= g).collect::<Vec<_>>()
    };
    let plus = far(&z1, 1, 2);
    let minus = far(&z2, 2, 3);
    HpGraph { k, graph, branch: [0, 1, 2, 3], faces: [z1, z2, z3], plus, minus }
}

/// Smallest k ≥ 2 whose anchor sets both have at least `colors` vertices.
pub fn choose_k(colors: usize) -> usize {
    (2..)
        .find(|&k| {
            let h = hp_graph(k);
            h.plus.len().min(h.minus.len()) >= colors
        })
        .expect("anchor sets grow without bound")
}

/// The product graph with the bookkeeping needed to move maps between D and Ď.
#[derive(Clone, Debug)]
pub struct SipProduct {
    pub graph: SimpleGraph,
    pub gadget: HpGraph,
    base_vertices: usize,
    /// block_start[c][a]: first vertex of the gadget copy for the a-th arc of color c.
    block_start: Vec<Vec<usize>>,
}

/// Replaces each arc (x, y) of color c by a copy of H^k joined by {x, c⁺} and {y, c⁻}.
/// `k = None` picks `choose_k(number of colors)`.
pub fn sip_product(d: &ArcColoredDigraph, k: Option<usize>) -> Result<SipProduct, SipError> {
    if !d.is_loopless() {
        return Err(SipError::HasLoops);
    }
    let stats = d.degree_stats();
    if d.vertex_count() > 0 && (stats.min_out == 0 || stats.min_in == 0) {
        return Err(SipError::MinDegreeViolation);
    }
    let colors = d.color_count();
    let k = k.unwrap_or_else(|| choose_k(colors.max(1)));
    if k < 2 {
        return Err(SipError::KTooSmall { k, colors });
    }
    let gadget = hp_graph(k);
    if gadget.plus.len() < colors || gadget.minus.len() < colors {
        return Err(SipError::KTooSmall { k, colors });
    }
    let h = gadget.graph.vertex_count();
    let mut labels: Vec<String> = d.vertex_labels().to_vec();
    let mut edges = Vec::with_capacity((gadget.graph.edge_count() + 2) * d.arc_count());
    let mut block_start = Vec::with_capacity(colors);
    for c in 0..colors {
        let mut starts = Vec::with_capacity(d.arcs(c).len());
        for (a, &(x, y)) in d.arcs(c).iter().enumerate() {
            let base = labels.len();
            starts.push(base);
            let color = &d.color_labels()[c];
            labels.extend(gadget.graph.labels().iter().map(|l| format!("{color}:{a}:{l}")));
            edges.extend(gadget.graph.edges().iter().map(|&(u, v)| (base + u, base + v)));
            edges.push((x, base + gadget.plus[c]));
            edges.push((y, base + gadget.minus[c]));
        }
        block_start.push(starts);
    }
    debug_assert_eq!(labels.len(), d.vertex_count() + h * d.arc_count());
    let graph = SimpleGraph::new(labels, edges).expect("product is simple");
    Ok(SipProduct { graph, gadget, base_vertices: d.vertex_count(), block_start })
}

impl SipProduct {
    pub fn k(&self) -> usize {
        self.gadget.k
    }

    /// Extends φ ∈ End(D) by sending the copy for arc (x, y) onto the copy for (φx, φy).
    pub fn lift(&self, d: &ArcColoredDigraph, phi: &[usize]) -> Result<Vec<usize>, SipError> {
        if phi.len() != self.base_vertices || !d.is_endomorphism(phi) {
            return Err(SipError::NotEndomorphism);
        }
        let h = self.gadget.graph.vertex_count();
        let mut map = phi.to_vec();
        for c in 0..d.color_count() {
            let arcs = d.arcs(c);
            for &(x, y) in arcs {
                let target = arcs.binary_search(&(phi[x], phi[y])).expect("φ is an endomorphism");
                let to = self.block_start[c][target];
                map.extend(to..to + h);
            }
        }
        Ok(map)
    }

    /// Restriction of a map of Ď to the original vertices.
    pub fn project(&self, psi: &[usize]) -> Vec<usize> {
        psi[..self.base_vertices].to_vec()
    }
}

use super::{GraphError, SimpleGraph};

/// A digraph whose arcs are grouped into color classes; loops are allowed.
///
/// Arcs of each color are kept sorted by (from, to) and, separately, by (to, from)
/// so that out- and in-neighborhoods are contiguous slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcColoredDigraph {
    vertex_labels: Vec<String>,
    color_labels: Vec<String>,
    arcs: Vec<Vec<(usize, usize)>>,
    reversed: Vec<Vec<(usize, usize)>>,
}

/// Per-vertex, per-color degrees plus the global extrema used throughout the constructions.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeStats {
    /// `out_degree[v][c]` = deg⁺_c(v).
    #[serde(skip)]
    pub out_degree: Vec<Vec<usize>>,
    #[serde(skip)]
    pub in_degree: Vec<Vec<usize>>,
    pub max_out: usize,
    pub max_in: usize,
    pub max_degree: usize,
    pub min_out: usize,
    pub min_in: usize,
    pub min_degree: usize,
    /// Largest in- or out-degree within a single color.
    pub max_color_degree: usize,
}

impl DegreeStats {
    pub fn out_total(&self, v: usize) -> usize {
        self.out_degree[v].iter().sum()
    }

    pub fn in_total(&self, v: usize) -> usize {
        self.in_degree[v].iter().sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_total(v) + self.in_total(v)
    }
}

/// Incremental construction of an [`ArcColoredDigraph`].
#[derive(Clone, Debug, Default)]
pub struct DigraphBuilder {
    vertex_labels: Vec<String>,
    color_labels: Vec<String>,
    arcs: Vec<Vec<(usize, usize)>>,
}

impl DigraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.vertex_labels.push(label.into());
        self.vertex_labels.len() - 1
    }

    pub fn add_color(&mut self, label: impl Into<String>) -> usize {
        self.color_labels.push(label.into());
        self.arcs.push(Vec::new());
        self.color_labels.len() - 1
    }

    pub fn add_arc(&mut self, color: usize, from: usize, to: usize) {
        self.arcs[color].push((from, to));
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn build(self) -> Result<ArcColoredDigraph, GraphError> {
        ArcColoredDigraph::new(self.vertex_labels, self.color_labels, self.arcs)
    }
}

impl ArcColoredDigraph {
    /// Duplicate arcs within a color are merged.
    pub fn new(
        vertex_labels: Vec<String>,
        color_labels: Vec<String>,
        mut arcs: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self, GraphError> {
        let n = vertex_labels.len();
        if arcs.len() != color_labels.len() {
            return Err(GraphError::Malformed(format!(
                "{} arc classes for {} colors",
                arcs.len(),
                color_labels.len()
            )));
        }
        for (c, class) in arcs.iter_mut().enumerate() {
            if let Some(&(u, v)) = class.iter().find(|&&(u, v)| u >= n || v >= n) {
                return Err(GraphError::Malformed(format!(
                    "arc ({u},{v}) of color {c} leaves the vertex range 0..{n}"
                )));
            }
            class.sort_unstable();
            class.dedup();
        }
        let reversed = arcs
            .iter()
            .map(|class| {
                let mut r: Vec<_> = class.iter().map(|&(u, v)| (v, u)).collect();
                r.sort_unstable();
                r
            })
            .collect();
        Ok(ArcColoredDigraph { vertex_labels, color_labels, arcs, reversed })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn color_count(&self) -> usize {
        self.color_labels.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn color_labels(&self) -> &[String] {
        &self.color_labels
    }

    pub fn arcs(&self, color: usize) -> &[(usize, usize)] {
        &self.arcs[color]
    }

    /// Total number of arcs, each color counted separately.
    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn has_arc(&self, color: usize, from: usize, to: usize) -> bool {
        self.arcs[color].binary_search(&(from, to)).is_ok()
    }

    fn range(list: &[(usize, usize)], v: usize) -> &[(usize, usize)] {
        let lo = list.partition_point(|&(a, _)| a < v);
        let hi = list.partition_point(|&(a, _)| a <= v);
        &list[lo..hi]
    }

    pub fn out_neighbors(&self, color: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        Self::range(&self.arcs[color], v).iter().map(|&(_, w)| w)
    }

    pub fn in_neighbors(&self, color: usize, v: usize) -> impl Iterator<Item = usize> + '_ {
        Self::range(&self.reversed[color], v).iter().map(|&(_, w)| w)
    }

    pub fn is_loopless(&self) -> bool {
        self.arcs.iter().all(|class| class.iter().all(|&(u, v)| u != v))
    }

    /// Colors of the loops at v.
    pub fn loop_colors(&self, v: usize) -> Vec<usize> {
        (0..self.color_count()).filter(|&c| self.has_arc(c, v, v)).collect()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.vertex_count();
        let k = self.color_count();
        let mut out_degree = vec![vec![0; k]; n];
        let mut in_degree = vec![vec![0; k]; n];
        for (c, class) in self.arcs.iter().enumerate() {
            for &(u, v) in class {
                out_degree[u][c] += 1;
                in_degree[v][c] += 1;
            }
        }
        let outs: Vec<usize> = out_degree.iter().map(|r| r.iter().sum()).collect();
        let ins: Vec<usize> = in_degree.iter().map(|r| r.iter().sum()).collect();
        let max_color_degree = out_degree
            .iter()
            .chain(in_degree.iter())
            .flat_map(|r| r.iter().copied())
            .max()
            .unwrap_or(0);
        DegreeStats {
            max_out: outs.iter().copied().max().unwrap_or(0),
            max_in: ins.iter().copied().max().unwrap_or(0),
            max_degree: (0..n).map(|v| outs[v] + ins[v]).max().unwrap_or(0),
            min_out: outs.iter().copied().min().unwrap_or(0),
            min_in: ins.iter().copied().min().unwrap_or(0),
            min_degree: (0..n).map(|v| outs[v] + ins[v]).min().unwrap_or(0),
            max_color_degree,
            out_degree,
            in_degree,
        }
    }

    /// Edge {u, v} whenever u ≠ v are joined by an arc of some color in some direction.
    pub fn underlying_simple_graph(&self) -> SimpleGraph {
        let edges: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .flatten()
            .filter(|&&(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        SimpleGraph::new(self.vertex_labels.clone(), edges).expect("loops removed")
    }

    /// Connected components of the underlying simple graph.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        self.underlying_simple_graph().components()
    }

    /// Whether `map` sends every arc onto an arc of the same color.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        map.len() == self.vertex_count()
            && map.iter().all(|&x| x < self.vertex_count())
            && self
                .arcs
                .iter()
                .enumerate()
                .all(|(c, class)| class.iter().all(|&(u, v)| self.has_arc(c, map[u], map[v])))
    }
}

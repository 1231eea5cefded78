//! Degree-reducing blow-up: every vertex becomes a closed walk over two new colors per
//! original color, and each original arc is kept between dedicated port vertices.

use std::collections::HashMap;

use crate::graphcore::{ArcColoredDigraph, DigraphBuilder, Walk};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error("the digraph has no colors")]
    NoColors,
    #[error("the map is not an endomorphism")]
    NotEndomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Slot {
    OnePlus,
    TwoPlus,
    OneMinus,
    TwoMinus,
}

impl Slot {
    const ALL: [Slot; 4] = [Slot::OnePlus, Slot::TwoPlus, Slot::OneMinus, Slot::TwoMinus];

    fn tag(self) -> &'static str {
        match self {
            Slot::OnePlus => "1+",
            Slot::TwoPlus => "2+",
            Slot::OneMinus => "1-",
            Slot::TwoMinus => "2-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct BlowupVertex {
    pub base: usize,
    pub slot: Slot,
    pub color: usize,
}

/// The blown-up digraph together with the correspondence to the original vertices.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub digraph: ArcColoredDigraph,
    vertices: Vec<BlowupVertex>,
    index: HashMap<BlowupVertex, usize>,
    base_vertices: usize,
    base_colors: usize,
}

/// Color index of the port-connecting color.
pub const PORT_COLOR: usize = 0;

/// Index in D′ of the copy of base color c.
pub fn arc_color(c: usize) -> usize {
    1 + 3 * c
}

pub fn plus_color(c: usize) -> usize {
    2 + 3 * c
}

pub fn minus_color(c: usize) -> usize {
    3 + 3 * c
}

/// Port slots exist per color: (v, 2⁺, c) only if v has an outgoing c-arc and
/// (v, 2⁻, c) only if v has an incoming c-arc.
pub fn blow_up(d: &ArcColoredDigraph) -> Result<Blowup, BlowupError> {
    let k = d.color_count();
    if k == 0 {
        return Err(BlowupError::NoColors);
    }
    let n = d.vertex_count();
    let stats = d.degree_stats();
    let mut b = DigraphBuilder::new();
    b.add_color("0");
    for label in d.color_labels() {
        b.add_color(label.clone());
        b.add_color(format!("{label}+"));
        b.add_color(format!("{label}-"));
    }
    let mut vertices = Vec::new();
    let mut index = HashMap::new();
    for v in 0..n {
        for slot in Slot::ALL {
            for c in 0..k {
                let present = match slot {
                    Slot::OnePlus | Slot::OneMinus => true,
                    Slot::TwoPlus => stats.out_degree[v][c] >= 1,
                    Slot::TwoMinus => stats.in_degree[v][c] >= 1,
                };
                if present {
                    let bv = BlowupVertex { base: v, slot, color: c };
                    let i = b.add_vertex(format!(
                        "({},{},{})",
                        d.vertex_labels()[v],
                        slot.tag(),
                        d.color_labels()[c]
                    ));
                    vertices.push(bv);
                    index.insert(bv, i);
                }
            }
        }
    }
    let at = |v: usize, slot: Slot, c: usize| index[&BlowupVertex { base: v, slot, color: c }];
    for v in 0..n {
        for c in 0..k {
            if stats.out_degree[v][c] >= 1 {
                b.add_arc(PORT_COLOR, at(v, Slot::OnePlus, c), at(v, Slot::TwoPlus, c));
            }
            if stats.in_degree[v][c] >= 1 {
                b.add_arc(PORT_COLOR, at(v, Slot::TwoMinus, c), at(v, Slot::OneMinus, c));
            }
            let (next_plus, next_minus) = if c + 1 < k {
                (at(v, Slot::OnePlus, c + 1), at(v, Slot::OneMinus, c + 1))
            } else {
                (at(v, Slot::OneMinus, 0), at(v, Slot::OnePlus, 0))
            };
            b.add_arc(plus_color(c), at(v, Slot::OnePlus, c), next_plus);
            b.add_arc(minus_color(c), at(v, Slot::OneMinus, c), next_minus);
        }
    }
    for c in 0..k {
        for &(u, v) in d.arcs(c) {
            b.add_arc(arc_color(c), at(u, Slot::TwoPlus, c), at(v, Slot::TwoMinus, c));
        }
    }
    Ok(Blowup {
        digraph: b.build().expect("indices in range"),
        vertices,
        index,
        base_vertices: n,
        base_colors: k,
    })
}

impl Blowup {
    pub fn vertex(&self, i: usize) -> BlowupVertex {
        self.vertices[i]
    }

    pub fn index_of(&self, v: BlowupVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// The closed walk (v,1⁺,1), ..., (v,1⁺,|K|), (v,1⁻,1), ..., (v,1⁻,|K|), (v,1⁺,1).
    pub fn walk_of(&self, v: usize) -> Walk {
        let k = self.base_colors;
        let at = |slot, c| self.index[&BlowupVertex { base: v, slot, color: c }];
        let mut w = Walk::new(at(Slot::OnePlus, 0));
        for c in 1..k {
            w.push(plus_color(c - 1), at(Slot::OnePlus, c));
        }
        w.push(plus_color(k - 1), at(Slot::OneMinus, 0));
        for c in 1..k {
            w.push(minus_color(c - 1), at(Slot::OneMinus, c));
        }
        w.push(minus_color(k - 1), at(Slot::OnePlus, 0));
        w
    }

    /// φ′((v, slot, c)) = (φ(v), slot, c).
    pub fn lift(&self, d: &ArcColoredDigraph, phi: &[usize]) -> Result<Vec<usize>, BlowupError> {
        if phi.len() != self.base_vertices || !d.is_endomorphism(phi) {
            return Err(BlowupError::NotEndomorphism);
        }
        Ok(self
            .vertices
            .iter()
            .map(|bv| self.index[&BlowupVertex { base: phi[bv.base], ..*bv }])
            .collect())
    }

    /// The base map read off the images of the (v, 1⁺, 1) vertices.
    pub fn project(&self, psi: &[usize]) -> Vec<usize> {
        (0..self.base_vertices)
            .map(|v| {
                let i = self.index[&BlowupVertex { base: v, slot: Slot::OnePlus, color: 0 }];
                self.vertices[psi[i]].base
            })
            .collect()
    }
}

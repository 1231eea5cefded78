//! Encoding of a finite lattice L as an arc-colored digraph whose endomorphism monoid is
//! (L, ∧), with every color class of in- and out-degree at most 2.

mod chain;

use std::collections::HashMap;

pub use chain::{bracket, chains, tilde, Chain};

use crate::algebra::{Lattice, LinearExtension};
use crate::graphcore::{ArcColoredDigraph, Walk};

pub const DEFAULT_CHAIN_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("more than {cap} chains")]
    SizeOverflow { cap: usize },
    #[error("bad chain: {0}")]
    BadChain(String),
    #[error("the elements whose petals are fixed do not form a principal ideal")]
    NotPrincipal,
    #[error("the map differs from the retraction onto the ideal below {0}")]
    Mismatch(usize),
    #[error("map of length {got} on {expected} vertices")]
    WrongLength { got: usize, expected: usize },
}

/// The seven color families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EncColor {
    S(usize),
    R(usize),
    C(usize, usize),
    CPrime(usize, usize),
    H(usize, usize),
    I(usize, usize),
    J(usize, usize),
}

impl EncColor {
    pub fn label(&self) -> String {
        match *self {
            EncColor::S(x) => format!("s:{x}"),
            EncColor::R(x) => format!("r:{x}"),
            EncColor::C(x, y) => format!("c:{x},{y}"),
            EncColor::CPrime(x, y) => format!("c':{x},{y}"),
            EncColor::H(x, y) => format!("h:{x},{y}"),
            EncColor::I(x, y) => format!("i:{x},{y}"),
            EncColor::J(x, y) => format!("j:{x},{y}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeEncoding {
    pub digraph: ArcColoredDigraph,
    lattice: Lattice,
    ext: LinearExtension,
    chains: Vec<Chain>,
    /// (chain, level) per vertex.
    vertices: Vec<(Chain, usize)>,
    index: HashMap<(Chain, usize), usize>,
    colors: Vec<EncColor>,
    color_index: HashMap<EncColor, usize>,
}

struct ArcSink<'a> {
    ext: &'a LinearExtension,
    index: &'a HashMap<(Chain, usize), usize>,
    arcs: Vec<(usize, usize)>,
}

impl ArcSink<'_> {
    /// Adds ((Q)_x, x) → ((R)_y, y) after bracket normalization.
    fn add(&mut self, q: &Chain, x: usize, r: &Chain, y: usize) {
        let from = self.vertex(q, x);
        let to = self.vertex(r, y);
        self.arcs.push((from, to));
    }

    fn vertex(&self, q: &Chain, x: usize) -> usize {
        let b = bracket(self.ext, q, x);
        *self.index.get(&(b, x)).unwrap_or_else(|| panic!("({q:?}, {x}) is not a vertex"))
    }
}

/// Builds the encoding for L along the linear extension ≤*.
pub fn build_encoding(
    l: &Lattice,
    ext: &LinearExtension,
    cap: usize,
) -> Result<LatticeEncoding, EncodingError> {
    let n = l.size();
    let all = chains(l, ext, cap).ok_or(EncodingError::SizeOverflow { cap })?;
    let chain_pos: HashMap<&Chain, usize> = all.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut keys: Vec<(usize, usize)> = Vec::new();
    for q in &all {
        for &x in ext.order() {
            keys.push((chain_pos[&bracket(ext, q, x)], ext.position(x)));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    let vertices: Vec<(Chain, usize)> =
        keys.iter().map(|&(c, p)| (all[c].clone(), ext.order()[p])).collect();
    let index: HashMap<(Chain, usize), usize> =
        vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();

    let bottom = l.bottom();
    let top = l.top();
    let lt = |x: usize, y: usize| x != y && l.leq(x, y);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| lt(bottom, x) && lt(x, y))
        .collect();
    let incomparable: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| {
            !l.leq(x, y) && !l.leq(y, x) && ext.position(x) < ext.position(y)
        })
        .collect();

    let mut colors: Vec<EncColor> = Vec::new();
    colors.extend((0..n).map(EncColor::S));
    colors.extend((0..n).filter(|&x| x != bottom).map(EncColor::R));
    for family in [EncColor::C, EncColor::CPrime, EncColor::H, EncColor::I] {
        colors.extend(pairs.iter().map(|&(x, y)| family(x, y)));
    }
    colors.extend(incomparable.iter().map(|&(x, y)| EncColor::J(x, y)));

    let zero = Chain::bottom();
    let chain2 = |prime: bool, a: usize| Chain { prime, upper: vec![a] };
    let mut classes = Vec::with_capacity(colors.len());
    for &color in &colors {
        let mut sink = ArcSink { ext, index: &index, arcs: Vec::new() };
        match color {
            EncColor::S(x) if x != top => {
                let y = ext.successor(x).expect("x is not the maximum of ≤*");
                for q in &all {
                    sink.add(q, x, q, y);
                }
            }
            EncColor::S(x) => {
                for q in &all {
                    sink.add(q, x, &tilde(l, ext, q), bottom);
                }
            }
            EncColor::R(x) => {
                for q in all.iter().filter(|q| q.is_bottom() || q.second() != Some(x)) {
                    for y in 0..n {
                        sink.add(q, y, q, y);
                    }
                }
            }
            EncColor::C(x, y) | EncColor::CPrime(x, y) => {
                let prime = matches!(color, EncColor::CPrime(..));
                let members = all.iter().filter(|q| {
                    q.is_bottom()
                        || (q.prime == prime
                            && q.second() == Some(x)
                            && l.leq(q.top().expect("non-bottom"), y))
                });
                for q in members {
                    if prime {
                        let unprimed = q.with_prime(false);
                        sink.add(&unprimed, y, q, bottom);
                        sink.add(&unprimed, y, q, top);
                    } else {
                        sink.add(q, y, q, bottom);
                    }
                }
            }
            EncColor::H(x, y) => {
                sink.add(&chain2(false, y), y, &Chain { prime: false, upper: vec![x, y] }, bottom);
                sink.add(&zero, y, &zero, bottom);
            }
            EncColor::I(x, y) => {
                let members = all.iter().filter(|q| {
                    !q.prime && q.upper.len() >= 2 && q.upper[q.upper.len() - 2..] == [x, y]
                });
                for q in members {
                    let without_y = Chain { prime: false, upper: q.upper[..q.upper.len() - 1].to_vec() };
                    let without_xy =
                        Chain { prime: false, upper: q.upper[..q.upper.len() - 2].to_vec() };
                    sink.add(q, y, &without_y, y);
                    sink.add(&without_y, y, &without_y, y);
                    sink.add(&without_xy, y, &without_xy, y);
                }
            }
            EncColor::J(x, y) => {
                let z = l.join(x, y);
                let xz = Chain { prime: false, upper: vec![x, z] };
                let yz = Chain { prime: false, upper: vec![y, z] };
                sink.add(&xz, z, &yz, z);
                sink.add(&chain2(false, x), z, &zero, z);
                sink.add(&zero, z, &chain2(false, y), z);
                sink.add(&zero, z, &zero, z);
            }
        }
        classes.push(sink.arcs);
    }

    let vertex_labels = vertices
        .iter()
        .map(|(q, x)| format!("({},{x})", q.display(bottom)))
        .collect();
    let digraph = ArcColoredDigraph::new(
        vertex_labels,
        colors.iter().map(EncColor::label).collect(),
        classes,
    )
    .expect("arcs reference existing vertices");
    let color_index = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Ok(LatticeEncoding {
        digraph,
        lattice: l.clone(),
        ext: ext.clone(),
        chains: all,
        vertices,
        index,
        colors,
        color_index,
    })
}

impl LatticeEncoding {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn extension(&self) -> &LinearExtension {
        &self.ext
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn colors(&self) -> &[EncColor] {
        &self.colors
    }

    pub fn color_index(&self, c: EncColor) -> Option<usize> {
        self.color_index.get(&c).copied()
    }

    pub fn vertex(&self, i: usize) -> &(Chain, usize) {
        &self.vertices[i]
    }

    /// Index of the vertex ([Q]_x, x).
    pub fn vertex_index(&self, q: &Chain, x: usize) -> Option<usize> {
        self.index.get(&(bracket(&self.ext, q, x), x)).copied()
    }

    fn at(&self, q: &Chain, x: usize) -> usize {
        self.vertex_index(q, x).expect("vertex exists")
    }

    /// W_Q for Q in the chain list: ([Q]_{L_1}, L_1), ..., ([Q]_{L_n}, L_n), (Q̃, 0̂).
    pub fn base_walk(&self, q: &Chain) -> Walk {
        let order = self.ext.order();
        let mut w = Walk::new(self.at(q, order[0]));
        for pair in order.windows(2) {
            w.push(self.color_index[&EncColor::S(pair[0])], self.at(q, pair[1]));
        }
        let last = *order.last().expect("L is nonempty");
        let t = tilde(&self.lattice, &self.ext, q);
        w.push(self.color_index[&EncColor::S(last)], self.at(&t, self.lattice.bottom()));
        w
    }

    /// W_Q for a chain Q ⊆ L ∖ {0̂} (given ≤*-sorted), by unfolding into base walks.
    pub fn upper_walk(&self, upper: &[usize]) -> Result<Walk, EncodingError> {
        let l = &self.lattice;
        if upper.is_empty() || upper.contains(&l.bottom()) {
            return Err(EncodingError::BadChain(format!("{upper:?}")));
        }
        if upper.windows(2).any(|p| !l.leq(p[0], p[1]) || p[0] == p[1]) {
            return Err(EncodingError::BadChain(format!("{upper:?} is not an increasing chain")));
        }
        let down = chain::down_sorted(l, &self.ext, upper[0]);
        let mut walk = self.base_walk(&Chain { prime: false, upper: upper.to_vec() });
        for &d in &down[1..down.len() - 1] {
            let mut next = vec![d];
            next.extend_from_slice(upper);
            walk = walk.concat(&self.upper_walk(&next)?).expect("consecutive walks meet");
        }
        let last = self.base_walk(&Chain { prime: true, upper: upper.to_vec() });
        Ok(walk.concat(&last).expect("consecutive walks meet"))
    }

    /// The petal of x; for x = 0̂ this is the closed walk W_{{0̂}}.
    pub fn petal(&self, x: usize) -> Walk {
        if x == self.lattice.bottom() {
            self.base_walk(&Chain::bottom())
        } else {
            self.upper_walk(&[x]).expect("single elements form chains")
        }
    }

    /// φ_w: intersect every chain with the down-set of w in L⁺.
    pub fn phi(&self, w: usize) -> Vec<usize> {
        let l = &self.lattice;
        self.vertices
            .iter()
            .map(|(q, x)| {
                let keeps_prime = q.prime && w != l.bottom();
                let upper: Vec<usize> = q.upper.iter().copied().filter(|&u| l.leq(u, w)).collect();
                let p = if (q.prime && !keeps_prime) || (keeps_prime && upper.is_empty()) {
                    Chain::bottom()
                } else {
                    Chain { prime: keeps_prime, upper }
                };
                self.at(&p, *x)
            })
            .collect()
    }

    /// The largest x whose petal φ fixes vertex by vertex, checking that the fixed petals
    /// form the ideal below it and that φ agrees with φ_x.
    pub fn fixed_petal_ideal(&self, phi: &[usize]) -> Result<usize, EncodingError> {
        let n = self.vertices.len();
        if phi.len() != n {
            return Err(EncodingError::WrongLength { got: phi.len(), expected: n });
        }
        let l = &self.lattice;
        let fixed: Vec<usize> = (0..l.size())
            .filter(|&x| self.petal(x).vertices().iter().all(|&v| phi[v] == v))
            .collect();
        if fixed.is_empty() {
            return Err(EncodingError::NotPrincipal);
        }
        let ell = l.join_all(&fixed);
        let ideal: Vec<usize> = (0..l.size()).filter(|&y| l.leq(y, ell)).collect();
        if ideal != fixed {
            return Err(EncodingError::NotPrincipal);
        }
        if self.phi(ell) != phi {
            return Err(EncodingError::Mismatch(ell));
        }
        Ok(ell)
    }
}

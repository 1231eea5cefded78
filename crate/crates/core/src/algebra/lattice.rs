use std::collections::HashMap;

use super::{AlgebraError, Monoid, Poset, DEFAULT_SIZE_CAP};

/// A finite lattice with precomputed meet and join tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

/// The join-irreducible elements of a lattice together with their induced order.
#[derive(Clone, Debug)]
pub struct JoinIrreducibles {
    pub poset: Poset,
    /// `elements[i]` is the lattice element represented by vertex i of `poset`.
    pub elements: Vec<usize>,
}

/// Down-set lattice of a poset, with each element's down-set listed explicitly.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub lattice: Lattice,
    pub ideals: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn from_poset(poset: Poset) -> Result<Self, AlgebraError> {
        let n = poset.size();
        let bound = |x: usize, y: usize, lower: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&z| {
                    if lower {
                        poset.leq(z, x) && poset.leq(z, y)
                    } else {
                        poset.leq(x, z) && poset.leq(y, z)
                    }
                })
                .collect();
            cands.iter().copied().find(|&z| {
                cands.iter().all(|&w| if lower { poset.leq(w, z) } else { poset.leq(z, w) })
            })
        };
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = bound(x, y, true).ok_or(AlgebraError::NoMeet(x, y))?;
                join[x * n + y] = bound(x, y, false).ok_or(AlgebraError::NoJoin(x, y))?;
            }
        }
        let bottom = (0..n).find(|&x| (0..n).all(|y| poset.leq(x, y))).expect("meets exist");
        let top = (0..n).find(|&x| (0..n).all(|y| poset.leq(y, x))).expect("joins exist");
        Ok(Lattice { poset, meet, join, bottom, top })
    }

    /// Order x ≤ y ⇔ x·y = x; the monoid identity becomes the top.
    pub fn from_meet_monoid(m: &Monoid) -> Result<Self, AlgebraError> {
        if !m.is_commutative() || !m.is_idempotent() {
            return Err(AlgebraError::NotCommutativeIdempotent);
        }
        let n = m.size();
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = m.mul(x, y) == x;
            }
        }
        let poset = Poset::from_flat(n, leq)?;
        let lattice = Lattice::from_poset(poset)?;
        debug_assert_eq!(lattice.top, m.identity());
        Ok(lattice)
    }

    pub fn chain(n: usize) -> Lattice {
        Lattice::from_poset(Poset::chain(n)).expect("chains are lattices")
    }

    pub fn boolean(n: usize) -> Result<Lattice, AlgebraError> {
        Lattice::from_poset(Poset::boolean_lattice_poset(n, DEFAULT_SIZE_CAP)?)
    }

    /// 0̂ = 0, three atoms 1, 2, 3, 1̂ = 4.
    pub fn m3() -> Lattice {
        let p = Poset::from_relations(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]);
        Lattice::from_poset(p.expect("poset")).expect("lattice")
    }

    /// The pentagon: 0̂ = 0 < 1 < 2 < 4 = 1̂ and 0 < 3 < 4 with 3 incomparable to 1, 2.
    pub fn n5() -> Lattice {
        let p = Poset::from_relations(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        Lattice::from_poset(p.expect("poset")).expect("lattice")
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y]
    }

    pub fn join_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.bottom, |acc, &x| self.join(acc, x))
    }

    /// (L, ∧) with identity 1̂.
    pub fn meet_monoid(&self) -> Monoid {
        Monoid::from_flat(self.size(), self.top, self.meet.clone()).expect("meet is a monoid")
    }

    /// Elements covering exactly one element, in index order.
    pub fn join_irreducibles(&self) -> JoinIrreducibles {
        let n = self.size();
        let elements: Vec<usize> = (0..n)
            .filter(|&y| (0..n).filter(|&x| self.poset.covers(x, y)).count() == 1)
            .collect();
        JoinIrreducibles { poset: self.poset.induced(&elements), elements }
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z))
                })
            })
        })
    }

    /// Down-sets of `p` ordered by inclusion; sorted by size, then by bitmask.
    pub fn ideal_lattice(p: &Poset, cap: usize) -> Result<IdealLattice, AlgebraError> {
        let n = p.size();
        if n > 63 {
            return Err(AlgebraError::SizeOverflow { what: "poset for ideal lattice", size: n, cap: 63 });
        }
        let down: Vec<u64> = (0..n)
            .map(|x| p.down_set(x).iter().fold(0u64, |m, &y| m | (1 << y)))
            .collect();
        let mut seen: HashMap<u64, ()> = HashMap::new();
        let mut stack = vec![0u64];
        seen.insert(0, ());
        while let Some(ideal) = stack.pop() {
            for x in 0..n {
                if ideal & (1 << x) == 0 && down[x] & !ideal == 1 << x {
                    let next = ideal | (1 << x);
                    if seen.insert(next, ()).is_none() {
                        if seen.len() > cap {
                            return Err(AlgebraError::SizeOverflow {
                                what: "ideal lattice",
                                size: seen.len(),
                                cap,
                            });
                        }
                        stack.push(next);
                    }
                }
            }
        }
        let mut masks: Vec<u64> = seen.into_keys().collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let k = masks.len();
        let mut leq = vec![false; k * k];
        for i in 0..k {
            for j in 0..k {
                leq[i * k + j] = masks[i] & !masks[j] == 0;
            }
        }
        let lattice = Lattice::from_poset(Poset::from_flat(k, leq)?)?;
        let ideals = masks
            .iter()
            .map(|&m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
            .collect();
        Ok(IdealLattice { lattice, ideals })
    }
}

/// A linear extension ≤* of a lattice order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearExtension {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl LinearExtension {
    pub fn new(lattice: &Lattice, order: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = lattice.size();
        if order.len() != n {
            return Err(AlgebraError::NotLinearExtension("wrong length".into()));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &x) in order.iter().enumerate() {
            if x >= n || position[x] != usize::MAX {
                return Err(AlgebraError::NotLinearExtension("not a permutation".into()));
            }
            position[x] = i;
        }
        for x in 0..n {
            for y in 0..n {
                if lattice.leq(x, y) && position[x] > position[y] {
                    return Err(AlgebraError::NotLinearExtension(format!(
                        "{x} ≤ {y} but {y} comes first"
                    )));
                }
            }
        }
        Ok(LinearExtension { order, position })
    }

    /// Sort by (height above 0̂, index).
    pub fn canonical(lattice: &Lattice) -> Self {
        let h = lattice.poset().heights();
        let mut order: Vec<usize> = (0..lattice.size()).collect();
        order.sort_by_key(|&x| (h[x], x));
        LinearExtension::new(lattice, order).expect("height order extends the lattice order")
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, x: usize) -> usize {
        self.position[x]
    }

    /// Element following x in ≤*, if any.
    pub fn successor(&self, x: usize) -> Option<usize> {
        self.order.get(self.position[x] + 1).copied()
    }
}

use super::AlgebraError;

/// A finite partial order stored as a dense `leq` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self, AlgebraError> {
        let n = leq.len();
        let mut flat = Vec::with_capacity(n * n);
        for row in &leq {
            if row.len() != n {
                return Err(AlgebraError::MalformedTable("order matrix is not square".into()));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, flat)
    }

    pub fn from_flat(size: usize, leq: Vec<bool>) -> Result<Self, AlgebraError> {
        if size == 0 || leq.len() != size * size {
            return Err(AlgebraError::MalformedTable("bad order matrix size".into()));
        }
        let p = Poset { size, leq };
        for x in 0..size {
            if !p.leq(x, x) {
                return Err(AlgebraError::NotPartialOrder(format!("{x} ≤ {x} fails")));
            }
            for y in 0..size {
                if x != y && p.leq(x, y) && p.leq(y, x) {
                    return Err(AlgebraError::NotPartialOrder(format!(
                        "{x} and {y} violate antisymmetry"
                    )));
                }
                for z in 0..size {
                    if p.leq(x, y) && p.leq(y, z) && !p.leq(x, z) {
                        return Err(AlgebraError::NotPartialOrder(format!(
                            "{x} ≤ {y} ≤ {z} violates transitivity"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Reflexive-transitive closure of the given relation pairs (x, y) meaning x ≤ y.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Self, AlgebraError> {
        let mut leq = vec![false; size * size];
        for x in 0..size {
            leq[x * size + x] = true;
        }
        for &(x, y) in pairs {
            if x >= size || y >= size {
                return Err(AlgebraError::MalformedTable(format!("pair ({x},{y}) out of range")));
            }
            leq[x * size + y] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_flat(size, leq)
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_relations(n, &pairs).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_relations(n, &[]).expect("antichain is a poset")
    }

    /// Subsets of an n-set under containment; element i is the subset with bitmask i.
    pub fn boolean_lattice_poset(n: usize, cap: usize) -> Result<Poset, AlgebraError> {
        if n >= usize::BITS as usize - 1 || (1usize << n) > cap {
            return Err(AlgebraError::SizeOverflow {
                what: "Boolean lattice",
                size: if n < 63 { 1usize << n } else { usize::MAX },
                cap,
            });
        }
        let size = 1usize << n;
        let mut leq = vec![false; size * size];
        for x in 0..size {
            for y in 0..size {
                leq[x * size + y] = x & y == x;
            }
        }
        Ok(Poset { size, leq })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// x ≺ y: x < y with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.size).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    /// All cover pairs (x, y) with x ≺ y in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.size {
            for y in 0..self.size {
                if self.covers(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.size).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Subposet induced on `elements`, re-indexed in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let mut leq = vec![false; k * k];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                leq[i * k + j] = self.leq(x, y);
            }
        }
        Poset { size: k, leq }
    }

    /// Length of the longest chain from a minimal element up to x.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.size;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.down_set(x).len());
        let mut h = vec![0usize; n];
        for &x in &order {
            for y in 0..n {
                if self.lt(y, x) {
                    h[x] = h[x].max(h[y] + 1);
                }
            }
        }
        h
    }

    /// Every interval [x, z] whose shortest maximal chain has length 2 has at least 4 elements.
    pub fn is_thick(&self) -> bool {
        let n = self.size;
        for x in 0..n {
            for z in 0..n {
                if !self.lt(x, z) || self.covers(x, z) {
                    continue;
                }
                let middle_covers = (0..n).any(|y| self.covers(x, y) && self.covers(y, z));
                if !middle_covers {
                    continue;
                }
                let size = (0..n).filter(|&y| self.leq(x, y) && self.leq(y, z)).count();
                if size < 4 {
                    return false;
                }
            }
        }
        true
    }

    /// An order isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.size;
        if other.size != n {
            return None;
        }
        let sig = |p: &Poset, x: usize| {
            let below = (0..n).filter(|&y| p.leq(y, x)).count();
            let above = (0..n).filter(|&y| p.leq(x, y)).count();
            (below, above)
        };
        let s1: Vec<_> = (0..n).map(|x| sig(self, x)).collect();
        let s2: Vec<_> = (0..n).map(|x| sig(other, x)).collect();
        let mut a = s1.clone();
        let mut b = s2.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            p: &Poset,
            q: &Poset,
            s1: &[(usize, usize)],
            s2: &[(usize, usize)],
            x: usize,
            f: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if x == p.size {
                return true;
            }
            for y in 0..q.size {
                if used[y] || s1[x] != s2[y] {
                    continue;
                }
                let ok = (0..x).all(|w| {
                    p.leq(w, x) == q.leq(f[w], y) && p.leq(x, w) == q.leq(y, f[w])
                });
                if !ok {
                    continue;
                }
                f[x] = y;
                used[y] = true;
                if go(p, q, s1, s2, x + 1, f, used) {
                    return true;
                }
                used[y] = false;
            }
            false
        }
        if go(self, other, &s1, &s2, 0, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::new(vec![vec![true, true], vec![true, true]]).is_err());
        assert!(Poset::new(vec![vec![false]]).is_err());
    }

    #[test]
    fn thickness() {
        let b2 = Poset::boolean_lattice_poset(2, 4096).unwrap();
        let b3 = Poset::boolean_lattice_poset(3, 4096).unwrap();
        assert!(b2.is_thick());
        assert!(b3.is_thick());
        assert!(!Poset::chain(3).is_thick());
        assert!(Poset::chain(2).is_thick());
        assert!(Poset::antichain(3).is_thick());
    }

    #[test]
    fn boolean_poset_sizes() {
        assert_eq!(Poset::boolean_lattice_poset(1, 4096).unwrap(), Poset::chain(2));
        let b3 = Poset::boolean_lattice_poset(3, 4096).unwrap();
        assert_eq!(b3.size(), 8);
        assert_eq!(b3.cover_pairs().len(), 12);
        assert!(Poset::boolean_lattice_poset(13, 4096).is_err());
    }

    #[test]
    fn heights_and_isomorphism() {
        let b2 = Poset::boolean_lattice_poset(2, 4096).unwrap();
        assert_eq!(b2.heights(), vec![0, 1, 1, 2]);
        let relabeled = Poset::from_relations(4, &[(3, 0), (3, 1), (0, 2), (1, 2)]).unwrap();
        assert!(b2.isomorphism(&relabeled).is_some());
        assert!(b2.isomorphism(&Poset::chain(4)).is_none());
    }
}

use std::collections::VecDeque;

use super::AlgebraError;

/// Upper bound on the number of subsets closed during the minimal generating set search.
const GENERATOR_SEARCH_LIMIT: u64 = 20_000_000;

/// A finite monoid given by its multiplication table, `mul(x, y) = x·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
}

/// The three boolean classifications reported by `monoid predicates`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct MonoidPredicates {
    pub commutative: bool,
    pub idempotent: bool,
    pub completely_regular: bool,
}

impl Monoid {
    /// Validates a square table and identity index.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::MalformedTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::MalformedTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, identity, flat)
    }

    pub fn from_flat(size: usize, identity: usize, table: Vec<usize>) -> Result<Self, AlgebraError> {
        if size == 0 || table.len() != size * size {
            return Err(AlgebraError::MalformedTable(format!(
                "expected {} entries, found {}",
                size * size,
                table.len()
            )));
        }
        if identity >= size {
            return Err(AlgebraError::MalformedTable(format!(
                "identity {identity} out of range"
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v >= size) {
            return Err(AlgebraError::MalformedTable(format!("entry {bad} out of range")));
        }
        let m = Monoid { size, identity, table };
        for x in 0..size {
            if m.mul(identity, x) != x || m.mul(x, identity) != x {
                return Err(AlgebraError::BadIdentity(x));
            }
        }
        for x in 0..size {
            for y in 0..size {
                let xy = m.mul(x, y);
                for z in 0..size {
                    if m.mul(xy, z) != m.mul(x, m.mul(y, z)) {
                        return Err(AlgebraError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        Monoid { size: 1, identity: 0, table: vec![0] }
    }

    /// Z_n with identity 0 and element i standing for i mod n.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Monoid { size: n, identity: 0, table }
    }

    /// Pairs (a, b) are indexed as a * |other| + b.
    pub fn direct_product(&self, other: &Monoid) -> Monoid {
        let (n1, n2) = (self.size, other.size);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.mul(x / n2, y / n2);
                let b = other.mul(x % n2, y % n2);
                table[x * n + y] = a * n2 + b;
            }
        }
        Monoid { size: n, identity: self.identity * n2 + other.identity, table }
    }

    /// The opposite monoid, x ∘ y = y·x.
    pub fn opposite(&self) -> Monoid {
        let n = self.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = self.mul(y, x);
            }
        }
        Monoid { size: n, identity: self.identity, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn power(&self, x: usize, m: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..m {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.mul(x, x) == x)
    }

    /// Every x satisfies x^{m+1} = x for some 1 ≤ m ≤ |M|.
    pub fn is_completely_regular(&self) -> bool {
        (0..self.size).all(|x| {
            let mut p = self.mul(x, x);
            for _ in 1..=self.size {
                if p == x {
                    return true;
                }
                p = self.mul(p, x);
            }
            false
        })
    }

    pub fn predicates(&self) -> MonoidPredicates {
        MonoidPredicates {
            commutative: self.is_commutative(),
            idempotent: self.is_idempotent(),
            completely_regular: self.is_completely_regular(),
        }
    }

    /// |{x : xy = z}| ≤ k for all y, z.
    pub fn is_right_k_cancellative(&self, k: usize) -> bool {
        let n = self.size;
        let mut count = vec![0usize; n];
        for y in 0..n {
            count.iter_mut().for_each(|c| *c = 0);
            for x in 0..n {
                count[self.mul(x, y)] += 1;
            }
            if count.iter().any(|&c| c > k) {
                return false;
            }
        }
        true
    }

    /// |{y : xy = z}| ≤ k for all x, z.
    pub fn is_left_k_cancellative(&self, k: usize) -> bool {
        self.opposite().is_right_k_cancellative(k)
    }

    pub fn is_k_cancellative(&self, k: usize) -> bool {
        self.is_left_k_cancellative(k) || self.is_right_k_cancellative(k)
    }

    /// Membership vector of the submonoid generated by `gens` (always containing the identity).
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        self.extend_closure(&mut seen, gens, &[self.identity]);
        seen
    }

    /// Grows `seen` (a submonoid closed under right multiplication by `gens`) from `frontier`.
    fn extend_closure(&self, seen: &mut [bool], gens: &[usize], frontier: &[usize]) {
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &f in frontier {
            if !seen[f] {
                seen[f] = true;
            }
            queue.push_back(f);
        }
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        gens.iter().all(|&g| g < self.size) && self.closure(gens).iter().all(|&b| b)
    }

    /// Greedy generating set: scan elements in index order, keeping those not yet generated.
    pub fn greedy_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut seen = self.closure(&[]);
        for x in 0..self.size {
            if !seen[x] {
                gens.push(x);
                let members: Vec<usize> = (0..self.size).filter(|&y| seen[y]).collect();
                self.extend_closure(&mut seen, &gens, &members);
            }
        }
        gens
    }

    /// Smallest generating set; ties broken by the lexicographically least sorted index list.
    pub fn minimal_generating_set(&self) -> Result<Vec<usize>, AlgebraError> {
        let n = self.size;
        if n == 1 {
            return Ok(Vec::new());
        }
        // Elements outside the submonoid generated by everything else must always be chosen.
        let mut forced = Vec::new();
        for x in 0..n {
            if x == self.identity {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&y| y != x && y != self.identity).collect();
            if !self.closure(&others)[x] {
                forced.push(x);
            }
        }
        let optional: Vec<usize> = (0..n)
            .filter(|&x| x != self.identity && !forced.contains(&x))
            .collect();
        let base = self.closure(&forced);
        if base.iter().all(|&b| b) {
            return Ok(forced);
        }
        let mut budget = GENERATOR_SEARCH_LIMIT;
        for extra in 1..=optional.len() {
            let mut chosen = Vec::with_capacity(extra);
            if let Some(found) =
                self.search_generators(&forced, &optional, 0, extra, &mut chosen, &mut budget)?
            {
                let mut all = forced.clone();
                all.extend(found);
                all.sort_unstable();
                return Ok(all);
            }
        }
        unreachable!("the full element set generates the monoid")
    }

    fn search_generators(
        &self,
        forced: &[usize],
        optional: &[usize],
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        budget: &mut u64,
    ) -> Result<Option<Vec<usize>>, AlgebraError> {
        if remaining == 0 {
            if *budget == 0 {
                return Err(AlgebraError::GeneratorSearchTooLarge(self.size));
            }
            *budget -= 1;
            let mut gens = forced.to_vec();
            gens.extend_from_slice(chosen);
            return Ok(if self.generates(&gens) { Some(chosen.clone()) } else { None });
        }
        for i in start..=optional.len().saturating_sub(remaining) {
            chosen.push(optional[i]);
            let found =
                self.search_generators(forced, optional, i + 1, remaining - 1, chosen, budget)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Elements x with some y such that xy = yx = e.
    pub fn invertible_elements(&self) -> Vec<usize> {
        let e = self.identity;
        (0..self.size)
            .filter(|&x| (0..self.size).any(|y| self.mul(x, y) == e && self.mul(y, x) == e))
            .collect()
    }

    /// Sub-table on a subset closed under multiplication and containing the identity.
    pub fn submonoid(&self, elements: &[usize]) -> Result<Monoid, AlgebraError> {
        let mut index = vec![usize::MAX; self.size];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in elements {
            for &y in elements {
                let p = index[self.mul(x, y)];
                if p == usize::MAX {
                    return Err(AlgebraError::MalformedTable(
                        "subset is not closed under multiplication".into(),
                    ));
                }
                table.push(p);
            }
        }
        let id = index[self.identity];
        if id == usize::MAX {
            return Err(AlgebraError::MalformedTable("subset misses the identity".into()));
        }
        Monoid::from_flat(k, id, table)
    }

    /// Checks that `f` is a bijective homomorphism onto `other` preserving the identity.
    pub fn is_isomorphism(&self, other: &Monoid, f: &[usize]) -> bool {
        let n = self.size;
        if other.size != n || f.len() != n || f[self.identity] != other.identity {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in f {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|x| (0..n).all(|y| f[self.mul(x, y)] == other.mul(f[x], f[y])))
    }

    fn element_invariants(&self) -> Vec<[usize; 7]> {
        let n = self.size;
        (0..n)
            .map(|x| {
                // index and period of the cyclic subsemigroup generated by x
                let mut seen = vec![usize::MAX; n];
                let mut p = x;
                let mut step = 0;
                while seen[p] == usize::MAX {
                    seen[p] = step;
                    p = self.mul(p, x);
                    step += 1;
                }
                let index = seen[p];
                let period = step - seen[p];
                let right_fix = (0..n).filter(|&y| self.mul(x, y) == x).count();
                let left_fix = (0..n).filter(|&y| self.mul(y, x) == x).count();
                let mut row = vec![false; n];
                let mut col = vec![false; n];
                for y in 0..n {
                    row[self.mul(x, y)] = true;
                    col[self.mul(y, x)] = true;
                }
                [
                    usize::from(self.mul(x, x) == x),
                    index,
                    period,
                    right_fix,
                    left_fix,
                    row.iter().filter(|&&b| b).count(),
                    col.iter().filter(|&&b| b).count(),
                ]
            })
            .collect()
    }

    /// An isomorphism `self → other`, if one exists.
    pub fn isomorphism(&self, other: &Monoid) -> Option<Vec<usize>> {
        let n = self.size;
        if other.size != n {
            return None;
        }
        let inv1 = self.element_invariants();
        let inv2 = other.element_invariants();
        if inv1[self.identity] != inv2[other.identity] {
            return None;
        }
        let mut s1 = inv1.clone();
        let mut s2 = inv2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return None;
        }
        let gens = self.greedy_generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..n).filter(|&h| inv2[h] == inv1[g]).collect())
            .collect();
        let mut images = vec![0usize; gens.len()];
        self.iso_search(other, &gens, &candidates, 0, &mut images)
    }

    fn iso_search(
        &self,
        other: &Monoid,
        gens: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let f = self.extend_from_generators(other, gens, images)?;
            return if self.is_isomorphism(other, &f) { Some(f) } else { None };
        }
        for &h in &candidates[depth] {
            if images[..depth].contains(&h) {
                continue;
            }
            images[depth] = h;
            if let Some(f) = self.iso_search(other, gens, candidates, depth + 1, images) {
                return Some(f);
            }
        }
        None
    }

    /// Extends generator images along right multiplication; `None` on inconsistency.
    fn extend_from_generators(
        &self,
        other: &Monoid,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let n = self.size;
        let mut f = vec![usize::MAX; n];
        f[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(f[x], h);
                if f[y] == usize::MAX {
                    f[y] = fy;
                    queue.push_back(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        if f.contains(&usize::MAX) {
            None
        } else {
            Some(f)
        }
    }

    pub fn is_isomorphic(&self, other: &Monoid) -> bool {
        self.isomorphism(other).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn left_zero_adjoined() -> Monoid {
        // e = 0, a = 1, b = 2 with a·x = a, b·x = b for x ∈ {a, b}
        Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]], 0).unwrap()
    }

    fn brute_force_iso(a: &Monoid, b: &Monoid) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.size() == b.size() && perms(a.size()).iter().any(|f| a.is_isomorphism(b, f))
    }

    #[test]
    fn validates_small_tables() {
        assert!(Monoid::new(vec![vec![0]], 0).is_ok());
        assert!(Monoid::new(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
        assert!(Monoid::new(vec![vec![0, 1], vec![1, 1]], 0).is_ok());
        assert_eq!(
            Monoid::new(vec![vec![0, 1], vec![1, 1]], 1).unwrap_err(),
            AlgebraError::BadIdentity(0)
        );
        assert!(matches!(
            Monoid::new(vec![vec![0, 1], vec![1]], 0),
            Err(AlgebraError::MalformedTable(_))
        ));
        // e, a, b with ab = a, ba = a, aa = b, bb = b, and so on: not associative
        let bad = Monoid::new(vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 1]], 0);
        assert!(matches!(bad, Err(AlgebraError::NotAssociative(..))));
    }

    #[test]
    fn predicates_examples() {
        assert!(Monoid::cyclic_group(5).predicates().completely_regular);
        let chain = Monoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let p = chain.predicates();
        assert!(p.commutative && p.idempotent);
        // {e, a, z}: a² = e, z absorbing
        let m = Monoid::new(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]], 0).unwrap();
        assert!(!m.predicates().idempotent);
        assert!(m.predicates().completely_regular);
    }

    #[test]
    fn cancellativity() {
        assert!(Monoid::cyclic_group(4).is_k_cancellative(1));
        let lz = left_zero_adjoined();
        assert!(!lz.is_k_cancellative(1));
        assert!(lz.is_k_cancellative(2));
        assert!(lz.is_right_k_cancellative(2));
        assert!(!lz.is_left_k_cancellative(2));
        let chain = Monoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert!(chain.is_k_cancellative(2));
    }

    #[test]
    fn generating_sets() {
        assert_eq!(Monoid::cyclic_group(4).minimal_generating_set().unwrap(), vec![1]);
        assert!(Monoid::trivial().minimal_generating_set().unwrap().is_empty());
        // diamond 0̂ = 0, a = 1, b = 2, 1̂ = 3 as a meet-monoid with identity 3
        let meet = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]];
        let diamond = Monoid::new(meet, 3).unwrap();
        assert_eq!(diamond.minimal_generating_set().unwrap(), vec![1, 2]);
        let v4 = Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2));
        assert_eq!(v4.minimal_generating_set().unwrap(), vec![1, 2]);
    }

    #[test]
    fn invertibles() {
        assert_eq!(Monoid::cyclic_group(3).invertible_elements(), vec![0, 1, 2]);
        let chain = Monoid::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert_eq!(chain.invertible_elements(), vec![0]);
    }

    #[test]
    fn isomorphism_examples() {
        let z4 = Monoid::cyclic_group(4);
        let v4 = Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2));
        assert_eq!(z4.isomorphism(&z4), Some(vec![0, 1, 2, 3]));
        assert!(z4.isomorphism(&v4).is_none());
        let meet = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]];
        let swapped = vec![vec![0, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 2, 2], vec![0, 1, 2, 3]];
        let d1 = Monoid::new(meet, 3).unwrap();
        let d2 = Monoid::new(swapped, 3).unwrap();
        let f = d1.isomorphism(&d2).unwrap();
        assert!(d1.is_isomorphism(&d2, &f));
        assert!(d1.is_isomorphism(&d2, &[0, 2, 1, 3]));
        assert!(left_zero_adjoined().isomorphism(&left_zero_adjoined().opposite()).is_none());
    }

    #[test]
    fn isomorphism_matches_brute_force_on_small_monoids() {
        let ms = vec![
            Monoid::cyclic_group(4),
            Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2)),
            Monoid::cyclic_group(6),
            Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(3)),
            left_zero_adjoined(),
            left_zero_adjoined().opposite(),
            Monoid::new(vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]], 0).unwrap(),
            Monoid::new(vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]], 0).unwrap(),
            Monoid::new(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], 0).unwrap(),
        ];
        for a in &ms {
            for b in &ms {
                assert_eq!(a.is_isomorphic(b), brute_force_iso(a, b));
            }
        }
    }
}

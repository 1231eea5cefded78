use std::fmt;

use crate::algebra::{Lattice, LinearExtension};

/// A chain of L⁺ = L ∪ {0′} that contains 0̂ or 0′.
///
/// `upper` holds the elements above the bottom, sorted along ≤*. Since 0̂ and 0′ are
/// incomparable, exactly one of them is present: 0′ when `prime` is set, 0̂ otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub prime: bool,
    pub upper: Vec<usize>,
}

impl Chain {
    /// The chain {0̂}.
    pub fn bottom() -> Chain {
        Chain { prime: false, upper: Vec::new() }
    }

    pub fn len(&self) -> usize {
        1 + self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_bottom(&self) -> bool {
        !self.prime && self.upper.is_empty()
    }

    /// Q_2, the least element above the bottom.
    pub fn second(&self) -> Option<usize> {
        self.upper.first().copied()
    }

    /// Q^1 as an element of L; `None` when the maximum is the bottom.
    pub fn top(&self) -> Option<usize> {
        self.upper.last().copied()
    }

    pub fn with_prime(&self, prime: bool) -> Chain {
        Chain { prime, upper: self.upper.clone() }
    }

    pub fn display(&self, bottom: usize) -> ChainDisplay<'_> {
        ChainDisplay { chain: self, bottom }
    }
}

pub struct ChainDisplay<'a> {
    chain: &'a Chain,
    bottom: usize,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.prime {
            write!(f, "{{0'")?;
        } else {
            write!(f, "{{{}", self.bottom)?;
        }
        for x in &self.chain.upper {
            write!(f, ",{x}")?;
        }
        write!(f, "}}")
    }
}

/// ≤*-sorted down-set of x in L.
pub(crate) fn down_sorted(l: &Lattice, ext: &LinearExtension, x: usize) -> Vec<usize> {
    let mut d: Vec<usize> = (0..l.size()).filter(|&y| l.leq(y, x)).collect();
    d.sort_by_key(|&y| ext.position(y));
    d
}

/// All chains of L⁺ meeting {0̂, 0′} except {0′}, ordered by size, then by the ≤*-positions
/// of the upper elements, with the 0̂-variant before the 0′-variant.
pub fn chains(l: &Lattice, ext: &LinearExtension, cap: usize) -> Option<Vec<Chain>> {
    let upper_elems: Vec<usize> =
        ext.order().iter().copied().filter(|&x| x != l.bottom()).collect();
    let mut uppers: Vec<Vec<usize>> = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        let from = cur.last().map_or(0, |&x| upper_elems.iter().position(|&y| y == x).unwrap() + 1);
        for &y in &upper_elems[from..] {
            if cur.last().is_none_or(|&x| l.leq(x, y)) {
                let mut next = cur.clone();
                next.push(y);
                uppers.push(next.clone());
                stack.push(next);
                if 2 * uppers.len() > cap {
                    return None;
                }
            }
        }
    }
    let key = |u: &Vec<usize>| (u.len(), u.iter().map(|&x| ext.position(x)).collect::<Vec<_>>());
    uppers.sort_by_key(key);
    let mut out = Vec::with_capacity(2 * uppers.len());
    for upper in uppers {
        let nonempty = !upper.is_empty();
        out.push(Chain { prime: false, upper: upper.clone() });
        if nonempty {
            out.push(Chain { prime: true, upper });
        }
    }
    Some(out)
}

/// [Q]_x: collapses some two-element chains to {0̂}.
pub fn bracket(ext: &LinearExtension, q: &Chain, x: usize) -> Chain {
    if q.upper.len() == 1 {
        let (px, p2) = (ext.position(x), ext.position(q.upper[0]));
        if (!q.prime && px < p2) || (q.prime && px >= p2) {
            return Chain::bottom();
        }
    }
    q.clone()
}

fn insert_sorted(ext: &LinearExtension, upper: &mut Vec<usize>, x: usize) {
    let i = upper.partition_point(|&y| ext.position(y) < ext.position(x));
    upper.insert(i, x);
}

/// Q̃, the chain whose base walk continues the base walk of Q.
pub fn tilde(l: &Lattice, ext: &LinearExtension, q: &Chain) -> Chain {
    if q.is_bottom() {
        return q.clone();
    }
    if !q.prime {
        let down = down_sorted(l, ext, q.upper[0]);
        if down.len() >= 3 {
            let mut upper = q.upper.clone();
            insert_sorted(ext, &mut upper, down[1]);
            return Chain { prime: false, upper };
        }
        return q.with_prime(true);
    }
    if q.upper.len() == 1 {
        return Chain::bottom();
    }
    let down = down_sorted(l, ext, q.upper[1]);
    // 0-based: Q_2 = down[i - 1]
    let i = down.iter().position(|&y| y == q.upper[0]).expect("Q_2 lies below Q_3") + 1;
    if down.len() >= i + 2 {
        let mut upper = q.upper[1..].to_vec();
        insert_sorted(ext, &mut upper, down[i]);
        Chain { prime: false, upper }
    } else {
        Chain { prime: true, upper: q.upper[1..].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 0̂ = 0, a = 1, b = 2, 1̂ = 3
    fn diamond() -> (Lattice, LinearExtension) {
        let l = Lattice::boolean(2).unwrap();
        let ext = LinearExtension::canonical(&l);
        (l, ext)
    }

    fn ch(prime: bool, upper: &[usize]) -> Chain {
        Chain { prime, upper: upper.to_vec() }
    }

    #[test]
    fn diamond_chain_list() {
        let (l, ext) = diamond();
        let got = chains(&l, &ext, 1 << 20).unwrap();
        let want = vec![
            ch(false, &[]),
            ch(false, &[1]),
            ch(true, &[1]),
            ch(false, &[2]),
            ch(true, &[2]),
            ch(false, &[3]),
            ch(true, &[3]),
            ch(false, &[1, 3]),
            ch(true, &[1, 3]),
            ch(false, &[2, 3]),
            ch(true, &[2, 3]),
        ];
        assert_eq!(got, want);
        assert!(chains(&l, &ext, 10).is_none());
    }

    #[test]
    fn small_chain_lists() {
        let one = Lattice::chain(1);
        assert_eq!(chains(&one, &LinearExtension::canonical(&one), 100).unwrap(), vec![Chain::bottom()]);
        let two = Lattice::chain(2);
        let got = chains(&two, &LinearExtension::canonical(&two), 100).unwrap();
        assert_eq!(got, vec![ch(false, &[]), ch(false, &[1]), ch(true, &[1])]);
    }

    #[test]
    fn bracket_cases() {
        let (_, ext) = diamond();
        for x in 0..4 {
            assert_eq!(bracket(&ext, &Chain::bottom(), x), Chain::bottom());
        }
        assert_eq!(bracket(&ext, &ch(false, &[2]), 1), Chain::bottom());
        assert_eq!(bracket(&ext, &ch(false, &[2]), 2), ch(false, &[2]));
        assert_eq!(bracket(&ext, &ch(true, &[1]), 2), Chain::bottom());
        assert_eq!(bracket(&ext, &ch(true, &[2]), 1), ch(true, &[2]));
        assert_eq!(bracket(&ext, &ch(true, &[1, 3]), 3), ch(true, &[1, 3]));
    }

    #[test]
    fn tilde_cases() {
        let (l, ext) = diamond();
        assert_eq!(tilde(&l, &ext, &Chain::bottom()), Chain::bottom());
        assert_eq!(tilde(&l, &ext, &ch(false, &[1])), ch(true, &[1]));
        assert_eq!(tilde(&l, &ext, &ch(false, &[3])), ch(false, &[1, 3]));
        assert_eq!(tilde(&l, &ext, &ch(true, &[1])), Chain::bottom());
        assert_eq!(tilde(&l, &ext, &ch(true, &[1, 3])), ch(false, &[2, 3]));
        assert_eq!(tilde(&l, &ext, &ch(true, &[2, 3])), ch(true, &[3]));
    }

    #[test]
    fn tilde_is_bracket_stable() {
        for l in [Lattice::boolean(2).unwrap(), Lattice::m3(), Lattice::n5(), Lattice::chain(4)] {
            let ext = LinearExtension::canonical(&l);
            let all = chains(&l, &ext, 1 << 20).unwrap();
            for q in &all {
                let t = tilde(&l, &ext, q);
                assert!(all.contains(&t));
                assert_eq!(bracket(&ext, &t, l.bottom()), t);
                for x in 0..l.size() {
                    assert!(all.contains(&bracket(&ext, q, x)));
                }
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(ch(true, &[1, 3]).display(0).to_string(), "{0',1,3}");
        assert_eq!(ch(false, &[2]).display(0).to_string(), "{0,2}");
    }
}

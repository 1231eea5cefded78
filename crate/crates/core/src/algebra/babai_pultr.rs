use std::collections::HashMap;

use super::{AlgebraError, Monoid};

/// Which of the three families a transformation of Z_p × {1,2,3} belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BpKind {
    /// π_{c,d}: (a,1) ↦ (a+c,1), (a,2) ↦ (a+d,2), (a,3) ↦ (a+c+d,3).
    Translation { c: usize, d: usize },
    /// α with α(k,i) = (σ_i(k), 1).
    Collapse { sigma: [Vec<usize>; 3] },
    /// γ_x, the constant map onto point x.
    Constant { point: usize },
}

/// A self-map of Ω = Z_p × {1,2,3}; point (a, i) has index (i−1)·p + a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpTransformation {
    pub kind: BpKind,
    pub map: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BabaiPultrMonoid {
    pub p: usize,
    pub monoid: Monoid,
    /// Element i of `monoid` is `elements[i]`; translations come first, then collapses, then constants.
    pub elements: Vec<BpTransformation>,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// The completely regular monoid on Z_p × {1,2,3} whose group of units is Z_p².
pub fn babai_pultr_monoid(p: usize, cap: usize) -> Result<BabaiPultrMonoid, AlgebraError> {
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let fact: usize = (1..=p).product();
    let size = fact
        .checked_pow(3)
        .and_then(|s| s.checked_add(p * p + 3 * p))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(AlgebraError::SizeOverflow { what: "Babai–Pultr monoid", size, cap });
    }
    let point = |a: usize, i: usize| (i - 1) * p + a;
    let mut elements = Vec::with_capacity(size);
    for c in 0..p {
        for d in 0..p {
            let mut map = vec![0; 3 * p];
            for a in 0..p {
                map[point(a, 1)] = point((a + c) % p, 1);
                map[point(a, 2)] = point((a + d) % p, 2);
                map[point(a, 3)] = point((a + c + d) % p, 3);
            }
            elements.push(BpTransformation { kind: BpKind::Translation { c, d }, map });
        }
    }
    let perms = permutations(p);
    for s1 in &perms {
        for s2 in &perms {
            for s3 in &perms {
                let mut map = vec![0; 3 * p];
                for k in 0..p {
                    map[point(k, 1)] = point(s1[k], 1);
                    map[point(k, 2)] = point(s2[k], 1);
                    map[point(k, 3)] = point(s3[k], 1);
                }
                let sigma = [s1.clone(), s2.clone(), s3.clone()];
                elements.push(BpTransformation { kind: BpKind::Collapse { sigma }, map });
            }
        }
    }
    for x in 0..3 * p {
        elements.push(BpTransformation { kind: BpKind::Constant { point: x }, map: vec![x; 3 * p] });
    }
    let index: HashMap<&[usize], usize> =
        elements.iter().enumerate().map(|(i, t)| (t.map.as_slice(), i)).collect();
    debug_assert_eq!(index.len(), size);
    let mut table = Vec::with_capacity(size * size);
    let mut buf = vec![0; 3 * p];
    for f in &elements {
        for g in &elements {
            for (v, slot) in buf.iter_mut().enumerate() {
                *slot = f.map[g.map[v]];
            }
            table.push(*index.get(buf.as_slice()).ok_or_else(|| {
                AlgebraError::MalformedTable("family not closed under composition".into())
            })?);
        }
    }
    let monoid = Monoid::from_flat(size, 0, table)?;
    Ok(BabaiPultrMonoid { p, monoid, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite() {
        assert_eq!(babai_pultr_monoid(4, 4096).unwrap_err(), AlgebraError::NotPrime(4));
        assert!(matches!(
            babai_pultr_monoid(5, 4096),
            Err(AlgebraError::SizeOverflow { .. })
        ));
    }

    #[test]
    fn p2_structure() {
        let bp = babai_pultr_monoid(2, 4096).unwrap();
        assert_eq!(bp.monoid.size(), 18);
        assert!(bp.monoid.is_completely_regular());
        let units = bp.monoid.invertible_elements();
        assert_eq!(units, vec![0, 1, 2, 3]);
        let group = bp.monoid.submonoid(&units).unwrap();
        let v4 = Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2));
        assert!(group.is_isomorphic(&v4));
    }

    #[test]
    fn product_classes() {
        let bp = babai_pultr_monoid(2, 4096).unwrap();
        let class = |i: usize| match bp.elements[i].kind {
            BpKind::Translation { .. } => 'P',
            BpKind::Collapse { .. } => 'S',
            BpKind::Constant { .. } => 'C',
        };
        let n = bp.monoid.size();
        for x in 0..n {
            for y in 0..n {
                let xy = class(bp.monoid.mul(x, y));
                let expected = match (class(x), class(y)) {
                    ('C', _) | (_, 'C') => 'C',
                    ('P', 'P') => 'P',
                    _ => 'S',
                };
                assert_eq!(xy, expected, "{x}·{y}");
            }
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
    }
}

//! Colored right Cayley graphs of monoids and their loopless augmentation.

use crate::algebra::Monoid;
use crate::graphcore::{ArcColoredDigraph, DigraphBuilder};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CayleyError {
    #[error("the given elements do not generate the monoid")]
    NotGenerating,
    #[error("{given} generators for a monoid of size {size}; at most size - 1 allowed")]
    TooManyGenerators { given: usize, size: usize },
    #[error("generator {0} is not an element of the monoid")]
    NotAnElement(usize),
}

fn check_generators(m: &Monoid, gens: &[usize]) -> Result<(), CayleyError> {
    if let Some(&g) = gens.iter().find(|&&g| g >= m.size()) {
        return Err(CayleyError::NotAnElement(g));
    }
    if !m.generates(gens) {
        return Err(CayleyError::NotGenerating);
    }
    Ok(())
}

/// One color per generator c, with arcs (x, x·c).
pub fn cayley_colored(m: &Monoid, gens: &[usize]) -> Result<ArcColoredDigraph, CayleyError> {
    check_generators(m, gens)?;
    let arcs = gens.iter().map(|&c| (0..m.size()).map(|x| (x, m.mul(x, c))).collect()).collect();
    Ok(ArcColoredDigraph::new(
        (0..m.size()).map(|x| x.to_string()).collect(),
        gens.iter().map(|c| c.to_string()).collect(),
        arcs,
    )
    .expect("products stay in range"))
}

/// Adds a loop color at every vertex, then subdivides every arc (x, y) of color c into
/// x -c-> s -c'-> y. Colors come out as c_1, c_1', ..., c_m, c_m', loop, loop'.
pub fn augment_cayley(m: &Monoid, gens: &[usize]) -> Result<ArcColoredDigraph, CayleyError> {
    if gens.len() + 1 > m.size() {
        return Err(CayleyError::TooManyGenerators { given: gens.len(), size: m.size() });
    }
    let cay = cayley_colored(m, gens)?;
    let n = m.size();
    let mut base_labels: Vec<String> = cay.color_labels().to_vec();
    base_labels.push("loop".into());
    let mut classes: Vec<Vec<(usize, usize)>> =
        (0..cay.color_count()).map(|c| cay.arcs(c).to_vec()).collect();
    classes.push((0..n).map(|x| (x, x)).collect());

    let mut b = DigraphBuilder::new();
    for x in 0..n {
        b.add_vertex(x.to_string());
    }
    for (label, class) in base_labels.iter().zip(&classes) {
        let first = b.add_color(label.clone());
        let second = b.add_color(format!("{label}'"));
        for &(x, y) in class {
            let s = b.add_vertex(format!("{label}:{x}->{y}"));
            b.add_arc(first, x, s);
            b.add_arc(second, s, y);
        }
    }
    Ok(b.build().expect("indices in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{enumerate_endomorphisms, EndoConfig};

    fn end_table(d: &ArcColoredDigraph) -> Monoid {
        enumerate_endomorphisms(d, &EndoConfig::default()).unwrap().table().unwrap()
    }

    fn two_chain() -> Monoid {
        // 0 = bottom, 1 = top = identity, product = meet
        Monoid::new(vec![vec![0, 0], vec![0, 1]], 1).unwrap()
    }

    #[test]
    fn small_examples() {
        let t = cayley_colored(&Monoid::trivial(), &[]).unwrap();
        assert_eq!((t.vertex_count(), t.color_count()), (1, 0));
        let z3 = cayley_colored(&Monoid::cyclic_group(3), &[1]).unwrap();
        assert_eq!(z3.arcs(0), &[(0, 1), (1, 2), (2, 0)]);
        let ch = cayley_colored(&two_chain(), &[0]).unwrap();
        assert_eq!(ch.arcs(0), &[(0, 0), (1, 0)]);
    }

    #[test]
    fn errors() {
        assert_eq!(cayley_colored(&Monoid::cyclic_group(3), &[0]), Err(CayleyError::NotGenerating));
        assert_eq!(
            augment_cayley(&Monoid::cyclic_group(2), &[1, 0]),
            Err(CayleyError::TooManyGenerators { given: 2, size: 2 })
        );
        assert_eq!(cayley_colored(&Monoid::cyclic_group(2), &[5]), Err(CayleyError::NotAnElement(5)));
    }

    #[test]
    fn augmentation_counts() {
        let d = augment_cayley(&Monoid::cyclic_group(2), &[1]).unwrap();
        assert_eq!((d.vertex_count(), d.arc_count(), d.color_count()), (6, 8, 4));
        assert!(d.is_loopless());
        let t = augment_cayley(&Monoid::trivial(), &[]).unwrap();
        assert_eq!((t.vertex_count(), t.arc_count(), t.color_count()), (2, 2, 2));
        let s = d.degree_stats();
        assert!(s.min_out >= 1 && s.min_in >= 1);
        assert_eq!(d.color_labels(), &["1", "1'", "loop", "loop'"]);
    }

    #[test]
    fn endomorphisms_recover_monoid() {
        let z3 = Monoid::cyclic_group(3);
        let aug = augment_cayley(&z3, &[1]).unwrap();
        assert_eq!((aug.vertex_count(), aug.arc_count()), (9, 12));
        assert!(end_table(&aug).is_isomorphic(&z3));
        for m in [two_chain(), Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2))] {
            let gens = m.minimal_generating_set().unwrap();
            assert!(end_table(&cayley_colored(&m, &gens).unwrap()).is_isomorphic(&m));
            assert!(end_table(&augment_cayley(&m, &gens).unwrap()).is_isomorphic(&m));
        }
    }
}

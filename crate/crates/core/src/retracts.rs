//! Retracts of a host with commutative idempotent endomorphism monoid, private parts of
//! join-irreducibles, and the cover-graph minor they carry.

use crate::algebra::{Lattice, Poset};
use crate::endo::TransformationMonoid;
use crate::graphcore::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RetractError {
    #[error("the endomorphism monoid is not commutative and idempotent")]
    NotIdempotentCommutative,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Images of the retractions, indexed like the elements of `lattice`.
#[derive(Clone, Debug)]
pub struct RetractFamily {
    /// Position of each retraction in the transformation monoid.
    pub maps: Vec<usize>,
    pub images: Vec<Vec<usize>>,
    /// `inclusion[i][j]`: image i ⊆ image j.
    pub inclusion: Vec<Vec<bool>>,
    pub lattice: Lattice,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Orders the retracts by inclusion and checks that meets are intersections of images.
pub fn retract_lattice(t: &TransformationMonoid) -> Result<RetractFamily, RetractError> {
    let table = t.table().map_err(|e| RetractError::InvariantViolated(e.to_string()))?;
    if !table.is_commutative() || !table.is_idempotent() {
        return Err(RetractError::NotIdempotentCommutative);
    }
    let lattice = Lattice::from_meet_monoid(&table)
        .map_err(|e| RetractError::InvariantViolated(e.to_string()))?;
    let k = t.len();
    let images: Vec<Vec<usize>> = (0..k).map(|i| t.image(i)).collect();
    let inclusion: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| is_subset(&images[i], &images[j])).collect()).collect();
    for i in 0..k {
        for j in 0..k {
            if inclusion[i][j] != lattice.leq(i, j) {
                return Err(RetractError::InvariantViolated(format!(
                    "inclusion of images {i}, {j} disagrees with the lattice order"
                )));
            }
            if intersect(&images[i], &images[j]) != images[lattice.meet(i, j)] {
                return Err(RetractError::InvariantViolated(format!(
                    "images {i} and {j} do not meet in the image of their product"
                )));
            }
        }
    }
    Ok(RetractFamily { maps: (0..k).collect(), images, inclusion, lattice })
}

/// Cover graph of a poset; vertex labels are element indices.
pub fn cover_graph(p: &Poset) -> SimpleGraph {
    SimpleGraph::new((0..p.size()).map(|x| x.to_string()).collect(), p.cover_pairs())
        .expect("cover pairs are distinct and loop-free")
}

/// Join-irreducibles covered by y inside J(L).
fn lower_covers_in_j(l: &Lattice, j: &[usize], y: usize) -> Vec<usize> {
    let below: Vec<usize> = j.iter().copied().filter(|&x| x != y && l.leq(x, y)).collect();
    below
        .iter()
        .copied()
        .filter(|&x| !below.iter().any(|&z| z != x && l.leq(x, z)))
        .collect()
}

/// P(y): the component of R(y) ∖ ⋃_{x ∈ C} R(x) containing R(y) ∖ R(⋁C), where C is the set
/// of join-irreducibles covered by y in J(L). For minimal y (C = ∅) this is R(y) ∖ R(0̂).
pub fn private_part(
    host: &SimpleGraph,
    family: &RetractFamily,
    y: usize,
) -> Result<Vec<usize>, RetractError> {
    let l = &family.lattice;
    let j = l.join_irreducibles().elements;
    if !j.contains(&y) {
        return Err(RetractError::PreconditionFailed(format!("{y} is not join-irreducible")));
    }
    let covered = lower_covers_in_j(l, &j, y);
    let ry = &family.images[y];
    // R(0̂) lies in every R(x) for x in C; removing it too only matters when C is empty
    let removed: Vec<usize> = covered.iter().copied().chain([l.bottom()]).collect();
    let rest: Vec<usize> = ry
        .iter()
        .copied()
        .filter(|v| !removed.iter().any(|&x| family.images[x].binary_search(v).is_ok()))
        .collect();
    let join = l.join_all(&covered);
    let core: Vec<usize> =
        ry.iter().copied().filter(|v| family.images[join].binary_search(v).is_err()).collect();
    let Some(&first) = core.first() else {
        return Err(RetractError::InvariantViolated(format!("R({y}) ∖ R(⋁C) is empty")));
    };
    let component = host
        .induced_components(&rest)
        .into_iter()
        .find(|c| c.binary_search(&first).is_ok())
        .ok_or_else(|| RetractError::InvariantViolated("core vertex outside R(y)".into()))?;
    if !is_subset(&core, &component) {
        return Err(RetractError::InvariantViolated(format!(
            "R({y}) ∖ R(⋁C) is not inside one component"
        )));
    }
    Ok(component)
}

/// Branch sets in the host for the vertices of a target graph, with one host edge per
/// target edge (aligned with `target.edges()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub target: SimpleGraph,
    pub branch_sets: Vec<Vec<usize>>,
    pub cover_edges: Vec<(usize, usize)>,
}

/// Checks a minor model against the host alone; returns every failed condition.
pub fn verify_minor_model(host: &SimpleGraph, model: &MinorModel) -> Vec<String> {
    let mut failures = Vec::new();
    let n = host.vertex_count();
    if model.branch_sets.len() != model.target.vertex_count() {
        failures.push(format!(
            "{} branch sets for {} target vertices",
            model.branch_sets.len(),
            model.target.vertex_count()
        ));
        return failures;
    }
    let mut owner = vec![usize::MAX; n];
    for (i, set) in model.branch_sets.iter().enumerate() {
        if set.is_empty() {
            failures.push(format!("branch set {i} is empty"));
        }
        for &v in set {
            if v >= n {
                failures.push(format!("branch set {i} has vertex {v} outside the host"));
            } else if owner[v] != usize::MAX {
                failures.push(format!("vertex {v} is in branch sets {} and {i}", owner[v]));
            } else {
                owner[v] = i;
            }
        }
        if !set.is_empty() && set.iter().all(|&v| v < n) && !host.induces_connected(set) {
            failures.push(format!("branch set {i} is not connected"));
        }
    }
    if model.cover_edges.len() != model.target.edge_count() {
        failures.push(format!(
            "{} certificate edges for {} target edges",
            model.cover_edges.len(),
            model.target.edge_count()
        ));
        return failures;
    }
    for (&(a, b), &(u, v)) in model.target.edges().iter().zip(&model.cover_edges) {
        let ok = u < n
            && v < n
            && host.has_edge(u, v)
            && ((owner[u] == a && owner[v] == b) || (owner[u] == b && owner[v] == a));
        if !ok {
            failures.push(format!("target edge {{{a},{b}}} is not realized by host edge {{{u},{v}}}"));
        }
    }
    failures
}

/// The minor model together with any failed checks (only possible when thickness was waived).
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub model: MinorModel,
    /// Lattice element represented by each target vertex.
    pub elements: Vec<usize>,
    pub thick: bool,
    pub failures: Vec<String>,
}

/// Extracts the cover graph of J(L) as a minor of the host, with private parts as branch sets.
pub fn minor_witness(
    host: &SimpleGraph,
    family: &RetractFamily,
    allow_non_thick: bool,
) -> Result<MinorWitness, RetractError> {
    let ji = family.lattice.join_irreducibles();
    let thick = ji.poset.is_thick();
    if !thick && !allow_non_thick {
        return Err(RetractError::PreconditionFailed(
            "the poset of join-irreducibles is not thick".into(),
        ));
    }
    let mut failures = Vec::new();
    let mut branch_sets = Vec::with_capacity(ji.elements.len());
    for &y in &ji.elements {
        match private_part(host, family, y) {
            Ok(p) => branch_sets.push(p),
            Err(e) if allow_non_thick => {
                failures.push(format!("private part of {y}: {e}"));
                branch_sets.push(Vec::new());
            }
            Err(e) => return Err(e),
        }
    }
    let target = cover_graph(&ji.poset);
    let cover_edges = target
        .edges()
        .iter()
        .map(|&(a, b)| {
            let inb: std::collections::HashSet<usize> = branch_sets[b].iter().copied().collect();
            branch_sets[a]
                .iter()
                .find_map(|&u| host.neighbors(u).iter().find(|w| inb.contains(w)).map(|&w| (u, w)))
                .unwrap_or((usize::MAX, usize::MAX))
        })
        .collect();
    let model = MinorModel { target, branch_sets, cover_edges };
    failures.extend(verify_minor_model(host, &model));
    if !failures.is_empty() && !allow_non_thick {
        return Err(RetractError::InvariantViolated(failures.join("; ")));
    }
    Ok(MinorWitness { model, elements: ji.elements, thick, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LinearExtension;
    use crate::endo::{enumerate_endomorphisms, EndoConfig};
    use crate::lattice_encoding::{build_encoding, DEFAULT_CHAIN_CAP};

    fn family_of(l: &Lattice) -> (SimpleGraph, RetractFamily) {
        let e = build_encoding(l, &LinearExtension::canonical(l), DEFAULT_CHAIN_CAP).unwrap();
        let end = enumerate_endomorphisms(&e.digraph, &EndoConfig::default()).unwrap();
        (e.digraph.underlying_simple_graph(), retract_lattice(&end).unwrap())
    }

    #[test]
    fn cover_graphs() {
        assert_eq!(cover_graph(&Poset::chain(4)).edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(cover_graph(&Poset::antichain(3)).edge_count(), 0);
        let q3 = cover_graph(&Poset::boolean_lattice_poset(3, 64).unwrap());
        assert_eq!(q3.edge_count(), 12);
        assert!(q3.edges().iter().all(|&(u, v)| (u ^ v).count_ones() == 1));
    }

    #[test]
    fn rigid_host_has_one_retract() {
        let t = TransformationMonoid::from_maps(3, vec![vec![0, 1, 2]]).unwrap();
        let f = retract_lattice(&t).unwrap();
        assert_eq!(f.images, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn non_idempotent_rejected() {
        let t = TransformationMonoid::from_maps(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(retract_lattice(&t).unwrap_err(), RetractError::NotIdempotentCommutative);
    }

    #[test]
    fn two_chain_witness() {
        let (host, f) = family_of(&Lattice::chain(2));
        assert_eq!(f.images.len(), 2);
        assert!(f.inclusion[0][1] || f.inclusion[1][0]);
        let top = f.lattice.top();
        let p = private_part(&host, &f, top).unwrap();
        let want: Vec<usize> = f.images[top]
            .iter()
            .copied()
            .filter(|v| !f.images[f.lattice.bottom()].contains(v))
            .collect();
        assert_eq!(p, want);
        let w = minor_witness(&host, &f, false).unwrap();
        assert_eq!(w.model.branch_sets.len(), 1);
        assert_eq!(w.model.target.edge_count(), 0);
    }

    #[test]
    fn diamond_witness_has_disjoint_parts() {
        // J(B_2) is two incomparable atoms, so the cover graph has no edges
        let (host, f) = family_of(&Lattice::boolean(2).unwrap());
        assert_eq!(f.images.len(), 4);
        let w = minor_witness(&host, &f, false).unwrap();
        assert_eq!(w.model.branch_sets.len(), 2);
        assert!(w.failures.is_empty());
    }

    #[test]
    fn checker_catches_bad_models() {
        let host = SimpleGraph::new(
            (0..4).map(|i| i.to_string()).collect(),
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        let target = SimpleGraph::new(vec!["a".into(), "b".into()], vec![(0, 1)]).unwrap();
        let good = MinorModel {
            target: target.clone(),
            branch_sets: vec![vec![0], vec![1]],
            cover_edges: vec![(0, 1)],
        };
        assert!(verify_minor_model(&host, &good).is_empty());
        let split = MinorModel {
            target: target.clone(),
            branch_sets: vec![vec![0, 2], vec![1]],
            cover_edges: vec![(0, 1)],
        };
        assert_eq!(verify_minor_model(&host, &split).len(), 1);
        let overlapping = MinorModel {
            target,
            branch_sets: vec![vec![0], vec![0, 1]],
            cover_edges: vec![(1, 2)],
        };
        assert!(verify_minor_model(&host, &overlapping).len() >= 2);
    }
}

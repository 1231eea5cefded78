//! Independent oracles shared by the integration tests. Nothing here calls the search engine.

#![allow(dead_code)]

use std::collections::VecDeque;

use endoforge::algebra::{Lattice, Monoid, Poset};
use endoforge::graphcore::{ArcColoredDigraph, SimpleGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All maps V → V that preserve every colored arc, by filtering the |V|^|V| candidates.
pub fn naive_endomorphisms(d: &ArcColoredDigraph) -> Vec<Vec<usize>> {
    let n = d.vertex_count();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    if n == 0 {
        return vec![Vec::new()];
    }
    loop {
        let ok = (0..d.color_count())
            .all(|c| d.arcs(c).iter().all(|&(u, v)| d.has_arc(c, map[u], map[v])));
        if ok {
            out.push(map.clone());
        }
        // odometer increment, last coordinate fastest so the output is sorted
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
        }
    }
}

/// Composition table of a set of maps closed under composition, table[f][g] = f∘g.
pub fn compose_table(maps: &[Vec<usize>]) -> Monoid {
    let idx = |m: &Vec<usize>| maps.iter().position(|x| x == m).expect("closed under composition");
    let id: Vec<usize> = (0..maps[0].len()).collect();
    let table = maps
        .iter()
        .map(|f| maps.iter().map(|g| idx(&g.iter().map(|&x| f[x]).collect())).collect())
        .collect();
    Monoid::new(table, idx(&id)).expect("maps form a monoid")
}

/// Random colored digraph; `loops` allows u = v.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, colors: usize, density: f64, loops: bool) -> ArcColoredDigraph {
    let mut arcs = vec![Vec::new(); colors];
    for class in arcs.iter_mut() {
        for u in 0..n {
            for v in 0..n {
                if (loops || u != v) && rng.gen_bool(density) {
                    class.push((u, v));
                }
            }
        }
    }
    ArcColoredDigraph::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        (0..colors).map(|c| format!("c{c}")).collect(),
        arcs,
    )
    .expect("valid digraph")
}

/// Random loopless digraph in which every vertex has an outgoing and an incoming arc.
pub fn random_min_degree_digraph(rng: &mut ChaCha8Rng, n: usize, colors: usize, extra: usize) -> ArcColoredDigraph {
    let mut arcs = vec![Vec::new(); colors];
    // a random cyclic order guarantees δ⁺, δ⁻ ≥ 1
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    for i in 0..n {
        let c = rng.gen_range(0..colors);
        arcs[c].push((perm[i], perm[(i + 1) % n]));
    }
    for _ in 0..extra {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            arcs[rng.gen_range(0..colors)].push((u, v));
        }
    }
    ArcColoredDigraph::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        (0..colors).map(|c| format!("c{c}")).collect(),
        arcs,
    )
    .expect("valid digraph")
}

fn bfs(g: &SimpleGraph, s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Girth by deleting each edge and measuring the distance between its ends.
pub fn girth(g: &SimpleGraph) -> Option<usize> {
    let mut best = None;
    for &(u, v) in g.edges() {
        let rest: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&e| e != (u, v)).collect();
        let h = SimpleGraph::new(g.labels().to_vec(), rest).unwrap();
        let d = bfs(&h, u)[v];
        if d != usize::MAX {
            best = Some(best.map_or(d + 1, |b: usize| b.min(d + 1)));
        }
    }
    best
}

/// Every lattice on n elements up to isomorphism. Posets are enumerated as relations that
/// are upper triangular in a fixed linear extension (element 0 bottom, n−1 top).
pub fn lattices(n: usize) -> Vec<Lattice> {
    if n == 1 {
        return vec![Lattice::chain(1)];
    }
    let pairs: Vec<(usize, usize)> = (1..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| (i, j))).collect();
    let mut found: Vec<Lattice> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            leq[i][i] = true;
            leq[0][i] = true;
            leq[i][n - 1] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(leq[a][b] && leq[b][c]) || leq[a][c]))
        });
        if !transitive {
            continue;
        }
        let Ok(p) = Poset::new(leq) else { continue };
        let Ok(l) = Lattice::from_poset(p) else { continue };
        if !found.iter().any(|f| brute_poset_iso(f.poset(), l.poset())) {
            found.push(l);
        }
    }
    found
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn brute_poset_iso(a: &Poset, b: &Poset) -> bool {
    let n = a.size();
    n == b.size()
        && permutations(n)
            .iter()
            .any(|f| (0..n).all(|x| (0..n).all(|y| a.leq(x, y) == b.leq(f[x], f[y]))))
}

pub fn brute_monoid_iso(a: &Monoid, b: &Monoid) -> bool {
    let n = a.size();
    n == b.size()
        && permutations(n)
            .iter()
            .any(|f| (0..n).all(|x| (0..n).all(|y| f[a.mul(x, y)] == b.mul(f[x], f[y]))))
}

/// Every monoid table of order n with identity 0, found by filling the non-identity block
/// cell by cell and checking associativity on filled triples.
pub fn monoids(n: usize) -> Vec<Monoid> {
    let mut t = vec![vec![usize::MAX; n]; n];
    for x in 0..n {
        t[0][x] = x;
        t[x][0] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fill(&mut t, &cells, 0, &mut out);
    out
}

fn consistent(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for a in 0..n {
        for b in 0..n {
            let ab = t[a][b];
            if ab == usize::MAX {
                continue;
            }
            for c in 0..n {
                let bc = t[b][c];
                if bc == usize::MAX {
                    continue;
                }
                let (l, r) = (t[ab][c], t[a][bc]);
                if l != usize::MAX && r != usize::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn fill(t: &mut Vec<Vec<usize>>, cells: &[(usize, usize)], i: usize, out: &mut Vec<Monoid>) {
    if i == cells.len() {
        out.push(Monoid::new(t.clone(), 0).expect("associative by construction"));
        return;
    }
    let (a, b) = cells[i];
    for v in 0..t.len() {
        t[a][b] = v;
        if consistent(t) {
            fill(t, cells, i + 1, out);
        }
    }
    t[a][b] = usize::MAX;
}

/// Representatives of `ms` up to isomorphism.
pub fn up_to_iso(ms: Vec<Monoid>) -> Vec<Monoid> {
    let mut reps: Vec<Monoid> = Vec::new();
    for m in ms {
        if !reps.iter().any(|r| brute_monoid_iso(r, &m)) {
            reps.push(m);
        }
    }
    reps
}

/// Smallest generating sets by exhaustive search over subsets in order of size.
pub fn minimal_generating_size(m: &Monoid) -> usize {
    let n = m.size();
    let others: Vec<usize> = (0..n).filter(|&x| x != m.identity()).collect();
    for size in 0..=others.len() {
        for mask in 0u32..(1 << others.len()) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let gens: Vec<usize> = (0..others.len()).filter(|b| mask >> b & 1 == 1).map(|b| others[b]).collect();
            let mut reach = vec![false; n];
            reach[m.identity()] = true;
            let mut frontier = vec![m.identity()];
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = m.mul(x, g);
                    if !reach[y] {
                        reach[y] = true;
                        frontier.push(y);
                    }
                }
            }
            if reach.iter().all(|&r| r) {
                return size;
            }
        }
    }
    unreachable!("the whole monoid generates itself")
}

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::odd_cycles::shortest_odd_cycles;
use super::{EndoConfig, EndoError, TransformationMonoid};
use crate::graphcore::{ArcColoredDigraph, SimpleGraph};

const NONE: u32 = u32::MAX;
const FLUSH_EVERY: u64 = 1024;
const MAX_ODD_CYCLES: usize = 1_000_000;

/// Compressed adjacency for one color and direction.
struct Csr {
    start: Vec<u32>,
    adj: Vec<u32>,
}

impl Csr {
    fn build(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> Csr {
        let mut lists = vec![Vec::new(); n];
        for (u, v) in pairs {
            lists[u].push(v as u32);
        }
        let mut start = Vec::with_capacity(n + 1);
        let mut adj = Vec::new();
        start.push(0);
        for mut l in lists {
            l.sort_unstable();
            l.dedup();
            adj.extend(l);
            start.push(adj.len() as u32);
        }
        Csr { start, adj }
    }

    #[inline]
    fn slice(&self, v: u32) -> &[u32] {
        &self.adj[self.start[v as usize] as usize..self.start[v as usize + 1] as usize]
    }
}

/// Host graph and precomputed search plan; shared read-only by all workers.
struct Plan {
    n: usize,
    out: Vec<Csr>,
    inn: Vec<Csr>,
    /// For each vertex u: (color, neighbor, outgoing) for every non-loop arc at u.
    constraints: Vec<Vec<(u32, u32, bool)>>,
    class: Vec<u32>,
    class_count: usize,
    /// compatible[cu * class_count + ca]: a vertex of class cu may map to one of class ca.
    compatible: Vec<bool>,
    class_candidates: Vec<Vec<u32>>,
    order: Vec<u32>,
    /// Position of each vertex in `order`.
    rank: Vec<u32>,
    cycle_len: usize,
    cycles: Vec<Vec<u32>>,
    cycles_at: Vec<Vec<(u32, u32)>>,
}

impl Plan {
    fn new(
        n: usize,
        colors: usize,
        arcs: impl Fn(usize) -> Vec<(usize, usize)>,
        cfg: &EndoConfig,
    ) -> Plan {
        let mut out = Vec::with_capacity(colors);
        let mut inn = Vec::with_capacity(colors);
        let words = colors.div_ceil(64).max(1);
        let mut sig = vec![vec![0u64; 3 * words]; n];
        let mut constraints = vec![Vec::new(); n];
        let mut loopless = true;
        let mut undirected = vec![Vec::new(); n];
        for c in 0..colors {
            let class = arcs(c);
            for &(u, v) in &class {
                sig[u][c / 64] |= 1 << (c % 64);
                sig[v][words + c / 64] |= 1 << (c % 64);
                if u == v {
                    sig[u][2 * words + c / 64] |= 1 << (c % 64);
                    loopless = false;
                } else {
                    constraints[u].push((c as u32, v as u32, true));
                    constraints[v].push((c as u32, u as u32, false));
                    undirected[u].push(v as u32);
                    undirected[v].push(u as u32);
                }
            }
            out.push(Csr::build(n, class.iter().copied()));
            inn.push(Csr::build(n, class.iter().map(|&(u, v)| (v, u))));
        }
        for l in &mut undirected {
            l.sort_unstable();
            l.dedup();
        }
        for l in &mut constraints {
            l.sort_unstable();
            l.dedup();
        }

        let odd = if cfg.odd_cycle_pruning && loopless {
            shortest_odd_cycles(&undirected, MAX_ODD_CYCLES, cfg.preprocessing_limit)
        } else {
            None
        };
        let (cycle_len, cycles) = odd.map_or((0, Vec::new()), |o| (o.length, o.cycles));
        let mut cycles_at = vec![Vec::new(); n];
        for (cid, cyc) in cycles.iter().enumerate() {
            for (pos, &v) in cyc.iter().enumerate() {
                cycles_at[v as usize].push((cid as u32, pos as u32));
            }
        }
        for (v, s) in sig.iter_mut().enumerate() {
            s.push(u64::from(!cycles_at[v].is_empty()));
        }

        let mut class_of: HashMap<Vec<u64>, u32> = HashMap::new();
        let mut reps: Vec<usize> = Vec::new();
        let class: Vec<u32> = (0..n)
            .map(|v| {
                *class_of.entry(sig[v].clone()).or_insert_with(|| {
                    reps.push(v);
                    (reps.len() - 1) as u32
                })
            })
            .collect();
        let class_count = reps.len();
        let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
        let mut compatible = vec![false; class_count * class_count];
        for i in 0..class_count {
            for j in 0..class_count {
                compatible[i * class_count + j] = subset(&sig[reps[i]], &sig[reps[j]]);
            }
        }
        let class_candidates: Vec<Vec<u32>> = (0..class_count)
            .map(|i| {
                (0..n as u32)
                    .filter(|&a| compatible[i * class_count + class[a as usize] as usize])
                    .collect()
            })
            .collect();

        // root: fewest candidate images, then highest degree, then smallest index
        let root = (0..n)
            .min_by_key(|&v| {
                (class_candidates[class[v] as usize].len(), Reverse(undirected[v].len()), v)
            })
            .unwrap_or(0);
        let order = static_order(&undirected, root);
        let mut rank = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        Plan {
            n,
            out,
            inn,
            constraints,
            class,
            class_count,
            compatible,
            class_candidates,
            order,
            rank,
            cycle_len,
            cycles,
            cycles_at,
        }
    }

    #[inline]
    fn may_map(&self, u: u32, a: u32) -> bool {
        self.compatible
            [self.class[u as usize] as usize * self.class_count + self.class[a as usize] as usize]
    }
}

/// Starting at `root`, repeatedly the vertex with the most already-ordered neighbors
/// (ties: higher degree, then smaller index). Other components follow the same rule.
fn static_order(adj: &[Vec<u32>], root: usize) -> Vec<u32> {
    let n = adj.len();
    let mut placed = vec![false; n];
    let mut count = vec![0u32; n];
    let mut heap: BinaryHeap<(u32, u32, Reverse<u32>)> = (0..n as u32)
        .map(|v| (0, adj[v as usize].len() as u32, Reverse(v)))
        .collect();
    if n > 0 {
        heap.push((u32::MAX, 0, Reverse(root as u32)));
    }
    let mut order = Vec::with_capacity(n);
    while let Some((c, _, Reverse(v))) = heap.pop() {
        if placed[v as usize] || (c != count[v as usize] && c != u32::MAX) {
            continue;
        }
        placed[v as usize] = true;
        order.push(v);
        for &w in &adj[v as usize] {
            if !placed[w as usize] {
                count[w as usize] += 1;
                heap.push((count[w as usize], adj[w as usize].len() as u32, Reverse(w)));
            }
        }
    }
    order
}

enum Domain {
    Base,
    List(Vec<u32>),
}

struct Shared<'a> {
    budget: u64,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

struct Frame {
    vertex: u32,
    candidates: Vec<u32>,
    next: usize,
    mark: usize,
}

struct Search<'a> {
    plan: &'a Plan,
    shared: &'a Shared<'a>,
    domain: Vec<Domain>,
    image: Vec<u32>,
    assigned: usize,
    trail: Vec<(u32, Domain)>,
    /// Lazy min-heap of (domain size, rank, vertex); stale entries are skipped on pop.
    queue: BinaryHeap<Reverse<(u32, u32, u32)>>,
    pending: u64,
    scratch: Vec<u32>,
}

struct Aborted;

impl<'a> Search<'a> {
    fn new(plan: &'a Plan, shared: &'a Shared<'a>) -> Self {
        Search {
            plan,
            shared,
            domain: (0..plan.n).map(|_| Domain::Base).collect(),
            image: vec![NONE; plan.n],
            assigned: 0,
            trail: Vec::new(),
            queue: BinaryHeap::new(),
            pending: 0,
            scratch: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<(), Aborted> {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<(), Aborted> {
        let total = self.shared.nodes.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if total > self.shared.budget {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
        if self.shared.abort.load(Ordering::Relaxed) {
            return Err(Aborted);
        }
        Ok(())
    }

    fn candidates(&self, u: u32) -> Vec<u32> {
        match &self.domain[u as usize] {
            Domain::Base => self.plan.class_candidates[self.plan.class[u as usize] as usize].clone(),
            Domain::List(l) => l.clone(),
        }
    }

    fn enqueue(&mut self, w: u32) {
        if let Domain::List(l) = &self.domain[w as usize] {
            self.queue.push(Reverse((l.len() as u32, self.plan.rank[w as usize], w)));
        }
    }

    /// Unassigned vertex with the smallest restricted domain; if no domain is restricted,
    /// the first unassigned vertex of the static order.
    fn select(&mut self) -> u32 {
        while let Some(Reverse((size, _, w))) = self.queue.pop() {
            if self.image[w as usize] != NONE {
                continue;
            }
            if let Domain::List(l) = &self.domain[w as usize] {
                if l.len() as u32 == size {
                    return w;
                }
            }
        }
        *self
            .plan
            .order
            .iter()
            .find(|&&v| self.image[v as usize] == NONE)
            .expect("an unassigned vertex remains")
    }

    /// Intersects the domain of w with a sorted list; false if it becomes empty.
    fn restrict(&mut self, w: u32, allowed: &[u32]) -> bool {
        let next: Vec<u32> = match &self.domain[w as usize] {
            Domain::Base => allowed.iter().copied().filter(|&a| self.plan.may_map(w, a)).collect(),
            Domain::List(cur) => {
                let mut out = Vec::with_capacity(cur.len().min(allowed.len()));
                let (mut i, mut j) = (0, 0);
                while i < cur.len() && j < allowed.len() {
                    match cur[i].cmp(&allowed[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            out.push(cur[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
                if out.len() == cur.len() {
                    return true;
                }
                out
            }
        };
        if next.is_empty() {
            return false;
        }
        let old = std::mem::replace(&mut self.domain[w as usize], Domain::List(next));
        self.trail.push((w, old));
        self.enqueue(w);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (w, old) = self.trail.pop().expect("trail above mark");
            self.domain[w as usize] = old;
            self.enqueue(w);
        }
    }

    /// Forward checking after assigning u ↦ a.
    fn propagate(&mut self, u: u32, a: u32) -> bool {
        let plan = self.plan;
        for &(c, w, outgoing) in &plan.constraints[u as usize] {
            if self.image[w as usize] != NONE {
                continue;
            }
            let allowed = if outgoing {
                plan.out[c as usize].slice(a)
            } else {
                plan.inn[c as usize].slice(a)
            };
            if !self.restrict(w, allowed) {
                return false;
            }
        }
        if plan.cycle_len == 0 {
            return true;
        }
        let g = plan.cycle_len;
        let mut buf = std::mem::take(&mut self.scratch);
        let mut ok = true;
        'cycles: for &(cid, i) in &plan.cycles_at[u as usize] {
            let cyc = &plan.cycles[cid as usize];
            for (j, &w) in cyc.iter().enumerate() {
                if j == i as usize || self.image[w as usize] != NONE {
                    continue;
                }
                let delta = (j + g - i as usize) % g;
                buf.clear();
                for &(did, p) in &plan.cycles_at[a as usize] {
                    let target = &plan.cycles[did as usize];
                    buf.push(target[(p as usize + delta) % g]);
                    buf.push(target[(p as usize + g - delta) % g]);
                }
                buf.sort_unstable();
                buf.dedup();
                if !self.restrict(w, &buf) {
                    ok = false;
                    break 'cycles;
                }
            }
        }
        self.scratch = buf;
        ok
    }

    fn open_frame(&mut self) -> Frame {
        let vertex = self.select();
        self.assigned += 1;
        Frame { vertex, candidates: self.candidates(vertex), next: 0, mark: self.trail.len() }
    }

    /// All extensions of the current partial map.
    fn run(&mut self, found: &mut Vec<Vec<u32>>) -> Result<(), Aborted> {
        let n = self.plan.n;
        if self.assigned == n {
            found.push(self.image.clone());
            return Ok(());
        }
        let first = self.open_frame();
        let mut stack = vec![first];
        while let Some(frame) = stack.last_mut() {
            let (u, mark) = (frame.vertex, frame.mark);
            if frame.next == frame.candidates.len() {
                stack.pop();
                self.undo_to(mark);
                self.image[u as usize] = NONE;
                self.assigned -= 1;
                self.enqueue(u);
                continue;
            }
            let a = frame.candidates[frame.next];
            frame.next += 1;
            self.undo_to(mark);
            self.tick()?;
            self.image[u as usize] = a;
            if !self.propagate(u, a) {
                continue;
            }
            if self.assigned == n {
                found.push(self.image.clone());
                continue;
            }
            let next = self.open_frame();
            stack.push(next);
        }
        Ok(())
    }

    /// Every endomorphism sending the root to `a`; leaves the state as it found it.
    fn run_root(&mut self, a: u32) -> Result<Vec<Vec<u32>>, Aborted> {
        let root = self.plan.order[0];
        let mark = self.trail.len();
        let mut found = Vec::new();
        self.tick()?;
        self.image[root as usize] = a;
        self.assigned = 1;
        let result = if self.propagate(root, a) { self.run(&mut found) } else { Ok(()) };
        self.undo_to(mark);
        if result.is_err() {
            // an aborted search leaves deeper images behind
            self.image.fill(NONE);
        }
        self.image[root as usize] = NONE;
        self.assigned = 0;
        self.queue.clear();
        result.map(|_| found)
    }
}

fn enumerate(plan: &Plan, cfg: &EndoConfig) -> Result<Vec<Vec<usize>>, EndoError> {
    if plan.n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let shared = Shared { budget: cfg.node_budget, nodes: &nodes, abort: &abort };
    let root = plan.order[0];
    let roots = plan.class_candidates[plan.class[root as usize] as usize].clone();
    let per_root = |search: &mut Search, a: u32| -> Result<Vec<Vec<u32>>, Aborted> {
        if search.shared.abort.load(Ordering::Relaxed) {
            return Err(Aborted);
        }
        let r = search.run_root(a);
        search.flush()?;
        r
    };
    let results: Vec<Result<Vec<Vec<u32>>, Aborted>> = match cfg.jobs {
        Some(1) => {
            let mut search = Search::new(plan, &shared);
            roots.iter().map(|&a| per_root(&mut search, a)).collect()
        }
        jobs => {
            let work = || {
                roots
                    .par_iter()
                    .map_init(|| Search::new(plan, &shared), |s, &a| per_root(s, a))
                    .collect()
            };
            match jobs {
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| EndoError::Malformed(e.to_string()))?
                    .install(work),
                None => work(),
            }
        }
    };
    if abort.load(Ordering::Relaxed) || results.iter().any(Result::is_err) {
        return Err(EndoError::BudgetExceeded { budget: cfg.node_budget });
    }
    let mut maps: Vec<Vec<usize>> = results
        .into_iter()
        .flat_map(|r| r.unwrap_or_default())
        .map(|m| m.into_iter().map(|x| x as usize).collect())
        .collect();
    maps.sort_unstable();
    Ok(maps)
}

fn check_size(n: usize, cfg: &EndoConfig) -> Result<(), EndoError> {
    if n > cfg.max_vertices {
        return Err(EndoError::TooManyVertices { vertices: n, cap: cfg.max_vertices });
    }
    Ok(())
}

/// All color-preserving self-maps of an arc-colored digraph.
pub fn enumerate_endomorphisms(
    d: &ArcColoredDigraph,
    cfg: &EndoConfig,
) -> Result<TransformationMonoid, EndoError> {
    let n = d.vertex_count();
    check_size(n, cfg)?;
    let plan = Plan::new(n, d.color_count(), |c| d.arcs(c).to_vec(), cfg);
    TransformationMonoid::from_maps(n, enumerate(&plan, cfg)?)
}

/// All edge-preserving self-maps of a simple graph.
pub fn enumerate_graph_endomorphisms(
    g: &SimpleGraph,
    cfg: &EndoConfig,
) -> Result<TransformationMonoid, EndoError> {
    let n = g.vertex_count();
    check_size(n, cfg)?;
    let arcs: Vec<(usize, usize)> =
        g.edges().iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    let plan = Plan::new(n, 1, |_| arcs.clone(), cfg);
    TransformationMonoid::from_maps(n, enumerate(&plan, cfg)?)
}

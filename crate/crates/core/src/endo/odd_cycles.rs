/// Shortest odd cycles of an undirected graph given by sorted adjacency lists.
pub(crate) struct OddCycles {
    pub length: usize,
    pub cycles: Vec<Vec<u32>>,
}

/// Distances from s up to `depth`; `touched` lists the entries to reset afterwards.
fn bfs(adj: &[Vec<u32>], s: usize, dist: &mut [u32], touched: &mut Vec<u32>, depth: u32) -> u64 {
    for &v in touched.iter() {
        dist[v as usize] = u32::MAX;
    }
    touched.clear();
    dist[s] = 0;
    touched.push(s as u32);
    let mut head = 0;
    let mut work = 0u64;
    while head < touched.len() {
        let u = touched[head];
        head += 1;
        let du = dist[u as usize];
        if du >= depth {
            continue;
        }
        for &w in &adj[u as usize] {
            work += 1;
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = du + 1;
                touched.push(w);
            }
        }
    }
    work
}

/// Length of a shortest odd closed walk; `Ok(None)` for bipartite graphs and `Err(())`
/// once more than `limit` adjacency entries have been scanned.
pub(crate) fn odd_girth(adj: &[Vec<u32>], limit: u64) -> Result<Option<usize>, ()> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut work = 0u64;
    for s in 0..n {
        for &v in &touched {
            dist[v as usize] = u32::MAX;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s as u32);
        let mut head = 0;
        'bfs: while head < touched.len() {
            let u = touched[head];
            head += 1;
            let du = dist[u as usize] as usize;
            if 2 * du + 1 >= best {
                break;
            }
            for &w in &adj[u as usize] {
                work += 1;
                let dw = dist[w as usize];
                if dw == u32::MAX {
                    dist[w as usize] = du as u32 + 1;
                    touched.push(w);
                } else if dw as usize == du {
                    best = best.min(2 * du + 1);
                    break 'bfs;
                }
            }
        }
        if work > limit {
            return Err(());
        }
    }
    Ok((best != usize::MAX).then_some(best))
}

/// All shortest odd cycles, each listed once starting at its smallest vertex and
/// oriented so that the second vertex is smaller than the last.
///
/// A shortest odd cycle is isometric, so its i-th vertex lies at distance
/// min(i, g − i) from the start; the search only follows such geodesic steps.
/// Returns `None` when the graph is bipartite or a limit is hit.
pub(crate) fn shortest_odd_cycles(
    adj: &[Vec<u32>],
    max_cycles: usize,
    step_limit: u64,
) -> Option<OddCycles> {
    let g = odd_girth(adj, step_limit).ok()??;
    let n = adj.len();
    let mut touched = Vec::new();
    let half = (g / 2) as u32;
    let mut dist = vec![u32::MAX; n];
    let mut cycles = Vec::new();
    let mut steps = 0u64;
    let mut path: Vec<u32> = Vec::with_capacity(g);
    for s in 0..n {
        steps += bfs(adj, s, &mut dist, &mut touched, half);
        path.clear();
        path.push(s as u32);
        // iterative DFS over positions 1..g, with a cursor into each adjacency list
        let mut cursor = vec![0usize];
        while let Some(top) = cursor.last_mut() {
            let pos = path.len();
            let last = *path.last().expect("path holds the start") as usize;
            if *top >= adj[last].len() {
                cursor.pop();
                path.pop();
                continue;
            }
            let v = adj[last][*top];
            *top += 1;
            steps += 1;
            if steps > step_limit {
                return None;
            }
            let want = pos.min(g - pos) as u32;
            if (v as usize) <= s || dist[v as usize] != want || path.contains(&v) {
                continue;
            }
            if pos == g - 1 {
                if path[1] < v {
                    let mut cyc = path.clone();
                    cyc.push(v);
                    cycles.push(cyc);
                    if cycles.len() > max_cycles {
                        return None;
                    }
                }
                continue;
            }
            path.push(v);
            cursor.push(0);
        }
    }
    Some(OddCycles { length: g, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u as usize].push(v);
            a[v as usize].push(u);
        }
        for l in &mut a {
            l.sort_unstable();
        }
        a
    }

    #[test]
    fn bipartite_has_none() {
        let a = adj(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(odd_girth(&a, 1 << 20), Ok(None));
        assert!(shortest_odd_cycles(&a, 100, 1 << 20).is_none());
    }

    #[test]
    fn k4_triangles() {
        let a = adj(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let oc = shortest_odd_cycles(&a, 100, 1 << 20).unwrap();
        assert_eq!(oc.length, 3);
        assert_eq!(oc.cycles.len(), 4);
    }

    #[test]
    fn petersen_five_cycles() {
        let mut e: Vec<(u32, u32)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        e.extend((0..5).map(|i| (i, i + 5)));
        e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
        let oc = shortest_odd_cycles(&adj(10, &e), 100, 1 << 20).unwrap();
        assert_eq!(oc.length, 5);
        assert_eq!(oc.cycles.len(), 12);
    }

    #[test]
    fn pentagon_with_pendant_square() {
        // a 5-cycle sharing an edge with a 4-cycle: one shortest odd cycle
        let a = adj(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 1)]);
        let oc = shortest_odd_cycles(&a, 100, 1 << 20).unwrap();
        assert_eq!(oc.length, 5);
        assert_eq!(oc.cycles, vec![vec![0, 1, 2, 3, 4]]);
    }
}

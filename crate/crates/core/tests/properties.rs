mod common;

use endoforge::blowup::blow_up;
use endoforge::endo::{enumerate_endomorphisms, enumerate_graph_endomorphisms, EndoConfig};
use endoforge::graphcore::SimpleGraph;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_matches_brute_force(seed: u64, n in 1usize..=5, colors in 1usize..=3, density in 0.05f64..0.6) {
        let d = random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), n, colors, density, true);
        let t = enumerate_endomorphisms(&d, &EndoConfig::default()).unwrap();
        prop_assert_eq!(t.maps(), naive_endomorphisms(&d));
    }

    #[test]
    fn single_threaded_search_agrees(seed: u64, n in 1usize..=6, colors in 1usize..=2) {
        let d = random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), n, colors, 0.3, false);
        let par = enumerate_endomorphisms(&d, &EndoConfig::default()).unwrap();
        let seq = enumerate_endomorphisms(&d, &EndoConfig { jobs: Some(1), ..EndoConfig::default() }).unwrap();
        prop_assert_eq!(par.maps(), seq.maps());
    }

    #[test]
    fn undirected_engine_matches_brute_force(seed: u64, n in 1usize..=6, density in 0.1f64..0.7) {
        let d = random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), n, 1, density, false);
        let mut edges: Vec<(usize, usize)> = d.arcs(0).iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort();
        edges.dedup();
        let g = SimpleGraph::new((0..n).map(|i| i.to_string()).collect(), edges.clone()).unwrap();
        let t = enumerate_graph_endomorphisms(&g, &EndoConfig::default()).unwrap();
        let brute: Vec<Vec<usize>> = all_maps(n)
            .into_iter()
            .filter(|f| edges.iter().all(|&(u, v)| g.has_edge(f[u], f[v])))
            .collect();
        prop_assert_eq!(t.maps(), brute);
    }

    #[test]
    fn blowup_keeps_the_monoid_size(seed: u64, n in 1usize..=3, colors in 1usize..=2) {
        let d = random_digraph(&mut ChaCha8Rng::seed_from_u64(seed), n, colors, 0.4, true);
        let b = blow_up(&d).unwrap();
        let t = enumerate_endomorphisms(&b.digraph, &EndoConfig::default()).unwrap();
        prop_assert_eq!(t.len(), naive_endomorphisms(&d).len());
        for f in naive_endomorphisms(&d) {
            prop_assert!(t.contains(&b.lift(&d, &f).unwrap()));
        }
    }
}

fn all_maps(n: usize) -> Vec<Vec<usize>> {
    (0..n.pow(n as u32))
        .map(|mut x| {
            let mut f = vec![0; n];
            for i in (0..n).rev() {
                f[i] = x % n;
                x /= n;
            }
            f
        })
        .collect()
}

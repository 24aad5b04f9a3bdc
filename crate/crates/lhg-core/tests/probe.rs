// temporary probe test
use lhg_core::constructions::crown_free_construction;
use lhg_core::patterns::{is_free, oracle_contains, find_embedding, Pattern};
use lhg_core::random::random_linear_graph_sized;
use std::time::Instant;

#[test]
fn probe_freeness_costs() {
    for (r, m) in [(3usize, 3usize), (4, 3), (5, 3)] {
        let g = crown_free_construction(r, m).unwrap();
        let pats = [Pattern::crown(r).unwrap(), Pattern::cstar(r).unwrap()];
        let t = Instant::now();
        let free = is_free(&g, &pats).unwrap().is_free();
        println!("is_free cfc({r},{m}) n={} m={}: {free} in {:?}", g.n(), g.edge_count(), t.elapsed());
        assert!(free);
    }
}

#[test]
fn probe_differential_cost() {
    let t = Instant::now();
    let mut count = 0;
    for r in [3usize, 4] {
        let crown = Pattern::crown(r).unwrap();
        let cstar = Pattern::cstar(r).unwrap();
        for seed in 0..100u64 {
            let host = random_linear_graph_sized(12, r, 8, 0xACCE55 + seed);
            for p in [&crown, &cstar] {
                let fast = find_embedding(&host, p).unwrap().is_some();
                let slow = oracle_contains(&host, p).unwrap();
                assert_eq!(fast, slow);
                count += 1;
            }
        }
    }
    println!("differential {count} checks in {:?}", t.elapsed());
}

use ltl_dstar_core::search::{path_weight, AdjacencyGraph, SearchGraph, SearchInstance, ZeroHeuristic};
use ltl_dstar_core::{StateId, Weight};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIDE: u32 = 8;

fn manhattan(a: StateId, b: StateId) -> u64 {
    ((a / SIDE).abs_diff(b / SIDE) + (a % SIDE).abs_diff(b % SIDE)) as u64
}

fn neighbours(s: StateId) -> Vec<StateId> {
    let (r, c) = (s / SIDE, s % SIDE);
    let mut out = Vec::new();
    if r > 0 {
        out.push(s - SIDE);
    }
    if c > 0 {
        out.push(s - 1);
    }
    if c + 1 < SIDE {
        out.push(s + 1);
    }
    if r + 1 < SIDE {
        out.push(s + SIDE);
    }
    out
}

fn random_weight(rng: &mut ChaCha8Rng) -> Weight {
    let violation = if rng.random_bool(0.3) { rng.random_range(1..4) } else { 0 };
    Weight::new(violation, rng.random_range(1..20))
}

/// 8×8 grid graph with random directed edges, travel ≥ 1 per unit step.
fn random_graph(seed: u64) -> AdjacencyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = AdjacencyGraph::new((SIDE * SIDE) as usize);
    for s in 0..SIDE * SIDE {
        for t in neighbours(s) {
            if rng.random_bool(0.85) {
                let w = random_weight(&mut rng);
                g.set_edge(s, t, w);
            }
        }
    }
    g
}

/// Quadratic lexicographic Dijkstra to `goal`, written independently of the
/// crate's baselines.
fn oracle_to(g: &AdjacencyGraph, goal: StateId) -> Vec<Weight> {
    let n = g.num_states();
    let mut dist = vec![Weight::INFINITY; n];
    let mut done = vec![false; n];
    dist[goal as usize] = Weight::ZERO;
    let edges: Vec<_> = g.edges().collect();
    loop {
        let Some(u) = (0..n).filter(|&u| !done[u] && dist[u].is_finite()).min_by_key(|&u| dist[u]) else { break };
        done[u] = true;
        for &(a, b, w) in &edges {
            if b as usize == u {
                let nd = dist[u] + w;
                if nd < dist[a as usize] {
                    dist[a as usize] = nd;
                }
            }
        }
    }
    dist
}

fn endpoints(seed: u64) -> (StateId, StateId) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (rng.random_range(0..SIDE * SIDE), rng.random_range(0..SIDE * SIDE))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn compute_matches_dijkstra(seed in any::<u64>()) {
        let g = random_graph(seed);
        let (start, goal) = endpoints(seed);
        let mut s = SearchInstance::initialize(&g, start, goal, |a, b| manhattan(a, b)).unwrap();
        s.compute_shortest_path(&g);
        prop_assert_eq!(s.g(start), oracle_to(&g, goal)[start as usize]);
    }

    #[test]
    fn interleaved_mutations_match_fresh_search(seed in any::<u64>()) {
        let mut g = random_graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let (mut start, goal) = endpoints(seed);
        let mut s = SearchInstance::initialize(&g, start, goal, |a, b| manhattan(a, b)).unwrap();
        s.compute_shortest_path(&g);
        for _ in 0..6 {
            let edges: Vec<_> = g.edges().collect();
            let mut changed = Vec::new();
            for _ in 0..rng.random_range(1..8) {
                let (a, b, _) = edges[rng.random_range(0..edges.len())];
                let w = if rng.random_bool(0.3) { Weight::INFINITY } else { random_weight(&mut rng) };
                g.set_edge(a, b, w);
                changed.push((a, b));
            }
            if rng.random_bool(0.5) {
                if let Ok(path) = s.extract_path(&g, start) {
                    start = path[path.len().min(3) - 1];
                }
            }
            let shift = manhattan(s.start(), start);
            s.set_start(start);
            s.apply_edge_changes(&g, &changed, shift).unwrap();
            s.compute_shortest_path(&g);
            prop_assert_eq!(s.g(start), oracle_to(&g, goal)[start as usize]);
        }
    }

    #[test]
    fn zero_violation_states_pop_first(seed in any::<u64>()) {
        let mut g = random_graph(seed);
        let (start, goal) = endpoints(seed);
        // guarantee a zero-violation route along row then column
        let mut s = start;
        while s != goal {
            let next = if s % SIDE != goal % SIDE {
                if s % SIDE < goal % SIDE { s + 1 } else { s - 1 }
            } else if s / SIDE < goal / SIDE { s + SIDE } else { s - SIDE };
            let travel = g.edge_weight(s, next).filter(|w| w.is_finite()).map_or(15, |w| w.travel_cost());
            g.set_edge(s, next, Weight::travel(travel));
            s = next;
        }
        let mut inst = SearchInstance::initialize(&g, start, goal, |a, b| manhattan(a, b)).unwrap();
        inst.record_pops(true);
        inst.compute_shortest_path(&g);
        prop_assert_eq!(inst.g(start).violation(), 0);
        for pop in inst.take_pop_log() {
            if !pop.start_consistent {
                prop_assert_eq!(pop.value.violation(), 0, "popped {:?}", pop);
            }
        }
    }

    #[test]
    fn extracted_path_sums_to_g(seed in 0u64..50) {
        let g = random_graph(seed);
        let (start, goal) = endpoints(seed);
        let mut s = SearchInstance::initialize(&g, start, goal, ZeroHeuristic).unwrap();
        s.compute_shortest_path(&g);
        if s.g(start).is_finite() {
            let path = s.extract_path(&g, start).unwrap();
            prop_assert_eq!(path[0], start);
            prop_assert_eq!(*path.last().unwrap(), goal);
            prop_assert_eq!(path_weight(&g, &path), s.g(start));
        }
    }

    #[test]
    fn consistency_is_componentwise(v1 in 0u64..5, t1 in 0u64..100, v2 in 0u64..5, t2 in 0u64..100) {
        let (a, b) = (Weight::new(v1, t1), Weight::new(v2, t2));
        prop_assert_eq!(a == b, v1 == v2 && t1 == t2);
    }
}

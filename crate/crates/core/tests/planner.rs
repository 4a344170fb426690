mod common;

use common::*;
use ltl_dstar_core::automata::{Guard, NbaTransition, WtsEdge};
use ltl_dstar_core::baselines::{dijkstra_oracle, IterativeReplanner, LocalRevision};
use ltl_dstar_core::planner::{total_cost, Geometry, PlannerConfig, Position, SuffixRecord};
use ltl_dstar_core::*;

fn planner(pa: ProductAutomaton, geometry: Option<Geometry>) -> Planner {
    Planner::new(pa, PlannerConfig { beta: 10, geometry, ..PlannerConfig::default() }).unwrap()
}

fn ring(weights: &[u32], self_loop: Option<u32>) -> ProductAutomaton {
    let aps = ApUniverse::new(["a"]).unwrap();
    let n = weights.len();
    let mut edges: Vec<WtsEdge> = (0..n).map(|i| WtsEdge { from: i, to: (i + 1) % n, weight: weights[i] }).collect();
    if let Some(w) = self_loop {
        edges.push(WtsEdge { from: 0, to: 0, weight: w });
    }
    let wts = Wts::new(aps.clone(), vec![aps.empty_label(); n], vec![0], edges).unwrap();
    let nba = Nba::new(aps, 1, vec![0], vec![0], vec![NbaTransition { from: 0, guard: Guard::True, to: 0 }]).unwrap();
    ProductAutomaton::build(&wts, &nba).unwrap()
}

#[test]
fn total_cost_is_componentwise() {
    assert_eq!(total_cost(Weight::ZERO, Weight::travel(40), 10), Weight::travel(400));
    assert_eq!(total_cost(Weight::travel(30), Weight::travel(40), 10), Weight::travel(430));
    assert_eq!(total_cost(Weight::new(1, 30), Weight::new(2, 40), 10), Weight::new(21, 430));
}

#[test]
fn suffix_self_loop_and_missing_cycle() {
    let pa = ring(&[10, 10], Some(10));
    let r = SuffixRecord::initialize(&pa, 0);
    assert_eq!(r.cycle(), [0, 0]);
    assert_eq!(r.cost(), Weight::travel(10));

    let aps = ApUniverse::new(["a"]).unwrap();
    let wts = Wts::new(aps.clone(), vec![aps.empty_label(); 2], vec![0], vec![WtsEdge { from: 0, to: 1, weight: 10 }]).unwrap();
    let nba = Nba::new(aps, 1, vec![0], vec![0], vec![NbaTransition { from: 0, guard: Guard::True, to: 0 }]).unwrap();
    let pa = ProductAutomaton::build(&wts, &nba).unwrap();
    let r = SuffixRecord::initialize(&pa, 0);
    assert!(r.cost().is_infinite());
    assert!(r.cycle().is_empty());
}

/// Every simple cycle through state 0 of a small graph.
fn brute_force_min_cycle(pa: &ProductAutomaton, acc: StateId) -> Weight {
    fn walk(pa: &ProductAutomaton, acc: StateId, s: StateId, seen: &mut Vec<StateId>, w: Weight, best: &mut Weight) {
        for (t, e) in pa.successors(s) {
            if e.is_infinite() {
                continue;
            }
            if t == acc {
                *best = (*best).min(w + e);
            } else if !seen.contains(&t) {
                seen.push(t);
                walk(pa, acc, t, seen, w + e, best);
                seen.pop();
            }
        }
    }
    let mut best = Weight::INFINITY;
    walk(pa, acc, acc, &mut vec![acc], Weight::ZERO, &mut best);
    best
}

#[test]
fn suffix_cycle_costs_and_bump_replan() {
    // a→b→c→a at 10/10/30, plus a→d→a at 35/35
    let aps = ApUniverse::new(["a"]).unwrap();
    let e = |from, to, weight| WtsEdge { from, to, weight };
    let wts = Wts::new(
        aps.clone(),
        vec![aps.empty_label(); 4],
        vec![0],
        vec![e(0, 1, 10), e(1, 2, 10), e(2, 0, 30), e(0, 3, 35), e(3, 0, 35)],
    )
    .unwrap();
    let nba = Nba::new(aps, 1, vec![0], vec![0], vec![NbaTransition { from: 0, guard: Guard::True, to: 0 }]).unwrap();
    let mut pa = ProductAutomaton::build(&wts, &nba).unwrap();
    let mut r = SuffixRecord::initialize(&pa, 0);
    assert_eq!(r.cost(), brute_force_min_cycle(&pa, 0));
    assert_eq!(r.cost(), Weight::travel(50));
    assert_eq!(r.cycle(), [0, 1, 2, 0]);

    let before = r.instance().stats();
    assert!(!r.replan(&pa, &[]));
    assert_eq!(r.instance().stats(), before);

    let mods = pa.apply_wts_change(WtsChange::Reweight { from: 1, to: 2, weight: 50 }).unwrap();
    assert!(r.replan(&pa, &mods));
    assert_eq!(r.cost(), brute_force_min_cycle(&pa, 0));
    assert_eq!(r.cost(), Weight::travel(70));
    assert_eq!(r.cycle(), [0, 3, 0]);

    let mods = pa.apply_wts_change(WtsChange::Delete { from: 3, to: 0 }).unwrap();
    r.replan(&pa, &mods);
    assert_eq!(r.cost(), Weight::travel(90));
    let mods = pa.apply_wts_change(WtsChange::Delete { from: 2, to: 0 }).unwrap();
    r.replan(&pa, &mods);
    assert!(r.cost().is_infinite());
}

#[test]
fn degenerate_product_on_empty_grid() {
    let grid = Grid::new(5, 12);
    let aps = ApUniverse::new(["a"]).unwrap();
    let nba = Nba::new(aps.clone(), 1, vec![0], vec![0], vec![NbaTransition { from: 0, guard: Guard::True, to: 0 }]).unwrap();
    let pa = ProductAutomaton::build(&grid.wts(&aps), &nba).unwrap();
    let mut p = planner(pa, Some(grid.geometry()));
    let run = p.plan_initial().unwrap();
    assert_eq!(run.prefix(), [12]);
    assert_eq!(run.suffix().len(), 3);
    assert_eq!(run.suffix_weight(), Weight::travel(20));
    assert_eq!(run.total(), Weight::travel(200));
}

#[test]
fn benchmark_sequence_matches_oracle() {
    let mut grid = corner_regions(10);
    grid.blocked.extend([grid.cell(4, 4), grid.cell(4, 5), grid.cell(5, 4), grid.cell(2, 7)]);
    grid.bumps.extend([grid.cell(0, 3), grid.cell(7, 9)]);
    let nba = sequence_abcd();
    let pa = ProductAutomaton::build(&grid.wts(nba.aps()), &nba).unwrap();
    let oracle = dijkstra_oracle(&pa, pa.initial_states(), 10);
    let mut p = planner(pa.clone(), Some(grid.geometry()));
    let run = p.plan_initial().unwrap();
    assert_eq!(run.total(), oracle.total);
    assert!(run.is_well_formed(&pa));
    assert_eq!(run.total().violation(), 0);

    let mut it = IterativeReplanner::new(pa, 10).unwrap();
    assert_eq!(Replanner::plan_initial(&mut it).unwrap(), run);
}

fn blocked_c() -> Grid {
    let mut grid = corner_regions(6);
    let c = grid.cell(5, 5);
    grid.blocked.extend([c - 1, c - 6]);
    grid
}

#[test]
fn blocked_region_is_infeasible_plain_and_relaxed_violates() {
    let grid = blocked_c();
    let nba = sequence_abcd();
    let wts = grid.wts(nba.aps());
    let plain = ProductAutomaton::build(&wts, &nba).unwrap();
    assert_eq!(planner(plain.clone(), None).plan_initial(), Err(PlanError::NoAcceptingRun));
    assert!(dijkstra_oracle(&plain, plain.initial_states(), 10).total.is_infinite());

    let relaxed = ProductAutomaton::build_relaxed(&wts, &nba).unwrap();
    let run = planner(relaxed.clone(), Some(grid.geometry())).plan_initial().unwrap();
    assert!(run.total().violation() > 0);
    assert_eq!(run.total(), dijkstra_oracle(&relaxed, relaxed.initial_states(), 10).total);
}

#[test]
fn irrelevant_change_is_cheap_and_prefix_change_matches_fresh_plan() {
    let grid = corner_regions(8);
    let nba = sequence_abcd();
    let pa = ProductAutomaton::build(&grid.wts(nba.aps()), &nba).unwrap();
    let mut p = planner(pa.clone(), Some(grid.geometry()));
    let run = p.plan_initial().unwrap();
    let fresh_expansions = p.last_expansions();
    let exec = Execution::new(run.clone());

    // an edge far from the plan in a corner pocket
    let far = WtsChange::Reweight { from: grid.cell(4, 3), to: grid.cell(4, 4), weight: 50 };
    let again = p.replan(&[far], &exec).unwrap();
    assert_eq!(again.total(), run.total());
    assert!(p.last_expansions() < fresh_expansions);

    // block the next unlabelled cell of the prefix
    let mut exec = Execution::new(again);
    while grid.regions.contains_key(&p.product().wts_state(exec.next_state())) {
        exec.advance();
    }
    let next = p.product().wts_state(exec.next_state());
    let here = p.product().wts_state(exec.current());
    let changes: Vec<WtsChange> = grid
        .neighbours(next)
        .into_iter()
        .map(|from| WtsChange::Delete { from, to: next })
        .collect();
    let replanned = p.replan(&changes, &exec).unwrap();
    assert_eq!(replanned.start(), exec.current());
    assert_eq!(p.product().wts_state(replanned.start()), here);

    let mut fresh = IterativeReplanner::new(p.product().clone(), 10).unwrap();
    let oracle = fresh.plan_from(Some(exec.current())).unwrap();
    assert_eq!(replanned, oracle);
}

#[test]
fn mid_suffix_blockage_beats_local_revision() {
    let grid = corner_regions(6);
    let nba = sequence_abcd();
    let pa = ProductAutomaton::build(&grid.wts(nba.aps()), &nba).unwrap();
    let mut p = planner(pa.clone(), Some(grid.geometry()));
    let mut local = LocalRevision::new(pa, 10).unwrap();
    let run = p.plan_initial().unwrap();
    assert_eq!(Replanner::plan_initial(&mut local).unwrap(), run);

    let mut exec = Execution::new(run);
    while exec.position() != Position::Suffix(3) {
        exec.advance();
    }
    let ahead = p.product().wts_state(exec.next_state());
    let changes: Vec<WtsChange> =
        grid.neighbours(ahead).into_iter().map(|from| WtsChange::Delete { from, to: ahead }).collect();
    let ours = p.replan(&changes, &exec).unwrap();
    let theirs = local.replan(&changes, &exec).unwrap();
    let oracle = dijkstra_oracle(p.product(), &[exec.current()], 10);
    assert_eq!(ours.total(), oracle.total);
    assert!(ours.total() <= theirs.total());
    assert_eq!(ours.start(), exec.current());
    assert!(theirs.is_well_formed(p.product()));
}

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::search::{SearchGraph, StateId, Weight};

/// Exact lexicographic distances over states `0..size`.
#[derive(Debug, Clone)]
pub struct ShortestPaths {
    pub dist: Vec<Weight>,
    /// First settled predecessor (forward) or successor (backward) on a
    /// shortest path; `StateId::MAX` if none.
    pub parent: Vec<StateId>,
    /// Number of states settled.
    pub settled: u64,
}

impl ShortestPaths {
    /// Forward path from a source to `to` following `parent`.
    pub fn path_to(&self, to: StateId) -> Option<Vec<StateId>> {
        if self.dist[to as usize].is_infinite() {
            return None;
        }
        let mut path = alloc::vec![to];
        let mut s = to;
        while self.parent[s as usize] != StateId::MAX {
            s = self.parent[s as usize];
            path.push(s);
        }
        path.reverse();
        Some(path)
    }
}

fn run<G: SearchGraph>(graph: &G, size: usize, seeds: &[StateId], forward: bool) -> ShortestPaths {
    let mut dist = alloc::vec![Weight::INFINITY; size];
    let mut parent = alloc::vec![StateId::MAX; size];
    let mut done = alloc::vec![false; size];
    let mut heap = BinaryHeap::new();
    for &s in seeds {
        dist[s as usize] = Weight::ZERO;
        heap.push(Reverse((Weight::ZERO, s)));
    }
    let mut settled = 0;
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u as usize] || d > dist[u as usize] {
            continue;
        }
        done[u as usize] = true;
        settled += 1;
        let mut relax = |v: StateId, w: Weight| {
            let nd = d + w;
            if nd.is_finite() && nd < dist[v as usize] {
                dist[v as usize] = nd;
                parent[v as usize] = u;
                heap.push(Reverse((nd, v)));
            }
        };
        if forward {
            graph.for_each_successor(u, &mut relax);
        } else {
            graph.for_each_predecessor(u, &mut relax);
        }
    }
    ShortestPaths { dist, parent, settled }
}

/// Lexicographic Dijkstra from `sources` along successor edges.
pub fn shortest_from<G: SearchGraph>(graph: &G, size: usize, sources: &[StateId]) -> ShortestPaths {
    run(graph, size, sources, true)
}

/// Lexicographic Dijkstra to `target` along predecessor edges.
pub fn shortest_to<G: SearchGraph>(graph: &G, size: usize, target: StateId) -> ShortestPaths {
    run(graph, size, &[target], false)
}

/// Bellman-Ford distances from `sources`, relaxing every edge until stable.
pub fn bellman_ford_from<G: SearchGraph>(graph: &G, size: usize, sources: &[StateId]) -> Vec<Weight> {
    let mut dist = alloc::vec![Weight::INFINITY; size];
    for &s in sources {
        dist[s as usize] = Weight::ZERO;
    }
    for _ in 0..size {
        let mut changed = false;
        for u in 0..size as StateId {
            let du = dist[u as usize];
            if du.is_infinite() {
                continue;
            }
            graph.for_each_successor(u, |v, w| {
                let nd = du + w;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    changed = true;
                }
            });
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Walks `argmin_{s'} dist[s'] + c(s, s')` from `from` to `goal`, lowest index
/// first on ties. `dist` holds exact distances to `goal`.
pub fn greedy_path<G: SearchGraph>(graph: &G, dist: &[Weight], from: StateId, goal: StateId) -> Option<Vec<StateId>> {
    if dist[from as usize].is_infinite() {
        return None;
    }
    let mut path = alloc::vec![from];
    let mut s = from;
    while s != goal {
        let mut best: Option<(Weight, StateId)> = None;
        graph.for_each_successor(s, |v, w| {
            let candidate = (dist[v as usize] + w, v);
            if candidate.0.is_finite() && best.is_none_or(|b| candidate < b) {
                best = Some(candidate);
            }
        });
        s = best?.1;
        path.push(s);
        if path.len() > dist.len() {
            return None;
        }
    }
    Some(path)
}

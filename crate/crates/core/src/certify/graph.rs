//! The pair graph on bodies, its cycle check, and the graph metric built
//! from a linear extension.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Unordered pairs `{a, b}`, `a < b`, in lexicographic order.
pub(crate) fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    // rows before `a` hold (n-1) + (n-2) + ... + (n-a) pairs
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Edges `{U,V} -> {f(U), f(V)}` for every map with `f(U) ≠ f(V)`.
/// `edge_map[m][i]` is the body that map `m` sends body `i` into.
fn pair_edges(n: usize, edge_map: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let nodes = pairs(n);
    let mut adj = vec![Vec::new(); nodes.len()];
    for (k, &(a, b)) in nodes.iter().enumerate() {
        for row in edge_map {
            let (fa, fb) = (row[a], row[b]);
            if fa != fb {
                adj[k].push(pair_index(n, fa, fb));
            }
        }
        adj[k].sort_unstable();
        adj[k].dedup();
    }
    adj
}

/// A directed cycle in the pair graph, as the sequence of pairs visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub cycle: Vec<(usize, usize)>,
}

/// Passes iff the pair graph is acyclic, which is the condition that no two
/// cycles of the same colour word start at different bodies.
pub fn cycle_type_check(n_bodies: usize, edge_map: &[Vec<usize>]) -> core::result::Result<(), CycleWitness> {
    let nodes = pairs(n_bodies);
    let adj = pair_edges(n_bodies, edge_map);
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; nodes.len()];
    for root in 0..nodes.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(u, _)| u == w).expect("on stack");
                        let cycle = stack[start..].iter().map(|&(u, _)| nodes[u]).collect();
                        return Err(CycleWitness { cycle });
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    Ok(())
}

/// Distances between bodies: `values[i][j] ∈ [2, 4]` for `i ≠ j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphMetric {
    pub n: usize,
    pub values: Vec<Vec<f64>>,
    /// Pairs in increasing order of their value.
    pub order: Vec<(usize, usize)>,
    /// Contraction factor along pair-graph edges.
    pub s: f64,
}

impl GraphMetric {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

/// Evenly spaced values in `[2, 4]` along a linear extension of the pair
/// graph, with images below their sources.
pub fn build_graph_metric(n_bodies: usize, edge_map: &[Vec<usize>]) -> Result<GraphMetric> {
    let nodes = pairs(n_bodies);
    let adj = pair_edges(n_bodies, edge_map);
    // Kahn on the reversed graph: sinks of the pair graph come first
    let mut out_deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut preds = vec![Vec::new(); nodes.len()];
    for (v, ws) in adj.iter().enumerate() {
        for &w in ws {
            preds[w].push(v);
        }
    }
    let mut ready: BTreeSet<usize> = (0..nodes.len()).filter(|&v| out_deg[v] == 0).collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &u in &preds[v] {
            out_deg[u] -= 1;
            if out_deg[u] == 0 {
                ready.insert(u);
            }
        }
    }
    if order.len() != nodes.len() {
        return Err(Error::PartialOrderViolation);
    }
    let m = order.len();
    let mut values = vec![vec![0.0; n_bodies]; n_bodies];
    let level = |k: usize| if m <= 1 { 2.0 } else { 2.0 + 2.0 * (k as f64) / ((m - 1) as f64) };
    for (k, &v) in order.iter().enumerate() {
        let (a, b) = nodes[v];
        values[a][b] = level(k);
        values[b][a] = level(k);
    }
    let s = (1..m).map(|k| level(k - 1) / level(k)).fold(0.0, f64::max);
    Ok(GraphMetric { n: n_bodies, values, order: order.into_iter().map(|v| nodes[v]).collect(), s })
}

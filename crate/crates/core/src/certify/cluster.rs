//! Single-linkage clustering of a point cloud at successive gap levels.
//!
//! Level `k` cuts the `k` longest links of the linkage tree and returns
//! `k + 1` clusters. On P¹ the tree is the chain of chart-sorted points; on
//! P² it is a minimum spanning tree of a subsample, with the remaining
//! points attached to their nearest sample point.

use alloc::vec;
use alloc::vec::Vec;

use crate::convex::Chart;
use crate::engine::{NearestIndex, PointCloud};
use crate::projcore::{round_distance_unchecked, Dim};
use crate::Result;

/// Largest subsample used for the spanning tree on P².
pub const MST_SAMPLE: usize = 4000;

pub struct Hierarchy {
    /// Node count of the linkage tree.
    nodes: usize,
    /// Links `(length, a, b)` sorted longest first.
    links: Vec<(f64, usize, usize)>,
    /// Tree node of each cloud point.
    node_of: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

fn sort_links(links: &mut [(f64, usize, usize)]) {
    links.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
}

impl Hierarchy {
    pub fn new(cloud: &PointCloud, chart: &Chart) -> Result<Hierarchy> {
        match cloud.dim() {
            Dim::One => {
                let mut keyed: Vec<(f64, usize)> = Vec::with_capacity(cloud.len());
                for (i, p) in cloud.points().iter().enumerate() {
                    keyed.push((chart.to_chart(p)?[0], i));
                }
                keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                let pts = cloud.points();
                let mut links: Vec<(f64, usize, usize)> = (1..keyed.len())
                    .map(|k| (round_distance_unchecked(&pts[keyed[k - 1].1], &pts[keyed[k].1]), k - 1, k))
                    .collect();
                sort_links(&mut links);
                let mut node_of = vec![0; cloud.len()];
                for (k, &(_, i)) in keyed.iter().enumerate() {
                    node_of[i] = k;
                }
                Ok(Hierarchy { nodes: keyed.len(), links, node_of })
            }
            Dim::Two => {
                for p in cloud.points() {
                    chart.to_chart(p)?;
                }
                let sample = cloud.subsample(MST_SAMPLE);
                let sp = sample.points();
                let n = sp.len();
                // Prim, O(n²)
                let mut in_tree = vec![false; n];
                let mut best = vec![f64::INFINITY; n];
                let mut parent = vec![0usize; n];
                let mut links = Vec::with_capacity(n.saturating_sub(1));
                if n > 0 {
                    in_tree[0] = true;
                    for j in 1..n {
                        best[j] = round_distance_unchecked(&sp[0], &sp[j]);
                    }
                    for _ in 1..n {
                        let mut v = usize::MAX;
                        for j in 0..n {
                            if !in_tree[j] && (v == usize::MAX || best[j] < best[v]) {
                                v = j;
                            }
                        }
                        in_tree[v] = true;
                        links.push((best[v], parent[v].min(v), parent[v].max(v)));
                        for j in 0..n {
                            if !in_tree[j] {
                                let d = round_distance_unchecked(&sp[v], &sp[j]);
                                if d < best[j] {
                                    best[j] = d;
                                    parent[j] = v;
                                }
                            }
                        }
                    }
                }
                sort_links(&mut links);
                let index = NearestIndex::new(sp);
                let node_of = cloud.points().iter().map(|p| index.nearest(p).0).collect();
                Ok(Hierarchy { nodes: n, links, node_of })
            }
        }
    }

    /// Highest level with distinct clusters.
    pub fn max_level(&self) -> usize {
        self.links.len()
    }

    /// Length of the `k`-th longest link (1-based), 0 past the end.
    pub fn cut_length(&self, k: usize) -> f64 {
        if k == 0 || k > self.links.len() {
            0.0
        } else {
            self.links[k - 1].0
        }
    }

    /// Cluster label of every cloud point at level `k`, labels `0..count`
    /// numbered by first appearance in tree order.
    pub fn labels(&self, k: usize) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.nodes);
        for &(_, a, b) in self.links.iter().skip(k) {
            uf.union(a, b);
        }
        let mut label_of_root = vec![usize::MAX; self.nodes];
        let mut count = 0;
        for v in 0..self.nodes {
            let r = uf.find(v);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = count;
                count += 1;
            }
        }
        let labels = self.node_of.iter().map(|&v| label_of_root[uf.find(v)]).collect();
        (labels, count)
    }
}

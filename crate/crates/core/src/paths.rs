// SPDX-License-Identifier: Apache-2.0

//! Exact counts of bounded-length paths in a tree.
//!
//! For a path length `l`, `p_l` counts vertex pairs at distance exactly `l`
//! and `p_l(v)` counts those whose connecting path has `v` as an interior
//! vertex. Prefix sums over `l = 2..=k` give `P_k` and `P_k(v)`.
//!
//! Two independent routes build the full table: [`path_counts_naive`] walks
//! every pair's path, [`path_counts_fast`] convolves per-neighbor distance
//! histograms. They must agree exactly.

use rayon::prelude::*;

use crate::count::{add_exact, mul_exact, Count};
use crate::tree::{Tree, VertexId};

/// Path counts `p_l`, `p_l(v)` and their prefix sums for one tree.
///
/// Vectors are indexed directly by length; indices 0 and 1 hold zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCountTable<C> {
    diameter: usize,
    per_len: Vec<C>,
    per_len_at: Vec<Vec<C>>,
    up_to: Vec<C>,
    up_to_at: Vec<Vec<C>>,
}

impl<C: Count> PathCountTable<C> {
    fn from_counts(diameter: usize, per_len: Vec<C>, per_len_at: Vec<Vec<C>>) -> Self {
        let up_to = prefix_sums(&per_len);
        let up_to_at = per_len_at.iter().map(|row| prefix_sums(row)).collect();
        PathCountTable {
            diameter,
            per_len,
            per_len_at,
            up_to,
            up_to_at,
        }
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn n(&self) -> usize {
        self.per_len_at.len()
    }

    /// `p_len`: number of paths of exactly `len` edges (zero past the diameter).
    pub fn count(&self, len: usize) -> C {
        self.per_len.get(len).cloned().unwrap_or_else(C::zero)
    }

    /// `p_len(v)`: paths of exactly `len` edges with `v` interior.
    pub fn count_through(&self, v: VertexId, len: usize) -> C {
        self.per_len_at[v].get(len).cloned().unwrap_or_else(C::zero)
    }

    /// `P_k`: paths of length `2..=k`.
    pub fn count_up_to(&self, k: usize) -> C {
        clamp_get(&self.up_to, k)
    }

    /// `P_k(v)`: paths of length `2..=k` with `v` interior.
    pub fn count_through_up_to(&self, v: VertexId, k: usize) -> C {
        clamp_get(&self.up_to_at[v], k)
    }

    pub fn per_len(&self) -> &[C] {
        &self.per_len
    }

    pub fn per_len_at(&self, v: VertexId) -> &[C] {
        &self.per_len_at[v]
    }
}

fn clamp_get<C: Count>(v: &[C], k: usize) -> C {
    if k < 2 || v.is_empty() {
        C::zero()
    } else {
        v[k.min(v.len() - 1)].clone()
    }
}

fn prefix_sums<C: Count>(per_len: &[C]) -> Vec<C> {
    let mut acc = C::zero();
    per_len
        .iter()
        .enumerate()
        .map(|(len, x)| {
            if len >= 2 {
                acc = add_exact(&acc, x);
            }
            acc.clone()
        })
        .collect()
}

/// Brute-force table: walks the unique path of every pair at distance ≥ 2.
///
/// O(n² d); this is the reference the other routes are checked against.
pub fn path_counts_naive<C: Count>(tree: &Tree) -> PathCountTable<C> {
    let n = tree.n();
    let d = tree.diameter();
    let mut per_len = vec![0u64; d + 1];
    let mut per_len_at = vec![vec![0u64; d + 1]; n];
    for s in 0..n {
        let (dist, parent) = tree.bfs_from(s);
        for t in s + 1..n {
            let len = dist[t];
            if len < 2 {
                continue;
            }
            per_len[len] += 1;
            let mut x = parent[t];
            while x != s {
                per_len_at[x][len] += 1;
                x = parent[x];
            }
        }
    }
    let conv = |row: Vec<u64>| row.into_iter().map(|x| C::from_u64(x).unwrap()).collect();
    PathCountTable::from_counts(d, conv(per_len), per_len_at.into_iter().map(conv).collect())
}

/// Histogram-convolution table.
///
/// For each vertex `w`, one BFS splits the other vertices by the neighbor
/// subtree they hang from and by distance. Pairs from different subtrees
/// at distances `a` and `b` are exactly the paths of length `a + b` with
/// `w` interior; summing the per-vertex distance counts gives `2 p_l`.
pub fn path_counts_fast<C: Count>(tree: &Tree) -> PathCountTable<C> {
    let n = tree.n();
    let d = tree.diameter();
    let rows: Vec<(Vec<u64>, Vec<C>)> = (0..n)
        .into_par_iter()
        .map(|w| {
            let hists = branch_histograms::<C>(tree, w);
            let mut by_dist = vec![0u64; d + 1];
            for h in &hists {
                for (a, x) in h.iter().enumerate() {
                    by_dist[a] += x.to_u64().unwrap();
                }
            }
            (by_dist, cross_branch_pairs(&hists, d))
        })
        .collect();
    let mut doubled = vec![0u64; d + 1];
    let mut per_len_at = Vec::with_capacity(n);
    for (by_dist, row) in rows {
        for (acc, x) in doubled.iter_mut().zip(by_dist) {
            *acc += x;
        }
        per_len_at.push(row);
    }
    let per_len = doubled
        .into_iter()
        .enumerate()
        .map(|(len, x)| {
            debug_assert!(x % 2 == 0);
            if len < 2 {
                C::zero()
            } else {
                C::from_u64(x / 2).unwrap()
            }
        })
        .collect();
    PathCountTable::from_counts(d, per_len, per_len_at)
}

/// Distance histograms of the subtrees hanging off each neighbor of `w`.
/// `hist[a]` counts vertices at distance `a` from `w`; index 0 is zero.
pub(crate) fn branch_histograms<C: Count>(tree: &Tree, w: VertexId) -> Vec<Vec<C>> {
    let nbrs = tree.neighbors(w);
    let mut hists: Vec<Vec<u64>> = vec![vec![0, 1]; nbrs.len()];
    let mut branch = vec![usize::MAX; tree.n()];
    let mut dist = vec![0usize; tree.n()];
    let mut queue = std::collections::VecDeque::new();
    branch[w] = nbrs.len();
    for (i, &c) in nbrs.iter().enumerate() {
        branch[c] = i;
        dist[c] = 1;
        queue.push_back(c);
    }
    while let Some(x) = queue.pop_front() {
        for &y in tree.neighbors(x) {
            if branch[y] == usize::MAX {
                branch[y] = branch[x];
                dist[y] = dist[x] + 1;
                let h = &mut hists[branch[x]];
                if h.len() <= dist[y] {
                    h.resize(dist[y] + 1, 0);
                }
                h[dist[y]] += 1;
                queue.push_back(y);
            }
        }
    }
    hists
        .into_iter()
        .map(|h| h.into_iter().map(|x| C::from_u64(x).unwrap()).collect())
        .collect()
}

/// `out[l] = Σ_{i<j} Σ_{a+b=l} h_i[a] h_j[b]` for `l ≤ max_len`.
pub(crate) fn cross_branch_pairs<C: Count>(hists: &[Vec<C>], max_len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); max_len + 1];
    let mut acc: Vec<C> = Vec::new();
    for h in hists {
        for (a, x) in acc.iter().enumerate().skip(1) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in h.iter().enumerate().skip(1) {
                if a + b > max_len {
                    break;
                }
                if !y.is_zero() {
                    out[a + b] = add_exact(&out[a + b], &mul_exact(x, y));
                }
            }
        }
        if acc.len() < h.len() {
            acc.resize(h.len(), C::zero());
        }
        for (slot, y) in acc.iter_mut().zip(h) {
            *slot = add_exact(slot, y);
        }
    }
    out
}

/// `p_l(v)` for `l = 0..=max_len` for a single vertex.
pub fn counts_through<C: Count>(tree: &Tree, v: VertexId, max_len: usize) -> Vec<C> {
    cross_branch_pairs(&branch_histograms::<C>(tree, v), max_len)
}

/// `p_l` for `l = 0..=d` via a rooted merge of depth histograms.
///
/// Independent of both table routes; cost is roughly `n * height`, which
/// keeps single-vertex profiles cheap on large or many trees.
pub fn pair_distance_counts<C: Count>(tree: &Tree) -> Vec<C> {
    let n = tree.n();
    let d = tree.diameter();
    let (_, parent) = tree.bfs_from(0);
    let mut order: Vec<VertexId> = (0..n).collect();
    let depth = tree.bfs_from(0).0;
    order.sort_by_key(|&v| std::cmp::Reverse(depth[v]));
    let mut down: Vec<Vec<C>> = vec![Vec::new(); n];
    let mut out = vec![C::zero(); d + 1];
    for &v in &order {
        let mut hist = vec![C::one()];
        for &c in tree.neighbors(v) {
            if c == parent[v] {
                continue;
            }
            let child = std::mem::take(&mut down[c]);
            // child depths shift by one relative to v
            for (a, x) in hist.iter().enumerate() {
                for (b, y) in child.iter().enumerate() {
                    let len = a + b + 1;
                    out[len] = add_exact(&out[len], &mul_exact(x, y));
                }
            }
            if hist.len() < child.len() + 1 {
                hist.resize(child.len() + 1, C::zero());
            }
            for (b, y) in child.into_iter().enumerate() {
                hist[b + 1] = add_exact(&hist[b + 1], &y);
            }
        }
        down[v] = hist;
    }
    out[0] = C::zero();
    if d >= 1 {
        out[1] = C::zero();
    }
    out
}

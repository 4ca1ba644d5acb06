// SPDX-License-Identifier: Apache-2.0

//! The crossing family `T_l`.
//!
//! `u` and `v` are joined by a path of `2l` edges. For each `j < l`:
//!
//! * a *u-branch*: a path of `2j` edges from `u` to a handle carrying `a_j`
//!   leaves (for `j = 0` the handle is `u` itself), so the leaf set `A_j`
//!   sits at distance `2j + 1` from `u`;
//! * a *v-branch*: a path of `2j + 1` edges from `v` to a handle carrying
//!   `b_j` leaves, so `B_j` sits at distance `2j + 2` from `v`.
//!
//! Leaf counts are chosen in order `k = 2, 3, ..., 2l` (`a` at even `k`,
//! `b` at odd `k`) so that `P_k(u) > P_k(v)` for even `k` and
//! `P_k(v) > P_k(u)` for odd `k`. Leaves of `A_i` lie too far from `u` to
//! sit on a path of length `< 2i + 2` through `u`, and every path through
//! `v` reaching them is longer than `2l + 1`; the same holds for `B_i`
//! mirrored. So a later choice never disturbs an earlier inequality, and the
//! skeleton can be built in full with placeholder counts.

use std::fmt;
use std::str::FromStr;

use super::FamilyError;
use crate::paths::counts_through;
use crate::tree::{Tree, VertexId};

/// Largest leaf count any single group may receive.
pub const LEAF_CAP: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TellStrategy {
    /// Smallest positive counts satisfying each inequality, evaluated exactly.
    MinimalSearch,
    /// Counts from the one-sided upper bounds on `p_k(u)`, `p_k(v)`.
    PaperBound,
}

impl fmt::Display for TellStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TellStrategy::MinimalSearch => "minimal-search",
            TellStrategy::PaperBound => "paper-bound",
        })
    }
}

impl FromStr for TellStrategy {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal-search" | "minimal_search" | "minimal" => Ok(TellStrategy::MinimalSearch),
            "paper-bound" | "paper_bound" | "paper" => Ok(TellStrategy::PaperBound),
            _ => Err(FamilyError::BadSpec(s.to_string())),
        }
    }
}

/// Leaf counts `a_0..a_{l-1}`, `b_0..b_{l-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TellChoice {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub strategy: TellStrategy,
}

#[derive(Debug, Clone)]
pub struct TellTree {
    pub tree: Tree,
    pub u: VertexId,
    pub v: VertexId,
    pub choice: TellChoice,
}

/// Builds `T_l` with the given leaf counts. `u = 0`, `v = 2l`.
pub fn build_tell(l: usize, a: &[u64], b: &[u64]) -> (Tree, VertexId, VertexId) {
    assert!(l >= 1 && a.len() == l && b.len() == l);
    let u = 0;
    let v = 2 * l;
    let mut edges: Vec<(usize, usize)> = (0..2 * l).map(|x| (x, x + 1)).collect();
    let mut next = 2 * l + 1;
    let mut branch = |root: usize, len: usize, leaves: u64, edges: &mut Vec<(usize, usize)>| {
        let mut handle = root;
        for _ in 0..len {
            edges.push((handle, next));
            handle = next;
            next += 1;
        }
        for _ in 0..leaves {
            edges.push((handle, next));
            next += 1;
        }
    };
    for j in 0..l {
        branch(u, 2 * j, a[j], &mut edges);
        branch(v, 2 * j + 1, b[j], &mut edges);
    }
    let n = edges.len() + 1;
    (Tree::new(n, &edges).expect("T_l is a tree"), u, v)
}

#[derive(Clone, Copy)]
enum Side {
    A,
    B,
}

/// `P_k(u) - P_k(v)` on the tree with the given counts.
fn gap(l: usize, a: &[u64], b: &[u64], k: usize) -> i128 {
    let (tree, u, v) = build_tell(l, a, b);
    let sum = |w| -> i128 {
        counts_through::<u128>(&tree, w, k)
            .iter()
            .skip(2)
            .map(|&x| x as i128)
            .sum()
    };
    sum(u) - sum(v)
}

/// Smallest `x` in `1..=LEAF_CAP` making the wanted side strictly larger.
///
/// The margin is `f(0) + beta x + gamma C(x, 2)`: each added leaf brings the
/// same set of paths, plus pairwise paths when the handle is the vertex
/// itself. Three probes pin the polynomial exactly.
fn search_group(l: usize, a: &mut [u64], b: &mut [u64], side: Side, idx: usize, k: usize) -> Option<u64> {
    let mut margin_at = |x: u64| {
        match side {
            Side::A => a[idx] = x,
            Side::B => b[idx] = x,
        }
        let g = gap(l, a, b, k);
        match side {
            Side::A => g,
            Side::B => -g,
        }
    };
    let f0 = margin_at(0);
    let f1 = margin_at(1);
    let f2 = margin_at(2);
    let beta = f1 - f0;
    let gamma = f2 - 2 * f1 + f0;
    assert!(beta >= 0 && gamma >= 0, "leaf margin must be nondecreasing");
    let f = |x: u64| {
        let x = x as i128;
        f0 + beta * x + gamma * (x * (x - 1) / 2)
    };
    if f(LEAF_CAP) <= 0 {
        return None;
    }
    let (mut lo, mut hi) = (1u64, LEAF_CAP);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if f(mid) > 0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    debug_assert_eq!(margin_at(lo), f(lo));
    Some(lo)
}

fn minimal_search(l: usize) -> Result<TellChoice, FamilyError> {
    let mut a = vec![1u64; l];
    let mut b = vec![1u64; l];
    for k in 2..=2 * l + 1 {
        let (side, idx) = if k % 2 == 0 { (Side::A, k / 2 - 1) } else { (Side::B, (k - 1) / 2 - 1) };
        let found = search_group(l, &mut a, &mut b, side, idx, k);
        let slot = match side {
            Side::A => &mut a[idx],
            Side::B => &mut b[idx],
        };
        match found {
            Some(x) => *slot = x,
            // the last v group only extends the alternation when affordable
            None if k == 2 * l + 1 => *slot = 1,
            None => {
                return Err(FamilyError::SearchCapExceeded {
                    group: format!("{}_{idx}", if k % 2 == 0 { 'a' } else { 'b' }),
                    cap: LEAF_CAP,
                })
            }
        }
    }
    Ok(TellChoice {
        a,
        b,
        strategy: TellStrategy::MinimalSearch,
    })
}

/// Counts from the one-sided bounds: for even `k`,
/// `a_{k/2-1} >= s_k - 2 Σ_{j<k/2-1} a_j` with
/// `s_k = Σ_{i=2}^{k} (Σ_{j=0}^{ceil(i/2)-2} b_j + (l+1)(i-1))^2`,
/// and for odd `k`,
/// `b_{(k-1)/2-1} >= (s'_k - 2 Σ_{j<(k-1)/2-1} b_j) / 2` with
/// `s'_k = Σ_{i=2}^{k} (Σ_{j=0}^{floor(i/2)-1} a_j + (l+1)(i-1))^2`.
/// `a_0 = C(l+1, 2)`; `b_{l-1}` is not constrained and set to 1.
fn paper_bound(l: usize) -> Result<TellChoice, FamilyError> {
    let big_l = l as u128;
    let mut a: Vec<u128> = Vec::with_capacity(l);
    let mut b: Vec<u128> = Vec::with_capacity(l);
    let sum_first = |xs: &[u128], count: i64| -> u128 {
        if count <= 0 {
            0
        } else {
            xs[..count as usize].iter().sum()
        }
    };
    let check = |x: u128, name: String| -> Result<u128, FamilyError> {
        if x > LEAF_CAP as u128 {
            Err(FamilyError::SearchCapExceeded { group: name, cap: LEAF_CAP })
        } else {
            Ok(x.max(1))
        }
    };
    a.push(check((big_l + 1) * big_l / 2, "a_0".into())?);
    for k in 3..=2 * l {
        if k % 2 == 0 {
            let idx = k / 2 - 1;
            let s_k: u128 = (2..=k)
                .map(|i| {
                    let base = sum_first(&b, (i as i64 + 1) / 2 - 1) + (big_l + 1) * (i as u128 - 1);
                    base * base
                })
                .sum();
            let want = s_k.saturating_sub(2 * sum_first(&a, idx as i64));
            a.push(check(want, format!("a_{idx}"))?);
        } else {
            let idx = (k - 1) / 2 - 1;
            let s_k: u128 = (2..=k)
                .map(|i| {
                    let base = sum_first(&a, i as i64 / 2) + (big_l + 1) * (i as u128 - 1);
                    base * base
                })
                .sum();
            let want = s_k.saturating_sub(2 * sum_first(&b, idx as i64));
            b.push(check(want.div_ceil(2), format!("b_{idx}"))?);
        }
    }
    b.push(1);
    Ok(TellChoice {
        a: a.into_iter().map(|x| x as u64).collect(),
        b: b.into_iter().map(|x| x as u64).collect(),
        strategy: TellStrategy::PaperBound,
    })
}

/// Builds `T_l` with counts from `strategy`.
pub fn make_tell(l: usize, strategy: TellStrategy) -> Result<TellTree, FamilyError> {
    if l < 1 {
        return Err(FamilyError::InvalidParameter("tell needs l >= 1".into()));
    }
    let choice = match strategy {
        TellStrategy::MinimalSearch => minimal_search(l)?,
        TellStrategy::PaperBound => paper_bound(l)?,
    };
    let (tree, u, v) = build_tell(l, &choice.a, &choice.b);
    Ok(TellTree { tree, u, v, choice })
}

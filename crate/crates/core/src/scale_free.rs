// SPDX-License-Identifier: Apache-2.0

//! Scale-free (preferential attachment) random trees.
//!
//! Vertices carry labels `1..=n` in insertion order; internally vertex `t`
//! is index `t - 1`. Vertex 1 owns a virtual edge, so with `t` vertices
//! present the total attachment weight is `2t - 1`.
//!
//! A path in such a tree climbs from one endpoint to the least label on it
//! and then descends, so its labels first strictly decrease and then
//! strictly increase ("valley" order). Any other vertex sequence has
//! presence probability zero.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::paths::counts_through;
use crate::profile::all_profiles;
use crate::tree::Tree;
use crate::Rational;

/// A 1-based vertex label, `1..=n`; vertex 1 is the root.
pub type Label = usize;

/// Largest `n` for exact history enumeration (`(n-1)!` histories).
pub const MAX_EXACT_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaleFreeError {
    #[error("exact enumeration supports n <= {max}, got {n}")]
    NTooLarge { n: usize, max: usize },
    #[error("invalid tree size {0}")]
    InvalidN(usize),
    #[error("not a simple path: {0:?}")]
    NotASimplePath(Vec<Label>),
    #[error("labels of {0:?} are not in valley order; no recursive tree contains this path")]
    ImpossiblePath(Vec<Label>),
    #[error("label {label} outside 1..={n}")]
    LabelOutOfRange { label: Label, n: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("at least one trial is required")]
    NoTrials,
    #[error("expectation methods disagree for v={v}, k={k}: {by_histories} vs {by_paths}")]
    MethodsDisagree {
        v: Label,
        k: usize,
        by_histories: Rational,
        by_paths: Rational,
    },
}

/// splitmix64 finalizer applied to `seed + (index + 1) * gamma`.
///
/// Substream `i` of master seed `s` is `ChaCha8Rng::seed_from_u64(mix(s, i))`.
pub fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The generator for trial `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, index))
}

/// A recursive tree: `parent[i] < i` for `i >= 1`, `parent[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursiveTree {
    parent: Vec<usize>,
}

impl RecursiveTree {
    pub fn from_parents(parent: Vec<usize>) -> Result<Self, ScaleFreeError> {
        if parent.is_empty() {
            return Err(ScaleFreeError::InvalidN(0));
        }
        if parent.iter().enumerate().skip(1).any(|(i, &p)| p >= i) {
            return Err(ScaleFreeError::PreconditionViolated(
                "parent labels must precede their children".into(),
            ));
        }
        Ok(RecursiveTree { parent })
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// 0-based parent array; entry 0 is unused.
    pub fn parents(&self) -> &[usize] {
        &self.parent
    }

    /// Parent label of vertex `t >= 2`.
    pub fn parent_of(&self, t: Label) -> Label {
        self.parent[t - 1] + 1
    }

    /// Undirected view on vertices `0..n` (label `t` is vertex `t - 1`).
    pub fn tree(&self) -> Tree {
        Tree::from_parents(&self.parent)
    }

    /// Whether consecutive labels of `path` are adjacent.
    pub fn contains_path(&self, path: &[Label]) -> bool {
        path.windows(2).all(|w| {
            let (x, y) = (w[0] - 1, w[1] - 1);
            (x > 0 && self.parent[x] == y) || (y > 0 && self.parent[y] == x)
        })
    }
}

/// Samples a scale-free tree on `n >= 1` vertices.
///
/// Keeps one token per unit of attachment weight; the new vertex picks a
/// token uniformly, then the parent and the new vertex each gain one.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RecursiveTree {
    assert!(n >= 1, "a tree needs at least one vertex");
    let mut tokens = Vec::with_capacity(2 * n);
    tokens.push(0usize);
    let mut parent = vec![0usize; n];
    for (t, slot) in parent.iter_mut().enumerate().skip(1) {
        let p = tokens[rng.random_range(0..tokens.len())];
        *slot = p;
        tokens.push(p);
        tokens.push(t);
    }
    RecursiveTree { parent }
}

/// `(a, b, c, L, R)` of a path: endpoints `a < b`, least label `c`,
/// `L` the path labels in `(c, a)`, `R` those in `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PathSignature {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub l: BTreeSet<Label>,
    pub r: BTreeSet<Label>,
}

impl PathSignature {
    /// Number of edges.
    pub fn len(&self) -> usize {
        if self.a == self.c {
            self.r.len() + 1
        } else {
            self.l.len() + self.r.len() + 2
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_interior(&self, x: Label) -> bool {
        (x == self.c && self.c != self.a) || self.l.contains(&x) || self.r.contains(&x)
    }

    pub fn contains(&self, x: Label) -> bool {
        x == self.a || x == self.b || self.is_interior(x)
    }
}

fn check_simple(path: &[Label]) -> Result<(), ScaleFreeError> {
    let distinct: BTreeSet<_> = path.iter().collect();
    if path.len() < 2 || distinct.len() != path.len() || path.contains(&0) {
        return Err(ScaleFreeError::NotASimplePath(path.to_vec()));
    }
    Ok(())
}

/// Strictly decreasing to the minimum, then strictly increasing.
pub fn is_valley(path: &[Label]) -> bool {
    let Some(lo) = path.iter().enumerate().min_by_key(|&(_, x)| x).map(|(i, _)| i) else {
        return false;
    };
    path[..=lo].windows(2).all(|w| w[0] > w[1]) && path[lo..].windows(2).all(|w| w[0] < w[1])
}

pub fn signature_of_path(path: &[Label]) -> Result<PathSignature, ScaleFreeError> {
    check_simple(path)?;
    if !is_valley(path) {
        return Err(ScaleFreeError::ImpossiblePath(path.to_vec()));
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    let (a, b) = (first.min(last), first.max(last));
    let c = *path.iter().min().expect("nonempty");
    Ok(PathSignature {
        a,
        b,
        c,
        l: path.iter().copied().filter(|&x| c < x && x < a).collect(),
        r: path.iter().copied().filter(|&x| a < x && x < b).collect(),
    })
}

fn frac(num: usize, den: usize) -> Rational {
    Ratio::new(BigUint::from(num), BigUint::from(den))
}

/// Presence probability `q(a, b, c, L, R)` of any path with this signature.
pub fn path_probability(sig: &PathSignature) -> Rational {
    let mut q = frac(1, 2 * sig.b - 2);
    for &i in &sig.r {
        q *= frac(1, 2 * i - 2);
    }
    for t in sig.a + 1..=sig.b {
        q *= frac(2 * t - 2, 2 * t - 3);
    }
    if sig.a != sig.c {
        q *= frac(2, 2 * sig.c - 1);
        for &i in &sig.l {
            q *= frac(1, 2 * i - 1);
        }
    }
    q
}

/// Presence probability of a concrete vertex sequence: `q` of its
/// signature, or zero when no recursive tree can contain it.
pub fn sequence_probability(path: &[Label]) -> Result<Rational, ScaleFreeError> {
    match signature_of_path(path) {
        Ok(sig) => Ok(path_probability(&sig)),
        Err(ScaleFreeError::ImpossiblePath(_)) => Ok(Rational::zero()),
        Err(e) => Err(e),
    }
}

/// Every attachment history on `n` vertices with its exact probability.
///
/// All probabilities share the denominator `prod_{t=1}^{n-1} (2t - 1)`;
/// each history stores its numerator.
#[derive(Debug, Clone)]
pub struct Histories {
    n: usize,
    denominator: u64,
    trees: Vec<RecursiveTree>,
    weights: Vec<u64>,
}

impl Histories {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RecursiveTree, Rational)> + '_ {
        self.trees.iter().zip(&self.weights).map(|(t, &w)| (t, self.ratio(w)))
    }

    pub fn total(&self) -> Rational {
        self.ratio(self.weights.iter().sum())
    }

    fn ratio(&self, numer: u64) -> Rational {
        Ratio::new(BigUint::from(numer), BigUint::from(self.denominator))
    }

    /// Probability that the realized tree contains `path`.
    pub fn presence(&self, path: &[Label]) -> Rational {
        let numer = self
            .trees
            .iter()
            .zip(&self.weights)
            .filter(|(t, _)| t.contains_path(path))
            .map(|(_, &w)| w)
            .sum();
        self.ratio(numer)
    }

    /// `E[p_k(v)]` for every label `v` and `k = 0..n`, indexed `[v - 1][k]`.
    pub fn expected_path_counts(&self) -> Vec<Vec<Rational>> {
        let n = self.n;
        let mut acc = vec![vec![0u64; n]; n];
        for (rt, &w) in self.trees.iter().zip(&self.weights) {
            let tree = rt.tree();
            for (v, row) in acc.iter_mut().enumerate() {
                let counts = counts_through::<u64>(&tree, v, n - 1);
                for (slot, x) in row.iter_mut().zip(counts) {
                    *slot += w * x;
                }
            }
        }
        acc.into_iter()
            .map(|row| row.into_iter().map(|x| self.ratio(x)).collect())
            .collect()
    }
}

fn exact_guard(n: usize) -> Result<(), ScaleFreeError> {
    if n == 0 {
        return Err(ScaleFreeError::InvalidN(0));
    }
    if n > MAX_EXACT_N {
        return Err(ScaleFreeError::NTooLarge { n, max: MAX_EXACT_N });
    }
    Ok(())
}

pub fn enumerate_histories(n: usize) -> Result<Histories, ScaleFreeError> {
    exact_guard(n)?;
    fn rec(
        t: usize,
        n: usize,
        weight: u64,
        deg: &mut [u64],
        parent: &mut Vec<usize>,
        out: &mut Histories,
    ) {
        if t == n {
            out.trees.push(RecursiveTree { parent: parent.clone() });
            out.weights.push(weight);
            return;
        }
        for p in 0..t {
            let w = deg[p];
            deg[p] += 1;
            deg[t] = 1;
            parent.push(p);
            rec(t + 1, n, weight * w, deg, parent, out);
            parent.pop();
            deg[p] -= 1;
        }
    }
    let mut out = Histories {
        n,
        denominator: (1..n as u64).map(|t| 2 * t - 1).product(),
        trees: Vec::new(),
        weights: Vec::new(),
    };
    let mut deg = vec![0u64; n];
    deg[0] = 1;
    rec(1, n, 1, &mut deg, &mut vec![0], &mut out);
    Ok(out)
}

fn check_labels(n: usize, path: &[Label]) -> Result<(), ScaleFreeError> {
    check_simple(path)?;
    match path.iter().find(|&&x| x > n) {
        Some(&label) => Err(ScaleFreeError::LabelOutOfRange { label, n }),
        None => Ok(()),
    }
}

/// Probability that `T_n` contains `path`, by summing over histories.
pub fn exact_path_presence_prob(n: usize, path: &[Label]) -> Result<Rational, ScaleFreeError> {
    exact_guard(n)?;
    check_labels(n, path)?;
    Ok(enumerate_histories(n)?.presence(path))
}

/// All valley paths with `len` edges on labels `1..=n`, oriented so the
/// first label is below the last.
pub fn valley_paths(n: usize, len: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    if len == 0 || len + 1 > n {
        return out;
    }
    for set in 0u32..(1 << n) {
        if set.count_ones() as usize != len + 1 {
            continue;
        }
        let labels: Vec<Label> = (1..=n).filter(|&x| set >> (x - 1) & 1 == 1).collect();
        let (c, rest) = (labels[0], &labels[1..]);
        for side in 0u32..(1 << rest.len()) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (i, &x) in rest.iter().enumerate() {
                if side >> i & 1 == 1 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            let Some(&b) = right.last() else { continue };
            if left.last().is_some_and(|&a| a > b) {
                continue;
            }
            let mut path: Vec<Label> = left.into_iter().rev().collect();
            path.push(c);
            path.extend(right);
            out.push(path);
        }
    }
    out
}

/// `E[p_k(v)]` for every `v` and `k = 0..n`, indexed `[v - 1][k]`, summing
/// `q` over concrete paths with `v` interior.
pub fn expected_path_counts_by_paths(n: usize) -> Result<Vec<Vec<Rational>>, ScaleFreeError> {
    exact_guard(n)?;
    let mut out = vec![vec![Rational::zero(); n]; n];
    for len in 2..n {
        for path in valley_paths(n, len) {
            let q = path_probability(&signature_of_path(&path)?);
            for &v in &path[1..len] {
                out[v - 1][len] += &q;
            }
        }
    }
    Ok(out)
}

/// Exact `E[p_k(v)]` for every label `v`, both routes cross-checked.
pub fn exact_expected_pk_table(n: usize) -> Result<Vec<Vec<Rational>>, ScaleFreeError> {
    let by_histories = enumerate_histories(n)?.expected_path_counts();
    let by_paths = expected_path_counts_by_paths(n)?;
    for (v, (h, p)) in by_histories.iter().zip(&by_paths).enumerate() {
        for (k, (x, y)) in h.iter().zip(p).enumerate() {
            if x != y {
                return Err(ScaleFreeError::MethodsDisagree {
                    v: v + 1,
                    k,
                    by_histories: x.clone(),
                    by_paths: y.clone(),
                });
            }
        }
    }
    Ok(by_histories)
}

/// Exact `E[p_k(v)]` in `T_n`; zero when `k` is outside `2..n`.
pub fn exact_expected_pk(n: usize, v: Label, k: usize) -> Result<Rational, ScaleFreeError> {
    exact_guard(n)?;
    if v == 0 || v > n {
        return Err(ScaleFreeError::LabelOutOfRange { label: v, n });
    }
    if k < 2 || k >= n {
        return Ok(Rational::zero());
    }
    Ok(exact_expected_pk_table(n)?[v - 1][k].clone())
}

/// Which of the six cases of the injection applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum InjectionCase {
    /// `v` already interior.
    Unchanged,
    /// `v` absent, `v + 1 = c`.
    RootShift,
    /// `v` absent, `v + 1` in `R`.
    RightShift,
    /// `v` absent, `v + 1` in `L`.
    LeftShift,
    /// `v = a = c`.
    LiftRoot,
    /// `v = a != c`.
    LiftEndpoint,
}

impl InjectionCase {
    pub fn number(self) -> usize {
        self as usize + 1
    }

    /// `q(f(P)) / q(P)` for this case.
    pub fn factor(self, v: Label) -> Rational {
        match self {
            InjectionCase::Unchanged | InjectionCase::LiftEndpoint => Rational::one(),
            InjectionCase::RootShift | InjectionCase::LeftShift => frac(2 * v + 1, 2 * v - 1),
            InjectionCase::RightShift => frac(2 * v, 2 * v - 2),
            InjectionCase::LiftRoot => frac(2, 1),
        }
    }
}

/// Maps a signature with `v + 1` interior to one with `v` interior.
pub fn injection_f(
    sig: &PathSignature,
    v: Label,
) -> Result<(InjectionCase, PathSignature), ScaleFreeError> {
    let w = v + 1;
    if v == 0 || !sig.is_interior(w) {
        return Err(ScaleFreeError::PreconditionViolated(format!(
            "{w} is not interior in the path"
        )));
    }
    let mut out = sig.clone();
    let case = if sig.is_interior(v) {
        InjectionCase::Unchanged
    } else if !sig.contains(v) {
        if sig.c == w {
            out.c = v;
            InjectionCase::RootShift
        } else if sig.r.contains(&w) {
            out.r.remove(&w);
            out.r.insert(v);
            InjectionCase::RightShift
        } else {
            out.l.remove(&w);
            out.l.insert(v);
            InjectionCase::LeftShift
        }
    } else if sig.a == v && sig.c == v {
        out = PathSignature {
            a: w,
            b: sig.b,
            c: v,
            l: BTreeSet::new(),
            r: sig.r.iter().copied().filter(|&x| x != w).collect(),
        };
        InjectionCase::LiftRoot
    } else if sig.a == v {
        out.a = w;
        out.l.insert(v);
        out.r.remove(&w);
        InjectionCase::LiftEndpoint
    } else {
        return Err(ScaleFreeError::PreconditionViolated(format!(
            "{v} is the larger endpoint while {w} is interior"
        )));
    };
    Ok((case, out))
}

/// The concrete path counterpart of [`injection_f`]: `v + 1` is replaced
/// by `v` when `v` is absent, and moved next to `v` when `v` is the
/// smaller endpoint. The result is oriented first < last.
pub fn injection_path(path: &[Label], v: Label) -> Result<Vec<Label>, ScaleFreeError> {
    let sig = signature_of_path(path)?;
    let (case, _) = injection_f(&sig, v)?;
    let w = v + 1;
    let mut out: Vec<Label> = match case {
        InjectionCase::Unchanged => path.to_vec(),
        InjectionCase::RootShift | InjectionCase::RightShift | InjectionCase::LeftShift => {
            path.iter().map(|&x| if x == w { v } else { x }).collect()
        }
        InjectionCase::LiftRoot | InjectionCase::LiftEndpoint => {
            let mut rest: Vec<Label> = path.iter().copied().filter(|&x| x != w).collect();
            if rest[0] != v {
                rest.reverse();
            }
            let mut out = vec![w];
            out.extend(rest);
            out
        }
    };
    if out[0] > out[out.len() - 1] {
        out.reverse();
    }
    Ok(out)
}

/// Monte Carlo means of `BC_k(v)` for `k = 2..=n-1`.
///
/// Past a sampled tree's diameter `d` the profile stays at `BC_d`, since
/// no pair is farther apart than `d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatedProfiles {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// `[v - 1][k - 2]`.
    pub mean: Vec<Vec<f64>>,
    pub stderr: Vec<Vec<f64>>,
}

const CHUNK: usize = 32;

fn trial_matrix(n: usize, seed: u64, trial: usize) -> Vec<f64> {
    let rt = sample_tree(n, &mut substream(seed, trial as u64));
    let profiles = all_profiles::<u64>(&rt.tree()).expect("n >= 3 gives diameter >= 2");
    let width = n - 2;
    let mut out = Vec::with_capacity(n * width);
    for p in &profiles {
        let vals = p.to_f64();
        let last = *vals.last().expect("nonempty profile");
        out.extend((0..width).map(|i| vals.get(i).copied().unwrap_or(last)));
    }
    out
}

pub fn estimate_expected_profiles(
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<EstimatedProfiles, ScaleFreeError> {
    if trials == 0 {
        return Err(ScaleFreeError::NoTrials);
    }
    if n < 3 {
        return Err(ScaleFreeError::InvalidN(n));
    }
    let cells = n * (n - 2);
    // fixed chunks summed in trial order keep the floats schedule-independent
    let chunks: Vec<(Vec<f64>, Vec<f64>)> = (0..trials.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut sum = vec![0.0; cells];
            let mut sq = vec![0.0; cells];
            for trial in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                for (i, x) in trial_matrix(n, seed, trial).into_iter().enumerate() {
                    sum[i] += x;
                    sq[i] += x * x;
                }
            }
            (sum, sq)
        })
        .collect();
    let mut sum = vec![0.0; cells];
    let mut sq = vec![0.0; cells];
    for (s, q) in chunks {
        sum.iter_mut().zip(s).for_each(|(a, b)| *a += b);
        sq.iter_mut().zip(q).for_each(|(a, b)| *a += b);
    }
    let t = trials as f64;
    let mut mean = Vec::with_capacity(n);
    let mut stderr = Vec::with_capacity(n);
    for v in 0..n {
        let row = v * (n - 2)..(v + 1) * (n - 2);
        let m: Vec<f64> = sum[row.clone()].iter().map(|s| s / t).collect();
        let e = sq[row]
            .iter()
            .zip(&m)
            .map(|(q, mu)| crate::stats::stderr_from_moments(t, *mu, *q))
            .collect();
        mean.push(m);
        stderr.push(e);
    }
    Ok(EstimatedProfiles {
        n,
        trials,
        seed,
        mean,
        stderr,
    })
}

impl EstimatedProfiles {
    /// CSV with header `vertex,k,mean,stderr,trials`; vertices are labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,k,mean,stderr,trials\n");
        for (v, (m, e)) in self.mean.iter().zip(&self.stderr).enumerate() {
            for (i, (x, s)) in m.iter().zip(e).enumerate() {
                writeln!(out, "{},{},{:.6},{:.6},{}", v + 1, i + 2, x, s, self.trials)
                    .expect("writing to a String");
            }
        }
        out
    }
}

/// Rational to `f64` for display.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: usize, b: usize) -> Rational {
        frac(a, b)
    }

    #[test]
    fn mixing_is_fixed() {
        assert_ne!(mix(0, 0), mix(0, 1));
        assert_ne!(mix(1, 0), mix(0, 0));
        assert_eq!(mix(42, 7), mix(42, 7));
        let a: Vec<u32> = (0..4).map(|_| substream(9, 3).random()).collect();
        let b: Vec<u32> = (0..4).map(|_| substream(9, 3).random()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_trees_are_recursive() {
        let mut rng = substream(1, 0);
        let rt = sample_tree(50, &mut rng);
        assert!(rt.parents().iter().enumerate().skip(1).all(|(i, &p)| p < i));
        assert_eq!(rt.tree().n(), 50);
        assert_eq!(sample_tree(2, &mut rng).parent_of(2), 1);
        assert_eq!(sample_tree(1, &mut rng).n(), 1);
    }

    #[test]
    fn signatures() {
        let s = signature_of_path(&[2, 1, 3]).unwrap();
        assert_eq!((s.a, s.b, s.c, s.len()), (2, 3, 1, 2));
        let s = signature_of_path(&[4, 2, 5]).unwrap();
        assert_eq!((s.a, s.b, s.c), (4, 5, 2));
        let s = signature_of_path(&[5, 3, 1, 2, 6]).unwrap();
        assert_eq!(s.l, BTreeSet::from([2, 3]));
        assert!(s.r.is_empty());
        assert_eq!(s.len(), 4);
        let s = signature_of_path(&[1, 3, 4]).unwrap();
        assert_eq!((s.a, s.c, s.len()), (1, 1, 2));
        assert!(!s.is_interior(1) && s.is_interior(3));
        assert!(matches!(signature_of_path(&[1, 2, 1]), Err(ScaleFreeError::NotASimplePath(_))));
        assert!(matches!(signature_of_path(&[3]), Err(ScaleFreeError::NotASimplePath(_))));
        assert!(matches!(signature_of_path(&[1, 3, 2]), Err(ScaleFreeError::ImpossiblePath(_))));
    }

    #[test]
    fn small_probabilities() {
        assert_eq!(path_probability(&signature_of_path(&[1, 2]).unwrap()), rat(1, 1));
        assert_eq!(path_probability(&signature_of_path(&[2, 1, 3]).unwrap()), rat(2, 3));
        assert_eq!(path_probability(&signature_of_path(&[1, 3]).unwrap()), rat(2, 3));
        assert_eq!(sequence_probability(&[1, 3, 2]).unwrap(), Rational::zero());
    }

    #[test]
    fn histories() {
        let h = enumerate_histories(3).unwrap();
        let probs: Vec<_> = h.iter().map(|(_, p)| p).collect();
        assert_eq!(probs, vec![rat(2, 3), rat(1, 3)]);
        let h = enumerate_histories(4).unwrap();
        assert_eq!((h.len(), h.total()), (6, rat(1, 1)));
        assert_eq!(enumerate_histories(5).unwrap().len(), 24);
        assert_eq!(
            enumerate_histories(10).unwrap_err(),
            ScaleFreeError::NTooLarge { n: 10, max: 9 }
        );
    }

    #[test]
    fn presence() {
        assert_eq!(exact_path_presence_prob(3, &[2, 1, 3]).unwrap(), rat(2, 3));
        assert_eq!(exact_path_presence_prob(4, &[1, 2]).unwrap(), rat(1, 1));
        assert_eq!(exact_path_presence_prob(4, &[2, 1]).unwrap(), rat(1, 1));
        assert!(matches!(
            exact_path_presence_prob(3, &[1, 4]),
            Err(ScaleFreeError::LabelOutOfRange { label: 4, n: 3 })
        ));
    }

    #[test]
    fn expectations_at_four() {
        let want = [rat(8, 5), rat(11, 15), rat(1, 5), rat(0, 1)];
        for (v, w) in want.iter().enumerate() {
            assert_eq!(&exact_expected_pk(4, v + 1, 2).unwrap(), w);
        }
        assert_eq!(exact_expected_pk(4, 1, 4).unwrap(), Rational::zero());
        assert!(exact_expected_pk(12, 1, 3).is_err());
    }

    #[test]
    fn valley_enumeration() {
        // three labels, two edges: 2-1-3, 1-2-3 and 1-3-2 is not a valley
        let paths = valley_paths(3, 2);
        assert_eq!(paths, vec![vec![1, 2, 3], vec![2, 1, 3]]);
        assert!(valley_paths(3, 3).is_empty());
    }

    #[test]
    fn injection_cases() {
        let sig = signature_of_path(&[3, 2, 1, 4]).unwrap();
        assert_eq!(injection_f(&sig, 1).unwrap().0, InjectionCase::Unchanged);
        let sig = signature_of_path(&[3, 2, 4]).unwrap();
        let (case, out) = injection_f(&sig, 1).unwrap();
        assert_eq!((case, out.c), (InjectionCase::RootShift, 1));
        let sig = signature_of_path(&[1, 2, 3]).unwrap();
        let (case, out) = injection_f(&sig, 1).unwrap();
        assert_eq!(case, InjectionCase::LiftRoot);
        assert_eq!(path_probability(&out), path_probability(&sig) * rat(2, 1));
        assert_eq!(injection_path(&[1, 2, 3], 1).unwrap(), vec![2, 1, 3]);
        assert!(matches!(injection_f(&sig, 2), Err(ScaleFreeError::PreconditionViolated(_))));
    }

    #[test]
    fn single_trial_estimate_is_the_profile() {
        let est = estimate_expected_profiles(8, 1, 5).unwrap();
        let rt = sample_tree(8, &mut substream(5, 0));
        let ps = all_profiles::<u64>(&rt.tree()).unwrap();
        for (v, p) in ps.iter().enumerate() {
            let vals = p.to_f64();
            assert_eq!(&est.mean[v][..vals.len()], vals.as_slice());
        }
        assert!(est.stderr.iter().flatten().all(|&s| s == 0.0));
        assert!(est.to_csv().starts_with("vertex,k,mean,stderr,trials\n1,2,"));
    }
}

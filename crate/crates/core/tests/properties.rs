// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use bcprof_core::analysis::{count_crossings_in, dip_windows};
use bcprof_core::io::{format_tree, parse_tree};
use bcprof_core::paths::{pair_distance_counts, path_counts_fast, path_counts_naive};
use bcprof_core::profile::{all_profiles, ProfileBuilder};
use bcprof_core::scale_free::{
    enumerate_histories, path_probability, sample_tree, signature_of_path, substream, valley_paths,
};
use bcprof_core::Tree;

fn random_tree() -> impl Strategy<Value = Tree> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::vec(any::<prop::sample::Index>(), n - 1).prop_map(move |picks| {
            let edges: Vec<_> = picks
                .iter()
                .enumerate()
                .map(|(i, p)| (p.index(i + 1), i + 1))
                .collect();
            Tree::new(n, &edges).unwrap()
        })
    })
}

/// Longest strictly alternating run of nonzero signs, by dynamic programming.
fn brute_crossings(a: &[u8], b: &[u8]) -> usize {
    let signs: Vec<i8> = a
        .iter()
        .zip(b)
        .filter(|(x, y)| x != y)
        .map(|(x, y)| if x > y { 1 } else { -1 })
        .collect();
    let mut best = vec![1usize; signs.len()];
    for i in 0..signs.len() {
        for j in 0..i {
            if signs[j] != signs[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(1) - 1
}

/// Whether `w` splits into a non-increasing then non-decreasing piece and
/// is not monotone.
fn is_dip(w: &[u8]) -> bool {
    let down = w.windows(2).any(|p| p[0] > p[1]);
    let up = w.windows(2).any(|p| p[0] < p[1]);
    down && up && (0..w.len()).any(|m| {
        w[..=m].windows(2).all(|p| p[0] >= p[1]) && w[m..].windows(2).all(|p| p[0] <= p[1])
    })
}

/// Most dips fitting into `v` without sharing an entry.
fn brute_dips(v: &[u8]) -> usize {
    let n = v.len();
    let mut best = vec![0usize; n + 1];
    for end in 1..=n {
        best[end] = best[end - 1];
        for start in 0..end {
            if is_dip(&v[start..end]) {
                best[end] = best[end].max(best[start] + 1);
            }
        }
    }
    best[n]
}

proptest! {
    #[test]
    fn fast_counts_match_naive(tree in random_tree()) {
        let fast = path_counts_fast::<u64>(&tree);
        let naive = path_counts_naive::<u64>(&tree);
        prop_assert_eq!(fast.per_len(), naive.per_len());
        for v in 0..tree.n() {
            prop_assert_eq!(fast.per_len_at(v), naive.per_len_at(v));
        }
        prop_assert_eq!(pair_distance_counts::<u64>(&tree), naive.per_len().to_vec());
    }

    #[test]
    fn interior_counts_sum_to_path_lengths(tree in random_tree()) {
        // every path of length l has l - 1 interior vertices
        let table = path_counts_fast::<BigUint>(&tree);
        for l in 0..=table.diameter() {
            let total: BigUint = (0..tree.n()).map(|v| table.count_through(v, l)).sum();
            prop_assert_eq!(total, table.count(l) * BigUint::from(l.saturating_sub(1)));
        }
    }

    #[test]
    fn builder_matches_table(tree in random_tree()) {
        prop_assume!(tree.diameter() >= 2);
        let all = all_profiles::<u64>(&tree).unwrap();
        let b = ProfileBuilder::<u64>::new(&tree).unwrap();
        for p in &all {
            prop_assert_eq!(&b.profile(p.vertex).unwrap(), p);
            for e in &p.entries {
                prop_assert!(e.through <= e.total);
            }
        }
    }

    #[test]
    fn greedy_dips_are_maximal(v in proptest::collection::vec(0u8..5, 0..12)) {
        let windows = dip_windows(&v);
        prop_assert_eq!(windows.len(), brute_dips(&v));
        for w in windows.windows(2) {
            prop_assert!(w[0].1 < w[1].0);
        }
        for (s, e) in windows {
            prop_assert!(is_dip(&v[s..=e]));
        }
    }

    #[test]
    fn crossings_are_maximal(pairs in proptest::collection::vec((0u8..4, 0u8..4), 0..14)) {
        let (a, b): (Vec<u8>, Vec<u8>) = pairs.into_iter().unzip();
        let r = count_crossings_in(&a, &b).unwrap();
        prop_assert_eq!(r.count, brute_crossings(&a, &b));
        if r.count == 0 {
            prop_assert!(r.witnesses.is_empty());
        } else {
            prop_assert_eq!(r.witnesses.len(), r.count + 1);
        }
    }

    #[test]
    fn crossings_are_symmetric(pairs in proptest::collection::vec((0u8..4, 0u8..4), 0..14)) {
        let (a, b): (Vec<u8>, Vec<u8>) = pairs.into_iter().unzip();
        prop_assert_eq!(
            count_crossings_in(&a, &b).unwrap().count,
            count_crossings_in(&b, &a).unwrap().count
        );
    }

    #[test]
    fn tree_files_round_trip(tree in random_tree()) {
        let text = format_tree(&tree, &["family: random".to_string()]);
        let parsed = parse_tree(&text).unwrap();
        prop_assert_eq!(parsed.tree.edges(), tree.edges());
        prop_assert_eq!(parsed.comments, vec!["family: random".to_string()]);
    }

    #[test]
    fn sampled_degree_sum(n in 1usize..200, seed in any::<u64>()) {
        let rt = sample_tree(n, &mut substream(seed, 0));
        let tree = rt.tree();
        let degree_sum: usize = (0..n).map(|v| tree.degree(v)).sum();
        // plus one for the virtual edge at vertex 1
        prop_assert_eq!(degree_sum + 1, 2 * n - 1);
    }
}

#[test]
fn histories_normalize() {
    for n in 1..=8 {
        let h = enumerate_histories(n).unwrap();
        assert_eq!(h.total(), BigUint::from(1u32).into(), "n={n}");
        assert_eq!(h.len(), (1..n).product::<usize>());
    }
}

#[test]
fn signature_multiplicity() {
    for n in 3..=7 {
        for len in 1..n {
            let mut groups: BTreeMap<_, usize> = BTreeMap::new();
            for path in valley_paths(n, len) {
                *groups.entry(signature_of_path(&path).unwrap()).or_default() += 1;
            }
            for (sig, count) in groups {
                assert_eq!(count, 1 << sig.l.len(), "{sig:?}");
            }
        }
    }
}

#[test]
fn sampler_parent_of_three() {
    let trials = 100_000;
    let hits = (0..trials)
        .filter(|&t| sample_tree(3, &mut substream(17, t)).parent_of(3) == 1)
        .count();
    let p = 2.0 / 3.0;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    assert!((hits as f64 / trials as f64 - p).abs() < 3.0 * sigma);
}

#[test]
fn sampler_matches_path_probabilities() {
    let trials = 100_000u64;
    let paths = valley_paths(5, 2).into_iter().chain(valley_paths(5, 3));
    let trees: Vec<_> = (0..trials).map(|t| sample_tree(5, &mut substream(3, t))).collect();
    for path in paths {
        let q = path_probability(&signature_of_path(&path).unwrap());
        let p = bcprof_core::scale_free::rational_to_f64(&q);
        let freq = trees.iter().filter(|rt| rt.contains_path(&path)).count() as f64 / trials as f64;
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((freq - p).abs() < 4.0 * sigma + 1e-12, "{path:?}: {freq} vs {p}");
    }
}

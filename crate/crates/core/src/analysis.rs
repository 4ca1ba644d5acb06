// SPDX-License-Identifier: Apache-2.0

//! Dips, monotonicity, crossings and dominance of exact profiles.
//!
//! The scans work on any `Ord` sequence so they apply equally to profile
//! entries and to raw `P_k(v)` numerators. Reported indices are profile
//! indices `k` (the first entry is `k = 2`).

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::count::Count;
use crate::profile::Profile;
use crate::tree::VertexId;

/// First profile index.
const K0: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("profiles have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Disjoint dip intervals `(k_start, k_end)`, inclusive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DipReport {
    pub count: usize,
    pub intervals: Vec<(usize, usize)>,
}

/// Crossing count `m` and `m + 1` alternating witness indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub count: usize,
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    Constant,
    NonDecreasing,
    NonIncreasing,
    Neither,
}

impl Monotonicity {
    pub fn is_monotone(self) -> bool {
        self != Monotonicity::Neither
    }
}

/// Minimal dip windows chosen greedily left to right.
///
/// A window runs from the first strict decrease to the end of the first
/// strict increase after it; the next search starts past that end, so
/// windows never share an entry. Taking the earliest-ending dip each time
/// maximizes the number of disjoint dips.
pub fn dip_windows<T: Ord>(values: &[T]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i + 1 < values.len() {
        if values[i] <= values[i + 1] {
            i += 1;
            continue;
        }
        let start = i;
        let mut j = i + 1;
        while j + 1 < values.len() && values[j] >= values[j + 1] {
            j += 1;
        }
        if j + 1 >= values.len() {
            break;
        }
        out.push((start, j + 1));
        i = j + 2;
    }
    out
}

pub fn count_dips<C: Count>(p: &Profile<C>) -> DipReport {
    let intervals: Vec<_> = dip_windows(&p.entries)
        .into_iter()
        .map(|(a, b)| (a + K0, b + K0))
        .collect();
    DipReport {
        count: intervals.len(),
        intervals,
    }
}

pub fn classify<T: Ord>(values: &[T]) -> Monotonicity {
    let mut up = false;
    let mut down = false;
    for w in values.windows(2) {
        match w[0].cmp(&w[1]) {
            Ordering::Less => up = true,
            Ordering::Greater => down = true,
            Ordering::Equal => {}
        }
    }
    match (up, down) {
        (false, false) => Monotonicity::Constant,
        (true, false) => Monotonicity::NonDecreasing,
        (false, true) => Monotonicity::NonIncreasing,
        (true, true) => Monotonicity::Neither,
    }
}

pub fn monotonicity_class<C: Count>(p: &Profile<C>) -> Monotonicity {
    classify(&p.entries)
}

/// Positions (0-based) of the lexicographically smallest maximal
/// alternating subsequence: the first index of every run of equal sign
/// among positions where the sequences differ.
pub fn crossing_positions<T: Ord>(a: &[T], b: &[T]) -> Result<Vec<usize>, AnalysisError> {
    if a.len() != b.len() {
        return Err(AnalysisError::LengthMismatch(a.len(), b.len()));
    }
    let mut out = Vec::new();
    let mut last = Ordering::Equal;
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        let ord = x.cmp(y);
        if ord != Ordering::Equal && ord != last {
            out.push(i);
            last = ord;
        }
    }
    Ok(out)
}

fn crossing_report(positions: Vec<usize>) -> CrossingReport {
    if positions.len() < 2 {
        return CrossingReport {
            count: 0,
            witnesses: Vec::new(),
        };
    }
    CrossingReport {
        count: positions.len() - 1,
        witnesses: positions.into_iter().map(|i| i + K0).collect(),
    }
}

pub fn count_crossings<C: Count>(
    pu: &Profile<C>,
    pv: &Profile<C>,
) -> Result<CrossingReport, AnalysisError> {
    crossing_positions(&pu.entries, &pv.entries).map(crossing_report)
}

/// Crossings of any two equal-length sequences (e.g. raw `P_k` numerators).
pub fn count_crossings_in<T: Ord>(a: &[T], b: &[T]) -> Result<CrossingReport, AnalysisError> {
    crossing_positions(a, b).map(crossing_report)
}

/// `pu[k] >= pv[k]` for every `k`.
pub fn dominates<C: Count>(pu: &Profile<C>, pv: &Profile<C>) -> Result<bool, AnalysisError> {
    if pu.len() != pv.len() {
        return Err(AnalysisError::LengthMismatch(pu.len(), pv.len()));
    }
    Ok(pu.entries.iter().zip(&pv.entries).all(|(x, y)| x >= y))
}

/// JSON summary of one vertex's profile.
#[derive(Debug, Clone, Serialize)]
pub struct VertexAnalysis {
    pub vertex: VertexId,
    pub dip_count: usize,
    pub dip_intervals: Vec<(usize, usize)>,
    pub monotone_class: Monotonicity,
}

impl VertexAnalysis {
    pub fn of<C: Count>(p: &Profile<C>) -> Self {
        let dips = count_dips(p);
        VertexAnalysis {
            vertex: p.vertex,
            dip_count: dips.count,
            dip_intervals: dips.intervals,
            monotone_class: monotonicity_class(p),
        }
    }
}

/// JSON summary of a pair of profiles from the same tree.
#[derive(Debug, Clone, Serialize)]
pub struct PairAnalysis {
    pub vertices: (VertexId, VertexId),
    pub crossing_count: usize,
    pub witnesses: Vec<usize>,
    pub first_dominates: bool,
    pub second_dominates: bool,
    pub per_vertex: (VertexAnalysis, VertexAnalysis),
}

impl PairAnalysis {
    pub fn of<C: Count>(pu: &Profile<C>, pv: &Profile<C>) -> Result<Self, AnalysisError> {
        let cross = count_crossings(pu, pv)?;
        Ok(PairAnalysis {
            vertices: (pu.vertex, pv.vertex),
            crossing_count: cross.count,
            witnesses: cross.witnesses,
            first_dominates: dominates(pu, pv)?,
            second_dominates: dominates(pv, pu)?,
            per_vertex: (VertexAnalysis::of(pu), VertexAnalysis::of(pv)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{claw_example, make_path};
    use crate::profile::{all_profiles, ProfileEntry};

    fn int_profile(values: &[u64]) -> Profile<u64> {
        Profile {
            vertex: 0,
            entries: values.iter().map(|&x| ProfileEntry::new(x, 1)).collect(),
        }
    }

    #[test]
    fn dip_examples() {
        assert_eq!(count_dips(&int_profile(&[1, 2, 3, 4])).count, 0);
        let r = count_dips(&int_profile(&[3, 1, 2]));
        assert_eq!(r.intervals, vec![(2, 4)]);
        // the two valleys share the entry 3 at k=5, so only one fits
        let r = count_dips(&int_profile(&[3, 2, 2, 3, 1, 4]));
        assert_eq!(r.count, 1);
        assert_eq!(r.intervals, vec![(2, 5)]);
        let r = count_dips(&int_profile(&[3, 1, 2, 5, 4, 4, 6]));
        assert_eq!(r.intervals, vec![(2, 4), (5, 8)]);
    }

    #[test]
    fn dip_edge_cases() {
        assert_eq!(count_dips(&int_profile(&[])).count, 0);
        assert_eq!(count_dips(&int_profile(&[5])).count, 0);
        // decrease with no later increase is not a dip
        assert_eq!(count_dips(&int_profile(&[4, 3, 3, 1])).count, 0);
        // a plateau at the bottom is allowed
        assert_eq!(count_dips(&int_profile(&[4, 2, 2, 2, 3])).intervals, vec![(2, 6)]);
    }

    #[test]
    fn monotonicity() {
        assert_eq!(classify(&[0u8, 0, 0]), Monotonicity::Constant);
        assert_eq!(classify(&[7u8]), Monotonicity::Constant);
        assert_eq!(classify(&[1u8, 1, 2]), Monotonicity::NonDecreasing);
        assert_eq!(classify(&[2u8, 1, 1]), Monotonicity::NonIncreasing);
        assert_eq!(classify(&[2u8, 1, 2]), Monotonicity::Neither);

        let ps = all_profiles::<u64>(&claw_example()).unwrap();
        assert_eq!(monotonicity_class(&ps[1]), Monotonicity::Neither);
        assert_eq!(monotonicity_class(&ps[5]), Monotonicity::Neither);
        assert_eq!(monotonicity_class(&ps[0]), Monotonicity::Constant);
        for v in [2, 3, 4] {
            assert!(monotonicity_class(&ps[v]).is_monotone());
        }
        let path = all_profiles::<u64>(&make_path(10)).unwrap();
        assert_eq!(monotonicity_class(&path[4]), Monotonicity::NonDecreasing);
    }

    #[test]
    fn crossing_examples() {
        let r = count_crossings(&int_profile(&[1, 3, 1, 3]), &int_profile(&[2, 2, 2, 2])).unwrap();
        assert_eq!(r.count, 3);
        assert_eq!(r.witnesses, vec![2, 3, 4, 5]);
        let p = int_profile(&[1, 2]);
        let r = count_crossings(&p, &p).unwrap();
        assert_eq!((r.count, r.witnesses.len()), (0, 0));
        // one-sided difference is not a crossing
        let r = count_crossings(&int_profile(&[1, 2, 2]), &int_profile(&[1, 1, 2])).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.witnesses.is_empty());
        assert_eq!(
            count_crossings(&int_profile(&[1]), &int_profile(&[1, 2])),
            Err(AnalysisError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn claw_example_crossing_and_dominance() {
        let ps = all_profiles::<u64>(&claw_example()).unwrap();
        let r = count_crossings(&ps[2], &ps[5]).unwrap();
        assert!(r.count >= 1);
        assert!(r.witnesses.windows(2).any(|w| w[0] < 4 && w[1] > 4));
        assert!(dominates(&ps[5], &ps[1]).unwrap());
        assert!(dominates(&ps[1], &ps[1]).unwrap());
        assert!(!dominates(&int_profile(&[1, 3]), &int_profile(&[2, 2])).unwrap());
    }

    #[test]
    fn analysis_json_shape() {
        let ps = all_profiles::<u64>(&claw_example()).unwrap();
        let json = serde_json::to_value(PairAnalysis::of(&ps[2], &ps[5]).unwrap()).unwrap();
        assert_eq!(json["crossing_count"], 1);
        assert_eq!(json["per_vertex"][1]["monotone_class"], "neither");
        assert_eq!(json["per_vertex"][1]["dip_count"], 1);
    }
}

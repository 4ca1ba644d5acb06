// SPDX-License-Identifier: Apache-2.0

//! Betweenness-centrality profiles `(BC_2(v), ..., BC_d(v))`.
//!
//! In a tree `BC_k(v) = P_k(v) / P_k`. Entries keep the numerator and
//! denominator unreduced and compare by cross-multiplication; decimals are
//! for display only.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::count::{mul_exact, Count};
use crate::paths::{counts_through, pair_distance_counts, path_counts_fast, PathCountTable};
use crate::tree::{Tree, TreeError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("tree diameter {0} is below 2; the profile is empty")]
    DiameterTooSmall(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// One exact profile value `through / total`.
#[derive(Debug, Clone)]
pub struct ProfileEntry<C> {
    pub through: C,
    pub total: C,
}

impl<C: Count> ProfileEntry<C> {
    pub fn new(through: C, total: C) -> Self {
        assert!(!total.is_zero(), "profile denominator must be positive");
        ProfileEntry { through, total }
    }

    pub fn to_ratio(&self) -> Ratio<C> {
        Ratio::new(self.through.clone(), self.total.clone())
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.to_ratio();
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    }
}

impl<C: Count> PartialEq for ProfileEntry<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Count> Eq for ProfileEntry<C> {}

impl<C: Count> PartialOrd for ProfileEntry<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<C: Count> Ord for ProfileEntry<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        mul_exact(&self.through, &other.total).cmp(&mul_exact(&other.through, &self.total))
    }
}

/// The profile of one vertex; `entries[i]` is `BC_{i+2}`.
#[derive(Debug, Clone)]
pub struct Profile<C> {
    pub vertex: VertexId,
    pub entries: Vec<ProfileEntry<C>>,
}

impl<C: Count> PartialEq for Profile<C> {
    fn eq(&self, other: &Self) -> bool {
        self.vertex == other.vertex && self.entries == other.entries
    }
}

impl<C: Count> Eq for Profile<C> {}

impl<C: Count> Profile<C> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `BC_k` for `2 <= k <= d`.
    pub fn at(&self, k: usize) -> &ProfileEntry<C> {
        &self.entries[k - 2]
    }

    /// Values `k = 2, 3, ...` as `(k, entry)` pairs.
    pub fn iter_k(&self) -> impl Iterator<Item = (usize, &ProfileEntry<C>)> {
        self.entries.iter().enumerate().map(|(i, e)| (i + 2, e))
    }

    /// Numerators `P_k(v)` only, sharing the tree's denominators.
    pub fn numerators(&self) -> Vec<C> {
        self.entries.iter().map(|e| e.through.clone()).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(ProfileEntry::to_f64).collect()
    }

    pub fn from_table(table: &PathCountTable<C>, v: VertexId) -> Result<Self, ProfileError> {
        let d = table.diameter();
        if d < 2 {
            return Err(ProfileError::DiameterTooSmall(d));
        }
        if v >= table.n() {
            return Err(TreeError::OutOfRange { id: v, n: table.n() }.into());
        }
        let entries = (2..=d)
            .map(|k| ProfileEntry::new(table.count_through_up_to(v, k), table.count_up_to(k)))
            .collect();
        Ok(Profile { vertex: v, entries })
    }
}

/// Profiles of selected vertices without building the full table.
///
/// Holds the tree-wide denominators `P_k`; each [`ProfileBuilder::profile`]
/// call costs one BFS plus one histogram convolution.
pub struct ProfileBuilder<'t, C> {
    tree: &'t Tree,
    diameter: usize,
    totals: Vec<C>,
}

impl<'t, C: Count> ProfileBuilder<'t, C> {
    pub fn new(tree: &'t Tree) -> Result<Self, ProfileError> {
        let per_len = pair_distance_counts::<C>(tree);
        let diameter = per_len.len() - 1;
        if diameter < 2 {
            return Err(ProfileError::DiameterTooSmall(diameter));
        }
        let mut totals = Vec::with_capacity(diameter - 1);
        let mut acc = C::zero();
        for x in &per_len[2..] {
            acc = crate::count::add_exact(&acc, x);
            totals.push(acc.clone());
        }
        Ok(ProfileBuilder {
            tree,
            diameter,
            totals,
        })
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// `P_k` for `2 <= k <= d`.
    pub fn total_up_to(&self, k: usize) -> &C {
        &self.totals[k - 2]
    }

    pub fn profile(&self, v: VertexId) -> Result<Profile<C>, ProfileError> {
        if v >= self.tree.n() {
            return Err(TreeError::OutOfRange { id: v, n: self.tree.n() }.into());
        }
        let per_len = counts_through::<C>(self.tree, v, self.diameter);
        let mut acc = C::zero();
        let entries = per_len[2..]
            .iter()
            .zip(&self.totals)
            .map(|(x, total)| {
                acc = crate::count::add_exact(&acc, x);
                ProfileEntry::new(acc.clone(), total.clone())
            })
            .collect();
        Ok(Profile { vertex: v, entries })
    }
}

/// Profile of one vertex.
pub fn profile<C: Count>(tree: &Tree, v: VertexId) -> Result<Profile<C>, ProfileError> {
    ProfileBuilder::new(tree)?.profile(v)
}

/// Profiles of every vertex from one shared table.
pub fn all_profiles<C: Count>(tree: &Tree) -> Result<Vec<Profile<C>>, ProfileError> {
    let table = path_counts_fast::<C>(tree);
    (0..tree.n()).map(|v| Profile::from_table(&table, v)).collect()
}

/// Serializable row of a profile table.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub vertex: VertexId,
    pub k: usize,
    pub numerator: String,
    pub denominator: String,
    pub reduced: String,
    pub decimal: f64,
}

impl<C: Count> Profile<C> {
    pub fn rows(&self) -> Vec<ProfileRow> {
        self.iter_k()
            .map(|(k, e)| ProfileRow {
                vertex: self.vertex,
                k,
                numerator: e.through.to_string(),
                denominator: e.total.to_string(),
                reduced: e.to_ratio().to_string(),
                decimal: e.to_f64(),
            })
            .collect()
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Exact k-betweenness-centrality profiles of trees.
//!
//! Counting is generic over [`count::Count`]; the aliases below fix the
//! usual choices.

pub mod analysis;
pub mod count;
pub mod experiments;
pub mod families;
pub mod io;
pub mod paths;
pub mod profile;
pub mod scale_free;
pub mod stats;
pub mod tree;
pub mod verify;

use num_bigint::BigUint;
use num_rational::Ratio;

/// Default exact count type.
pub type BigCount = BigUint;
/// Exact rational used for expectations and closed forms.
pub type Rational = Ratio<BigUint>;
/// Path-count table with arbitrary-precision counts.
pub type BigPathCounts = paths::PathCountTable<BigUint>;
/// Profile with arbitrary-precision counts.
pub type BigProfile = profile::Profile<BigUint>;
/// Profile with machine counts, for trees known to be small.
pub type SmallProfile = profile::Profile<u64>;

pub use analysis::{count_crossings, count_dips, dominates, monotonicity_class};
pub use profile::{all_profiles, profile, Profile, ProfileBuilder, ProfileEntry};
pub use tree::{Tree, TreeError, VertexId};

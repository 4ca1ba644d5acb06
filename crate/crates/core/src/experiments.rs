// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte Carlo estimates of crossing and monotonicity frequencies
//! in scale-free trees.
//!
//! Trial `t` at grid point `x` draws from `substream(mix(seed, x), t)`, so
//! the output does not depend on how trials are scheduled.

use std::fmt;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{count_crossings, monotonicity_class};
use crate::profile::ProfileBuilder;
use crate::scale_free::{mix, sample_tree, substream, RecursiveTree};
use crate::stats::proportion_stderr;

pub const DEFAULT_TRIALS: usize = 5000;
pub const DEFAULT_FIXED_N: usize = 250;
pub const DEFAULT_N_GRID: [usize; 8] = [10, 25, 50, 75, 100, 150, 200, 250];
pub const DEFAULT_I_GRID: [usize; 9] = [2, 5, 10, 25, 50, 100, 150, 200, 249];

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("tree size {0} is below 3")]
    NTooSmall(usize),
    #[error("vertex {i} needs 1 <= i < {n}")]
    VertexOutOfRange { i: usize, n: usize },
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    /// No crossings between `B(1)` and `B(2)`, over `n`.
    NoCross12VsN,
    /// No crossings between `B(i)` and `B(i+1)` at fixed `n`, over `i`.
    NoCrossIi1VsI,
    /// `B(i)` monotone at fixed `n`, over `i`.
    MonotoneIVsI,
    /// `B(1)` monotone, over `n`.
    Monotone1VsN,
}

impl Which {
    pub const ALL: [Which; 4] = [
        Which::NoCross12VsN,
        Which::NoCrossIi1VsI,
        Which::MonotoneIVsI,
        Which::Monotone1VsN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Which::NoCross12VsN => "no_cross_12_vs_n",
            Which::NoCrossIi1VsI => "no_cross_ii1_vs_i",
            Which::MonotoneIVsI => "monotone_i_vs_i",
            Which::Monotone1VsN => "monotone_1_vs_n",
        }
    }

    /// Whether the grid ranges over vertex labels at a fixed `n`.
    pub fn over_vertices(self) -> bool {
        matches!(self, Which::NoCrossIi1VsI | Which::MonotoneIVsI)
    }

    pub fn default_grid(self) -> Vec<usize> {
        if self.over_vertices() {
            DEFAULT_I_GRID.to_vec()
        } else {
            DEFAULT_N_GRID.to_vec()
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Which {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Which::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| ExperimentError::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub which: Which,
    /// `n` values, or vertex labels `i` for the fixed-`n` experiments.
    pub grid: Vec<usize>,
    pub fixed_n: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(which: Which, seed: u64) -> Self {
        ExperimentConfig {
            which,
            grid: which.default_grid(),
            fixed_n: DEFAULT_FIXED_N,
            trials: DEFAULT_TRIALS,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.trials == 0 {
            return Err(ExperimentError::NoTrials);
        }
        if self.which.over_vertices() {
            if self.fixed_n < 3 {
                return Err(ExperimentError::NTooSmall(self.fixed_n));
            }
            if let Some(&i) = self.grid.iter().find(|&&i| i == 0 || i >= self.fixed_n) {
                return Err(ExperimentError::VertexOutOfRange { i, n: self.fixed_n });
            }
        } else if let Some(&n) = self.grid.iter().find(|&&n| n < 3) {
            return Err(ExperimentError::NTooSmall(n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub x: usize,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub which: Which,
    pub rows: Vec<ExperimentRow>,
}

/// The indicator of one experiment on one tree, with `x` the grid value.
pub fn indicator(which: Which, rt: &RecursiveTree, x: usize) -> bool {
    let tree = rt.tree();
    let builder = ProfileBuilder::<u128>::new(&tree).expect("n >= 3 gives diameter >= 2");
    // labels are 1-based, tree vertices 0-based
    let first = if which.over_vertices() { x - 1 } else { 0 };
    let pu = builder.profile(first).expect("label in range");
    match which {
        Which::NoCross12VsN | Which::NoCrossIi1VsI => {
            let pv = builder.profile(first + 1).expect("label in range");
            count_crossings(&pu, &pv).expect("same tree").count == 0
        }
        Which::MonotoneIVsI | Which::Monotone1VsN => monotonicity_class(&pu).is_monotone(),
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, ExperimentError> {
    cfg.validate()?;
    let mut grid = cfg.grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let rows = grid
        .into_iter()
        .map(|x| {
            let n = if cfg.which.over_vertices() { cfg.fixed_n } else { x };
            let point_seed = mix(cfg.seed, x as u64);
            let hits = (0..cfg.trials)
                .into_par_iter()
                .filter(|&t| {
                    let rt = sample_tree(n, &mut substream(point_seed, t as u64));
                    indicator(cfg.which, &rt, x)
                })
                .count();
            let p = hits as f64 / cfg.trials as f64;
            ExperimentRow {
                x,
                estimate: p,
                stderr: proportion_stderr(p, cfg.trials),
                trials: cfg.trials,
                seed: cfg.seed,
            }
        })
        .collect();
    Ok(ExperimentResult {
        which: cfg.which,
        rows,
    })
}

impl ExperimentResult {
    pub fn row(&self, x: usize) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| r.x == x)
    }

    /// CSV text: header `x,estimate,stderr,trials,seed`, six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,estimate,stderr,trials,seed\n");
        for r in &self.rows {
            writeln!(out, "{},{:.6},{:.6},{},{}", r.x, r.estimate, r.stderr, r.trials, r.seed)
                .expect("writing to a String");
        }
        out
    }
}

pub fn write_csv(res: &ExperimentResult, path: impl AsRef<Path>) -> Result<(), ExperimentError> {
    std::fs::write(path, res.to_csv())?;
    Ok(())
}

/// Run metadata written next to the CSV.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<'a> {
    pub config: &'a ExperimentConfig,
    pub version: &'static str,
    pub wall_time_secs: f64,
    pub grid_note: &'static str,
    pub rng: &'static str,
}

impl<'a> Manifest<'a> {
    pub fn new(config: &'a ExperimentConfig, wall_time_secs: f64) -> Self {
        Manifest {
            config,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_secs,
            grid_note: "grid values are implementation defaults unless given explicitly",
            rng: "ChaCha8 seeded by splitmix64(mix(mix(seed, x), trial))",
        }
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Constructions of the tree families with known profile behavior.
//!
//! | family         | shape                                                        | designated |
//! |----------------|--------------------------------------------------------------|------------|
//! | `path:n`       | path `0 - 1 - ... - n`                                       | none       |
//! | `broom:m,n`    | path `0..=m`, `n` leaves on `m`                              | `m`        |
//! | `double-broom` | path `0..=m`, `n` leaves on each of `0` and `m` (`m` even)   | `m / 2`    |
//! | `gij:i,j`      | central path `0..=i(j+1)+2`, two length-`j` branches at every central position `3 (mod j+1)` | `1` |
//! | `tell:l`       | see [`tell`]                                                 | `u`, `v`   |

pub mod closed_forms;
pub mod tell;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tree::{Tree, VertexId};

pub use tell::{make_tell, TellChoice, TellStrategy, TellTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("double broom needs an even path length, got {0}")]
    OddM(usize),
    #[error("leaf count for {group} would exceed the cap {cap}")]
    SearchCapExceeded { group: String, cap: u64 },
    #[error("closed form undefined here: {0}")]
    OutOfDomain(String),
    #[error("k = {k} is not covered by any tabulated row for i = {i}, j = {j}")]
    OutOfTabulatedRange { i: u64, j: u64, k: u64 },
    #[error("cannot parse family spec {0:?}")]
    BadSpec(String),
}

/// Path with `n` edges on vertices `0..=n`.
pub fn make_path(n: usize) -> Tree {
    let edges: Vec<_> = (0..n).map(|x| (x, x + 1)).collect();
    Tree::new(n + 1, &edges).expect("path is a tree")
}

/// Broom: path `0..=m` with `n` leaves on `m`; returns the tree and `m`.
pub fn make_broom(m: usize, n: usize) -> Result<(Tree, VertexId), FamilyError> {
    if m < 1 || n < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "broom needs m >= 1 and n >= 1, got m={m} n={n}"
        )));
    }
    let mut edges: Vec<_> = (0..m).map(|x| (x, x + 1)).collect();
    edges.extend((0..n).map(|i| (m, m + 1 + i)));
    Ok((Tree::new(m + n + 1, &edges).expect("broom is a tree"), m))
}

/// Double broom: path `0..=m` with `n` leaves at each end; returns the
/// tree and the middle vertex `m / 2`.
pub fn make_double_broom(m: usize, n: usize) -> Result<(Tree, VertexId), FamilyError> {
    if n < 1 || m < 2 {
        return Err(FamilyError::InvalidParameter(format!(
            "double broom needs m >= 2 and n >= 1, got m={m} n={n}"
        )));
    }
    if !m.is_multiple_of(2) {
        return Err(FamilyError::OddM(m));
    }
    let mut edges: Vec<_> = (0..m).map(|x| (x, x + 1)).collect();
    for i in 0..n {
        edges.push((0, m + 1 + i));
        edges.push((m, m + 1 + n + i));
    }
    Ok((Tree::new(m + 2 * n + 1, &edges).expect("double broom is a tree"), m / 2))
}

/// The dip family `G_ij`; returns the tree and central vertex `1`.
pub fn make_gij(i: usize, j: usize) -> Result<(Tree, VertexId), FamilyError> {
    if i < 1 || j < 1 {
        return Err(FamilyError::InvalidParameter(format!(
            "gij needs i >= 1 and j >= 1, got i={i} j={j}"
        )));
    }
    let central = i * (j + 1) + 2;
    let mut edges: Vec<_> = (0..central).map(|x| (x, x + 1)).collect();
    let mut next = central + 1;
    for t in 0..i {
        let anchor = 3 + t * (j + 1);
        for _ in 0..2 {
            let mut prev = anchor;
            for _ in 0..j {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
    }
    Ok((Tree::new(next, &edges).expect("gij is a tree"), 1))
}

/// Vertex count of `G_ij`: `i(j+1) + 3` central vertices plus `2ij` branch vertices.
pub fn gij_vertex_count(i: usize, j: usize) -> usize {
    i * (j + 1) + 3 + 2 * i * j
}

/// The 11-vertex example tree: path `0..=4` with three 2-edge spokes at `4`.
///
/// Labels match the usual drawing: `v1..v7` are vertices `1..=7`.
pub fn claw_example() -> Tree {
    Tree::new(
        11,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (4, 6),
            (4, 7),
            (5, 8),
            (6, 9),
            (7, 10),
        ],
    )
    .expect("example is a tree")
}

/// A family name with parameters, as spelled on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Path { n: usize },
    Broom { m: usize, n: usize },
    DoubleBroom { m: usize, n: usize },
    Gij { i: usize, j: usize },
    Tell { l: usize, strategy: TellStrategy },
}

/// A constructed family member with its designated vertices.
#[derive(Debug, Clone)]
pub struct FamilyTree {
    pub spec: FamilySpec,
    pub tree: Tree,
    pub designated: Vec<(&'static str, VertexId)>,
    pub tell: Option<TellChoice>,
}

impl FamilyTree {
    /// Comment lines for the tree file header.
    pub fn comments(&self) -> Vec<String> {
        let mut out = vec![format!("family: {}", self.spec)];
        if !self.designated.is_empty() {
            let names: Vec<_> = self
                .designated
                .iter()
                .map(|(name, v)| format!("{name}={v}"))
                .collect();
            out.push(format!("designated: {}", names.join(" ")));
        }
        if let Some(choice) = &self.tell {
            out.push(format!("a: {:?}", choice.a));
            out.push(format!("b: {:?}", choice.b));
        }
        out
    }
}

impl FamilySpec {
    pub fn build(&self) -> Result<FamilyTree, FamilyError> {
        let (tree, designated, tell) = match *self {
            FamilySpec::Path { n } => {
                if n < 1 {
                    return Err(FamilyError::InvalidParameter("path needs n >= 1".into()));
                }
                (make_path(n), vec![], None)
            }
            FamilySpec::Broom { m, n } => {
                let (t, c) = make_broom(m, n)?;
                (t, vec![("center", c)], None)
            }
            FamilySpec::DoubleBroom { m, n } => {
                let (t, c) = make_double_broom(m, n)?;
                (t, vec![("middle", c)], None)
            }
            FamilySpec::Gij { i, j } => {
                let (t, v) = make_gij(i, j)?;
                (t, vec![("v", v)], None)
            }
            FamilySpec::Tell { l, strategy } => {
                let built = make_tell(l, strategy)?;
                (built.tree, vec![("u", built.u), ("v", built.v)], Some(built.choice))
            }
        };
        Ok(FamilyTree {
            spec: *self,
            tree,
            designated,
            tell,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Broom { m, n } => write!(f, "broom:{m},{n}"),
            FamilySpec::DoubleBroom { m, n } => write!(f, "double-broom:{m},{n}"),
            FamilySpec::Gij { i, j } => write!(f, "gij:{i},{j}"),
            FamilySpec::Tell { l, strategy } => write!(f, "tell:{l},{strategy}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::BadSpec(s.to_string());
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let parts: Vec<&str> = params.split(',').map(str::trim).collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let spec = match (name.trim(), parts.as_slice()) {
            ("path", [n]) => FamilySpec::Path { n: num(n)? },
            ("broom", [m, n]) => FamilySpec::Broom {
                m: num(m)?,
                n: num(n)?,
            },
            ("double-broom", [m, n]) => FamilySpec::DoubleBroom {
                m: num(m)?,
                n: num(n)?,
            },
            ("gij", [i, j]) => FamilySpec::Gij {
                i: num(i)?,
                j: num(j)?,
            },
            ("tell", [l]) => FamilySpec::Tell {
                l: num(l)?,
                strategy: TellStrategy::MinimalSearch,
            },
            ("tell", [l, strategy]) => FamilySpec::Tell {
                l: num(l)?,
                strategy: strategy.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::path_counts_naive;

    #[test]
    fn paths() {
        assert_eq!(make_path(1).n(), 2);
        assert_eq!(make_path(4).diameter(), 4);
    }

    #[test]
    fn brooms() {
        let (t, c) = make_broom(1, 1).unwrap();
        assert_eq!((t.n(), t.diameter(), c), (3, 2, 1));
        let (t, c) = make_broom(4, 3).unwrap();
        assert_eq!(t.degree(c), 4);
        assert_eq!(t.diameter(), 5);
        assert!(make_broom(0, 3).is_err());
    }

    #[test]
    fn double_brooms() {
        let (t, mid) = make_double_broom(2, 1).unwrap();
        assert_eq!((t.n(), mid, t.diameter()), (5, 1, 4));
        let (t, mid) = make_double_broom(4, 2).unwrap();
        assert_eq!(t.diameter(), 6);
        let table = path_counts_naive::<u64>(&t);
        assert!(table.count_through_up_to(mid, 6) >= 4);
        assert_eq!(make_double_broom(3, 2), Err(FamilyError::OddM(3)));
    }

    #[test]
    fn gij_shapes() {
        let (t, v) = make_gij(1, 3).unwrap();
        assert_eq!((t.diameter(), v), (6, 1));
        let (t, _) = make_gij(3, 5).unwrap();
        assert_eq!(t.n(), gij_vertex_count(3, 5));
        assert_eq!(t.n(), 51);
        assert_eq!(t.diameter(), 3 * 5 + 3 + 5 - 1);
        assert_eq!(path_counts_naive::<u64>(&t).count(2), 58);
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["path:10", "broom:4,3", "double-broom:10,1000", "gij:3,5", "tell:3,minimal-search", "tell:2,paper-bound"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!(
            "tell:2".parse::<FamilySpec>().unwrap(),
            FamilySpec::Tell { l: 2, strategy: TellStrategy::MinimalSearch }
        );
        for s in ["path", "path:x", "broom:1", "star:3", "tell:2,fast"] {
            assert!(matches!(s.parse::<FamilySpec>(), Err(FamilyError::BadSpec(_))), "{s}");
        }
        assert!("broom:0,3".parse::<FamilySpec>().unwrap().build().is_err());
    }

    #[test]
    fn comments_record_designated_vertices() {
        let built = FamilySpec::Gij { i: 3, j: 5 }.build().unwrap();
        assert_eq!(built.comments(), vec!["family: gij:3,5", "designated: v=1"]);
    }
}

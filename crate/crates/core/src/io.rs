// SPDX-License-Identifier: Apache-2.0

//! Plain-text tree files.
//!
//! ```text
//! # optional comment lines
//! 4
//! 0 1
//! 1 2
//! 1 3
//! ```
//!
//! The first data line is the vertex count `n`, followed by exactly `n - 1`
//! whitespace-separated 0-based edge lines. The writer emits comments first
//! and edges sorted lexicographically as `min max`.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::tree::{Tree, TreeError};

#[derive(Debug, Error)]
pub enum TreeFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing vertex count line")]
    MissingHeader,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A parsed tree file: the tree plus its comment lines (without `#`).
#[derive(Debug, Clone)]
pub struct TreeFile {
    pub tree: Tree,
    pub comments: Vec<String>,
}

pub fn parse_tree(text: &str) -> Result<TreeFile, TreeFileError> {
    let mut comments = Vec::new();
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|e| TreeFileError::Parse {
                line: lineno,
                msg: format!("bad integer {s:?}: {e}"),
            })
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(parse(count)?),
            (None, _) => {
                return Err(TreeFileError::Parse {
                    line: lineno,
                    msg: "expected a single vertex count".into(),
                })
            }
            (Some(_), [a, b]) => edges.push((parse(a)?, parse(b)?)),
            (Some(_), _) => {
                return Err(TreeFileError::Parse {
                    line: lineno,
                    msg: "expected an edge `a b`".into(),
                })
            }
        }
    }
    let n = n.ok_or(TreeFileError::MissingHeader)?;
    Ok(TreeFile {
        tree: Tree::new(n, &edges)?,
        comments,
    })
}

pub fn format_tree(tree: &Tree, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{}", tree.n());
    for (a, b) in tree.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

pub fn read_tree(path: impl AsRef<Path>) -> Result<TreeFile, TreeFileError> {
    parse_tree(&std::fs::read_to_string(path)?)
}

pub fn write_tree(path: impl AsRef<Path>, tree: &Tree, comments: &[String]) -> Result<(), TreeFileError> {
    std::fs::write(path, format_tree(tree, comments))?;
    Ok(())
}

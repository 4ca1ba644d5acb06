// SPDX-License-Identifier: Apache-2.0

//! Labeled undirected trees with validated construction.

use std::collections::VecDeque;

use thiserror::Error;

/// 0-based vertex identifier.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {expected} edges for {n} vertices, got {got}")]
    WrongEdgeCount { n: usize, expected: usize, got: usize },
    #[error("vertex {id} out of range for {n} vertices")]
    OutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph is not connected ({reached} of {n} vertices reachable from 0)")]
    Disconnected { reached: usize, n: usize },
}

/// An undirected tree on vertices `0..n` with sorted adjacency lists.
///
/// Immutable after construction; all invariants (n-1 edges, connected,
/// symmetric adjacency, no loops or multi-edges) hold for every value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adj: Vec<Vec<VertexId>>,
}

impl Tree {
    /// Validates `edges` and builds the tree.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount {
                n,
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(TreeError::OutOfRange { id, n });
                }
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(TreeError::DuplicateEdge(v.min(w[0]), v.max(w[0])));
            }
        }
        let tree = Tree { adj };
        let reached = tree.bfs_order(0).len();
        if reached != n {
            return Err(TreeError::Disconnected { reached, n });
        }
        Ok(tree)
    }

    /// Builds a tree from a parent array, `parent[0]` ignored (root 0).
    pub(crate) fn from_parents(parent: &[VertexId]) -> Self {
        let edges: Vec<_> = (1..parent.len()).map(|v| (parent[v], v)).collect();
        Tree::new(parent.len(), &edges).expect("parent array describes a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for (v, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&w| w > v).map(|&w| (v, w)));
        }
        out
    }

    fn check(&self, v: VertexId) -> Result<(), TreeError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(TreeError::OutOfRange { id: v, n: self.n() })
        }
    }

    fn bfs_order(&self, source: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.n()];
        let mut order = vec![source];
        seen[source] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    /// Hop distances from `source` to every vertex.
    pub fn bfs_distances(&self, source: VertexId) -> Result<Vec<usize>, TreeError> {
        self.check(source)?;
        Ok(self.bfs_from(source).0)
    }

    /// Distances and BFS parents (`parent[source] == source`).
    pub(crate) fn bfs_from(&self, source: VertexId) -> (Vec<usize>, Vec<VertexId>) {
        let n = self.n();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[source] = 0;
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        (dist, parent)
    }

    /// Diameter by double BFS.
    pub fn diameter(&self) -> usize {
        let first = self.bfs_from(0).0;
        let far = argmax(&first);
        let second = self.bfs_from(far).0;
        second[argmax(&second)]
    }

    /// Vertices on the unique `s`-`t` path, endpoints included.
    pub fn path_between(&self, s: VertexId, t: VertexId) -> Result<Vec<VertexId>, TreeError> {
        self.check(s)?;
        self.check(t)?;
        let (_, parent) = self.bfs_from(s);
        let mut path = vec![t];
        let mut x = t;
        while x != s {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }
}

fn argmax(dist: &[usize]) -> VertexId {
    dist.iter()
        .enumerate()
        .max_by_key(|&(i, &d)| (d, std::cmp::Reverse(i)))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::claw_example;

    #[test]
    fn smallest_trees() {
        let t = Tree::new(1, &[]).unwrap();
        assert_eq!(t.diameter(), 0);
        let t = Tree::new(2, &[(0, 1)]).unwrap();
        assert_eq!(t.diameter(), 1);
        assert_eq!(t.edges(), vec![(0, 1)]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Tree::new(0, &[]), Err(TreeError::Empty));
        assert_eq!(
            Tree::new(3, &[(0, 1), (0, 1)]),
            Err(TreeError::DuplicateEdge(0, 1))
        );
        assert_eq!(Tree::new(2, &[(1, 1)]), Err(TreeError::SelfLoop(1)));
        assert_eq!(
            Tree::new(2, &[(0, 2)]),
            Err(TreeError::OutOfRange { id: 2, n: 2 })
        );
        assert!(matches!(
            Tree::new(3, &[(0, 1)]),
            Err(TreeError::WrongEdgeCount { expected: 2, got: 1, .. })
        ));
        // a triangle plus an isolated vertex has the right edge count
        assert!(matches!(
            Tree::new(4, &[(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::Disconnected { reached: 3, n: 4 })
        ));
    }

    #[test]
    fn distances() {
        let path = Tree::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.bfs_distances(0).unwrap(), vec![0, 1, 2]);
        let star = Tree::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(star.bfs_distances(0).unwrap(), vec![0, 1, 1, 1, 1]);
        assert!(star.bfs_distances(5).is_err());

        let t = claw_example();
        assert_eq!(t.diameter(), 6);
        assert_eq!(t.bfs_distances(1).unwrap().into_iter().max(), Some(5));
    }

    #[test]
    fn path_between_walks_the_tree() {
        let t = claw_example();
        assert_eq!(t.path_between(0, 9).unwrap(), vec![0, 1, 2, 3, 4, 6, 9]);
        assert_eq!(t.path_between(5, 5).unwrap(), vec![5]);
    }
}

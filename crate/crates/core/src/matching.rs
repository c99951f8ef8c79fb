//! Maximum matching and minimum vertex cover in bipartite graphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::VertexId;

/// Bipartite graph over caller-chosen labels. The two sides may reuse labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: Vec<VertexId>,
    right: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

/// Cover vertices, by side, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexCover {
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

impl VertexCover {
    pub fn len(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, b: &BipartiteGraph) -> bool {
        b.edges
            .iter()
            .all(|(l, r)| self.left.binary_search(l).is_ok() || self.right.binary_search(r).is_ok())
    }
}

impl BipartiteGraph {
    pub fn new(
        left: Vec<VertexId>,
        right: Vec<VertexId>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Result<Self> {
        for &(l, r) in &edges {
            if !left.contains(&l) {
                return Err(Error::UndeclaredEndpoint(l));
            }
            if !right.contains(&r) {
                return Err(Error::UndeclaredEndpoint(r));
            }
        }
        Ok(Self { left, right, edges })
    }

    pub fn left(&self) -> &[VertexId] {
        &self.left
    }

    pub fn right(&self) -> &[VertexId] {
        &self.right
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let li: HashMap<VertexId, usize> =
            self.left.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ri: HashMap<VertexId, usize> = self
            .right
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut adj = vec![Vec::new(); self.left.len()];
        for (l, r) in &self.edges {
            adj[li[l]].push(ri[r]);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Maximum matching by repeated augmenting-path search; returns the
    /// partner of every right index.
    fn match_right(&self, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
        fn augment(
            l: usize,
            adj: &[Vec<usize>],
            seen: &mut [bool],
            mate: &mut [Option<usize>],
        ) -> bool {
            for &r in &adj[l] {
                if seen[r] {
                    continue;
                }
                seen[r] = true;
                if mate[r].is_none_or(|other| augment(other, adj, seen, mate)) {
                    mate[r] = Some(l);
                    return true;
                }
            }
            false
        }

        let mut mate = vec![None; self.right.len()];
        for l in 0..self.left.len() {
            let mut seen = vec![false; self.right.len()];
            augment(l, adj, &mut seen, &mut mate);
        }
        mate
    }

    /// Matched `(left, right)` label pairs, ordered by right side.
    pub fn maximum_matching(&self) -> Vec<(VertexId, VertexId)> {
        let adj = self.adjacency();
        self.match_right(&adj)
            .iter()
            .enumerate()
            .filter_map(|(r, m)| m.map(|l| (self.left[l], self.right[r])))
            .collect()
    }
}

/// Minimum vertex cover via König: from every unmatched left vertex walk
/// alternating paths; the cover is the unreached left side plus the reached
/// right side.
pub fn bipartite_min_vertex_cover(b: &BipartiteGraph) -> VertexCover {
    let adj = b.adjacency();
    let mate_of_right = b.match_right(&adj);
    let mut mate_of_left = vec![None; b.left.len()];
    for (r, m) in mate_of_right.iter().enumerate() {
        if let Some(l) = *m {
            mate_of_left[l] = Some(r);
        }
    }

    let mut left_reached = vec![false; b.left.len()];
    let mut right_reached = vec![false; b.right.len()];
    let mut stack: Vec<usize> = (0..b.left.len())
        .filter(|&l| mate_of_left[l].is_none())
        .collect();
    for &l in &stack {
        left_reached[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if mate_of_left[l] == Some(r) || right_reached[r] {
                continue;
            }
            right_reached[r] = true;
            if let Some(next) = mate_of_right[r] {
                if !left_reached[next] {
                    left_reached[next] = true;
                    stack.push(next);
                }
            }
        }
    }

    let mut cover = VertexCover {
        left: (0..b.left.len())
            .filter(|&l| !left_reached[l])
            .map(|l| b.left[l])
            .collect(),
        right: (0..b.right.len())
            .filter(|&r| right_reached[r])
            .map(|r| b.right[r])
            .collect(),
    };
    cover.left.sort_unstable();
    cover.left.dedup();
    cover.right.sort_unstable();
    cover.right.dedup();
    cover
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(b: &BipartiteGraph) -> usize {
        let nl = b.left().len();
        let n = nl + b.right().len();
        (0u32..1 << n)
            .filter(|mask| {
                b.edges().iter().all(|(l, r)| {
                    let li = b.left().iter().position(|x| x == l).unwrap();
                    let ri = b.right().iter().position(|x| x == r).unwrap();
                    mask & (1 << li) != 0 || mask & (1 << (nl + ri)) != 0
                })
            })
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn star_center() {
        let b = BipartiteGraph::new(vec![0, 1], vec![10, 11], vec![(0, 10), (0, 11)]).unwrap();
        let c = bipartite_min_vertex_cover(&b);
        assert_eq!(
            c,
            VertexCover {
                left: vec![0],
                right: vec![]
            }
        );
    }

    #[test]
    fn perfect_matching_needs_two() {
        let b = BipartiteGraph::new(vec![0, 1], vec![10, 11], vec![(0, 10), (1, 11)]).unwrap();
        let c = bipartite_min_vertex_cover(&b);
        assert_eq!(c.len(), 2);
        assert!(c.covers(&b));
    }

    #[test]
    fn path_of_three_edges() {
        let b =
            BipartiteGraph::new(vec![0, 1], vec![10, 11], vec![(0, 10), (0, 11), (1, 11)]).unwrap();
        let c = bipartite_min_vertex_cover(&b);
        assert_eq!(c.len(), brute_force(&b));
        assert_eq!(c.len(), 2);
        assert!(c.covers(&b));
        assert_eq!(b.maximum_matching().len(), 2);
    }

    #[test]
    fn shared_labels_and_empty() {
        let b = BipartiteGraph::new(vec![0, 1], vec![0, 1], vec![(0, 0), (1, 0)]).unwrap();
        let c = bipartite_min_vertex_cover(&b);
        assert_eq!(
            c,
            VertexCover {
                left: vec![],
                right: vec![0]
            }
        );
        let empty = BipartiteGraph::new(vec![3], vec![], vec![]).unwrap();
        assert!(bipartite_min_vertex_cover(&empty).is_empty());
        assert!(BipartiteGraph::new(vec![0], vec![1], vec![(1, 0)]).is_err());
    }
}

//! Bad triangles, bad star forests and the resulting lower bound on the
//! number of splits.

use crate::error::Result;
use crate::graph::{CorrelationGraph, VertexId};

/// A blue star whose leaves are pairwise red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadStar {
    pub center: VertexId,
    pub leaves: Vec<VertexId>,
}

impl BadStar {
    pub fn weight(&self) -> usize {
        self.leaves.len().saturating_sub(1)
    }

    /// At least two leaves, blue spokes, red between leaves.
    pub fn is_valid_in(&self, g: &CorrelationGraph) -> bool {
        self.leaves.len() >= 2
            && self
                .leaves
                .iter()
                .all(|&l| l != self.center && g.is_blue(self.center, l))
            && self
                .leaves
                .iter()
                .enumerate()
                .all(|(i, &a)| self.leaves[i + 1..].iter().all(|&b| g.is_red(a, b)))
    }
}

/// Vertex-disjoint bad stars.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BadStarForest {
    pub stars: Vec<BadStar>,
}

impl BadStarForest {
    pub fn weight(&self) -> usize {
        self.stars.iter().map(BadStar::weight).sum()
    }

    /// Union of star vertices, sorted.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .stars
            .iter()
            .flat_map(|s| std::iter::once(s.center).chain(s.leaves.iter().copied()))
            .collect();
        vs.sort_unstable();
        vs
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }
}

/// Lexicographically smallest `(u, v, w)` with `u < w`, `uv` and `vw` blue and
/// `uw` red, all inside `within`. Ids in `within` must be `< g.n()`.
pub fn find_bad_triangle(
    g: &CorrelationGraph,
    within: &[VertexId],
) -> Option<(VertexId, VertexId, VertexId)> {
    let mut inside = vec![false; g.n()];
    for &v in within {
        inside[v] = true;
    }
    find_in_mask(g, &inside)
}

fn find_in_mask(g: &CorrelationGraph, inside: &[bool]) -> Option<(VertexId, VertexId, VertexId)> {
    for u in (0..g.n()).filter(|&u| inside[u]) {
        for &v in g.blue_neighbors(u).iter().filter(|&&v| inside[v]) {
            for &w in g.blue_neighbors(v) {
                if w > u && inside[w] && g.is_red(u, w) {
                    return Some((u, v, w));
                }
            }
        }
    }
    None
}

/// Greedy inclusion-maximal forest inside `within`; works on any graph.
pub(crate) fn greedy_forest(g: &CorrelationGraph, within: &[VertexId]) -> BadStarForest {
    let mut inside = vec![false; g.n()];
    for &v in within {
        inside[v] = true;
    }
    let mut forest = BadStarForest::default();
    while let Some((u, center, w)) = find_in_mask(g, &inside) {
        let mut leaves = vec![u, w];
        for &x in g.blue_neighbors(center) {
            if inside[x] && x != u && x != w && leaves.iter().all(|&l| g.is_red(l, x)) {
                leaves.push(x);
            }
        }
        leaves.sort_unstable();
        inside[center] = false;
        for &l in &leaves {
            inside[l] = false;
        }
        forest.stars.push(BadStar { center, leaves });
    }
    forest
}

/// Repeatedly takes the smallest bad triangle, grows it into a maximal bad
/// star around its middle vertex and removes it. What remains is a cluster
/// graph.
pub fn maximal_bad_star_forest(g: &CorrelationGraph) -> Result<BadStarForest> {
    g.require_complete()?;
    let all: Vec<VertexId> = (0..g.n()).collect();
    Ok(greedy_forest(g, &all))
}

/// Weight of [`maximal_bad_star_forest`]; never exceeds the optimal cost.
pub fn lower_bound(g: &CorrelationGraph) -> Result<usize> {
    Ok(maximal_bad_star_forest(g)?.weight())
}

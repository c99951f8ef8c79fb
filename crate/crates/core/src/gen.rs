//! Instance generators: hardness gadgets with known answers, and seeded
//! random graphs.
//!
//! In both gadgets the source vertices keep ids `0..n`; added vertices are
//! appended after them.

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::{CorrelationGraph, EdgeColor, GraphBuilder, VertexId, MAX_VERTICES};
use crate::reduce::MulticutInstance;

/// Simple undirected graph used as gadget input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl PlainGraph {
    /// Edges are normalized to `u < v` and deduplicated.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self { n, edges: out })
    }

    /// The blue pairs of `g` as a plain graph.
    pub fn from_blue(g: &CorrelationGraph) -> Self {
        Self {
            n: g.n(),
            edges: g.blue_edges(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }
}

/// Complete graph on `V ∪ U` with `|U| = k + 1`: red exactly on the edges of
/// `g`, blue elsewhere. It has a clustering of cost at most `k` iff `g` has
/// a vertex cover of size at most `k`.
pub fn gen_vertex_cover_gadget(g: &PlainGraph, k: usize) -> Result<CorrelationGraph> {
    let n = g.n + k + 1;
    CorrelationGraph::from_fn(n, true, |u, v| {
        if u < g.n && v < g.n && g.has_edge(u, v) {
            EdgeColor::Red
        } else {
            EdgeColor::Blue
        }
    })
}

/// Apex `a = n` joined to every vertex, terminals on the edges of `g`,
/// budget `k - 1`. Solvable iff `g` is `k`-colorable.
pub fn gen_coloring_gadget(g: &PlainGraph, k: usize) -> Result<MulticutInstance> {
    if k < 3 {
        return Err(Error::TooFewColors(k));
    }
    let apex = g.n;
    let star = (0..g.n).map(|v| (v, apex)).collect();
    MulticutInstance::new(g.n + 1, star, g.edges.clone(), k - 1)
}

/// Each pair independently blue with probability `p_blue`, red with `p_red`
/// and neutral otherwise, drawn from SplitMix64 seeded with `seed`.
///
/// Pairs are visited as `(0,1), (0,2), …, (n-2,n-1)`; each consumes one
/// 64-bit output, mapped to a uniform `x ∈ [0, 1)` from its top 53 bits. The
/// pair is blue if `x < p_blue`, red if `x < p_blue + p_red`. Complete graphs
/// require `p_blue + p_red = 1` and never produce neutral pairs.
pub fn gen_random(
    n: usize,
    p_blue: f64,
    p_red: f64,
    complete: bool,
    seed: u64,
) -> Result<CorrelationGraph> {
    let in_unit = |p: f64| (0.0..=1.0).contains(&p);
    let total = p_blue + p_red;
    if !in_unit(p_blue) || !in_unit(p_red) || total > 1.0 + 1e-9 {
        return Err(Error::InvalidProbability(format!(
            "p_blue={p_blue} and p_red={p_red} must lie in [0,1] and sum to at most 1"
        )));
    }
    if complete && (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbability(format!(
            "complete graphs need p_blue + p_red = 1, got {total}"
        )));
    }
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut b = GraphBuilder::new(n, complete)?;
    for u in 0..n {
        for v in u + 1..n {
            let x = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            let color = if x < p_blue {
                EdgeColor::Blue
            } else if complete || x < total {
                EdgeColor::Red
            } else {
                EdgeColor::Neutral
            };
            if color != EdgeColor::Neutral {
                b.set(u, v, color)?;
            }
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::decide;
    use crate::graph::write_graph;

    #[test]
    fn vertex_cover_gadget_examples() {
        let path = PlainGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let g = gen_vertex_cover_gadget(&path, 1).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.red_edges(), vec![(0, 1), (1, 2)]);
        assert!(decide(&g, 1).unwrap());

        let tri = PlainGraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!decide(&gen_vertex_cover_gadget(&tri, 1).unwrap(), 1).unwrap());

        let empty = PlainGraph::new(3, &[]).unwrap();
        let g = gen_vertex_cover_gadget(&empty, 0).unwrap();
        assert_eq!(g.red_count(), 0);
        assert!(decide(&g, 0).unwrap());
    }

    #[test]
    fn coloring_gadget_examples() {
        let k3 = PlainGraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = gen_coloring_gadget(&k3, 3).unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.edges(), &[(0, 3), (1, 3), (2, 3)]);
        assert_eq!(inst.terminals().len(), 3);
        assert_eq!(inst.k(), 2);

        let c5 = PlainGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(gen_coloring_gadget(&c5, 2), Err(Error::TooFewColors(2)));
        assert_eq!(gen_coloring_gadget(&c5, 3).unwrap().k(), 2);
    }

    #[test]
    fn random_examples() {
        let blue = gen_random(3, 1.0, 0.0, true, 7).unwrap();
        assert_eq!(blue.blue_count(), 3);
        let red = gen_random(3, 0.0, 1.0, true, 7).unwrap();
        assert_eq!(red.red_count(), 3);
        let a = gen_random(5, 0.5, 0.5, true, 42).unwrap();
        let b = gen_random(5, 0.5, 0.5, true, 42).unwrap();
        assert_eq!(write_graph(&a), write_graph(&b));
        let c = gen_random(30, 0.3, 0.3, false, 1).unwrap();
        assert!(!c.is_complete());
        assert!(c.neutral_count() > 0);
    }

    #[test]
    fn splitmix_stream_is_pinned() {
        // reference outputs of SplitMix64 seeded with 0
        let mut rng = SplitMix64::seed_from_u64(0);
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(rng.next_u64(), 0x6e789e6aa1b965f4);
    }

    #[test]
    fn invalid_probabilities() {
        assert!(gen_random(3, 0.5, 0.6, false, 0).is_err());
        assert!(gen_random(3, 0.5, 0.4, true, 0).is_err());
        assert!(gen_random(3, -0.1, 0.4, false, 0).is_err());
        assert!(gen_random(3, 0.5, 0.4, false, 0).is_ok());
    }
}

//! Constant-factor approximation for complete graphs.
//!
//! Removing the vertices `S` of a maximal bad star forest leaves a cluster
//! graph with cliques `𝒞`. A *simple solution* keeps every clique as its own
//! cluster `X_C`, gives each `s ∈ S` a private singleton, and collects `S`
//! into one shared cluster `X_S`. The blue pairs between `S` and a clique `C`
//! must be covered either by putting `s` into `X_C` or `c` into `X_S`; a
//! minimum vertex cover `K_C` of that bipartite graph is the cheapest choice.
//! One clique `C*` may be merged into `X_S` wholesale, so every choice of
//! `C*` (and none) is tried.
//!
//! When `𝒞` has at most one clique the plain fallback `{V} ∪ {{s} : s ∈ S}`
//! of cost `|S|` is returned instead.

use crate::clustering::Clustering;
use crate::detect::maximal_bad_star_forest;
use crate::error::Result;
use crate::graph::{CorrelationGraph, VertexId};
use crate::matching::{bipartite_min_vertex_cover, BipartiteGraph};

/// Which branch produced the result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproxPath {
    /// The input was already a cluster graph.
    ClusterGraph,
    /// At most one clique outside `S`.
    Fallback,
    /// Cheapest simple solution over all guesses.
    Simple,
}

/// The pieces of one simple solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSolutionParts {
    pub s: Vec<VertexId>,
    pub cliques: Vec<Vec<VertexId>>,
    /// Index into `cliques` of the clique merged into `X_S`.
    pub guess: Option<usize>,
    /// `K_C` per clique, sorted; empty for the guessed clique.
    pub covers: Vec<Vec<VertexId>>,
    pub assembled: Clustering,
}

impl SimpleSolutionParts {
    /// `|S| + Σ |K_C|`, which equals the cost of `assembled`.
    pub fn cost(&self) -> usize {
        self.s.len() + self.covers.iter().map(Vec::len).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReport {
    pub path: ApproxPath,
    pub s: Vec<VertexId>,
    /// Cost of every guess in evaluation order (`None` first); empty unless
    /// the path is [`ApproxPath::Simple`].
    pub guess_costs: Vec<(Option<usize>, usize)>,
    /// The winning simple solution, if any.
    pub chosen: Option<SimpleSolutionParts>,
    pub clustering: Clustering,
}

/// Valid clustering of cost at most seven times the optimum.
pub fn approximate(g: &CorrelationGraph) -> Result<Clustering> {
    Ok(approximate_with_report(g)?.clustering)
}

pub fn approximate_with_report(g: &CorrelationGraph) -> Result<ApproxReport> {
    let forest = maximal_bad_star_forest(g)?;
    let s = forest.vertices();
    if s.is_empty() {
        let all: Vec<VertexId> = (0..g.n()).collect();
        let cliques = g
            .cluster_decomposition(&all)?
            .expect("no bad triangle means cluster graph");
        return Ok(ApproxReport {
            path: ApproxPath::ClusterGraph,
            s,
            guess_costs: Vec::new(),
            chosen: None,
            clustering: Clustering::new(cliques)?,
        });
    }

    let rest: Vec<VertexId> = (0..g.n()).filter(|v| s.binary_search(v).is_err()).collect();
    let cliques = g
        .cluster_decomposition(&rest)?
        .expect("maximal forest leaves a cluster graph");

    if cliques.len() <= 1 {
        let mut clusters = vec![(0..g.n()).collect::<Vec<_>>()];
        clusters.extend(s.iter().map(|&v| vec![v]));
        return Ok(ApproxReport {
            path: ApproxPath::Fallback,
            s,
            guess_costs: Vec::new(),
            chosen: None,
            clustering: Clustering::new(clusters)?,
        });
    }

    let covers: Vec<Vec<VertexId>> = cliques.iter().map(|c| cover_between(g, &s, c)).collect();
    let mut guess_costs = Vec::with_capacity(cliques.len() + 1);
    let mut best: Option<SimpleSolutionParts> = None;
    for guess in std::iter::once(None).chain((0..cliques.len()).map(Some)) {
        let parts = assemble(&s, &cliques, &covers, guess)?;
        let cost = parts.cost();
        guess_costs.push((guess, cost));
        if best.as_ref().is_none_or(|b| cost < b.cost()) {
            best = Some(parts);
        }
    }
    let chosen = best.expect("at least one guess");
    Ok(ApproxReport {
        path: ApproxPath::Simple,
        s,
        guess_costs,
        clustering: chosen.assembled.clone(),
        chosen: Some(chosen),
    })
}

/// Minimum vertex cover of the blue pairs between `s` and `clique`, as one
/// sorted vertex list.
fn cover_between(g: &CorrelationGraph, s: &[VertexId], clique: &[VertexId]) -> Vec<VertexId> {
    let edges: Vec<(VertexId, VertexId)> = s
        .iter()
        .flat_map(|&a| {
            clique
                .iter()
                .filter(move |&&c| g.is_blue(a, c))
                .map(move |&c| (a, c))
        })
        .collect();
    let b = BipartiteGraph::new(s.to_vec(), clique.to_vec(), edges).expect("sides declared");
    let cover = bipartite_min_vertex_cover(&b);
    let mut all = cover.left;
    all.extend(cover.right);
    all.sort_unstable();
    all
}

fn assemble(
    s: &[VertexId],
    cliques: &[Vec<VertexId>],
    covers: &[Vec<VertexId>],
    guess: Option<usize>,
) -> Result<SimpleSolutionParts> {
    let in_s = |v: &VertexId| s.binary_search(v).is_ok();
    let mut x_s = s.to_vec();
    let mut clusters = Vec::with_capacity(cliques.len() + s.len() + 1);
    let mut used_covers = Vec::with_capacity(cliques.len());
    for (i, clique) in cliques.iter().enumerate() {
        if guess == Some(i) {
            x_s.extend_from_slice(clique);
            used_covers.push(Vec::new());
            continue;
        }
        let k = &covers[i];
        x_s.extend(k.iter().filter(|v| !in_s(v)));
        let mut x_c = clique.clone();
        x_c.extend(k.iter().filter(|v| in_s(v)));
        clusters.push(x_c);
        used_covers.push(k.clone());
    }
    clusters.insert(0, x_s);
    clusters.extend(s.iter().map(|&v| vec![v]));
    Ok(SimpleSolutionParts {
        s: s.to_vec(),
        cliques: cliques.to_vec(),
        guess,
        covers: used_covers,
        assembled: Clustering::new(clusters)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::is_valid_clustering;
    use crate::error::Error;
    use crate::graph::EdgeColor;

    #[test]
    fn cluster_graph_is_returned_as_is() {
        let k4 = CorrelationGraph::from_fn(4, true, |_, _| EdgeColor::Blue).unwrap();
        let r = approximate_with_report(&k4).unwrap();
        assert_eq!(r.path, ApproxPath::ClusterGraph);
        assert_eq!(r.clustering.clusters(), &[vec![0, 1, 2, 3]]);

        let two = CorrelationGraph::complete(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            approximate(&two).unwrap().clusters(),
            &[vec![0, 1], vec![2, 3]]
        );
    }

    #[test]
    fn bad_triangle_uses_fallback() {
        let tri = CorrelationGraph::complete(3, &[(0, 1), (1, 2)]).unwrap();
        let r = approximate_with_report(&tri).unwrap();
        assert_eq!(r.path, ApproxPath::Fallback);
        assert!(is_valid_clustering(&tri, &r.clustering));
        assert_eq!(r.clustering.cost(3).unwrap(), r.s.len());
        assert!(r.clustering.cost(3).unwrap() <= 7);
    }

    #[test]
    fn bad_star() {
        let star = CorrelationGraph::complete(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let f = approximate(&star).unwrap();
        assert!(is_valid_clustering(&star, &f));
        assert!(f.cost(4).unwrap() <= 14);
    }

    #[test]
    fn guesses_cover_every_clique() {
        // bad triangle 0-1-2 plus cliques {3,4} and {5,6}; 1 blue to 3 and 5
        let g = CorrelationGraph::complete(7, &[(0, 1), (1, 2), (3, 4), (5, 6), (1, 3), (1, 5)])
            .unwrap();
        let r = approximate_with_report(&g).unwrap();
        assert_eq!(r.path, ApproxPath::Simple);
        assert_eq!(r.guess_costs.len(), 3);
        assert_eq!(r.guess_costs[0].0, None);
        let parts = r.chosen.as_ref().unwrap();
        assert_eq!(r.clustering.cost(7).unwrap(), parts.cost());
        assert!(is_valid_clustering(&g, &r.clustering));
        let min = r.guess_costs.iter().map(|&(_, c)| c).min().unwrap();
        assert_eq!(parts.cost(), min);
        // earliest minimum wins
        let first = r.guess_costs.iter().find(|&&(_, c)| c == min).unwrap().0;
        assert_eq!(parts.guess, first);
    }

    #[test]
    fn every_guess_is_valid() {
        let g = CorrelationGraph::complete(
            8,
            &[(0, 1), (1, 2), (3, 4), (5, 6), (1, 3), (0, 5), (2, 7)],
        )
        .unwrap();
        let s = maximal_bad_star_forest(&g).unwrap().vertices();
        let rest: Vec<_> = (0..8).filter(|v| !s.contains(v)).collect();
        let cliques = g.cluster_decomposition(&rest).unwrap().unwrap();
        let covers: Vec<_> = cliques.iter().map(|c| cover_between(&g, &s, c)).collect();
        for guess in std::iter::once(None).chain((0..cliques.len()).map(Some)) {
            let p = assemble(&s, &cliques, &covers, guess).unwrap();
            assert!(is_valid_clustering(&g, &p.assembled));
            assert_eq!(p.assembled.cost(8).unwrap(), p.cost());
        }
    }

    #[test]
    fn incomplete_is_rejected() {
        let g = CorrelationGraph::incomplete(2, &[], &[]).unwrap();
        assert_eq!(approximate(&g), Err(Error::IncompleteGraph));
    }
}

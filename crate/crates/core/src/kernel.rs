//! Polynomial kernel for complete graphs.
//!
//! The pipeline, for budget `k`:
//!
//! 1. Build a maximal bad star forest `T`; if its weight exceeds `k` the
//!    instance is a no-instance. Otherwise `S = V(T)` has at most `3k`
//!    vertices and `G - S` is a cluster graph.
//! 2. Remove every blue component that is a clique (it is already solved).
//! 3. If at least `4k + 1` cliques remain in `G - S`, each is blue-adjacent
//!    to `S` and a forest of weight `k + 1` witnesses a no-instance.
//! 4. In each clique `C_i`, every `s ∈ S` marks its `k + 1` lowest blue and
//!    `k + 1` lowest red neighbors. Unmarked vertices are deleted.
//!
//! The result has at most `24k³ + 24k² + 3k` vertices. A deleted vertex of
//! `C_i` is restored by adding it to the cluster that contains the marked
//! core `M_i`; a solution of cost at most `k` always has one.

use std::fmt::Write as _;

use crate::clustering::Clustering;
use crate::detect::{maximal_bad_star_forest, BadStar, BadStarForest};
use crate::error::{Error, Result};
use crate::graph::{CorrelationGraph, VertexId};
use crate::text;

/// One clique of `G - S` after marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCluster {
    pub clique: Vec<VertexId>,
    pub marked: Vec<VertexId>,
    pub removed: Vec<VertexId>,
}

/// Everything needed to map a kernel solution back to the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTranscript {
    pub k: usize,
    pub original_n: usize,
    pub forest: BadStarForest,
    pub removed_cliques: Vec<Vec<VertexId>>,
    pub clusters: Vec<KernelCluster>,
    /// Original id of each kernel vertex, ascending.
    pub id_map: Vec<VertexId>,
}

impl KernelTranscript {
    fn new(
        k: usize,
        original_n: usize,
        forest: BadStarForest,
        removed_cliques: Vec<Vec<VertexId>>,
        clusters: Vec<KernelCluster>,
    ) -> Result<Self> {
        let mut gone = vec![false; original_n];
        for v in removed_cliques
            .iter()
            .flatten()
            .chain(clusters.iter().flat_map(|c| &c.removed))
        {
            if *v >= original_n {
                return Err(Error::VertexOutOfRange {
                    vertex: *v,
                    n: original_n,
                });
            }
            if std::mem::replace(&mut gone[*v], true) {
                return Err(Error::TranscriptMismatch(format!(
                    "vertex {v} removed twice"
                )));
            }
        }
        let id_map = (0..original_n).filter(|&v| !gone[v]).collect();
        Ok(Self {
            k,
            original_n,
            forest,
            removed_cliques,
            clusters,
            id_map,
        })
    }

    /// Forest vertices.
    pub fn s(&self) -> Vec<VertexId> {
        self.forest.vertices()
    }

    /// Number of cliques of `G - S` that survived Rule 1.
    pub fn clique_count(&self) -> usize {
        self.clusters.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum KernelResult {
    NoInstance {
        witness: BadStarForest,
    },
    Kernel {
        graph: CorrelationGraph,
        transcript: KernelTranscript,
    },
}

/// Largest kernel the construction can produce for budget `k`.
pub fn kernel_size_bound(k: usize) -> usize {
    24 * k.pow(3) + 24 * k.pow(2) + 3 * k
}

/// Blue components of `within` that are cliques; in a complete graph all
/// their outside pairs are red.
fn isolated_cliques(g: &CorrelationGraph, within: &[VertexId]) -> Vec<Vec<VertexId>> {
    g.blue_components_within(within)
        .into_iter()
        .filter(|c| c.iter().all(|&u| g.blue_neighbors(u).len() == c.len() - 1))
        .collect()
}

/// Removes every blue clique that has only red pairs to the rest; returns
/// the remaining graph (ids compacted in ascending order) and the removed
/// cliques in original ids.
pub fn rule_remove_isolated_cliques(
    g: &CorrelationGraph,
) -> Result<(CorrelationGraph, Vec<Vec<VertexId>>)> {
    g.require_complete()?;
    let all: Vec<VertexId> = (0..g.n()).collect();
    let removed = isolated_cliques(g, &all);
    let mut gone = vec![false; g.n()];
    for &v in removed.iter().flatten() {
        gone[v] = true;
    }
    let keep: Vec<VertexId> = all.into_iter().filter(|&v| !gone[v]).collect();
    Ok((g.induced(&keep)?, removed))
}

/// A forest of weight at least `k + 1` built from one blue pair between `S`
/// and each clique, grouped by the `S` endpoint.
fn clique_witness(
    g: &CorrelationGraph,
    s: &[VertexId],
    cliques: &[Vec<VertexId>],
) -> BadStarForest {
    let mut leaves_of: Vec<Vec<VertexId>> = vec![Vec::new(); s.len()];
    for clique in cliques {
        let hit = s
            .iter()
            .enumerate()
            .find_map(|(i, &x)| clique.iter().find(|&&c| g.is_blue(x, c)).map(|&c| (i, c)));
        if let Some((i, c)) = hit {
            leaves_of[i].push(c);
        }
    }
    BadStarForest {
        stars: s
            .iter()
            .zip(leaves_of)
            .filter(|(_, leaves)| leaves.len() >= 2)
            .map(|(&center, mut leaves)| {
                leaves.sort_unstable();
                BadStar { center, leaves }
            })
            .collect(),
    }
}

fn mark(g: &CorrelationGraph, s: &[VertexId], clique: &[VertexId], k: usize) -> KernelCluster {
    let mut is_marked = vec![false; clique.len()];
    for &x in s {
        for want_blue in [true, false] {
            clique
                .iter()
                .enumerate()
                .filter(|&(_, &c)| g.is_blue(x, c) == want_blue)
                .take(k + 1)
                .for_each(|(i, _)| is_marked[i] = true);
        }
    }
    let (marked, removed): (Vec<_>, Vec<_>) = clique.iter().zip(&is_marked).partition(|(_, &m)| m);
    KernelCluster {
        clique: clique.to_vec(),
        marked: marked.into_iter().map(|(&v, _)| v).collect(),
        removed: removed.into_iter().map(|(&v, _)| v).collect(),
    }
}

pub fn kernelize(g: &CorrelationGraph, k: usize) -> Result<KernelResult> {
    let forest = maximal_bad_star_forest(g)?;
    if forest.weight() > k {
        return Ok(KernelResult::NoInstance { witness: forest });
    }
    let s = forest.vertices();

    let all: Vec<VertexId> = (0..g.n()).collect();
    let removed_cliques = isolated_cliques(g, &all);
    let mut gone = vec![false; g.n()];
    for &v in removed_cliques.iter().flatten() {
        gone[v] = true;
    }
    let rest: Vec<VertexId> = all
        .iter()
        .copied()
        .filter(|&v| !gone[v] && s.binary_search(&v).is_err())
        .collect();
    let cliques = g
        .cluster_decomposition(&rest)?
        .expect("maximal forest leaves a cluster graph");

    if cliques.len() > 4 * k {
        let witness = clique_witness(g, &s, &cliques);
        debug_assert!(witness.weight() > k);
        return Ok(KernelResult::NoInstance { witness });
    }

    let clusters: Vec<KernelCluster> = cliques.iter().map(|c| mark(g, &s, c, k)).collect();
    let transcript = KernelTranscript::new(k, g.n(), forest, removed_cliques, clusters)?;
    let graph = g.induced(&transcript.id_map)?;
    Ok(KernelResult::Kernel { graph, transcript })
}

/// Maps a kernel solution of cost at most `k` back to the original graph at
/// equal cost.
pub fn lift_clustering(kernel_solution: &Clustering, t: &KernelTranscript) -> Result<Clustering> {
    if let Some(v) = kernel_solution.max_vertex() {
        if v >= t.id_map.len() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: t.id_map.len(),
            });
        }
    }
    let mut clusters = kernel_solution.relabel(&t.id_map).into_clusters();
    for entry in t.clusters.iter().filter(|c| !c.removed.is_empty()) {
        let host = clusters
            .iter_mut()
            .find(|x| entry.marked.iter().all(|m| x.binary_search(m).is_ok()))
            .ok_or_else(|| Error::MarkedCoreNotFound(entry.marked.clone()))?;
        host.extend_from_slice(&entry.removed);
        host.sort_unstable();
    }
    clusters.extend(t.removed_cliques.iter().cloned());
    Clustering::new(clusters)
}

/// Serializes a transcript in the `ktx` format.
pub fn write_transcript(t: &KernelTranscript) -> String {
    let mut out = format!("ktx {} {}\n", t.original_n, t.k);
    for star in &t.forest.stars {
        let _ = writeln!(
            out,
            "star {} : {}",
            star.center,
            text::join_ids(&star.leaves)
        );
    }
    let _ = writeln!(out, "S {}", text::join_ids(&t.s()));
    for c in &t.removed_cliques {
        let _ = writeln!(out, "rc {}", text::join_ids(c));
    }
    for c in &t.clusters {
        let _ = writeln!(
            out,
            "cl {} | {} | {}",
            text::join_ids(&c.clique),
            text::join_ids(&c.marked),
            text::join_ids(&c.removed)
        );
    }
    // trailing spaces from empty groups are harmless but untidy
    out.lines()
        .map(str::trim_end)
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}

fn sorted_ids(tokens: &[&str], line: usize) -> Result<Vec<VertexId>> {
    let mut ids = tokens
        .iter()
        .map(|t| text::parse_usize(t, line))
        .collect::<Result<Vec<_>>>()?;
    ids.sort_unstable();
    Ok(ids)
}

pub fn parse_transcript(input: &str) -> Result<KernelTranscript> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `ktx` header".into(),
    })?;
    if header.tokens.len() != 3 || header.tokens[0] != "ktx" {
        return Err(header.err("expected `ktx <n> <k>`"));
    }
    let n = header.usize_at(1)?;
    let k = header.usize_at(2)?;
    let mut forest = BadStarForest::default();
    let mut s_line = None;
    let mut removed_cliques = Vec::new();
    let mut clusters = Vec::new();
    for line in lines {
        match line.tokens[0] {
            "star" => {
                if line.tokens.len() < 3 || line.tokens[2] != ":" {
                    return Err(line.err("expected `star <center> : <leaves>`"));
                }
                forest.stars.push(BadStar {
                    center: line.usize_at(1)?,
                    leaves: sorted_ids(&line.tokens[3..], line.number)?,
                });
            }
            "S" => s_line = Some(sorted_ids(&line.tokens[1..], line.number)?),
            "rc" => {
                let c = sorted_ids(&line.tokens[1..], line.number)?;
                if c.is_empty() {
                    return Err(line.err("empty removed clique"));
                }
                removed_cliques.push(c);
            }
            "cl" => {
                let groups = text::parse_groups(&line.tokens[1..], line.number)?;
                let [clique, marked, removed]: [Vec<VertexId>; 3] = groups
                    .try_into()
                    .map_err(|_| line.err("expected `cl <clique> | <marked> | <removed>`"))?;
                let mut union: Vec<VertexId> = marked.iter().chain(&removed).copied().collect();
                union.sort_unstable();
                let mut sorted_clique = clique.clone();
                sorted_clique.sort_unstable();
                if union != sorted_clique {
                    return Err(line.err("marked and removed sets must partition the clique"));
                }
                let mut marked = marked;
                marked.sort_unstable();
                let mut removed = removed;
                removed.sort_unstable();
                clusters.push(KernelCluster {
                    clique: sorted_clique,
                    marked,
                    removed,
                });
            }
            other => return Err(line.err(format!("unknown record `{other}`"))),
        }
    }
    if let Some(s) = s_line {
        if s != forest.vertices() {
            return Err(Error::TranscriptMismatch(
                "S does not match the star vertices".into(),
            ));
        }
    }
    for v in forest.vertices() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    KernelTranscript::new(k, n, forest, removed_cliques, clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::is_valid_clustering;
    use crate::exact::{solve_exact, SearchBudget};
    use crate::graph::EdgeColor;

    fn tri() -> CorrelationGraph {
        CorrelationGraph::complete(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn bad_triangle_with_budget_one_is_kept() {
        match kernelize(&tri(), 1).unwrap() {
            KernelResult::Kernel { graph, transcript } => {
                assert_eq!(graph, tri());
                assert_eq!(transcript.id_map, vec![0, 1, 2]);
                assert!(transcript.removed_cliques.is_empty());
            }
            other => panic!("expected kernel, got {other:?}"),
        }
    }

    #[test]
    fn two_bad_triangles_budget_one() {
        let g = CorrelationGraph::complete(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        match kernelize(&g, 1).unwrap() {
            KernelResult::NoInstance { witness } => assert_eq!(witness.weight(), 2),
            other => panic!("expected no-instance, got {other:?}"),
        }
    }

    #[test]
    fn isolated_cliques_vanish() {
        let g = CorrelationGraph::complete(5, &[(0, 1), (2, 3), (2, 4), (3, 4)]).unwrap();
        let (rest, removed) = rule_remove_isolated_cliques(&g).unwrap();
        assert_eq!(rest.n(), 0);
        assert_eq!(removed, vec![vec![0, 1], vec![2, 3, 4]]);
        match kernelize(&g, 0).unwrap() {
            KernelResult::Kernel { graph, transcript } => {
                assert_eq!(graph.n(), 0);
                let lifted = lift_clustering(&Clustering::default(), &transcript).unwrap();
                assert_eq!(lifted.clusters(), &[vec![0, 1], vec![2, 3, 4]]);
            }
            other => panic!("expected kernel, got {other:?}"),
        }

        let (same, removed) = rule_remove_isolated_cliques(&tri()).unwrap();
        assert_eq!(same, tri());
        assert!(removed.is_empty());

        // vertex 3 has only red pairs
        let g = CorrelationGraph::complete(4, &[(0, 1), (1, 2)]).unwrap();
        let (rest, removed) = rule_remove_isolated_cliques(&g).unwrap();
        assert_eq!(removed, vec![vec![3]]);
        assert_eq!(rest, tri());
    }

    #[test]
    fn rule_one_lifting_appends_cliques() {
        // bad triangle 0-1-2 and an isolated edge 5-6 among red pairs
        let mut blue = vec![(0, 1), (1, 2), (5, 6)];
        blue.extend([(3, 4)]);
        let g = CorrelationGraph::complete(7, &blue).unwrap();
        let KernelResult::Kernel { graph, transcript } = kernelize(&g, 1).unwrap() else {
            panic!("expected kernel");
        };
        assert_eq!(transcript.removed_cliques, vec![vec![3, 4], vec![5, 6]]);
        assert_eq!(transcript.id_map, vec![0, 1, 2]);
        let sol = solve_exact(&graph, &SearchBudget::with_max_cost(1))
            .unwrap()
            .unwrap();
        let lifted = lift_clustering(&sol, &transcript).unwrap();
        assert!(is_valid_clustering(&g, &lifted));
        assert_eq!(lifted.cost(7).unwrap(), 1);
        assert_eq!(
            &lifted.clusters()[lifted.len() - 2..],
            &[vec![3, 4], vec![5, 6]]
        );
    }

    /// Bad triangle 0-1-2 whose center is blue to a clique 3..3+m.
    fn triangle_with_clique(m: usize) -> CorrelationGraph {
        let n = 3 + m;
        CorrelationGraph::from_fn(n, true, |u, v| {
            let (u, v) = (u.min(v), u.max(v));
            let blue = matches!((u, v), (0, 1) | (1, 2)) || (u >= 3) || (u == 1 && v >= 3);
            if blue {
                EdgeColor::Blue
            } else {
                EdgeColor::Red
            }
        })
        .unwrap()
    }

    #[test]
    fn marking_shrinks_large_clique() {
        let g = triangle_with_clique(8);
        // the star around 1 takes 0, 2 and the first clique vertex 3
        let KernelResult::Kernel { graph, transcript } = kernelize(&g, 2).unwrap() else {
            panic!("expected kernel");
        };
        assert_eq!(transcript.s(), vec![0, 1, 2, 3]);
        assert_eq!(transcript.clusters.len(), 1);
        let c = &transcript.clusters[0];
        assert_eq!(c.marked, vec![4, 5, 6]);
        assert_eq!(c.removed, vec![7, 8, 9, 10]);
        assert_eq!(graph.n(), 7);
        assert!(graph.n() <= kernel_size_bound(2));

        let sol = solve_exact(&graph, &SearchBudget::with_max_cost(2))
            .unwrap()
            .expect("kernel is a yes-instance");
        let lifted = lift_clustering(&sol, &transcript).unwrap();
        assert!(is_valid_clustering(&g, &lifted));
        assert_eq!(lifted.cost(g.n()).unwrap(), sol.cost(graph.n()).unwrap());
    }

    #[test]
    fn lifting_rejects_costly_solutions() {
        let g = triangle_with_clique(8);
        let KernelResult::Kernel { graph, transcript } = kernelize(&g, 2).unwrap() else {
            panic!("expected kernel");
        };
        let clusters: Vec<Vec<VertexId>> = graph
            .blue_edges()
            .into_iter()
            .map(|(u, v)| vec![u, v])
            .collect();
        let f = Clustering::new(clusters).unwrap();
        assert!(is_valid_clustering(&graph, &f));
        assert_eq!(
            lift_clustering(&f, &transcript),
            Err(Error::MarkedCoreNotFound(vec![4, 5, 6]))
        );
    }

    #[test]
    fn many_cliques_give_witness() {
        // bad triangle 0-1-2 plus five blue edges hanging off vertex 2
        let mut blue = vec![(0, 1), (1, 2)];
        for c in 0..5 {
            let a = 3 + 2 * c;
            blue.push((a, a + 1));
            blue.push((2, a));
        }
        let g = CorrelationGraph::complete(13, &blue).unwrap();
        assert_eq!(maximal_bad_star_forest(&g).unwrap().weight(), 1);
        match kernelize(&g, 1).unwrap() {
            KernelResult::NoInstance { witness } => {
                assert_eq!(
                    witness.stars,
                    vec![BadStar {
                        center: 2,
                        leaves: vec![3, 5, 7, 9, 11]
                    }]
                );
                assert!(witness.stars[0].is_valid_in(&g));
            }
            other => panic!("expected no-instance, got {other:?}"),
        }
    }

    #[test]
    fn transcript_round_trip() {
        let g = triangle_with_clique(8);
        let KernelResult::Kernel { transcript, .. } = kernelize(&g, 2).unwrap() else {
            panic!("expected kernel");
        };
        let text = write_transcript(&transcript);
        assert_eq!(
            text,
            "ktx 11 2\nstar 1 : 0 2 3\nS 0 1 2 3\ncl 4 5 6 7 8 9 10 | 4 5 6 | 7 8 9 10\n"
        );
        assert_eq!(parse_transcript(&text).unwrap(), transcript);

        let empty =
            KernelTranscript::new(0, 3, BadStarForest::default(), vec![vec![0, 1, 2]], vec![])
                .unwrap();
        let text = write_transcript(&empty);
        assert_eq!(text, "ktx 3 0\nS\nrc 0 1 2\n");
        assert_eq!(parse_transcript(&text).unwrap(), empty);

        assert!(parse_transcript("ktx 3 0\nS 0\n").is_err());
        assert!(parse_transcript("ktx 3 0\ncl 0 1 | 0 |\n").is_err());
    }

    #[test]
    fn identity_lifting() {
        let KernelResult::Kernel { transcript, .. } = kernelize(&tri(), 1).unwrap() else {
            panic!("expected kernel");
        };
        let f = Clustering::new(vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(lift_clustering(&f, &transcript).unwrap(), f);
    }
}

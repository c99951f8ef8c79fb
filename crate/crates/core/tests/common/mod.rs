//! Brute-force reference computations shared by the integration suites.
#![allow(dead_code)]

use splitclust::{
    solve_exact, BipartiteGraph, Clustering, CorrelationGraph, PlainGraph, SearchBudget, VertexId,
};

/// Minimum vertex cover size by trying every subset.
pub fn vertex_cover_number(g: &PlainGraph) -> usize {
    (0u32..1 << g.n())
        .filter(|mask| {
            g.edges()
                .iter()
                .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
        })
        .map(u32::count_ones)
        .min()
        .unwrap_or(0) as usize
}

/// Proper `k`-coloring exists, by trying every color assignment.
pub fn is_k_colorable(g: &PlainGraph, k: usize) -> bool {
    let n = g.n();
    let total = k.pow(n as u32);
    (0..total).any(|mut code| {
        let mut color = vec![0; n];
        for c in color.iter_mut() {
            *c = code % k;
            code /= k;
        }
        g.edges().iter().all(|&(u, v)| color[u] != color[v])
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// found by canonicalizing every labeled graph.
pub fn nonisomorphic_graphs(n: usize) -> Vec<PlainGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let index_of = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index_of(p[u], p[v]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.push(PlainGraph::new(n, &edges).unwrap());
        }
    }
    out
}

pub fn cycle(n: usize) -> PlainGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    PlainGraph::new(n, &edges).unwrap()
}

pub fn clique(n: usize) -> PlainGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    PlainGraph::new(n, &edges).unwrap()
}

/// Minimum vertex cover size of a bipartite graph by exhaustive search.
pub fn bipartite_cover_number(b: &BipartiteGraph) -> usize {
    let nl = b.left().len();
    let n = nl + b.right().len();
    let pos = |side: &[VertexId], x: VertexId| side.iter().position(|&y| y == x).unwrap();
    (0u32..1 << n)
        .filter(|mask| {
            b.edges().iter().all(|&(l, r)| {
                mask >> pos(b.left(), l) & 1 == 1 || mask >> (nl + pos(b.right(), r)) & 1 == 1
            })
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

/// Optimal clustering with a budget large enough for any desk-scale graph.
pub fn optimum(g: &CorrelationGraph) -> Clustering {
    let budget = SearchBudget {
        max_cost: g.n() * g.n(),
        ..SearchBudget::default()
    };
    solve_exact(g, &budget)
        .unwrap()
        .expect("a clustering always exists")
}

/// Maximal blue cliques by exhaustive subset search.
pub fn maximal_blue_cliques(g: &CorrelationGraph) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let is_clique = |mask: u32| {
        (0..n).all(|u| {
            mask >> u & 1 == 0 || (u + 1..n).all(|v| mask >> v & 1 == 0 || g.is_blue(u, v))
        })
    };
    let cliques: Vec<u32> = (1u32..1 << n).filter(|&m| is_clique(m)).collect();
    cliques
        .iter()
        .filter(|&&m| !cliques.iter().any(|&o| o != m && o & m == m))
        .map(|&m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

/// True if some cluster of `f` contains all of `set`.
pub fn some_cluster_contains(f: &Clustering, set: &[VertexId]) -> bool {
    f.clusters()
        .iter()
        .any(|c| set.iter().all(|v| c.binary_search(v).is_ok()))
}

//! Correlation graphs: vertices with blue, red or neutral pair labels.
//!
//! Complete graphs keep a dense bit matrix of blue pairs (every other pair is
//! red). Incomplete graphs keep sorted blue and red adjacency lists; pairs in
//! neither list are neutral.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::text;

pub type VertexId = usize;

/// Largest vertex count accepted by the parser and the builder.
pub const MAX_VERTICES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Blue,
    Red,
    Neutral,
}

impl EdgeColor {
    fn symbol(self) -> char {
        match self {
            EdgeColor::Blue => 'b',
            EdgeColor::Red => 'r',
            EdgeColor::Neutral => 'n',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationGraph {
    n: usize,
    complete: bool,
    blue_adj: Vec<Vec<VertexId>>,
    /// Always empty for complete graphs.
    red_adj: Vec<Vec<VertexId>>,
    /// `n * n` blue bits, complete graphs only.
    dense_blue: Option<FixedBitSet>,
}

/// Accumulates pair labels and rejects contradictions.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    n: usize,
    complete: bool,
    labels: HashMap<(VertexId, VertexId), EdgeColor>,
}

impl GraphBuilder {
    pub fn new(n: usize, complete: bool) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Self {
            n,
            complete,
            labels: HashMap::new(),
        })
    }

    pub fn set(&mut self, u: VertexId, v: VertexId, color: EdgeColor) -> Result<&mut Self> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.complete && color == EdgeColor::Neutral {
            return Err(Error::NeutralInComplete { u: key.0, v: key.1 });
        }
        match self.labels.get(&key) {
            Some(&old) if old != color => {
                return Err(Error::ConflictingColor { u: key.0, v: key.1 })
            }
            _ => {
                self.labels.insert(key, color);
            }
        }
        Ok(self)
    }

    pub fn build(self) -> CorrelationGraph {
        let n = self.n;
        let mut blue_adj = vec![Vec::new(); n];
        let mut red_adj = vec![Vec::new(); n];
        for (&(u, v), &color) in &self.labels {
            match color {
                EdgeColor::Blue => {
                    blue_adj[u].push(v);
                    blue_adj[v].push(u);
                }
                EdgeColor::Red if !self.complete => {
                    red_adj[u].push(v);
                    red_adj[v].push(u);
                }
                _ => {}
            }
        }
        for list in blue_adj.iter_mut().chain(red_adj.iter_mut()) {
            list.sort_unstable();
        }
        let dense_blue = self.complete.then(|| {
            let mut bits = FixedBitSet::with_capacity(n * n);
            for (u, list) in blue_adj.iter().enumerate() {
                for &v in list {
                    bits.insert(u * n + v);
                }
            }
            bits
        });
        CorrelationGraph {
            n,
            complete: self.complete,
            blue_adj,
            red_adj,
            dense_blue,
        }
    }
}

impl CorrelationGraph {
    /// Complete graph whose listed pairs are blue and all others red.
    pub fn complete(n: usize, blue: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n, true)?;
        for &(u, v) in blue {
            b.set(u, v, EdgeColor::Blue)?;
        }
        Ok(b.build())
    }

    /// Incomplete graph with the given blue and red pairs; all others neutral.
    pub fn incomplete(
        n: usize,
        blue: &[(VertexId, VertexId)],
        red: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let mut b = GraphBuilder::new(n, false)?;
        for &(u, v) in blue {
            b.set(u, v, EdgeColor::Blue)?;
        }
        for &(u, v) in red {
            b.set(u, v, EdgeColor::Red)?;
        }
        Ok(b.build())
    }

    /// Labels every pair `u < v` with `color(u, v)`.
    pub fn from_fn(
        n: usize,
        complete: bool,
        mut color: impl FnMut(VertexId, VertexId) -> EdgeColor,
    ) -> Result<Self> {
        let mut b = GraphBuilder::new(n, complete)?;
        for u in 0..n {
            for v in u + 1..n {
                let c = color(u, v);
                if c != EdgeColor::Neutral || complete {
                    b.set(u, v, c)?;
                }
            }
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteGraph)
        }
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Label of the pair `{u, v}`. Panics if `u == v` or either is out of range.
    pub fn label(&self, u: VertexId, v: VertexId) -> EdgeColor {
        assert!(u != v && u < self.n && v < self.n, "invalid pair {u},{v}");
        match &self.dense_blue {
            Some(bits) => {
                if bits.contains(u * self.n + v) {
                    EdgeColor::Blue
                } else {
                    EdgeColor::Red
                }
            }
            None => {
                if self.blue_adj[u].binary_search(&v).is_ok() {
                    EdgeColor::Blue
                } else if self.red_adj[u].binary_search(&v).is_ok() {
                    EdgeColor::Red
                } else {
                    EdgeColor::Neutral
                }
            }
        }
    }

    pub fn is_blue(&self, u: VertexId, v: VertexId) -> bool {
        self.label(u, v) == EdgeColor::Blue
    }

    pub fn is_red(&self, u: VertexId, v: VertexId) -> bool {
        self.label(u, v) == EdgeColor::Red
    }

    /// Sorted blue neighbors.
    pub fn blue_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.blue_adj[u]
    }

    /// Sorted red neighbors.
    pub fn red_neighbors(&self, u: VertexId) -> Vec<VertexId> {
        if self.complete {
            let blue = &self.blue_adj[u];
            (0..self.n)
                .filter(|&v| v != u && blue.binary_search(&v).is_err())
                .collect()
        } else {
            self.red_adj[u].clone()
        }
    }

    /// Blue pairs `(u, v)` with `u < v`, sorted.
    pub fn blue_edges(&self) -> Vec<(VertexId, VertexId)> {
        Self::pairs_of(&self.blue_adj)
    }

    /// Red pairs `(u, v)` with `u < v`, sorted.
    pub fn red_edges(&self) -> Vec<(VertexId, VertexId)> {
        if self.complete {
            let mut out = Vec::new();
            for u in 0..self.n {
                for v in u + 1..self.n {
                    if !self.is_blue(u, v) {
                        out.push((u, v));
                    }
                }
            }
            out
        } else {
            Self::pairs_of(&self.red_adj)
        }
    }

    fn pairs_of(adj: &[Vec<VertexId>]) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (u, list) in adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn blue_count(&self) -> usize {
        self.blue_adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn red_count(&self) -> usize {
        if self.complete {
            self.n * self.n.saturating_sub(1) / 2 - self.blue_count()
        } else {
            self.red_adj.iter().map(Vec::len).sum::<usize>() / 2
        }
    }

    pub fn neutral_count(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2 - self.blue_count() - self.red_count()
    }

    /// Subgraph induced by `vertices`; new vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[VertexId]) -> Result<CorrelationGraph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut b = GraphBuilder::new(vertices.len(), self.complete)?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                match self.label(u, v) {
                    EdgeColor::Neutral => {}
                    c => {
                        b.set(i, j, c)?;
                    }
                }
            }
        }
        Ok(b.build())
    }

    /// Connected components of the blue subgraph, each sorted, ordered by
    /// smallest member.
    pub fn blue_components(&self) -> Vec<Vec<VertexId>> {
        let all: Vec<VertexId> = (0..self.n).collect();
        self.blue_components_within(&all)
    }

    pub(crate) fn blue_components_within(&self, within: &[VertexId]) -> Vec<Vec<VertexId>> {
        let mut inside = vec![false; self.n];
        for &v in within {
            inside[v] = true;
        }
        let mut uf = UnionFind::<usize>::new(self.n);
        for &u in within {
            for &v in &self.blue_adj[u] {
                if v > u && inside[v] {
                    uf.union(u, v);
                }
            }
        }
        let mut by_root: HashMap<usize, Vec<VertexId>> = HashMap::new();
        for u in (0..self.n).filter(|&u| inside[u]) {
            by_root.entry(uf.find(u)).or_default().push(u);
        }
        let mut comps: Vec<Vec<VertexId>> = by_root.into_values().collect();
        comps.sort_unstable_by_key(|c| c[0]);
        comps
    }

    /// Splits the subgraph induced by `restrict_to` into its blue cliques, or
    /// returns `None` if some blue component is not a clique.
    pub fn cluster_decomposition(
        &self,
        restrict_to: &[VertexId],
    ) -> Result<Option<Vec<Vec<VertexId>>>> {
        for &v in restrict_to {
            self.check_vertex(v)?;
        }
        let comps = self.blue_components_within(restrict_to);
        for comp in &comps {
            for (i, &u) in comp.iter().enumerate() {
                if comp[i + 1..].iter().any(|&v| !self.is_blue(u, v)) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(comps))
    }

    /// True iff the whole graph is a cluster graph.
    pub fn is_cluster_graph(&self) -> bool {
        let all: Vec<VertexId> = (0..self.n).collect();
        matches!(self.cluster_decomposition(&all), Ok(Some(_)))
    }
}

/// Parses the `ccg` text format.
pub fn parse_graph(input: &str) -> Result<CorrelationGraph> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `ccg` header".into(),
    })?;
    if header.tokens.len() != 3 || header.tokens[0] != "ccg" {
        return Err(header.err("expected `ccg <n> complete|incomplete`"));
    }
    let n = header.usize_at(1)?;
    let complete = match header.tokens[2] {
        "complete" => true,
        "incomplete" => false,
        other => return Err(header.err(format!("unknown completeness flag `{other}`"))),
    };
    let mut builder = GraphBuilder::new(n, complete)?;
    for line in lines {
        if line.tokens.len() != 4 || line.tokens[0] != "e" {
            return Err(line.err("expected `e <u> <v> b|r`"));
        }
        let u = line.usize_at(1)?;
        let v = line.usize_at(2)?;
        let color = match line.tokens[3] {
            "b" => EdgeColor::Blue,
            "r" => EdgeColor::Red,
            "n" => EdgeColor::Neutral,
            other => return Err(line.err(format!("unknown color `{other}`"))),
        };
        builder.set(u, v, color).map_err(|e| match e {
            Error::Parse { .. } => e,
            other => line.err(other.to_string()),
        })?;
    }
    Ok(builder.build())
}

/// Canonical `ccg` text: pairs sorted, complete graphs list only blue pairs.
pub fn write_graph(g: &CorrelationGraph) -> String {
    let mut out = format!(
        "ccg {} {}\n",
        g.n,
        if g.complete { "complete" } else { "incomplete" }
    );
    let mut pairs: Vec<(VertexId, VertexId, EdgeColor)> = g
        .blue_edges()
        .into_iter()
        .map(|(u, v)| (u, v, EdgeColor::Blue))
        .collect();
    if !g.complete {
        pairs.extend(
            g.red_edges()
                .into_iter()
                .map(|(u, v)| (u, v, EdgeColor::Red)),
        );
    }
    pairs.sort_unstable_by_key(|&(u, v, _)| (u, v));
    for (u, v, c) in pairs {
        let _ = writeln!(out, "e {u} {v} {}", c.symbol());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bad_triangle() -> CorrelationGraph {
        CorrelationGraph::complete(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn parse_fills_red_default() {
        let g = parse_graph("ccg 3 complete\ne 0 1 b\ne 1 2 b").unwrap();
        assert_eq!(g, bad_triangle());
        assert_eq!(g.label(0, 2), EdgeColor::Red);
        assert_eq!(g.label(2, 1), EdgeColor::Blue);
    }

    #[test]
    fn parse_incomplete_defaults_neutral() {
        let g = parse_graph("ccg 2 incomplete").unwrap();
        assert_eq!(g.label(0, 1), EdgeColor::Neutral);
        assert!(!g.is_complete());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_graph("ccg 3 complete\ne 0 1 b\ne 0 1 r"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_graph("ccg 3 complete\ne 0 3 b").is_err());
        assert!(parse_graph("ccg 3 complete\ne 0 1 n").is_err());
        assert!(parse_graph("ccg 3 complete\ne 1 1 b").is_err());
        assert!(parse_graph("graph 3 complete").is_err());
        assert!(parse_graph("ccg x complete").is_err());
        assert!(parse_graph("ccg 3 sometimes").is_err());
        assert!(parse_graph("").is_err());
        assert!(matches!(
            parse_graph("ccg 100001 incomplete"),
            Err(Error::TooManyVertices { .. })
        ));
        // repeating a pair with the same color is fine
        assert!(parse_graph("ccg 3 complete\ne 0 1 b\ne 1 0 b").is_ok());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g =
            parse_graph("# names: a b c\n\nccg 3 complete\n  # x\ne 0 1 b\n\ne 2 1 b\n").unwrap();
        assert_eq!(g, bad_triangle());
    }

    #[test]
    fn canonical_write() {
        assert_eq!(
            write_graph(&bad_triangle()),
            "ccg 3 complete\ne 0 1 b\ne 1 2 b\n"
        );
        let empty = CorrelationGraph::incomplete(1, &[], &[]).unwrap();
        assert_eq!(write_graph(&empty), "ccg 1 incomplete\n");
        let g = parse_graph("ccg 4 incomplete\ne 3 1 r\ne 2 0 b\ne 0 1 r").unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "ccg 4 incomplete\ne 0 1 r\ne 0 2 b\ne 1 3 r\n");
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }

    #[test]
    fn blue_components_examples() {
        let all_red = CorrelationGraph::complete(3, &[]).unwrap();
        assert_eq!(all_red.blue_components(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(bad_triangle().blue_components(), vec![vec![0, 1, 2]]);
        let g = CorrelationGraph::incomplete(3, &[(0, 1)], &[]).unwrap();
        assert_eq!(g.blue_components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn cluster_decomposition_examples() {
        let g = CorrelationGraph::complete(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            g.cluster_decomposition(&[0, 1, 2, 3]).unwrap(),
            Some(vec![vec![0, 1], vec![2, 3]])
        );
        assert_eq!(
            bad_triangle().cluster_decomposition(&[0, 1, 2]).unwrap(),
            None
        );
        assert_eq!(
            bad_triangle().cluster_decomposition(&[1]).unwrap(),
            Some(vec![vec![1]])
        );
        assert_eq!(
            bad_triangle().cluster_decomposition(&[0, 2]).unwrap(),
            Some(vec![vec![0], vec![2]])
        );
        assert!(bad_triangle().cluster_decomposition(&[5]).is_err());
    }

    #[test]
    fn counts_and_induced() {
        let g = bad_triangle();
        assert_eq!(
            (g.blue_count(), g.red_count(), g.neutral_count()),
            (2, 1, 0)
        );
        assert_eq!(g.red_neighbors(0), vec![2]);
        let h = g.induced(&[2, 1]).unwrap();
        assert_eq!(h.n(), 2);
        assert!(h.is_blue(0, 1));
        let inc = CorrelationGraph::incomplete(3, &[(0, 1)], &[(1, 2)]).unwrap();
        assert_eq!(
            (inc.blue_count(), inc.red_count(), inc.neutral_count()),
            (1, 1, 1)
        );
        assert_eq!(inc.red_edges(), vec![(1, 2)]);
    }
}

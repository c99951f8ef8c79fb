//! Multicut with vertex splitting and its equivalence with correlation
//! clustering.
//!
//! Blue pairs become edges and red pairs become terminal pairs; neutral pairs
//! vanish. A multicut solution is the end state of exclusive splits: every
//! split vertex partitions its neighbors into at least two nonempty parts,
//! one per descendant. A terminal pair with a split endpoint is dropped.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use crate::clustering::{splits_to_clustering, verify_clustering, Clustering, RealizedGraph};
use crate::error::{Error, Result};
use crate::graph::{CorrelationGraph, EdgeColor, GraphBuilder, VertexId, MAX_VERTICES};
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticutInstance {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    terminals: Vec<(VertexId, VertexId)>,
    k: usize,
    adj: Vec<Vec<VertexId>>,
}

fn normalize(n: usize, pairs: Vec<(VertexId, VertexId)>) -> Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
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
    Ok(out)
}

impl MulticutInstance {
    pub fn new(
        n: usize,
        edges: Vec<(VertexId, VertexId)>,
        terminals: Vec<(VertexId, VertexId)>,
        k: usize,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                limit: MAX_VERTICES,
            });
        }
        let edges = normalize(n, edges)?;
        let terminals = normalize(n, terminals)?;
        if let Some(&(u, v)) = terminals.iter().find(|t| edges.binary_search(t).is_ok()) {
            return Err(Error::TerminalEdgeOverlap { u, v });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            terminals,
            k,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn terminals(&self) -> &[(VertexId, VertexId)] {
        &self.terminals
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.adj[v].clone()
    }
}

/// Neighbor partitions of the split vertices; absent vertices are unsplit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MulticutSolution {
    splits: BTreeMap<VertexId, Vec<Vec<VertexId>>>,
}

impl MulticutSolution {
    /// Parts are sorted and ordered by their smallest neighbor.
    pub fn set_split(&mut self, v: VertexId, mut parts: Vec<Vec<VertexId>>) {
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p.first().copied());
        self.splits.insert(v, parts);
    }

    pub fn remove_split(&mut self, v: VertexId) {
        self.splits.remove(&v);
    }

    pub fn parts(&self, v: VertexId) -> Option<&[Vec<VertexId>]> {
        self.splits.get(&v).map(Vec::as_slice)
    }

    pub fn splits(&self) -> impl Iterator<Item = (VertexId, &[Vec<VertexId>])> {
        self.splits.iter().map(|(&v, p)| (v, p.as_slice()))
    }

    pub fn is_split(&self, v: VertexId) -> bool {
        self.splits.contains_key(&v)
    }

    /// Number of exclusive splits performed.
    pub fn cost(&self) -> usize {
        self.splits
            .values()
            .map(|p| p.len().saturating_sub(1))
            .sum()
    }
}

fn check_partitions(inst: &MulticutInstance, sol: &MulticutSolution) -> Result<()> {
    for (v, parts) in sol.splits() {
        let bad = |msg: &str| Error::MalformedPartition {
            vertex: v,
            msg: msg.to_string(),
        };
        if v >= inst.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: inst.n,
            });
        }
        if parts.len() < 2 {
            return Err(bad("fewer than two parts"));
        }
        if parts.iter().any(Vec::is_empty) {
            return Err(bad("empty part"));
        }
        let mut all: Vec<VertexId> = parts.iter().flatten().copied().collect();
        all.sort_unstable();
        let len = all.len();
        all.dedup();
        if all.len() != len {
            return Err(bad("parts overlap"));
        }
        if all != inst.adj[v] {
            return Err(bad("parts do not cover exactly the neighbors"));
        }
    }
    Ok(())
}

/// The graph after applying `sol`: one node per unsplit vertex and per part.
struct SplitGraph {
    /// First node of each vertex; a split vertex owns one node per part.
    first_node: Vec<usize>,
    node_count: usize,
    component: Vec<usize>,
}

impl SplitGraph {
    fn build(inst: &MulticutInstance, sol: &MulticutSolution) -> Self {
        let mut first_node = Vec::with_capacity(inst.n);
        let mut next = 0;
        for v in 0..inst.n {
            first_node.push(next);
            next += sol.parts(v).map_or(1, <[_]>::len);
        }
        let node_of = |v: VertexId, towards: VertexId| -> usize {
            match sol.parts(v) {
                None => first_node[v],
                Some(parts) => {
                    first_node[v]
                        + parts
                            .iter()
                            .position(|p| p.binary_search(&towards).is_ok())
                            .expect("partition covers every neighbor")
                }
            }
        };
        let mut uf = UnionFind::<usize>::new(next);
        for &(u, v) in &inst.edges {
            uf.union(node_of(u, v), node_of(v, u));
        }
        let component = (0..next).map(|x| uf.find(x)).collect();
        Self {
            first_node,
            node_count: next,
            component,
        }
    }

    fn nodes_of(&self, v: VertexId) -> std::ops::Range<usize> {
        let end = self
            .first_node
            .get(v + 1)
            .copied()
            .unwrap_or(self.node_count);
        self.first_node[v]..end
    }
}

/// True iff every terminal pair either has a split endpoint or ends up in two
/// different components.
pub fn verify_multicut_solution(inst: &MulticutInstance, sol: &MulticutSolution) -> Result<bool> {
    check_partitions(inst, sol)?;
    let sg = SplitGraph::build(inst, sol);
    Ok(inst.terminals.iter().all(|&(u, v)| {
        sol.is_split(u)
            || sol.is_split(v)
            || sg.component[sg.first_node[u]] != sg.component[sg.first_node[v]]
    }))
}

/// Blue pairs become edges, red pairs terminals.
pub fn ccvs_to_mcvs(g: &CorrelationGraph, k: usize) -> MulticutInstance {
    MulticutInstance::new(g.n(), g.blue_edges(), g.red_edges(), k)
        .expect("blue and red pairs of a graph are disjoint")
}

/// Edges become blue pairs, terminals red pairs, everything else neutral.
pub fn mcvs_to_ccvs(inst: &MulticutInstance) -> Result<(CorrelationGraph, usize)> {
    let g = CorrelationGraph::incomplete(inst.n, &inst.edges, &inst.terminals)?;
    Ok((g, inst.k))
}

/// Splits every vertex that lies in several clusters, handing each blue
/// neighbor to the descendant of the first cluster the two share.
///
/// A vertex whose neighbors all land in one cluster is split into two
/// arbitrary parts instead; a vertex with a single neighbor is cut off by
/// splitting that neighbor. Neither raises the cost above `cost(f)`.
pub fn clustering_to_multicut_solution(
    g: &CorrelationGraph,
    f: &Clustering,
) -> Result<MulticutSolution> {
    let report = verify_clustering(g, f)?;
    if !report.is_empty() {
        return Err(Error::InvalidClustering(
            report.to_string().trim_end().replace('\n', "; "),
        ));
    }
    let member = f.memberships(g.n());
    let mut sol = MulticutSolution::default();
    let mut isolate = Vec::new();
    for v in 0..g.n() {
        if member[v].len() < 2 {
            continue;
        }
        let nbrs = g.blue_neighbors(v);
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for &u in nbrs {
            let shared = member[v]
                .iter()
                .copied()
                .find(|c| member[u].binary_search(c).is_ok())
                .expect("valid clustering covers every blue pair");
            groups.entry(shared).or_default().push(u);
        }
        if groups.len() >= 2 {
            sol.set_split(v, groups.into_values().collect());
        } else if nbrs.len() >= 2 {
            sol.set_split(v, vec![vec![nbrs[0]], nbrs[1..].to_vec()]);
        } else if let [x] = nbrs {
            isolate.push((v, *x));
        }
    }
    for (v, x) in isolate {
        let nx = g.blue_neighbors(x);
        if nx.len() < 2 {
            continue;
        }
        let mut parts: Vec<Vec<VertexId>> = match sol.parts(x) {
            Some(parts) => parts.to_vec(),
            None => vec![nx.to_vec()],
        };
        if parts.iter().any(|p| p.as_slice() == [v]) {
            continue;
        }
        for p in &mut parts {
            p.retain(|&u| u != v);
        }
        parts.push(vec![v]);
        sol.set_split(x, parts);
    }
    Ok(sol)
}

/// Reads a clustering of `mcvs_to_ccvs(inst)` off a verified solution.
///
/// Descendants of one vertex that share a component are merged; a split
/// vertex left with a single descendant gets an extra isolated one. Red pairs
/// then go between descendants in different components only, so the realized
/// graph has no erroneous cycle and [`splits_to_clustering`] applies.
pub fn multicut_solution_to_clustering(
    inst: &MulticutInstance,
    sol: &MulticutSolution,
) -> Result<Clustering> {
    if !verify_multicut_solution(inst, sol)? {
        let sg = SplitGraph::build(inst, sol);
        let &(u, v) = inst
            .terminals
            .iter()
            .find(|&&(u, v)| {
                !sol.is_split(u)
                    && !sol.is_split(v)
                    && sg.component[sg.first_node[u]] == sg.component[sg.first_node[v]]
            })
            .expect("failed verification names a connected terminal pair");
        return Err(Error::UnverifiedMulticut { u, v });
    }
    let sg = SplitGraph::build(inst, sol);

    // descendant = (ancestor, component); isolated extras get fresh components
    let mut ancestor = Vec::new();
    let mut comp = Vec::new();
    let mut descendant_in: HashMap<(VertexId, usize), usize> = HashMap::new();
    let mut fresh = sg.node_count;
    for v in 0..inst.n {
        let comps: BTreeSet<usize> = sg.nodes_of(v).map(|x| sg.component[x]).collect();
        for &c in &comps {
            descendant_in.insert((v, c), ancestor.len());
            ancestor.push(v);
            comp.push(c);
        }
        if sol.is_split(v) && comps.len() == 1 {
            ancestor.push(v);
            comp.push(fresh);
            fresh += 1;
        }
    }
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); inst.n];
    for (d, &a) in ancestor.iter().enumerate() {
        by_vertex[a].push(d);
    }

    let mut builder = GraphBuilder::new(ancestor.len(), false)?;
    for &(u, v) in &inst.edges {
        let part_of = |x: VertexId, towards: VertexId| -> usize {
            let node = match sol.parts(x) {
                None => sg.first_node[x],
                Some(parts) => {
                    sg.first_node[x]
                        + parts
                            .iter()
                            .position(|p| p.binary_search(&towards).is_ok())
                            .expect("partition covers every neighbor")
                }
            };
            descendant_in[&(x, sg.component[node])]
        };
        builder.set(part_of(u, v), part_of(v, u), EdgeColor::Blue)?;
    }
    for &(u, v) in &inst.terminals {
        for &du in &by_vertex[u] {
            for &dv in &by_vertex[v] {
                if comp[du] != comp[dv] {
                    builder.set(du, dv, EdgeColor::Red)?;
                }
            }
        }
    }
    let realized = RealizedGraph::new(builder.build(), ancestor, inst.n)?;
    splits_to_clustering(&realized)
}

/// Parses the `mcvs` format.
pub fn parse_mcvs(input: &str) -> Result<MulticutInstance> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `mcvs` header".into(),
    })?;
    if header.tokens.len() != 5 || header.tokens[0] != "mcvs" {
        return Err(header.err("expected `mcvs <n> <m> <t> <k>`"));
    }
    let n = header.usize_at(1)?;
    let m = header.usize_at(2)?;
    let t = header.usize_at(3)?;
    let k = header.usize_at(4)?;
    let mut edges = Vec::new();
    let mut terminals = Vec::new();
    for line in lines {
        if line.tokens.len() != 3 {
            return Err(line.err("expected `e <u> <v>` or `t <u> <v>`"));
        }
        let pair = (line.usize_at(1)?, line.usize_at(2)?);
        match line.tokens[0] {
            "e" => edges.push(pair),
            "t" => terminals.push(pair),
            other => return Err(line.err(format!("unknown record `{other}`"))),
        }
    }
    if edges.len() != m || terminals.len() != t {
        return Err(header.err(format!(
            "header announces {m} edges and {t} terminal pairs, found {} and {}",
            edges.len(),
            terminals.len()
        )));
    }
    MulticutInstance::new(n, edges, terminals, k)
}

pub fn write_mcvs(inst: &MulticutInstance) -> String {
    let mut out = format!(
        "mcvs {} {} {} {}\n",
        inst.n,
        inst.edges.len(),
        inst.terminals.len(),
        inst.k
    );
    for (u, v) in &inst.edges {
        let _ = writeln!(out, "e {u} {v}");
    }
    for (u, v) in &inst.terminals {
        let _ = writeln!(out, "t {u} {v}");
    }
    out
}

/// Parses the `mcsol` format; returns the announced vertex count too.
pub fn parse_mcsol(input: &str) -> Result<(usize, MulticutSolution)> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `mcsol` header".into(),
    })?;
    if header.tokens.len() != 2 || header.tokens[0] != "mcsol" {
        return Err(header.err("expected `mcsol <n>`"));
    }
    let n = header.usize_at(1)?;
    let mut sol = MulticutSolution::default();
    for line in lines {
        if line.tokens.len() < 3 || line.tokens[0] != "s" || line.tokens[2] != ":" {
            return Err(line.err("expected `s <v> : <part> | <part> ...`"));
        }
        let v = line.usize_at(1)?;
        if v >= n {
            return Err(line.err(format!("vertex {v} out of range for n={n}")));
        }
        if sol.is_split(v) {
            return Err(line.err(format!("vertex {v} listed twice")));
        }
        let parts = text::parse_groups(&line.tokens[3..], line.number)?;
        sol.set_split(v, parts);
    }
    Ok((n, sol))
}

pub fn write_mcsol(n: usize, sol: &MulticutSolution) -> String {
    let mut out = format!("mcsol {n}\n");
    for (v, parts) in sol.splits() {
        let body: Vec<String> = parts.iter().map(|p| text::join_ids(p)).collect();
        let _ = writeln!(out, "s {v} : {}", body.join(" | "));
    }
    out
}

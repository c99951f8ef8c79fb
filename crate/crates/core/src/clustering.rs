//! Overlapping clusterings and their correspondence with split-realized graphs.
//!
//! A [`Clustering`] is an ordered list of vertex sets. The same set may appear
//! more than once; a red pair counts as resolved when its endpoints sit in
//! clusters with different list indices.

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CorrelationGraph, EdgeColor, GraphBuilder, VertexId};
use crate::text;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clustering {
    clusters: Vec<Vec<VertexId>>,
}

impl Clustering {
    /// Each cluster is sorted and deduplicated; empty clusters are rejected.
    pub fn new(clusters: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut out = Self::default();
        for c in clusters {
            out.push(c)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, mut cluster: Vec<VertexId>) -> Result<()> {
        if cluster.is_empty() {
            return Err(Error::EmptyCluster(self.clusters.len()));
        }
        cluster.sort_unstable();
        cluster.dedup();
        self.clusters.push(cluster);
        Ok(())
    }

    pub fn clusters(&self) -> &[Vec<VertexId>] {
        &self.clusters
    }

    pub fn into_clusters(self) -> Vec<Vec<VertexId>> {
        self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Largest vertex id mentioned, if any.
    pub fn max_vertex(&self) -> Option<VertexId> {
        self.clusters.iter().filter_map(|c| c.last().copied()).max()
    }

    /// Number of list entries containing each vertex of `0..n`.
    /// Panics on ids `>= n`.
    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut mult = vec![0; n];
        for c in &self.clusters {
            for &v in c {
                mult[v] += 1;
            }
        }
        mult
    }

    /// Cluster indices containing each vertex, ascending.
    pub fn memberships(&self, n: usize) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); n];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                m[v].push(i);
            }
        }
        m
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.max_vertex() {
            Some(v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Sum over `v` of (number of clusters containing `v`) minus one.
    pub fn cost(&self, n: usize) -> Result<usize> {
        self.check_range(n)?;
        let mult = self.multiplicities(n);
        if let Some(v) = mult.iter().position(|&m| m == 0) {
            return Err(Error::Uncovered(v));
        }
        Ok(mult.iter().map(|m| m - 1).sum())
    }

    /// Replaces every id `v` with `map[v]`.
    pub fn relabel(&self, map: &[VertexId]) -> Clustering {
        let clusters = self
            .clusters
            .iter()
            .map(|c| {
                let mut c: Vec<VertexId> = c.iter().map(|&v| map[v]).collect();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Clustering { clusters }
    }
}

/// Violations of the overlapping-clustering conditions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub uncovered_blue: Vec<(VertexId, VertexId)>,
    pub unresolved_red: Vec<(VertexId, VertexId)>,
    pub noncovering: Vec<VertexId>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.uncovered_blue.is_empty()
            && self.unresolved_red.is_empty()
            && self.noncovering.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.noncovering {
            writeln!(f, "uncovered-vertex {v}")?;
        }
        for (u, v) in &self.uncovered_blue {
            writeln!(f, "uncovered-blue {u} {v}")?;
        }
        for (u, v) in &self.unresolved_red {
            writeln!(f, "unresolved-red {u} {v}")?;
        }
        Ok(())
    }
}

fn share_cluster(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn resolves(a: &[usize], b: &[usize]) -> bool {
    !a.is_empty() && !b.is_empty() && !(a.len() == 1 && b.len() == 1 && a[0] == b[0])
}

pub fn verify_clustering(g: &CorrelationGraph, f: &Clustering) -> Result<ValidationReport> {
    f.check_range(g.n())?;
    let member = f.memberships(g.n());
    let mut report = ValidationReport {
        noncovering: (0..g.n()).filter(|&v| member[v].is_empty()).collect(),
        ..Default::default()
    };
    for (u, v) in g.blue_edges() {
        if !share_cluster(&member[u], &member[v]) {
            report.uncovered_blue.push((u, v));
        }
    }
    for (u, v) in g.red_edges() {
        if !resolves(&member[u], &member[v]) {
            report.unresolved_red.push((u, v));
        }
    }
    Ok(report)
}

/// Shorthand for an empty [`verify_clustering`] report.
pub fn is_valid_clustering(g: &CorrelationGraph, f: &Clustering) -> bool {
    verify_clustering(g, f)
        .map(|r| r.is_empty())
        .unwrap_or(false)
}

/// A graph obtained from an original graph by vertex splits, described by its
/// end state: every vertex of `base` names the original vertex it descends from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedGraph {
    base: CorrelationGraph,
    ancestor: Vec<VertexId>,
    original_n: usize,
    split_count: usize,
}

impl RealizedGraph {
    pub fn new(base: CorrelationGraph, ancestor: Vec<VertexId>, original_n: usize) -> Result<Self> {
        if ancestor.len() != base.n() {
            return Err(Error::MalformedRealization(format!(
                "{} ancestors for {} descendants",
                ancestor.len(),
                base.n()
            )));
        }
        let mut seen = vec![false; original_n];
        for &a in &ancestor {
            if a >= original_n {
                return Err(Error::VertexOutOfRange {
                    vertex: a,
                    n: original_n,
                });
            }
            seen[a] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedRealization(format!(
                "vertex {v} has no descendant"
            )));
        }
        Ok(Self {
            split_count: base.n() - original_n,
            base,
            ancestor,
            original_n,
        })
    }

    pub fn base(&self) -> &CorrelationGraph {
        &self.base
    }

    pub fn ancestor(&self, descendant: VertexId) -> VertexId {
        self.ancestor[descendant]
    }

    pub fn ancestors(&self) -> &[VertexId] {
        &self.ancestor
    }

    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn split_count(&self) -> usize {
        self.split_count
    }

    fn descendant_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.original_n];
        for &a in &self.ancestor {
            counts[a] += 1;
        }
        counts
    }
}

/// True iff some red pair lies inside one blue component. Such a pair closes
/// a cycle with exactly one red edge along any blue path between its ends.
pub fn has_erroneous_cycle(g: &CorrelationGraph) -> bool {
    let comps = g.blue_components();
    let mut comp_of = vec![0; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    g.red_edges().iter().any(|&(u, v)| comp_of[u] == comp_of[v])
}

/// Splits every vertex once per extra cluster containing it. Descendant `d`
/// belongs to exactly one cluster; descendants are numbered by (vertex,
/// cluster index).
pub fn clustering_to_splits(g: &CorrelationGraph, f: &Clustering) -> Result<RealizedGraph> {
    let report = verify_clustering(g, f)?;
    if !report.is_empty() {
        return Err(Error::InvalidClustering(
            report.to_string().trim_end().replace('\n', "; "),
        ));
    }
    let member = f.memberships(g.n());
    let mut ancestor = Vec::new();
    let mut assigned = Vec::new();
    for (v, clusters) in member.iter().enumerate() {
        for &c in clusters {
            ancestor.push(v);
            assigned.push(c);
        }
    }
    let split = |v: VertexId| member[v].len() > 1;
    let mut builder = GraphBuilder::new(ancestor.len(), g.is_complete())?;
    for x in 0..ancestor.len() {
        for y in x + 1..ancestor.len() {
            let (u, w) = (ancestor[x], ancestor[y]);
            let color = if u == w {
                if g.is_complete() {
                    EdgeColor::Red
                } else {
                    EdgeColor::Neutral
                }
            } else {
                let orig = g.label(u, w);
                if assigned[x] == assigned[y] {
                    if orig == EdgeColor::Blue || split(u) || split(w) || g.is_complete() {
                        EdgeColor::Blue
                    } else {
                        orig
                    }
                } else if g.is_complete() || orig == EdgeColor::Red {
                    EdgeColor::Red
                } else {
                    EdgeColor::Neutral
                }
            };
            if color != EdgeColor::Neutral {
                builder.set(x, y, color)?;
            }
        }
    }
    RealizedGraph::new(builder.build(), ancestor, g.n())
}

/// Reads a clustering off a realized graph without erroneous cycles: one
/// cluster per distinct ancestor set of a blue component, plus a singleton for
/// each red ancestor pair those leave unresolved.
pub fn splits_to_clustering(r: &RealizedGraph) -> Result<Clustering> {
    if has_erroneous_cycle(&r.base) {
        return Err(Error::ErroneousCycle);
    }
    let mut seen = BTreeSet::new();
    let mut clustering = Clustering::default();
    for comp in r.base.blue_components() {
        let mut set: Vec<VertexId> = comp.iter().map(|&d| r.ancestor[d]).collect();
        set.sort_unstable();
        set.dedup();
        if seen.insert(set.clone()) {
            clustering.push(set)?;
        }
    }

    let red_pairs: BTreeSet<(VertexId, VertexId)> = r
        .base
        .red_edges()
        .into_iter()
        .map(|(x, y)| (r.ancestor[x], r.ancestor[y]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    let descendants = r.descendant_counts();
    let mut member = clustering.memberships(r.original_n);
    for (u, v) in red_pairs {
        if resolves(&member[u], &member[v]) {
            continue;
        }
        let target = [u, v]
            .into_iter()
            .find(|&x| descendants[x] > 1)
            .ok_or_else(|| {
                Error::MalformedRealization(format!(
                    "red pair {{{u},{v}}} unresolved with both endpoints unsplit"
                ))
            })?;
        member[target].push(clustering.len());
        clustering.push(vec![target])?;
    }
    Ok(clustering)
}

/// Parses the `clu` text format.
pub fn parse_clustering(input: &str) -> Result<Clustering> {
    let mut lines = text::lines(input);
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `clustering` header".into(),
    })?;
    if header.tokens.len() != 2 || header.tokens[0] != "clustering" {
        return Err(header.err("expected `clustering <t>`"));
    }
    let t = header.usize_at(1)?;
    let mut clustering = Clustering::default();
    for line in lines {
        if line.tokens[0] != "c" || line.tokens.len() < 2 {
            return Err(line.err("expected `c <v1> <v2> ...`"));
        }
        let ids = line.tokens[1..]
            .iter()
            .map(|t| text::parse_usize(t, line.number))
            .collect::<Result<Vec<_>>>()?;
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(line.err("vertex ids must be strictly increasing"));
        }
        clustering.clusters.push(ids);
    }
    if clustering.len() != t {
        return Err(Error::Parse {
            line: 1,
            msg: format!("header announces {t} clusters, found {}", clustering.len()),
        });
    }
    Ok(clustering)
}

pub fn write_clustering(f: &Clustering) -> String {
    let mut out = format!("clustering {}\n", f.len());
    for c in &f.clusters {
        let _ = writeln!(out, "c {}", text::join_ids(c));
    }
    out
}

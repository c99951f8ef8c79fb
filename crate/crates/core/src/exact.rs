//! Exhaustive solvers for desk-scale instances.
//!
//! [`solve_exact`] deepens the total cost `c = 0, 1, 2, ...`. At a fixed `c`
//! vertices are placed one at a time: each picks how many clusters it joins,
//! which existing clusters those are, and how many fresh clusters it opens.
//! A placed vertex never changes again, so every blue or red pair is checked
//! as soon as its later endpoint is placed. Fresh clusters are
//! interchangeable and only counted, which removes relabeling symmetry.
//!
//! [`solve_multicut_exact`] enumerates per-vertex neighbor partitions of
//! bounded total cost and checks each candidate with the multicut verifier.

use crate::approx;
use crate::clustering::Clustering;
use crate::detect::greedy_forest;
use crate::error::{Error, Result};
use crate::graph::{CorrelationGraph, EdgeColor, VertexId};
use crate::reduce::{verify_multicut_solution, MulticutInstance, MulticutSolution};

/// Limits for the exhaustive solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest total cost explored.
    pub max_cost: usize,
    /// Search nodes visited before giving up with [`Error::NodeLimitExceeded`].
    pub node_limit: u64,
    /// Instances with more vertices are refused.
    pub max_vertices: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_cost: 6,
            node_limit: 50_000_000,
            max_vertices: 12,
        }
    }
}

impl SearchBudget {
    pub fn with_max_cost(max_cost: usize) -> Self {
        Self {
            max_cost,
            ..Self::default()
        }
    }
}

/// Cluster membership bits; bounds the number of clusters.
type Mask = u128;
const MAX_CLUSTERS: usize = Mask::BITS as usize;

/// True iff `g` has a valid overlapping clustering of cost at most `k`.
pub fn decide(g: &CorrelationGraph, k: usize) -> Result<bool> {
    Ok(solve_exact(g, &SearchBudget::with_max_cost(k))?.is_some())
}

/// A minimum-cost valid clustering if its cost is at most `budget.max_cost`.
pub fn solve_exact(g: &CorrelationGraph, budget: &SearchBudget) -> Result<Option<Clustering>> {
    if g.n() > budget.max_vertices {
        return Err(Error::TooManyVertices {
            n: g.n(),
            limit: budget.max_vertices,
        });
    }
    let upper = upper_bound(g)?;
    let max_cost = budget.max_cost.min(upper);
    if g.n() + max_cost > MAX_CLUSTERS {
        return Err(Error::TooManyVertices {
            n: g.n() + max_cost,
            limit: MAX_CLUSTERS,
        });
    }
    let mut search = Search::new(g, budget.node_limit);
    for c in search.suffix_lb[0]..=max_cost {
        if search.place(0, c)? {
            return Ok(Some(search.clustering()));
        }
    }
    Ok(None)
}

/// Cost of a clustering known to exist.
fn upper_bound(g: &CorrelationGraph) -> Result<usize> {
    // one cluster per blue edge plus singletons for blue-isolated vertices
    let trivial: usize = (0..g.n())
        .map(|v| g.blue_neighbors(v).len().max(1) - 1)
        .sum();
    if g.is_complete() && g.n() > 0 {
        let f = approx::approximate(g)?;
        Ok(trivial.min(f.cost(g.n())?))
    } else {
        Ok(trivial)
    }
}

struct Search<'g> {
    g: &'g CorrelationGraph,
    order: Vec<VertexId>,
    /// Earlier-placed blue / red neighbors of `order[pos]`.
    blue_prev: Vec<Vec<VertexId>>,
    red_prev: Vec<Vec<VertexId>>,
    /// Lower bound for the vertices `order[pos..]`.
    suffix_lb: Vec<usize>,
    masks: Vec<Mask>,
    clusters: usize,
    nodes: u64,
    node_limit: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g CorrelationGraph, node_limit: u64) -> Self {
        let n = g.n();
        let order = placement_order(g);
        let mut blue_prev = vec![Vec::new(); n];
        let mut red_prev = vec![Vec::new(); n];
        for pos in 0..n {
            let v = order[pos];
            for &u in &order[..pos] {
                match g.label(u, v) {
                    EdgeColor::Blue => blue_prev[pos].push(u),
                    EdgeColor::Red => red_prev[pos].push(u),
                    EdgeColor::Neutral => {}
                }
            }
        }
        let suffix_lb = (0..=n)
            .map(|pos| greedy_forest(g, &order[pos..]).weight())
            .collect();
        Self {
            g,
            order,
            blue_prev,
            red_prev,
            suffix_lb,
            masks: vec![0; n],
            clusters: 0,
            nodes: 0,
            node_limit,
        }
    }

    fn place(&mut self, pos: usize, left: usize) -> Result<bool> {
        if pos == self.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::NodeLimitExceeded(self.node_limit));
        }
        if self.suffix_lb[pos] > left {
            return Ok(false);
        }
        let v = self.order[pos];
        let must_hit: Vec<Mask> = self.blue_prev[pos].iter().map(|&u| self.masks[u]).collect();
        let single_forbidden: Mask = self.red_prev[pos]
            .iter()
            .map(|&u| self.masks[u])
            .filter(|m| m.count_ones() == 1)
            .fold(0, |a, m| a | m);
        let existing = self.clusters;

        for extra in 0..=left {
            if self.suffix_lb[pos + 1] > left - extra {
                break;
            }
            let m = extra + 1;
            if existing + m > MAX_CLUSTERS {
                break;
            }
            for joined in (0..=m.min(existing)).rev() {
                let fresh = m - joined;
                for chosen in combinations(existing, joined) {
                    if must_hit.iter().any(|&h| h & chosen == 0) {
                        continue;
                    }
                    if m == 1 && chosen & single_forbidden != 0 {
                        continue;
                    }
                    let fresh_bits = low_bits(fresh).checked_shl(existing as u32).unwrap_or(0);
                    self.masks[v] = chosen | fresh_bits;
                    self.clusters = existing + fresh;
                    if self.place(pos + 1, left - extra)? {
                        return Ok(true);
                    }
                }
            }
        }
        self.masks[v] = 0;
        self.clusters = existing;
        Ok(false)
    }

    fn clustering(&self) -> Clustering {
        let mut clusters = vec![Vec::new(); self.clusters];
        for v in 0..self.g.n() {
            let mut m = self.masks[v];
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                clusters[i].push(v);
                m &= m - 1;
            }
        }
        clusters.sort();
        Clustering::new(clusters).expect("search never leaves a cluster empty")
    }
}

fn low_bits(k: usize) -> Mask {
    if k >= MAX_CLUSTERS {
        Mask::MAX
    } else {
        ((1 as Mask) << k) - 1
    }
}

/// All `k`-subsets of the lowest `n` bits, in increasing numeric order.
fn combinations(n: usize, k: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut c = low_bits(k);
    let limit_bit = n as u32;
    while c.checked_shr(limit_bit).unwrap_or(0) == 0 {
        out.push(c);
        // Gosper's hack
        let low = c & c.wrapping_neg();
        let Some(ripple) = c.checked_add(low) else {
            break;
        };
        c = ripple | (((ripple ^ c) >> 2) / low);
    }
    out
}

/// Greedy order: start from the vertex with most blue neighbors, then always
/// take the vertex with the most labeled pairs (blue first) to those placed.
fn placement_order(g: &CorrelationGraph) -> Vec<VertexId> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let (mut blue, mut labeled) = (0usize, 0usize);
                for &u in &order {
                    match g.label(u, v) {
                        EdgeColor::Blue => {
                            blue += 1;
                            labeled += 1;
                        }
                        EdgeColor::Red => labeled += 1,
                        EdgeColor::Neutral => {}
                    }
                }
                (
                    labeled,
                    blue,
                    g.blue_neighbors(v).len(),
                    std::cmp::Reverse(v),
                )
            })
            .expect("unplaced vertex remains");
        placed[best] = true;
        order.push(best);
    }
    order
}

/// A minimum-cost multicut splitting solution with cost at most
/// `budget.max_cost`, found by enumerating neighbor partitions.
pub fn solve_multicut_exact(
    inst: &MulticutInstance,
    budget: &SearchBudget,
) -> Result<Option<MulticutSolution>> {
    if inst.n() > budget.max_vertices {
        return Err(Error::TooManyVertices {
            n: inst.n(),
            limit: budget.max_vertices,
        });
    }
    let neighbors: Vec<Vec<VertexId>> = (0..inst.n()).map(|v| inst.neighbors(v)).collect();
    let splittable: Vec<VertexId> = (0..inst.n()).filter(|&v| neighbors[v].len() >= 2).collect();
    let mut state = MulticutSearch {
        inst,
        neighbors: &neighbors,
        splittable: &splittable,
        current: MulticutSolution::default(),
        nodes: 0,
        node_limit: budget.node_limit,
    };
    for c in 0..=budget.max_cost {
        if state.assign(0, c)? {
            return Ok(Some(state.current));
        }
    }
    Ok(None)
}

struct MulticutSearch<'a> {
    inst: &'a MulticutInstance,
    neighbors: &'a [Vec<VertexId>],
    splittable: &'a [VertexId],
    current: MulticutSolution,
    nodes: u64,
    node_limit: u64,
}

impl MulticutSearch<'_> {
    /// Spends exactly `left` more on `splittable[idx..]`.
    fn assign(&mut self, idx: usize, left: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::NodeLimitExceeded(self.node_limit));
        }
        if idx == self.splittable.len() {
            return Ok(left == 0 && verify_multicut_solution(self.inst, &self.current)?);
        }
        if self.assign(idx + 1, left)? {
            return Ok(true);
        }
        let v = self.splittable[idx];
        let nbrs = &self.neighbors[v];
        for parts in 2..=(left + 1).min(nbrs.len()) {
            for partition in set_partitions(nbrs, parts) {
                self.current.set_split(v, partition);
                if self.assign(idx + 1, left - (parts - 1))? {
                    return Ok(true);
                }
            }
            self.current.remove_split(v);
        }
        Ok(false)
    }
}

/// Every partition of `items` into exactly `k` nonempty blocks, blocks ordered
/// by first element.
fn set_partitions(items: &[VertexId], k: usize) -> Vec<Vec<Vec<VertexId>>> {
    fn rec(
        items: &[VertexId],
        k: usize,
        idx: usize,
        blocks: &mut Vec<Vec<VertexId>>,
        out: &mut Vec<Vec<Vec<VertexId>>>,
    ) {
        let remaining = items.len() - idx;
        if blocks.len() + remaining < k {
            return;
        }
        if idx == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[idx]);
            rec(items, k, idx + 1, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < k {
            blocks.push(vec![items[idx]]);
            rec(items, k, idx + 1, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

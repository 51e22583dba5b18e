//! The verification kernels: backtracking subgraph-embedding search with
//! pinning, girth and short-cycle detection by per-vertex BFS, and highway
//! decomposition (maximal chains of degree-2 vertices).
//!
//! Searches are read-only over immutable hosts and fully deterministic:
//! pattern vertices are assigned in descending-degree-then-id order and host
//! candidates are tried in ascending id order, so the "first" embedding is
//! well defined and witnesses are reproducible.

use std::collections::VecDeque;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::bridge::{bridge, GadgetError};
use crate::graph::{Graph, VertexId};

/// Injective vertex map from pattern to host preserving adjacency
/// (and non-adjacency in induced mode).
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct Embedding {
    map: Vec<VertexId>,
}

impl Embedding {
    pub fn host_image(&self, pattern_vertex: VertexId) -> VertexId {
        self.map[pattern_vertex.index()]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(p, &h)| (VertexId(p), h))
    }

    /// Re-checks this embedding against a pattern/host pair.
    pub fn verify(&self, pattern: &Graph, host: &Graph, induced: bool) -> bool {
        if self.map.len() != pattern.vertex_count() {
            return false;
        }
        if self.map.iter().any(|h| !host.contains(*h)) {
            return false;
        }
        let mut seen = vec![false; host.vertex_count()];
        for h in &self.map {
            if std::mem::replace(&mut seen[h.index()], true) {
                return false;
            }
        }
        for u in pattern.vertices() {
            for v in pattern.vertices() {
                if u < v {
                    let pattern_edge = pattern.has_edge(u, v);
                    let host_edge = host.has_edge(self.map[u.index()], self.map[v.index()]);
                    if pattern_edge && !host_edge {
                        return false;
                    }
                    if induced && !pattern_edge && host_edge {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // Emitted as [[pattern, host], ...] pairs.
        let mut seq = serializer.serialize_seq(Some(self.map.len()))?;
        for (p, h) in self.map.iter().enumerate() {
            seq.serialize_element(&[p, h.index()])?;
        }
        seq.end()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("inconsistent pins: {0}")]
    InconsistentPins(String),
    #[error("enumeration limit must be at least 1")]
    ZeroLimit,
    #[error("cycle length bound must be at least 3, got {0}")]
    BoundTooSmall(usize),
}

/// All-pairs BFS distances; `None` marks unreachable pairs.
fn distance_matrix(g: &Graph) -> Vec<Vec<Option<usize>>> {
    g.vertices().map(|v| g.bfs_distances(v)).collect()
}

struct Matcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    induced: bool,
    /// Unpinned pattern vertices in assignment order.
    order: Vec<VertexId>,
    assignment: Vec<Option<VertexId>>,
    used: Vec<bool>,
    pattern_dist: Vec<Vec<Option<usize>>>,
    host_dist: Vec<Vec<Option<usize>>>,
    limit: usize,
    found: Vec<Embedding>,
}

impl Matcher<'_> {
    /// True iff mapping `p` to `h` is consistent with every assigned vertex:
    /// adjacency is preserved (and reflected in induced mode), and no host
    /// distance exceeds the pattern distance. Distance contraction is sound
    /// in both modes: a pattern path maps to a host walk of the same length,
    /// so pruning on it never loses a completable branch and the first
    /// embedding in canonical order is unaffected.
    fn consistent(&self, p: VertexId, h: VertexId) -> bool {
        for q in self.pattern.vertices() {
            let Some(hq) = self.assignment[q.index()] else {
                continue;
            };
            let pattern_edge = self.pattern.has_edge(p, q);
            let host_edge = self.host.has_edge(h, hq);
            if pattern_edge && !host_edge {
                return false;
            }
            if self.induced && !pattern_edge && host_edge {
                return false;
            }
            if let Some(pd) = self.pattern_dist[p.index()][q.index()] {
                match self.host_dist[h.index()][hq.index()] {
                    Some(hd) if hd <= pd => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        let Some(&p) = self.order.get(depth) else {
            let map = self
                .assignment
                .iter()
                .map(|slot| slot.expect("all pattern vertices assigned"))
                .collect();
            self.found.push(Embedding { map });
            return;
        };
        let wanted_degree = self.pattern.degree(p);
        // Candidates come from the host neighborhood of an already-assigned
        // pattern neighbor when one exists (any valid image must lie
        // there), in ascending id order either way.
        let anchor = self
            .pattern
            .neighbors(p)
            .iter()
            .find_map(|q| self.assignment[q.index()]);
        let candidates: Vec<VertexId> = match anchor {
            Some(hq) => self.host.neighbors(hq).to_vec(),
            None => self.host.vertices().collect(),
        };
        for h in candidates {
            if self.used[h.index()]
                || self.host.degree(h) < wanted_degree
                || !self.consistent(p, h)
            {
                continue;
            }
            self.assignment[p.index()] = Some(h);
            self.used[h.index()] = true;
            self.run(depth + 1);
            self.used[h.index()] = false;
            self.assignment[p.index()] = None;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn validate_pins(
    pattern: &Graph,
    host: &Graph,
    induced: bool,
    pins: &[(VertexId, VertexId)],
) -> Result<(), SearchError> {
    let mut pattern_seen = vec![false; pattern.vertex_count()];
    let mut host_seen = vec![false; host.vertex_count()];
    for &(p, h) in pins {
        if !pattern.contains(p) {
            return Err(SearchError::InconsistentPins(format!(
                "pattern vertex {p} does not exist"
            )));
        }
        if !host.contains(h) {
            return Err(SearchError::InconsistentPins(format!(
                "host vertex {h} does not exist"
            )));
        }
        if std::mem::replace(&mut pattern_seen[p.index()], true) {
            return Err(SearchError::InconsistentPins(format!(
                "pattern vertex {p} pinned twice"
            )));
        }
        if std::mem::replace(&mut host_seen[h.index()], true) {
            return Err(SearchError::InconsistentPins(format!(
                "host vertex {h} used by two pins"
            )));
        }
    }
    for &(p, hp) in pins {
        for &(q, hq) in pins {
            if p < q {
                let pattern_edge = pattern.has_edge(p, q);
                let host_edge = host.has_edge(hp, hq);
                if pattern_edge && !host_edge {
                    return Err(SearchError::InconsistentPins(format!(
                        "pattern edge ({p},{q}) maps to host non-edge ({hp},{hq})"
                    )));
                }
                if induced && !pattern_edge && host_edge {
                    return Err(SearchError::InconsistentPins(format!(
                        "pattern non-edge ({p},{q}) maps to host edge ({hp},{hq})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// All embeddings of `pattern` into `host` extending `pins`, in
/// deterministic order, truncated at `limit`. The count is exact whenever
/// it comes back below the limit.
pub fn enumerate_embeddings(
    pattern: &Graph,
    host: &Graph,
    induced: bool,
    pins: &[(VertexId, VertexId)],
    limit: usize,
) -> Result<Vec<Embedding>, SearchError> {
    if limit == 0 {
        return Err(SearchError::ZeroLimit);
    }
    validate_pins(pattern, host, induced, pins)?;
    if pattern.vertex_count() > host.vertex_count() {
        return Ok(Vec::new());
    }
    let mut assignment = vec![None; pattern.vertex_count()];
    let mut used = vec![false; host.vertex_count()];
    for &(p, h) in pins {
        assignment[p.index()] = Some(h);
        used[h.index()] = true;
    }
    let mut order: Vec<VertexId> = pattern
        .vertices()
        .filter(|p| assignment[p.index()].is_none())
        .collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(pattern.degree(p)), p));
    let mut matcher = Matcher {
        pattern,
        host,
        induced,
        order,
        assignment,
        used,
        pattern_dist: distance_matrix(pattern),
        host_dist: distance_matrix(host),
        limit,
        found: Vec::new(),
    };
    matcher.run(0);
    Ok(matcher.found)
}

/// First embedding extending `pins` in deterministic order, if any.
/// Non-induced is the default notion of containment throughout.
pub fn find_embedding(
    pattern: &Graph,
    host: &Graph,
    induced: bool,
    pins: &[(VertexId, VertexId)],
) -> Result<Option<Embedding>, SearchError> {
    Ok(enumerate_embeddings(pattern, host, induced, pins, 1)?
        .into_iter()
        .next())
}

/// Searches `host` for a copy of the forbidden bridge pattern.
pub fn find_bridge(host: &Graph, n: usize) -> Result<Option<Embedding>, GadgetError> {
    let pattern = bridge(n)?;
    Ok(find_embedding(&pattern, host, false, &[]).expect("no pins, no pin errors"))
}

struct BfsTree {
    dist: Vec<Option<usize>>,
    parent: Vec<Option<VertexId>>,
}

fn bfs_tree(g: &Graph, start: VertexId) -> BfsTree {
    let mut dist = vec![None; g.vertex_count()];
    let mut parent = vec![None; g.vertex_count()];
    dist[start.index()] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.index()].expect("queued vertices have distances");
        for &v in g.neighbors(u) {
            if dist[v.index()].is_none() {
                dist[v.index()] = Some(du + 1);
                parent[v.index()] = Some(u);
                queue.push_back(v);
            }
        }
    }
    BfsTree { dist, parent }
}

/// Length of the shortest cycle, or `None` for acyclic hosts.
pub fn girth(host: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in host.vertices() {
        let tree = bfs_tree(host, s);
        for (u, v) in host.edges() {
            if tree.dist[u.index()].is_none() || tree.dist[v.index()].is_none() {
                continue;
            }
            if tree.parent[u.index()] == Some(v) || tree.parent[v.index()] == Some(u) {
                continue;
            }
            let candidate = tree.dist[u.index()].expect("checked")
                + tree.dist[v.index()].expect("checked")
                + 1;
            if best.is_none_or(|b| candidate < b) {
                best = Some(candidate);
            }
        }
    }
    best
}

/// A witness cycle of length at most `bound`, or `None`. The bound must be
/// at least 3.
pub fn short_cycle(host: &Graph, bound: usize) -> Result<Option<Vec<VertexId>>, SearchError> {
    if bound < 3 {
        return Err(SearchError::BoundTooSmall(bound));
    }
    for s in host.vertices() {
        let tree = bfs_tree(host, s);
        for (u, v) in host.edges() {
            let (Some(du), Some(dv)) = (tree.dist[u.index()], tree.dist[v.index()]) else {
                continue;
            };
            if tree.parent[u.index()] == Some(v) || tree.parent[v.index()] == Some(u) {
                continue;
            }
            if du + dv + 1 > bound {
                continue;
            }
            return Ok(Some(close_cycle(&tree, u, v)));
        }
    }
    Ok(None)
}

/// Builds the simple cycle formed by the two BFS-tree paths to `u` and `v`
/// (they diverge after their lowest common ancestor) plus the edge `(u,v)`.
fn close_cycle(tree: &BfsTree, u: VertexId, v: VertexId) -> Vec<VertexId> {
    let path_to = |mut x: VertexId| {
        let mut path = vec![x];
        while let Some(p) = tree.parent[x.index()] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    };
    let pu = path_to(u);
    let pv = path_to(v);
    let mut lca = 0;
    while lca + 1 < pu.len() && lca + 1 < pv.len() && pu[lca + 1] == pv[lca + 1] {
        lca += 1;
    }
    let mut cycle: Vec<VertexId> = pu[lca..].to_vec();
    cycle.extend(pv[lca + 1..].iter().rev());
    cycle
}

/// A maximal chain of degree-2 vertices together with its boundary
/// attachments. `vertices` lists `h_0..h_t` in canonical orientation; for a
/// cyclic highway (a whole component of degree-2 vertices) the cycle is
/// listed once without repeating the start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Highway {
    pub vertices: Vec<VertexId>,
    pub cyclic: bool,
    /// Host degrees of `h_0` and `h_t` (2 for cyclic highways).
    pub end_degrees: (usize, usize),
}

impl Highway {
    /// Number of edges on the highway.
    pub fn len(&self) -> usize {
        if self.cyclic {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Decomposes the host into its maximal highways: connected components of
/// `{v : deg(v) <= 2}` extended by their boundary attachments. Pendant
/// edges count as length-1 highways; a component forming a full cycle of
/// degree-2 vertices is reported as a cyclic highway. Isolated vertices are
/// not highways.
pub fn highways(host: &Graph) -> Vec<Highway> {
    let in_core = |v: VertexId| host.degree(v) <= 2;
    let mut visited = vec![false; host.vertex_count()];
    let mut result = Vec::new();
    for start in host.vertices() {
        if visited[start.index()] || !in_core(start) {
            continue;
        }
        let mut component = vec![start];
        visited[start.index()] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in host.neighbors(u) {
                if in_core(v) && !visited[v.index()] {
                    visited[v.index()] = true;
                    component.push(v);
                    queue.push_back(v);
                }
            }
        }
        if let Some(highway) = assemble_highway(host, &component) {
            result.push(highway);
        }
    }
    result.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    result
}

fn assemble_highway(host: &Graph, component: &[VertexId]) -> Option<Highway> {
    let in_component = |v: VertexId| component.contains(&v);
    if component.len() == 1 && host.degree(component[0]) == 0 {
        return None;
    }
    let interior_degree =
        |v: VertexId| host.neighbors(v).iter().filter(|&&w| in_component(w)).count();
    let is_cycle = component
        .iter()
        .all(|&v| host.degree(v) == 2 && interior_degree(v) == 2);
    if is_cycle {
        // Walk the cycle from its smallest vertex toward its smaller
        // neighbor.
        let start = *component.iter().min().expect("component is nonempty");
        let mut order = vec![start];
        let mut prev = start;
        let mut current = *host.neighbors(start).iter().min().expect("degree 2");
        while current != start {
            order.push(current);
            let next = host
                .neighbors(current)
                .iter()
                .copied()
                .find(|&w| w != prev)
                .expect("cycle vertices have two distinct neighbors");
            prev = current;
            current = next;
        }
        return Some(Highway {
            vertices: order,
            cyclic: true,
            end_degrees: (2, 2),
        });
    }

    // Path component: walk from one inner end to the other, then extend by
    // the boundary attachments (vertices of degree >= 3).
    let mut ends: Vec<VertexId> = component
        .iter()
        .copied()
        .filter(|&v| interior_degree(v) <= 1)
        .collect();
    ends.sort_unstable();
    let start = ends[0];
    let mut order = vec![start];
    let mut prev = None;
    let mut current = start;
    loop {
        let next = host
            .neighbors(current)
            .iter()
            .copied()
            .find(|&w| in_component(w) && Some(w) != prev);
        match next {
            Some(w) => {
                order.push(w);
                prev = Some(current);
                current = w;
            }
            None => break,
        }
    }
    debug_assert_eq!(order.len(), component.len(), "component is a simple path");

    let first = order[0];
    let last = *order.last().expect("nonempty");
    let boundary = |v: VertexId| {
        host.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !in_component(w))
    };
    let mut full = Vec::with_capacity(order.len() + 2);
    if order.len() == 1 {
        // A lone degree-1 or degree-2 core vertex: its attachments (one or
        // two, already in ascending order) become the highway's ends.
        let outs: Vec<VertexId> = boundary(first).collect();
        if let Some(&w) = outs.first() {
            full.push(w);
        }
        full.push(first);
        if let Some(&w) = outs.get(1) {
            full.push(w);
        }
    } else {
        full.extend(boundary(first).take(1));
        full.extend(&order);
        full.extend(boundary(last).take(1));
    }

    let reversed: Vec<VertexId> = full.iter().rev().copied().collect();
    if reversed < full {
        full = reversed;
    }
    let end_degrees = (
        host.degree(full[0]),
        host.degree(*full.last().expect("nonempty")),
    );
    Some(Highway {
        vertices: full,
        cyclic: false,
        end_degrees,
    })
}

/// Sorted multiset of (length, end-degree pair) over all highways;
/// end-degree pairs are normalized to (min, max).
pub fn highway_census(host: &Graph) -> Vec<(usize, (usize, usize))> {
    let mut census: Vec<(usize, (usize, usize))> = highways(host)
        .iter()
        .map(|h| {
            let (a, b) = h.end_degrees;
            (h.len(), (a.min(b), a.max(b)))
        })
        .collect();
    census.sort_unstable();
    census
}

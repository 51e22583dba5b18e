//! Simple undirected graphs with role-tagged vertices.
//!
//! Graphs are built through [`GraphBuilder`] and are immutable once
//! finalized: gluing ([`Graph::identify`]), relabeling and augmentation all
//! return new values. Vertex ids are dense (`0..vertex_count()`) and
//! adjacency lists are kept sorted, so iteration order, serialization and
//! every search built on top are reproducible run to run.

use std::collections::VecDeque;
use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex identifier, unique within one graph.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for VertexId {
    fn from(value: usize) -> Self {
        VertexId(value)
    }
}

/// Which named vertex of a gadget a vertex instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RoleKind {
    #[serde(rename = "clique-k")]
    CliqueK,
    #[serde(rename = "path-p")]
    PathP,
    #[serde(rename = "bridge-a")]
    BridgeA,
    #[serde(rename = "bridge-b")]
    BridgeB,
    #[serde(rename = "bridge-c")]
    BridgeC,
    #[serde(rename = "bridge-x")]
    BridgeX,
    #[serde(rename = "bridge-d")]
    BridgeD,
    #[serde(rename = "bridge-e")]
    BridgeE,
    #[serde(rename = "exit-left")]
    ExitLeft,
    #[serde(rename = "exit-right")]
    ExitRight,
    #[serde(rename = "highway-h")]
    HighwayH,
    #[serde(rename = "corner-x")]
    CornerX,
    #[serde(rename = "midpoint-y")]
    MidpointY,
    #[serde(rename = "spread-v")]
    SpreadV,
    #[serde(rename = "helper-u")]
    HelperU,
    #[serde(rename = "plain")]
    Plain,
}

impl RoleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleKind::CliqueK => "clique-k",
            RoleKind::PathP => "path-p",
            RoleKind::BridgeA => "bridge-a",
            RoleKind::BridgeB => "bridge-b",
            RoleKind::BridgeC => "bridge-c",
            RoleKind::BridgeX => "bridge-x",
            RoleKind::BridgeD => "bridge-d",
            RoleKind::BridgeE => "bridge-e",
            RoleKind::ExitLeft => "exit-left",
            RoleKind::ExitRight => "exit-right",
            RoleKind::HighwayH => "highway-h",
            RoleKind::CornerX => "corner-x",
            RoleKind::MidpointY => "midpoint-y",
            RoleKind::SpreadV => "spread-v",
            RoleKind::HelperU => "helper-u",
            RoleKind::Plain => "plain",
        }
    }
}

/// Semantic vertex tag: a role kind plus up to three small indices
/// (gadget instance, position, sub-position).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Role {
    pub kind: RoleKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ix: Vec<u32>,
}

impl Role {
    pub fn new(kind: RoleKind, ix: &[u32]) -> Self {
        debug_assert!(ix.len() <= 3, "roles carry at most three indices");
        Role {
            kind,
            ix: ix.to_vec(),
        }
    }

    pub fn plain() -> Self {
        Role {
            kind: RoleKind::Plain,
            ix: Vec::new(),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.as_str())?;
        if !self.ix.is_empty() {
            write!(f, "(")?;
            for (pos, i) in self.ix.iter().enumerate() {
                if pos > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{i}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop rejected at vertex {0}")]
    SelfLoop(VertexId),
    #[error("unknown vertex id {id} (graph has {count} vertices)")]
    UnknownVertex { id: VertexId, count: usize },
    #[error("cannot identify adjacent vertices {keep} and {drop}")]
    IdentifyAdjacent { keep: VertexId, drop: VertexId },
    #[error("cannot identify a vertex {0} with itself")]
    IdentifySelf(VertexId),
}

/// Mutable graph under construction. `finalize` produces the immutable
/// [`Graph`]; ids are handed out densely in call order.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<usize>>,
    roles: Vec<Role>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Adds a fresh vertex; the returned id equals the previous vertex count.
    pub fn add_vertex(&mut self, role: Role) -> VertexId {
        self.adjacency.push(Vec::new());
        self.roles.push(role);
        VertexId(self.adjacency.len() - 1)
    }

    /// Adds an undirected edge. Re-adding an existing edge is a no-op;
    /// self-loops and unknown endpoints are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let count = self.adjacency.len();
        for id in [u, v] {
            if id.0 >= count {
                return Err(GraphError::UnknownVertex { id, count });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adjacency[u.0].contains(&v.0) {
            self.adjacency[u.0].push(v.0);
            self.adjacency[v.0].push(u.0);
        }
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency
            .get(u.0)
            .is_some_and(|nbrs| nbrs.contains(&v.0))
    }

    /// Copies every vertex and edge of `other` into this builder and returns
    /// the id offset the copy was placed at.
    pub fn append(&mut self, other: &Graph) -> usize {
        let offset = self.adjacency.len();
        for v in other.vertices() {
            self.add_vertex(other.role(v).clone());
        }
        for (u, v) in other.edges() {
            self.add_edge(VertexId(u.0 + offset), VertexId(v.0 + offset))
                .expect("copied edge is valid");
        }
        offset
    }

    pub fn finalize(self) -> Graph {
        let mut adjacency: Vec<Vec<VertexId>> = self
            .adjacency
            .into_iter()
            .map(|mut nbrs| {
                nbrs.sort_unstable();
                nbrs.into_iter().map(VertexId).collect()
            })
            .collect();
        for nbrs in &mut adjacency {
            nbrs.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            roles: self.roles,
            edge_count,
        }
    }
}

/// Finite simple undirected graph with role-tagged vertices.
///
/// Immutable once constructed; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    roles: Vec<Role>,
    edge_count: usize,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.adjacency.len()
    }

    /// Number of neighbors of `v`. Panics on an unknown id; external inputs
    /// are validated at the parsing/CLI boundary.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.0].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.0]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u.0].binary_search(&v).is_ok()
    }

    pub fn role(&self, v: VertexId) -> &Role {
        &self.roles[v.0]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.adjacency.len()).map(VertexId)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adjacency[u.0]
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// First vertex carrying exactly this role, searching in id order.
    pub fn find_by_role(&self, kind: RoleKind, ix: &[u32]) -> Option<VertexId> {
        self.roles
            .iter()
            .position(|r| r.kind == kind && r.ix == ix)
            .map(VertexId)
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        degrees.sort_unstable();
        degrees
    }

    /// BFS distances from `start`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, start: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[start.0] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.0].expect("queued vertices have distances");
            for &v in self.neighbors(u) {
                if dist[v.0].is_none() {
                    dist[v.0] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.bfs_distances(u)[v.0]
    }

    pub fn is_connected(&self) -> bool {
        match self.vertex_count() {
            0 => true,
            _ => self
                .bfs_distances(VertexId(0))
                .iter()
                .all(|d| d.is_some()),
        }
    }

    /// Merges `drop` into `keep`: `drop`'s edges are re-attached to `keep`
    /// (duplicates collapse), ids are recompacted densely, and `keep` retains
    /// its role. Identifying adjacent vertices would create a loop and is
    /// rejected.
    pub fn identify(&self, keep: VertexId, drop: VertexId) -> Result<Graph, GraphError> {
        let count = self.vertex_count();
        for id in [keep, drop] {
            if !self.contains(id) {
                return Err(GraphError::UnknownVertex { id, count });
            }
        }
        if keep == drop {
            return Err(GraphError::IdentifySelf(keep));
        }
        if self.has_edge(keep, drop) {
            return Err(GraphError::IdentifyAdjacent { keep, drop });
        }
        let remap = |v: VertexId| -> VertexId {
            let v = if v == drop { keep } else { v };
            VertexId(if v.0 > drop.0 { v.0 - 1 } else { v.0 })
        };
        let mut builder = GraphBuilder::new();
        for v in self.vertices() {
            if v != drop {
                builder.add_vertex(self.role(v).clone());
            }
        }
        for (u, v) in self.edges() {
            builder
                .add_edge(remap(u), remap(v))
                .expect("identify of non-adjacent vertices cannot create loops");
        }
        Ok(builder.finalize())
    }

    /// Isomorphic copy under a pseudorandom id permutation determined by
    /// `seed`. Roles are erased to plain so decoders see structure alone.
    pub fn relabel(&self, seed: u64) -> Graph {
        let n = self.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Fisher-Yates with explicit arithmetic: stable output for a given
        // seed regardless of rand version.
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            perm.swap(i, j);
        }
        let mut builder = GraphBuilder::new();
        for _ in 0..n {
            builder.add_vertex(Role::plain());
        }
        for (u, v) in self.edges() {
            builder
                .add_edge(VertexId(perm[u.0]), VertexId(perm[v.0]))
                .expect("permuted edge is valid");
        }
        builder.finalize()
    }

    /// New graph with one extra edge; used by augmentation sweeps.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut builder = self.to_builder();
        builder.add_edge(u, v)?;
        Ok(builder.finalize())
    }

    /// New graph with a fresh pendant vertex attached at `v`.
    pub fn with_pendant(&self, v: VertexId) -> Result<(Graph, VertexId), GraphError> {
        if !self.contains(v) {
            return Err(GraphError::UnknownVertex {
                id: v,
                count: self.vertex_count(),
            });
        }
        let mut builder = self.to_builder();
        let fresh = builder.add_vertex(Role::plain());
        builder.add_edge(v, fresh)?;
        Ok((builder.finalize(), fresh))
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            adjacency: self
                .adjacency
                .iter()
                .map(|nbrs| nbrs.iter().map(|v| v.0).collect())
                .collect(),
            roles: self.roles.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_vertex_hands_out_dense_ids() {
        let mut b = GraphBuilder::new();
        assert_eq!(b.add_vertex(Role::plain()), VertexId(0));
        for _ in 0..4 {
            b.add_vertex(Role::plain());
        }
        assert_eq!(b.add_vertex(Role::plain()), VertexId(5));
        assert_eq!(b.add_vertex(Role::plain()), VertexId(6));
        assert_eq!(b.add_vertex(Role::plain()), VertexId(7));
    }

    #[test]
    fn add_edge_is_idempotent_and_rejects_loops() {
        let mut b = GraphBuilder::new();
        let u = b.add_vertex(Role::plain());
        let v = b.add_vertex(Role::plain());
        b.add_edge(u, v).unwrap();
        assert_eq!(b.clone().finalize().edge_count(), 1);
        b.add_edge(u, v).unwrap();
        b.add_edge(v, u).unwrap();
        assert_eq!(b.clone().finalize().edge_count(), 1);
        assert_eq!(b.add_edge(u, u), Err(GraphError::SelfLoop(u)));
        assert!(matches!(
            b.add_edge(u, VertexId(9)),
            Err(GraphError::UnknownVertex { .. })
        ));
    }

    #[test]
    fn degree_of_isolated_vertex_is_zero() {
        let mut b = GraphBuilder::new();
        let v = b.add_vertex(Role::plain());
        let g = b.finalize();
        assert_eq!(g.degree(v), 0);
    }

    #[test]
    fn identify_merges_endpoints_of_two_disjoint_edges_into_a_path() {
        // Two disjoint single edges; identifying one endpoint of each gives
        // a path of length 2.
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..4).map(|_| b.add_vertex(Role::plain())).collect();
        b.add_edge(ids[0], ids[1]).unwrap();
        b.add_edge(ids[2], ids[3]).unwrap();
        let g = b.finalize();
        let merged = g.identify(ids[1], ids[2]).unwrap();
        assert_eq!(merged.vertex_count(), 3);
        assert_eq!(merged.edge_count(), 2);
        assert_eq!(merged.degree_multiset(), vec![1, 1, 2]);
    }

    #[test]
    fn identify_rejects_adjacent_pairs() {
        let mut b = GraphBuilder::new();
        let u = b.add_vertex(Role::plain());
        let v = b.add_vertex(Role::plain());
        b.add_edge(u, v).unwrap();
        let g = b.finalize();
        assert_eq!(
            g.identify(u, v),
            Err(GraphError::IdentifyAdjacent { keep: u, drop: v })
        );
    }

    #[test]
    fn identify_collapses_duplicate_edges() {
        // Triangle plus a vertex adjacent to two triangle corners: merging it
        // into the third corner must keep the graph simple.
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..4).map(|_| b.add_vertex(Role::plain())).collect();
        b.add_edge(ids[0], ids[1]).unwrap();
        b.add_edge(ids[1], ids[2]).unwrap();
        b.add_edge(ids[0], ids[2]).unwrap();
        b.add_edge(ids[3], ids[0]).unwrap();
        b.add_edge(ids[3], ids[1]).unwrap();
        let g = b.finalize();
        let merged = g.identify(ids[2], ids[3]).unwrap();
        assert_eq!(merged.vertex_count(), 3);
        assert_eq!(merged.edge_count(), 3);
    }

    #[test]
    fn relabel_of_single_vertex_is_identity() {
        let mut b = GraphBuilder::new();
        b.add_vertex(Role::plain());
        let g = b.finalize();
        assert_eq!(g.relabel(0), g);
    }

    #[test]
    fn relabel_preserves_degree_multiset() {
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..5).map(|_| b.add_vertex(Role::plain())).collect();
        b.add_edge(ids[0], ids[1]).unwrap();
        b.add_edge(ids[1], ids[2]).unwrap();
        b.add_edge(ids[2], ids[3]).unwrap();
        b.add_edge(ids[3], ids[4]).unwrap();
        b.add_edge(ids[4], ids[0]).unwrap();
        b.add_edge(ids[0], ids[2]).unwrap();
        let g = b.finalize();
        for seed in 0..10 {
            let h = g.relabel(seed);
            assert_eq!(h.degree_multiset(), g.degree_multiset());
            assert_eq!(h.edge_count(), g.edge_count());
            assert!(h.vertices().all(|v| *h.role(v) == Role::plain()));
        }
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..6).map(|_| b.add_vertex(Role::plain())).collect();
        for i in 0..5 {
            b.add_edge(ids[i], ids[i + 1]).unwrap();
        }
        b.add_edge(ids[0], ids[3]).unwrap();
        let g = b.finalize();
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
    }
}

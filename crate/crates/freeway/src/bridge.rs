//! Builders for the bridge-family gadgets: standard graphs, the forbidden
//! tree pattern, dead ends, drive-throughs, and the bit-indexed chains that
//! string drive-throughs together.
//!
//! All builders are deterministic: equal parameters give structurally
//! identical graphs with identical ids, so serialized gadgets are byte-stable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::graph::{Graph, GraphBuilder, Role, RoleKind, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("parameter {name} = {value} is below the minimum {minimum}")]
    ParameterBelowMinimum {
        name: &'static str,
        value: usize,
        minimum: usize,
    },
    #[error("gadget can supply only {achieved} of the requested {requested} spread vertices")]
    Capacity { requested: usize, achieved: usize },
    #[error("bit strings have different lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },
}

fn require_at_least(name: &'static str, value: usize, minimum: usize) -> Result<(), GadgetError> {
    if value < minimum {
        Err(GadgetError::ParameterBelowMinimum {
            name,
            value,
            minimum,
        })
    } else {
        Ok(())
    }
}

fn add_clique(builder: &mut GraphBuilder, vertices: &[VertexId]) {
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            builder.add_edge(u, v).expect("clique edges are valid");
        }
    }
}

fn add_path(builder: &mut GraphBuilder, vertices: &[VertexId]) {
    for pair in vertices.windows(2) {
        builder.add_edge(pair[0], pair[1]).expect("path edges are valid");
    }
}

/// Complete graph on vertices `k_1..k_m`.
pub fn complete_graph(m: usize) -> Result<Graph, GadgetError> {
    require_at_least("m", m, 1)?;
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (1..=m)
        .map(|t| b.add_vertex(Role::new(RoleKind::CliqueK, &[t as u32])))
        .collect();
    add_clique(&mut b, &ids);
    Ok(b.finalize())
}

/// Simple path of length `m` on vertices `p_0..p_m`.
pub fn path_graph(m: usize) -> Result<Graph, GadgetError> {
    require_at_least("m", m, 1)?;
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (0..=m)
        .map(|j| b.add_vertex(Role::new(RoleKind::PathP, &[j as u32])))
        .collect();
    add_path(&mut b, &ids);
    Ok(b.finalize())
}

/// Cycle of length `m`.
pub fn cycle_graph(m: usize) -> Result<Graph, GadgetError> {
    require_at_least("m", m, 3)?;
    let mut b = GraphBuilder::new();
    let ids: Vec<_> = (0..m).map(|_| b.add_vertex(Role::plain())).collect();
    add_path(&mut b, &ids);
    b.add_edge(ids[m - 1], ids[0]).expect("closing edge is valid");
    Ok(b.finalize())
}

/// The forbidden tree pattern: leaves `a`, `b` on branch vertex `c`, the
/// chain `x_1..x_n`, and leaves `d`, `e` on `x_n`. The edge `(c, x_1)` is
/// included so the pattern is a connected tree with `deg(c) = deg(x_n) = 3`.
pub fn bridge(n: usize) -> Result<Graph, GadgetError> {
    require_at_least("n", n, 1)?;
    let mut b = GraphBuilder::new();
    let a = b.add_vertex(Role::new(RoleKind::BridgeA, &[]));
    let bb = b.add_vertex(Role::new(RoleKind::BridgeB, &[]));
    let c = b.add_vertex(Role::new(RoleKind::BridgeC, &[]));
    let xs: Vec<_> = (1..=n)
        .map(|i| b.add_vertex(Role::new(RoleKind::BridgeX, &[i as u32])))
        .collect();
    let d = b.add_vertex(Role::new(RoleKind::BridgeD, &[]));
    let e = b.add_vertex(Role::new(RoleKind::BridgeE, &[]));
    b.add_edge(a, c).expect("valid");
    b.add_edge(bb, c).expect("valid");
    b.add_edge(c, xs[0]).expect("valid");
    add_path(&mut b, &xs);
    b.add_edge(xs[n - 1], d).expect("valid");
    b.add_edge(xs[n - 1], e).expect("valid");
    Ok(b.finalize())
}

/// Clique `K_{n+3}` with the path `p_0..p_{n+1}` glued at `p_0 = k_{n+3}`.
/// The glued hub keeps role `clique-k(n+3)`; `p_1..p_{n+1}` carry `path-p(j)`.
pub fn dead_end(n: usize) -> Result<Graph, GadgetError> {
    require_at_least("n", n, 1)?;
    let mut b = GraphBuilder::new();
    let clique: Vec<_> = (1..=n + 3)
        .map(|t| b.add_vertex(Role::new(RoleKind::CliqueK, &[t as u32])))
        .collect();
    add_clique(&mut b, &clique);
    let mut path = vec![clique[n + 2]];
    for j in 1..=n + 1 {
        path.push(b.add_vertex(Role::new(RoleKind::PathP, &[j as u32])));
    }
    add_path(&mut b, &path);
    Ok(b.finalize())
}

/// Clique `K_{n+2}` with a dead end glued (by its path tip) onto each
/// interior clique vertex `k_i`, `1 < i < n+2`, plus pendant exits `l` on
/// `k_1` and `r` on `k_{n+2}`.
pub fn drive_through(n: usize) -> Result<Graph, GadgetError> {
    require_at_least("n", n, 1)?;
    let mut b = GraphBuilder::new();
    let clique: Vec<_> = (1..=n + 2)
        .map(|t| b.add_vertex(Role::new(RoleKind::CliqueK, &[t as u32])))
        .collect();
    add_clique(&mut b, &clique);
    for i in 2..=n + 1 {
        attach_dead_end(&mut b, n, clique[i - 1], &[i as u32]);
    }
    let left = b.add_vertex(Role::new(RoleKind::ExitLeft, &[]));
    b.add_edge(clique[0], left).expect("valid");
    let right = b.add_vertex(Role::new(RoleKind::ExitRight, &[]));
    b.add_edge(clique[n + 1], right).expect("valid");
    Ok(b.finalize())
}

/// Builds a dead end whose path tip `p_{n+1}` is the existing vertex `tip`.
/// Returns (dead-end clique, full path `p_0..p_{n+1}`).
fn attach_dead_end(
    builder: &mut GraphBuilder,
    n: usize,
    tip: VertexId,
    prefix: &[u32],
) -> (Vec<VertexId>, Vec<VertexId>) {
    let role = |kind: RoleKind, last: u32| {
        let mut ix = prefix.to_vec();
        ix.push(last);
        Role { kind, ix }
    };
    let clique: Vec<_> = (1..=n + 3)
        .map(|t| builder.add_vertex(role(RoleKind::CliqueK, t as u32)))
        .collect();
    add_clique(builder, &clique);
    let mut path = vec![clique[n + 2]];
    for j in 1..=n {
        path.push(builder.add_vertex(role(RoleKind::PathP, j as u32)));
    }
    path.push(tip);
    add_path(builder, &path);
    (clique, path)
}

/// Ids of one dead end hanging off a chain drive-through.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AttachedDeadEnd {
    /// Interior clique position `i` the dead end is glued to (1-based).
    pub at: usize,
    pub clique: Vec<VertexId>,
    /// `p_0..p_{n+1}`; the last entry is the clique vertex `k_i` itself.
    pub path: Vec<VertexId>,
}

/// Role-name-to-id maps for one chain, emitted as a JSON sidecar.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChainLayout {
    pub n: usize,
    pub bits: BitString,
    /// `k_1..k_{n+3}` of the leading dead end.
    pub dead_end_clique: Vec<VertexId>,
    /// `p_0..p_{n+1}` of the leading dead end; the last entry is `l(0)`.
    pub dead_end_path: Vec<VertexId>,
    /// Per drive-through `m`: its clique `k_1..k_{n+2}`.
    pub cliques: Vec<Vec<VertexId>>,
    /// Per drive-through `m`: the dead ends glued to interior clique vertices.
    pub attached: Vec<Vec<AttachedDeadEnd>>,
    /// `l(0)..l(L)`.
    pub left_exits: Vec<VertexId>,
    /// `r(0)..r(L)`; the last entry is the pendant truncation frontier.
    pub right_exits: Vec<VertexId>,
    /// Per position `m < L`: the connecting path `h_0..h_{n-1+bit}` with
    /// `h_0 = r(m)` and the last vertex `= l(m+1)`. A single shared vertex
    /// when `n = 1` and the bit is 0.
    pub connectors: Vec<Vec<VertexId>>,
}

impl ChainLayout {
    /// The truncation frontier `r(L)`, the only vertex exempt from rigidity.
    pub fn last_right_exit(&self) -> VertexId {
        *self
            .right_exits
            .last()
            .expect("a chain has at least one drive-through")
    }
}

/// The finite-prefix chain for a bit string of length `L`: a leading dead
/// end glued onto `l(0)`, drive-throughs `T(0)..T(L)`, and for each `m < L`
/// a connecting path of length `n - 1 + bits[m]` from `r(m)` to `l(m+1)`
/// (for `n = 1` and bit 0 the two exits are identified). The final right
/// exit `r(L)` stays pendant, marking where an infinite chain would
/// continue.
pub fn bridge_chain(n: usize, bits: &BitString) -> Result<(Graph, ChainLayout), GadgetError> {
    require_at_least("n", n, 1)?;
    let len = bits.len();
    let mut b = GraphBuilder::new();

    let dead_end_clique: Vec<_> = (1..=n + 3)
        .map(|t| b.add_vertex(Role::new(RoleKind::CliqueK, &[t as u32])))
        .collect();
    add_clique(&mut b, &dead_end_clique);
    let mut dead_end_path = vec![dead_end_clique[n + 2]];
    for j in 1..=n {
        dead_end_path.push(b.add_vertex(Role::new(RoleKind::PathP, &[j as u32])));
    }
    let l0 = b.add_vertex(Role::new(RoleKind::ExitLeft, &[0]));
    dead_end_path.push(l0);
    add_path(&mut b, &dead_end_path);

    let mut cliques = Vec::with_capacity(len + 1);
    let mut attached = Vec::with_capacity(len + 1);
    let mut left_exits = vec![l0];
    let mut right_exits = Vec::with_capacity(len + 1);
    let mut connectors = Vec::with_capacity(len);
    let mut incoming = l0;

    for m in 0..=len {
        let clique: Vec<_> = (1..=n + 2)
            .map(|t| b.add_vertex(Role::new(RoleKind::CliqueK, &[m as u32, t as u32])))
            .collect();
        add_clique(&mut b, &clique);
        b.add_edge(clique[0], incoming).expect("valid");
        let mut dead_ends = Vec::with_capacity(n);
        for i in 2..=n + 1 {
            let (de_clique, de_path) =
                attach_dead_end(&mut b, n, clique[i - 1], &[m as u32, i as u32]);
            dead_ends.push(AttachedDeadEnd {
                at: i,
                clique: de_clique,
                path: de_path,
            });
        }
        cliques.push(clique.clone());
        attached.push(dead_ends);

        let r = b.add_vertex(Role::new(RoleKind::ExitRight, &[m as u32]));
        b.add_edge(clique[n + 1], r).expect("valid");
        right_exits.push(r);
        if m < len {
            let connector_len = n - 1 + usize::from(bits.get(m));
            let mut connector = vec![r];
            for j in 1..=connector_len {
                let role = if j == connector_len {
                    Role::new(RoleKind::ExitLeft, &[m as u32 + 1])
                } else {
                    Role::new(RoleKind::HighwayH, &[m as u32, j as u32])
                };
                let v = b.add_vertex(role);
                b.add_edge(connector[j - 1], v).expect("valid");
                connector.push(v);
            }
            // When n = 1 and the bit is 0 the connecting path has length 0,
            // so r(m) and l(m+1) are one vertex.
            let l_next = *connector.last().expect("connector holds at least r(m)");
            left_exits.push(l_next);
            connectors.push(connector);
            incoming = l_next;
        }
    }

    let layout = ChainLayout {
        n,
        bits: bits.clone(),
        dead_end_clique,
        dead_end_path,
        cliques,
        attached,
        left_exits,
        right_exits,
        connectors,
    };
    Ok((b.finalize(), layout))
}

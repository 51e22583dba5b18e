//! Builders for the short-cycle-free gadgets: the subdivided pentagon, the
//! pentagon tower, spread-vertex selection, and the bit-indexed chains that
//! encode bits as edges or two-edge helpers between spread vertices.

use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::bridge::GadgetError;
use crate::graph::{Graph, GraphBuilder, Role, RoleKind, VertexId};

/// Index maps for one pentagon tower (and, once built on top of it, one
/// chain). Emitted as a JSON sidecar next to the graph.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TowerLayout {
    pub k: usize,
    /// Number of glued levels above the base pentagon.
    pub levels: usize,
    /// `x^m_i` for each level `m` and corner `i` in `Z_5`.
    pub corners: Vec<[VertexId; 5]>,
    /// `y^m_{i,j}` indexed as `midpoints[m][i][j - 1]`, `1 <= j < k`.
    pub midpoints: Vec<Vec<Vec<VertexId>>>,
    /// Vertices belonging to the tower itself; helper ids start here.
    pub tower_vertex_count: usize,
    /// Selected spread vertices `v_0, v_1, ...` (empty for a bare tower).
    pub spread: Vec<VertexId>,
    /// Per chain position `m`: the helper `u(m)` if the bit was 0.
    pub helpers: Vec<Option<VertexId>>,
}

impl TowerLayout {
    /// The identification index `⌊(k+1)/2⌋` used when gluing levels.
    pub fn identification_index(&self) -> usize {
        (self.k + 1) / 2
    }
}

/// Five corners `x_0..x_4` joined cyclically by fresh paths of length `k`:
/// a single cycle of length `5k` with distinguished corners.
pub fn pentagon(k: usize) -> Result<Graph, GadgetError> {
    Ok(pentagon_tower(k, 0)?.0)
}

/// The iterated gluing: level `m + 1` is a fresh pentagon whose corner
/// `x^{m+1}_i` is identified with the midpoint `y^m_{2i mod 5, ⌊(k+1)/2⌋}`
/// of the previous level.
pub fn pentagon_tower(k: usize, levels: usize) -> Result<(Graph, TowerLayout), GadgetError> {
    if k < 2 {
        return Err(GadgetError::ParameterBelowMinimum {
            name: "k",
            value: k,
            minimum: 2,
        });
    }
    let mut b = GraphBuilder::new();
    let mut corners: Vec<[VertexId; 5]> = Vec::with_capacity(levels + 1);
    let mut midpoints: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(levels + 1);

    let base: Vec<VertexId> = (0..5)
        .flat_map(|i| {
            let mut side = vec![(RoleKind::CornerX, vec![0, i as u32])];
            side.extend((1..k).map(|j| (RoleKind::MidpointY, vec![0, i as u32, j as u32])));
            side
        })
        .map(|(kind, ix)| b.add_vertex(Role { kind, ix }))
        .collect();
    for w in 0..5 * k {
        b.add_edge(base[w], base[(w + 1) % (5 * k)])
            .expect("cycle edges are valid");
    }
    corners.push([base[0], base[k], base[2 * k], base[3 * k], base[4 * k]]);
    midpoints.push(
        (0..5)
            .map(|i| (1..k).map(|j| base[i * k + j]).collect())
            .collect(),
    );

    let j0 = (k + 1) / 2;
    for m in 1..=levels {
        let level_corners: [VertexId; 5] =
            std::array::from_fn(|i| midpoints[m - 1][(2 * i) % 5][j0 - 1]);
        let mut level_midpoints: Vec<Vec<VertexId>> = Vec::with_capacity(5);
        for i in 0..5 {
            let side: Vec<VertexId> = (1..k)
                .map(|j| {
                    b.add_vertex(Role::new(
                        RoleKind::MidpointY,
                        &[m as u32, i as u32, j as u32],
                    ))
                })
                .collect();
            let mut walk = vec![level_corners[i]];
            walk.extend(&side);
            walk.push(level_corners[(i + 1) % 5]);
            for pair in walk.windows(2) {
                b.add_edge(pair[0], pair[1]).expect("side edges are valid");
            }
            level_midpoints.push(side);
        }
        corners.push(level_corners);
        midpoints.push(level_midpoints);
    }

    let graph = b.finalize();
    let layout = TowerLayout {
        k,
        levels,
        corners,
        midpoints,
        tower_vertex_count: graph.vertex_count(),
        spread: Vec::new(),
        helpers: Vec::new(),
    };
    Ok((graph, layout))
}

/// Greedy deterministic spread selection: `v_0 = anchor`, and each `v_{m+1}`
/// is the first vertex in BFS order from `v_m` (by distance, ties by id)
/// satisfying the distance constraints. Errors with the achieved count when
/// the host runs out of candidates.
///
/// Consecutive vertices must be at distance at least `2k + 1`; every other
/// pair at distance at least `2k - 1`. The non-consecutive floor keeps any
/// cycle through two or more encoding shortcuts at length above `2k`: such
/// a cycle spends at least two edges on shortcuts and traverses at least
/// one tower path between distinct spread vertices. Constraining only
/// consecutive pairs admits 4-cycles (two encoding edges plus a short
/// tower path between `v_m` and `v_{m+2}`).
pub fn spread_vertices(
    g: &Graph,
    anchor: VertexId,
    k: usize,
    count: usize,
) -> Result<Vec<VertexId>, GadgetError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let need_consecutive = 2 * k + 1;
    let need_pairwise = 2 * k - 1;
    let mut chosen = vec![anchor];
    let mut distances = vec![g.bfs_distances(anchor)];
    while chosen.len() < count {
        let from_last = distances.last().expect("one per chosen vertex");
        let next = g
            .vertices()
            .filter(|v| !chosen.contains(v))
            .filter_map(|v| from_last[v.index()].map(|d| (d, v)))
            .filter(|&(d, _)| d >= need_consecutive)
            .filter(|&(_, v)| {
                distances[..distances.len() - 1].iter().all(|dist| {
                    // Unreachable counts as infinitely far.
                    dist[v.index()].is_none_or(|d| d >= need_pairwise)
                })
            })
            .min();
        match next {
            Some((_, v)) => {
                chosen.push(v);
                distances.push(g.bfs_distances(v));
            }
            None => {
                return Err(GadgetError::Capacity {
                    requested: count,
                    achieved: chosen.len(),
                })
            }
        }
    }
    Ok(chosen)
}

/// Tower plus one bit per consecutive spread pair: bit 1 joins `v_m` to
/// `v_{m+1}` by an edge, bit 0 adds a fresh degree-2 helper `u(m)` adjacent
/// to both. Requires the tower to supply `|bits| + 1` spread vertices.
pub fn girth_chain(
    k: usize,
    levels: usize,
    bits: &BitString,
) -> Result<(Graph, TowerLayout), GadgetError> {
    let (tower, mut layout) = pentagon_tower(k, levels)?;
    let spread = spread_vertices(&tower, layout.corners[0][0], k, bits.len() + 1)?;
    let mut b = tower.to_builder();
    let mut helpers = Vec::with_capacity(bits.len());
    for (m, bit) in bits.iter().enumerate() {
        if bit {
            b.add_edge(spread[m], spread[m + 1])
                .expect("spread vertices are distinct and non-adjacent");
            helpers.push(None);
        } else {
            let u = b.add_vertex(Role::new(RoleKind::HelperU, &[m as u32]));
            b.add_edge(u, spread[m]).expect("valid");
            b.add_edge(u, spread[m + 1]).expect("valid");
            helpers.push(Some(u));
        }
    }
    layout.spread = spread;
    layout.helpers = helpers;
    Ok((b.finalize(), layout))
}

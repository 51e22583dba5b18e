//! Structural decoders: recovering the encoded bit string from an unlabeled
//! chain by walking its highways, and isomorphism-distinguishing
//! fingerprints. Decoding doubles as a chain-shape recognizer: every failure
//! names the step that went wrong.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitString;
use crate::girth::TowerLayout;
use crate::graph::{Graph, VertexId};
use crate::search::{highway_census, highways};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error(
        "step 1: expected exactly one highway of length {expected_length} with an end of degree {expected_degree}, found {found}"
    )]
    SpecialHighway {
        found: usize,
        expected_length: usize,
        expected_degree: usize,
    },
    #[error("step 2: clique classification failed: {0}")]
    Clique(String),
    #[error("step 3: connector of length {found} is outside {{n+1, n+2}} = {{{low}, {high}}}")]
    ConnectorLength {
        found: usize,
        low: usize,
        high: usize,
    },
    #[error(
        "position {position}: expected exactly one of a direct edge or a shared outside helper, found adjacent={adjacent}, helpers={helpers}"
    )]
    GirthPosition {
        position: usize,
        adjacent: bool,
        helpers: usize,
    },
    #[error("layout carries no spread vertices")]
    MissingSpread,
}

/// Follows the highway leaving `from` through its neighbor `via` until a
/// vertex of degree != 2; returns (far end, vertex before it, edge count).
fn walk_highway(
    host: &Graph,
    from: VertexId,
    via: VertexId,
) -> Result<(VertexId, VertexId, usize), DecodeError> {
    let mut prev = from;
    let mut current = via;
    let mut length = 1;
    while host.degree(current) == 2 {
        let next = host
            .neighbors(current)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("degree-2 vertices have another neighbor");
        prev = current;
        current = next;
        length += 1;
        if length > host.vertex_count() {
            return Err(DecodeError::Clique(
                "highway walk does not terminate".into(),
            ));
        }
    }
    Ok((current, prev, length))
}

/// The vertices of the drive-through clique entered at `entry`, validated
/// to be a clique of the right size whose members attach to exactly one
/// highway each.
fn clique_at(host: &Graph, entry: VertexId, n: usize) -> Result<Vec<VertexId>, DecodeError> {
    let size = n + 2;
    if host.degree(entry) != size {
        return Err(DecodeError::Clique(format!(
            "entry vertex {entry} has degree {} instead of {size}",
            host.degree(entry)
        )));
    }
    let mut clique = vec![entry];
    clique.extend(
        host.neighbors(entry)
            .iter()
            .copied()
            .filter(|&w| host.degree(w) == size),
    );
    if clique.len() != size {
        return Err(DecodeError::Clique(format!(
            "entry vertex {entry} sees {} candidate clique vertices instead of {}",
            clique.len() - 1,
            size - 1
        )));
    }
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            if !host.has_edge(u, v) {
                return Err(DecodeError::Clique(format!(
                    "candidate clique vertices {u} and {v} are not adjacent"
                )));
            }
        }
    }
    Ok(clique)
}

/// Recovers the bit string from an unlabeled bridge chain.
///
/// Works purely structurally: (1) the unique maximal highway of length
/// `n + 2` with an end of degree `n + 3` anchors the walk at the first
/// drive-through's clique entry; (2) at each clique, attached highways are
/// classified by far-end degree into dead ends (degree `n + 3`), the
/// outgoing connector (degree `n + 2`, carrying `bits[m] = length - (n+1)`),
/// or the pendant truncation frontier (degree 1), which stops the walk.
pub fn decode_bridge_bits(host: &Graph, n: usize) -> Result<BitString, DecodeError> {
    let expected_length = n + 2;
    let hub_degree = n + 3;
    let specials: Vec<_> = highways(host)
        .into_iter()
        .filter(|h| {
            !h.cyclic
                && h.len() == expected_length
                && (h.end_degrees.0 == hub_degree || h.end_degrees.1 == hub_degree)
        })
        .collect();
    let [special] = specials.as_slice() else {
        return Err(DecodeError::SpecialHighway {
            found: specials.len(),
            expected_length,
            expected_degree: hub_degree,
        });
    };
    // The far end of the special highway is the first clique's entry; it
    // must have clique degree n + 2 (the hub end has n + 3).
    let first = *special.vertices.first().expect("highways are nonempty");
    let last = *special.vertices.last().expect("highways are nonempty");
    let (entry, before) = if host.degree(first) == n + 2 && host.degree(last) == hub_degree {
        (first, special.vertices[1])
    } else if host.degree(last) == n + 2 && host.degree(first) == hub_degree {
        (last, special.vertices[special.vertices.len() - 2])
    } else {
        return Err(DecodeError::Clique(format!(
            "special highway ends have degrees {} and {}, expected {} and {}",
            host.degree(first),
            host.degree(last),
            n + 2,
            hub_degree
        )));
    };

    let mut bits = BitString::new();
    let mut visited_entries = vec![entry];
    let mut current = (entry, before);
    loop {
        let (entry, incoming) = current;
        let clique = clique_at(host, entry, n)?;
        let mut dead_ends = 0;
        let mut outgoing: Option<(VertexId, VertexId, usize)> = None;
        let mut terminal = false;
        for &k in &clique {
            let attachments: Vec<VertexId> = host
                .neighbors(k)
                .iter()
                .copied()
                .filter(|w| !clique.contains(w))
                .collect();
            let [attachment] = attachments.as_slice() else {
                return Err(DecodeError::Clique(format!(
                    "clique vertex {k} has {} attachments instead of 1",
                    attachments.len()
                )));
            };
            if k == entry {
                if *attachment != incoming {
                    return Err(DecodeError::Clique(format!(
                        "entry vertex {entry} attaches to {attachment}, not the incoming highway"
                    )));
                }
                continue;
            }
            let (far, before_far, length) = walk_highway(host, k, *attachment)?;
            if host.degree(far) == hub_degree {
                if length != n + 1 {
                    return Err(DecodeError::Clique(format!(
                        "dead-end highway at {k} has length {length}, expected {}",
                        n + 1
                    )));
                }
                dead_ends += 1;
            } else if host.degree(far) == 1 {
                if terminal {
                    return Err(DecodeError::Clique(
                        "more than one pendant frontier at a single clique".into(),
                    ));
                }
                terminal = true;
            } else if host.degree(far) == n + 2 {
                if outgoing.is_some() {
                    return Err(DecodeError::Clique(
                        "more than one outgoing connector at a single clique".into(),
                    ));
                }
                if length < n + 1 || length > n + 2 {
                    return Err(DecodeError::ConnectorLength {
                        found: length,
                        low: n + 1,
                        high: n + 2,
                    });
                }
                outgoing = Some((far, before_far, length));
            } else {
                return Err(DecodeError::Clique(format!(
                    "highway from {k} ends at {far} of degree {}, which is neither hub, frontier nor clique",
                    host.degree(far)
                )));
            }
        }
        if dead_ends != n {
            return Err(DecodeError::Clique(format!(
                "clique carries {dead_ends} dead ends instead of {n}"
            )));
        }
        match (terminal, outgoing) {
            (true, None) => return Ok(bits),
            (false, Some((far, before_far, length))) => {
                if visited_entries.contains(&far) {
                    return Err(DecodeError::Clique(
                        "connector leads back to an earlier clique".into(),
                    ));
                }
                visited_entries.push(far);
                bits.push(length == n + 2);
                current = (far, before_far);
            }
            (true, Some(_)) | (false, None) => {
                return Err(DecodeError::Clique(
                    "clique must end the chain or continue it, not both or neither".into(),
                ))
            }
        }
    }
}

/// Structure-only invariant of a chain: the decoded bits plus the highway
/// census. Equal on isomorphic graphs; two chains with different
/// fingerprints are non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub bits: BitString,
    /// Sorted multiset of (length, (min end degree, max end degree)).
    pub census: Vec<(usize, (usize, usize))>,
}

pub fn fingerprint(host: &Graph, n: usize) -> Result<Fingerprint, DecodeError> {
    Ok(Fingerprint {
        n,
        bits: decode_bridge_bits(host, n)?,
        census: highway_census(host),
    })
}

/// Reads the bits back from a role-tagged girth chain: bit 1 when
/// consecutive spread vertices are adjacent, bit 0 when a vertex outside
/// the tower is adjacent to both. Exactly one case must hold per position.
pub fn decode_girth_bits(host: &Graph, layout: &TowerLayout) -> Result<BitString, DecodeError> {
    if layout.spread.is_empty() {
        return Err(DecodeError::MissingSpread);
    }
    let mut bits = BitString::new();
    for position in 0..layout.spread.len() - 1 {
        let a = layout.spread[position];
        let b = layout.spread[position + 1];
        let adjacent = host.has_edge(a, b);
        let helpers = host
            .vertices()
            .filter(|v| v.index() >= layout.tower_vertex_count)
            .filter(|&v| host.has_edge(v, a) && host.has_edge(v, b))
            .count();
        match (adjacent, helpers) {
            (true, 0) => bits.push(true),
            (false, h) if h > 0 => bits.push(false),
            (adjacent, helpers) => {
                return Err(DecodeError::GirthPosition {
                    position,
                    adjacent,
                    helpers,
                })
            }
        }
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::{bridge_chain, complete_graph, dead_end};
    use crate::girth::{girth_chain, pentagon_tower, spread_vertices};

    #[test]
    fn decode_round_trips_constructed_chains() {
        for n in 1..=3 {
            for bits in ["", "0", "1", "01", "101", "110"] {
                let bits: BitString = bits.parse().unwrap();
                let (chain, _) = bridge_chain(n, &bits).unwrap();
                assert_eq!(decode_bridge_bits(&chain, n).unwrap(), bits, "n={n}");
            }
        }
        let bits: BitString = "101".parse().unwrap();
        let (chain, _) = bridge_chain(2, &bits).unwrap();
        assert_eq!(decode_bridge_bits(&chain, 2).unwrap().to_string(), "101");
    }

    #[test]
    fn decode_survives_relabeling() {
        let bits: BitString = "0110".parse().unwrap();
        let (chain, _) = bridge_chain(1, &bits).unwrap();
        for seed in 0..5 {
            let shuffled = chain.relabel(seed);
            assert_eq!(decode_bridge_bits(&shuffled, 1).unwrap(), bits);
        }
    }

    #[test]
    fn decode_rejects_non_chains() {
        let k6 = complete_graph(6).unwrap();
        assert!(matches!(
            decode_bridge_bits(&k6, 2),
            Err(DecodeError::SpecialHighway { found: 0, .. })
        ));
        let lone = dead_end(2).unwrap();
        assert!(matches!(
            decode_bridge_bits(&lone, 2),
            Err(DecodeError::SpecialHighway { found: 0, .. })
        ));
    }

    #[test]
    fn decode_tolerates_a_longer_frontier() {
        // Extending the pendant frontier is how an infinite chain would
        // grow; the bits are unaffected.
        let bits: BitString = "1".parse().unwrap();
        let (chain, layout) = bridge_chain(1, &bits).unwrap();
        let (longer, _) = chain.with_pendant(layout.last_right_exit()).unwrap();
        assert_eq!(decode_bridge_bits(&longer, 1).unwrap(), bits);
    }

    #[test]
    fn decode_rejects_two_chains_at_step_one() {
        let bits: BitString = "1".parse().unwrap();
        let (chain, _) = bridge_chain(1, &bits).unwrap();
        let mut b = chain.to_builder();
        b.append(&chain);
        let doubled = b.finalize();
        assert!(matches!(
            decode_bridge_bits(&doubled, 1),
            Err(DecodeError::SpecialHighway { found: 2, .. })
        ));
    }

    #[test]
    fn decode_reports_out_of_range_connector_lengths() {
        // Stretch the single connector of a chain by replacing its edge
        // with a three-edge path: length becomes n + 3.
        let bits: BitString = "0".parse().unwrap();
        let (chain, layout) = bridge_chain(2, &bits).unwrap();
        let r0 = layout.right_exits[0];
        let l1 = layout.left_exits[1];
        let mut b = crate::graph::GraphBuilder::new();
        for v in chain.vertices() {
            b.add_vertex(chain.role(v).clone());
        }
        for (u, v) in chain.edges() {
            if (u, v) != (r0.min(l1), r0.max(l1)) {
                b.add_edge(u, v).unwrap();
            }
        }
        let m1 = b.add_vertex(crate::graph::Role::plain());
        let m2 = b.add_vertex(crate::graph::Role::plain());
        b.add_edge(r0, m1).unwrap();
        b.add_edge(m1, m2).unwrap();
        b.add_edge(m2, l1).unwrap();
        let stretched = b.finalize();
        assert_eq!(
            decode_bridge_bits(&stretched, 2),
            Err(DecodeError::ConnectorLength {
                found: 5,
                low: 3,
                high: 4
            })
        );
    }

    #[test]
    fn decode_reports_unclassifiable_attachments() {
        // A pendant on a connector interior splits the highway at a
        // degree-3 vertex that is neither hub, frontier nor clique.
        let bits: BitString = "1".parse().unwrap();
        let (chain, layout) = bridge_chain(2, &bits).unwrap();
        let interior = layout.connectors[0][1];
        let (broken, _) = chain.with_pendant(interior).unwrap();
        assert!(matches!(
            decode_bridge_bits(&broken, 2),
            Err(DecodeError::Clique(_))
        ));
    }

    #[test]
    fn fingerprints_distinguish_single_bit_chains() {
        let zero: BitString = "0".parse().unwrap();
        let one: BitString = "1".parse().unwrap();
        let (g0, _) = bridge_chain(1, &zero).unwrap();
        let (g1, _) = bridge_chain(1, &one).unwrap();
        let f0 = fingerprint(&g0, 1).unwrap();
        let f1 = fingerprint(&g1, 1).unwrap();
        assert_ne!(f0, f1);
        assert_eq!(f0.bits, zero);
        assert_eq!(f1.bits, one);
    }

    #[test]
    fn fingerprint_is_relabel_invariant() {
        let bits: BitString = "10".parse().unwrap();
        let (chain, _) = bridge_chain(2, &bits).unwrap();
        let base = fingerprint(&chain, 2).unwrap();
        for seed in 0..5 {
            assert_eq!(fingerprint(&chain.relabel(seed), 2).unwrap(), base);
        }
    }

    #[test]
    fn girth_decode_round_trips() {
        for bits in ["10", "011", "001", "111"] {
            let bits: BitString = bits.parse().unwrap();
            let (chain, layout) = girth_chain(2, 4, &bits).unwrap();
            assert_eq!(decode_girth_bits(&chain, &layout).unwrap(), bits);
        }
    }

    #[test]
    fn girth_decode_rejects_a_bare_tower() {
        let (tower, mut layout) = pentagon_tower(2, 4).unwrap();
        layout.spread = spread_vertices(&tower, layout.corners[0][0], 2, 3).unwrap();
        let err = decode_girth_bits(&tower, &layout).unwrap_err();
        assert_eq!(
            err,
            DecodeError::GirthPosition {
                position: 0,
                adjacent: false,
                helpers: 0
            }
        );
    }
}

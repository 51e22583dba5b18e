//! A workbench for building and mechanically verifying families of graph
//! gadgets used in forbidden-subgraph constructions.
//!
//! Two families are covered. The *bridge* family strings drive-through
//! gadgets (cliques dressed with dead ends) along highways whose lengths
//! encode a binary string; the chains are free of a forbidden tree pattern,
//! degree-rigid everywhere except at an explicit frontier, and decodable
//! back to their bits from structure alone. The *girth* family stacks
//! subdivided pentagons into a tower of girth above `2k` and encodes bits
//! as edges or two-edge helpers between far-apart spread vertices; merging
//! two chains that disagree on a bit forces a triangle.
//!
//! The crate provides the builders ([`bridge`], [`girth`]), the search
//! kernels that check every claim ([`search`]), augmentation sweeps for the
//! rigidity claims ([`rigidity`]), structural decoders and fingerprints
//! ([`codec`]), and end-to-end family reports ([`theorems`]).

pub mod bits;
pub mod bridge;
pub mod codec;
pub mod girth;
pub mod graph;
pub mod io;
pub mod rigidity;
pub mod search;
pub mod theorems;

pub use bits::BitString;
pub use bridge::{
    bridge, bridge_chain, complete_graph, cycle_graph, dead_end, drive_through, path_graph,
    ChainLayout, GadgetError,
};
pub use codec::{decode_bridge_bits, decode_girth_bits, fingerprint, DecodeError, Fingerprint};
pub use girth::{girth_chain, pentagon, pentagon_tower, spread_vertices, TowerLayout};
pub use graph::{Graph, GraphBuilder, GraphError, Role, RoleKind, VertexId};
pub use io::{parse, serialize, Format, ParseError};
pub use rigidity::{
    augmentation_sweep, corner_rigidity, safe_pendant, Augmentation, RigidityError, RigidityReport,
};
pub use search::{
    enumerate_embeddings, find_bridge, find_embedding, girth as graph_girth, highway_census,
    highways, short_cycle, Embedding, Highway, SearchError,
};
pub use theorems::{
    bridge_theorem_report, girth_theorem_report, triangle_merge, BridgeFamilyReport,
    GirthFamilyReport, MergeOutcome, TriangleWitness,
};

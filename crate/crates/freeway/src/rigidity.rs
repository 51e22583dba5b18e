//! Mechanical verification of the degree-rigidity claims.
//!
//! The sweep checks the contrapositive form: on a bridge-free gadget, every
//! single augmentation (one internal edge between non-adjacent vertices, or
//! one fresh pendant) that raises the degree of a protected vertex must
//! create a copy of the forbidden bridge. One pendant per vertex suffices:
//! the bridge pattern is a tree, so a witness through any external neighbor
//! uses at most its single edge to the gadget, exactly like a fresh
//! degree-1 vertex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridge::GadgetError;
use crate::girth::pentagon;
use crate::graph::{Graph, VertexId};
use crate::search::{enumerate_embeddings, find_bridge, girth, Embedding, SearchError};

/// One tested augmentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Augmentation {
    /// A new edge between two existing non-adjacent vertices.
    InternalEdge { u: VertexId, v: VertexId },
    /// A fresh degree-1 vertex attached at an existing vertex.
    Pendant { at: VertexId },
}

impl Augmentation {
    /// Existing vertices whose degree the augmentation raises.
    fn touched(&self) -> Vec<VertexId> {
        match *self {
            Augmentation::InternalEdge { u, v } => vec![u, v],
            Augmentation::Pendant { at } => vec![at],
        }
    }
}

/// Outcome for one augmentation: a bridge witness in the augmented graph,
/// or SAFE (no witness).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationOutcome {
    #[serde(flatten)]
    pub augmentation: Augmentation,
    /// Whether the augmentation touches only exempt vertices (report-only).
    pub exempt_only: bool,
    pub witness: Option<Embedding>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub gadget: String,
    pub n: usize,
    pub exempt: Vec<VertexId>,
    pub outcomes: Vec<AugmentationOutcome>,
    /// Pass iff every augmentation touching a protected vertex has a witness.
    pub pass: bool,
}

impl RigidityReport {
    pub fn safe_count(&self) -> usize {
        self.outcomes.iter().filter(|o| o.witness.is_none()).count()
    }

    pub fn witnessed_count(&self) -> usize {
        self.outcomes.len() - self.safe_count()
    }
}

#[derive(Debug, Error)]
pub enum RigidityError {
    #[error("input graph already contains the forbidden bridge pattern")]
    NotFree { witness: Box<Embedding> },
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("host girth {girth:?} does not exceed {bound}; the rigidity hypothesis fails")]
    GirthHypothesis { girth: Option<usize>, bound: usize },
    #[error("corner pins must be five distinct host vertices")]
    BadPins,
}

/// Exhaustively tests every single-edge and single-pendant augmentation of
/// a bridge-free gadget. Augmentations touching only exempt vertices are
/// recorded but never asserted either way.
pub fn augmentation_sweep(
    g: &Graph,
    n: usize,
    exempt: &[VertexId],
    gadget: impl Into<String>,
) -> Result<RigidityReport, RigidityError> {
    for &v in exempt {
        if !g.contains(v) {
            return Err(RigidityError::UnknownVertex(v));
        }
    }
    if let Some(witness) = find_bridge(g, n)? {
        return Err(RigidityError::NotFree {
            witness: Box::new(witness),
        });
    }

    let mut augmentations = Vec::new();
    for u in g.vertices() {
        for v in g.vertices() {
            if u < v && !g.has_edge(u, v) {
                augmentations.push(Augmentation::InternalEdge { u, v });
            }
        }
    }
    for at in g.vertices() {
        augmentations.push(Augmentation::Pendant { at });
    }

    let mut outcomes = Vec::with_capacity(augmentations.len());
    let mut pass = true;
    for augmentation in augmentations {
        let augmented = match augmentation {
            Augmentation::InternalEdge { u, v } => {
                g.with_edge(u, v).expect("non-adjacent existing vertices")
            }
            Augmentation::Pendant { at } => g.with_pendant(at).expect("existing vertex").0,
        };
        let witness = find_bridge(&augmented, n)?;
        let exempt_only = augmentation.touched().iter().all(|t| exempt.contains(t));
        if !exempt_only && witness.is_none() {
            pass = false;
        }
        outcomes.push(AugmentationOutcome {
            augmentation,
            exempt_only,
            witness,
        });
    }
    Ok(RigidityReport {
        gadget: gadget.into(),
        n,
        exempt: exempt.to_vec(),
        outcomes,
        pass,
    })
}

/// True iff attaching a fresh pendant at `v` leaves the graph bridge-free.
pub fn safe_pendant(g: &Graph, n: usize, v: VertexId) -> Result<bool, RigidityError> {
    if !g.contains(v) {
        return Err(RigidityError::UnknownVertex(v));
    }
    let (augmented, _) = g.with_pendant(v).expect("existing vertex");
    Ok(find_bridge(&augmented, n)?.is_none())
}

/// Number of pentagon embeddings into `host` sending corner `x_i` to
/// `pins[i]`, counted exactly up to 2. Requires host girth above `2k`
/// (that hypothesis is what makes the count collapse to at most 1).
pub fn corner_rigidity(
    k: usize,
    host: &Graph,
    pins: &[VertexId; 5],
) -> Result<usize, RigidityError> {
    let pattern = pentagon(k)?;
    let bound = 2 * k;
    let host_girth = girth(host);
    if let Some(g) = host_girth {
        if g <= bound {
            return Err(RigidityError::GirthHypothesis {
                girth: host_girth,
                bound,
            });
        }
    }
    for &p in pins {
        if !host.contains(p) {
            return Err(RigidityError::UnknownVertex(p));
        }
    }
    let mut sorted = pins.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 5 {
        return Err(RigidityError::BadPins);
    }
    let pin_pairs: Vec<(VertexId, VertexId)> = (0..5)
        .map(|i| (VertexId(i * k), pins[i]))
        .collect();
    match enumerate_embeddings(&pattern, host, false, &pin_pairs, 2) {
        Ok(found) => Ok(found.len()),
        Err(SearchError::InconsistentPins(_)) => Ok(0),
        Err(e) => Err(e.into()),
    }
}

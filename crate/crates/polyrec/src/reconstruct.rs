//! Face-lattice reconstruction from a graph plus edge-labeled vertex
//! figures, and the simple-polytope special case that needs the graph only.
//!
//! The facet subgraphs are recovered as the inclusion-minimal non-empty
//! induced subgraphs that are (i) initial with respect to some good
//! orientation and (ii) locally equal to a facet label at every vertex.
//! Candidate generation enumerates vertex subsets, pruning first by the
//! cheap local label condition, then by initiality against the precomputed
//! good-orientation list; minimal survivors are the facets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{graph_of, Graph, NodeId};
use crate::labels::{simple_labels_from_graph, Edge, VertexFigureLabels};
use crate::lattice::{vertices_of, FaceLattice, Mask, PolytopeSpec};
use crate::orient::{is_initial, EnumLimits, Orientation};

/// Subset enumeration bound for the F-subgraph search; the general
/// pipeline is meant for desk-scale graphs.
const MAX_SEARCH_NODES: u32 = 20;

/// A vertex subset of the graph together with its per-vertex induced edge
/// sets Φ(v).
#[derive(Clone, Debug)]
pub struct CandidateSubgraph {
    pub nodes: Vec<NodeId>,
    pub phi: BTreeMap<NodeId, Vec<Edge>>,
}

impl CandidateSubgraph {
    pub fn new(g: &Graph, nodes: &[NodeId]) -> Self {
        let mut sorted = nodes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let inside = |v: NodeId| sorted.binary_search(&v).is_ok();
        let phi = sorted
            .iter()
            .map(|&v| {
                let edges: Vec<Edge> = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| inside(w))
                    .map(|&w| (v.min(w), v.max(w)))
                    .collect();
                (v, edges)
            })
            .collect();
        CandidateSubgraph { nodes: sorted, phi }
    }
}

/// Condition (ii): every vertex of the candidate has some label equal to
/// its induced edge set. Uniqueness of the matching facet is deliberately
/// not required.
pub fn satisfies_label_condition(c: &CandidateSubgraph, labels: &VertexFigureLabels) -> bool {
    c.nodes.iter().all(|v| {
        let phi = &c.phi[v];
        labels
            .at(*v)
            .map(|fam| fam.iter().any(|l| l == phi))
            .unwrap_or(false)
    })
}

fn label_masks_per_vertex(g: &Graph, labels: &VertexFigureLabels) -> Vec<Vec<u64>> {
    // per vertex: each label as a bitmask over the *neighbor list* of v
    (0..g.n_nodes())
        .map(|v| {
            let nbrs = g.neighbors(v);
            let fam = labels.at(v).expect("validated");
            fam.iter()
                .map(|label| {
                    label.iter().fold(0u64, |m, &(a, b)| {
                        let w = if a == v { b } else { a };
                        let i = nbrs.binary_search(&w).expect("label edge is incident");
                        m | (1 << i)
                    })
                })
                .collect()
        })
        .collect()
}

/// All non-empty vertex subsets satisfying conditions (i) and (ii) — the
/// family before the minimality cut. Exposed so that the necessity of the
/// minimality condition is itself testable.
pub fn label_initial_sets(
    g: &Graph,
    labels: &VertexFigureLabels,
    limits: &EnumLimits,
) -> Result<Vec<Vec<NodeId>>> {
    let search = crate::orient::find_good_orientations(g, labels, limits)?;
    label_initial_sets_with(g, labels, &search.good)
}

fn label_initial_sets_with(
    g: &Graph,
    labels: &VertexFigureLabels,
    good: &[Orientation],
) -> Result<Vec<Vec<NodeId>>> {
    let n = g.n_nodes();
    if n > MAX_SEARCH_NODES {
        return Err(Error::TooLarge(format!(
            "{n} nodes exceeds the {MAX_SEARCH_NODES}-node subset search bound"
        )));
    }
    labels.validate_against(g)?;
    let label_masks = label_masks_per_vertex(g, labels);
    let mut sets: Vec<Vec<NodeId>> = Vec::new();
    for subset in 1u64..(1 << n) {
        let member = |v: NodeId| subset & (1 << v) != 0;
        // condition (ii), checked per vertex over neighbor bitmasks
        let mut ok = true;
        for v in 0..n {
            if !member(v) {
                continue;
            }
            let nbrs = g.neighbors(v);
            let mut phi: u64 = 0;
            for (i, &w) in nbrs.iter().enumerate() {
                if member(w) {
                    phi |= 1 << i;
                }
            }
            if !label_masks[v as usize].contains(&phi) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let nodes: Vec<NodeId> = (0..n).filter(|&v| member(v)).collect();
        // condition (i): initial w.r.t. at least one good orientation
        if good.iter().any(|o| is_initial(o, &nodes)) {
            sets.push(nodes);
        }
    }
    sets.sort_by_key(|s| (s.len(), s.clone()));
    Ok(sets)
}

/// The F-subgraphs: inclusion-minimal members of [`label_initial_sets`].
/// These are exactly the facet vertex sets when the inputs come from a
/// polytope.
pub fn find_f_subgraphs(
    g: &Graph,
    labels: &VertexFigureLabels,
    limits: &EnumLimits,
) -> Result<Vec<Vec<NodeId>>> {
    let sets = label_initial_sets(g, labels, limits)?;
    // sets are ordered by size, so a set is minimal iff it contains no
    // smaller minimal one
    let subset = |inner: Mask, outer: Mask| inner & outer == inner;
    let mut minimal_masks: Vec<Mask> = Vec::new();
    let mut minimal: Vec<Vec<NodeId>> = Vec::new();
    for s in sets {
        let m = crate::graph::node_mask(&s);
        if minimal_masks.iter().any(|&t| subset(t, m)) {
            continue;
        }
        minimal_masks.push(m);
        minimal.push(s);
    }
    minimal.sort();
    Ok(minimal)
}

/// Rebuilds the face lattice from a graph and vertex-figure labels. The
/// recovered facet family must form a valid polytope lattice whose graph is
/// exactly the input graph; anything else is rejected, never silently
/// returned.
pub fn reconstruct_lattice(
    g: &Graph,
    labels: &VertexFigureLabels,
    limits: &EnumLimits,
) -> Result<FaceLattice> {
    let facets = find_f_subgraphs(g, labels, limits)?;
    let spec = PolytopeSpec::new("reconstructed", g.n_nodes(), facets)
        .map_err(|e| Error::NotPolytopal(format!("recovered facet family invalid: {e}")))?;
    let lat = FaceLattice::build(&spec)?;
    let report = crate::lattice::validate_polytopality(&lat);
    if !report.is_ok() {
        return Err(Error::NotPolytopal(format!(
            "recovered lattice fails validation: {}",
            report.violations.join("; ")
        )));
    }
    let rebuilt_graph = graph_of(&lat)
        .map_err(|e| Error::NotPolytopal(format!("recovered lattice has no graph: {e}")))?;
    if rebuilt_graph.edges() != g.edges() {
        return Err(Error::NotPolytopal(
            "edges of the recovered lattice differ from the input graph".into(),
        ));
    }
    Ok(lat)
}

/// Reconstruction of a simple polytope from its graph alone: the labels of
/// a d-regular simple-polytope graph are all (d−1)-subsets of the edges at
/// each vertex.
pub fn reconstruct_simple(g: &Graph, limits: &EnumLimits) -> Result<FaceLattice> {
    if !g.is_connected() {
        return Err(Error::InvalidInput("graph must be connected".into()));
    }
    let labels = simple_labels_from_graph(g)?;
    reconstruct_lattice(g, &labels, limits)
}

/// Convenience wrapper for mask output.
pub fn facet_vertex_sets(lat: &FaceLattice) -> Vec<Vec<NodeId>> {
    let mut v: Vec<Vec<NodeId>> = lat.facet_masks().iter().map(|&m| vertices_of(m)).collect();
    v.sort();
    v
}

//! JSON wire formats for the CLI: polytope, graph, labels, lattice,
//! orientation and reconstruction reports. All collections are sorted at
//! construction, so serialization is byte-deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::labels::{Edge, VertexFigureLabels};
use crate::lattice::{FaceLattice, VertexId};

/// Graph file: `{"n_nodes": int, "edges": [[a,b],...], "node_names": {...}}`
/// with a < b and the edge list sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphFile {
    pub n_nodes: u32,
    pub edges: Vec<(NodeId, NodeId)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub node_names: Option<BTreeMap<NodeId, String>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile {
            n_nodes: g.n_nodes(),
            edges: g.edges().to_vec(),
            node_names: g.node_names().cloned(),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        let g = Graph::new(self.n_nodes, self.edges)?;
        Ok(match self.node_names {
            Some(names) => g.with_names(names),
            None => g,
        })
    }
}

/// Lattice file: faces sorted by (rank, vertex set); the empty face is
/// included with rank −1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub dimension: i32,
    pub faces: Vec<LatticeFace>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFace {
    pub rank: i32,
    pub vertices: Vec<VertexId>,
}

impl LatticeFile {
    pub fn from_lattice(lat: &FaceLattice) -> Self {
        LatticeFile {
            dimension: lat.dimension(),
            faces: lat
                .faces_with_ranks()
                .into_iter()
                .map(|(rank, vertices)| LatticeFace { rank, vertices })
                .collect(),
        }
    }
}

/// Labels file: per vertex, a list of labels, each a list of edges as
/// endpoint pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelsFile {
    pub labels: BTreeMap<VertexId, Vec<Vec<Edge>>>,
}

impl LabelsFile {
    pub fn from_labels(l: &VertexFigureLabels) -> Self {
        LabelsFile { labels: l.as_map().clone() }
    }

    pub fn into_labels(self) -> VertexFigureLabels {
        VertexFigureLabels::new(self.labels)
    }
}

/// Orientation report: minimum score f, enumeration counts, and the good
/// orientations as directed edge lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrientationReport {
    pub f: u64,
    pub n_acyclic: u64,
    pub n_good: u64,
    pub good: Vec<Vec<(NodeId, NodeId)>>,
}

/// Reconstruction report: the recovered facets and lattice, plus the
/// isomorphism verdict against ground truth when one was provided.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub facets: Vec<Vec<VertexId>>,
    pub lattice: LatticeFile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isomorphic_to_truth: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<VertexId>>,
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(Error::Json)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::{dual_graph, graph_of};
    use crate::labels::extract_labels;

    #[test]
    fn graph_file_roundtrip() {
        let lat = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        let g = dual_graph(&lat).unwrap();
        let json = to_json_pretty(&GraphFile::from_graph(&g)).unwrap();
        let back: GraphFile = from_json_str(&json).unwrap();
        assert_eq!(back.into_graph().unwrap(), g);
    }

    #[test]
    fn labels_file_roundtrip() {
        let lat = FaceLattice::build(&generate::pyramid(&generate::cube(2).unwrap()).unwrap()).unwrap();
        let labels = extract_labels(&lat).unwrap();
        let json = to_json_pretty(&LabelsFile::from_labels(&labels)).unwrap();
        let back: LabelsFile = from_json_str(&json).unwrap();
        assert_eq!(back.into_labels(), labels);
    }

    #[test]
    fn serialization_is_deterministic() {
        let lat = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        let a = to_json_pretty(&LatticeFile::from_lattice(&lat)).unwrap();
        let b = to_json_pretty(&LatticeFile::from_lattice(&lat)).unwrap();
        assert_eq!(a, b);
        let g = graph_of(&lat).unwrap();
        assert_eq!(
            to_json_pretty(&GraphFile::from_graph(&g)).unwrap(),
            to_json_pretty(&GraphFile::from_graph(&g)).unwrap()
        );
    }
}

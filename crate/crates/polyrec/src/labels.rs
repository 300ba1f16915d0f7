//! Edge-labeled vertex figures: for each vertex v, the family of edge sets
//! cut out by the facets through v. Extraction from a ground-truth lattice,
//! lattice generation from labels alone, and synthesis for simple polytopes
//! straight from the graph.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{vertices_of, FaceLattice, Mask, VertexId};

/// An edge identified by its canonical endpoint pair (a < b).
pub type Edge = (VertexId, VertexId);

fn canon(a: VertexId, b: VertexId) -> Edge {
    (a.min(b), a.max(b))
}

/// Per-vertex family of edge sets, one per facet through the vertex.
///
/// Labels at a vertex are sorted and distinct, each label a sorted list of
/// canonical edges, so labelings compare by structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VertexFigureLabels {
    labels: BTreeMap<VertexId, Vec<Vec<Edge>>>,
}

impl VertexFigureLabels {
    pub fn new(mut labels: BTreeMap<VertexId, Vec<Vec<Edge>>>) -> Self {
        for fam in labels.values_mut() {
            for l in fam.iter_mut() {
                l.sort_unstable();
                l.dedup();
            }
            fam.sort();
            fam.dedup();
        }
        VertexFigureLabels { labels }
    }

    pub fn at(&self, v: VertexId) -> Option<&[Vec<Edge>]> {
        self.labels.get(&v).map(|f| f.as_slice())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.labels.keys().copied()
    }

    pub fn as_map(&self) -> &BTreeMap<VertexId, Vec<Vec<Edge>>> {
        &self.labels
    }

    /// Checks consistency against a graph: labels exist exactly for the
    /// graph nodes, every labeled edge is a graph edge at that vertex, and
    /// the labels at each vertex cover all its edges.
    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        for v in 0..g.n_nodes() {
            let fam = self
                .labels
                .get(&v)
                .ok_or_else(|| Error::InvalidInput(format!("no labels for vertex {v}")))?;
            let incident: BTreeSet<Edge> =
                g.neighbors(v).iter().map(|&w| canon(v, w)).collect();
            let mut covered: BTreeSet<Edge> = BTreeSet::new();
            for label in fam {
                if label.is_empty() {
                    return Err(Error::InvalidInput(format!("empty label at vertex {v}")));
                }
                for &e in label {
                    if !incident.contains(&e) {
                        return Err(Error::InvalidInput(format!(
                            "label at vertex {v} uses edge {e:?} not incident to it"
                        )));
                    }
                    covered.insert(e);
                }
            }
            if covered != incident {
                return Err(Error::InvalidInput(format!(
                    "labels at vertex {v} do not cover all incident edges"
                )));
            }
        }
        if let Some((&v, _)) = self.labels.iter().find(|(v, _)| **v >= g.n_nodes()) {
            return Err(Error::InvalidInput(format!("labels mention unknown vertex {v}")));
        }
        Ok(())
    }
}

/// Ground-truth labeling of a lattice: each facet through v is mapped to
/// the set of lattice edges at v contained in it.
pub fn extract_labels(lat: &FaceLattice) -> Result<VertexFigureLabels> {
    if lat.dimension() < 1 {
        return Err(Error::InvalidInput("labels need dimension >= 1".into()));
    }
    let edges: Vec<Mask> = lat.faces_of_rank(1).collect();
    for &e in &edges {
        if e.count_ones() != 2 {
            return Err(Error::InvalidInput("rank-1 face with != 2 vertices".into()));
        }
    }
    let facets = lat.facet_masks();
    let mut labels: BTreeMap<VertexId, Vec<Vec<Edge>>> = BTreeMap::new();
    for v in 0..lat.n_vertices() {
        let vbit = 1u128 << v;
        let mut fam = Vec::new();
        for &f in &facets {
            if f & vbit == 0 {
                continue;
            }
            let label: Vec<Edge> = edges
                .iter()
                .filter(|&&e| e & vbit != 0 && e & f == e)
                .map(|&e| {
                    let vs = vertices_of(e);
                    canon(vs[0], vs[1])
                })
                .collect();
            fam.push(label);
        }
        labels.insert(v, fam);
    }
    Ok(VertexFigureLabels::new(labels))
}

/// Face lattice of the vertex figure at one vertex, encoded as edge subsets
/// of the incident-edge ground set. Elements are bitmasks over `ground`;
/// the family is intersection-closed and contains the empty set and the
/// full ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFigureLattice {
    pub vertex: VertexId,
    /// Sorted incident edges; bit i of an element refers to `ground[i]`.
    pub ground: Vec<Edge>,
    /// Sorted element masks.
    pub elements: Vec<u64>,
}

impl VertexFigureLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_edge_sets(&self) -> Vec<Vec<Edge>> {
        self.elements
            .iter()
            .map(|&m| {
                (0..self.ground.len())
                    .filter(|i| (m >> i) & 1 == 1)
                    .map(|i| self.ground[i])
                    .collect()
            })
            .collect()
    }
}

/// Intersection closure of the label family at `v`, plus the empty set and
/// the full edge set. The element count equals the number of non-empty
/// faces containing v (the top stands for the whole polytope).
pub fn vf_lattice_from_labels(v: VertexId, labels_at_v: &[Vec<Edge>]) -> Result<VertexFigureLattice> {
    let ground: Vec<Edge> = labels_at_v.iter().flatten().copied().sorted().dedup().collect();
    if ground.len() > 64 {
        return Err(Error::TooLarge(format!("vertex {v} has degree {} > 64", ground.len())));
    }
    let index: BTreeMap<Edge, usize> = ground.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let full: u64 = if ground.len() == 64 { !0 } else { (1u64 << ground.len()) - 1 };
    let mut set: BTreeSet<u64> = BTreeSet::new();
    set.insert(0);
    set.insert(full);
    let mut all: Vec<u64> = set.iter().copied().collect();
    let mut work: Vec<u64> = Vec::new();
    for label in labels_at_v {
        let m = label.iter().fold(0u64, |a, e| a | (1 << index[e]));
        if set.insert(m) {
            all.push(m);
            work.push(m);
        }
    }
    while let Some(x) = work.pop() {
        for i in 0..all.len() {
            let y = all[i] & x;
            if set.insert(y) {
                all.push(y);
                work.push(y);
            }
        }
    }
    Ok(VertexFigureLattice { vertex: v, ground, elements: set.into_iter().collect() })
}

/// Labels of a simple d-polytope synthesized from its d-regular graph: at
/// every vertex, all (d−1)-subsets of the d incident edges.
pub fn simple_labels_from_graph(g: &Graph) -> Result<VertexFigureLabels> {
    let d = g.regular_degree().ok_or_else(|| {
        Error::InvalidInput("not the graph of a simple polytope (non-regular)".into())
    })?;
    if d < 1 {
        return Err(Error::InvalidInput("graph has isolated vertices".into()));
    }
    let mut labels: BTreeMap<VertexId, Vec<Vec<Edge>>> = BTreeMap::new();
    for v in 0..g.n_nodes() {
        let incident: Vec<Edge> = g.neighbors(v).iter().map(|&w| canon(v, w)).collect();
        let fam: Vec<Vec<Edge>> = incident
            .iter()
            .copied()
            .combinations(d - 1)
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        labels.insert(v, fam);
    }
    Ok(VertexFigureLabels::new(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::graph_of;
    use crate::lattice::FaceLattice;

    fn lat(spec: &crate::lattice::PolytopeSpec) -> FaceLattice {
        FaceLattice::build(spec).unwrap()
    }

    #[test]
    fn cube_vertex_labels() {
        let cube = lat(&generate::cube(3).unwrap());
        let labels = extract_labels(&cube).unwrap();
        for v in 0..8 {
            let fam = labels.at(v).unwrap();
            assert_eq!(fam.len(), 3);
            assert!(fam.iter().all(|l| l.len() == 2));
            // any two labels share exactly one edge
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let a: BTreeSet<Edge> = fam[i].iter().copied().collect();
                    let b: BTreeSet<Edge> = fam[j].iter().copied().collect();
                    assert_eq!(a.intersection(&b).count(), 1);
                }
            }
        }
    }

    #[test]
    fn pyramid_apex_labels() {
        let pyramid = lat(&generate::pyramid(&generate::cube(2).unwrap()).unwrap());
        let labels = extract_labels(&pyramid).unwrap();
        let apex = labels.at(4).unwrap();
        assert_eq!(apex.len(), 4);
        assert!(apex.iter().all(|l| l.len() == 2));
        let vf = vf_lattice_from_labels(4, apex).unwrap();
        assert_eq!(vf.len(), 10); // a quadrangle's face lattice
    }

    #[test]
    fn triangle_labels_are_singletons() {
        let tri = lat(&generate::simplex(2).unwrap());
        let labels = extract_labels(&tri).unwrap();
        for v in 0..3 {
            let fam = labels.at(v).unwrap();
            assert_eq!(fam.len(), 2);
            assert!(fam.iter().all(|l| l.len() == 1));
            let vf = vf_lattice_from_labels(v, fam).unwrap();
            assert_eq!(vf.len(), 4);
        }
    }

    #[test]
    fn cube_vf_lattice_is_a_simplex() {
        let cube = lat(&generate::cube(3).unwrap());
        let labels = extract_labels(&cube).unwrap();
        let vf = vf_lattice_from_labels(0, labels.at(0).unwrap()).unwrap();
        // 8 elements: empty, 3 singletons, 3 pairs, top — a 2-simplex lattice
        assert_eq!(vf.len(), 8);
        let sizes: Vec<u32> = vf.elements.iter().map(|m| m.count_ones()).sorted().collect();
        assert_eq!(sizes, vec![0, 1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn vf_element_count_equals_faces_through_vertex() {
        for spec in [
            generate::cube(3).unwrap(),
            generate::pyramid(&generate::cube(2).unwrap()).unwrap(),
            generate::cross_polytope(3).unwrap(),
            generate::cyclic(4, 6).unwrap(),
        ] {
            let l = lat(&spec);
            let labels = extract_labels(&l).unwrap();
            for v in 0..l.n_vertices() {
                let vf = vf_lattice_from_labels(v, labels.at(v).unwrap()).unwrap();
                let faces_through = l
                    .faces()
                    .iter()
                    .filter(|&&m| m != 0 && m & (1u128 << v) != 0)
                    .count();
                assert_eq!(vf.len(), faces_through, "vertex {v} of {}", spec.name);
            }
        }
    }

    #[test]
    fn vf_closure_is_order_isomorphic_to_faces_through_vertex() {
        let l = lat(&generate::pyramid(&generate::cube(2).unwrap()).unwrap());
        let labels = extract_labels(&l).unwrap();
        let edges: Vec<Mask> = l.faces_of_rank(1).collect();
        for v in 0..l.n_vertices() {
            let vf = vf_lattice_from_labels(v, labels.at(v).unwrap()).unwrap();
            let vbit = 1u128 << v;
            // map each face through v to its edge set at v and compare
            let mut images: Vec<Vec<Edge>> = Vec::new();
            for &m in l.faces() {
                if m == 0 || m & vbit == 0 {
                    continue;
                }
                let img: Vec<Edge> = edges
                    .iter()
                    .filter(|&&e| e & vbit != 0 && e & m == e)
                    .map(|&e| {
                        let vs = vertices_of(e);
                        canon(vs[0], vs[1])
                    })
                    .collect();
                images.push(img.into_iter().sorted().collect());
            }
            images.sort();
            images.dedup();
            let mut elements = vf.element_edge_sets();
            elements.sort();
            assert_eq!(images.len(), vf.len(), "injectivity at vertex {v}");
            assert_eq!(images, elements, "vertex {v}");
        }
    }

    #[test]
    fn labels_biject_with_facets_through_vertex() {
        for spec in [generate::cube(3).unwrap(), generate::cyclic(4, 6).unwrap()] {
            let l = lat(&spec);
            let labels = extract_labels(&l).unwrap();
            let facets = l.facet_masks();
            for v in 0..l.n_vertices() {
                let through = facets.iter().filter(|&&f| f & (1u128 << v) != 0).count();
                assert_eq!(labels.at(v).unwrap().len(), through);
            }
        }
    }

    #[test]
    fn simple_labels_examples() {
        let q3 = graph_of(&lat(&generate::cube(3).unwrap())).unwrap();
        let synth = simple_labels_from_graph(&q3).unwrap();
        for v in 0..8 {
            let fam = synth.at(v).unwrap();
            assert_eq!(fam.len(), 3);
            assert!(fam.iter().all(|l| l.len() == 2));
        }

        let k4 = crate::graph::complete_graph(4);
        let synth = simple_labels_from_graph(&k4).unwrap();
        assert!(synth.at(0).unwrap().iter().all(|l| l.len() == 2));

        let star = Graph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(simple_labels_from_graph(&star).is_err());
    }

    #[test]
    fn extracted_equal_synthesized_on_simple_fixtures() {
        for spec in [
            generate::cube(3).unwrap(),
            generate::simplex(3).unwrap(),
            generate::prism(3).unwrap(),
            generate::cube(2).unwrap(),
        ] {
            let l = lat(&spec);
            let g = graph_of(&l).unwrap();
            assert_eq!(
                extract_labels(&l).unwrap(),
                simple_labels_from_graph(&g).unwrap(),
                "{}",
                spec.name
            );
        }
    }

    #[test]
    fn validate_against_graph() {
        let l = lat(&generate::cube(3).unwrap());
        let g = graph_of(&l).unwrap();
        let labels = extract_labels(&l).unwrap();
        labels.validate_against(&g).unwrap();

        // missing coverage: drop one vertex's labels
        let mut map = labels.as_map().clone();
        map.get_mut(&0).unwrap().clear();
        let broken = VertexFigureLabels::new(map);
        assert!(broken.validate_against(&g).is_err());
    }
}

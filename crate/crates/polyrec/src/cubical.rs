//! Cubical polytope machinery: cube audits, opposite-pair labeling, cap
//! detection and contraction, combinatorial capping, and reconstruction of
//! capped cubical polytopes from their dual graphs.
//!
//! Cap detection is purely combinatorial: a facet whose neighbor subgraph
//! in the dual graph is a complete graph minus a perfect matching is
//! treated as a cap. Whether an un-capping is geometrically realizable is
//! outside the scope of this toolkit; every rebuild is gated by an exact
//! dual-graph verification instead.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{
    complete_minus_perfect_matching, complete_minus_perfect_matching_induced, dual_graph, graph_of,
    Graph, NodeId,
};
use crate::lattice::{mask_of, vertices_of, FaceLattice, Mask, PolytopeSpec, VertexId};

// ---------------------------------------------------------------------------
// cubical complexes with explicit cube certificates
// ---------------------------------------------------------------------------

/// One facet of an abstract cubical complex: a vertex list plus a corner
/// code per vertex giving a bijection onto {0,1}^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeFacet {
    pub vertices: Vec<VertexId>,
    pub corners: Vec<u32>,
}

/// Abstract cubical complex. Unlike [`PolytopeSpec`] there is no
/// polytopality promise; each facet carries its own cube certificate,
/// verified on construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicalComplexSpec {
    pub name: String,
    pub n_vertices: u32,
    /// Dimension of each facet cube.
    pub cube_dim: u32,
    pub facets: Vec<CubeFacet>,
}

impl CubicalComplexSpec {
    pub fn new(
        name: impl Into<String>,
        n_vertices: u32,
        cube_dim: u32,
        facets: Vec<CubeFacet>,
    ) -> Result<Self> {
        let spec = CubicalComplexSpec { name: name.into(), n_vertices, cube_dim, facets };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let size = 1usize << self.cube_dim;
        if self.facets.is_empty() {
            return Err(Error::InvalidSpec("complex has no facets".into()));
        }
        let mut seen_sets = HashSet::new();
        for f in &self.facets {
            if f.vertices.len() != size || f.corners.len() != size {
                return Err(Error::InvalidSpec(format!(
                    "facet {:?} is not certified as a {}-cube ({} vertices expected)",
                    f.vertices, self.cube_dim, size
                )));
            }
            let mut corner_seen = vec![false; size];
            for &c in &f.corners {
                if c as usize >= size || corner_seen[c as usize] {
                    return Err(Error::InvalidSpec(format!(
                        "facet {:?} has an invalid corner assignment",
                        f.vertices
                    )));
                }
                corner_seen[c as usize] = true;
            }
            if let Some(&v) = f.vertices.iter().find(|&&v| v >= self.n_vertices) {
                return Err(Error::InvalidSpec(format!("vertex {v} out of range")));
            }
            if !seen_sets.insert({
                let mut s = f.vertices.clone();
                s.sort_unstable();
                s
            }) {
                return Err(Error::InvalidSpec("duplicate facet in complex".into()));
            }
        }
        Ok(())
    }

    /// All faces of the complex, as (dimension, vertex set) pairs: each
    /// subcube of each certified facet, deduplicated.
    pub fn faces(&self) -> Vec<(u32, Vec<VertexId>)> {
        let k = self.cube_dim;
        let mut seen: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        let mut out = Vec::new();
        for f in &self.facets {
            // fix a subset of coordinates to constant values
            for fixed in 0u32..(1 << k) {
                let free = k - fixed.count_ones();
                let mut vals = fixed;
                loop {
                    // vals iterates over subsets of `fixed` (assignments to
                    // the fixed coordinates)
                    let face: Vec<VertexId> = f
                        .vertices
                        .iter()
                        .zip(&f.corners)
                        .filter(|&(_, &c)| c & fixed == vals)
                        .map(|(&v, _)| v)
                        .collect();
                    let mut sorted = face;
                    sorted.sort_unstable();
                    if seen.insert(sorted.clone()) {
                        out.push((free, sorted));
                    }
                    if vals == 0 {
                        break;
                    }
                    vals = (vals - 1) & fixed;
                }
            }
        }
        out.sort();
        out
    }

    /// 1-skeleton of the complex.
    pub fn graph(&self) -> Graph {
        let mut edges = Vec::new();
        for (dim, vs) in self.faces() {
            if dim == 1 {
                edges.push((vs[0], vs[1]));
            }
        }
        Graph::new(self.n_vertices, edges).expect("certified complex has valid edges")
    }

    /// The face poset of the complex packaged as a [`FaceLattice`] (bottom
    /// and a formal top added) so that lattice validation can interrogate
    /// it.
    pub fn face_poset(&self) -> FaceLattice {
        let mut faces: Vec<Vec<VertexId>> = self.faces().into_iter().map(|(_, v)| v).collect();
        faces.push(Vec::new());
        faces.push((0..self.n_vertices).collect());
        FaceLattice::from_faces(self.n_vertices, faces).expect("complex faces are in range")
    }
}

/// A Möbius strip built out of three quadrangles. Its graph is bipartite,
/// yet the three-facet audit reports a violation; no polytope boundary can
/// do that.
pub fn moebius_strip() -> CubicalComplexSpec {
    CubicalComplexSpec::new(
        "moebius-strip",
        6,
        2,
        vec![
            CubeFacet { vertices: vec![0, 1, 4, 3], corners: vec![0, 1, 3, 2] },
            CubeFacet { vertices: vec![1, 2, 5, 4], corners: vec![0, 1, 3, 2] },
            CubeFacet { vertices: vec![2, 3, 0, 5], corners: vec![0, 1, 3, 2] },
        ],
    )
    .expect("fixture is valid")
}

// ---------------------------------------------------------------------------
// cube structure inside a lattice
// ---------------------------------------------------------------------------

/// Restriction of the lattice to the faces contained in `face`, relabeled
/// to local vertex ids 0..k (sorted order). Returns the sub-lattice and the
/// local → global vertex table.
pub fn facet_interval(lat: &FaceLattice, face: Mask) -> (FaceLattice, Vec<VertexId>) {
    let globals = vertices_of(face);
    let local_of: BTreeMap<VertexId, VertexId> =
        globals.iter().enumerate().map(|(i, &v)| (v, i as VertexId)).collect();
    let faces: Vec<Vec<VertexId>> = lat
        .faces()
        .iter()
        .filter(|&&m| m & face == m)
        .map(|&m| vertices_of(m).into_iter().map(|v| local_of[&v]).collect())
        .collect();
    let sub = FaceLattice::from_faces(globals.len() as u32, faces).expect("local ids are in range");
    (sub, globals)
}

/// Certificate that `facet` is a combinatorial cube: a corner code per
/// vertex of the facet (in sorted vertex order), or None.
pub fn cube_certificate(lat: &FaceLattice, facet: Mask) -> Option<Vec<u32>> {
    let k = lat.rank_of(facet)?;
    if k < 1 {
        return None;
    }
    let (interval, _) = facet_interval(lat, facet);
    let cube = FaceLattice::build(&generate::cube(k as u32).ok()?).ok()?;
    // cube(k) vertex ids are exactly the corner bit codes
    crate::lattice::lattice_isomorphic(&interval, &cube)
}

/// Every facet of the lattice is a combinatorial cube.
pub fn is_cubical(lat: &FaceLattice) -> bool {
    lat.dimension() >= 1
        && lat.facet_masks().iter().all(|&f| cube_certificate(lat, f).is_some())
}

/// The (d−1) pairs of disjoint ridges inside a combinatorial-cube facet.
/// Fails when the ridge structure of the facet is not cube-like.
pub fn opposite_ridges(lat: &FaceLattice, facet: Mask) -> Result<Vec<(Mask, Mask)>> {
    let d = lat.dimension();
    let rank = lat
        .rank_of(facet)
        .ok_or_else(|| Error::InvalidInput("facet not in lattice".into()))?;
    if rank != d - 1 {
        return Err(Error::InvalidInput(format!(
            "face {:?} is not a facet",
            vertices_of(facet)
        )));
    }
    let ridges: Vec<Mask> = lat.faces_of_rank(d - 2).filter(|&r| r & facet == r).collect();
    let expected = 2 * (d - 1) as usize;
    if ridges.len() != expected {
        return Err(Error::InvalidInput(format!(
            "facet {:?} has {} ridges, a (d-1)-cube has {expected}: not a combinatorial cube",
            vertices_of(facet),
            ridges.len()
        )));
    }
    let mut pairs = Vec::with_capacity(expected / 2);
    for (i, &r) in ridges.iter().enumerate() {
        let partners: Vec<usize> = ridges
            .iter()
            .enumerate()
            .filter(|&(j, &s)| j != i && r & s == 0)
            .map(|(j, _)| j)
            .collect();
        if partners.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "ridge {:?} of facet {:?} has {} disjoint partners: not a combinatorial cube",
                vertices_of(r),
                vertices_of(facet),
                partners.len()
            )));
        }
        if partners[0] > i {
            pairs.push((r, ridges[partners[0]]));
        }
    }
    Ok(pairs)
}

// ---------------------------------------------------------------------------
// audits
// ---------------------------------------------------------------------------

/// One named audit check. `applicable` is false when a dimension guard
/// exempts the input.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub checks: Vec<AuditCheck>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Bipartiteness audit on the 1-skeleton of a polytope boundary. The
/// boundary complex of a d-polytope has dimension d−1, so the audit only
/// applies when d ≥ 3; the boundary of a polygon is 1-dimensional and
/// exempt.
pub fn check_no_odd_cycles(lat: &FaceLattice) -> Result<AuditCheck> {
    let g = graph_of(lat)?;
    Ok(odd_cycle_check(&g, lat.dimension() >= 3))
}

/// Same audit on an abstract cubical complex (dimension guard at 2).
pub fn check_no_odd_cycles_complex(cx: &CubicalComplexSpec) -> AuditCheck {
    odd_cycle_check(&cx.graph(), cx.cube_dim >= 2)
}

fn odd_cycle_check(g: &Graph, applicable: bool) -> AuditCheck {
    let cycle = if applicable { g.find_odd_cycle() } else { None };
    AuditCheck {
        name: "no-odd-cycles".into(),
        applicable,
        pass: cycle.is_none(),
        details: match cycle {
            Some(c) => vec![format!("odd cycle: {c:?}")],
            None if applicable => vec![],
            None => vec!["skipped: 1-skeleton of a complex of dimension < 2".into()],
        },
    }
}

/// An ordered facet triple violating the three-facet condition: `ab` and
/// `bc` are opposite ridges of `b`, yet `ac` is a ridge as well.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreeFacetViolation {
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
    pub ac: Vec<VertexId>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThreeFacetReport {
    pub applicable: bool,
    pub violations: Vec<ThreeFacetViolation>,
    /// Violations deduplicated by the unordered facet triple.
    pub violation_classes: usize,
}

impl ThreeFacetReport {
    pub fn passed(&self) -> bool {
        !self.applicable || self.violations.is_empty()
    }

    pub fn to_check(&self) -> AuditCheck {
        AuditCheck {
            name: "three-facet-lemma".into(),
            applicable: self.applicable,
            pass: self.violations.is_empty(),
            details: self
                .violations
                .iter()
                .map(|v| {
                    format!(
                        "facets A={:?} B={:?} C={:?}: A∩B and B∩C opposite in B, but A∩C = {:?} is a ridge",
                        v.a, v.b, v.c, v.ac
                    )
                })
                .collect(),
        }
    }
}

fn three_facet_core(
    facets: &[Mask],
    is_ridge: impl Fn(Mask) -> bool,
    applicable: bool,
) -> ThreeFacetReport {
    let mut violations = Vec::new();
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    if applicable {
        for (bi, &b) in facets.iter().enumerate() {
            for (ai, &a) in facets.iter().enumerate() {
                if ai == bi {
                    continue;
                }
                let ab = a & b;
                if !is_ridge(ab) {
                    continue;
                }
                for (ci, &c) in facets.iter().enumerate() {
                    if ci == bi || ci <= ai {
                        continue;
                    }
                    let bc = b & c;
                    if !is_ridge(bc) || ab & bc != 0 {
                        continue;
                    }
                    let ac = a & c;
                    if is_ridge(ac) {
                        violations.push(ThreeFacetViolation {
                            a: vertices_of(a),
                            b: vertices_of(b),
                            c: vertices_of(c),
                            ac: vertices_of(ac),
                        });
                        let mut key = vec![ai, bi, ci];
                        key.sort_unstable();
                        classes.insert(key);
                    }
                }
            }
        }
    }
    ThreeFacetReport { applicable, violations, violation_classes: classes.len() }
}

/// For all facet triples (A, B, C) with A∩B and B∩C opposite ridges of B,
/// asserts that A∩C is not a ridge. Applies to cubical lattices of
/// dimension ≥ 3.
pub fn check_three_facet_lemma(lat: &FaceLattice) -> ThreeFacetReport {
    let d = lat.dimension();
    let facets = lat.facet_masks();
    let ridges: HashSet<Mask> = lat.faces_of_rank(d - 2).collect();
    three_facet_core(&facets, |m| ridges.contains(&m), d >= 3)
}

/// Complex version: ridges are the (k−1)-dimensional subcube faces.
pub fn check_three_facet_lemma_complex(cx: &CubicalComplexSpec) -> ThreeFacetReport {
    let facets: Vec<Mask> = cx.facets.iter().map(|f| mask_of(&f.vertices)).collect();
    let ridges: HashSet<Mask> = cx
        .faces()
        .into_iter()
        .filter(|(dim, _)| *dim + 1 == cx.cube_dim)
        .map(|(_, vs)| mask_of(&vs))
        .collect();
    three_facet_core(&facets, |m| ridges.contains(&m), cx.cube_dim >= 2)
}

/// Full audit of a polytope lattice: cube facets, bipartite and
/// triangle-free graph, dual-graph regularity, three-facet condition.
pub fn run_audit(lat: &FaceLattice) -> Result<AuditReport> {
    let d = lat.dimension();
    let mut checks = Vec::new();

    let cubical = is_cubical(lat);
    checks.push(AuditCheck {
        name: "facets-are-cubes".into(),
        applicable: d >= 2,
        pass: cubical,
        details: if cubical { vec![] } else { vec!["some facet is not a combinatorial cube".into()] },
    });

    checks.push(check_no_odd_cycles(lat)?);

    let g = graph_of(lat)?;
    let tri = d >= 3 && g.has_triangle();
    checks.push(AuditCheck {
        name: "triangle-free".into(),
        applicable: d >= 3,
        pass: !tri,
        details: if tri { vec!["graph contains a triangle".into()] } else { vec![] },
    });

    let dg = dual_graph(lat)?;
    let want = 2 * (d - 1).max(0) as usize;
    let regular = dg.is_k_regular(want);
    checks.push(AuditCheck {
        name: "dual-graph-regular".into(),
        applicable: d >= 2 && cubical,
        pass: regular,
        details: if regular {
            vec![format!("dual graph is {want}-regular")]
        } else {
            vec![format!("dual graph is not {want}-regular")]
        },
    });

    checks.push(check_three_facet_lemma(lat).to_check());
    Ok(AuditReport { checks })
}

/// Audit of an abstract cubical complex (no dual-graph promises).
pub fn run_audit_complex(cx: &CubicalComplexSpec) -> AuditReport {
    let checks = vec![
        AuditCheck {
            name: "facets-are-cubes".into(),
            applicable: true,
            pass: true,
            details: vec!["cube certificates verified on load".into()],
        },
        check_no_odd_cycles_complex(cx),
        check_three_facet_lemma_complex(cx).to_check(),
    ];
    AuditReport { checks }
}

// ---------------------------------------------------------------------------
// opposite pairs and dual-vertex labels
// ---------------------------------------------------------------------------

/// Edge labeling of the vertex figure of `facet` in the dual polytope,
/// computed from the primal lattice: the label family consists of the
/// (d−1)-subsets of the neighbor set Ω whose members pairwise intersect
/// non-trivially. Labels are sets of dual-graph edges (pairs of dual node
/// ids in facet order).
pub fn opposite_pairs_labeling(lat: &FaceLattice, facet: Mask) -> Result<Vec<Vec<(NodeId, NodeId)>>> {
    let d = lat.dimension();
    let facets = lat.facet_masks();
    let f_id = facets
        .iter()
        .position(|&f| f == facet)
        .ok_or_else(|| Error::InvalidInput("not a facet of the lattice".into()))?;
    let omega: Vec<usize> = facets
        .iter()
        .enumerate()
        .filter(|&(i, &n)| i != f_id && lat.rank_of(n & facet) == Some(d - 2))
        .map(|(i, _)| i)
        .collect();
    let mut labels: Vec<Vec<(NodeId, NodeId)>> = Vec::new();
    for subset in omega.iter().combinations((d - 1) as usize) {
        let pairwise = subset
            .iter()
            .tuple_combinations()
            .all(|(&&i, &&j)| facets[i] & facets[j] != 0);
        if pairwise {
            let mut label: Vec<(NodeId, NodeId)> = subset
                .iter()
                .map(|&&i| {
                    let (a, b) = (f_id as NodeId, i as NodeId);
                    (a.min(b), a.max(b))
                })
                .collect();
            label.sort_unstable();
            labels.push(label);
        }
    }
    labels.sort();
    Ok(labels)
}

// ---------------------------------------------------------------------------
// caps: detection, contraction, capping
// ---------------------------------------------------------------------------

/// The opposite pairs among a cap's neighbors (the missing matching).
pub type OppositeMatching = Vec<(NodeId, NodeId)>;

/// Nodes of a dual graph whose neighbor-induced subgraph is a complete
/// graph minus a perfect matching, with that matching (the opposite pairs)
/// attached. The input must be 2(d−1)-regular for some d ≥ 2.
pub fn detect_caps(dg: &Graph) -> Result<Vec<(NodeId, OppositeMatching)>> {
    let k = dg
        .regular_degree()
        .ok_or_else(|| Error::InvalidInput("dual graph is not regular".into()))?;
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "degree {k} is not 2(d-1) for any d >= 2"
        )));
    }
    let mut out = Vec::new();
    for v in 0..dg.n_nodes() {
        let nb = dg.neighbors(v).to_vec();
        if let Some(matching) = complete_minus_perfect_matching_induced(&dg.induced(&nb)) {
            out.push((v, matching));
        }
    }
    Ok(out)
}

/// Bookkeeping for one cap contraction.
#[derive(Clone, Debug)]
pub struct ContractionRecord {
    /// Ω ∪ {cap}, sorted.
    pub contracted: Vec<NodeId>,
    /// Node id of the replacement node in the contracted graph.
    pub replacement: NodeId,
    /// The opposite-pair matching on Ω (parent ids).
    pub matching: Vec<(NodeId, NodeId)>,
    /// Old id → new id for the surviving nodes.
    pub node_map: BTreeMap<NodeId, NodeId>,
}

/// Contracts Ω ∪ {cap} to a single node. Surviving nodes keep their
/// relative order and are renumbered from 0; the replacement node gets the
/// last id and is adjacent to every external neighbor of Ω.
pub fn contract_cap(
    dg: &Graph,
    cap: NodeId,
    matching: &[(NodeId, NodeId)],
) -> (Graph, ContractionRecord) {
    let mut contracted: Vec<NodeId> = dg.neighbors(cap).to_vec();
    contracted.push(cap);
    contracted.sort_unstable();
    let gone: BTreeSet<NodeId> = contracted.iter().copied().collect();
    let kept: Vec<NodeId> = (0..dg.n_nodes()).filter(|v| !gone.contains(v)).collect();
    let node_map: BTreeMap<NodeId, NodeId> =
        kept.iter().enumerate().map(|(i, &v)| (v, i as NodeId)).collect();
    let replacement = kept.len() as NodeId;

    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for &(a, b) in dg.edges() {
        match (gone.contains(&a), gone.contains(&b)) {
            (false, false) => edges.push((node_map[&a], node_map[&b])),
            (true, false) => {
                if a != cap {
                    edges.push((replacement, node_map[&b]));
                }
            }
            (false, true) => {
                if b != cap {
                    edges.push((node_map[&a], replacement));
                }
            }
            (true, true) => {}
        }
    }
    let graph = Graph::new(replacement + 1, edges).expect("contraction produces a valid graph");
    (
        graph,
        ContractionRecord {
            contracted,
            replacement,
            matching: matching.to_vec(),
            node_map,
        },
    )
}

/// Combinatorial capping: glue a cube onto a combinatorial-cube facet. Adds
/// one mirror vertex per facet vertex (appended in sorted order of the
/// originals), replaces the facet by the cap (all mirrors) and one side
/// facet r ∪ r′ per ridge r of the facet.
pub fn cap_facet(lat: &FaceLattice, facet: Mask) -> Result<PolytopeSpec> {
    let pairs = opposite_ridges(lat, facet)?;
    let base = lat.n_vertices();
    let originals = vertices_of(facet);
    let mirror_of: BTreeMap<VertexId, VertexId> = originals
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, base + i as VertexId))
        .collect();

    let mut facets: Vec<Vec<VertexId>> = lat
        .facet_masks()
        .iter()
        .filter(|&&f| f != facet)
        .map(|&f| vertices_of(f))
        .collect();
    facets.push(mirror_of.values().copied().collect());
    for (r, s) in pairs {
        for ridge in [r, s] {
            let mut side = vertices_of(ridge);
            let mirrors: Vec<VertexId> = side.iter().map(|v| mirror_of[v]).collect();
            side.extend(mirrors);
            facets.push(side);
        }
    }
    PolytopeSpec::new("capped", base + originals.len() as u32, facets)
}

// ---------------------------------------------------------------------------
// reconstruction from the dual graph
// ---------------------------------------------------------------------------

/// Result of a capped reconstruction: the rebuilt lattice plus the facet
/// assigned to each input dual-graph node (verified to be a dual-graph
/// isomorphism).
#[derive(Clone, Debug)]
pub struct CappedReconstruction {
    pub lattice: FaceLattice,
    pub facet_of_node: Vec<Mask>,
}

/// Rebuilds the face lattice of a capped cubical polytope from its dual
/// graph: recognize the cube base case, otherwise detect a cap, contract
/// it, recurse, re-cap the corresponding facet, and align the side facets
/// with the contracted neighbors through their external adjacencies. The
/// final node → facet map is verified against the input graph; failure is
/// an error, never a silent success.
pub fn reconstruct_capped(dg: &Graph) -> Result<CappedReconstruction> {
    let k = dg
        .regular_degree()
        .ok_or_else(|| Error::NotCapped("dual graph is not regular".into()))?;
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::NotCapped(format!("degree {k} is not 2(d-1) for any d >= 2")));
    }
    let d = (k as u32) / 2 + 1;

    // base case: the dual graph of the d-cube
    if dg.n_nodes() == 2 * d {
        if let Some(matching) = complete_minus_perfect_matching(dg) {
            let lat = FaceLattice::build(&generate::cube(d)?)?;
            let facets = lat.facet_masks();
            let mut cube_pairs: Vec<(Mask, Mask)> = Vec::new();
            for (i, &f) in facets.iter().enumerate() {
                for &g in facets.iter().skip(i + 1) {
                    if f & g == 0 {
                        cube_pairs.push((f, g));
                    }
                }
            }
            if cube_pairs.len() != d as usize {
                return Err(Error::Internal("cube facet pairing failed".into()));
            }
            let mut facet_of_node = vec![0 as Mask; dg.n_nodes() as usize];
            for (t, &(a, b)) in matching.iter().enumerate() {
                facet_of_node[a as usize] = cube_pairs[t].0;
                facet_of_node[b as usize] = cube_pairs[t].1;
            }
            verify_dual_assignment(dg, &lat, &facet_of_node)?;
            return Ok(CappedReconstruction { lattice: lat, facet_of_node });
        }
    }

    let caps = detect_caps(dg)?;
    let (cap, matching) = caps
        .first()
        .ok_or_else(|| Error::NotCapped("no cap found and not a cube base case".into()))?;
    let (contracted, record) = contract_cap(dg, *cap, matching);
    let inner = reconstruct_capped(&contracted)?;

    let g_mask = inner.facet_of_node[record.replacement as usize];
    let q_lat = &inner.lattice;
    let spec = cap_facet(q_lat, g_mask)?;
    let p_lat = FaceLattice::build(&spec)?;

    // mirror ids as assigned by cap_facet
    let g_vertices = vertices_of(g_mask);
    let base = q_lat.n_vertices();
    let mirror_mask = |m: Mask| -> Mask {
        vertices_of(m)
            .into_iter()
            .map(|v| {
                let i = g_vertices.binary_search(&v).expect("ridge vertex lies in facet");
                1u128 << (base + i as u32)
            })
            .fold(0, |a, b| a | b)
    };
    let cap_mask: Mask = mirror_mask(g_mask);

    let mut facet_of_node = vec![0 as Mask; dg.n_nodes() as usize];
    for (&old, &new) in &record.node_map {
        facet_of_node[old as usize] = inner.facet_of_node[new as usize];
    }
    facet_of_node[*cap as usize] = cap_mask;

    // align Ω members with side facets through their external neighborhoods
    let omega: Vec<NodeId> = dg.neighbors(*cap).to_vec();
    let external: BTreeSet<NodeId> = record.node_map.keys().copied().collect();
    let p_facets = p_lat.facet_masks();
    let ridge_rank = p_lat.dimension() - 2;
    let adjacent = |x: Mask, y: Mask| p_lat.rank_of(x & y) == Some(ridge_rank);

    let side_masks: Vec<Mask> = opposite_ridges(q_lat, g_mask)?
        .into_iter()
        .flat_map(|(r, s)| [r, s])
        .map(|r| r | mirror_mask(r))
        .collect();
    let external_facets: BTreeSet<Mask> = external.iter().map(|&x| facet_of_node[x as usize]).collect();

    let mut side_by_key: BTreeMap<Vec<Mask>, Vec<Mask>> = BTreeMap::new();
    for &s in &side_masks {
        debug_assert!(p_facets.contains(&s));
        let key: Vec<Mask> = p_facets
            .iter()
            .filter(|&&x| external_facets.contains(&x) && adjacent(s, x))
            .copied()
            .collect();
        side_by_key.entry(key).or_default().push(s);
    }
    let mut omega_by_key: BTreeMap<Vec<Mask>, Vec<NodeId>> = BTreeMap::new();
    for &w in &omega {
        let key: Vec<Mask> = dg
            .neighbors(w)
            .iter()
            .filter(|x| external.contains(x))
            .map(|&x| facet_of_node[x as usize])
            .sorted()
            .collect();
        omega_by_key.entry(key).or_default().push(w);
    }
    for (key, mut sides) in side_by_key {
        let nodes = omega_by_key.remove(&key).ok_or_else(|| {
            Error::Internal(format!(
                "side-facet alignment failed: no dual node matches external neighborhood of {} facets",
                key.len()
            ))
        })?;
        if nodes.len() != sides.len() {
            return Err(Error::Internal("side-facet alignment is not one-to-one".into()));
        }
        sides.sort_by_key(|&m| vertices_of(m));
        for (w, s) in nodes.into_iter().zip(sides) {
            facet_of_node[w as usize] = s;
        }
    }
    if !omega_by_key.is_empty() {
        return Err(Error::Internal("side-facet alignment left unmatched neighbors".into()));
    }

    verify_dual_assignment(dg, &p_lat, &facet_of_node)?;
    Ok(CappedReconstruction { lattice: p_lat, facet_of_node })
}

/// Checks that `facet_of_node` is a graph isomorphism between `dg` and the
/// dual graph of `lat`.
fn verify_dual_assignment(dg: &Graph, lat: &FaceLattice, facet_of_node: &[Mask]) -> Result<()> {
    let facets = lat.facet_masks();
    if facet_of_node.len() != facets.len() {
        return Err(Error::Internal("facet assignment has wrong size".into()));
    }
    let assigned: HashSet<Mask> = facet_of_node.iter().copied().collect();
    if assigned.len() != facets.len() || !facets.iter().all(|f| assigned.contains(f)) {
        return Err(Error::Internal("facet assignment is not a bijection".into()));
    }
    let ridge_rank = lat.dimension() - 2;
    for a in 0..dg.n_nodes() {
        for b in (a + 1)..dg.n_nodes() {
            let dual_adjacent = lat
                .rank_of(facet_of_node[a as usize] & facet_of_node[b as usize])
                == Some(ridge_rank);
            if dual_adjacent != dg.has_edge(a, b) {
                return Err(Error::Internal(format!(
                    "rebuilt dual graph disagrees with the input at nodes ({a},{b})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::labels::extract_labels;
    use crate::lattice::{lattice_isomorphic, validate_polytopality};

    fn lat(spec: &PolytopeSpec) -> FaceLattice {
        FaceLattice::build(spec).unwrap()
    }

    fn stacked_cubes() -> FaceLattice {
        let cube = lat(&generate::cube(3).unwrap());
        let facet = cube.facet_masks()[0];
        lat(&cap_facet(&cube, facet).unwrap())
    }

    #[test]
    fn moebius_is_bipartite_but_fails_three_facet() {
        let cx = moebius_strip();
        assert!(cx.graph().is_bipartite());
        let check = check_no_odd_cycles_complex(&cx);
        assert!(check.applicable && check.pass);

        let report = check_three_facet_lemma_complex(&cx);
        assert!(report.applicable);
        assert!(!report.violations.is_empty());
        assert_eq!(report.violation_classes, 1);
        // one witness has B = {0,1,3,4} with A∩B = {1,4}, B∩C = {0,3}
        // opposite in B, while A∩C = {2,5} is a shared edge
        assert!(report
            .violations
            .iter()
            .any(|v| v.b == vec![0, 1, 3, 4] && v.ac == vec![2, 5]));
    }

    #[test]
    fn moebius_face_poset_fails_diamond() {
        let poset = moebius_strip().face_poset();
        let report = validate_polytopality(&poset);
        assert!(
            report.violations.iter().any(|v| v.contains("diamond")),
            "{:?}",
            report.violations
        );
    }

    #[test]
    fn three_facet_lemma_on_cube() {
        let c = lat(&generate::cube(3).unwrap());
        let report = check_three_facet_lemma(&c);
        assert!(report.applicable && report.violations.is_empty());
        // straight-line triples have empty A∩C: opposite facets are disjoint
        let facets = c.facet_masks();
        for &a in &facets {
            for &c2 in &facets {
                if a != c2 && a & c2 == 0 {
                    assert_eq!(c.rank_of(a & c2), Some(-1));
                }
            }
        }
    }

    #[test]
    fn one_dimensional_complex_is_exempt_from_odd_cycle_audit() {
        // the boundary of a triangle: three segments forming an odd cycle,
        // but a 1-dimensional complex is outside the audit's scope
        let cx = CubicalComplexSpec::new(
            "triangle-boundary",
            3,
            1,
            vec![
                CubeFacet { vertices: vec![0, 1], corners: vec![0, 1] },
                CubeFacet { vertices: vec![1, 2], corners: vec![0, 1] },
                CubeFacet { vertices: vec![0, 2], corners: vec![0, 1] },
            ],
        )
        .unwrap();
        assert!(!cx.graph().is_bipartite());
        let check = check_no_odd_cycles_complex(&cx);
        assert!(!check.applicable);
        assert!(check.pass);
    }

    #[test]
    fn polygon_audit_dimension_guard() {
        let square = lat(&generate::cube(2).unwrap());
        let check = check_no_odd_cycles(&square).unwrap();
        assert!(!check.applicable);
        let pentagon = lat(&generate::cyclic(2, 5).unwrap());
        let check = check_no_odd_cycles(&pentagon).unwrap();
        assert!(!check.applicable, "polygon boundaries are 1-dimensional complexes");
    }

    #[test]
    fn opposite_ridges_examples() {
        let c3 = lat(&generate::cube(3).unwrap());
        let f = c3.facet_masks()[0];
        let pairs = opposite_ridges(&c3, f).unwrap();
        assert_eq!(pairs.len(), 2);
        for (r, s) in &pairs {
            assert_eq!(r & s, 0);
            assert_eq!(r.count_ones(), 2);
        }

        let c4 = lat(&generate::cube(4).unwrap());
        let f = c4.facet_masks()[0];
        let pairs = opposite_ridges(&c4, f).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|(r, _)| r.count_ones() == 4));

        let s3 = lat(&generate::simplex(3).unwrap());
        let f = s3.facet_masks()[0];
        assert!(opposite_ridges(&s3, f).is_err());
    }

    #[test]
    fn cube_certificates() {
        let c3 = lat(&generate::cube(3).unwrap());
        assert!(is_cubical(&c3));
        let s3 = lat(&generate::simplex(3).unwrap());
        assert!(!is_cubical(&s3));
        let stacked = stacked_cubes();
        assert!(is_cubical(&stacked));
    }

    #[test]
    fn cap_facet_counts() {
        let cube = lat(&generate::cube(3).unwrap());
        let spec = cap_facet(&cube, cube.facet_masks()[0]).unwrap();
        assert_eq!(spec.n_vertices, 12);
        assert_eq!(spec.facets.len(), 10);

        // cap twice on disjoint (opposite) facets
        let once = lat(&spec);
        let opposite = once
            .facet_masks()
            .into_iter()
            .find(|&f| f & mask_of(&(0..8).collect::<Vec<_>>()) == f && {
                // a facet of the original cube disjoint from the first cap's base
                let first = cube.facet_masks()[0];
                f & first == 0
            })
            .unwrap();
        let twice = cap_facet(&once, opposite).unwrap();
        assert_eq!(twice.n_vertices, 16);
        assert_eq!(twice.facets.len(), 14);
        assert!(is_cubical(&lat(&twice)));
    }

    #[test]
    fn cap_facet_rejects_non_cube() {
        let s3 = lat(&generate::simplex(3).unwrap());
        assert!(cap_facet(&s3, s3.facet_masks()[0]).is_err());
    }

    #[test]
    fn detect_caps_examples() {
        // stacked cubes: exactly the two "end" facets are caps
        let stacked = stacked_cubes();
        let dg = dual_graph(&stacked).unwrap();
        let caps = detect_caps(&dg).unwrap();
        assert_eq!(caps.len(), 2);

        // the cube's own dual: every node is a cap signal (base-case graph)
        let octa = dual_graph(&lat(&generate::cube(3).unwrap())).unwrap();
        let caps = detect_caps(&octa).unwrap();
        assert_eq!(caps.len(), 6);
        for (_, m) in caps {
            assert_eq!(m.len(), 2);
        }
    }

    #[test]
    fn detect_caps_rejects_irregular() {
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(detect_caps(&path).is_err());
        let k4 = crate::graph::complete_graph(4); // 3-regular, odd
        assert!(detect_caps(&k4).is_err());
    }

    #[test]
    fn contract_cap_examples() {
        let stacked = stacked_cubes();
        let dg = dual_graph(&stacked).unwrap();
        let caps = detect_caps(&dg).unwrap();
        let (cap, matching) = &caps[0];
        let (contracted, record) = contract_cap(&dg, *cap, matching);
        assert_eq!(contracted.n_nodes(), 6);
        assert!(contracted.is_k_regular(4));
        let octa = crate::graph::graph_of(&lat(&generate::cross_polytope(3).unwrap())).unwrap();
        assert!(crate::graph::graph_isomorphic(&contracted, &octa).is_some());
        assert_eq!(record.contracted.len(), 5);
    }

    #[test]
    fn opposite_pairs_labeling_matches_dual_extract() {
        for spec in [
            generate::cube(3).unwrap(),
            generate::cube(4).unwrap(),
            generate::random_capped(3, 2, 5).unwrap().0,
        ] {
            let l = lat(&spec);
            let dual = l.dual_lattice();
            let dual_labels = extract_labels(&dual).unwrap();
            for (i, &f) in l.facet_masks().iter().enumerate() {
                let from_pairs = opposite_pairs_labeling(&l, f).unwrap();
                let from_dual = dual_labels.at(i as u32).unwrap().to_vec();
                assert_eq!(from_pairs, from_dual, "facet {i} of {}", spec.name);
            }
        }
    }

    #[test]
    fn cube_facet_labeling_is_a_quadrangle() {
        let c3 = lat(&generate::cube(3).unwrap());
        let f = c3.facet_masks()[0];
        let labels = opposite_pairs_labeling(&c3, f).unwrap();
        // the 4 adjacent pairs among the 4 neighbors: a quadrangle's edges
        assert_eq!(labels.len(), 4);
        assert!(labels.iter().all(|l| l.len() == 2));

        let c4 = lat(&generate::cube(4).unwrap());
        let f = c4.facet_masks()[0];
        let labels = opposite_pairs_labeling(&c4, f).unwrap();
        // octahedron facets: 2^{d-1} = 8 triples
        assert_eq!(labels.len(), 8);
        assert!(labels.iter().all(|l| l.len() == 3));
    }

    #[test]
    fn reconstruct_base_case() {
        let octa = dual_graph(&lat(&generate::cube(3).unwrap())).unwrap();
        let rec = reconstruct_capped(&octa).unwrap();
        let cube = lat(&generate::cube(3).unwrap());
        assert!(lattice_isomorphic(&rec.lattice, &cube).is_some());
    }

    #[test]
    fn reconstruct_stacked_cubes() {
        let stacked = stacked_cubes();
        let dg = dual_graph(&stacked).unwrap();
        let rec = reconstruct_capped(&dg).unwrap();
        assert!(lattice_isomorphic(&rec.lattice, &stacked).is_some());
    }

    #[test]
    fn reconstruct_polygons() {
        // capping an edge of a square gives a hexagon; its dual graph is C6
        let square = lat(&generate::cube(2).unwrap());
        let hexagon = lat(&cap_facet(&square, square.facet_masks()[0]).unwrap());
        let dg = dual_graph(&hexagon).unwrap();
        let rec = reconstruct_capped(&dg).unwrap();
        assert!(lattice_isomorphic(&rec.lattice, &hexagon).is_some());
    }

    #[test]
    fn reconstruct_random_capped_roundtrip() {
        for (d, caps, seed) in [(3u32, 3u32, 11u64), (4, 2, 12)] {
            let (spec, _) = generate::random_capped(d, caps, seed).unwrap();
            let l = lat(&spec);
            let dg = dual_graph(&l).unwrap();
            let rec = reconstruct_capped(&dg).unwrap();
            assert!(
                lattice_isomorphic(&rec.lattice, &l).is_some(),
                "round trip failed for d={d} caps={caps} seed={seed}"
            );
        }
    }

    #[test]
    fn reconstruct_rejects_non_capped() {
        let k5 = crate::graph::complete_graph(5); // 4-regular but not a capped dual
        let err = reconstruct_capped(&k5).unwrap_err();
        assert!(matches!(err, Error::NotCapped(_)));
        let k4 = crate::graph::complete_graph(4); // odd regularity
        assert!(reconstruct_capped(&k4).is_err());
    }

    #[test]
    fn detect_caps_finds_last_added_cap() {
        for seed in [1u64, 2, 3] {
            let (spec, log) = generate::random_capped(3, 3, seed).unwrap();
            let l = lat(&spec);
            let dg = dual_graph(&l).unwrap();
            let caps = detect_caps(&dg).unwrap();
            // the last capped facet's cap is the mirror set appended last
            let last_cap_mask: Mask = {
                let k = log.capped_facets.last().unwrap().len() as u32;
                let base = spec.n_vertices - k;
                vertices_of(((1u128 << k) - 1) << base).iter().fold(0, |a, &v| a | (1u128 << v))
            };
            let facets = l.facet_masks();
            let cap_node = facets.iter().position(|&f| f == last_cap_mask).unwrap() as NodeId;
            assert!(
                caps.iter().any(|(v, _)| *v == cap_node),
                "last-added cap not detected for seed {seed}"
            );
        }
    }
}

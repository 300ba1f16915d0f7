//! Face lattices built from facet–vertex incidences.
//!
//! A polytope is described combinatorially by its facets, each a set of
//! vertex ids. The full face lattice is the closure of the facet family
//! under pairwise intersection, together with the empty face at the bottom
//! and the whole vertex set at the top. Ranks are recomputed from the
//! containment order (longest chain from the bottom), never trusted from
//! the input.
//!
//! Faces are canonically sorted vertex-id sets; all orderings in this crate
//! are lexicographic on those sets, so every pipeline built on top is
//! deterministic.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Faces are stored as bitmasks over vertex ids, which caps instances at
/// 128 vertices. Desk-scale inputs stay well below that.
pub type Mask = u128;

pub const MAX_VERTICES: u32 = 128;

pub fn mask_of(vertices: &[VertexId]) -> Mask {
    vertices.iter().fold(0, |m, &v| m | (1u128 << v))
}

pub fn vertices_of(mask: Mask) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

/// Named facet–vertex incidence description; the universal input format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub name: String,
    pub n_vertices: u32,
    /// Each facet is a sorted list of vertex ids in `0..n_vertices`.
    pub facets: Vec<Vec<VertexId>>,
}

impl PolytopeSpec {
    /// Builds a normalized spec (facets sorted internally and as a list)
    /// and validates the input invariants.
    pub fn new(name: impl Into<String>, n_vertices: u32, facets: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut spec = PolytopeSpec { name: name.into(), n_vertices, facets };
        spec.normalize();
        spec.validate()?;
        Ok(spec)
    }

    /// Sorts and deduplicates each facet and sorts the facet list.
    pub fn normalize(&mut self) {
        for f in &mut self.facets {
            f.sort_unstable();
            f.dedup();
        }
        self.facets.sort();
    }

    /// Checks the input invariants: ids in range, facets non-empty and
    /// proper, no duplicate facets, no facet contained in another, every
    /// vertex covered by some facet.
    pub fn validate(&self) -> Result<()> {
        if self.n_vertices == 0 {
            return Err(Error::InvalidSpec("no vertices".into()));
        }
        if self.n_vertices > MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "{} vertices exceeds the {MAX_VERTICES}-vertex limit",
                self.n_vertices
            )));
        }
        if self.facets.is_empty() {
            return Err(Error::InvalidSpec("empty facet list".into()));
        }
        let full: Mask = if self.n_vertices == 128 { !0 } else { (1u128 << self.n_vertices) - 1 };
        let mut masks = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if f.is_empty() {
                return Err(Error::InvalidSpec("empty facet".into()));
            }
            if f.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSpec(format!("facet {f:?} is not sorted/unique")));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= self.n_vertices) {
                return Err(Error::InvalidSpec(format!("facet {f:?} uses vertex {v} out of range")));
            }
            let m = mask_of(f);
            if m == full {
                return Err(Error::InvalidSpec(format!(
                    "facet {f:?} equals the whole vertex set"
                )));
            }
            masks.push(m);
        }
        for i in 0..masks.len() {
            for j in 0..masks.len() {
                if i != j {
                    if masks[i] == masks[j] {
                        return Err(Error::InvalidSpec(format!(
                            "duplicate facet {:?}",
                            self.facets[i]
                        )));
                    }
                    if masks[i] & masks[j] == masks[i] && i < j {
                        return Err(Error::InvalidSpec(format!(
                            "facet {:?} is contained in facet {:?}",
                            self.facets[i], self.facets[j]
                        )));
                    }
                }
            }
        }
        let covered = masks.iter().fold(0u128, |a, m| a | m);
        if covered != full {
            let missing = vertices_of(full & !covered);
            return Err(Error::InvalidSpec(format!("vertices {missing:?} lie on no facet")));
        }
        Ok(())
    }

    pub fn facet_masks(&self) -> Vec<Mask> {
        self.facets.iter().map(|f| mask_of(f)).collect()
    }
}

/// Graded lattice of faces, each face a set of vertex ids.
///
/// Contains the empty face (rank −1) and the top face (all vertices,
/// rank = dimension). Stored sorted by (rank, vertex set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    n_vertices: u32,
    faces: Vec<Mask>,
    ranks: Vec<i32>,
    index: HashMap<Mask, usize>,
}

impl FaceLattice {
    /// Intersection closure of the facet family, plus top and bottom.
    pub fn build(spec: &PolytopeSpec) -> Result<Self> {
        spec.validate()?;
        let full: Mask = if spec.n_vertices == 128 { !0 } else { (1u128 << spec.n_vertices) - 1 };
        let mut set: HashSet<Mask> = HashSet::new();
        set.insert(0);
        set.insert(full);
        let mut all: Vec<Mask> = vec![0, full];
        let mut work: Vec<Mask> = Vec::new();
        for m in spec.facet_masks() {
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
        Ok(Self::assemble(spec.n_vertices, all))
    }

    /// Wraps an explicit face family as a lattice-like structure without
    /// adding anything. No validity promise: pair with
    /// [`validate_polytopality`] when the family is untrusted.
    pub fn from_faces(n_vertices: u32, faces: impl IntoIterator<Item = Vec<VertexId>>) -> Result<Self> {
        if n_vertices > MAX_VERTICES {
            return Err(Error::TooLarge(format!(
                "{n_vertices} vertices exceeds the {MAX_VERTICES}-vertex limit"
            )));
        }
        let mut set = HashSet::new();
        for f in faces {
            if let Some(&v) = f.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::InvalidSpec(format!("face {f:?} uses vertex {v} out of range")));
            }
            set.insert(mask_of(&f));
        }
        Ok(Self::assemble(n_vertices, set.into_iter().collect()))
    }

    /// Ranks every face by longest chain from the bottom and sorts faces by
    /// (rank, vertex set).
    fn assemble(n_vertices: u32, mut faces: Vec<Mask>) -> Self {
        faces.sort_by_key(|m| m.count_ones());
        faces.dedup();
        // faces is sorted by popcount, so proper subsets precede supersets
        let mut rank_by_mask: HashMap<Mask, i32> = HashMap::with_capacity(faces.len());
        let mut ranked: Vec<(Mask, i32)> = Vec::with_capacity(faces.len());
        for &f in &faces {
            let mut r = if f == 0 { -1 } else { i32::MIN };
            for &(g, rg) in &ranked {
                if g != f && g & f == g && rg + 1 > r {
                    r = rg + 1;
                }
            }
            if r == i32::MIN {
                // no proper sub-face present (family without the empty set)
                r = 0;
            }
            ranked.push((f, r));
            rank_by_mask.insert(f, r);
        }
        let mut order: Vec<(i32, Vec<VertexId>, Mask)> =
            ranked.iter().map(|&(m, r)| (r, vertices_of(m), m)).collect();
        order.sort();
        let faces: Vec<Mask> = order.iter().map(|t| t.2).collect();
        let ranks: Vec<i32> = order.iter().map(|t| t.0).collect();
        let index = faces.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        FaceLattice { n_vertices, faces, ranks, index }
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    pub fn full_mask(&self) -> Mask {
        if self.n_vertices == 128 { !0 } else { (1u128 << self.n_vertices) - 1 }
    }

    pub fn faces(&self) -> &[Mask] {
        &self.faces
    }

    pub fn ranks(&self) -> &[i32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, mask: Mask) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn rank_of(&self, mask: Mask) -> Option<i32> {
        self.index.get(&mask).map(|&i| self.ranks[i])
    }

    /// Rank of the top element.
    pub fn dimension(&self) -> i32 {
        self.rank_of(self.full_mask()).unwrap_or(-1)
    }

    /// Number of faces excluding the empty face (the top counts).
    pub fn count_nonempty_faces(&self) -> usize {
        self.faces.iter().filter(|&&m| m != 0).count()
    }

    pub fn faces_of_rank(&self, r: i32) -> impl Iterator<Item = Mask> + '_ {
        self.faces
            .iter()
            .zip(&self.ranks)
            .filter(move |&(_, &rk)| rk == r)
            .map(|(&m, _)| m)
    }

    /// Facet masks (rank d−1), in lexicographic vertex-set order.
    pub fn facet_masks(&self) -> Vec<Mask> {
        self.faces_of_rank(self.dimension() - 1).collect()
    }

    /// Faces as (rank, sorted vertex list) pairs, in storage order.
    pub fn faces_with_ranks(&self) -> Vec<(i32, Vec<VertexId>)> {
        self.faces
            .iter()
            .zip(&self.ranks)
            .map(|(&m, &r)| (r, vertices_of(m)))
            .collect()
    }

    /// Order-reversed lattice re-encoded over facet indices: the dual face
    /// of a face G is the set of facets containing G.
    ///
    /// Expects a valid polytope lattice (in particular coatomic); panics if
    /// two faces have the same set of containing facets.
    pub fn dual_lattice(&self) -> FaceLattice {
        let facets = self.facet_masks();
        let mut dual_faces: Vec<Mask> = Vec::with_capacity(self.faces.len());
        let mut seen: HashSet<Mask> = HashSet::with_capacity(self.faces.len());
        for &g in &self.faces {
            let mut dm: Mask = 0;
            for (i, &fm) in facets.iter().enumerate() {
                if g & fm == g {
                    dm |= 1u128 << i;
                }
            }
            assert!(
                seen.insert(dm),
                "dual_lattice: input is not coatomic (two faces lie in the same facets)"
            );
            dual_faces.push(dm);
        }
        Self::assemble(facets.len() as u32, dual_faces)
    }
}

/// Rank-preserving order isomorphism test. Returns a vertex bijection
/// (atoms to atoms) when the lattices are isomorphic.
///
/// Backtracking over vertex assignments, seeded by per-vertex signatures of
/// (rank, face size) membership and pruned with 1-skeleton adjacency; a
/// complete assignment is accepted only if it maps the whole face family
/// onto the other one.
pub fn lattice_isomorphic(a: &FaceLattice, b: &FaceLattice) -> Option<Vec<VertexId>> {
    if a.len() != b.len() || a.n_vertices != b.n_vertices || a.dimension() != b.dimension() {
        return None;
    }
    // rank histogram and per-rank face-size multisets must agree
    let profile = |l: &FaceLattice| {
        let mut v: Vec<(i32, u32)> = l
            .faces
            .iter()
            .zip(&l.ranks)
            .map(|(&m, &r)| (r, m.count_ones()))
            .collect();
        v.sort_unstable();
        v
    };
    if profile(a) != profile(b) {
        return None;
    }

    let n = a.n_vertices as usize;
    let sig = |l: &FaceLattice| -> Vec<Vec<(i32, u32)>> {
        let mut s = vec![Vec::new(); n];
        for (&m, &r) in l.faces.iter().zip(&l.ranks) {
            for v in vertices_of(m) {
                s[v as usize].push((r, m.count_ones()));
            }
        }
        for e in &mut s {
            e.sort_unstable();
        }
        s
    };
    let sa = sig(a);
    let sb = sig(b);
    {
        let mut ma = sa.clone();
        let mut mb = sb.clone();
        ma.sort();
        mb.sort();
        if ma != mb {
            return None;
        }
    }

    let adj = |l: &FaceLattice| -> Vec<Mask> {
        let mut adj = vec![0 as Mask; n];
        for m in l.faces_of_rank(1) {
            let vs = vertices_of(m);
            if vs.len() == 2 {
                adj[vs[0] as usize] |= 1u128 << vs[1];
                adj[vs[1] as usize] |= 1u128 << vs[0];
            }
        }
        adj
    };
    let aa = adj(a);
    let ab = adj(b);

    // most-constrained vertices first
    let mut order: Vec<usize> = (0..n).collect();
    let class_size: Vec<usize> = (0..n).map(|v| sb.iter().filter(|s| **s == sa[v]).count()).collect();
    order.sort_by_key(|&v| (class_size[v], v));

    struct Search<'s> {
        a: &'s FaceLattice,
        b: &'s FaceLattice,
        sa: &'s [Vec<(i32, u32)>],
        sb: &'s [Vec<(i32, u32)>],
        aa: &'s [Mask],
        ab: &'s [Mask],
        order: &'s [usize],
        mapping: Vec<Option<VertexId>>,
        used: Mask,
    }

    impl Search<'_> {
        fn extend(&mut self, pos: usize) -> bool {
            if pos == self.order.len() {
                return self.a.faces.iter().all(|&m| {
                    let mut im: Mask = 0;
                    for v in vertices_of(m) {
                        im |= 1u128 << self.mapping[v as usize].unwrap();
                    }
                    self.b.contains(im)
                });
            }
            let v = self.order[pos];
            for w in 0..self.sb.len() {
                if self.used & (1u128 << w) != 0 || self.sb[w] != self.sa[v] {
                    continue;
                }
                // adjacency with already-assigned vertices must agree
                let ok = (0..self.sa.len()).all(|u| match self.mapping[u] {
                    Some(wu) => (self.aa[v] >> u) & 1 == (self.ab[w] >> (wu as usize)) & 1,
                    None => true,
                });
                if !ok {
                    continue;
                }
                self.mapping[v] = Some(w as VertexId);
                self.used |= 1u128 << w;
                if self.extend(pos + 1) {
                    return true;
                }
                self.mapping[v] = None;
                self.used &= !(1u128 << w);
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sa: &sa,
        sb: &sb,
        aa: &aa,
        ab: &ab,
        order: &order,
        mapping: vec![None; n],
        used: 0,
    };
    if search.extend(0) {
        Some(search.mapping.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// Report produced by [`validate_polytopality`]; empty means no violation
/// was found.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopalityReport {
    pub violations: Vec<String>,
}

impl PolytopalityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn face_str(m: Mask) -> String {
    format!("{:?}", vertices_of(m))
}

/// Checks the lattice axioms a polytope face lattice must satisfy:
/// bottom/top present, closure under intersection, gradedness, the diamond
/// property on rank-2 intervals, atoms exactly the vertex singletons, and
/// coatomicity.
pub fn validate_polytopality(lat: &FaceLattice) -> PolytopalityReport {
    let mut violations = Vec::new();
    let full = lat.full_mask();
    if !lat.contains(0) {
        violations.push("missing bottom (empty face)".to_string());
    }
    if !lat.contains(full) {
        violations.push("missing top (whole vertex set)".to_string());
    }

    let faces = lat.faces();
    let ranks = lat.ranks();
    // closure under pairwise intersection
    for i in 0..faces.len() {
        for j in (i + 1)..faces.len() {
            let m = faces[i] & faces[j];
            if !lat.contains(m) {
                violations.push(format!(
                    "not intersection-closed: {} ∩ {} = {} is missing",
                    face_str(faces[i]),
                    face_str(faces[j]),
                    face_str(m)
                ));
            }
        }
    }

    // gradedness: every cover relation raises rank by exactly 1
    for i in 0..faces.len() {
        for j in 0..faces.len() {
            if i == j || faces[i] & faces[j] != faces[i] {
                continue;
            }
            // faces[i] < faces[j]
            if ranks[j] - ranks[i] >= 2 {
                let has_middle = faces.iter().enumerate().any(|(k, &h)| {
                    k != i && k != j && faces[i] & h == faces[i] && h & faces[j] == h
                });
                if !has_middle {
                    violations.push(format!(
                        "not graded: {} < {} is a cover with rank gap {}",
                        face_str(faces[i]),
                        face_str(faces[j]),
                        ranks[j] - ranks[i]
                    ));
                }
            }
        }
    }

    // diamond property: rank-2 intervals contain exactly 4 faces
    for i in 0..faces.len() {
        for j in 0..faces.len() {
            if i == j || faces[i] & faces[j] != faces[i] || ranks[j] - ranks[i] != 2 {
                continue;
            }
            let middles = faces
                .iter()
                .enumerate()
                .filter(|&(k, &h)| {
                    k != i && k != j && faces[i] & h == faces[i] && h & faces[j] == h
                })
                .count();
            if middles != 2 {
                violations.push(format!(
                    "diamond violated: interval [{}, {}] has {} faces",
                    face_str(faces[i]),
                    face_str(faces[j]),
                    middles + 2
                ));
            }
        }
    }

    // atoms are exactly the vertex singletons
    for (&m, &r) in faces.iter().zip(ranks) {
        if r == 0 && m.count_ones() != 1 {
            violations.push(format!("atom {} is not a vertex singleton", face_str(m)));
        }
    }
    for v in 0..lat.n_vertices() {
        if !lat.contains(1u128 << v) {
            violations.push(format!("vertex {v} is not an atom"));
        }
    }

    // coatomicity: every proper face is the intersection of the facets
    // above it
    let d = lat.dimension();
    let coatoms: Vec<Mask> = lat.faces_of_rank(d - 1).collect();
    for &m in faces {
        if m == full {
            continue;
        }
        let meet = coatoms
            .iter()
            .filter(|&&c| m & c == m)
            .fold(full, |acc, &c| acc & c);
        if meet != m {
            violations.push(format!(
                "not coatomic: {} is not the meet of facets above it",
                face_str(m)
            ));
        }
    }

    PolytopalityReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    fn triangle() -> PolytopeSpec {
        PolytopeSpec::new("triangle", 3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn triangle_closure() {
        let lat = FaceLattice::build(&triangle()).unwrap();
        assert_eq!(lat.len(), 8);
        assert_eq!(lat.count_nonempty_faces(), 7);
        assert_eq!(lat.dimension(), 2);
        // atoms are the three vertices, rank 1 faces the three edges
        assert_eq!(lat.faces_of_rank(0).count(), 3);
        assert_eq!(lat.faces_of_rank(1).count(), 3);
    }

    #[test]
    fn facet_equal_to_top_rejected() {
        let err = PolytopeSpec::new("bad", 3, vec![vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn nested_facets_rejected() {
        let err = PolytopeSpec::new("bad", 4, vec![vec![0, 1, 2], vec![0, 1], vec![2, 3]]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)), "{err}");
        let err = PolytopeSpec::new("dup", 3, vec![vec![0, 1], vec![0, 1], vec![1, 2], vec![0, 2]])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
    }

    #[test]
    fn cube_face_count() {
        let lat = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        assert_eq!(lat.len(), 28);
        assert_eq!(lat.count_nonempty_faces(), 27);
        assert_eq!(lat.dimension(), 3);
        assert_eq!(lat.faces_of_rank(0).count(), 8);
        assert_eq!(lat.faces_of_rank(1).count(), 12);
        assert_eq!(lat.faces_of_rank(2).count(), 6);
    }

    #[test]
    fn nonempty_face_counts() {
        let square = FaceLattice::build(&generate::cube(2).unwrap()).unwrap();
        assert_eq!(square.count_nonempty_faces(), 9);
        let simplex3 = FaceLattice::build(&generate::simplex(3).unwrap()).unwrap();
        assert_eq!(simplex3.count_nonempty_faces(), 15);
        let simplex4 = FaceLattice::build(&generate::simplex(4).unwrap()).unwrap();
        assert_eq!(simplex4.dimension(), 4);
    }

    #[test]
    fn count_equals_rank_sizes() {
        for spec in [generate::cube(3).unwrap(), generate::simplex(4).unwrap()] {
            let lat = FaceLattice::build(&spec).unwrap();
            let total: usize = (0..=lat.dimension()).map(|r| lat.faces_of_rank(r).count()).sum();
            assert_eq!(total, lat.count_nonempty_faces());
        }
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let cube = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        let dual = cube.dual_lattice();
        assert_eq!(dual.n_vertices(), 6);
        assert_eq!(dual.faces_of_rank(1).count(), 12);
        assert_eq!(dual.faces_of_rank(2).count(), 8);
        let octa = FaceLattice::build(&generate::cross_polytope(3).unwrap()).unwrap();
        assert!(lattice_isomorphic(&dual, &octa).is_some());
    }

    #[test]
    fn simplex_is_self_dual() {
        let lat = FaceLattice::build(&generate::simplex(3).unwrap()).unwrap();
        assert!(lattice_isomorphic(&lat.dual_lattice(), &lat).is_some());
    }

    #[test]
    fn double_dual_is_identity_up_to_iso() {
        for spec in [
            generate::cube(3).unwrap(),
            generate::simplex(4).unwrap(),
            generate::cross_polytope(3).unwrap(),
        ] {
            let lat = FaceLattice::build(&spec).unwrap();
            assert!(lattice_isomorphic(&lat.dual_lattice().dual_lattice(), &lat).is_some());
        }
    }

    #[test]
    fn closure_property() {
        for spec in [generate::cube(3).unwrap(), generate::cyclic(4, 6).unwrap()] {
            let lat = FaceLattice::build(&spec).unwrap();
            for &f in lat.faces() {
                for &g in lat.faces() {
                    assert!(lat.contains(f & g));
                }
            }
        }
    }

    #[test]
    fn iso_accepts_relabeling_rejects_different() {
        let cube = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        // relabel vertices v -> 7 - v
        let spec = generate::cube(3).unwrap();
        let relabeled = PolytopeSpec::new(
            "relabeled",
            8,
            spec.facets.iter().map(|f| f.iter().map(|&v| 7 - v).collect()).collect(),
        )
        .unwrap();
        let rel = FaceLattice::build(&relabeled).unwrap();
        let w = lattice_isomorphic(&cube, &rel).expect("relabeled cube is isomorphic");
        // witness maps atoms to atoms bijectively
        let mut seen: Vec<bool> = vec![false; 8];
        for &x in &w {
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
        }
        let octa = FaceLattice::build(&generate::cross_polytope(3).unwrap()).unwrap();
        assert!(lattice_isomorphic(&cube, &octa).is_none());
    }

    #[test]
    fn validate_good_lattices() {
        for spec in [
            generate::cube(3).unwrap(),
            generate::simplex(4).unwrap(),
            generate::cross_polytope(3).unwrap(),
            generate::cyclic(4, 6).unwrap(),
        ] {
            let lat = FaceLattice::build(&spec).unwrap();
            let report = validate_polytopality(&lat);
            assert!(report.is_ok(), "{:?}", report.violations);
        }
    }

    #[test]
    fn validate_detects_missing_intersection() {
        let lat = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        let mut faces: Vec<Vec<VertexId>> = lat.faces_with_ranks().into_iter().map(|(_, v)| v).collect();
        // drop one edge face
        let pos = faces.iter().position(|f| f.len() == 2).unwrap();
        faces.remove(pos);
        let broken = FaceLattice::from_faces(8, faces).unwrap();
        let report = validate_polytopality(&broken);
        assert!(report.violations.iter().any(|v| v.contains("not intersection-closed")));
    }
}

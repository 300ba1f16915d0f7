//! Fixture factory: standard polytopes and random capped cubical polytopes,
//! all as [`PolytopeSpec`] values.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cubical::cap_facet;
use crate::error::{Error, Result};
use crate::lattice::{vertices_of, FaceLattice, PolytopeSpec, VertexId};

/// d-simplex: d+1 vertices, facets are all d-subsets.
pub fn simplex(d: u32) -> Result<PolytopeSpec> {
    if d < 1 {
        return Err(Error::InvalidInput("simplex requires d >= 1".into()));
    }
    let n = d + 1;
    let facets = (0..n)
        .map(|skip| (0..n).filter(|&v| v != skip).collect())
        .collect();
    PolytopeSpec::new(format!("simplex-{d}"), n, facets)
}

/// d-cube: 2^d vertices as bit vectors, facets the 2d coordinate half-spaces.
pub fn cube(d: u32) -> Result<PolytopeSpec> {
    if d < 1 {
        return Err(Error::InvalidInput("cube requires d >= 1".into()));
    }
    if d > 6 {
        return Err(Error::TooLarge(format!("cube({d}) exceeds the vertex limit for this toolkit")));
    }
    let n = 1u32 << d;
    let mut facets = Vec::with_capacity(2 * d as usize);
    for coord in 0..d {
        for side in 0..2u32 {
            facets.push((0..n).filter(|v| (v >> coord) & 1 == side).collect());
        }
    }
    PolytopeSpec::new(format!("cube-{d}"), n, facets)
}

/// d-cross-polytope: 2d vertices in antipodal pairs (2i, 2i+1), facets the
/// 2^d sets picking one vertex per pair.
pub fn cross_polytope(d: u32) -> Result<PolytopeSpec> {
    if d < 1 {
        return Err(Error::InvalidInput("cross polytope requires d >= 1".into()));
    }
    if d > 10 {
        return Err(Error::TooLarge(format!("cross_polytope({d}) has too many facets")));
    }
    let n = 2 * d;
    let mut facets = Vec::with_capacity(1 << d);
    for pick in 0..(1u32 << d) {
        facets.push((0..d).map(|i| 2 * i + ((pick >> i) & 1)).collect());
    }
    PolytopeSpec::new(format!("cross-{d}"), n, facets)
}

/// Pyramid over an arbitrary base: one apex, the base kept as a facet,
/// every base facet coned to the apex.
pub fn pyramid(base: &PolytopeSpec) -> Result<PolytopeSpec> {
    base.validate()?;
    let apex = base.n_vertices;
    let mut facets: Vec<Vec<VertexId>> = vec![(0..base.n_vertices).collect()];
    for f in &base.facets {
        let mut g = f.clone();
        g.push(apex);
        facets.push(g);
    }
    PolytopeSpec::new(format!("pyramid({})", base.name), base.n_vertices + 1, facets)
}

/// Prism over a k-gon: bottom polygon 0..k−1, top polygon k..2k−1, and one
/// square per polygon edge.
pub fn prism(k: u32) -> Result<PolytopeSpec> {
    if k < 3 {
        return Err(Error::InvalidInput("prism requires a polygon with k >= 3".into()));
    }
    let mut facets: Vec<Vec<VertexId>> = vec![(0..k).collect(), (k..2 * k).collect()];
    for i in 0..k {
        let j = (i + 1) % k;
        facets.push(vec![i, j, k + i, k + j]);
    }
    PolytopeSpec::new(format!("prism-{k}"), 2 * k, facets)
}

/// Cyclic polytope C(d, n) via the evenness condition: a d-subset S is a
/// facet iff any two elements outside S are separated by an even number of
/// elements of S.
pub fn cyclic(d: u32, n: u32) -> Result<PolytopeSpec> {
    if d < 2 || n <= d {
        return Err(Error::InvalidInput("cyclic requires n > d >= 2".into()));
    }
    if n > 16 {
        return Err(Error::TooLarge(format!("cyclic(d, {n}) subset enumeration too large")));
    }
    let mut facets = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != d {
            continue;
        }
        let inside: Vec<u32> = (0..n).filter(|&v| (mask >> v) & 1 == 1).collect();
        let outside: Vec<u32> = (0..n).filter(|&v| (mask >> v) & 1 == 0).collect();
        let mut even = true;
        'pairs: for a in 0..outside.len() {
            for b in (a + 1)..outside.len() {
                let (lo, hi) = (outside[a], outside[b]);
                let between = inside.iter().filter(|&&s| lo < s && s < hi).count();
                if between % 2 == 1 {
                    even = false;
                    break 'pairs;
                }
            }
        }
        if even {
            facets.push(inside);
        }
    }
    PolytopeSpec::new(format!("cyclic-{d}-{n}"), n, facets)
}

/// Record of a [`random_capped`] run: the seed and the facet capped at each
/// step, in order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CappingLog {
    pub seed: u64,
    pub capped_facets: Vec<Vec<VertexId>>,
}

/// Iterated capping starting from `cube(d)`: at each step a uniformly
/// random facet of the current polytope is capped. Deterministic for a
/// fixed seed (ChaCha8 stream).
pub fn random_capped(d: u32, n_caps: u32, seed: u64) -> Result<(PolytopeSpec, CappingLog)> {
    if d < 2 {
        return Err(Error::InvalidInput("capped fixtures require d >= 2".into()));
    }
    let mut spec = cube(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = CappingLog { seed, capped_facets: Vec::new() };
    for step in 0..n_caps {
        let lat = FaceLattice::build(&spec)?;
        let facets = lat.facet_masks();
        let pick = rng.gen_range(0..facets.len());
        let facet = facets[pick];
        log.capped_facets.push(vertices_of(facet));
        spec = cap_facet(&lat, facet)?;
        spec.name = format!("capped-{d}-{}-s{seed}", step + 1);
    }
    Ok((spec, log))
}

/// Two octahedra glued along a triangle: a 9-vertex non-simple 3-polytope
/// with two disjoint triangular facets that share no edges and no common
/// neighbor facet. Useful as a search ground for orientation phenomena
/// that simple polytopes cannot exhibit.
pub fn glued_octahedra() -> PolytopeSpec {
    // top triangle {1,2,6}, middle triangle {0,3,7}, bottom triangle {4,5,8}
    PolytopeSpec::new(
        "glued-octahedra",
        9,
        vec![
            vec![1, 2, 6],
            vec![1, 2, 3],
            vec![2, 6, 7],
            vec![1, 6, 0],
            vec![1, 3, 0],
            vec![2, 7, 3],
            vec![6, 0, 7],
            vec![4, 5, 8],
            vec![4, 5, 3],
            vec![5, 8, 7],
            vec![4, 8, 0],
            vec![4, 3, 0],
            vec![5, 7, 3],
            vec![8, 0, 7],
        ],
    )
    .expect("fixture is valid")
}

//! Property tests over randomized structures.

use proptest::prelude::*;

use polyrec::generate;
use polyrec::graph::{
    complete_minus_perfect_matching, dual_graph, graph_isomorphic, graph_of, Graph,
};
use polyrec::lattice::{lattice_isomorphic, FaceLattice, PolytopeSpec};
use polyrec::orient::{
    enumerate_acyclic_orientations, enumerate_acyclic_orientations_brute, EnumLimits,
};

/// Brute-force perfect matching search on a tiny edge list.
fn has_perfect_matching(n: u32, edges: &[(u32, u32)]) -> bool {
    fn go(n: u32, edges: &[(u32, u32)], used: u32) -> bool {
        let free = (0..n).find(|v| used & (1 << v) == 0);
        let Some(v) = free else { return true };
        edges
            .iter()
            .filter(|&&(a, b)| (a == v || b == v) && used & (1 << a) == 0 && used & (1 << b) == 0)
            .any(|&(a, b)| go(n, edges, used | (1 << a) | (1 << b)))
    }
    n.is_multiple_of(2) && go(n, edges, 0)
}

fn small_connected_graph() -> impl Strategy<Value = Graph> {
    // a subset of K5's 10 edges, filtered for connectivity on used nodes
    (2u32..=5, any::<u16>()).prop_filter_map("connected", |(n, bits)| {
        let mut edges = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if bits & (1 << k) != 0 {
                    edges.push((a, b));
                }
                k += 1;
            }
        }
        let g = Graph::new(n, edges).ok()?;
        if g.is_connected() && !g.edges().is_empty() {
            Some(g)
        } else {
            None
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_agrees_with_brute_filter(g in small_connected_graph()) {
        let brute = enumerate_acyclic_orientations_brute(&g).unwrap().len();
        let fast = enumerate_acyclic_orientations(&g, &EnumLimits::default()).unwrap().count();
        prop_assert_eq!(brute, fast);
    }

    #[test]
    fn complete_minus_matching_recognition(m in 1usize..=4, perm_seed in any::<u64>(), drop_extra in any::<bool>()) {
        // build K_{2m} minus the matching (2i, 2i+1), relabeled by a
        // deterministic shuffle of the seed
        let n = 2 * m as u32;
        let mut label: Vec<u32> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n as usize).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            label.swap(i, j);
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let antipodal = a / 2 == b / 2;
                if !antipodal {
                    edges.push((label[a as usize], label[b as usize]));
                }
            }
        }
        if drop_extra && !edges.is_empty() && m > 1 {
            edges.pop();
        }
        let g = Graph::new(n, edges).unwrap();
        match complete_minus_perfect_matching(&g) {
            Some(pairs) => {
                prop_assert!(!drop_extra || m == 1);
                prop_assert_eq!(pairs.len(), m);
                for (a, b) in pairs {
                    prop_assert!(!g.has_edge(a, b));
                }
            }
            None => prop_assert!(drop_extra && m > 1),
        }
    }

    #[test]
    fn lattice_iso_invariant_under_relabeling(seed in any::<u64>()) {
        let spec = generate::pyramid(&generate::cube(2).unwrap()).unwrap();
        let n = spec.n_vertices;
        let mut perm: Vec<u32> = (0..n).collect();
        let mut s = seed;
        for i in (1..n as usize).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let relabeled = PolytopeSpec::new(
            "relabeled",
            n,
            spec.facets.iter().map(|f| f.iter().map(|&v| perm[v as usize]).collect()).collect(),
        ).unwrap();
        let a = FaceLattice::build(&spec).unwrap();
        let b = FaceLattice::build(&relabeled).unwrap();
        let witness = lattice_isomorphic(&a, &b);
        prop_assert!(witness.is_some());
        // the witness itself maps faces onto faces
        let w = witness.unwrap();
        for &m in a.faces() {
            let im: u128 = polyrec::lattice::vertices_of(m)
                .into_iter()
                .fold(0, |acc, v| acc | (1u128 << w[v as usize]));
            prop_assert!(b.contains(im));
        }
    }

    #[test]
    fn capped_fixtures_have_regular_bipartite_structure(d in 2u32..=3, caps in 0u32..=2, seed in any::<u64>()) {
        let (spec, _) = generate::random_capped(d, caps, seed).unwrap();
        let lat = FaceLattice::build(&spec).unwrap();
        let g = graph_of(&lat).unwrap();
        prop_assert!(g.is_bipartite());
        let dg = dual_graph(&lat).unwrap();
        prop_assert!(dg.is_k_regular(2 * (d as usize - 1)));
        // neighbor subgraphs live inside K_{2(d-1)} minus a perfect
        // matching: the complement of the neighbor subgraph must contain a
        // perfect matching
        for v in 0..dg.n_nodes() {
            let nb = dg.neighbors(v).to_vec();
            let (sub, _) = dg.induced(&nb).to_graph();
            let n = sub.n_nodes();
            let mut complement = Vec::new();
            for a in 0..n {
                for b in (a + 1)..n {
                    if !sub.has_edge(a, b) {
                        complement.push((a, b));
                    }
                }
            }
            prop_assert!(
                has_perfect_matching(n, &complement),
                "neighbors of {v} are not inside a complete graph minus a perfect matching"
            );
        }
    }

    #[test]
    fn graph_iso_invariant_under_relabeling(seed in any::<u64>()) {
        let lat = FaceLattice::build(&generate::cube(3).unwrap()).unwrap();
        let g = graph_of(&lat).unwrap();
        let n = g.n_nodes();
        let mut perm: Vec<u32> = (0..n).collect();
        let mut s = seed;
        for i in (1..n as usize).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(a, b)| (perm[a as usize], perm[b as usize])).collect();
        let h = Graph::new(n, edges).unwrap();
        prop_assert!(graph_isomorphic(&g, &h).is_some());
    }
}

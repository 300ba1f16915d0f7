//! Undirected simple graphs over integer node ids, extracted from lattices
//! (vertex–edge graph and dual graph), plus the structural predicates the
//! reconstruction pipelines rely on.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{vertices_of, FaceLattice, Mask};

pub type NodeId = u32;

/// Undirected simple graph. Edges are stored with the smaller endpoint
/// first and the list sorted, so equal graphs compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n_nodes: u32,
    edges: Vec<(NodeId, NodeId)>,
    node_names: Option<BTreeMap<NodeId, String>>,
    adj: Vec<Vec<NodeId>>,
}

impl Graph {
    pub fn new(n_nodes: u32, edges: Vec<(NodeId, NodeId)>) -> Result<Self> {
        let mut norm: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("loop at node {a}")));
            }
            if a >= n_nodes || b >= n_nodes {
                return Err(Error::InvalidInput(format!("edge ({a},{b}) out of range")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n_nodes as usize];
        for &(a, b) in &norm {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { n_nodes, edges: norm, node_names: None, adj })
    }

    pub fn with_names(mut self, names: BTreeMap<NodeId, String>) -> Self {
        self.node_names = Some(names);
        self
    }

    pub fn n_nodes(&self) -> u32 {
        self.n_nodes
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_names(&self) -> Option<&BTreeMap<NodeId, String>> {
        self.node_names.as_ref()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Index of edge (a, b) in the sorted edge list.
    pub fn edge_index(&self, a: NodeId, b: NodeId) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Every node has degree k.
    pub fn is_k_regular(&self, k: usize) -> bool {
        (0..self.n_nodes).all(|v| self.degree(v) == k)
    }

    /// The common degree, if the graph is regular (None otherwise or when
    /// the graph has no nodes).
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n_nodes == 0 {
            return None;
        }
        let d = self.degree(0);
        if self.is_k_regular(d) {
            Some(d)
        } else {
            None
        }
    }

    /// True iff the graph has no odd cycle (2-coloring search per component).
    pub fn is_bipartite(&self) -> bool {
        let n = self.n_nodes as usize;
        let mut color: Vec<i8> = vec![-1; n];
        for start in 0..n {
            if color[start] != -1 {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &w in self.neighbors(v as NodeId) {
                    let w = w as usize;
                    if color[w] == -1 {
                        color[w] = 1 - color[v];
                        queue.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// An odd cycle as a node sequence, if one exists.
    pub fn find_odd_cycle(&self) -> Option<Vec<NodeId>> {
        let n = self.n_nodes as usize;
        let mut color: Vec<i8> = vec![-1; n];
        let mut parent: Vec<usize> = vec![usize::MAX; n];
        for start in 0..n {
            if color[start] != -1 {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v as NodeId) {
                    let w = w as usize;
                    if color[w] == -1 {
                        color[w] = 1 - color[v];
                        parent[w] = v;
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        // walk both nodes to the root, join at the meeting point
                        let path = |mut x: usize| {
                            let mut p = vec![x];
                            while parent[x] != usize::MAX {
                                x = parent[x];
                                p.push(x);
                            }
                            p
                        };
                        let pv = path(v);
                        let pw = path(w);
                        let common: Vec<usize> =
                            pv.iter().copied().filter(|x| pw.contains(x)).collect();
                        let meet = common[0];
                        let mut cycle: Vec<NodeId> =
                            pv.iter().take_while(|&&x| x != meet).map(|&x| x as NodeId).collect();
                        cycle.push(meet as NodeId);
                        let tail: Vec<NodeId> = pw
                            .iter()
                            .take_while(|&&x| x != meet)
                            .map(|&x| x as NodeId)
                            .collect();
                        cycle.extend(tail.into_iter().rev());
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    /// True iff some three nodes are pairwise adjacent.
    pub fn has_triangle(&self) -> bool {
        for &(a, b) in &self.edges {
            for &c in self.neighbors(a) {
                if c != b && self.has_edge(b, c) {
                    return true;
                }
            }
        }
        false
    }

    pub fn is_connected(&self) -> bool {
        if self.n_nodes == 0 {
            return true;
        }
        let n = self.n_nodes as usize;
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v as NodeId) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w as usize);
                }
            }
        }
        count == n
    }

    /// Induced subgraph on a node subset; keeps a reference to the parent.
    pub fn induced(&self, nodes: &[NodeId]) -> InducedSubgraph<'_> {
        let mut subset = nodes.to_vec();
        subset.sort_unstable();
        subset.dedup();
        InducedSubgraph { parent: self, nodes: subset }
    }
}

/// Induced subgraph: a parent graph plus a node subset. The edge set is
/// exactly the parent edges with both ends in the subset.
#[derive(Clone, Debug)]
pub struct InducedSubgraph<'a> {
    parent: &'a Graph,
    nodes: Vec<NodeId>,
}

impl<'a> InducedSubgraph<'a> {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn parent(&self) -> &Graph {
        self.parent
    }

    /// Edges in parent ids.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let inside = |v: NodeId| self.nodes.binary_search(&v).is_ok();
        self.parent
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| inside(a) && inside(b))
            .collect()
    }

    /// Relabels the subset to 0..k−1 (sorted order) and returns the
    /// standalone graph together with the new-id → parent-id table.
    pub fn to_graph(&self) -> (Graph, Vec<NodeId>) {
        let back = self.nodes.clone();
        let fwd: BTreeMap<NodeId, NodeId> =
            back.iter().enumerate().map(|(i, &v)| (v, i as NodeId)).collect();
        let edges = self.edges().into_iter().map(|(a, b)| (fwd[&a], fwd[&b])).collect();
        (Graph::new(back.len() as u32, edges).expect("induced edges are valid"), back)
    }
}

/// Vertex–edge graph of a lattice: nodes are the rank-0 faces, edges the
/// rank-1 faces. Fails if some rank-1 face does not have exactly two
/// vertices.
pub fn graph_of(lat: &FaceLattice) -> Result<Graph> {
    let n = lat.n_vertices();
    let mut edges = Vec::new();
    for m in lat.faces_of_rank(1) {
        let vs = vertices_of(m);
        if vs.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "rank-1 face {vs:?} does not have exactly 2 vertices; lattice is not polytopal"
            )));
        }
        edges.push((vs[0], vs[1]));
    }
    Graph::new(n, edges)
}

/// Dual graph of a lattice: one node per facet (lexicographic facet order),
/// an edge whenever two facets share a ridge (a rank d−2 face). Node names
/// carry the facet vertex sets. Fails if some ridge lies in a number of
/// facets other than two.
pub fn dual_graph(lat: &FaceLattice) -> Result<Graph> {
    let d = lat.dimension();
    if d < 2 {
        return Err(Error::InvalidInput("dual graph requires dimension >= 2".into()));
    }
    let facets = lat.facet_masks();
    let mut edges = Vec::new();
    for ridge in lat.faces_of_rank(d - 2) {
        let above: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|&(_, &f)| ridge & f == ridge)
            .map(|(i, _)| i)
            .collect();
        if above.len() != 2 {
            return Err(Error::InvalidInput(format!(
                "ridge {:?} lies in {} facets (expected 2)",
                vertices_of(ridge),
                above.len()
            )));
        }
        edges.push((above[0] as NodeId, above[1] as NodeId));
    }
    let names: BTreeMap<NodeId, String> = facets
        .iter()
        .enumerate()
        .map(|(i, &f)| {
            let vs = vertices_of(f);
            let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            (i as NodeId, format!("{{{}}}", parts.join(",")))
        })
        .collect();
    Ok(Graph::new(facets.len() as u32, edges)?.with_names(names))
}

/// If the graph is a complete graph on 2m nodes minus a perfect matching,
/// returns the m missing pairs; otherwise None. The 2-node edgeless graph
/// counts (m = 1), so the degenerate d = 2 cubical case works uniformly.
pub fn complete_minus_perfect_matching(g: &Graph) -> Option<Vec<(NodeId, NodeId)>> {
    let n = g.n_nodes;
    if n < 2 || !n.is_multiple_of(2) {
        return None;
    }
    // every node must miss exactly one other node
    let mut partner: Vec<Option<NodeId>> = vec![None; n as usize];
    for v in 0..n {
        if g.degree(v) != (n - 2) as usize {
            return None;
        }
        for w in 0..n {
            if w != v && !g.has_edge(v, w) {
                partner[v as usize] = Some(w);
            }
        }
    }
    let mut pairs = Vec::with_capacity(n as usize / 2);
    for v in 0..n {
        let w = partner[v as usize]?;
        if partner[w as usize] != Some(v) {
            return None;
        }
        if v < w {
            pairs.push((v, w));
        }
    }
    Some(pairs)
}

/// Same recognition on an induced subgraph; the matching is reported in
/// parent node ids.
pub fn complete_minus_perfect_matching_induced(sub: &InducedSubgraph<'_>) -> Option<Vec<(NodeId, NodeId)>> {
    let (g, back) = sub.to_graph();
    complete_minus_perfect_matching(&g)
        .map(|pairs| pairs.into_iter().map(|(a, b)| (back[a as usize], back[b as usize])).collect())
}

/// Standard graph isomorphism with degree pruning; returns a node bijection
/// when one exists.
pub fn graph_isomorphic(a: &Graph, b: &Graph) -> Option<Vec<NodeId>> {
    if a.n_nodes != b.n_nodes || a.edges.len() != b.edges.len() {
        return None;
    }
    let n = a.n_nodes as usize;
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v as NodeId)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v as NodeId)).collect();
    {
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
    }
    // order: most-constrained (rarest degree) first
    let mut order: Vec<usize> = (0..n).collect();
    let freq = |deg: usize, all: &[usize]| all.iter().filter(|&&d| d == deg).count();
    order.sort_by_key(|&v| (freq(da[v], &da), v));
    da.shrink_to_fit();
    db.shrink_to_fit();

    struct Search<'s> {
        a: &'s Graph,
        b: &'s Graph,
        da: &'s [usize],
        db: &'s [usize],
        order: &'s [usize],
        mapping: Vec<Option<NodeId>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, pos: usize) -> bool {
            if pos == self.order.len() {
                return true;
            }
            let v = self.order[pos];
            for w in 0..self.db.len() {
                if self.used[w] || self.db[w] != self.da[v] {
                    continue;
                }
                let consistent = (0..self.da.len()).all(|u| match self.mapping[u] {
                    Some(wu) => {
                        self.a.has_edge(v as NodeId, u as NodeId)
                            == self.b.has_edge(w as NodeId, wu)
                    }
                    None => true,
                });
                if !consistent {
                    continue;
                }
                self.mapping[v] = Some(w as NodeId);
                self.used[w] = true;
                if self.extend(pos + 1) {
                    return true;
                }
                self.mapping[v] = None;
                self.used[w] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        da: &da,
        db: &db,
        order: &order,
        mapping: vec![None; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        Some(search.mapping.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// Node subset as a bitmask helper (shared with the orientation engine).
pub fn node_mask(nodes: &[NodeId]) -> Mask {
    nodes.iter().fold(0, |m, &v| m | (1u128 << v))
}

pub fn complete_graph(n: u32) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            edges.push((a, b));
        }
    }
    Graph::new(n, edges).expect("complete graph is valid")
}

pub fn cycle_graph(n: u32) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, edges).expect("cycle is valid")
}

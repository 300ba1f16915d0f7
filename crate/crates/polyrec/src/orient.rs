//! Acyclic orientations of polytope graphs: enumeration by recursive
//! source-layer elimination, the per-vertex sink-count score against vertex
//! figure lattices, and the search for good orientations as the score
//! minimizers.
//!
//! An acyclic orientation corresponds to a unique layering of the node set:
//! the sources, the sources of what remains, and so on. Each layer is a
//! non-empty independent set and every node has a neighbor in the previous
//! layer; enumerating those layerings yields every acyclic orientation
//! exactly once, without materializing all 2^E edge assignments. A brute
//! 2^E filter exists alongside as a cross-check oracle for small graphs.

use crate::error::{Error, Result};
use crate::graph::{node_mask, Graph, NodeId};
use crate::labels::{vf_lattice_from_labels, VertexFigureLabels, VertexFigureLattice};
use crate::lattice::{vertices_of, FaceLattice, Mask};

/// Direction assignment on every edge of a graph. `arcs[i]` is the
/// oriented version of the parent's `edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    n_nodes: u32,
    arcs: Vec<(NodeId, NodeId)>,
}

impl Orientation {
    /// Wraps explicit arcs; each must orient the corresponding parent edge.
    pub fn new(g: &Graph, arcs: Vec<(NodeId, NodeId)>) -> Result<Self> {
        if arcs.len() != g.edges().len() {
            return Err(Error::InvalidInput("arc count differs from edge count".into()));
        }
        for (&(a, b), &(f, t)) in g.edges().iter().zip(&arcs) {
            if (f, t) != (a, b) && (f, t) != (b, a) {
                return Err(Error::InvalidInput(format!(
                    "arc ({f},{t}) does not orient edge ({a},{b})"
                )));
            }
        }
        Ok(Orientation { n_nodes: g.n_nodes(), arcs })
    }

    /// Orientation induced by a linear order on the nodes (edges point from
    /// earlier to later). Always acyclic.
    pub fn from_order(g: &Graph, order: &[NodeId]) -> Self {
        let mut pos = vec![0usize; g.n_nodes() as usize];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i;
        }
        let arcs = g
            .edges()
            .iter()
            .map(|&(a, b)| if pos[a as usize] < pos[b as usize] { (a, b) } else { (b, a) })
            .collect();
        Orientation { n_nodes: g.n_nodes(), arcs }
    }

    pub fn n_nodes(&self) -> u32 {
        self.n_nodes
    }

    pub fn arcs(&self) -> &[(NodeId, NodeId)] {
        &self.arcs
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.arcs.iter().filter(|&&(_, t)| t == v).count()
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.n_nodes as usize;
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(f, t) in &self.arcs {
            indeg[t as usize] += 1;
            out[f as usize].push(t as usize);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == n
    }
}

/// True iff no arc points from the complement into the subset.
pub fn is_initial(o: &Orientation, subset: &[NodeId]) -> bool {
    let m = node_mask(subset);
    o.arcs.iter().all(|&(f, t)| {
        let from_in = m & (1u128 << f) != 0;
        let to_in = m & (1u128 << t) != 0;
        !(to_in && !from_in)
    })
}

/// Resource guard for orientation enumeration. Exceeding a bound is a hard
/// error, never a silent truncation: a missed orientation would silently
/// break the completeness the reconstruction relies on.
#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    pub max_edges: usize,
    pub max_orientations: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_edges: 36, max_orientations: 10_000_000 }
    }
}

struct Frame {
    remaining: Mask,
    eligible: Vec<NodeId>,
    cursor: u64,
}

/// Streaming enumeration of all acyclic orientations of a connected graph,
/// each exactly once, in a deterministic order.
pub struct AcyclicOrientations<'g> {
    g: &'g Graph,
    frames: Vec<Frame>,
    layer_of: Vec<u32>,
}

pub fn enumerate_acyclic_orientations<'g>(
    g: &'g Graph,
    limits: &EnumLimits,
) -> Result<AcyclicOrientations<'g>> {
    if g.edges().len() > limits.max_edges {
        return Err(Error::TooLarge(format!(
            "{} edges exceeds the enumeration bound of {}",
            g.edges().len(),
            limits.max_edges
        )));
    }
    if !g.is_connected() {
        return Err(Error::InvalidInput(
            "orientation enumeration expects a connected graph".into(),
        ));
    }
    let all: Mask = if g.n_nodes() == 0 { 0 } else { (1u128 << g.n_nodes()) - 1 };
    let frames = vec![Frame {
        remaining: all,
        eligible: (0..g.n_nodes()).collect(),
        cursor: 0,
    }];
    Ok(AcyclicOrientations { g, frames, layer_of: vec![0; g.n_nodes() as usize] })
}

impl<'g> AcyclicOrientations<'g> {
    fn emit(&self) -> Orientation {
        let arcs = self
            .g
            .edges()
            .iter()
            .map(|&(a, b)| {
                if self.layer_of[a as usize] < self.layer_of[b as usize] {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        Orientation { n_nodes: self.g.n_nodes(), arcs }
    }

}

fn independent(g: &Graph, layer: Mask) -> bool {
    g.edges()
        .iter()
        .all(|&(a, b)| layer & (1u128 << a) == 0 || layer & (1u128 << b) == 0)
}

impl<'g> Iterator for AcyclicOrientations<'g> {
    type Item = Orientation;

    fn next(&mut self) -> Option<Orientation> {
        'outer: loop {
            let g = self.g;
            let depth = self.frames.len();
            let frame = self.frames.last_mut()?;
            // advance to the next non-empty independent eligible subset
            let limit = 1u64 << frame.eligible.len();
            let layer = loop {
                frame.cursor += 1;
                if frame.cursor >= limit {
                    self.frames.pop();
                    if self.frames.is_empty() {
                        return None;
                    }
                    continue 'outer;
                }
                let mut m: Mask = 0;
                for (i, &v) in frame.eligible.iter().enumerate() {
                    if frame.cursor & (1 << i) != 0 {
                        m |= 1u128 << v;
                    }
                }
                if independent(g, m) {
                    break m;
                }
            };
            let rem = frame.remaining & !layer;
            for v in vertices_of(layer) {
                self.layer_of[v as usize] = depth as u32;
            }
            if rem == 0 {
                return Some(self.emit());
            }
            // next layer: nodes of rem adjacent to the layer just placed
            let eligible: Vec<NodeId> = vertices_of(rem)
                .into_iter()
                .filter(|&v| self.g.neighbors(v).iter().any(|&w| layer & (1u128 << w) != 0))
                .collect();
            if eligible.is_empty() {
                continue; // dead branch: rem is non-empty but unreachable
            }
            self.frames.push(Frame { remaining: rem, eligible, cursor: 0 });
        }
    }
}

/// Cross-check oracle: filter all 2^E assignments for acyclicity. Only for
/// small graphs.
pub fn enumerate_acyclic_orientations_brute(g: &Graph) -> Result<Vec<Orientation>> {
    let e = g.edges().len();
    if e > 20 {
        return Err(Error::TooLarge(format!("brute filter limited to 20 edges, got {e}")));
    }
    let mut out = Vec::new();
    for bits in 0u64..(1 << e) {
        let arcs: Vec<(NodeId, NodeId)> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| if bits & (1 << i) != 0 { (a, b) } else { (b, a) })
            .collect();
        let o = Orientation { n_nodes: g.n_nodes(), arcs };
        if o.is_acyclic() {
            out.push(o);
        }
    }
    Ok(out)
}

/// Per-vertex sink counts and their sum for one orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationScore {
    pub per_vertex: Vec<u64>,
    pub total: u64,
}

/// Number of vertex-figure elements built from edges incoming at `v` only:
/// the number of faces in which `v` is a sink. The empty element (the
/// vertex itself) always counts, the full element stands for the whole
/// polytope.
pub fn sink_count(v: NodeId, o: &Orientation, vf: &VertexFigureLattice) -> u64 {
    let mut in_mask: u64 = 0;
    for &(f, t) in o.arcs() {
        if t == v {
            let e = (f.min(t), f.max(t));
            if let Ok(i) = vf.ground.binary_search(&e) {
                in_mask |= 1 << i;
            }
        }
    }
    vf.elements.iter().filter(|&&s| s & in_mask == s).count() as u64
}

fn vf_context(g: &Graph, labels: &VertexFigureLabels) -> Result<Vec<VertexFigureLattice>> {
    labels.validate_against(g)?;
    (0..g.n_nodes())
        .map(|v| vf_lattice_from_labels(v, labels.at(v).expect("validated")))
        .collect()
}

fn score_with(ctx: &[VertexFigureLattice], o: &Orientation) -> OrientationScore {
    let per_vertex: Vec<u64> =
        (0..o.n_nodes()).map(|v| sink_count(v, o, &ctx[v as usize])).collect();
    let total = per_vertex.iter().sum();
    OrientationScore { per_vertex, total }
}

/// Scores one orientation against vertex-figure labels.
pub fn score(g: &Graph, o: &Orientation, labels: &VertexFigureLabels) -> Result<OrientationScore> {
    let ctx = vf_context(g, labels)?;
    Ok(score_with(&ctx, o))
}

/// Outcome of the good-orientation search: the minimum score f, the number
/// of acyclic orientations, and every orientation achieving f.
#[derive(Clone, Debug)]
pub struct GoodOrientationSearch {
    pub f: u64,
    pub n_acyclic: u64,
    pub good: Vec<Orientation>,
}

/// Minimizes the total sink-count score over all acyclic orientations. The
/// minimizers are exactly the good orientations, and f equals the number of
/// non-empty faces.
pub fn find_good_orientations(
    g: &Graph,
    labels: &VertexFigureLabels,
    limits: &EnumLimits,
) -> Result<GoodOrientationSearch> {
    let ctx = vf_context(g, labels)?;
    let mut best: Option<u64> = None;
    let mut good: Vec<Orientation> = Vec::new();
    let mut n_acyclic: u64 = 0;
    for o in enumerate_acyclic_orientations(g, limits)? {
        n_acyclic += 1;
        if n_acyclic > limits.max_orientations {
            return Err(Error::TooLarge(format!(
                "more than {} acyclic orientations",
                limits.max_orientations
            )));
        }
        let s = score_with(&ctx, &o);
        match best {
            Some(b) if s.total > b => {}
            Some(b) if s.total == b => good.push(o),
            _ => {
                best = Some(s.total);
                good.clear();
                good.push(o);
            }
        }
    }
    let f = best.ok_or_else(|| Error::InvalidInput("graph has no orientations".into()))?;
    Ok(GoodOrientationSearch { f, n_acyclic, good })
}

fn face_sink_source_counts(o: &Orientation, face: Mask) -> (usize, usize) {
    let mut has_out: u128 = 0;
    let mut has_in: u128 = 0;
    for &(f, t) in o.arcs() {
        if face & (1u128 << f) != 0 && face & (1u128 << t) != 0 {
            has_out |= 1u128 << f;
            has_in |= 1u128 << t;
        }
    }
    let sinks = (face & !has_out).count_ones() as usize;
    let sources = (face & !has_in).count_ones() as usize;
    (sinks, sources)
}

/// Direct ground-truth check: an orientation is good iff it has exactly one
/// sink on every non-empty face. Independent of the score path.
pub fn is_good_oracle(o: &Orientation, lat: &FaceLattice) -> bool {
    lat.faces()
        .iter()
        .filter(|&&m| m != 0)
        .all(|&m| face_sink_source_counts(o, m).0 == 1)
}

/// Good and additionally exactly one source on every non-empty face.
pub fn is_abstract_objective_function(o: &Orientation, lat: &FaceLattice) -> bool {
    lat.faces()
        .iter()
        .filter(|&&m| m != 0)
        .all(|&m| face_sink_source_counts(o, m) == (1, 1))
}

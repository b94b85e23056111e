//! Dual trees of circle systems on a sphere.
//!
//! A system of disjoint circles on a sphere is recorded as a tree: one vertex
//! per complementary region, one edge per circle. Vertices are dense ids
//! `0..vertex_count`, edges are dense ids `0..edge_count` carrying unique
//! labels. Everything downstream (parity tables, unlinkedness, searches)
//! works on this representation.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::canon::CanonScratch;

pub type VertexId = usize;
pub type EdgeId = usize;

/// An edge of a dual tree: the circle separating regions `u` and `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty input: a tree needs at least one edge here (the one-vertex tree has dedicated constructors)")]
    EmptyInput,
    #[error("edge {label:?} is a self-loop on vertex {vertex}")]
    SelfLoop { label: String, vertex: VertexId },
    #[error("duplicate edge label {label:?}")]
    DuplicateLabel { label: String },
    #[error("invalid edge label {label:?}: labels are nonempty [A-Za-z0-9_]+")]
    InvalidLabel { label: String },
    #[error("edges {first:?} and {second:?} are parallel (same endpoints)")]
    ParallelEdge { first: String, second: String },
    #[error("edge {label:?} closes a cycle")]
    Cycle { label: String },
    #[error("vertex {vertex} is not connected to vertex 0")]
    Disconnected { vertex: VertexId },
    #[error("vertex id {vertex} out of range for {vertex_count} vertices")]
    InvalidVertex { vertex: VertexId, vertex_count: usize },
    #[error("invalid parameter: {message}")]
    InvalidParameter { message: String },
}

/// A dual tree. Immutable once built; construction validates treeness.
#[derive(Debug, Clone)]
pub struct Tree {
    vertex_count: usize,
    edges: Vec<Edge>,
    /// adjacency[v] lists (edge id, other endpoint) in increasing edge id.
    adjacency: Vec<Vec<(EdgeId, VertexId)>>,
    labels: BTreeMap<String, EdgeId>,
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}
impl Eq for Tree {}

fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl Tree {
    /// The one-vertex tree (a sphere with no circles on it).
    pub fn trivial() -> Tree {
        Tree {
            vertex_count: 1,
            edges: Vec::new(),
            adjacency: vec![Vec::new()],
            labels: BTreeMap::new(),
        }
    }

    /// Builds a tree from `(u, v, label)` triples. Vertex ids must be dense:
    /// the vertex count is inferred as the largest id plus one, and every id
    /// below that must occur. The edge list must form a tree: connected,
    /// acyclic, no self-loops, no parallel edges, labels unique and drawn
    /// from `[A-Za-z0-9_]+`.
    pub fn from_edges<L: AsRef<str>>(edges: &[(VertexId, VertexId, L)]) -> Result<Tree, TreeError> {
        if edges.is_empty() {
            return Err(TreeError::EmptyInput);
        }
        let n = edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(1);
        Self::from_edges_and_count(n, edges)
    }

    /// Like [`Tree::from_edges`] with an explicit vertex count, so the
    /// one-vertex tree is expressible with an empty edge list.
    pub(crate) fn from_edges_and_count<L: AsRef<str>>(
        vertex_count: usize,
        edges: &[(VertexId, VertexId, L)],
    ) -> Result<Tree, TreeError> {
        if vertex_count == 0 {
            return Err(TreeError::InvalidParameter {
                message: "vertex count must be at least 1".into(),
            });
        }
        let n = vertex_count;
        let mut labels: BTreeMap<String, EdgeId> = BTreeMap::new();
        let mut seen_pairs: BTreeMap<(usize, usize), String> = BTreeMap::new();
        let mut dsu = Dsu::new(n);
        let mut out = Vec::with_capacity(edges.len());
        for (id, (u, v, label)) in edges.iter().enumerate() {
            let (u, v, label) = (*u, *v, label.as_ref());
            if !valid_label(label) {
                return Err(TreeError::InvalidLabel {
                    label: label.to_string(),
                });
            }
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::InvalidVertex {
                        vertex: x,
                        vertex_count: n,
                    });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop {
                    label: label.to_string(),
                    vertex: u,
                });
            }
            if labels.insert(label.to_string(), id).is_some() {
                return Err(TreeError::DuplicateLabel {
                    label: label.to_string(),
                });
            }
            let key = (u.min(v), u.max(v));
            if let Some(first) = seen_pairs.insert(key, label.to_string()) {
                return Err(TreeError::ParallelEdge {
                    first,
                    second: label.to_string(),
                });
            }
            if !dsu.union(u, v) {
                return Err(TreeError::Cycle {
                    label: label.to_string(),
                });
            }
            out.push(Edge {
                u,
                v,
                label: label.to_string(),
            });
        }
        let root = dsu.find(0);
        for v in 1..n {
            if dsu.find(v) != root {
                return Err(TreeError::Disconnected { vertex: v });
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (id, e) in out.iter().enumerate() {
            adjacency[e.u].push((id, e.v));
            adjacency[e.v].push((id, e.u));
        }
        Ok(Tree {
            vertex_count: n,
            edges: out,
            adjacency,
            labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn label(&self, id: EdgeId) -> &str {
        &self.edges[id].label
    }

    pub fn edge_id(&self, label: &str) -> Option<EdgeId> {
        self.labels.get(label).copied()
    }

    /// `(edge id, neighbor)` pairs at `v`, in increasing edge id.
    pub fn adjacency(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.adjacency[v]
    }

    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e];
        if edge.u == v {
            edge.v
        } else {
            edge.u
        }
    }

    /// The set of edges incident to `v`: the boundary circles of region `v`.
    pub fn incident_edges(&self, v: VertexId) -> Result<EdgeSet, TreeError> {
        if v >= self.vertex_count {
            return Err(TreeError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let mut set = EdgeSet::empty(self.edges.len());
        for &(e, _) in &self.adjacency[v] {
            set.insert(e);
        }
        Ok(set)
    }

    /// The proper 2-coloring: color of `v` is the parity of its distance to
    /// vertex 0. On a dual tree this is the checkerboard coloring of regions.
    pub fn bicolor(&self) -> VertexColoring {
        let table = self.parity_table(&EdgeSet::full(self.edges.len()));
        VertexColoring {
            colors: table.parity,
        }
    }

    /// Parity table of crossing set `q`: entry `v` is the parity of the
    /// number of `q`-edges on the path from the reference vertex 0 to `v`.
    ///
    /// Panics if `q` was built for a different edge universe.
    pub fn parity_table(&self, q: &EdgeSet) -> ParityTable {
        assert_eq!(
            q.universe(),
            self.edges.len(),
            "crossing set universe must match the tree's edge count"
        );
        let mut parity = vec![0u8; self.vertex_count];
        let mut visited = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            for &(e, w) in &self.adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parity[w] = parity[v] ^ u8::from(q.contains(e));
                    stack.push(w);
                }
            }
        }
        ParityTable {
            reference_vertex: 0,
            crossing: q.clone(),
            parity,
        }
    }

    /// All pairs `(a, b)` with `a < b` that receive the same color under
    /// [`Tree::bicolor`], in lexicographic order. These are exactly the pairs
    /// whose unlinkedness the realizability criterion quantifies over.
    pub fn same_colored_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let coloring = self.bicolor();
        let n = self.vertex_count;
        let mut pairs = Vec::with_capacity(n * n / 4);
        for a in 0..self.vertex_count {
            for b in a + 1..self.vertex_count {
                if coloring.color(a) == coloring.color(b) {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Groups edges into orbits of the tree's automorphism group. Two edges
    /// are in one orbit iff some label-ignoring automorphism maps one to the
    /// other. Orbits and their members are sorted by edge id.
    pub fn edge_orbits(&self) -> Vec<Vec<EdgeId>> {
        let pairs = self.edges_as_pairs();
        let n = self.vertex_count;
        let mut scratch = CanonScratch::new();
        let mut groups: BTreeMap<(Vec<u8>, Vec<u8>), Vec<EdgeId>> = BTreeMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            // An edge is determined up to automorphism by the multiset of
            // canonical forms of the two halves it splits the tree into.
            let su = scratch.rooted(n, &pairs, e.u as u32, Some(id as u32)).to_vec();
            let sv = scratch.rooted(n, &pairs, e.v as u32, Some(id as u32)).to_vec();
            let key = if su <= sv { (su, sv) } else { (sv, su) };
            groups.entry(key).or_default().push(id);
        }
        let mut orbits: Vec<Vec<EdgeId>> = groups.into_values().collect();
        orbits.sort_by_key(|orbit| orbit[0]);
        orbits
    }

    /// The centroid vertex (or the smaller-id one of the two, for trees with
    /// a centroid edge): a vertex minimizing the largest component left after
    /// deleting it.
    pub fn centroid(&self) -> VertexId {
        let n = self.vertex_count;
        if n == 1 {
            return 0;
        }
        // Iterative subtree sizes from root 0, then max component per vertex.
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(_, w) in &self.adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut size = vec![1usize; n];
        let mut max_child = vec![0usize; n];
        for &v in order.iter().rev() {
            let p = parent[v];
            if p != usize::MAX {
                size[p] += size[v];
                max_child[p] = max_child[p].max(size[v]);
            }
        }
        let mut best = 0;
        let mut best_score = usize::MAX;
        for v in 0..n {
            let score = max_child[v].max(n - size[v]);
            if score < best_score {
                best_score = score;
                best = v;
            }
        }
        best
    }

    pub(crate) fn edges_as_pairs(&self) -> Vec<(u32, u32)> {
        self.edges
            .iter()
            .map(|e| (e.u as u32, e.v as u32))
            .collect()
    }
}

/// A set of edges of one particular tree, as a bitset over edge ids.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(universe: usize) -> EdgeSet {
        EdgeSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> EdgeSet {
        let mut set = EdgeSet::empty(universe);
        for e in 0..universe {
            set.insert(e);
        }
        set
    }

    /// Panics if any id is outside the universe.
    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(universe: usize, ids: I) -> EdgeSet {
        let mut set = EdgeSet::empty(universe);
        for e in ids {
            set.insert(e);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, e: EdgeId) {
        assert!(e < self.universe, "edge id {e} outside universe {}", self.universe);
        self.blocks[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: EdgeId) {
        assert!(e < self.universe, "edge id {e} outside universe {}", self.universe);
        self.blocks[e / 64] &= !(1 << (e % 64));
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.universe && self.blocks[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn intersects(&self, other: &EdgeSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .any(|(&a, &b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let mut rest = block;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The proper 2-coloring of a tree's vertices; vertex 0 gets color 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    colors: Vec<u8>,
}

impl VertexColoring {
    pub fn color(&self, v: VertexId) -> u8 {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.colors
    }
}

/// Per-vertex path parities relative to a crossing set; see
/// [`Tree::parity_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityTable {
    reference_vertex: VertexId,
    crossing: EdgeSet,
    parity: Vec<u8>,
}

impl ParityTable {
    pub fn reference_vertex(&self) -> VertexId {
        self.reference_vertex
    }

    pub fn crossing_set(&self) -> &EdgeSet {
        &self.crossing
    }

    /// Parity (0 or 1) of the count of crossing-set edges on the path from
    /// the reference vertex to `v`.
    pub fn parity(&self, v: VertexId) -> u8 {
        self.parity[v]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.parity
    }
}

//! The realizability criterion and searches over candidate bijections.
//!
//! A bijection between the edges of dual trees `g` and `h` is realizable by a
//! pair of intersecting spheres exactly when, for every same-colored vertex
//! pair `(A, B)` of `g`, the images of the incident edge sets of `A` and `B`
//! are unlinked in `h`. [`is_realizing`] evaluates that criterion for one
//! bijection in `O(k^2)`; [`brute_force_find`] tries all `k!` bijections;
//! [`find_realizing`] backtracks over partial bijections and prunes a branch
//! as soon as one vertex pair fails.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::formats::{Bijection, FormatError};
use crate::tree::{EdgeId, Tree, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("the trees have different sizes: {left} vs {right} edges")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid bijection: {0}")]
    InvalidBijection(#[from] FormatError),
}

/// Which of the two one-sidedness tests of a vertex pair failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCheck {
    /// The image of the first vertex's circles is not on one side of the
    /// image of the second's.
    FirstOnOneSideOfSecond,
    /// The image of the second vertex's circles is not on one side of the
    /// image of the first's.
    SecondOnOneSideOfFirst,
}

/// Result of checking one bijection. A violation names the lexicographically
/// first same-colored pair that fails, and which direction fails first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Realizing,
    Violation {
        first: VertexId,
        second: VertexId,
        failed: SideCheck,
    },
}

impl Verdict {
    pub fn is_realizing(&self) -> bool {
        matches!(self, Verdict::Realizing)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Brute,
    Pruned,
}

/// Outcome of a search over candidate bijections.
///
/// `nodes_explored` counts complete bijections tested for [`Strategy::Brute`]
/// and attempted single-edge assignments for [`Strategy::Pruned`]; both are
/// deterministic for given inputs.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub witness: Option<Bijection>,
    pub nodes_explored: u64,
    pub strategy: Strategy,
    pub elapsed: Duration,
}

/// Outcome of counting all realizing bijections exhaustively.
#[derive(Debug, Clone)]
pub struct CountReport {
    pub realizing: u64,
    pub candidates: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Restrict the image of the first assigned edge to one representative
    /// per automorphism orbit of the target tree. Preserves existence of a
    /// witness; on by default.
    pub symmetry_pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_pruning: true,
        }
    }
}

/// Incident edge ids per vertex, flattened into one buffer (CSR layout).
fn incidence_csr(t: &Tree) -> (Vec<EdgeId>, Vec<usize>) {
    let n = t.vertex_count();
    let mut flat = Vec::with_capacity(2 * t.edge_count());
    let mut start = Vec::with_capacity(n + 1);
    for v in 0..n {
        start.push(flat.len());
        flat.extend(t.adjacency(v).iter().map(|&(e, _)| e));
    }
    start.push(flat.len());
    (flat, start)
}

/// DFS preorder with parents, used to fill parity tables in one pass.
fn tree_walk(t: &Tree) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = t.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut stack = vec![0usize];
    visited[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(e, w) in t.adjacency(v) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = v;
                parent_edge[w] = e;
                stack.push(w);
            }
        }
    }
    (order, parent, parent_edge)
}

/// Evaluates the criterion for a full permutation. Tables of image parities
/// are built lazily per vertex and reused across pairs, so one check costs
/// `O(k^2)` total.
struct PairChecker {
    pairs: Vec<(VertexId, VertexId)>,
    delta_flat: Vec<EdgeId>,
    delta_start: Vec<usize>,
    h_end: Vec<(VertexId, VertexId)>,
    h_order: Vec<usize>,
    h_parent: Vec<usize>,
    h_parent_edge: Vec<usize>,
    /// Per-g-vertex parity tables over h's vertices, flattened row-major.
    tables: Vec<u8>,
    h_n: usize,
    built: Vec<u32>,
    stamp: u32,
    mark: Vec<bool>,
}

impl PairChecker {
    fn new(g: &Tree, h: &Tree) -> Self {
        let (h_order, h_parent, h_parent_edge) = tree_walk(h);
        let (delta_flat, delta_start) = incidence_csr(g);
        PairChecker {
            pairs: g.same_colored_pairs(),
            delta_flat,
            delta_start,
            h_end: h.edges().iter().map(|e| (e.u, e.v)).collect(),
            h_order,
            h_parent,
            h_parent_edge,
            tables: vec![0u8; g.vertex_count() * h.vertex_count()],
            h_n: h.vertex_count(),
            built: vec![0; g.vertex_count()],
            stamp: 0,
            mark: vec![false; h.edge_count()],
        }
    }

    fn ensure_table(&mut self, x: VertexId, perm: &[EdgeId]) {
        if self.built[x] == self.stamp {
            return;
        }
        self.built[x] = self.stamp;
        for i in self.delta_start[x]..self.delta_start[x + 1] {
            self.mark[perm[self.delta_flat[i]]] = true;
        }
        let table = &mut self.tables[x * self.h_n..(x + 1) * self.h_n];
        table[self.h_order[0]] = 0;
        for i in 1..self.h_order.len() {
            let v = self.h_order[i];
            table[v] = table[self.h_parent[v]] ^ u8::from(self.mark[self.h_parent_edge[v]]);
        }
        for i in self.delta_start[x]..self.delta_start[x + 1] {
            self.mark[perm[self.delta_flat[i]]] = false;
        }
    }

    /// Are the images of `a`'s circles on one side of the images of `b`'s?
    /// The two image sets are disjoint by construction (same-colored vertices
    /// are never adjacent), so only the parity condition matters.
    fn one_side_images(&self, a: VertexId, b: VertexId, perm: &[EdgeId]) -> bool {
        let table = &self.tables[b * self.h_n..(b + 1) * self.h_n];
        let mut side: Option<u8> = None;
        for &ge in &self.delta_flat[self.delta_start[a]..self.delta_start[a + 1]] {
            let (hu, hv) = self.h_end[perm[ge]];
            for w in [hu, hv] {
                match side {
                    None => side = Some(table[w]),
                    Some(s) if s != table[w] => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn check(&mut self, perm: &[EdgeId]) -> Verdict {
        self.stamp += 1;
        for i in 0..self.pairs.len() {
            let (a, b) = self.pairs[i];
            self.ensure_table(a, perm);
            self.ensure_table(b, perm);
            if !self.one_side_images(a, b, perm) {
                return Verdict::Violation {
                    first: a,
                    second: b,
                    failed: SideCheck::FirstOnOneSideOfSecond,
                };
            }
            if !self.one_side_images(b, a, perm) {
                return Verdict::Violation {
                    first: a,
                    second: b,
                    failed: SideCheck::SecondOnOneSideOfFirst,
                };
            }
        }
        Verdict::Realizing
    }
}

fn check_sizes(g: &Tree, h: &Tree) -> Result<usize, RealizeError> {
    if g.edge_count() != h.edge_count() {
        return Err(RealizeError::SizeMismatch {
            left: g.edge_count(),
            right: h.edge_count(),
        });
    }
    Ok(g.edge_count())
}

/// Decides whether `bijection` is realizing, reporting the first violating
/// same-colored pair otherwise. `O(k^2)` in the shared edge count `k`.
pub fn is_realizing(g: &Tree, h: &Tree, bijection: &Bijection) -> Result<Verdict, RealizeError> {
    check_sizes(g, h)?;
    let perm = bijection.permutation(g, h)?;
    Ok(PairChecker::new(g, h).check(&perm))
}

/// Sorted target edge ids, ordered by label; the brute force tries bijections
/// in lexicographic order of the induced label sequences.
fn targets_by_label(h: &Tree) -> Vec<EdgeId> {
    let mut ids: Vec<EdgeId> = (0..h.edge_count()).collect();
    ids.sort_by(|&a, &b| h.label(a).cmp(h.label(b)));
    ids
}

struct Brute {
    checker: PairChecker,
    targets: Vec<EdgeId>,
    used: Vec<bool>,
    perm: Vec<EdgeId>,
    candidates: u64,
    realizing: u64,
    first_witness: Option<Vec<EdgeId>>,
    stop_at_first: bool,
}

impl Brute {
    fn run(&mut self, depth: usize) -> bool {
        let k = self.targets.len();
        if depth == k {
            self.candidates += 1;
            if self.checker.check(&self.perm).is_realizing() {
                self.realizing += 1;
                if self.first_witness.is_none() {
                    self.first_witness = Some(self.perm.clone());
                }
                return self.stop_at_first;
            }
            return false;
        }
        for i in 0..k {
            if !self.used[i] {
                self.used[i] = true;
                self.perm[depth] = self.targets[i];
                let stop = self.run(depth + 1);
                self.used[i] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

fn brute_machine(g: &Tree, h: &Tree, stop_at_first: bool) -> Brute {
    let k = g.edge_count();
    Brute {
        checker: PairChecker::new(g, h),
        targets: targets_by_label(h),
        used: vec![false; k],
        perm: vec![usize::MAX; k],
        candidates: 0,
        realizing: 0,
        first_witness: None,
        stop_at_first,
    }
}

/// Tries every bijection in a fixed lexicographic order and returns the first
/// realizing one, if any. `nodes_explored` counts complete bijections tested,
/// so an exhausted search reports exactly `k!`. Runs in `O(k^2 k!)`.
pub fn brute_force_find(g: &Tree, h: &Tree) -> Result<SearchReport, RealizeError> {
    let start = Instant::now();
    check_sizes(g, h)?;
    let mut m = brute_machine(g, h, true);
    m.run(0);
    Ok(SearchReport {
        witness: m
            .first_witness
            .map(|perm| Bijection::from_permutation(g, h, &perm)),
        nodes_explored: m.candidates,
        strategy: Strategy::Brute,
        elapsed: start.elapsed(),
    })
}

/// Exhaustively counts realizing bijections (always tests all `k!`).
pub fn count_realizing(g: &Tree, h: &Tree) -> Result<CountReport, RealizeError> {
    let start = Instant::now();
    check_sizes(g, h)?;
    let mut m = brute_machine(g, h, false);
    m.run(0);
    Ok(CountReport {
        realizing: m.realizing,
        candidates: m.candidates,
        elapsed: start.elapsed(),
    })
}

/// Backtracking search state. Edges of `g` are assigned images in BFS order
/// from the centroid; whenever an assignment completes the incident set of a
/// vertex, that vertex is checked against all previously completed vertices
/// of its color, and the branch is pruned on the first failure. Parity tables
/// of completed vertices are cached and dropped on backtrack.
struct SearchState {
    k: usize,
    edge_order: Vec<EdgeId>,
    g_end: Vec<(VertexId, VertexId)>,
    h_end: Vec<(VertexId, VertexId)>,
    delta_flat: Vec<EdgeId>,
    delta_start: Vec<usize>,
    color: Vec<u8>,
    remaining: Vec<usize>,
    completed: [Vec<VertexId>; 2],
    perm: Vec<EdgeId>,
    inv: Vec<EdgeId>,
    used: Vec<bool>,
    /// Per-g-vertex parity tables over h's vertices, flattened row-major.
    tables: Vec<u8>,
    h_n: usize,
    h_order: Vec<usize>,
    h_parent: Vec<usize>,
    h_parent_edge: Vec<usize>,
    mark: Vec<bool>,
    nodes: u64,
}

impl SearchState {
    fn new(g: &Tree, h: &Tree) -> Self {
        let k = g.edge_count();
        let n = g.vertex_count();
        // BFS over g's edges from the centroid keeps each new edge adjacent
        // to already-assigned ones, so vertices complete early and prune.
        let mut edge_order = Vec::with_capacity(k);
        let mut visited = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        let root = g.centroid();
        visited[root] = true;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in g.adjacency(v) {
                if !visited[w] {
                    visited[w] = true;
                    edge_order.push(e);
                    queue.push_back(w);
                }
            }
        }
        let coloring = g.bicolor();
        let (h_order, h_parent, h_parent_edge) = tree_walk(h);
        let (delta_flat, delta_start) = incidence_csr(g);
        SearchState {
            k,
            edge_order,
            g_end: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            h_end: h.edges().iter().map(|e| (e.u, e.v)).collect(),
            delta_flat,
            delta_start,
            color: coloring.as_slice().to_vec(),
            remaining: (0..n).map(|v| g.adjacency(v).len()).collect(),
            completed: [Vec::new(), Vec::new()],
            perm: vec![usize::MAX; k],
            inv: vec![usize::MAX; k],
            used: vec![false; k],
            tables: vec![0u8; n * h.vertex_count()],
            h_n: h.vertex_count(),
            h_order,
            h_parent,
            h_parent_edge,
            mark: vec![false; k],
            nodes: 0,
        }
    }

    fn build_table(&mut self, x: VertexId) {
        for i in self.delta_start[x]..self.delta_start[x + 1] {
            self.mark[self.perm[self.delta_flat[i]]] = true;
        }
        let table = &mut self.tables[x * self.h_n..(x + 1) * self.h_n];
        table[self.h_order[0]] = 0;
        for i in 1..self.h_order.len() {
            let v = self.h_order[i];
            table[v] = table[self.h_parent[v]] ^ u8::from(self.mark[self.h_parent_edge[v]]);
        }
        for i in self.delta_start[x]..self.delta_start[x + 1] {
            self.mark[self.perm[self.delta_flat[i]]] = false;
        }
    }

    fn one_side_images(&self, a: VertexId, b: VertexId) -> bool {
        let table = &self.tables[b * self.h_n..(b + 1) * self.h_n];
        let mut side: Option<u8> = None;
        for &ge in &self.delta_flat[self.delta_start[a]..self.delta_start[a + 1]] {
            let (hu, hv) = self.h_end[self.perm[ge]];
            for w in [hu, hv] {
                match side {
                    None => side = Some(table[w]),
                    Some(s) if s != table[w] => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn pair_ok(&self, x: VertexId, y: VertexId) -> bool {
        self.one_side_images(x, y) && self.one_side_images(y, x)
    }

    /// Assigns `perm[e] = f` and runs the incremental checks. The assignment
    /// stays in place either way; the caller unassigns on `false` or after an
    /// exhausted subtree.
    fn try_assign(&mut self, e: EdgeId, f: EdgeId) -> bool {
        self.nodes += 1;
        self.perm[e] = f;
        self.inv[f] = e;
        self.used[f] = true;
        let (u, v) = self.g_end[e];
        let mut newly = [usize::MAX; 2];
        let mut count = 0;
        for x in [u, v] {
            self.remaining[x] -= 1;
            if self.remaining[x] == 0 {
                self.completed[self.color[x] as usize].push(x);
                self.build_table(x);
                newly[count] = x;
                count += 1;
            }
        }
        for &x in &newly[..count] {
            let list = &self.completed[self.color[x] as usize];
            for &earlier in &list[..list.len() - 1] {
                if !self.pair_ok(x, earlier) {
                    return false;
                }
            }
        }
        true
    }

    fn unassign(&mut self, e: EdgeId, f: EdgeId) {
        let (u, v) = self.g_end[e];
        for x in [v, u] {
            if self.remaining[x] == 0 {
                let popped = self.completed[self.color[x] as usize].pop();
                debug_assert_eq!(popped, Some(x));
            }
            self.remaining[x] += 1;
        }
        self.used[f] = false;
        self.inv[f] = usize::MAX;
        self.perm[e] = usize::MAX;
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.k {
            return true;
        }
        let e = self.edge_order[depth];
        for f in 0..self.k {
            if self.used[f] {
                continue;
            }
            if self.try_assign(e, f) && self.dfs(depth + 1) {
                return true;
            }
            self.unassign(e, f);
        }
        false
    }
}

/// Pruned backtracking search for a realizing bijection. Agrees with
/// [`brute_force_find`] on existence; the witness may differ.
/// `nodes_explored` counts attempted single-edge assignments.
pub fn find_realizing(
    g: &Tree,
    h: &Tree,
    options: &SearchOptions,
) -> Result<SearchReport, RealizeError> {
    let start = Instant::now();
    let k = check_sizes(g, h)?;
    if k == 0 {
        return Ok(SearchReport {
            witness: Some(Bijection::identity(g)),
            nodes_explored: 0,
            strategy: Strategy::Pruned,
            elapsed: start.elapsed(),
        });
    }
    // Any witness composes with an automorphism of h into one sending the
    // first edge to its orbit representative, so restricting the root image
    // to representatives preserves existence.
    let roots: Vec<EdgeId> = if options.symmetry_pruning {
        h.edge_orbits().into_iter().map(|orbit| orbit[0]).collect()
    } else {
        (0..k).collect()
    };
    let mut state = SearchState::new(g, h);
    let mut witness = None;
    let first_edge = state.edge_order[0];
    for f in roots {
        if state.try_assign(first_edge, f) && state.dfs(1) {
            witness = Some(Bijection::from_permutation(g, h, &state.perm));
            break;
        }
        state.unassign(first_edge, f);
    }
    Ok(SearchReport {
        witness,
        nodes_explored: state.nodes,
        strategy: Strategy::Pruned,
        elapsed: start.elapsed(),
    })
}

/// Decides realizability of the pair `(g, h)` with the default pruned search.
pub fn decide_lando(g: &Tree, h: &Tree) -> Result<SearchReport, RealizeError> {
    find_realizing(g, h, &SearchOptions::default())
}

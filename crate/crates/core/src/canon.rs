//! Canonical forms of free and rooted trees.
//!
//! A rooted tree is encoded as a balanced-parenthesis string: a vertex is
//! `'('` + the codes of its subtrees in ascending byte order + `')'`. Equal
//! codes mean isomorphic rooted trees. A free tree is rooted at its centroid;
//! if it has a centroid edge instead, the codes of the two halves are
//! concatenated in ascending order. The two cases stay distinguishable (one
//! top-level group versus two), so equal strings mean isomorphic free trees.
//!
//! The scratch struct keeps every buffer between calls; the enumeration loop
//! calls [`CanonScratch::canonical`] a hundred million times at its largest
//! size and must not allocate per tree.

/// Reusable workspace. `canonical` and `rooted` return a slice into the
/// internal arena, valid until the next call.
pub(crate) struct CanonScratch {
    // Adjacency as head/next linked lists over directed edge slots.
    head: Vec<i32>,
    next: Vec<i32>,
    to: Vec<u32>,
    eid: Vec<u32>,
    // DFS state.
    order: Vec<u32>,
    parent: Vec<i32>,
    parent_edge: Vec<i32>,
    stack: Vec<u32>,
    size: Vec<u32>,
    max_child: Vec<u32>,
    // Parenthesis codes, stored back to back in one arena.
    arena: Vec<u8>,
    code_start: Vec<u32>,
    code_len: Vec<u32>,
    kids: Vec<(u32, u32)>,
}

impl CanonScratch {
    pub(crate) fn new() -> Self {
        CanonScratch {
            head: Vec::new(),
            next: Vec::new(),
            to: Vec::new(),
            eid: Vec::new(),
            order: Vec::new(),
            parent: Vec::new(),
            parent_edge: Vec::new(),
            stack: Vec::new(),
            size: Vec::new(),
            max_child: Vec::new(),
            arena: Vec::new(),
            code_start: Vec::new(),
            code_len: Vec::new(),
            kids: Vec::new(),
        }
    }

    fn prepare(&mut self, n: usize, edges: &[(u32, u32)]) {
        self.head.clear();
        self.head.resize(n, -1);
        self.next.clear();
        self.to.clear();
        self.eid.clear();
        for (id, &(u, v)) in edges.iter().enumerate() {
            for (a, b) in [(u, v), (v, u)] {
                let slot = self.to.len() as i32;
                self.to.push(b);
                self.eid.push(id as u32);
                self.next.push(self.head[a as usize]);
                self.head[a as usize] = slot;
            }
        }
        self.parent.clear();
        self.parent.resize(n, -1);
        self.parent_edge.clear();
        self.parent_edge.resize(n, -1);
        self.code_start.clear();
        self.code_start.resize(n, 0);
        self.code_len.clear();
        self.code_len.resize(n, 0);
        self.arena.clear();
    }

    /// DFS preorder from `root`, skipping `blocked` (as an edge id), filling
    /// `order`, `parent`, `parent_edge`.
    fn dfs(&mut self, root: u32, blocked: i64) {
        self.order.clear();
        self.stack.clear();
        self.parent[root as usize] = -1;
        self.parent_edge[root as usize] = -1;
        self.stack.push(root);
        while let Some(v) = self.stack.pop() {
            self.order.push(v);
            let mut slot = self.head[v as usize];
            while slot >= 0 {
                let s = slot as usize;
                let w = self.to[s];
                let e = self.eid[s];
                slot = self.next[s];
                if i64::from(e) == blocked || i64::from(w) == i64::from(self.parent[v as usize]) {
                    continue;
                }
                self.parent[w as usize] = v as i32;
                self.parent_edge[w as usize] = e as i32;
                self.stack.push(w);
            }
        }
    }

    /// Appends the rooted code of the component of `root` (with `blocked`
    /// removed, if any) to the arena; returns its range.
    fn rooted_code(&mut self, root: u32, blocked: i64) -> (u32, u32) {
        self.dfs(root, blocked);
        for i in (0..self.order.len()).rev() {
            let v = self.order[i];
            self.kids.clear();
            let mut slot = self.head[v as usize];
            while slot >= 0 {
                let s = slot as usize;
                let w = self.to[s];
                let e = self.eid[s];
                slot = self.next[s];
                if i64::from(e) == blocked || i64::from(w) == i64::from(self.parent[v as usize]) {
                    continue;
                }
                self.kids.push((self.code_start[w as usize], self.code_len[w as usize]));
            }
            let arena = &self.arena;
            self.kids.sort_unstable_by(|&(s1, l1), &(s2, l2)| {
                arena[s1 as usize..(s1 + l1) as usize].cmp(&arena[s2 as usize..(s2 + l2) as usize])
            });
            let start = self.arena.len() as u32;
            self.arena.push(b'(');
            for k in 0..self.kids.len() {
                let (s, l) = self.kids[k];
                self.arena.extend_from_within(s as usize..(s + l) as usize);
            }
            self.arena.push(b')');
            self.code_start[v as usize] = start;
            self.code_len[v as usize] = self.arena.len() as u32 - start;
        }
        (self.code_start[root as usize], self.code_len[root as usize])
    }

    /// Canonical code of the subtree hanging off `root` when `blocked` is
    /// removed (rooted isomorphism invariant). With `blocked = None` this is
    /// the whole tree rooted at `root`.
    pub(crate) fn rooted(&mut self, n: usize, edges: &[(u32, u32)], root: u32, blocked: Option<u32>) -> &[u8] {
        self.prepare(n, edges);
        let blocked = blocked.map_or(-1i64, i64::from);
        let (s, l) = self.rooted_code(root, blocked);
        &self.arena[s as usize..(s + l) as usize]
    }

    /// Centroid(s) of the tree; `Some((other, edge))` when there is a
    /// centroid edge.
    fn centroids(&mut self, n: usize) -> (u32, Option<(u32, u32)>) {
        self.dfs(0, -1);
        self.size.clear();
        self.size.resize(n, 1);
        self.max_child.clear();
        self.max_child.resize(n, 0);
        for i in (1..self.order.len()).rev() {
            let v = self.order[i] as usize;
            let p = self.parent[v] as usize;
            self.size[p] += self.size[v];
            if self.size[v] > self.max_child[p] {
                self.max_child[p] = self.size[v];
            }
        }
        let n32 = n as u32;
        let mut best = u32::MAX;
        let mut c1 = 0u32;
        let mut c2: Option<u32> = None;
        for v in 0..n {
            let score = self.max_child[v].max(n32 - self.size[v]);
            if score < best {
                best = score;
                c1 = v as u32;
                c2 = None;
            } else if score == best {
                c2 = Some(v as u32);
            }
        }
        match c2 {
            None => (c1, None),
            Some(c2) => {
                // The two centroids are adjacent; find the edge between them.
                let mut slot = self.head[c1 as usize];
                while slot >= 0 {
                    let s = slot as usize;
                    if self.to[s] == c2 {
                        return (c1, Some((c2, self.eid[s])));
                    }
                    slot = self.next[s];
                }
                unreachable!("twin centroids are always adjacent")
            }
        }
    }

    /// Canonical code of a free tree given as an edge list on `0..n`.
    /// The input must already be a valid tree.
    pub(crate) fn canonical(&mut self, n: usize, edges: &[(u32, u32)]) -> &[u8] {
        debug_assert_eq!(edges.len() + 1, n);
        self.prepare(n, edges);
        match self.centroids(n) {
            (c, None) => {
                let (s, l) = self.rooted_code(c, -1);
                &self.arena[s as usize..(s + l) as usize]
            }
            (c1, Some((c2, e))) => {
                let (s1, l1) = self.rooted_code(c1, i64::from(e));
                let (s2, l2) = self.rooted_code(c2, i64::from(e));
                let a = s1 as usize..(s1 + l1) as usize;
                let b = s2 as usize..(s2 + l2) as usize;
                let (first, second) = if self.arena[a.clone()] <= self.arena[b.clone()] {
                    (a, b)
                } else {
                    (b, a)
                };
                let out = self.arena.len();
                self.arena.extend_from_within(first);
                self.arena.extend_from_within(second);
                &self.arena[out..]
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(n: usize, edges: &[(u32, u32)]) -> String {
        let mut scratch = CanonScratch::new();
        String::from_utf8(scratch.canonical(n, edges).to_vec()).unwrap()
    }

    #[test]
    fn small_canonical_forms() {
        assert_eq!(canon(1, &[]), "()");
        assert_eq!(canon(2, &[(0, 1)]), "()()");
        assert_eq!(canon(3, &[(0, 1), (1, 2)]), "(()())");
        assert_eq!(canon(4, &[(0, 1), (1, 2), (2, 3)]), "(())(())");
        assert_eq!(canon(4, &[(0, 1), (0, 2), (0, 3)]), "(()()())");
    }

    #[test]
    fn canonical_is_relabeling_invariant() {
        // The same 5-vertex tree under three different labelings.
        let a = canon(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let b = canon(5, &[(4, 3), (3, 2), (3, 1), (1, 0)]);
        let c = canon(5, &[(2, 0), (0, 4), (0, 3), (3, 1)]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        // And a genuinely different tree disagrees.
        let star = canon(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_ne!(a, star);
    }

    #[test]
    fn rooted_codes_distinguish_sides_of_an_edge() {
        // Path 0-1-2-3: removing edge (1,2) leaves equal halves; removing
        // (0,1) leaves a point and a 2-path.
        let edges = [(0, 1), (1, 2), (2, 3)];
        let mut s = CanonScratch::new();
        let h1 = s.rooted(4, &edges, 1, Some(1)).to_vec();
        let h2 = s.rooted(4, &edges, 2, Some(1)).to_vec();
        assert_eq!(h1, h2);
        let p = s.rooted(4, &edges, 0, Some(0)).to_vec();
        let rest = s.rooted(4, &edges, 1, Some(0)).to_vec();
        assert_eq!(p, b"()");
        assert_eq!(rest, b"((()))");
    }

    #[test]
    fn scratch_reuse_is_clean() {
        let mut s = CanonScratch::new();
        let first = s.canonical(4, &[(0, 1), (1, 2), (2, 3)]).to_vec();
        let _ = s.canonical(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]);
        let again = s.canonical(4, &[(0, 1), (1, 2), (2, 3)]).to_vec();
        assert_eq!(first, again);
    }
}

//! Enumeration of free trees and the standard named families.
//!
//! [`free_trees`] lists one representative per isomorphism class of trees
//! with a given edge count by sweeping all Prüfer sequences and deduplicating
//! on canonical form. That is wasteful asymptotically (the sweep visits
//! `n^(n-2)` labeled trees) but exact, simple to audit, and fast enough for
//! the edge counts the census cares about; the cutoff is 9 edges in
//! reasonable time.

use std::collections::HashSet;

use crate::canon::CanonScratch;
use crate::tree::{Tree, TreeError};

/// One tree per isomorphism class with exactly `edges` edges, sorted by
/// canonical form. Every returned tree is laid out in canonical order
/// (so `canonical_form(t)` equals the string it was rebuilt from) with
/// labels `e0`, `e1`, ... in edge id order.
pub fn free_trees(edges: usize) -> Vec<Tree> {
    if edges == 0 {
        return vec![Tree::trivial()];
    }
    let n = edges + 1;
    let mut seen: HashSet<Box<[u8]>> = HashSet::new();
    let mut seq = vec![0u8; n - 2];
    let mut edge_buf: Vec<(u32, u32)> = Vec::with_capacity(edges);
    let mut degree = vec![0u8; n];
    let mut scratch = CanonScratch::new();
    loop {
        decode_pruefer(&seq, n, &mut degree, &mut edge_buf);
        let code = scratch.canonical(n, &edge_buf);
        if !seen.contains(code) {
            seen.insert(code.to_vec().into_boxed_slice());
        }
        // Odometer over base-n digit strings.
        let mut i = seq.len();
        loop {
            if i == 0 {
                let mut codes: Vec<Box<[u8]>> = seen.into_iter().collect();
                codes.sort();
                return codes
                    .iter()
                    .map(|c| {
                        tree_from_canonical(std::str::from_utf8(c).unwrap())
                            .expect("canonical output is parseable")
                    })
                    .collect();
            }
            i -= 1;
            if seq[i] as usize + 1 < n {
                seq[i] += 1;
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Standard linear-time Prüfer decode. Any digit string over `0..n` of
/// length `n - 2` yields a labeled tree on `0..n`.
fn decode_pruefer(seq: &[u8], n: usize, degree: &mut [u8], out: &mut Vec<(u32, u32)>) {
    out.clear();
    degree[..n].fill(1);
    for &a in seq {
        degree[a as usize] += 1;
    }
    let mut ptr = 0;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &a in seq {
        let a = a as usize;
        out.push((leaf as u32, a as u32));
        degree[a] -= 1;
        if degree[a] == 1 && a < ptr {
            leaf = a;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    out.push((leaf as u32, (n - 1) as u32));
}

/// Canonical form of a tree, ignoring labels: balanced parentheses rooted at
/// the centroid (two concatenated groups when there is a centroid edge).
/// Equal strings mean isomorphic trees.
pub fn canonical_form(t: &Tree) -> String {
    let mut scratch = CanonScratch::new();
    let code = scratch.canonical(t.vertex_count(), &t.edges_as_pairs());
    String::from_utf8(code.to_vec()).unwrap()
}

/// Rebuilds a tree from a balanced-parenthesis code, labeling edges `e0`,
/// `e1`, ... in construction order (chunk by chunk, preorder; the centroid
/// edge, if the code has two top-level groups, comes last). Inverse of
/// [`canonical_form`] on canonical strings.
pub fn tree_from_canonical(code: &str) -> Result<Tree, TreeError> {
    let bytes = code.as_bytes();
    let bad = |message: String| TreeError::InvalidParameter { message };
    if bytes.is_empty() {
        return Err(bad("empty canonical code".into()));
    }
    if let Some(c) = bytes.iter().find(|&&b| b != b'(' && b != b')') {
        return Err(bad(format!(
            "canonical codes contain only parentheses, found {:?}",
            *c as char
        )));
    }
    // Split into top-level balanced groups.
    let mut groups: Vec<&[u8]> = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'(' {
            depth += 1;
        } else {
            depth = depth
                .checked_sub(1)
                .ok_or_else(|| bad("unbalanced parentheses".into()))?;
            if depth == 0 {
                groups.push(&bytes[start..=i]);
                start = i + 1;
            }
        }
    }
    if depth != 0 {
        return Err(bad("unbalanced parentheses".into()));
    }
    if groups.len() > 2 {
        return Err(bad(format!(
            "a canonical code has one or two top-level groups, found {}",
            groups.len()
        )));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next_vertex = 0usize;
    let mut roots = Vec::new();
    for group in &groups {
        let root = next_vertex;
        roots.push(root);
        // Preorder: '(' opens a child of the vertex on top of the stack.
        let mut stack: Vec<usize> = Vec::new();
        for &b in *group {
            if b == b'(' {
                let v = next_vertex;
                next_vertex += 1;
                if let Some(&p) = stack.last() {
                    edges.push((p, v));
                }
                stack.push(v);
            } else {
                stack.pop();
            }
        }
    }
    if roots.len() == 2 {
        edges.push((roots[0], roots[1]));
    }
    if edges.is_empty() {
        return Ok(Tree::trivial());
    }
    let triples: Vec<(usize, usize, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (u, v, format!("e{i}")))
        .collect();
    Tree::from_edges_and_count(next_vertex, &triples)
}

#[cfg(test)]
pub(crate) fn decode_pruefer_for_tests(
    seq: &[u8],
    n: usize,
    degree: &mut [u8],
    out: &mut Vec<(u32, u32)>,
) {
    decode_pruefer(seq, n, degree, out);
}

fn label(i: usize) -> String {
    format!("e{i}")
}

/// Path with `edges` edges: vertices `0..=edges` in a line.
pub fn path_tree(edges: usize) -> Tree {
    if edges == 0 {
        return Tree::trivial();
    }
    let triples: Vec<_> = (0..edges).map(|i| (i, i + 1, label(i))).collect();
    Tree::from_edges(&triples).unwrap()
}

/// Star with `leaves` edges around center 0.
pub fn star_tree(leaves: usize) -> Tree {
    if leaves == 0 {
        return Tree::trivial();
    }
    let triples: Vec<_> = (0..leaves).map(|i| (0, i + 1, label(i))).collect();
    Tree::from_edges(&triples).unwrap()
}

/// Two adjacent centers (edge `e0`), with `a` leaves on vertex 0 and `b`
/// leaves on vertex 1.
pub fn double_star(a: usize, b: usize) -> Tree {
    let mut triples = vec![(0, 1, label(0))];
    let mut next = 2;
    for i in 0..a {
        triples.push((0, next, label(1 + i)));
        next += 1;
    }
    for i in 0..b {
        triples.push((1, next, label(1 + a + i)));
        next += 1;
    }
    Tree::from_edges(&triples).unwrap()
}

/// Three paths of the given lengths joined at a common center (vertex 0).
/// Legs of length 0 are skipped.
pub fn spider(l1: usize, l2: usize, l3: usize) -> Tree {
    let mut triples: Vec<(usize, usize, String)> = Vec::new();
    let mut next = 1;
    for len in [l1, l2, l3] {
        let mut prev = 0;
        for _ in 0..len {
            triples.push((prev, next, label(triples.len())));
            prev = next;
            next += 1;
        }
    }
    if triples.is_empty() {
        return Tree::trivial();
    }
    Tree::from_edges(&triples).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn counts_of_small_free_trees() {
        let expected = [1usize, 1, 1, 2, 3, 6, 11];
        for (k, &want) in expected.iter().enumerate() {
            assert_eq!(free_trees(k).len(), want, "k = {k}");
        }
    }

    #[test]
    fn enumeration_output_is_canonical_sorted_and_distinct() {
        for k in 0..=6 {
            let trees = free_trees(k);
            let forms: Vec<String> = trees.iter().map(canonical_form).collect();
            let mut sorted = forms.clone();
            sorted.sort();
            assert_eq!(forms, sorted, "k = {k}");
            let distinct: HashSet<&String> = forms.iter().collect();
            assert_eq!(distinct.len(), forms.len(), "k = {k}");
            for t in &trees {
                assert_eq!(t.edge_count(), k);
                for (i, e) in t.edges().iter().enumerate() {
                    assert_eq!(e.label, format!("e{i}"));
                }
            }
        }
    }

    #[test]
    fn canonical_forms_of_named_trees() {
        assert_eq!(canonical_form(&Tree::trivial()), "()");
        assert_eq!(canonical_form(&path_tree(1)), "()()");
        assert_eq!(canonical_form(&path_tree(2)), "(()())");
        assert_eq!(canonical_form(&path_tree(3)), "(())(())");
        assert_eq!(canonical_form(&star_tree(3)), "(()()())");
        // A star equals a double star with one empty side, as graphs.
        assert_eq!(
            canonical_form(&double_star(0, 3)),
            canonical_form(&star_tree(4))
        );
        assert_eq!(
            canonical_form(&spider(1, 1, 1)),
            canonical_form(&star_tree(3))
        );
        assert_eq!(
            canonical_form(&spider(2, 1, 0)),
            canonical_form(&path_tree(3))
        );
    }

    #[test]
    fn round_trip_through_canonical_codes() {
        for k in 0..=6 {
            for t in free_trees(k) {
                let code = canonical_form(&t);
                let back = tree_from_canonical(&code).unwrap();
                assert_eq!(canonical_form(&back), code);
                assert_eq!(back.edge_count(), t.edge_count());
            }
        }
    }

    #[test]
    fn rejects_malformed_codes() {
        for bad in ["", "(", ")", "())(", "()x", "()()()"] {
            assert!(tree_from_canonical(bad).is_err(), "{bad:?}");
        }
        // Non-canonical but balanced codes still parse to the right tree:
        // this one is a 4-vertex path written off-center, and this spider
        // has its children out of sorted order.
        let t = tree_from_canonical("(()(()))").unwrap();
        assert_eq!(canonical_form(&t), "(())(())");
        let t = tree_from_canonical("(()(())())").unwrap();
        assert_eq!(canonical_form(&t), "((())()())");
    }

    #[test]
    fn named_constructors_have_documented_shapes() {
        let ds = double_star(4, 4);
        assert_eq!(ds.edge_count(), 9);
        assert_eq!(ds.adjacency(0).len(), 5);
        assert_eq!(ds.adjacency(1).len(), 5);
        assert_eq!(ds.edge(0).u, 0);
        assert_eq!(ds.edge(0).v, 1);

        let sp = spider(3, 3, 3);
        assert_eq!(sp.edge_count(), 9);
        let center: Vec<usize> = sp.adjacency(0).iter().map(|&(e, _)| e).collect();
        assert_eq!(center, vec![0, 3, 6]);

        assert_eq!(path_tree(0), Tree::trivial());
        assert_eq!(spider(0, 0, 0), Tree::trivial());
    }

    proptest! {
        // Canonical form is invariant under relabeling of vertices.
        #[test]
        fn canonical_form_ignores_labeling(seq in proptest::collection::vec(0u8..7, 5), perm_seed in 0u64..10_000) {
            let n = 7usize;
            let mut degree = vec![0u8; n];
            let mut edges = Vec::new();
            super::decode_pruefer(&seq, n, &mut degree, &mut edges);

            // Derive a permutation of 0..n from the seed (Fisher-Yates with a
            // tiny splitmix step; determinism matters, quality does not).
            let mut perm: Vec<u32> = (0..n as u32).collect();
            let mut state = perm_seed.wrapping_add(0x9E3779B97F4A7C15);
            for i in (1..n).rev() {
                state ^= state >> 30;
                state = state.wrapping_mul(0xBF58476D1CE4E5B9);
                state ^= state >> 27;
                let j = (state % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }

            let relabeled: Vec<(u32, u32)> = edges.iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect();
            let mut scratch = crate::canon::CanonScratch::new();
            let a = scratch.canonical(n, &edges).to_vec();
            let b = scratch.canonical(n, &relabeled).to_vec();
            prop_assert_eq!(a, b);
        }
    }
}

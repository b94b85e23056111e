//! One-sidedness and unlinkedness of circle unions, read off a dual tree.
//!
//! Let `p` and `q` be disjoint sets of edges of one dual tree, standing for
//! two disjoint unions of circles. The union `p` lies on one side of `q`
//! exactly when every path between endpoints of `p`-edges crosses `q` an even
//! number of times; `p` and `q` are unlinked when each lies on one side of
//! the other. One-sidedness is genuinely asymmetric and unlinkedness is not
//! transitive, which is what makes the realizability criterion quantify over
//! all same-colored vertex pairs.

use crate::tree::{EdgeSet, Tree};

/// Whether the union of circles `p` is on one side of the union `q`.
///
/// Requires `p` and `q` to come from `t`'s edge universe. Overlapping unions
/// are never one-sided; either union being empty makes this vacuously true.
pub fn on_one_side(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    assert_eq!(p.universe(), t.edge_count(), "p must come from this tree");
    if p.intersects(q) {
        return false;
    }
    let table = t.parity_table(q);
    let mut side: Option<u8> = None;
    for e in p.iter() {
        let edge = t.edge(e);
        for v in [edge.u, edge.v] {
            let parity = table.parity(v);
            match side {
                None => side = Some(parity),
                Some(s) if s != parity => return false,
                _ => {}
            }
        }
    }
    true
}

/// Whether `p` and `q` are unlinked: each is on one side of the other.
pub fn unlinked(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    on_one_side(t, p, q) && on_one_side(t, q, p)
}

/// Independent reference implementation of [`unlinked`] for cross-checking:
/// deletes `q` from the tree, 2-colors the quotient tree of the remaining
/// components, and asks whether all of `p` lands in one color class (and
/// symmetrically). Slower, shares no code with the parity-table route.
pub fn unlinked_oracle(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    one_side_by_components(t, p, q) && one_side_by_components(t, q, p)
}

fn one_side_by_components(t: &Tree, p: &EdgeSet, q: &EdgeSet) -> bool {
    assert_eq!(p.universe(), t.edge_count(), "p must come from this tree");
    assert_eq!(q.universe(), t.edge_count(), "q must come from this tree");
    if p.intersects(q) {
        return false;
    }
    let n = t.vertex_count();

    // Components of the tree with q removed.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (id, e) in t.edges().iter().enumerate() {
        if !q.contains(id) {
            let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
    }

    // The components, joined along q-edges, form a tree; 2-color it.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in q.iter() {
        let edge = t.edge(e);
        let (ru, rv) = (find(&mut parent, edge.u), find(&mut parent, edge.v));
        adj[ru].push(rv);
        adj[rv].push(ru);
    }
    let mut color = vec![u8::MAX; n];
    let start = find(&mut parent, 0);
    color[start] = 0;
    let mut stack = vec![start];
    while let Some(c) = stack.pop() {
        for &d in &adj[c] {
            if color[d] == u8::MAX {
                color[d] = 1 - color[c];
                stack.push(d);
            }
        }
    }

    // Each p-edge lies inside one component; they must all share a color.
    let mut side: Option<u8> = None;
    for e in p.iter() {
        let edge = t.edge(e);
        let c = find(&mut parent, edge.u);
        debug_assert_eq!(c, find(&mut parent, edge.v), "p-edge not split by q");
        match side {
            None => side = Some(color[c]),
            Some(s) if s != color[c] => return false,
            _ => {}
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{free_trees, path_tree};
    use crate::tree::EdgeSet;
    use proptest::prelude::*;

    fn set(universe: usize, ids: &[usize]) -> EdgeSet {
        EdgeSet::from_ids(universe, ids.iter().copied())
    }

    #[test]
    fn one_sidedness_is_asymmetric_on_the_three_edge_path() {
        let t = path_tree(3);
        let p = set(3, &[1]);
        let q = set(3, &[0, 2]);
        // The middle circle sits between the outer two: it is on one side of
        // their union, but the union straddles it.
        assert!(on_one_side(&t, &p, &q));
        assert!(!on_one_side(&t, &q, &p));
        assert!(!unlinked(&t, &p, &q));
        assert!(!unlinked_oracle(&t, &p, &q));
    }

    #[test]
    fn nested_singletons_are_unlinked() {
        let t = path_tree(3);
        assert!(unlinked(&t, &set(3, &[0]), &set(3, &[2])));
        assert!(unlinked(&t, &set(3, &[0]), &set(3, &[1])));
        // Any two distinct circles are unlinked, whatever the tree.
        for tree in free_trees(4) {
            for a in 0..4 {
                for b in 0..4 {
                    if a != b {
                        assert!(unlinked(&tree, &set(4, &[a]), &set(4, &[b])));
                    }
                }
            }
        }
    }

    #[test]
    fn unlinkedness_is_not_transitive() {
        let t = path_tree(5);
        let p = set(5, &[0, 2]);
        let q = set(5, &[4]);
        let r = set(5, &[1]);
        assert!(unlinked(&t, &p, &q));
        assert!(unlinked(&t, &q, &r));
        assert!(!unlinked(&t, &p, &r));
    }

    #[test]
    fn overlapping_unions_are_linked_not_an_error() {
        let t = path_tree(3);
        let p = set(3, &[0, 1]);
        let q = set(3, &[1, 2]);
        assert!(!on_one_side(&t, &p, &q));
        assert!(!unlinked(&t, &p, &q));
        assert!(!unlinked_oracle(&t, &p, &q));
    }

    #[test]
    fn empty_unions_are_unlinked_from_everything() {
        let t = path_tree(3);
        let none = EdgeSet::empty(3);
        for ids in [vec![], vec![0], vec![0, 1, 2]] {
            let q = set(3, &ids);
            assert!(unlinked(&t, &none, &q));
            assert!(unlinked(&t, &q, &none));
            assert!(unlinked_oracle(&t, &none, &q));
        }
    }

    #[test]
    fn oracle_agrees_on_every_disjoint_pair_of_small_trees() {
        for k in 0..=4 {
            for t in free_trees(k) {
                // Each edge goes to p, to q, or to neither.
                for assignment in 0..3usize.pow(k as u32) {
                    let mut p = EdgeSet::empty(k);
                    let mut q = EdgeSet::empty(k);
                    let mut rest = assignment;
                    for e in 0..k {
                        match rest % 3 {
                            1 => p.insert(e),
                            2 => q.insert(e),
                            _ => {}
                        }
                        rest /= 3;
                    }
                    assert_eq!(
                        unlinked(&t, &p, &q),
                        unlinked_oracle(&t, &p, &q),
                        "tree {k} edges, p={p:?} q={q:?}"
                    );
                }
            }
        }
    }

    proptest! {
        // Unlinkedness is symmetric, and the fast path matches the oracle
        // even when the sets are allowed to intersect.
        #[test]
        fn random_sets_agree_with_oracle(seq in proptest::collection::vec(0u8..8, 6), mask_p in 0u16..256, mask_q in 0u16..256) {
            let n = 8usize;
            let mut degree = vec![0u8; n];
            let mut edges = Vec::new();
            crate::enumerate::decode_pruefer_for_tests(&seq, n, &mut degree, &mut edges);
            let triples: Vec<(usize, usize, String)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u as usize, v as usize, format!("e{i}")))
                .collect();
            let t = crate::tree::Tree::from_edges(&triples).unwrap();
            let k = t.edge_count();
            let p = EdgeSet::from_ids(k, (0..k).filter(|e| mask_p & (1 << e) != 0));
            let q = EdgeSet::from_ids(k, (0..k).filter(|e| mask_q & (1 << e) != 0));
            prop_assert_eq!(unlinked(&t, &p, &q), unlinked_oracle(&t, &p, &q));
            prop_assert_eq!(unlinked(&t, &p, &q), unlinked(&t, &q, &p));
        }
    }
}

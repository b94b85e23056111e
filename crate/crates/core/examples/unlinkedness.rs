//! The unlinkedness predicate on edge sets of a tree, and its quirks.
//!
//! Two disjoint edge sets `p`, `q` are unlinked when `p` lies on one side of
//! `q` and `q` lies on one side of `p`. One-sidedness alone is not symmetric,
//! and unlinkedness is not transitive; this example exhibits both, and shows
//! the independent component-coloring oracle agreeing with the parity
//! implementation.
//!
//! Run with `cargo run --example unlinkedness`.

use lando_kit::enumerate::path_tree;
use lando_kit::tree::EdgeSet;
use lando_kit::unlink::{on_one_side, unlinked, unlinked_oracle};

fn main() {
    // Path with 3 edges: e0, e1, e2 in a row.
    let p3 = path_tree(3);
    let k = p3.edge_count();
    let middle = EdgeSet::from_ids(k, [1]);
    let outer = EdgeSet::from_ids(k, [0, 2]);

    println!("tree: path e0 - e1 - e2");
    println!(
        "  {{e1}} on one side of {{e0,e2}}: {}",
        on_one_side(&p3, &middle, &outer)
    );
    println!(
        "  {{e0,e2}} on one side of {{e1}}: {}",
        on_one_side(&p3, &outer, &middle)
    );
    println!(
        "  unlinked({{e1}}, {{e0,e2}}): {}",
        unlinked(&p3, &middle, &outer)
    );

    // Non-transitivity on the 5-edge path.
    let p5 = path_tree(5);
    let k = p5.edge_count();
    let p = EdgeSet::from_ids(k, [0, 2]);
    let q = EdgeSet::from_ids(k, [4]);
    let r = EdgeSet::from_ids(k, [1]);
    println!("\ntree: path e0 - e1 - e2 - e3 - e4");
    println!("  unlinked({{e0,e2}}, {{e4}}): {}", unlinked(&p5, &p, &q));
    println!("  unlinked({{e4}}, {{e1}}):    {}", unlinked(&p5, &q, &r));
    println!("  unlinked({{e0,e2}}, {{e1}}): {}", unlinked(&p5, &p, &r));

    // The empty set is unlinked from everything.
    let empty = EdgeSet::empty(k);
    assert!(unlinked(&p5, &empty, &p));

    // The oracle rebuilds components of the tree minus q and 2-colors them;
    // it must agree with the parity tables everywhere.
    for (a, b) in [(&p, &q), (&q, &r), (&p, &r), (&empty, &p)] {
        assert_eq!(unlinked(&p5, a, b), unlinked_oracle(&p5, a, b));
    }
    println!("\ncomponent-coloring oracle agrees on every pair above");
}

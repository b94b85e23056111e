//! Enumerate free trees and inspect canonical forms.
//!
//! `free_trees(k)` yields one representative per isomorphism class of trees
//! with `k` edges, sorted by canonical form. Canonical forms are balanced
//! parenthesis strings rooted at the centroid; equal strings mean isomorphic
//! trees.
//!
//! Run with `cargo run --example enumerate_trees`.

use lando_kit::enumerate::{canonical_form, double_star, free_trees, path_tree, spider, star_tree};

fn main() {
    println!("free trees by edge count:");
    for k in 0..=7 {
        let trees = free_trees(k);
        println!("  k={k}: {} classes", trees.len());
    }

    println!("\nthe 3 shapes with 4 edges:");
    for t in free_trees(4) {
        println!("  {}", canonical_form(&t));
    }

    // Named constructors land in the same canonical space.
    println!("\nnamed fixtures:");
    for (name, t) in [
        ("path_tree(4)", path_tree(4)),
        ("star_tree(4)", star_tree(4)),
        ("double_star(2,2)", double_star(2, 2)),
        ("spider(2,1,1)", spider(2, 1, 1)),
    ] {
        println!("  {name:<18} -> {}", canonical_form(&t));
    }
    assert_eq!(
        canonical_form(&spider(1, 1, 1)),
        canonical_form(&star_tree(3))
    );

    // Edge orbits under the automorphism group, for the spider used in the
    // 9-circle counterexample: legs are interchangeable, depths are not.
    let s = spider(3, 3, 3);
    println!("\nedge orbits of spider(3,3,3):");
    for orbit in s.edge_orbits() {
        let labels: Vec<&str> = orbit.iter().map(|&e| s.label(e)).collect();
        println!("  {{{}}}", labels.join(", "));
    }
}

//! Search for a realizing bijection between two circle systems.
//!
//! Compares the exhaustive search (all k! bijections in lexicographic order)
//! with the pruned backtracking search (edge-by-edge assignment, checking
//! each same-colored region pair as soon as its constraint is complete), and
//! counts how many of the k! bijections realize.
//!
//! Run with `cargo run --example search_witnesses`.

use lando_kit::enumerate::{path_tree, star_tree};
use lando_kit::realize::{brute_force_find, count_realizing, decide_lando, is_realizing};

fn main() {
    let g = path_tree(3);
    let h = star_tree(3);

    let brute = brute_force_find(&g, &h).unwrap();
    println!("brute force over 3! bijections:");
    match &brute.witness {
        Some(w) => println!("  witness: {}", w.to_text()),
        None => println!("  no realizing bijection"),
    }
    println!("  candidates tested: {}", brute.nodes_explored);

    let pruned = decide_lando(&g, &h).unwrap();
    println!("pruned backtracking:");
    match &pruned.witness {
        Some(w) => println!("  witness: {}", w.to_text()),
        None => println!("  no realizing bijection"),
    }
    println!("  assignments attempted: {}", pruned.nodes_explored);

    // Both must agree on existence, and any witness must check out.
    assert_eq!(brute.witness.is_some(), pruned.witness.is_some());
    for report in [&brute, &pruned] {
        if let Some(w) = &report.witness {
            assert!(is_realizing(&g, &h, w).unwrap().is_realizing());
        }
    }

    let count = count_realizing(&g, &h).unwrap();
    println!(
        "{} of the {} bijections from the 3-path to the 3-star realize",
        count.realizing, count.candidates
    );
}

//! Two 9-circle systems that no pair of intersecting spheres can produce.
//!
//! The dual trees are the double star with 4 + 4 leaves and the spider with
//! three legs of length 3. Exhaustive search over all 9! = 362880 bijections
//! finds no realizing one, so the two circle systems cannot arise as the
//! intersection pattern of two spheres under any pairing of their circles.
//! The pruned search reaches the same verdict after far fewer assignments.
//!
//! Run with `cargo run --example sphere_counterexample`.

use lando_kit::enumerate::{double_star, spider};
use lando_kit::realize::brute_force_find;
use lando_kit::realize::decide_lando;

fn main() {
    let g = double_star(4, 4);
    let h = spider(3, 3, 3);
    println!(
        "G: double star, two adjacent centers with 4 leaves each ({} circles)",
        g.edge_count()
    );
    println!(
        "H: spider, three 3-edge legs from one center ({} circles)\n",
        h.edge_count()
    );

    let brute = brute_force_find(&g, &h).unwrap();
    assert!(brute.witness.is_none());
    assert_eq!(brute.nodes_explored, 362880);
    println!(
        "brute force: no realizing bijection among all {} candidates ({:.1?})",
        brute.nodes_explored, brute.elapsed
    );

    let pruned = decide_lando(&g, &h).unwrap();
    assert!(pruned.witness.is_none());
    assert!(pruned.nodes_explored < brute.nodes_explored);
    println!(
        "pruned:      same verdict after {} assignments ({:.1?})",
        pruned.nodes_explored, pruned.elapsed
    );

    println!("\nno two spheres in 3-space intersect in these two circle systems");
}

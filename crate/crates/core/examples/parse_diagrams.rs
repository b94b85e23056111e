//! Parse a circle diagram, build its dual tree, and serialize it.
//!
//! Run with `cargo run --example parse_diagrams`.

use lando_kit::formats::{
    diagram_to_tree, parse_diagram, parse_json_tree, parse_tree_file, to_diagram_text, to_dot,
    to_json, to_tree_file,
};

fn main() {
    // Three circles: `a` contains `b`, and `c` sits next to `a` on the sphere.
    let text = "a(b()), c()";
    let diagram = parse_diagram(text).expect("well-formed diagram");
    let tree = diagram_to_tree(&diagram);

    println!("diagram: {text}");
    println!(
        "dual tree: {} regions, {} circles",
        tree.vertex_count(),
        tree.edge_count()
    );
    for edge in tree.edges() {
        println!("  circle {:<4} borders regions {} and {}", edge.label, edge.u, edge.v);
    }

    // The same tree in each of the other text formats.
    println!("\nas a tree file:\n{}", to_tree_file(&tree));
    println!("as JSON:\n{}\n", to_json(&tree));
    println!("as DOT (vertices filled by 2-coloring):\n{}", to_dot(&tree));

    // Every format round-trips.
    let back = parse_tree_file(&to_tree_file(&tree)).unwrap();
    assert_eq!(to_json(&back), to_json(&tree));
    let back = parse_json_tree(&to_json(&tree)).unwrap();
    assert_eq!(to_json(&back), to_json(&tree));
    let back = diagram_to_tree(&parse_diagram(&to_diagram_text(&tree)).unwrap());
    assert_eq!(to_json(&back), to_json(&tree));
    println!("round trips: tree file, JSON, and diagram text all agree");

    // Parse errors carry positions.
    let err = parse_diagram("a(b()").unwrap_err();
    println!("\nmalformed input \"a(b()\" rejected: {err}");
}

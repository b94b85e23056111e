//! Check whether a given circle bijection is realizing.
//!
//! The smallest interesting case: three nested circles on each sphere (dual
//! tree a 3-edge path). The bijection that keeps the innermost circle fixed
//! but swaps the outer two is not realizable; the identity is.
//!
//! Run with `cargo run --example check_bijection`.

use lando_kit::enumerate::path_tree;
use lando_kit::formats::{parse_bijection, Bijection};
use lando_kit::realize::{is_realizing, SideCheck, Verdict};

fn main() {
    let g = path_tree(3);
    let h = path_tree(3);

    let swap = parse_bijection("e0=e1, e1=e0, e2=e2", &g, &h).unwrap();
    match is_realizing(&g, &h, &swap).unwrap() {
        Verdict::Realizing => unreachable!("the swap is known non-realizing"),
        Verdict::Violation {
            first,
            second,
            failed,
        } => {
            println!("bijection e0=e1, e1=e0, e2=e2 is NOT realizing");
            println!("  violating same-colored region pair: ({first}, {second})");
            let dir = match failed {
                SideCheck::FirstOnOneSideOfSecond => "first's circles vs second's",
                SideCheck::SecondOnOneSideOfFirst => "second's circles vs first's",
            };
            println!("  failed one-sidedness test: {dir}");
        }
    }

    // The identity bijection realizes on any tree against itself.
    let id = Bijection::identity(&g);
    let verdict = is_realizing(&g, &h, &id).unwrap();
    println!("\nidentity bijection: {verdict:?}");
    assert!(verdict.is_realizing());
}

//! A small realizability census over all tree pairs with few circles.
//!
//! For every unordered pair of free trees with the same edge count k <= 5,
//! decide whether some bijection between their circle sets realizes, and
//! tabulate the verdicts. The same sweep at larger k is available as the
//! `census` CLI subcommand, which writes CSV.
//!
//! Run with `cargo run --example census`.

use lando_kit::enumerate::{canonical_form, free_trees};
use lando_kit::realize::decide_lando;

fn main() {
    let mut pairs = 0u64;
    let mut non_realizable = 0u64;
    for k in 0..=5 {
        let trees = free_trees(k);
        for i in 0..trees.len() {
            for j in i..trees.len() {
                let report = decide_lando(&trees[i], &trees[j]).unwrap();
                pairs += 1;
                let verdict = if report.witness.is_some() {
                    "yes"
                } else {
                    non_realizable += 1;
                    "NO"
                };
                println!(
                    "k={k} {:<14} {:<14} realizable={verdict:<4} nodes={}",
                    canonical_form(&trees[i]),
                    canonical_form(&trees[j]),
                    report.nodes_explored
                );
            }
        }
    }
    println!("\n{pairs} pairs, {non_realizable} non-realizable");
}

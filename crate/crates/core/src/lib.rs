//! Combinatorics of transversally intersecting spheres.
//!
//! When two spheres embedded in 3-space meet transversally, the intersection
//! is a finite system of disjoint circles, and that system sits inside each
//! sphere as a collection of disjoint simple closed curves. A system of
//! disjoint circles on a sphere is captured, up to homeomorphism, by its dual
//! tree: one vertex per complementary region, one edge per circle, joining
//! the two regions the circle borders.
//!
//! Given two circle systems of the same size and a bijection between them,
//! one can ask whether some pair of intersecting spheres produces exactly
//! that pairing of curves. The answer is purely combinatorial: the bijection
//! is realizable if and only if for every pair of same-colored vertices `A`,
//! `B` of the first dual tree (colors come from the proper 2-coloring), the
//! images of the incident edge sets of `A` and `B` are *unlinked* in the
//! second tree. This crate implements that criterion, exhaustive and pruned
//! searches over candidate bijections, enumeration of the free trees that
//! index circle systems, and a small census toolchain on top.
//!
//! ```
//! use lando_kit::enumerate::{path_tree, star_tree};
//! use lando_kit::realize::decide_lando;
//!
//! let g = path_tree(3);
//! let h = star_tree(3);
//! let report = decide_lando(&g, &h).unwrap();
//! assert!(report.witness.is_some());
//! ```

pub mod cli;
pub mod enumerate;
pub mod formats;
pub mod realize;
pub mod tree;
pub mod unlink;

mod canon;

pub use formats::{Bijection, CircleDiagram, FormatError};
pub use realize::{SearchReport, Verdict};
pub use tree::{EdgeId, EdgeSet, Tree, TreeError, VertexId};

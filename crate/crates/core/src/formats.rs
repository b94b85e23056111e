//! Text formats: circle diagrams, tree files, DOT and JSON output, and the
//! bijection notation used on the command line.
//!
//! Circle diagram grammar (whitespace between tokens is ignored):
//!
//! ```text
//! diagram := circles
//! circles := circle (',' circle)*
//! circle  := LABEL '(' circles? ')'
//! LABEL   := [A-Za-z0-9_]+
//! ```
//!
//! A diagram describes disjoint circles on a sphere by nesting; its dual tree
//! has vertex 0 for the outer region and one extra vertex per circle.
//! The empty diagram is rejected; write the one-vertex tree as a tree file
//! (`tree` header plus a `vertex NAME` line) instead.
//!
//! Tree file format, one item per line: a `tree` header, then lines
//! `U -- V : LABEL` (five whitespace-separated tokens) and `vertex NAME`
//! declarations. `#` starts a comment. Vertex names map to ids in order of
//! first mention; the first-mentioned vertex is the reference region 0.
//!
//! Bijection notation: comma-separated `SOURCE=TARGET` label pairs, e.g.
//! `a=x,b=y`. It must cover every source edge exactly once and hit every
//! target edge exactly once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{EdgeId, Tree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("empty input")]
    EmptyInput,
    #[error("a tree with no edges needs an explicit vertex line")]
    EmptyTreeNeedsVertexLine,
    #[error("invalid tree: {0}")]
    Tree(#[from] TreeError),
    #[error("invalid JSON: {message}")]
    Json { message: String },
    #[error("label {label:?} is not assigned")]
    MissingAssignment { label: String },
    #[error("label {label:?} assigned more than once")]
    DuplicateAssignment { label: String },
    #[error("unknown edge label {label:?}")]
    UnknownLabel { label: String },
    #[error("the trees have different sizes: {left} vs {right} edges")]
    SizeMismatch { left: usize, right: usize },
}

/// One circle and the circles nested directly inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleNode {
    pub label: String,
    pub children: Vec<CircleNode>,
}

/// A system of disjoint circles on a sphere, as a nesting forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleDiagram {
    pub roots: Vec<CircleNode>,
}

struct DiagramParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> DiagramParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, expected: &str) -> Result<T, FormatError> {
        Err(FormatError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), FormatError> {
        self.skip_ws();
        if self.pos < self.bytes.len() && self.bytes[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("'{}'", c as char))
        }
    }

    fn label(&mut self) -> Result<String, FormatError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("a circle label");
        }
        Ok(String::from_utf8(self.bytes[start..self.pos].to_vec()).unwrap())
    }

    fn circle(&mut self) -> Result<CircleNode, FormatError> {
        let label = self.label()?;
        self.expect(b'(')?;
        self.skip_ws();
        let children = if self.pos < self.bytes.len() && self.bytes[self.pos] == b')' {
            Vec::new()
        } else {
            self.circles()?
        };
        self.expect(b')')?;
        Ok(CircleNode { label, children })
    }

    fn circles(&mut self) -> Result<Vec<CircleNode>, FormatError> {
        let mut out = vec![self.circle()?];
        loop {
            self.skip_ws();
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b',' {
                self.pos += 1;
                out.push(self.circle()?);
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parses the circle diagram grammar above. Labels must be unique.
pub fn parse_diagram(text: &str) -> Result<CircleDiagram, FormatError> {
    let mut parser = DiagramParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    if parser.pos == parser.bytes.len() {
        return Err(FormatError::EmptyInput);
    }
    let roots = parser.circles()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return parser.err("',' or end of input");
    }
    let mut seen = BTreeSet::new();
    let mut stack: Vec<&CircleNode> = roots.iter().collect();
    while let Some(node) = stack.pop() {
        if !seen.insert(node.label.clone()) {
            return Err(FormatError::DuplicateLabel {
                label: node.label.clone(),
            });
        }
        stack.extend(node.children.iter());
    }
    Ok(CircleDiagram { roots })
}

/// Dual tree of a diagram: vertex 0 is the outer region, then one vertex per
/// circle in preorder; each circle becomes the edge between the regions just
/// outside and just inside it. Edge ids follow preorder.
pub fn diagram_to_tree(diagram: &CircleDiagram) -> Tree {
    let mut triples: Vec<(usize, usize, String)> = Vec::new();
    let mut next = 1usize;
    fn walk(
        node: &CircleNode,
        outside: usize,
        next: &mut usize,
        triples: &mut Vec<(usize, usize, String)>,
    ) {
        let inside = *next;
        *next += 1;
        triples.push((outside, inside, node.label.clone()));
        for child in &node.children {
            walk(child, inside, next, triples);
        }
    }
    for root in &diagram.roots {
        walk(root, 0, &mut next, &mut triples);
    }
    Tree::from_edges(&triples).expect("a nesting forest always dualizes to a tree")
}

/// Renders the circle diagram of `t` seen from region 0 (the outer region).
/// Children at every region are ordered by edge id. Returns the empty string
/// for the one-vertex tree, which has no diagram.
pub fn to_diagram_text(t: &Tree) -> String {
    fn walk(t: &Tree, v: usize, parent_edge: Option<EdgeId>, out: &mut String) {
        let mut first = true;
        for &(e, w) in t.adjacency(v) {
            if Some(e) == parent_edge {
                continue;
            }
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(t.label(e));
            out.push('(');
            walk(t, w, Some(e), out);
            out.push(')');
        }
    }
    let mut out = String::new();
    walk(t, 0, None, &mut out);
    out
}

/// Parses the line-oriented tree file format described in the module docs.
pub fn parse_tree_file(text: &str) -> Result<Tree, FormatError> {
    let mut names: BTreeMap<String, usize> = BTreeMap::new();
    let id_of = |name: &str, names: &mut BTreeMap<String, usize>| -> usize {
        if let Some(&id) = names.get(name) {
            id
        } else {
            let id = names.len();
            names.insert(name.to_string(), id);
            id
        }
    };
    let mut saw_header = false;
    let mut triples: Vec<(usize, usize, String)> = Vec::new();
    let mut significant = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        significant = true;
        if !saw_header {
            if line != "tree" {
                return Err(FormatError::Line {
                    line: line_no,
                    message: format!("expected header \"tree\", found {line:?}"),
                });
            }
            saw_header = true;
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", name] => {
                id_of(name, &mut names);
            }
            [u, "--", v, ":", label] => {
                let ui = id_of(u, &mut names);
                let vi = id_of(v, &mut names);
                triples.push((ui, vi, label.to_string()));
            }
            _ => {
                return Err(FormatError::Line {
                    line: line_no,
                    message: format!(
                        "expected \"U -- V : LABEL\" or \"vertex NAME\", found {line:?}"
                    ),
                });
            }
        }
    }
    if !significant {
        return Err(FormatError::EmptyInput);
    }
    if names.is_empty() {
        return Err(FormatError::EmptyTreeNeedsVertexLine);
    }
    Ok(Tree::from_edges_and_count(names.len(), &triples)?)
}

/// Writes the tree file format. Every vertex is declared explicitly, so the
/// result reparses to an identical tree, ids included.
pub fn to_tree_file(t: &Tree) -> String {
    let mut out = String::from("tree\n");
    for v in 0..t.vertex_count() {
        let _ = writeln!(out, "vertex v{v}");
    }
    for e in t.edges() {
        let _ = writeln!(out, "v{} -- v{} : {}", e.u, e.v, e.label);
    }
    out
}

/// Graphviz rendering with the proper 2-coloring made visible.
pub fn to_dot(t: &Tree) -> String {
    let coloring = t.bicolor();
    let mut out = String::from("graph {\n  node [style=filled];\n");
    for v in 0..t.vertex_count() {
        let fill = if coloring.color(v) == 0 { "white" } else { "gray" };
        let _ = writeln!(out, "  {v} [fillcolor=\"{fill}\"];");
    }
    for e in t.edges() {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.label);
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    vertex_count: usize,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    label: String,
}

/// Compact JSON form: `{"vertex_count":N,"edges":[{"u":..,"v":..,"label":..}]}`.
pub fn to_json(t: &Tree) -> String {
    let doc = TreeJson {
        vertex_count: t.vertex_count(),
        edges: t
            .edges()
            .iter()
            .map(|e| EdgeJson {
                u: e.u,
                v: e.v,
                label: e.label.clone(),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("tree serialization cannot fail")
}

/// Inverse of [`to_json`], revalidating treeness.
pub fn parse_json_tree(text: &str) -> Result<Tree, FormatError> {
    let doc: TreeJson = serde_json::from_str(text).map_err(|e| FormatError::Json {
        message: e.to_string(),
    })?;
    let triples: Vec<(usize, usize, String)> = doc
        .edges
        .into_iter()
        .map(|e| (e.u, e.v, e.label))
        .collect();
    Ok(Tree::from_edges_and_count(doc.vertex_count, &triples)?)
}

/// A label-level bijection between the edges of two trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bijection {
    map: BTreeMap<String, String>,
}

impl Bijection {
    pub fn identity(t: &Tree) -> Bijection {
        Bijection {
            map: t
                .edges()
                .iter()
                .map(|e| (e.label.clone(), e.label.clone()))
                .collect(),
        }
    }

    /// Builds the bijection sending edge `e` of `g` to edge `perm[e]` of `h`.
    /// Panics if `perm` is not a permutation of `h`'s edge ids.
    pub fn from_permutation(g: &Tree, h: &Tree, perm: &[EdgeId]) -> Bijection {
        assert_eq!(perm.len(), g.edge_count());
        assert_eq!(g.edge_count(), h.edge_count());
        Bijection {
            map: perm
                .iter()
                .enumerate()
                .map(|(e, &f)| (g.label(e).to_string(), h.label(f).to_string()))
                .collect(),
        }
    }

    pub fn inverse(&self) -> Bijection {
        Bijection {
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    pub fn image_of(&self, label: &str) -> Option<&str> {
        self.map.get(label).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// The `SOURCE=TARGET` notation, sorted by source label.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{a}={b}");
        }
        out
    }

    /// Resolves the bijection against concrete trees, checking totality and
    /// injectivity; entry `e` of the result is the `h`-edge id that `g`-edge
    /// `e` maps to.
    pub fn permutation(&self, g: &Tree, h: &Tree) -> Result<Vec<EdgeId>, FormatError> {
        if g.edge_count() != h.edge_count() {
            return Err(FormatError::SizeMismatch {
                left: g.edge_count(),
                right: h.edge_count(),
            });
        }
        let k = g.edge_count();
        let mut perm = vec![usize::MAX; k];
        let mut hit = vec![false; k];
        for (gl, hl) in &self.map {
            let ge = g
                .edge_id(gl)
                .ok_or_else(|| FormatError::UnknownLabel { label: gl.clone() })?;
            let he = h
                .edge_id(hl)
                .ok_or_else(|| FormatError::UnknownLabel { label: hl.clone() })?;
            if hit[he] {
                return Err(FormatError::DuplicateAssignment { label: hl.clone() });
            }
            hit[he] = true;
            perm[ge] = he;
        }
        for (e, &image) in perm.iter().enumerate() {
            if image == usize::MAX {
                return Err(FormatError::MissingAssignment {
                    label: g.label(e).to_string(),
                });
            }
        }
        Ok(perm)
    }
}

/// Parses `SOURCE=TARGET` pairs and validates them as a bijection from the
/// edges of `g` onto the edges of `h`.
pub fn parse_bijection(text: &str, g: &Tree, h: &Tree) -> Result<Bijection, FormatError> {
    if g.edge_count() != h.edge_count() {
        return Err(FormatError::SizeMismatch {
            left: g.edge_count(),
            right: h.edge_count(),
        });
    }
    let mut map = BTreeMap::new();
    if !text.trim().is_empty() {
        let mut start = 0usize;
        let mut chunks: Vec<(usize, &str)> = Vec::new();
        for (i, c) in text.char_indices() {
            if c == ',' {
                chunks.push((start, &text[start..i]));
                start = i + 1;
            }
        }
        chunks.push((start, &text[start..]));
        for (offset, chunk) in chunks {
            let Some(eq) = chunk.find('=') else {
                return Err(FormatError::Syntax {
                    position: offset + chunk.len(),
                    expected: "'=' in assignment".to_string(),
                });
            };
            let source = chunk[..eq].trim();
            let target = chunk[eq + 1..].trim();
            if source.is_empty() || target.is_empty() {
                return Err(FormatError::Syntax {
                    position: offset + eq,
                    expected: "LABEL=LABEL".to_string(),
                });
            }
            if map.insert(source.to_string(), target.to_string()).is_some() {
                return Err(FormatError::DuplicateAssignment {
                    label: source.to_string(),
                });
            }
        }
    }
    let bijection = Bijection { map };
    bijection.permutation(g, h)?;
    Ok(bijection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{canonical_form, free_trees, path_tree};

    #[test]
    fn parses_nested_circles() {
        let d = parse_diagram("a(b(c()))").unwrap();
        let t = diagram_to_tree(&d);
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edges()[0].label, "a");
        assert_eq!((t.edges()[0].u, t.edges()[0].v), (0, 1));
        assert_eq!((t.edges()[2].u, t.edges()[2].v), (2, 3));
        assert_eq!(canonical_form(&t), canonical_form(&path_tree(3)));
    }

    #[test]
    fn parses_forests_and_whitespace() {
        let d = parse_diagram(" a ( b ( ) , c ( ) ) , d ( ) ").unwrap();
        assert_eq!(d.roots.len(), 2);
        assert_eq!(d.roots[0].children.len(), 2);
        let t = diagram_to_tree(&d);
        assert_eq!(t.vertex_count(), 5);
        assert_eq!(t.adjacency(0).len(), 2);
    }

    #[test]
    fn diagram_syntax_errors_carry_positions() {
        assert_eq!(parse_diagram("").unwrap_err(), FormatError::EmptyInput);
        assert_eq!(parse_diagram("  \n ").unwrap_err(), FormatError::EmptyInput);
        match parse_diagram("a(b()").unwrap_err() {
            FormatError::Syntax { position, expected } => {
                assert_eq!(position, 5);
                assert_eq!(expected, "')'");
            }
            other => panic!("unexpected: {other:?}"),
        }
        match parse_diagram("a").unwrap_err() {
            FormatError::Syntax { position, expected } => {
                assert_eq!(position, 1);
                assert_eq!(expected, "'('");
            }
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(
            parse_diagram("a(),").unwrap_err(),
            FormatError::Syntax { .. }
        ));
        assert!(matches!(
            parse_diagram("a()b()").unwrap_err(),
            FormatError::Syntax { .. }
        ));
        assert_eq!(
            parse_diagram("a(),a()").unwrap_err(),
            FormatError::DuplicateLabel { label: "a".into() }
        );
    }

    #[test]
    fn diagram_text_round_trips() {
        for k in 1..=5 {
            for t in free_trees(k) {
                let text = to_diagram_text(&t);
                let back = diagram_to_tree(&parse_diagram(&text).unwrap());
                assert_eq!(canonical_form(&back), canonical_form(&t));
                assert_eq!(to_diagram_text(&back), text);
            }
        }
        assert_eq!(to_diagram_text(&Tree::trivial()), "");
    }

    #[test]
    fn parses_tree_files() {
        let text = "# a path\ntree\nleft -- mid : a # inline comment\nmid -- right : b\n";
        let t = parse_tree_file(text).unwrap();
        assert_eq!(t.vertex_count(), 3);
        assert_eq!(t.edge_id("a"), Some(0));
        assert_eq!((t.edges()[0].u, t.edges()[0].v), (0, 1));

        let trivial = parse_tree_file("tree\nvertex only\n").unwrap();
        assert_eq!(trivial, Tree::trivial());
    }

    #[test]
    fn tree_file_errors() {
        assert_eq!(parse_tree_file("").unwrap_err(), FormatError::EmptyInput);
        assert_eq!(
            parse_tree_file("# nothing\n\n").unwrap_err(),
            FormatError::EmptyInput
        );
        assert_eq!(
            parse_tree_file("tree\n").unwrap_err(),
            FormatError::EmptyTreeNeedsVertexLine
        );
        assert!(matches!(
            parse_tree_file("graph\na -- b : c\n").unwrap_err(),
            FormatError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse_tree_file("tree\na -- b\n").unwrap_err(),
            FormatError::Line { line: 2, .. }
        ));
        assert!(matches!(
            parse_tree_file("tree\na -- b : x\na -- b : y\n").unwrap_err(),
            FormatError::Tree(TreeError::ParallelEdge { .. })
        ));
        // Two vertex lines, no edges: declared but disconnected.
        assert!(matches!(
            parse_tree_file("tree\nvertex a\nvertex b\n").unwrap_err(),
            FormatError::Tree(TreeError::Disconnected { vertex: 1 })
        ));
    }

    #[test]
    fn tree_file_round_trip_is_exact() {
        for k in 0..=5 {
            for t in free_trees(k) {
                let text = to_tree_file(&t);
                assert_eq!(parse_tree_file(&text).unwrap(), t);
            }
        }
    }

    #[test]
    fn dot_output_shows_the_coloring() {
        let t = path_tree(2);
        let dot = to_dot(&t);
        assert_eq!(
            dot,
            "graph {\n  node [style=filled];\n  0 [fillcolor=\"white\"];\n  1 [fillcolor=\"gray\"];\n  2 [fillcolor=\"white\"];\n  0 -- 1 [label=\"e0\"];\n  1 -- 2 [label=\"e1\"];\n}\n"
        );
    }

    #[test]
    fn json_round_trip() {
        for k in 0..=5 {
            for t in free_trees(k) {
                let text = to_json(&t);
                assert_eq!(parse_json_tree(&text).unwrap(), t);
            }
        }
        let t = path_tree(1);
        assert_eq!(
            to_json(&t),
            r#"{"vertex_count":2,"edges":[{"u":0,"v":1,"label":"e0"}]}"#
        );
        assert!(matches!(
            parse_json_tree("{").unwrap_err(),
            FormatError::Json { .. }
        ));
        assert!(matches!(
            parse_json_tree(r#"{"vertex_count":3,"edges":[{"u":0,"v":1,"label":"x"}]}"#)
                .unwrap_err(),
            FormatError::Tree(TreeError::Disconnected { vertex: 2 })
        ));
    }

    #[test]
    fn bijection_parsing_and_validation() {
        let g = path_tree(3);
        let h = diagram_to_tree(&parse_diagram("x(y(z()))").unwrap());
        let b = parse_bijection("e0=x, e1=y ,e2=z", &g, &h).unwrap();
        assert_eq!(b.permutation(&g, &h).unwrap(), vec![0, 1, 2]);
        assert_eq!(b.to_text(), "e0=x,e1=y,e2=z");
        assert_eq!(b.image_of("e1"), Some("y"));
        assert_eq!(b.inverse().image_of("y"), Some("e1"));

        assert_eq!(
            parse_bijection("e0=x,e1=y", &g, &h).unwrap_err(),
            FormatError::MissingAssignment { label: "e2".into() }
        );
        assert_eq!(
            parse_bijection("e0=x,e1=x,e2=z", &g, &h).unwrap_err(),
            FormatError::DuplicateAssignment { label: "x".into() }
        );
        assert_eq!(
            parse_bijection("e0=x,e0=y,e2=z", &g, &h).unwrap_err(),
            FormatError::DuplicateAssignment { label: "e0".into() }
        );
        assert_eq!(
            parse_bijection("e0=x,e1=y,e9=z", &g, &h).unwrap_err(),
            FormatError::UnknownLabel { label: "e9".into() }
        );
        assert!(matches!(
            parse_bijection("e0=x,e1", &g, &h).unwrap_err(),
            FormatError::Syntax { .. }
        ));
        assert_eq!(
            parse_bijection("", &g, &path_tree(2)).unwrap_err(),
            FormatError::SizeMismatch { left: 3, right: 2 }
        );

        let empty = parse_bijection("  ", &Tree::trivial(), &Tree::trivial()).unwrap();
        assert!(empty.is_empty());

        let id = Bijection::identity(&g);
        assert_eq!(id.permutation(&g, &g).unwrap(), vec![0, 1, 2]);
        let rev = Bijection::from_permutation(&g, &g, &[2, 1, 0]);
        assert_eq!(rev.image_of("e0"), Some("e2"));
    }
}

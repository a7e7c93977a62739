//! Text renderings of decorated trees.

use std::fmt::Write;

use lgeuler::treebuild::{EdgeKind, Tree};
use lgeuler::DecoratedTree;

/// `E<k>` for distinguished edges, `e<id>` for regular ones.
pub fn edge_name(t: &Tree, e: usize) -> String {
    match t.edge(e).kind {
        EdgeKind::Distinguished(k) => format!("E{k}"),
        EdgeKind::Regular => format!("e{e}"),
    }
}

fn node_name(t: &Tree, v: usize) -> String {
    match t.node(v).distinguished {
        Some(k) => format!("V{k}"),
        None => format!("v{v}"),
    }
}

/// Root at the top; regular edges drawn `+--`, distinguished edges `+- -`.
pub fn ascii(d: &DecoratedTree) -> String {
    let t = d.tree();
    let mut out = String::new();
    writeln!(out, "{}", node_name(t, t.root())).unwrap();
    draw(d, t.root(), "", &mut out);
    out
}

fn draw(d: &DecoratedTree, v: usize, indent: &str, out: &mut String) {
    let t = d.tree();
    let children = &t.node(v).children;
    for (k, &e) in children.iter().enumerate() {
        let last = k + 1 == children.len();
        let stroke = match t.edge(e).kind {
            EdgeKind::Regular => "+-- ",
            EdgeKind::Distinguished(_) => "+- - ",
        };
        write!(out, "{indent}{stroke}{}", edge_name(t, e)).unwrap();
        if let Some(cap) = d.capacity(e) {
            write!(out, " [{cap}]").unwrap();
        }
        out.push('\n');
        let next = format!("{indent}{}", if last { "    " } else { "|   " });
        draw(d, t.edge(e).child, &next, out);
    }
}

/// Graphviz digraph; distinguished edges are dashed, leaf edges carry
/// their capacity.
pub fn dot(d: &DecoratedTree) -> String {
    let t = d.tree();
    let mut out = String::from("digraph tree {\n  node [shape=circle, label=\"\", width=0.15];\n");
    for node in t.nodes() {
        if node.distinguished.is_some() {
            writeln!(out, "  n{} [xlabel=\"{}\"];", node.id, node_name(t, node.id)).unwrap();
        }
    }
    for e in t.edges() {
        let mut label = edge_name(t, e.id);
        if let Some(cap) = d.capacity(e.id) {
            write!(label, " [{cap}]").unwrap();
        }
        let style = match e.kind {
            EdgeKind::Distinguished(_) => ", style=dashed",
            EdgeKind::Regular => "",
        };
        writeln!(out, "  n{} -> n{} [label=\"{label}\"{style}];", e.parent, e.child).unwrap();
    }
    out.push_str("}\n");
    out
}

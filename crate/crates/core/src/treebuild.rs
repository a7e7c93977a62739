//! Standard form `w = z_r α z_{r−1} α ⋯ α z_1 α z_0` and the rooted trees
//! `A(w)`, decorated with capacities relative to a second word `y`.
//!
//! Reading α as an opening and β as a closing bracket, the matched pairs
//! `α … β` become regular edges (nested pairs become descendants) and the
//! unmatched α's are the distinguished letters. Unmatched β's can only
//! appear before the first unmatched α, i.e. inside `z_r`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{check_lengths, prefix_alpha_gap, Letter, Word};

pub type NodeId = usize;
pub type EdgeId = usize;

/// `z` ends at height 0 and its path never rises above the x-axis.
pub fn is_z_word(z: &Word) -> bool {
    let mut h = 0i64;
    for l in z.letters() {
        h += l.step();
        if h > 0 {
            return false;
        }
    }
    h == 0
}

/// Every suffix has at least as many β's as α's.
pub fn is_z_tilde_word(z: &Word) -> bool {
    let mut balance = 0i64;
    for l in z.letters().iter().rev() {
        balance += l.step();
        if balance < 0 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StandardForm {
    /// `z_r, z_{r−1}, …, z_0`.
    parts: Vec<Word>,
    /// 0-based positions of the distinguished α's, left to right
    /// (the first one precedes `z_{r−1}`).
    distinguished: Vec<usize>,
}

impl StandardForm {
    pub fn r(&self) -> usize {
        self.distinguished.len()
    }

    /// `z_i` for `0 ≤ i ≤ r`.
    pub fn z(&self, i: usize) -> &Word {
        &self.parts[self.r() - i]
    }

    /// Parts in written order `z_r, …, z_0`.
    pub fn parts(&self) -> &[Word] {
        &self.parts
    }

    /// 0-based position in `w` of the α that forms the distinguished edge
    /// `E_k`, `1 ≤ k ≤ r`.
    pub fn distinguished_position(&self, k: usize) -> usize {
        self.distinguished[self.r() - k]
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Word::empty();
        for (idx, z) in self.parts.iter().enumerate() {
            if idx > 0 {
                out.push(Letter::Alpha);
            }
            out = out.concat(z);
        }
        out
    }
}

/// For each position, the index of its bracket partner (α open, β close).
fn bracket_matches(w: &Word) -> Vec<Option<usize>> {
    let mut matches = vec![None; w.len()];
    let mut open = Vec::new();
    for (k, &l) in w.letters().iter().enumerate() {
        match l {
            Letter::Alpha => open.push(k),
            Letter::Beta => {
                if let Some(a) = open.pop() {
                    matches[a] = Some(k);
                    matches[k] = Some(a);
                }
            }
        }
    }
    matches
}

pub fn standard_form(w: &Word) -> StandardForm {
    let matches = bracket_matches(w);
    let distinguished: Vec<usize> = w
        .letters()
        .iter()
        .enumerate()
        .filter(|&(k, &l)| l == Letter::Alpha && matches[k].is_none())
        .map(|(k, _)| k)
        .collect();
    let mut parts = Vec::with_capacity(distinguished.len() + 1);
    let mut start = 0;
    for &d in &distinguished {
        parts.push(Word::new(w.letters()[start..d].to_vec()));
        start = d + 1;
    }
    parts.push(w.suffix(start));
    StandardForm {
        parts,
        distinguished,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "index", rename_all = "lowercase")]
pub enum EdgeKind {
    Regular,
    /// `E_k`, joining `V_k` (parent) to `V_{k−1}` (child).
    Distinguished(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    /// `Some(k)` for the distinguished node `V_k`.
    pub distinguished: Option<usize>,
    pub parent_edge: Option<EdgeId>,
    pub children: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub parent: NodeId,
    pub child: NodeId,
    pub kind: EdgeKind,
    /// For regular edges, the 0-based position in `w` of the α that
    /// opens the bracket pair.
    pub alpha_position: usize,
}

/// The rooted tree `A(w)`. Node and edge ids follow a preorder traversal
/// from the root; at each distinguished node the regular children come
/// first, in word order, and the distinguished child last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    /// `V_0, …, V_r`.
    distinguished_nodes: Vec<NodeId>,
    /// `E_1, …, E_r` stored at index `k − 1`.
    distinguished_edges: Vec<EdgeId>,
}

/// Intermediate shape used before preorder numbering.
struct Draft {
    kind: EdgeKind,
    alpha_position: usize,
    node_mark: Option<usize>,
    children: Vec<Draft>,
}

fn regular_forest(w: &Word, matches: &[Option<usize>], from: usize, to: usize) -> Vec<Draft> {
    let mut out = Vec::new();
    let mut k = from;
    while k < to {
        match (w.letters()[k], matches[k]) {
            (Letter::Alpha, Some(close)) => {
                out.push(Draft {
                    kind: EdgeKind::Regular,
                    alpha_position: k,
                    node_mark: None,
                    children: regular_forest(w, matches, k + 1, close),
                });
                k = close + 1;
            }
            // unmatched β inside z_r
            _ => k += 1,
        }
    }
    out
}

pub fn build_tree(w: &Word) -> Tree {
    let matches = bracket_matches(w);
    let sf = standard_form(w);
    let r = sf.r();
    // segment [start, end) of z_i in w
    let segment = |i: usize| -> (usize, usize) {
        let start = if i == r {
            0
        } else {
            sf.distinguished_position(i + 1) + 1
        };
        let end = if i == 0 {
            w.len()
        } else {
            sf.distinguished_position(i)
        };
        (start, end)
    };

    // children of V_i, from V_0 upwards
    let (s0, e0) = segment(0);
    let mut below = regular_forest(w, &matches, s0, e0);
    for k in 1..=r {
        let e_k = Draft {
            kind: EdgeKind::Distinguished(k),
            alpha_position: sf.distinguished_position(k),
            node_mark: Some(k - 1),
            children: below,
        };
        let (s, e) = segment(k);
        below = regular_forest(w, &matches, s, e);
        below.push(e_k);
    }

    let mut tree = Tree {
        nodes: vec![Node {
            id: 0,
            distinguished: Some(r),
            parent_edge: None,
            children: Vec::new(),
        }],
        edges: Vec::new(),
        distinguished_nodes: vec![0; r + 1],
        distinguished_edges: vec![0; r],
    };
    tree.distinguished_nodes[r] = 0;
    for child in below {
        tree.attach(0, child);
    }
    tree
}

impl Tree {
    fn attach(&mut self, parent: NodeId, draft: Draft) {
        let edge_id = self.edges.len();
        let node_id = self.nodes.len();
        self.edges.push(Edge {
            id: edge_id,
            parent,
            child: node_id,
            kind: draft.kind,
            alpha_position: draft.alpha_position,
        });
        self.nodes.push(Node {
            id: node_id,
            distinguished: draft.node_mark,
            parent_edge: Some(edge_id),
            children: Vec::new(),
        });
        self.nodes[parent].children.push(edge_id);
        if let EdgeKind::Distinguished(k) = draft.kind {
            self.distinguished_edges[k - 1] = edge_id;
        }
        if let Some(k) = draft.node_mark {
            self.distinguished_nodes[k] = node_id;
        }
        for c in draft.children {
            self.attach(node_id, c);
        }
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of distinguished edges.
    pub fn r(&self) -> usize {
        self.distinguished_edges.len()
    }

    /// `E_k`, `1 ≤ k ≤ r`.
    pub fn distinguished_edge(&self, k: usize) -> EdgeId {
        self.distinguished_edges[k - 1]
    }

    /// `V_k`, `0 ≤ k ≤ r`.
    pub fn distinguished_node(&self, k: usize) -> NodeId {
        self.distinguished_nodes[k]
    }

    pub fn is_terminal(&self, e: EdgeId) -> bool {
        self.nodes[self.edges[e].child].children.is_empty()
    }

    pub fn terminal_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| self.is_terminal(e))
    }

    /// The edge directly above `e`, if any.
    pub fn parent_edge(&self, e: EdgeId) -> Option<EdgeId> {
        self.nodes[self.edges[e].parent].parent_edge
    }

    pub fn child_edges(&self, e: EdgeId) -> &[EdgeId] {
        &self.nodes[self.edges[e].child].children
    }

    /// All edges strictly below `e` in the ancestor order.
    pub fn descendants(&self, e: EdgeId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack: Vec<EdgeId> = self.child_edges(e).to_vec();
        while let Some(f) = stack.pop() {
            out.push(f);
            stack.extend_from_slice(self.child_edges(f));
        }
        out
    }

    /// `a ≤ b`: `a` lies on the path from `b` to the root.
    pub fn is_ancestor_or_equal(&self, a: EdgeId, b: EdgeId) -> bool {
        let mut cur = Some(b);
        while let Some(e) = cur {
            if e == a {
                return true;
            }
            cur = self.parent_edge(e);
        }
        false
    }

    /// Same tree with the children of `node` listed in the order
    /// `perm` (a permutation of `0..children.len()`). Ids are kept.
    pub fn with_child_order(&self, node: NodeId, perm: &[usize]) -> Result<Tree> {
        let children = &self.nodes.get(node).ok_or(Error::InvalidChildOrder { node })?.children;
        let mut seen = vec![false; children.len()];
        if perm.len() != children.len() {
            return Err(Error::InvalidChildOrder { node });
        }
        for &p in perm {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidChildOrder { node });
            }
        }
        let mut out = self.clone();
        out.nodes[node].children = perm.iter().map(|&p| children[p]).collect();
        Ok(out)
    }
}

/// `A(w/y)`: the tree `A(w)` with a capacity on every terminal edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedTree {
    tree: Tree,
    capacities: Vec<Option<i64>>,
    bounds: Vec<i64>,
}

pub fn decorate(y: &Word, w: &Word) -> Result<DecoratedTree> {
    check_lengths(y, w)?;
    let tree = build_tree(w);
    let capacities = (0..tree.edge_count())
        .map(|e| {
            if !tree.is_terminal(e) {
                return None;
            }
            Some(match tree.edge(e).kind {
                // trough αβ with the α at 0-based position p: prefixes of length p + 1
                EdgeKind::Regular => prefix_alpha_gap(y, w, tree.edge(e).alpha_position + 1),
                EdgeKind::Distinguished(_) => y.alpha_count() as i64 - w.alpha_count() as i64,
            })
        })
        .collect();
    Ok(DecoratedTree::new(tree, capacities))
}

impl DecoratedTree {
    /// Builds a decorated tree from a tree and per-edge capacities, which
    /// must be present exactly on the terminal edges.
    pub fn new(tree: Tree, capacities: Vec<Option<i64>>) -> Self {
        assert_eq!(capacities.len(), tree.edge_count());
        for (e, cap) in capacities.iter().enumerate() {
            assert_eq!(
                cap.is_some(),
                tree.is_terminal(e),
                "capacity must be set exactly on terminal edges"
            );
        }
        let mut bounds = vec![i64::MAX; tree.edge_count()];
        // children always have larger ids than their parent edge
        for e in (0..tree.edge_count()).rev() {
            bounds[e] = match capacities[e] {
                Some(c) => c,
                None => tree
                    .child_edges(e)
                    .iter()
                    .map(|&c| bounds[c])
                    .min()
                    .expect("non-terminal edge has children"),
            };
        }
        DecoratedTree {
            tree,
            capacities,
            bounds,
        }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn capacity(&self, e: EdgeId) -> Option<i64> {
        self.capacities[e]
    }

    pub fn capacities(&self) -> &[Option<i64>] {
        &self.capacities
    }

    /// Smallest capacity among the terminal edges at or below `e`.
    pub fn edge_bound(&self, e: EdgeId) -> i64 {
        self.bounds[e]
    }

    pub fn has_negative_capacity(&self) -> bool {
        self.capacities.iter().flatten().any(|&c| c < 0)
    }

    pub fn with_child_order(&self, node: NodeId, perm: &[usize]) -> Result<DecoratedTree> {
        Ok(DecoratedTree {
            tree: self.tree.with_child_order(node, perm)?,
            capacities: self.capacities.clone(),
            bounds: self.bounds.clone(),
        })
    }

    pub fn to_json_schema(&self) -> TreeJson {
        let t = &self.tree;
        TreeJson {
            root: t.root(),
            r: t.r(),
            nodes: t
                .nodes()
                .iter()
                .map(|n| NodeJson {
                    id: n.id,
                    distinguished_index: n.distinguished,
                })
                .collect(),
            edges: t
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    id: e.id,
                    parent: e.parent,
                    child: e.child,
                    kind: match e.kind {
                        EdgeKind::Regular => "regular".into(),
                        EdgeKind::Distinguished(_) => "distinguished".into(),
                    },
                    distinguished_index: match e.kind {
                        EdgeKind::Regular => None,
                        EdgeKind::Distinguished(k) => Some(k),
                    },
                    capacity: self.capacities[e.id],
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TreeJson {
    pub root: NodeId,
    pub r: usize,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NodeJson {
    pub id: NodeId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguished_index: Option<usize>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EdgeJson {
    pub id: EdgeId,
    pub parent: NodeId,
    pub child: NodeId,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinguished_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity: Option<i64>,
}

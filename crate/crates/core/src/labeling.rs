//! Admissible labelings of decorated trees.
//!
//! A labeling assigns a natural number to every edge. It is admissible when
//!
//! 1. labels weakly increase away from the root;
//! 2. a regular terminal edge carries at most its capacity;
//! 3. a terminal `E_1` carries exactly its capacity;
//! 4. an odd distinguished edge `E_{2i−1}` carries the minimum label found
//!    strictly below it (except a terminal `E_1`);
//! 5. `E_{2i−1}` and `E_{2i}` have equal parity, with `E_j` read as 0 for
//!    `j > r`.
//!
//! [`enumerate_labelings`] is a brute-force reference; [`count_labelings`]
//! counts by dynamic programming over the regular subtrees and the
//! distinguished chain.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::count::Count;
use crate::error::{Error, Result};
use crate::treebuild::{DecoratedTree, EdgeId, EdgeKind, NodeId, Tree};

/// Edge labels indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    values: Vec<u64>,
}

impl Labeling {
    pub fn new(values: Vec<u64>) -> Self {
        Labeling { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, e: EdgeId) -> u64 {
        self.values[e]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl Serialize for Labeling {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self
            .values
            .iter()
            .enumerate()
            .map(|(e, &v)| (e.to_string(), v))
            .collect();
        map.serialize(s)
    }
}

fn distinguished_label(tree: &Tree, l: &Labeling, k: usize) -> u64 {
    if k > tree.r() {
        0
    } else {
        l.get(tree.distinguished_edge(k))
    }
}

pub fn is_admissible(t: &DecoratedTree, l: &Labeling) -> Result<bool> {
    let tree = t.tree();
    if l.len() != tree.edge_count() {
        return Err(Error::DomainMismatch {
            labels: l.len(),
            edges: tree.edge_count(),
        });
    }
    Ok(check_admissible(t, l))
}

fn check_admissible(t: &DecoratedTree, l: &Labeling) -> bool {
    let tree = t.tree();
    let r = tree.r();

    let monotone = tree
        .edges()
        .iter()
        .all(|e| tree.parent_edge(e.id).is_none_or(|p| l.get(p) <= l.get(e.id)));
    if !monotone {
        return false;
    }

    for e in tree.terminal_edges() {
        let cap = t.capacity(e).expect("terminal edges carry a capacity");
        let label = l.get(e) as i64;
        let ok = match tree.edge(e).kind {
            EdgeKind::Regular => label <= cap,
            EdgeKind::Distinguished(_) => label == cap,
        };
        if !ok {
            return false;
        }
    }

    for k in (1..=r).step_by(2) {
        let e = tree.distinguished_edge(k);
        if k == 1 && tree.is_terminal(e) {
            continue;
        }
        let below = tree.descendants(e);
        assert!(
            !below.is_empty(),
            "only E_1 can be terminal, found terminal E_{k}"
        );
        let min_below = below.iter().map(|&f| l.get(f)).min().unwrap();
        debug_assert_eq!(
            Some(min_below),
            tree.child_edges(e).iter().map(|&f| l.get(f)).min(),
            "minimum over descendants must be attained at a child edge"
        );
        if min_below != l.get(e) {
            return false;
        }
    }

    (1..=r).step_by(2).all(|k| {
        distinguished_label(tree, l, k) % 2 == distinguished_label(tree, l, k + 1) % 2
    })
}

/// Every admissible labeling, in lexicographic order of the label vector
/// (edge 0 most significant). Candidate labels of an edge range from its
/// parent's label up to the smallest capacity below it. `max_states` caps
/// the number of complete candidates examined.
pub fn enumerate_labelings(t: &DecoratedTree, max_states: Option<u64>) -> Result<Vec<Labeling>> {
    let n = t.tree().edge_count();
    let mut out = Vec::new();
    if (0..n).any(|e| t.edge_bound(e) < 0) {
        return Ok(out);
    }
    let mut values = vec![0u64; n];
    let mut states = 0u64;
    enumerate_from(t, 0, &mut values, &mut states, max_states, &mut out)?;
    Ok(out)
}

fn enumerate_from(
    t: &DecoratedTree,
    e: EdgeId,
    values: &mut Vec<u64>,
    states: &mut u64,
    max_states: Option<u64>,
    out: &mut Vec<Labeling>,
) -> Result<()> {
    if e == values.len() {
        *states += 1;
        if let Some(limit) = max_states {
            if *states > limit {
                return Err(Error::StateLimit { limit });
            }
        }
        let l = Labeling::new(values.clone());
        if check_admissible(t, &l) {
            out.push(l);
        }
        return Ok(());
    }
    let lo = t.tree().parent_edge(e).map_or(0, |p| values[p]);
    let hi = t.edge_bound(e) as u64;
    for v in lo..=hi {
        values[e] = v;
        enumerate_from(t, e + 1, values, states, max_states, out)?;
    }
    Ok(())
}

/// Number of admissible labelings as an arbitrary-precision integer.
pub fn count_labelings(t: &DecoratedTree) -> BigUint {
    count_labelings_as(t)
}

/// Number of admissible labelings in any [`Count`] scalar.
pub fn count_labelings_as<C: Count>(t: &DecoratedTree) -> C {
    LabelCounter::new(t).total()
}

/// Tables indexed by a lower bound `L ∈ 0..=top`; index `top` stands for
/// every bound above the largest capacity, where no labeling fits.
struct LabelCounter<'a, C> {
    t: &'a DecoratedTree,
    top: usize,
    /// `regular[e][L]`: labelings of the regular subtree through edge `e`
    /// with every label `≥ L`.
    regular: Vec<Option<Vec<C>>>,
}

impl<'a, C: Count> LabelCounter<'a, C> {
    fn new(t: &'a DecoratedTree) -> Self {
        let max_cap = t.capacities().iter().flatten().copied().max().unwrap_or(0);
        let top = max_cap.max(0) as usize + 1;
        let tree = t.tree();
        let mut regular: Vec<Option<Vec<C>>> = vec![None; tree.edge_count()];
        // children have larger ids than their parent edge
        for e in (0..tree.edge_count()).rev() {
            if tree.edge(e).kind != EdgeKind::Regular {
                continue;
            }
            let table = match t.capacity(e) {
                Some(cap) => (0..=top as i64)
                    .map(|lo| C::from_count((cap - lo + 1).max(0) as u64))
                    .collect(),
                None => {
                    let at_least = Self::product_at(&regular, tree.child_edges(e), top);
                    suffix_sums(&at_least)
                }
            };
            regular[e] = Some(table);
        }
        LabelCounter { t, top, regular }
    }

    /// `∏_{c ∈ edges} table_c[v]` for each `v`.
    fn product_at(regular: &[Option<Vec<C>>], edges: &[EdgeId], top: usize) -> Vec<C> {
        (0..=top)
            .map(|v| {
                edges.iter().fold(C::one(), |acc, &c| {
                    let table = regular[c].as_ref().expect("child of a regular edge is regular");
                    acc.mul_exact(&table[v])
                })
            })
            .collect()
    }

    /// Labelings of the regular forest hanging at `node`, all labels `≥ L`.
    fn forest(&self, node: NodeId) -> Vec<C> {
        let tree = self.t.tree();
        let kids: Vec<EdgeId> = tree
            .node(node)
            .children
            .iter()
            .copied()
            .filter(|&c| tree.edge(c).kind == EdgeKind::Regular)
            .collect();
        Self::product_at(&self.regular, &kids, self.top)
    }

    fn total(&self) -> C {
        let tree = self.t.tree();
        let r = tree.r();
        let top = self.top;
        let root_forest = self.forest(tree.distinguished_node(r));
        if r == 0 {
            return root_forest[0].clone();
        }

        // chain[v]: labelings of everything below E_k with ℓ(E_k) = v
        let e1 = tree.distinguished_edge(1);
        let mut chain: Vec<C> = if tree.is_terminal(e1) {
            let cap = self.t.capacity(e1).unwrap();
            (0..=top)
                .map(|v| if v as i64 == cap && v < top { C::one() } else { C::zero() })
                .collect()
        } else {
            let f = self.forest(tree.distinguished_node(0));
            exact_minimum(&f)
        };

        for k in 2..=r {
            let f = self.forest(tree.distinguished_node(k - 1));
            chain = if k % 2 == 0 {
                let same_parity = parity_suffix_sums(&chain);
                (0..=top)
                    .map(|v| f[v].mul_exact(&same_parity[v]))
                    .collect()
            } else {
                let below = suffix_sums(&chain);
                let at_least: Vec<C> = (0..=top).map(|v| f[v].mul_exact(&below[v])).collect();
                exact_minimum(&at_least)
            };
        }

        let top_choices = (0..top)
            .filter(|v| r.is_multiple_of(2) || v.is_multiple_of(2))
            .fold(C::zero(), |acc, v| acc.add_exact(&chain[v]));
        root_forest[0].mul_exact(&top_choices)
    }
}

/// `out[L] = Σ_{v ≥ L} a[v]`.
fn suffix_sums<C: Count>(a: &[C]) -> Vec<C> {
    let mut out = a.to_vec();
    for v in (0..a.len().saturating_sub(1)).rev() {
        out[v] = out[v + 1].add_exact(&a[v]);
    }
    out
}

/// `out[L] = Σ_{v ≥ L, v ≡ L (mod 2)} a[v]`.
fn parity_suffix_sums<C: Count>(a: &[C]) -> Vec<C> {
    let mut out = a.to_vec();
    for v in (0..a.len().saturating_sub(2)).rev() {
        out[v] = out[v + 2].add_exact(&a[v]);
    }
    out
}

/// From "all labels `≥ L`" counts to "minimum label exactly `L`" counts.
/// The last entry is the empty range above every capacity.
fn exact_minimum<C: Count>(at_least: &[C]) -> Vec<C> {
    let top = at_least.len() - 1;
    (0..=top)
        .map(|v| {
            if v == top {
                C::zero()
            } else {
                at_least[v].sub_exact(&at_least[v + 1])
            }
        })
        .collect()
}

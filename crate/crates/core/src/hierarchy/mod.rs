//! Immutable quantitative hierarchies.
//!
//! Nodes are stored in depth-first pre-order, so a node's subtree is the
//! contiguous index range `[id, id + subtree_len)`. Ancestor tests, LCA and
//! the top-down layout passes all lean on that property.

mod ingest;
mod lca;
mod synthetic;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use ingest::{ingest, to_folded, to_nested_json, Format, IngestError};
pub use lca::LcaIndex;
pub use synthetic::{chi_shaped, generate_synthetic, generate_with_leaves, GenerateError};

/// Dense pre-order index of a node within one [`Hierarchy`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeRecord {
    pub name: String,
    pub self_value: f64,
    pub total_value: f64,
    pub depth: u32,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Number of nodes in the subtree rooted here, including this node.
    pub subtree_len: u32,
    /// Number of leaves in the subtree rooted here.
    pub leaf_count: u32,
}

impl NodeRecord {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TreeStats {
    pub node_count: usize,
    pub leaf_count: usize,
    pub depth_levels: usize,
}

/// Closest structural relationship of `a` relative to `b`.
///
/// `Parent` reads "a is the parent of b"; `Ancestor` is reserved for strict
/// non-parent ancestors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relationship {
    Identical,
    Parent,
    Child,
    Sibling,
    Ancestor,
    Descendant,
    Unrelated,
}

impl Relationship {
    /// The relationship seen from the other node.
    pub fn inverse(self) -> Self {
        match self {
            Relationship::Parent => Relationship::Child,
            Relationship::Child => Relationship::Parent,
            Relationship::Ancestor => Relationship::Descendant,
            Relationship::Descendant => Relationship::Ancestor,
            other => other,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("node {0} does not exist in this hierarchy")]
    InvalidNode(NodeId),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hierarchy {
    nodes: Vec<NodeRecord>,
    depth_max: u32,
    level_order: Vec<NodeId>,
}

/// Mutable tree used while reading input documents; flattened into a
/// [`Hierarchy`] once complete.
#[derive(Debug, Default)]
pub(crate) struct TreeBuilder {
    pub(crate) nodes: Vec<BuildNode>,
}

#[derive(Debug)]
pub(crate) struct BuildNode {
    pub(crate) name: String,
    pub(crate) self_value: f64,
    pub(crate) children: Vec<usize>,
}

impl TreeBuilder {
    pub(crate) fn add(&mut self, parent: Option<usize>, name: String, self_value: f64) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(BuildNode {
            name,
            self_value,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.nodes[p].children.push(idx);
        }
        idx
    }

    /// Flattens the subtree at `root` into pre-order and runs the aggregation pass.
    pub(crate) fn finish(self, root: usize) -> Hierarchy {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut parent_of: Vec<Option<NodeId>> = Vec::with_capacity(self.nodes.len());
        let mut depth_of = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(root, None::<NodeId>, 0u32)];
        while let Some((b, parent, depth)) = stack.pop() {
            order.push(b);
            parent_of.push(parent);
            depth_of.push(depth);
            let me = NodeId((order.len() - 1) as u32);
            for &c in self.nodes[b].children.iter().rev() {
                stack.push((c, Some(me), depth + 1));
            }
        }

        let mut nodes: Vec<NodeRecord> = Vec::with_capacity(order.len());
        let mut src = self.nodes;
        for (i, &b) in order.iter().enumerate() {
            let bn = &mut src[b];
            nodes.push(NodeRecord {
                name: std::mem::take(&mut bn.name),
                self_value: bn.self_value,
                total_value: 0.0,
                depth: depth_of[i],
                parent: parent_of[i],
                children: Vec::with_capacity(bn.children.len()),
                subtree_len: 1,
                leaf_count: 0,
            });
        }
        for i in 0..nodes.len() {
            if let Some(p) = nodes[i].parent {
                nodes[p.index()].children.push(NodeId(i as u32));
            }
        }
        Hierarchy::from_records(nodes)
    }
}

impl Hierarchy {
    /// Builds from pre-ordered records with parent/children/depth filled in;
    /// computes totals, subtree sizes and leaf counts.
    fn from_records(mut nodes: Vec<NodeRecord>) -> Self {
        for i in (0..nodes.len()).rev() {
            let n = &nodes[i];
            let mut total = n.self_value;
            let mut len = 1u32;
            let mut leaves = if n.children.is_empty() { 1 } else { 0 };
            for c in &n.children {
                let cn = &nodes[c.index()];
                total += cn.total_value;
                len += cn.subtree_len;
                leaves += cn.leaf_count;
            }
            let n = &mut nodes[i];
            n.total_value = total;
            n.subtree_len = len;
            n.leaf_count = leaves;
        }
        let depth_max = nodes.iter().map(|n| n.depth).max().unwrap_or(0);

        let mut level_order = Vec::with_capacity(nodes.len());
        if !nodes.is_empty() {
            level_order.push(NodeId(0));
            let mut head = 0;
            while head < level_order.len() {
                let id = level_order[head];
                head += 1;
                level_order.extend_from_slice(&nodes[id.index()].children);
            }
        }
        Hierarchy {
            nodes,
            depth_max,
            level_order,
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn depth_max(&self) -> u32 {
        self.depth_max
    }

    pub fn depth_levels(&self) -> u32 {
        self.depth_max + 1
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    /// Node ids ordered by depth, then left to right.
    pub fn level_order(&self) -> &[NodeId] {
        &self.level_order
    }

    pub fn ids(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.index() < self.nodes.len()
    }

    /// Panics on an id from another hierarchy; use [`Hierarchy::get`] for untrusted ids.
    pub fn node(&self, id: NodeId) -> &NodeRecord {
        &self.nodes[id.index()]
    }

    pub fn get(&self, id: NodeId) -> Result<&NodeRecord, QueryError> {
        self.nodes.get(id.index()).ok_or(QueryError::InvalidNode(id))
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.node(id).parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.node(id).children
    }

    pub fn total(&self) -> f64 {
        self.nodes.first().map_or(0.0, |n| n.total_value)
    }

    pub fn stats(&self) -> TreeStats {
        TreeStats {
            node_count: self.nodes.len(),
            leaf_count: self.nodes.iter().filter(|n| n.is_leaf()).count(),
            depth_levels: self.depth_levels() as usize,
        }
    }

    /// True if `a` is `b` or one of its ancestors.
    pub fn is_ancestor_or_self(&self, a: NodeId, b: NodeId) -> bool {
        let a_len = self.nodes[a.index()].subtree_len;
        a.0 <= b.0 && b.0 < a.0 + a_len
    }

    fn check(&self, id: NodeId) -> Result<(), QueryError> {
        if self.contains(id) {
            Ok(())
        } else {
            Err(QueryError::InvalidNode(id))
        }
    }

    /// Lowest common ancestor by climbing parent links from the deeper node.
    /// For bulk queries build a [`LcaIndex`] instead.
    pub fn lca(&self, a: NodeId, b: NodeId) -> Result<NodeId, QueryError> {
        self.check(a)?;
        self.check(b)?;
        let mut x = a;
        while !self.is_ancestor_or_self(x, b) {
            x = self.nodes[x.index()]
                .parent
                .expect("root is an ancestor of every node");
        }
        Ok(x)
    }

    pub fn relationship(&self, a: NodeId, b: NodeId) -> Result<Relationship, QueryError> {
        self.check(a)?;
        self.check(b)?;
        let pa = self.parent(a);
        let pb = self.parent(b);
        Ok(if a == b {
            Relationship::Identical
        } else if pb == Some(a) {
            Relationship::Parent
        } else if pa == Some(b) {
            Relationship::Child
        } else if pa.is_some() && pa == pb {
            Relationship::Sibling
        } else if self.is_ancestor_or_self(a, b) {
            Relationship::Ancestor
        } else if self.is_ancestor_or_self(b, a) {
            Relationship::Descendant
        } else {
            Relationship::Unrelated
        })
    }

    /// `[root, ..., n]`.
    pub fn path_to_root(&self, n: NodeId) -> Result<Vec<NodeId>, QueryError> {
        self.check(n)?;
        let mut path = Vec::with_capacity(self.node(n).depth as usize + 1);
        let mut cur = Some(n);
        while let Some(c) = cur {
            path.push(c);
            cur = self.parent(c);
        }
        path.reverse();
        Ok(path)
    }

    /// Resolves a chain of child names below the root. An empty slice is the root.
    pub fn find_path<S: AsRef<str>>(&self, names: &[S]) -> Option<NodeId> {
        let mut cur = self.root();
        for name in names {
            let name = name.as_ref();
            cur = *self
                .children(cur)
                .iter()
                .find(|c| self.node(**c).name == name)?;
        }
        Some(cur)
    }

    /// Fraction of the root total, in `[0, 1]`.
    pub fn share_of_root(&self, n: NodeId) -> f64 {
        let root = self.total();
        if root > 0.0 {
            self.node(n).total_value / root
        } else {
            0.0
        }
    }
}

/// Hover/tooltip payload rendered by the UI.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tooltip {
    pub name: String,
    pub value: f64,
    pub percent_of_root: f64,
}

impl Hierarchy {
    pub fn tooltip(&self, n: NodeId) -> Result<Tooltip, QueryError> {
        let rec = self.get(n)?;
        Ok(Tooltip {
            name: rec.name.clone(),
            value: rec.total_value,
            percent_of_root: 100.0 * self.share_of_root(n),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn folded(doc: &str) -> Hierarchy {
        ingest(doc, Format::FoldedStacks).unwrap()
    }

    #[test]
    fn preorder_ids_and_totals() {
        let h = folded("a;b;d 1\na;c 3\na;b;e 2");
        let names: Vec<_> = h.nodes().iter().map(|n| n.name.as_str()).collect();
        assert_eq!(names, ["a", "b", "d", "e", "c"]);
        assert_eq!(h.total(), 6.0);
        assert_eq!(h.node(NodeId(1)).total_value, 3.0);
        assert_eq!(h.node(NodeId(1)).subtree_len, 3);
        assert_eq!(h.node(NodeId(0)).leaf_count, 3);
        assert_eq!(h.depth_max(), 2);
        let lo: Vec<_> = h.level_order().iter().map(|i| i.0).collect();
        assert_eq!(lo, [0, 1, 4, 2, 3]);
    }

    #[test]
    fn single_node_stats() {
        let h = folded("solo 4");
        assert_eq!(
            h.stats(),
            TreeStats {
                node_count: 1,
                leaf_count: 1,
                depth_levels: 1
            }
        );
    }

    #[test]
    fn relationships() {
        let h = folded("r;a;x 1\nr;a;y 1\nr;b 1");
        let r = h.find_path::<&str>(&[]).unwrap();
        let a = h.find_path(&["a"]).unwrap();
        let b = h.find_path(&["b"]).unwrap();
        let x = h.find_path(&["a", "x"]).unwrap();
        let y = h.find_path(&["a", "y"]).unwrap();
        assert_eq!(h.relationship(x, y).unwrap(), Relationship::Sibling);
        assert_eq!(h.relationship(a, x).unwrap(), Relationship::Parent);
        assert_eq!(h.relationship(x, a).unwrap(), Relationship::Child);
        assert_eq!(h.relationship(r, x).unwrap(), Relationship::Ancestor);
        assert_eq!(h.relationship(x, r).unwrap(), Relationship::Descendant);
        assert_eq!(h.relationship(x, b).unwrap(), Relationship::Unrelated);
        assert_eq!(h.relationship(b, b).unwrap(), Relationship::Identical);
        assert_eq!(h.relationship(r, r).unwrap(), Relationship::Identical);
        assert_eq!(h.lca(x, y).unwrap(), a);
        assert_eq!(h.lca(x, b).unwrap(), r);
        assert_eq!(h.lca(x, x).unwrap(), x);
        assert_eq!(h.lca(a, y).unwrap(), a);
    }

    #[test]
    fn invalid_ids_are_rejected() {
        let h = folded("a 1");
        let bad = NodeId(7);
        assert_eq!(h.lca(bad, h.root()), Err(QueryError::InvalidNode(bad)));
        assert!(h.relationship(h.root(), bad).is_err());
        assert!(h.path_to_root(bad).is_err());
        assert!(h.tooltip(bad).is_err());
    }

    #[test]
    fn path_to_root_lengths() {
        let h = folded("a;b;c;d 1");
        assert_eq!(h.path_to_root(h.root()).unwrap(), vec![h.root()]);
        let d = h.find_path(&["b", "c", "d"]).unwrap();
        let p = h.path_to_root(d).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(*p.last().unwrap(), d);
    }

    #[test]
    fn tooltip_percent() {
        let h = folded("a;b 1\na;c 3");
        let c = h.find_path(&["c"]).unwrap();
        let t = h.tooltip(c).unwrap();
        assert_eq!(t.name, "c");
        assert_eq!(t.value, 3.0);
        assert!((t.percent_of_root - 75.0).abs() < 1e-12);
    }
}

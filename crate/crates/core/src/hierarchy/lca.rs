use super::{Hierarchy, NodeId, QueryError};

/// Constant-time LCA queries over a fixed hierarchy.
///
/// With pre-order ids, for `u < v` where `u` is not an ancestor of `v`, the
/// shallowest node in the id range `(u, v]` is a child of the LCA. A sparse
/// table answers that range-minimum in O(1) after O(n log n) preprocessing.
pub struct LcaIndex<'h> {
    h: &'h Hierarchy,
    // table[k][i] = id of the shallowest node in [i, i + 2^k)
    table: Vec<Vec<u32>>,
}

impl<'h> LcaIndex<'h> {
    pub fn new(h: &'h Hierarchy) -> Self {
        let n = h.len();
        let depth = |i: u32| h.nodes[i as usize].depth;
        let mut table = vec![(0..n as u32).collect::<Vec<_>>()];
        let mut k = 1;
        while (1 << k) <= n {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let row: Vec<u32> = (0..=n - (1 << k))
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + half]);
                    if depth(b) < depth(a) {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            table.push(row);
            k += 1;
        }
        LcaIndex { h, table }
    }

    fn shallowest(&self, lo: usize, hi_inclusive: usize) -> u32 {
        let len = hi_inclusive - lo + 1;
        let k = usize::BITS as usize - 1 - len.leading_zeros() as usize;
        let a = self.table[k][lo];
        let b = self.table[k][hi_inclusive + 1 - (1 << k)];
        if self.h.nodes[b as usize].depth < self.h.nodes[a as usize].depth {
            b
        } else {
            a
        }
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> Result<NodeId, QueryError> {
        for id in [a, b] {
            if !self.h.contains(id) {
                return Err(QueryError::InvalidNode(id));
            }
        }
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        if self.h.is_ancestor_or_self(u, v) {
            return Ok(u);
        }
        let m = self.shallowest(u.index() + 1, v.index());
        Ok(self.h.nodes[m as usize]
            .parent
            .expect("non-root node in range"))
    }
}

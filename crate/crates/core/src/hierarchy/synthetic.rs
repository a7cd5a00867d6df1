//! Seeded random hierarchies used as fixtures and benchmark workloads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Hierarchy, TreeBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("cannot build {nodes} nodes over {levels} levels with {leaves} leaves")]
    Unsatisfiable {
        nodes: usize,
        levels: usize,
        leaves: usize,
    },
}

/// Node count, depth and leaf count of the categories dataset used by the
/// navigation tasks.
pub const CHI_NODES: usize = 7548;
pub const CHI_LEVELS: usize = 15;
pub const CHI_LEAVES: usize = 6278;
pub const CHI_SEED: u64 = 7;

fn default_leaves(nodes: usize, levels: usize) -> usize {
    match levels {
        0 | 1 => 1,
        2 => nodes.saturating_sub(1).max(1),
        _ => {
            let internal = ((nodes as f64 / 6.0).round() as usize).max(levels - 1);
            let internal = internal.min((nodes + levels - 2) / 2).max(levels - 1);
            nodes.saturating_sub(internal).max(1)
        }
    }
}

/// Random tree with exactly `node_count` nodes and `depth_levels` levels.
/// About five in six nodes are leaves; leaf values are uniform in `[1, 1000]`.
pub fn generate_synthetic(
    node_count: usize,
    depth_levels: usize,
    seed: u64,
) -> Result<Hierarchy, GenerateError> {
    generate_with_leaves(node_count, depth_levels, default_leaves(node_count, depth_levels), seed)
}

/// Same as [`generate_synthetic`] with an exact leaf count.
pub fn generate_with_leaves(
    node_count: usize,
    depth_levels: usize,
    leaf_count: usize,
    seed: u64,
) -> Result<Hierarchy, GenerateError> {
    let err = GenerateError::Unsatisfiable {
        nodes: node_count,
        levels: depth_levels,
        leaves: leaf_count,
    };
    if node_count == 0 || depth_levels == 0 || leaf_count == 0 || node_count < depth_levels {
        return Err(err);
    }
    let internal = node_count.checked_sub(leaf_count).ok_or(err.clone())?;
    let spine_internal = depth_levels - 1;
    if internal < spine_internal {
        return Err(err);
    }
    let extra = internal - spine_internal;
    // extra internal nodes need a grandchild slot, and each may need its own leaf
    if (extra > 0 && depth_levels < 3) || leaf_count < 1 + extra {
        return Err(err);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Grower {
        b: TreeBuilder::default(),
        depth: Vec::with_capacity(node_count),
        has_child: Vec::with_capacity(node_count),
    };
    let mut internal_ids = Vec::with_capacity(internal);
    let mut can_host_internal = Vec::new();

    // spine guaranteeing the requested depth
    let mut parent = None;
    for d in 0..depth_levels {
        let idx = g.push(parent);
        if d + 1 < depth_levels {
            internal_ids.push(idx);
            if d + 3 <= depth_levels {
                can_host_internal.push(idx);
            }
        }
        parent = Some(idx);
    }

    for _ in 0..extra {
        let p = can_host_internal[rng.gen_range(0..can_host_internal.len())];
        let idx = g.push(Some(p));
        internal_ids.push(idx);
        if g.depth[idx] + 3 <= depth_levels {
            can_host_internal.push(idx);
        }
    }

    let childless: Vec<usize> = internal_ids
        .iter()
        .copied()
        .filter(|&i| !g.has_child[i])
        .collect();
    let mut leaves = vec![depth_levels - 1];
    for p in childless {
        leaves.push(g.push(Some(p)));
    }
    while g.b.nodes.len() < node_count {
        let p = internal_ids[rng.gen_range(0..internal_ids.len())];
        leaves.push(g.push(Some(p)));
    }
    let mut b = g.b;
    for leaf in leaves {
        b.nodes[leaf].self_value = rng.gen_range(1.0..=1000.0);
    }
    Ok(b.finish(0))
}

struct Grower {
    b: TreeBuilder,
    depth: Vec<usize>,
    has_child: Vec<bool>,
}

impl Grower {
    fn push(&mut self, parent: Option<usize>) -> usize {
        let idx = self.b.nodes.len();
        self.b.add(parent, format!("n{idx}"), 0.0);
        self.depth.push(parent.map_or(0, |p| self.depth[p] + 1));
        self.has_child.push(false);
        if let Some(p) = parent {
            self.has_child[p] = true;
        }
        idx
    }
}

/// Fixture with the shape of the categories dataset: 7,548 nodes over 15
/// levels, 6,278 of them leaves, random leaf values.
pub fn chi_shaped() -> Hierarchy {
    generate_with_leaves(CHI_NODES, CHI_LEVELS, CHI_LEAVES, CHI_SEED).expect("satisfiable shape")
}

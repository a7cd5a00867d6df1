//! Random trees and brute-force oracles shared by the integration tests.
//! The oracles recompute everything from parent links and self values and
//! share no code with the engine.

#![allow(dead_code)]

use std::fmt::Write as _;

use hqviz_core::hierarchy::{ingest, Format, Hierarchy, Relationship};
use hqviz_core::NodeId;
use rand::Rng;

const MAX_DEPTH: usize = 40;

/// Random tree as nested JSON: random attachment, about a tenth of the
/// leaves zero-valued, some internal self values.
pub fn random_doc<R: Rng>(rng: &mut R, max_nodes: usize) -> String {
    let n = rng.gen_range(1..=max_nodes);
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let chainy = rng.gen_bool(0.2);
    for i in 1..n {
        let p = loop {
            let p = if chainy && rng.gen_bool(0.7) {
                i - 1
            } else {
                rng.gen_range(0..i)
            };
            if depth[p] < MAX_DEPTH {
                break p;
            }
        };
        parent[i] = p;
        depth[i] = depth[p] + 1;
        children[p].push(i);
    }
    let mut values = vec![0.0; n];
    for i in 0..n {
        values[i] = if children[i].is_empty() {
            if rng.gen_bool(0.1) {
                0.0
            } else {
                rng.gen_range(1.0..1000.0)
            }
        } else if rng.gen_bool(0.2) {
            rng.gen_range(0.0..50.0)
        } else {
            0.0
        };
    }
    // at least one positive value so the root can be laid out
    if values.iter().all(|v| *v == 0.0) {
        values[n - 1] = 1.0;
    }
    let mut out = String::new();
    write_node(0, &children, &values, &mut out);
    out
}

fn write_node(i: usize, children: &[Vec<usize>], values: &[f64], out: &mut String) {
    let _ = write!(out, r#"{{"name":"n{i}","value":{}"#, values[i]);
    if !children[i].is_empty() {
        out.push_str(r#","children":["#);
        for (k, c) in children[i].iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write_node(*c, children, values, out);
        }
        out.push(']');
    }
    out.push('}');
}

pub fn random_tree<R: Rng>(rng: &mut R, max_nodes: usize) -> Hierarchy {
    ingest(&random_doc(rng, max_nodes), Format::NestedJson).expect("generated document parses")
}

/// Subtree totals recomputed bottom-up from self values.
pub fn oracle_totals(h: &Hierarchy) -> Vec<f64> {
    fn total(h: &Hierarchy, id: NodeId, out: &mut Vec<f64>) -> f64 {
        let n = h.node(id);
        let t = n.self_value + n.children.iter().map(|c| total(h, *c, out)).sum::<f64>();
        out[id.index()] = t;
        t
    }
    let mut out = vec![0.0; h.len()];
    total(h, h.root(), &mut out);
    out
}

/// Icicle spans by prefix sums: a child starts after its parent's self
/// value and all earlier siblings.
pub fn oracle_spans(h: &Hierarchy) -> Vec<(f64, f64)> {
    let totals = oracle_totals(h);
    let mut spans = vec![(0.0, 0.0); h.len()];
    fn visit(h: &Hierarchy, id: NodeId, lo: f64, hi: f64, totals: &[f64], spans: &mut [(f64, f64)]) {
        spans[id.index()] = (lo, hi);
        let t = totals[id.index()];
        let mut acc = h.node(id).self_value;
        for c in h.children(id) {
            let (a, b) = if t > 0.0 {
                let a = lo + (hi - lo) * acc / t;
                acc += totals[c.index()];
                (a, lo + (hi - lo) * acc / t)
            } else {
                (lo, lo)
            };
            visit(h, *c, a, b, totals, spans);
        }
    }
    visit(h, h.root(), 0.0, 1.0, &totals, &mut spans);
    spans
}

/// Root path by walking parent links.
pub fn oracle_path(h: &Hierarchy, mut n: NodeId) -> Vec<NodeId> {
    let mut p = vec![n];
    while let Some(q) = h.node(n).parent {
        p.push(q);
        n = q;
    }
    p.reverse();
    p
}

pub fn oracle_lca(h: &Hierarchy, a: NodeId, b: NodeId) -> NodeId {
    let (pa, pb) = (oracle_path(h, a), oracle_path(h, b));
    *pa.iter().zip(&pb).take_while(|(x, y)| x == y).last().expect("shared root").0
}

/// Most precise relationship from root paths.
pub fn oracle_relationship(h: &Hierarchy, a: NodeId, b: NodeId) -> Relationship {
    let (pa, pb) = (oracle_path(h, a), oracle_path(h, b));
    if a == b {
        Relationship::Identical
    } else if pb.len() == pa.len() + 1 && pb[pa.len() - 1] == a {
        Relationship::Parent
    } else if pa.len() == pb.len() + 1 && pa[pb.len() - 1] == b {
        Relationship::Child
    } else if pa.len() == pb.len() && pa.len() > 1 && pa[pa.len() - 2] == pb[pb.len() - 2] {
        Relationship::Sibling
    } else if pb.len() > pa.len() && pb[pa.len() - 1] == a {
        Relationship::Ancestor
    } else if pa.len() > pb.len() && pa[pb.len() - 1] == b {
        Relationship::Descendant
    } else {
        Relationship::Unrelated
    }
}

/// Worst aspect ratio of a slice-and-dice split along the longer side:
/// every item spans the full shorter side.
pub fn slice_and_dice_worst(values: &[f64], w: f64, h: f64) -> f64 {
    let (long, short) = if w >= h { (w, h) } else { (h, w) };
    let total: f64 = values.iter().sum();
    values
        .iter()
        .filter(|v| **v > 0.0)
        .map(|v| {
            let len = long * v / total;
            (len / short).max(short / len)
        })
        .fold(1.0, f64::max)
}

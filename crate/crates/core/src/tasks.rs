//! Grading oracles for the four navigation task types. A UI presents the
//! task and collects an answer; correctness is decided here.

use crate::hierarchy::{Hierarchy, NodeId, QueryError, Relationship};

#[derive(Clone, Debug, PartialEq)]
pub enum Task {
    /// Find and tag the node at the end of a root path (names below the root).
    Navigate { path: Vec<String> },
    /// Which of two nodes is larger?
    CompareSize { a: NodeId, b: NodeId },
    /// Most precise relationship of `a` to `b`.
    Relate { a: NodeId, b: NodeId },
    /// Tag the lowest common ancestor.
    CommonAncestor { a: NodeId, b: NodeId },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Answer {
    Tagged(NodeId),
    Larger(NodeId),
    Relationship(Relationship),
}

/// Whether `answer` solves `task`. An answer of the wrong type is simply
/// wrong; invalid node ids in the task are errors.
pub fn grade(h: &Hierarchy, task: &Task, answer: &Answer) -> Result<bool, QueryError> {
    Ok(match (task, answer) {
        (Task::Navigate { path }, Answer::Tagged(n)) => h.find_path(path) == Some(*n),
        (Task::CompareSize { a, b }, Answer::Larger(n)) => {
            let (va, vb) = (h.get(*a)?.total_value, h.get(*b)?.total_value);
            if va == vb {
                n == a || n == b
            } else {
                *n == if va > vb { *a } else { *b }
            }
        }
        (Task::Relate { a, b }, Answer::Relationship(r)) => h.relationship(*a, *b)? == *r,
        (Task::CommonAncestor { a, b }, Answer::Tagged(n)) => h.lca(*a, *b)? == *n,
        _ => false,
    })
}

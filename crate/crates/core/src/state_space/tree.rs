use serde::Serialize;

use super::{ExploreError, Lts};
use crate::marking::DualMarking;
use crate::net::TransitionId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeStatus {
    /// Has at least one child.
    Interior,
    /// Repeats a marking already present in the tree.
    Old,
    /// No transition is enabled.
    DeadEnd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub state: usize,
    pub marking: DualMarking,
    pub parent: Option<usize>,
    /// Transition and outcome index on the edge from the parent.
    pub label: Option<(TransitionId, usize)>,
    pub status: NodeStatus,
    pub children: Vec<usize>,
}

/// Reachability tree unfolded from a complete [`Lts`]. Node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachTree {
    nodes: Vec<TreeNode>,
    dual: bool,
}

impl ReachTree {
    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn count(&self, status: NodeStatus) -> usize {
        self.nodes.iter().filter(|n| n.status == status).count()
    }
}

/// Breadth-first unfolding. A marking met a second time becomes an `old`
/// leaf; a first visit with no outgoing edge becomes a dead end.
pub fn reach_tree(lts: &Lts) -> Result<ReachTree, ExploreError> {
    if !lts.is_complete() {
        return Err(ExploreError::Incomplete);
    }
    let mut adjacency = vec![Vec::new(); lts.states().len()];
    for e in lts.edges() {
        adjacency[e.source].push(*e);
    }
    let mut seen = vec![false; lts.states().len()];
    let root = lts.initial();
    seen[root] = true;
    let mut nodes = vec![TreeNode {
        state: root,
        marking: lts.states()[root].clone(),
        parent: None,
        label: None,
        status: NodeStatus::DeadEnd,
        children: Vec::new(),
    }];
    let mut next = 0;
    while next < nodes.len() {
        if nodes[next].status == NodeStatus::Old {
            next += 1;
            continue;
        }
        let state = nodes[next].state;
        for e in &adjacency[state] {
            let status = if seen[e.target] { NodeStatus::Old } else { NodeStatus::DeadEnd };
            seen[e.target] = true;
            let id = nodes.len();
            nodes.push(TreeNode {
                state: e.target,
                marking: lts.states()[e.target].clone(),
                parent: Some(next),
                label: Some((e.transition, e.outcome)),
                status,
                children: Vec::new(),
            });
            nodes[next].children.push(id);
        }
        if !nodes[next].children.is_empty() {
            nodes[next].status = NodeStatus::Interior;
        }
        next += 1;
    }
    Ok(ReachTree { nodes, dual: lts.is_dual() })
}

//! Reachability graphs, reachability trees and LPN/LSPN equivalence.

mod equiv;
mod tree;

use std::collections::HashMap;

use thiserror::Error;

pub use equiv::{check_equivalence, Counterexample, EquivalenceVerdict, Step, Verdict};
pub use tree::{reach_tree, NodeStatus, ReachTree, TreeNode};

use crate::firing::{successors, FireError};
use crate::marking::{positive_projection, DualMarking, Marking};
use crate::net::{Net, TransitionId};

pub const DEFAULT_MAX_STATES: usize = 65_536;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExploreError {
    #[error("state bound must be at least 1")]
    ZeroBound,
    #[error("initial marking has {found} places, net has {expected}")]
    MarkingLength { expected: usize, found: usize },
    #[error("initial marking {0} exceeds the net's place capacity")]
    CapacityViolation(String),
    #[error(transparent)]
    Fire(#[from] FireError),
    #[error("reachability tree needs a fully explored state space")]
    Incomplete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub transition: TransitionId,
    pub outcome: usize,
    pub target: usize,
}

/// Labeled transition system over markings. State 0 is the initial marking;
/// the remaining states are numbered in breadth-first discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lts {
    states: Vec<DualMarking>,
    index: HashMap<DualMarking, usize>,
    edges: Vec<Edge>,
    complete: bool,
    dual: bool,
}

impl Lts {
    pub fn states(&self) -> &[DualMarking] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// False when exploration stopped at the state bound.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Whether states carry negative tokens (signed nets) or are plain.
    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn state_id(&self, m: &DualMarking) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn outgoing(&self, state: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.source == state)
    }

    /// Renders a state as `((..),(..))` or, for plain systems, `(..)`.
    pub fn state_label(&self, state: usize) -> String {
        if self.dual {
            self.states[state].to_string()
        } else {
            positive_projection(&self.states[state]).to_string()
        }
    }

    fn intern(&mut self, m: DualMarking) -> usize {
        if let Some(&id) = self.index.get(&m) {
            return id;
        }
        let id = self.states.len();
        self.index.insert(m.clone(), id);
        self.states.push(m);
        id
    }
}

/// Breadth-first reachability from `m0`, stopping once `max_states` states
/// are known and another new one turns up.
pub fn explore(net: &Net, m0: &DualMarking, max_states: usize) -> Result<Lts, ExploreError> {
    if max_states == 0 {
        return Err(ExploreError::ZeroBound);
    }
    if m0.len() != net.place_count() {
        return Err(ExploreError::MarkingLength { expected: net.place_count(), found: m0.len() });
    }
    if !m0.respects(net.capacity()) {
        return Err(ExploreError::CapacityViolation(m0.to_string()));
    }
    let mut lts = Lts {
        states: Vec::new(),
        index: HashMap::new(),
        edges: Vec::new(),
        complete: true,
        dual: net.class().is_signed(),
    };
    lts.intern(m0.clone());
    let mut next = 0;
    'bfs: while next < lts.states.len() {
        let current = lts.states[next].clone();
        for out in successors(net, &current)? {
            if !lts.index.contains_key(&out.marking) && lts.states.len() >= max_states {
                lts.complete = false;
                break 'bfs;
            }
            let target = lts.intern(out.marking);
            lts.edges.push(Edge { source: next, transition: out.transition, outcome: out.index, target });
        }
        next += 1;
    }
    Ok(lts)
}

/// Two distinct states sharing a positive projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub projected: Marking,
    pub first: DualMarking,
    pub second: DualMarking,
}

/// Replaces every state by its positive projection. Distinct states that
/// project to the same plain marking are merged and reported.
pub fn positive_lts(lts: &Lts) -> (Lts, Vec<Collision>) {
    let mut out =
        Lts { states: Vec::new(), index: HashMap::new(), edges: Vec::new(), complete: lts.complete, dual: false };
    let mut collisions = Vec::new();
    let mut origin: Vec<usize> = Vec::new();
    let mut map = Vec::with_capacity(lts.states.len());
    for (id, m) in lts.states.iter().enumerate() {
        let projected = DualMarking::from_plain(&positive_projection(m));
        let before = out.states.len();
        let pid = out.intern(projected);
        if pid < before {
            collisions.push(Collision {
                projected: positive_projection(m),
                first: lts.states[origin[pid]].clone(),
                second: m.clone(),
            });
        } else {
            origin.push(id);
        }
        map.push(pid);
    }
    out.edges = lts.edges.iter().map(|e| Edge { source: map[e.source], target: map[e.target], ..*e }).collect();
    (out, collisions)
}

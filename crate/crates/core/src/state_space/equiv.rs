use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{explore, positive_lts, Collision, Edge, ExploreError, Lts};
use crate::marking::{positive_projection, DualMarking, Marking};
use crate::net::Net;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    /// One of the explorations hit the state bound.
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "equivalent",
            Verdict::NotEquivalent => "not-equivalent",
            Verdict::Unknown => "unknown",
        })
    }
}

/// One firing step, with the transition given by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: DualMarking,
    pub transition: String,
    pub outcome: usize,
    pub to: DualMarking,
}

impl Step {
    fn of(net: &Net, lts: &Lts, e: &Edge) -> Step {
        Step {
            from: lts.states()[e.source].clone(),
            transition: net.transition_name(e.transition).to_string(),
            outcome: e.outcome,
            to: lts.states()[e.target].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// Two reachable LSPN markings share a positive part.
    Collision(Collision),
    /// The initial markings do not project onto each other.
    InitialMismatch { lpn: Marking, lspn: DualMarking },
    /// A reachable LPN marking has no LSPN counterpart; `via` is the LPN
    /// step that first reached it.
    MissingImage { marking: Marking, via: Step },
    /// A reachable LSPN marking projects outside the LPN reachability set.
    ExtraImage { marking: DualMarking, via: Step },
    /// An LPN step whose endpoints' images are not joined by any LSPN step.
    UnmatchedEdge { lpn_step: Step, image_from: DualMarking, image_to: DualMarking },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let plain = |m: &DualMarking| positive_projection(m);
        match self {
            Counterexample::Collision(c) => {
                write!(f, "LSPN markings {} and {} both project to {}", c.first, c.second, c.projected)
            }
            Counterexample::InitialMismatch { lpn, lspn } => {
                write!(f, "initial markings differ: LPN {lpn}, LSPN {lspn}")
            }
            Counterexample::MissingImage { marking, via } => write!(
                f,
                "LPN marking {marking} (reached by {} --{}/{}--> {}) has no LSPN image",
                plain(&via.from),
                via.transition,
                via.outcome,
                plain(&via.to)
            ),
            Counterexample::ExtraImage { marking, via } => write!(
                f,
                "LSPN step {} --{}/{}--> {} reaches {} which is not LPN-reachable",
                via.from,
                via.transition,
                via.outcome,
                via.to,
                plain(marking)
            ),
            Counterexample::UnmatchedEdge { lpn_step, image_from, image_to } => write!(
                f,
                "LPN step {} --{}/{}--> {} has no LSPN step {} --> {}",
                plain(&lpn_step.from),
                lpn_step.transition,
                lpn_step.outcome,
                plain(&lpn_step.to),
                image_from,
                image_to
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub verdict: Verdict,
    /// `(μ, f(μ))` in LPN state order, filled only when equivalent.
    pub witness: Vec<(Marking, DualMarking)>,
    pub counterexample: Option<Counterexample>,
    /// Whether every LSPN step also projects onto an LPN step. Only set
    /// when equivalent.
    pub reverse_holds: Option<bool>,
    pub lpn_states: usize,
    pub lpn_edges: usize,
    pub lspn_states: usize,
    pub lspn_edges: usize,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

/// Checks that positive projection is a bijection between the reachable
/// markings of `lpn` from `m0` and of `lspn` from `m0_signed`, and that it
/// carries every LPN step onto some LSPN step.
pub fn check_equivalence(
    lpn: &Net,
    m0: &Marking,
    lspn: &Net,
    m0_signed: &DualMarking,
    max_states: usize,
) -> Result<EquivalenceVerdict, ExploreError> {
    let left = explore(lpn, &DualMarking::from_plain(m0), max_states)?;
    let right = explore(lspn, m0_signed, max_states)?;
    let mut verdict = EquivalenceVerdict {
        verdict: Verdict::NotEquivalent,
        witness: Vec::new(),
        counterexample: None,
        reverse_holds: None,
        lpn_states: left.states().len(),
        lpn_edges: left.edges().len(),
        lspn_states: right.states().len(),
        lspn_edges: right.edges().len(),
    };
    if !left.is_complete() || !right.is_complete() {
        verdict.verdict = Verdict::Unknown;
        return Ok(verdict);
    }
    match match_states(lpn, &left, lspn, &right) {
        Ok((image, reverse)) => {
            verdict.verdict = Verdict::Equivalent;
            verdict.reverse_holds = Some(reverse);
            verdict.witness = left
                .states()
                .iter()
                .zip(image)
                .map(|(m, id)| (positive_projection(m), right.states()[id].clone()))
                .collect();
        }
        Err(c) => verdict.counterexample = Some(*c),
    }
    Ok(verdict)
}

// On success, the LSPN image of each LPN state and whether the reverse
// step condition holds.
fn match_states(lpn: &Net, left: &Lts, lspn: &Net, right: &Lts) -> Result<(Vec<usize>, bool), Box<Counterexample>> {
    let (projected, collisions) = positive_lts(right);
    if let Some(c) = collisions.into_iter().next() {
        return Err(Box::new(Counterexample::Collision(c)));
    }
    let lpn_m0 = positive_projection(&left.states()[0]);
    if positive_projection(&right.states()[0]) != lpn_m0 {
        return Err(Box::new(Counterexample::InitialMismatch { lpn: lpn_m0, lspn: right.states()[0].clone() }));
    }

    // LSPN state ids are also ids of `projected`, since nothing collided.
    let image: Vec<Option<usize>> = left.states().iter().map(|m| projected.state_id(m)).collect();
    if let Some(missing) = image.iter().position(Option::is_none) {
        let e = first_edge_into(left, missing);
        return Err(Box::new(Counterexample::MissingImage {
            marking: positive_projection(&left.states()[missing]),
            via: Step::of(lpn, left, e),
        }));
    }
    if let Some(extra) = projected.states().iter().position(|m| left.state_id(m).is_none()) {
        let e = first_edge_into(right, extra);
        return Err(Box::new(Counterexample::ExtraImage {
            marking: right.states()[extra].clone(),
            via: Step::of(lspn, right, e),
        }));
    }

    let lspn_pairs: HashSet<(usize, usize)> = right.edges().iter().map(|e| (e.source, e.target)).collect();
    for e in left.edges() {
        let (from, to) = (image[e.source].unwrap(), image[e.target].unwrap());
        if !lspn_pairs.contains(&(from, to)) {
            return Err(Box::new(Counterexample::UnmatchedEdge {
                lpn_step: Step::of(lpn, left, e),
                image_from: right.states()[from].clone(),
                image_to: right.states()[to].clone(),
            }));
        }
    }

    let image: Vec<usize> = image.into_iter().flatten().collect();
    let preimage: HashMap<usize, usize> = image.iter().enumerate().map(|(l, &r)| (r, l)).collect();
    let lpn_pairs: HashSet<(usize, usize)> = left.edges().iter().map(|e| (e.source, e.target)).collect();
    let reverse = right.edges().iter().all(|e| lpn_pairs.contains(&(preimage[&e.source], preimage[&e.target])));
    Ok((image, reverse))
}

// Every non-initial state of a breadth-first exploration has an incoming edge.
fn first_edge_into(lts: &Lts, state: usize) -> &Edge {
    lts.edges().iter().find(|e| e.target == state).expect("non-initial state is reached by some edge")
}

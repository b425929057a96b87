//! Enabling and firing for every net class.
//!
//! Each engine maps `(net, transition, marking)` to the list of possible
//! outcomes. Nondeterministic transitions produce several outcomes whose
//! indices follow a binary counter over the choice places in declaration
//! order, bit 0 being the first place.

mod lpn;
mod lspn;
mod spn;

use thiserror::Error;

pub use lpn::lpn_outcomes;
pub use lspn::{enabling_sets, lspn_outcomes, EnablingSets};
pub use spn::{spn_enabled, spn_fire};

use crate::marking::{positive_projection, DualMarking};
use crate::net::{Net, NetClass, PlaceId, Sign, TransitionId};

/// What a nondeterministic transition chose when producing an outcome.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    None,
    /// Output places that received a token (LPN logic output).
    Subset(Vec<PlaceId>),
    /// Sign given to each double-arc output place (LSPN logic output).
    Signs(Vec<(PlaceId, Sign)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub transition: TransitionId,
    pub index: usize,
    pub marking: DualMarking,
    pub choice: Choice,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FireError {
    #[error("unknown transition index {0}")]
    UnknownTransition(usize),
    #[error("transition {0} is not enabled")]
    NotEnabled(String),
    #[error("transition {0} has no output arc of the sign its inputs require")]
    OutputSignCondition(String),
    #[error("firing {0} would exceed the place capacity")]
    CapacityExceeded(String),
    #[error("transition {transition} is {kind}; this engine handles {expected}")]
    WrongKind { transition: String, kind: &'static str, expected: &'static str },
    #[error("{engine} engine cannot run a {class} net")]
    WrongClass { engine: &'static str, class: NetClass },
    #[error("marking has {found} places, net has {expected}")]
    MarkingLength { expected: usize, found: usize },
    #[error("{0} nets carry no negative tokens")]
    NegativeTokens(NetClass),
    #[error("logic transition {0} has no guard")]
    MissingGuard(String),
    #[error("transition {transition} has a negative-only arc at {place}")]
    MalformedLogicArcs { transition: String, place: String },
    #[error("step {step}: transition {transition} has no outcome {index}")]
    NoSuchOutcome { step: usize, transition: String, index: usize },
}

pub(crate) fn check_transition(net: &Net, t: TransitionId) -> Result<(), FireError> {
    if t.0 < net.transitions().len() {
        Ok(())
    } else {
        Err(FireError::UnknownTransition(t.0))
    }
}

pub(crate) fn check_len(net: &Net, len: usize) -> Result<(), FireError> {
    if len == net.place_count() {
        Ok(())
    } else {
        Err(FireError::MarkingLength { expected: net.place_count(), found: len })
    }
}

/// All outcomes of firing `t` at `m`, using the engine for the net's class.
/// An empty list means `t` cannot fire.
pub fn outcomes(net: &Net, t: TransitionId, m: &DualMarking) -> Result<Vec<Outcome>, FireError> {
    match net.class() {
        NetClass::Pn | NetClass::Spn => spn::outcome(net, t, m),
        NetClass::Lpn => {
            if !m.is_plain() {
                return Err(FireError::NegativeTokens(NetClass::Lpn));
            }
            lpn_outcomes(net, t, &positive_projection(m))
        }
        NetClass::Lspn => lspn_outcomes(net, t, m),
    }
}

/// Outcomes of every transition, in transition order then outcome index.
pub fn successors(net: &Net, m: &DualMarking) -> Result<Vec<Outcome>, FireError> {
    let mut out = Vec::new();
    for t in net.transition_ids() {
        out.extend(outcomes(net, t, m)?);
    }
    Ok(out)
}

/// A start marking followed by `(transition, outcome index)` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiringSequence {
    pub start: DualMarking,
    pub steps: Vec<(TransitionId, usize)>,
}

impl FiringSequence {
    /// Every marking along the sequence, starting with `start`.
    pub fn replay(&self, net: &Net) -> Result<Vec<DualMarking>, FireError> {
        let mut trace = vec![self.start.clone()];
        for (step, &(t, index)) in self.steps.iter().enumerate() {
            let current = trace.last().expect("trace starts non-empty");
            let mut outs = outcomes(net, t, current)?;
            if index >= outs.len() {
                return Err(FireError::NoSuchOutcome { step, transition: net.transition_name(t).to_string(), index });
            }
            trace.push(outs.swap_remove(index).marking);
        }
        Ok(trace)
    }
}

//! Structural rules for nets. Violations are returned as data.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::expr::truth::constant_value;
use crate::expr::{support, LogicExpr};
use crate::net::{Direction, Net, NetClass, PlaceId, Sign, TransitionId, TransitionKind};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Violation {
    #[error("net has no places")]
    NoPlaces,
    #[error("net has no transitions")]
    NoTransitions,
    #[error("empty {0} identifier")]
    EmptyIdentifier(&'static str),
    #[error("place {0} declared more than once")]
    DuplicatePlace(String),
    #[error("transition {0} declared more than once")]
    DuplicateTransition(String),
    #[error("identifier {0} names both a place and a transition")]
    SharedIdentifier(String),
    #[error("place {0} has no incident arc")]
    IsolatedPlace(String),
    #[error("transition {0} has no incident arc")]
    IsolatedTransition(String),
    #[error("arc {arc} has weight 0")]
    ZeroWeight { arc: String },
    #[error("arc {arc} has weight {weight}; logic nets only allow weight 1")]
    NonUnitWeight { arc: String, weight: u32 },
    #[error("arc {arc} is declared more than once")]
    DuplicateArc { arc: String },
    #[error("arc {arc} is negative but {class} arcs are unsigned")]
    NegativeArcInUnsignedNet { arc: String, class: NetClass },
    #[error("transition {transition} is a {kind} transition, which {class} nets do not have")]
    LogicTransitionInPlainNet { transition: String, kind: &'static str, class: NetClass },
    #[error("logic transition {transition} has {place} both as input and as output")]
    PresetPostsetOverlap { transition: String, place: String },
    #[error("logic transition {transition} has no guard expression")]
    MissingGuard { transition: String },
    #[error("guard of {transition} is constant {value}")]
    ConstantGuard { transition: String, value: bool },
    #[error("guard of {transition} is too wide to analyse: {reason}")]
    GuardTooWide { transition: String, reason: String },
    #[error("guard of {transition} mentions {place}, which is not one of its {side} places")]
    GuardPlaceNotConnected { transition: String, place: String, side: &'static str },
    #[error("logic input transition {transition} has a negative-only input arc from {place}; inputs must be positive, or positive and negative")]
    NegativeOnlyInput { transition: String, place: String },
    #[error("logic input transition {transition} has a negative output arc to {place}; outputs must be positive")]
    NegativeOutputOfLogicInput { transition: String, place: String },
    #[error("logic output transition {transition} has a negative-only output arc to {place}; outputs must be positive, or positive and negative")]
    NegativeOnlyOutput { transition: String, place: String },
    #[error("logic output transition {transition} has a negative input arc from {place}; inputs must be positive")]
    NegativeInputOfLogicOutput { transition: String, place: String },
}

/// Non-fatal findings.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Warning {
    #[error("{place} is connected to {transition} but cannot affect its guard")]
    IgnoredPlace { transition: String, place: String },
}

/// One entry of the arc set: an endpoint pair with its sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcKey {
    pub place: PlaceId,
    pub transition: TransitionId,
    pub direction: Direction,
    pub sign: Sign,
}

impl ArcKey {
    /// `((p,t),+)` for input arcs, `((t,p),+)` for output arcs.
    pub fn render(&self, net: &Net) -> String {
        let p = net.place_name(self.place);
        let t = net.transition_name(self.transition);
        match self.direction {
            Direction::Input => format!("(({p},{t}),{})", self.sign),
            Direction::Output => format!("(({t},{p}),{})", self.sign),
        }
    }
}

/// Arcs with non-zero weight, signs preserved. Opposite-sign arcs between the
/// same endpoints stay separate entries.
pub fn arc_set(net: &Net) -> BTreeSet<ArcKey> {
    net.arcs()
        .iter()
        .filter(|a| a.weight > 0)
        .map(|a| ArcKey { place: a.place, transition: a.transition, direction: a.direction, sign: a.sign })
        .collect()
}

pub fn validate_net(net: &Net) -> Vec<Violation> {
    let mut out = Vec::new();
    let class = net.class();

    if net.places().is_empty() {
        out.push(Violation::NoPlaces);
    }
    if net.transitions().is_empty() {
        out.push(Violation::NoTransitions);
    }

    let mut seen = HashSet::new();
    for p in net.places() {
        if p.is_empty() {
            out.push(Violation::EmptyIdentifier("place"));
        } else if !seen.insert(p.as_str()) {
            out.push(Violation::DuplicatePlace(p.clone()));
        }
    }
    let mut seen_t = HashSet::new();
    for t in net.transitions() {
        if t.name.is_empty() {
            out.push(Violation::EmptyIdentifier("transition"));
        } else if !seen_t.insert(t.name.as_str()) {
            out.push(Violation::DuplicateTransition(t.name.clone()));
        } else if seen.contains(t.name.as_str()) {
            out.push(Violation::SharedIdentifier(t.name.clone()));
        }
    }

    for p in net.place_ids() {
        if !net.arcs().iter().any(|a| a.place == p && a.weight > 0) {
            out.push(Violation::IsolatedPlace(net.place_name(p).to_string()));
        }
    }
    for t in net.transition_ids() {
        if !net.arcs_of(t).any(|a| a.weight > 0) {
            out.push(Violation::IsolatedTransition(net.transition_name(t).to_string()));
        }
    }

    let mut arc_keys = HashSet::new();
    for a in net.arcs() {
        let key = ArcKey { place: a.place, transition: a.transition, direction: a.direction, sign: a.sign };
        let label = key.render(net);
        if a.weight == 0 {
            out.push(Violation::ZeroWeight { arc: label.clone() });
        } else if class.is_logic() && a.weight != 1 {
            out.push(Violation::NonUnitWeight { arc: label.clone(), weight: a.weight });
        }
        if !arc_keys.insert(key) {
            out.push(Violation::DuplicateArc { arc: label.clone() });
        }
        if !class.is_signed() && a.sign == Sign::Neg {
            out.push(Violation::NegativeArcInUnsignedNet { arc: label, class });
        }
    }

    for t in net.transition_ids() {
        check_transition(net, t, &mut out);
    }
    out
}

fn check_transition(net: &Net, t: TransitionId, out: &mut Vec<Violation>) {
    let tr = &net.transitions()[t.0];
    let name = || tr.name.clone();
    let pname = |p: PlaceId| net.place_name(p).to_string();
    if !tr.kind.is_logic() {
        return;
    }
    if !net.class().is_logic() {
        out.push(Violation::LogicTransitionInPlainNet {
            transition: name(),
            kind: tr.kind.label(),
            class: net.class(),
        });
        return;
    }

    let preset = net.preset(t);
    let postset = net.postset(t);
    for p in preset.iter().filter(|p| postset.contains(p)) {
        out.push(Violation::PresetPostsetOverlap { transition: name(), place: pname(*p) });
    }

    let (guarded_side, side_name) = match tr.kind {
        TransitionKind::LogicInput(_) => (&preset, "input"),
        _ => (&postset, "output"),
    };
    match tr.kind.guard() {
        None if net.class() == NetClass::Lpn => out.push(Violation::MissingGuard { transition: name() }),
        None => {}
        Some(g) => {
            for p in g.atoms().into_iter().filter(|p| !guarded_side.contains(p)) {
                out.push(Violation::GuardPlaceNotConnected { transition: name(), place: pname(p), side: side_name });
            }
            match constant_value(g) {
                Ok(Some(value)) => out.push(Violation::ConstantGuard { transition: name(), value }),
                Ok(None) => {}
                Err(e) => out.push(Violation::GuardTooWide { transition: name(), reason: e.to_string() }),
            }
        }
    }

    if net.class() != NetClass::Lspn {
        return;
    }
    let has = |p: PlaceId, dir: Direction, sign: Sign| net.weight(p, t, dir, sign) > 0;
    match tr.kind {
        TransitionKind::LogicInput(_) => {
            for &p in &preset {
                if !has(p, Direction::Input, Sign::Pos) {
                    out.push(Violation::NegativeOnlyInput { transition: name(), place: pname(p) });
                }
            }
            for &p in &postset {
                if has(p, Direction::Output, Sign::Neg) {
                    out.push(Violation::NegativeOutputOfLogicInput { transition: name(), place: pname(p) });
                }
            }
        }
        TransitionKind::LogicOutput(_) => {
            for &p in &postset {
                if !has(p, Direction::Output, Sign::Pos) {
                    out.push(Violation::NegativeOnlyOutput { transition: name(), place: pname(p) });
                }
            }
            for &p in &preset {
                if has(p, Direction::Input, Sign::Neg) {
                    out.push(Violation::NegativeInputOfLogicOutput { transition: name(), place: pname(p) });
                }
            }
        }
        TransitionKind::Traditional => unreachable!(),
    }
}

/// Connected places that cannot influence their transition's guard.
pub fn lint_net(net: &Net) -> Vec<Warning> {
    let mut out = Vec::new();
    for t in net.transition_ids() {
        let tr = &net.transitions()[t.0];
        let Some(guard) = tr.kind.guard() else { continue };
        let side = match tr.kind {
            TransitionKind::LogicInput(_) => net.preset(t),
            _ => net.postset(t),
        };
        for p in ignored_places(guard, &side) {
            out.push(Warning::IgnoredPlace { transition: tr.name.clone(), place: net.place_name(p).to_string() });
        }
    }
    out
}

pub(crate) fn ignored_places(guard: &LogicExpr, connected: &[PlaceId]) -> Vec<PlaceId> {
    let Ok(sup) = support(guard) else { return Vec::new() };
    connected.iter().copied().filter(|p| !sup.contains(p)).collect()
}

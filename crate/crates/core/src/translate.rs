//! LPN to LSPN translation.
//!
//! Places are copied unchanged. Traditional transitions keep their arcs, all
//! positive. For a logic transition the guard is reduced to its support and
//! expanded into minterms over it; a place appearing with both polarities
//! gets a positive and a negative arc, a place appearing only positively gets
//! a positive arc. Places that only ever appear negated have no encoding and
//! cause a rejection.
//!
//! Tokens: every double-arc place holds exactly one token, positive when the
//! LPN place is marked and negative otherwise; other places copy the LPN
//! marking as positive tokens.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::expr::{and_or_form, minterm_expansion, polarity_profile, support, to_dnf, LogicExpr, Polarity};
use crate::marking::{DualMarking, Marking};
use crate::net::{Arc, Direction, Net, NetClass, PlaceId, Sign, Transition, TransitionId, TransitionKind};
use crate::validate::{validate_net, ArcKey, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TranslationWarning {
    #[error(
        "guard of {transition} ({guard}) is not an AND of places with an OR of places; equivalence is not guaranteed"
    )]
    NotAndOrForm { transition: String, guard: String },
    #[error("{place} is connected to {transition} but cannot affect its guard; kept as a positive arc")]
    IgnoredPlace { transition: String, place: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rejection {
    #[error("input is a {0} net, expected LPN")]
    NotLpn(String),
    #[error("input net is invalid: {0}")]
    InvalidNet(String),
    #[error("{place} occurs only negated in the guard of {transition}; no arc encoding exists")]
    NegatedOnly { transition: String, place: String },
    #[error("guard of {transition} is constant")]
    ConstantGuard { transition: String },
    #[error("guard of {transition}: {reason}")]
    Guard { transition: String, reason: String },
    #[error("initial marking {found}: expected a plain marking over {expected} places")]
    BadMarking { expected: usize, found: String },
}

/// What the translator did with one transition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionRecord {
    pub transition: String,
    pub kind: &'static str,
    /// Canonical DNF of the guard, for reference.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dnf: Option<String>,
    /// Minterm expansion over the guard's support; arc signs come from this.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion: Option<String>,
    pub profile: Vec<(String, Polarity)>,
    pub arcs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslationReport {
    #[serde(skip)]
    pub lspn: Option<Net>,
    pub transitions: Vec<TransitionRecord>,
    pub warnings: Vec<TranslationWarning>,
    pub rejections: Vec<Rejection>,
}

impl TranslationReport {
    pub fn is_rejected(&self) -> bool {
        !self.rejections.is_empty()
    }
}

impl fmt::Display for TranslationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rec in &self.transitions {
            writeln!(f, "transition {} ({})", rec.transition, rec.kind)?;
            if let Some(d) = &rec.dnf {
                writeln!(f, "  dnf:       {d}")?;
            }
            if let Some(x) = &rec.expansion {
                writeln!(f, "  minterms:  {x}")?;
            }
            if !rec.profile.is_empty() {
                let prof: Vec<String> = rec.profile.iter().map(|(p, pol)| format!("{p}:{pol}")).collect();
                writeln!(f, "  profile:   {}", prof.join(" "))?;
            }
            writeln!(f, "  arcs:      {}", rec.arcs.join(" "))?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for r in &self.rejections {
            writeln!(f, "rejected: {r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
#[error("translation rejected: {}", .0.rejections.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; "))]
pub struct TranslationRejected(pub Box<TranslationReport>);

/// Builds the LSPN structure for `lpn`.
pub fn translate_structure(lpn: &Net) -> TranslationReport {
    let mut report =
        TranslationReport { lspn: None, transitions: Vec::new(), warnings: Vec::new(), rejections: Vec::new() };
    if lpn.class() != NetClass::Lpn {
        report.rejections.push(Rejection::NotLpn(lpn.class().to_string()));
        return report;
    }
    let violations = validate_net(lpn);
    if !violations.is_empty() {
        let text = violations.iter().map(Violation::to_string).collect::<Vec<_>>().join("; ");
        report.rejections.push(Rejection::InvalidNet(text));
        return report;
    }

    let mut arcs: Vec<Arc> = Vec::new();
    let mut per_transition: Vec<(usize, usize)> = Vec::new();
    let mut pending: Vec<TransitionRecord> = Vec::new();
    for t in lpn.transition_ids() {
        let start = arcs.len();
        let record = translate_transition(lpn, t, &mut arcs, &mut report);
        per_transition.push((start, arcs.len()));
        pending.push(record);
    }

    let transitions: Vec<Transition> = lpn.transitions().to_vec();
    let lspn = Net::from_parts(NetClass::Lspn, lpn.capacity(), lpn.places().to_vec(), transitions, arcs);
    for (rec, (start, end)) in pending.iter_mut().zip(per_transition) {
        rec.arcs = lspn.arcs()[start..end]
            .iter()
            .map(|a| {
                ArcKey { place: a.place, transition: a.transition, direction: a.direction, sign: a.sign }.render(&lspn)
            })
            .collect();
    }
    report.transitions = pending;
    if report.rejections.is_empty() {
        report.lspn = Some(lspn);
    }
    report
}

fn translate_transition(
    lpn: &Net,
    t: TransitionId,
    arcs: &mut Vec<Arc>,
    report: &mut TranslationReport,
) -> TransitionRecord {
    let first_arc = arcs.len();
    let tr = &lpn.transitions()[t.0];
    let name = || tr.name.clone();
    let pname = |p: PlaceId| lpn.place_name(p).to_string();
    let arc = |p: PlaceId, direction, sign| Arc { place: p, transition: t, direction, sign, weight: 1 };
    let mut record = TransitionRecord {
        transition: name(),
        kind: tr.kind.label(),
        dnf: None,
        expansion: None,
        profile: Vec::new(),
        arcs: Vec::new(),
    };

    let (guard, guarded, fixed): (&LogicExpr, Direction, Direction) = match &tr.kind {
        TransitionKind::Traditional => {
            for a in lpn.arcs_of(t) {
                arcs.push(Arc { sign: Sign::Pos, ..*a });
            }
            return record;
        }
        TransitionKind::LogicInput(Some(g)) => (g, Direction::Input, Direction::Output),
        TransitionKind::LogicOutput(Some(g)) => (g, Direction::Output, Direction::Input),
        // validation already rejects unguarded LPN logic transitions
        _ => unreachable!("validated LPN logic transition without guard"),
    };
    let guarded_places = match guarded {
        Direction::Input => lpn.preset(t),
        Direction::Output => lpn.postset(t),
    };
    let fixed_places = match fixed {
        Direction::Input => lpn.preset(t),
        Direction::Output => lpn.postset(t),
    };

    let name_of = |p: &PlaceId| pname(*p);
    let sup = match support(guard) {
        Ok(s) if s.is_empty() => {
            report.rejections.push(Rejection::ConstantGuard { transition: name() });
            return record;
        }
        Ok(s) => s,
        Err(e) => {
            report.rejections.push(Rejection::Guard { transition: name(), reason: e.to_string() });
            return record;
        }
    };
    record.dnf = to_dnf(guard).ok().map(|d| d.render(&name_of));
    let expansion = match minterm_expansion(guard, &sup) {
        Ok(x) => x,
        Err(e) => {
            report.rejections.push(Rejection::Guard { transition: name(), reason: e.to_string() });
            return record;
        }
    };
    record.expansion = Some(expansion.render(&name_of));
    if matches!(and_or_form(guard), Ok(None)) {
        report.warnings.push(TranslationWarning::NotAndOrForm { transition: name(), guard: lpn.guard_text(guard) });
    }

    let profile = polarity_profile(&expansion, &guarded_places);
    for &(p, polarity) in profile.entries() {
        record.profile.push((pname(p), polarity));
        match polarity {
            Polarity::PosOnly => arcs.push(arc(p, guarded, Sign::Pos)),
            Polarity::Both => {
                arcs.push(arc(p, guarded, Sign::Pos));
                arcs.push(arc(p, guarded, Sign::Neg));
            }
            Polarity::Absent => {
                report.warnings.push(TranslationWarning::IgnoredPlace { transition: name(), place: pname(p) });
                arcs.push(arc(p, guarded, Sign::Pos));
            }
            Polarity::NegOnly => {
                report.rejections.push(Rejection::NegatedOnly { transition: name(), place: pname(p) });
            }
        }
    }
    for p in fixed_places {
        arcs.push(arc(p, fixed, Sign::Pos));
    }
    arcs[first_arc..].sort_by_key(|a| (a.direction, a.place, a.sign));
    record
}

/// Places joined to some transition by both a positive and a negative arc.
pub fn double_arc_places(net: &Net) -> Vec<PlaceId> {
    net.place_ids()
        .filter(|&p| {
            net.transition_ids().any(|t| {
                [Direction::Input, Direction::Output]
                    .into_iter()
                    .any(|d| net.weight(p, t, d, Sign::Pos) > 0 && net.weight(p, t, d, Sign::Neg) > 0)
            })
        })
        .collect()
}

/// Initial LSPN marking for an LPN marking.
pub fn assign_initial_tokens(lpn_m0: &Marking, lspn: &Net) -> DualMarking {
    let mut neg = vec![0; lpn_m0.len()];
    for p in double_arc_places(lspn) {
        if lpn_m0.get(p) == 0 {
            neg[p.0] = 1;
        }
    }
    DualMarking::new(lpn_m0.0.clone(), neg).expect("equal lengths")
}

#[derive(Clone, Debug)]
pub struct Translation {
    pub lspn: Net,
    pub initial: DualMarking,
    pub report: TranslationReport,
}

/// Structure plus tokens.
pub fn translate_lpn(lpn: &Net, m0: &Marking) -> Result<Translation, TranslationRejected> {
    let mut report = translate_structure(lpn);
    if m0.len() != lpn.place_count() {
        report.rejections.push(Rejection::BadMarking { expected: lpn.place_count(), found: m0.to_string() });
        report.lspn = None;
    }
    match report.lspn.clone() {
        Some(lspn) => {
            let initial = assign_initial_tokens(m0, &lspn);
            Ok(Translation { lspn, initial, report })
        }
        None => Err(TranslationRejected(Box::new(report))),
    }
}

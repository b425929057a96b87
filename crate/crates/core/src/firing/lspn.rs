use super::{check_len, check_transition, spn, Choice, FireError, Outcome};
use crate::marking::DualMarking;
use crate::net::{Direction, Net, NetClass, PlaceId, Sign, TransitionId, TransitionKind};

/// Guarded side of a logic transition, split by arc shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnablingSets {
    /// Places joined by a positive arc only.
    pub mandatory: Vec<PlaceId>,
    /// Places joined by both a positive and a negative arc.
    pub optional: Vec<PlaceId>,
}

/// Splits the input side of a logic input transition, or the output side of
/// a logic output transition, into single-arc and double-arc places.
pub fn enabling_sets(net: &Net, t: TransitionId) -> Result<EnablingSets, FireError> {
    check_transition(net, t)?;
    let tr = &net.transitions()[t.0];
    let (side, places) = match tr.kind {
        TransitionKind::LogicInput(_) => (Direction::Input, net.preset(t)),
        TransitionKind::LogicOutput(_) => (Direction::Output, net.postset(t)),
        TransitionKind::Traditional => {
            return Err(FireError::WrongKind {
                transition: tr.name.clone(),
                kind: tr.kind.label(),
                expected: "logic transitions",
            })
        }
    };
    let mut sets = EnablingSets { mandatory: Vec::new(), optional: Vec::new() };
    for p in places {
        let pos = net.weight(p, t, side, Sign::Pos) > 0;
        let neg = net.weight(p, t, side, Sign::Neg) > 0;
        match (pos, neg) {
            (true, false) => sets.mandatory.push(p),
            (true, true) => sets.optional.push(p),
            _ => {
                return Err(FireError::MalformedLogicArcs {
                    transition: tr.name.clone(),
                    place: net.place_name(p).to_string(),
                })
            }
        }
    }
    Ok(sets)
}

/// Outcomes of `t` in a logic signed Petri net.
///
/// Logic input transitions need a positive token on every mandatory place
/// and, when double-arc places exist, a positive token on at least one of
/// them with every other double-arc place holding a token of either sign.
/// Firing consumes the positive token of each mandatory place and one token
/// from each double-arc place (the positive one if present), then puts a
/// positive token on every output.
///
/// Logic output transitions need a positive token on every input. Firing
/// consumes them, gives each single-arc output a positive token, and
/// enumerates sign assignments over the double-arc outputs: a positive
/// choice adds a positive token, a negative choice leaves the place with one
/// negative token. An assignment is admissible when at least one double-arc
/// output ends up with exactly one positive token.
///
/// Traditional transitions follow the signed-net rules.
pub fn lspn_outcomes(net: &Net, t: TransitionId, m: &DualMarking) -> Result<Vec<Outcome>, FireError> {
    if net.class() != NetClass::Lspn {
        return Err(FireError::WrongClass { engine: "logic signed", class: net.class() });
    }
    check_transition(net, t)?;
    check_len(net, m.len())?;
    let capacity = net.capacity();
    match net.transitions()[t.0].kind {
        TransitionKind::Traditional => spn::outcome(net, t, m),
        TransitionKind::LogicInput(_) => {
            let sets = enabling_sets(net, t)?;
            let mandatory_ok = sets.mandatory.iter().all(|&p| m.pos_at(p) == 1);
            let optional_ok = sets.optional.is_empty()
                || (sets.optional.iter().any(|&p| m.pos_at(p) == 1)
                    && sets.optional.iter().all(|&p| m.pos_at(p) == 1 || m.neg_at(p) == 1));
            if !(mandatory_ok && optional_ok) {
                return Ok(Vec::new());
            }
            let mut next = m.clone();
            for &p in &sets.mandatory {
                next.pos_mut()[p.0] -= 1;
            }
            for &p in &sets.optional {
                if m.pos_at(p) == 1 {
                    next.pos_mut()[p.0] -= 1;
                } else {
                    next.neg_mut()[p.0] -= 1;
                }
            }
            for p in net.postset(t) {
                next.pos_mut()[p.0] += 1;
            }
            if !next.respects(capacity) {
                return Ok(Vec::new());
            }
            Ok(vec![Outcome { transition: t, index: 0, marking: next, choice: Choice::None }])
        }
        TransitionKind::LogicOutput(_) => {
            let sets = enabling_sets(net, t)?;
            let preset = net.preset(t);
            if !preset.iter().all(|&p| m.pos_at(p) == 1) {
                return Ok(Vec::new());
            }
            let mut base = m.clone();
            for p in &preset {
                base.pos_mut()[p.0] -= 1;
            }
            for p in &sets.mandatory {
                base.pos_mut()[p.0] += 1;
            }
            let mut out = Vec::new();
            for mask in 0u64..(1u64 << sets.optional.len()) {
                let mut next = base.clone();
                let mut signs = Vec::with_capacity(sets.optional.len());
                for (i, &p) in sets.optional.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        next.pos_mut()[p.0] += 1;
                        signs.push((p, Sign::Pos));
                    } else {
                        let neg = &mut next.neg_mut()[p.0];
                        *neg = (*neg).max(1);
                        signs.push((p, Sign::Neg));
                    }
                }
                let admissible = sets.optional.is_empty() || sets.optional.iter().any(|&p| next.pos_at(p) == 1);
                if admissible && next.respects(capacity) {
                    out.push(Outcome { transition: t, index: out.len(), marking: next, choice: Choice::Signs(signs) });
                }
            }
            Ok(out)
        }
    }
}

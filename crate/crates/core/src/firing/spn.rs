use super::{check_len, check_transition, Choice, FireError, Outcome};
use crate::marking::DualMarking;
use crate::net::{Direction, Net, NetClass, Sign, TransitionId, TransitionKind};

fn check_traditional(net: &Net, t: TransitionId, m: &DualMarking) -> Result<(), FireError> {
    if net.class() == NetClass::Lpn {
        return Err(FireError::WrongClass { engine: "signed", class: NetClass::Lpn });
    }
    check_transition(net, t)?;
    check_len(net, m.len())?;
    let tr = &net.transitions()[t.0];
    if tr.kind != TransitionKind::Traditional {
        return Err(FireError::WrongKind {
            transition: tr.name.clone(),
            kind: tr.kind.label(),
            expected: "traditional transitions",
        });
    }
    Ok(())
}

/// Every input arc's weight is covered by tokens of the arc's sign.
pub fn spn_enabled(net: &Net, t: TransitionId, m: &DualMarking) -> Result<bool, FireError> {
    check_traditional(net, t, m)?;
    Ok(net.inputs(t).all(|a| {
        let have = match a.sign {
            Sign::Pos => m.pos_at(a.place),
            Sign::Neg => m.neg_at(a.place),
        };
        a.weight <= have
    }))
}

// Signed nets only fire when some output arc carries the sign the inputs
// call for: positive after all-positive inputs, negative after all-negative
// inputs, either sign otherwise.
fn output_sign_ok(net: &Net, t: TransitionId) -> bool {
    let any_pos = net.inputs(t).any(|a| a.sign == Sign::Pos);
    let any_neg = net.inputs(t).any(|a| a.sign == Sign::Neg);
    net.outputs(t).any(|a| match (any_pos, any_neg) {
        (true, false) => a.sign == Sign::Pos,
        (false, true) => a.sign == Sign::Neg,
        _ => true,
    })
}

/// Fires a traditional transition. Positive tokens move along positive arcs
/// only, negative tokens along negative arcs only.
pub fn spn_fire(net: &Net, t: TransitionId, m: &DualMarking) -> Result<DualMarking, FireError> {
    let name = || net.transition_name(t).to_string();
    if !spn_enabled(net, t, m)? {
        return Err(FireError::NotEnabled(name()));
    }
    if net.class().is_signed() && !output_sign_ok(net, t) {
        return Err(FireError::OutputSignCondition(name()));
    }
    let mut next = m.clone();
    for a in net.arcs_of(t) {
        let counts = match a.sign {
            Sign::Pos => next.pos_mut(),
            Sign::Neg => next.neg_mut(),
        };
        let c = &mut counts[a.place.0];
        match a.direction {
            Direction::Input => *c -= a.weight,
            Direction::Output => *c += a.weight,
        }
    }
    if !next.respects(net.capacity()) {
        return Err(FireError::CapacityExceeded(name()));
    }
    Ok(next)
}

/// Zero or one outcome for a traditional transition.
pub(crate) fn outcome(net: &Net, t: TransitionId, m: &DualMarking) -> Result<Vec<Outcome>, FireError> {
    match spn_fire(net, t, m) {
        Ok(marking) => Ok(vec![Outcome { transition: t, index: 0, marking, choice: Choice::None }]),
        Err(FireError::NotEnabled(_) | FireError::OutputSignCondition(_) | FireError::CapacityExceeded(_)) => {
            Ok(Vec::new())
        }
        Err(e) => Err(e),
    }
}

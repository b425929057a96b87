use super::{check_len, check_transition, Choice, FireError, Outcome};
use crate::marking::{DualMarking, Marking};
use crate::net::{Net, NetClass, PlaceId, TransitionId, TransitionKind};

// A guard atom holds when its place has exactly one token.
fn marked(m: &Marking, p: PlaceId) -> bool {
    m.get(p) == 1
}

/// Outcomes of `t` in a logic Petri net.
///
/// * traditional: ordinary place/transition firing;
/// * logic input: fires when its guard holds, drains every marked input
///   and marks every output;
/// * logic output: needs all inputs marked; every output subset `S` for
///   which the guard holds after adding one token to each place of `S`
///   gives one outcome.
///
/// Outcomes that break the net's capacity are dropped.
pub fn lpn_outcomes(net: &Net, t: TransitionId, m: &Marking) -> Result<Vec<Outcome>, FireError> {
    if net.class() != NetClass::Lpn {
        return Err(FireError::WrongClass { engine: "logic", class: net.class() });
    }
    check_transition(net, t)?;
    check_len(net, m.len())?;
    let tr = &net.transitions()[t.0];
    let guard = || tr.kind.guard().ok_or_else(|| FireError::MissingGuard(tr.name.clone()));
    let capacity = net.capacity();
    let admit = |next: &Marking| next.0.iter().all(|&c| capacity.admits(c));
    let single = |next: Marking| Outcome {
        transition: t,
        index: 0,
        marking: DualMarking::from_plain(&next),
        choice: Choice::None,
    };

    match &tr.kind {
        TransitionKind::Traditional => {
            if !net.inputs(t).all(|a| m.get(a.place) >= a.weight) {
                return Ok(Vec::new());
            }
            let mut next = m.clone();
            for a in net.inputs(t) {
                next.0[a.place.0] -= a.weight;
            }
            for a in net.outputs(t) {
                next.0[a.place.0] += a.weight;
            }
            Ok(if admit(&next) { vec![single(next)] } else { Vec::new() })
        }
        TransitionKind::LogicInput(_) => {
            if !guard()?.eval(&|p| marked(m, *p)) {
                return Ok(Vec::new());
            }
            let mut next = m.clone();
            for p in net.preset(t) {
                if marked(m, p) {
                    next.0[p.0] -= 1;
                }
            }
            for p in net.postset(t) {
                next.0[p.0] += 1;
            }
            Ok(if admit(&next) { vec![single(next)] } else { Vec::new() })
        }
        TransitionKind::LogicOutput(_) => {
            let guard = guard()?;
            let preset = net.preset(t);
            if !preset.iter().all(|&p| marked(m, p)) {
                return Ok(Vec::new());
            }
            let mut base = m.clone();
            for p in &preset {
                base.0[p.0] -= 1;
            }
            let postset = net.postset(t);
            let mut out = Vec::new();
            for mask in 0u64..(1u64 << postset.len()) {
                let chosen: Vec<PlaceId> =
                    postset.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
                let mut next = base.clone();
                for p in &chosen {
                    next.0[p.0] += 1;
                }
                if admit(&next) && guard.eval(&|p| marked(&next, *p)) {
                    out.push(Outcome {
                        transition: t,
                        index: out.len(),
                        marking: DualMarking::from_plain(&next),
                        choice: Choice::Subset(chosen),
                    });
                }
            }
            Ok(out)
        }
    }
}

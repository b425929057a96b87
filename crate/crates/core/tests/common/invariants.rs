//! Invariant checks over one net and marking. Each returns a description of
//! the first violation found.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use signet::firing::outcomes;
use signet::io::{parse_document, render_document};
use signet::net::Direction;
use signet::state_space::positive_lts;
use signet::{
    explore, positive_projection, validate_net, Capacity, DualMarking, Net, NetClass, PlaceId, Sign, TransitionKind,
};

type Check = Result<(), String>;

fn fail(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Traditional transitions move positive tokens only along positive arcs and
/// negative tokens only along negative arcs.
pub fn sign_segregation(net: &Net, m: &DualMarking) -> Check {
    for t in net.transition_ids() {
        if net.transitions()[t.0].kind != TransitionKind::Traditional {
            continue;
        }
        for o in outcomes(net, t, m).map_err(|e| e.to_string())? {
            for p in net.place_ids() {
                let w = |d, s| net.weight(p, t, d, s) as i64;
                let dpos = o.marking.pos_at(p) as i64 - m.pos_at(p) as i64;
                let dneg = o.marking.neg_at(p) as i64 - m.neg_at(p) as i64;
                fail(dpos == w(Direction::Output, Sign::Pos) - w(Direction::Input, Sign::Pos), || {
                    format!("{} moved positive tokens at {p} off its positive arcs", net.transition_name(t))
                })?;
                fail(dneg == w(Direction::Output, Sign::Neg) - w(Direction::Input, Sign::Neg), || {
                    format!("{} moved negative tokens at {p} off its negative arcs", net.transition_name(t))
                })?;
            }
        }
    }
    Ok(())
}

/// Places not connected to a transition keep their tokens when it fires.
pub fn frame_rule(net: &Net, m: &DualMarking) -> Check {
    for t in net.transition_ids() {
        let connected: Vec<PlaceId> = net.arcs_of(t).map(|a| a.place).collect();
        for o in outcomes(net, t, m).map_err(|e| e.to_string())? {
            for p in net.place_ids().filter(|p| !connected.contains(p)) {
                fail(o.marking.pos_at(p) == m.pos_at(p) && o.marking.neg_at(p) == m.neg_at(p), || {
                    format!("{} changed unconnected place {p}", net.transition_name(t))
                })?;
            }
        }
    }
    Ok(())
}

/// From a marking within capacity 1, every successor stays within it, and
/// nets without negative tokens never gain any.
pub fn capacity_preserved(net: &Net, m: &DualMarking) -> Check {
    if net.capacity() != Capacity::One || !m.respects(Capacity::One) {
        return Ok(());
    }
    for t in net.transition_ids() {
        for o in outcomes(net, t, m).map_err(|e| e.to_string())? {
            fail(o.marking.respects(Capacity::One), || {
                format!("{} produced {} over capacity 1", net.transition_name(t), o.marking)
            })?;
            fail(net.class().is_signed() || o.marking.is_plain(), || {
                format!("{} produced negative tokens in a {} net", net.transition_name(t), net.class())
            })?;
        }
    }
    Ok(())
}

/// A logic input transition of an LPN leaves each of its pure input places
/// empty.
pub fn lpn_input_drain(net: &Net, m: &DualMarking) -> Check {
    if net.class() != NetClass::Lpn {
        return Ok(());
    }
    for t in net.transition_ids() {
        if !matches!(net.transitions()[t.0].kind, TransitionKind::LogicInput(_)) {
            continue;
        }
        let postset = net.postset(t);
        for o in outcomes(net, t, m).map_err(|e| e.to_string())? {
            for p in net.preset(t).into_iter().filter(|p| !postset.contains(p)) {
                fail(o.marking.pos_at(p) == 0, || format!("{} left a token on input {p}", net.transition_name(t)))?;
            }
        }
    }
    Ok(())
}

/// Serializing and reading back gives the same net and marking, and the
/// text is stable.
pub fn round_trip(net: &Net, m: &DualMarking) -> Check {
    let text = render_document(net, Some(m));
    fail(text == render_document(net, Some(m)), || "rendering is not deterministic".into())?;
    let (back, marking) = parse_document(&text).map_err(|e| format!("re-read failed: {e}"))?;
    fail(&back == net, || format!("net changed across a round trip:\n{text}"))?;
    fail(marking.as_ref() == Some(m), || format!("marking changed across a round trip: {marking:?}"))?;
    Ok(())
}

/// Projection is the identity on plain markings, and projecting the state
/// space of an unsigned net merges nothing.
pub fn projection_identity(net: &Net, m: &DualMarking) -> Check {
    if net.class().is_signed() {
        return Ok(());
    }
    let lts = explore(net, m, 4096).map_err(|e| e.to_string())?;
    for s in lts.states() {
        fail(&DualMarking::from_plain(&positive_projection(s)) == s, || format!("{s} is not plain"))?;
    }
    let (projected, collisions) = positive_lts(&lts);
    fail(collisions.is_empty(), || format!("{} collisions", collisions.len()))?;
    fail(projected.states() == lts.states() && projected.edges() == lts.edges(), || {
        "projected state space differs".into()
    })?;
    Ok(())
}

/// An LSPN with a single logic output transition: `inputs` positive inputs,
/// `singles` single-arc outputs and `k` double-arc outputs, marked so that
/// only the inputs hold tokens.
pub fn lspn_output_fan(rng: &mut ChaCha8Rng, inputs: usize, singles: usize, k: usize) -> (Net, DualMarking) {
    let n = inputs + singles + k;
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let mut b = Net::builder(NetClass::Lspn).places(names.clone()).logic_output("t", None);
    let mut pos = vec![0; n];
    for (slot, &p) in order.iter().enumerate() {
        b = if slot < inputs {
            pos[p] = 1;
            b.arc(&names[p], "t", Sign::Pos)
        } else if slot < inputs + singles {
            b.arc("t", &names[p], Sign::Pos)
        } else {
            b.double_arc("t", &names[p])
        };
    }
    let net = b.build().expect("fan net builds");
    assert!(validate_net(&net).is_empty(), "fan net is valid");
    (net, DualMarking::new(pos, vec![0; n]).unwrap())
}

/// With `k` double-arc outputs all empty, a logic output transition has
/// exactly 2^k - 1 outcomes (one when `k` is 0).
pub fn lspn_output_count(net: &Net, m: &DualMarking, k: usize) -> Check {
    let t = net.transition_id("t").ok_or("no transition t")?;
    let got = outcomes(net, t, m).map_err(|e| e.to_string())?.len();
    let want = if k == 0 { 1 } else { (1usize << k) - 1 };
    fail(got == want, || format!("{k} double-arc outputs gave {got} outcomes, expected {want}"))
}

/// Runs every single-net invariant.
pub fn all(net: &Net, m: &DualMarking) -> Check {
    sign_segregation(net, m)?;
    frame_rule(net, m)?;
    capacity_preserved(net, m)?;
    lpn_input_drain(net, m)?;
    round_trip(net, m)?;
    projection_identity(net, m)
}

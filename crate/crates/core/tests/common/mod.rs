//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

pub mod invariants;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signet::expr::Expr;
use signet::net::{Direction, TransitionKind};
use signet::{
    explore, positive_projection, validate_net, Capacity, DualMarking, Marking, Net, NetClass, PlaceId, Sign,
    TransitionId,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn shuffle<T>(rng: &mut ChaCha8Rng, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("p{i}")).collect()
}

/// Random expression tree over `vars`, at most `depth` operators deep.
pub fn random_expr(rng: &mut ChaCha8Rng, vars: &[String], depth: u32) -> Expr<String> {
    if depth == 0 || rng.random_bool(0.3) {
        return Expr::atom(vars[rng.random_range(0..vars.len())].clone());
    }
    match rng.random_range(0..3) {
        0 => Expr::not(random_expr(rng, vars, depth - 1)),
        1 => Expr::and(random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1)),
        _ => Expr::or(random_expr(rng, vars, depth - 1), random_expr(rng, vars, depth - 1)),
    }
}

/// Truth table of `e` over `vars`, bit `i` of the row index giving `vars[i]`.
pub fn truth_table(e: &Expr<String>, vars: &[String]) -> Vec<bool> {
    (0u32..1 << vars.len())
        .map(|mask| e.eval(&|a: &String| mask & (1 << vars.iter().position(|v| v == a).unwrap()) != 0))
        .collect()
}

fn random_class(rng: &mut ChaCha8Rng) -> NetClass {
    [NetClass::Pn, NetClass::Spn, NetClass::Lpn, NetClass::Lspn][rng.random_range(0..4)]
}

#[derive(Clone, Copy, PartialEq)]
enum Role {
    None,
    Input,
    Output,
    Both,
}

fn try_small_net(rng: &mut ChaCha8Rng, class: NetClass, max_places: usize) -> Option<(Net, DualMarking)> {
    let n = rng.random_range(1..=max_places);
    let place_names = names(n);
    let nt = rng.random_range(1..=3);
    let mut b = Net::builder(class).capacity(Capacity::One).places(place_names.clone());
    for t in 0..nt {
        let tn = format!("t{}", t + 1);
        let kind = if class.is_logic() { rng.random_range(0..3) } else { 0 };
        let roles: Vec<Role> = (0..n)
            .map(|_| match rng.random_range(0..10) {
                0..=3 => Role::None,
                4..=6 => Role::Input,
                7..=8 => Role::Output,
                _ if kind == 0 => Role::Both,
                _ => Role::None,
            })
            .collect();
        let ins: Vec<usize> = (0..n).filter(|&i| matches!(roles[i], Role::Input | Role::Both)).collect();
        let outs: Vec<usize> = (0..n).filter(|&i| matches!(roles[i], Role::Output | Role::Both)).collect();
        let guard_side = if kind == 2 { &outs } else { &ins };
        let guard = if class == NetClass::Lpn && kind != 0 {
            if guard_side.is_empty() {
                return None;
            }
            let vars: Vec<String> = guard_side.iter().map(|&i| place_names[i].clone()).collect();
            Some(random_expr(rng, &vars, 2).to_string())
        } else {
            None
        };
        b = match kind {
            0 => b.traditional(&tn),
            1 => b.logic_input(&tn, guard.as_deref()),
            _ => b.logic_output(&tn, guard.as_deref()),
        };
        let signed = class.is_signed();
        for &i in &ins {
            let p = &place_names[i];
            match (signed, kind) {
                (false, _) => b = b.arc(p, &tn, Sign::Pos),
                (true, 0) => {
                    b = match rng.random_range(0..5) {
                        0..=1 => b.arc(p, &tn, Sign::Pos),
                        2..=3 => b.arc(p, &tn, Sign::Neg),
                        _ => b.double_arc(p, &tn),
                    }
                }
                (true, 1) if rng.random_bool(0.5) => b = b.double_arc(p, &tn),
                (true, _) => b = b.arc(p, &tn, Sign::Pos),
            }
        }
        for &i in &outs {
            let p = &place_names[i];
            match (signed, kind) {
                (false, _) => b = b.arc(&tn, p, Sign::Pos),
                (true, 0) => {
                    b = match rng.random_range(0..5) {
                        0..=1 => b.arc(&tn, p, Sign::Pos),
                        2..=3 => b.arc(&tn, p, Sign::Neg),
                        _ => b.double_arc(&tn, p),
                    }
                }
                (true, 2) if rng.random_bool(0.5) => b = b.double_arc(&tn, p),
                (true, _) => b = b.arc(&tn, p, Sign::Pos),
            }
        }
    }
    let net = b.build().ok()?;
    if !validate_net(&net).is_empty() {
        return None;
    }
    let pos: Vec<u32> = (0..n).map(|_| rng.random_range(0..=1)).collect();
    let neg: Vec<u32> = (0..n).map(|_| if class.is_signed() { rng.random_range(0..=1) } else { 0 }).collect();
    Some((net, DualMarking::new(pos, neg).unwrap()))
}

/// A valid capacity-1 net of any class with at most `max_places` places, and
/// a random initial marking (plain for unsigned classes).
pub fn random_small_net(rng: &mut ChaCha8Rng, max_places: usize) -> (Net, DualMarking) {
    let class = random_class(rng);
    random_small_net_of(rng, class, max_places)
}

pub fn random_small_net_of(rng: &mut ChaCha8Rng, class: NetClass, max_places: usize) -> (Net, DualMarking) {
    loop {
        if let Some(found) = try_small_net(rng, class, max_places) {
            return found;
        }
    }
}

/// Like [`random_small_net`], but some transition is enabled initially.
pub fn random_live_net(rng: &mut ChaCha8Rng, max_places: usize) -> (Net, DualMarking) {
    loop {
        let (net, m0) = random_small_net(rng, max_places);
        if !signet::successors(&net, &m0).unwrap().is_empty() {
            return (net, m0);
        }
    }
}

/// Shape restrictions for generated AND-OR LPNs.
#[derive(Clone, Copy, Debug)]
pub struct CorpusShape {
    /// Places used as OR alternatives touch no other transition.
    pub exclusive_optional: bool,
    /// Every place on the guarded side appears in the guard.
    pub full_support: bool,
    /// Reject nets in which a logic output transition can be enabled while
    /// one of its output places is already marked.
    pub contact_free: bool,
}

pub const RESTRICTED: CorpusShape = CorpusShape { exclusive_optional: true, full_support: true, contact_free: true };
pub const UNRESTRICTED: CorpusShape =
    CorpusShape { exclusive_optional: false, full_support: false, contact_free: false };

/// An LPN with AND-OR guards: 3 to 6 places, 1 to 4 transitions of which 1
/// to 3 are logic transitions, capacity 1. `None` when the draw is unusable.
pub fn and_or_lpn(rng: &mut ChaCha8Rng, shape: CorpusShape) -> Option<(Net, Marking)> {
    let n = rng.random_range(3..=6);
    let nt = rng.random_range(1..=4);
    let nl = rng.random_range(1..=nt.min(3));
    let place_names = names(n);
    let mut b = Net::builder(NetClass::Lpn).places(place_names.clone());
    let mut optional_used: Vec<usize> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    for t in 0..nt {
        let logic = t < nl;
        let mut order: Vec<usize> = (0..n).collect();
        shuffle(rng, &mut order);
        let avail: Vec<usize> =
            order.into_iter().filter(|p| !(shape.exclusive_optional && optional_used.contains(p))).collect();
        if avail.len() < 2 {
            return None;
        }
        let ni = rng.random_range(1..=(avail.len() - 1).min(3));
        let no = rng.random_range(1..=(avail.len() - ni).min(3));
        let ins = &avail[..ni];
        let outs = &avail[ni..ni + no];
        let tn = format!("t{}", t + 1);
        if logic {
            let input_side = rng.random_bool(0.5);
            let side = if input_side { ins } else { outs };
            let support: Vec<usize> = if shape.full_support {
                side.to_vec()
            } else {
                side.iter().copied().filter(|_| rng.random_bool(0.8)).collect()
            };
            if support.is_empty() {
                return None;
            }
            let mut forced = Vec::new();
            let mut optional = Vec::new();
            for &p in &support {
                if (shape.exclusive_optional && touched.contains(&p)) || rng.random_bool(0.5) {
                    forced.push(p);
                } else {
                    optional.push(p);
                }
            }
            if optional.len() == 1 {
                forced.push(optional.pop().unwrap());
            }
            let mut parts: Vec<String> = forced.iter().map(|&p| place_names[p].clone()).collect();
            if !optional.is_empty() {
                let alts: Vec<String> = optional.iter().map(|&p| place_names[p].clone()).collect();
                parts.push(format!("({})", alts.join(" | ")));
            }
            let guard = parts.join(" & ");
            optional_used.extend(&optional);
            b = if input_side { b.logic_input(&tn, Some(&guard)) } else { b.logic_output(&tn, Some(&guard)) };
        } else {
            b = b.traditional(&tn);
        }
        touched.extend(ins);
        touched.extend(outs);
        for &p in ins {
            b = b.arc(&place_names[p], &tn, Sign::Pos);
        }
        for &p in outs {
            b = b.arc(&tn, &place_names[p], Sign::Pos);
        }
    }
    let net = b.build().ok()?;
    if !validate_net(&net).is_empty() {
        return None;
    }
    let m0 = Marking((0..n).map(|_| rng.random_range(0..=1)).collect());
    if shape.contact_free && !logic_outputs_contact_free(&net, &m0) {
        return None;
    }
    if !fires_logic(&net, &m0) {
        return None;
    }
    Some((net, m0))
}

/// Some reachable marking enables a logic transition.
pub fn fires_logic(lpn: &Net, m0: &Marking) -> bool {
    let lts = explore(lpn, &DualMarking::from_plain(m0), 1 << 16).unwrap();
    lts.edges().iter().any(|e| lpn.transitions()[e.transition.0].kind.is_logic())
}

/// No reachable marking enables a logic output transition while one of its
/// output places already holds a token.
pub fn logic_outputs_contact_free(lpn: &Net, m0: &Marking) -> bool {
    let lts = explore(lpn, &DualMarking::from_plain(m0), 1 << 16).unwrap();
    let outputs: Vec<TransitionId> = lpn
        .transition_ids()
        .filter(|&t| matches!(lpn.transitions()[t.0].kind, TransitionKind::LogicOutput(_)))
        .collect();
    lts.states().iter().all(|s| {
        let m = positive_projection(s);
        outputs
            .iter()
            .all(|&t| !(lpn.preset(t).iter().all(|&p| m.get(p) == 1) && lpn.postset(t).iter().any(|&p| m.get(p) > 0)))
    })
}

/// Single-step relation `m -> m2` under `t`, written as a predicate over the
/// pair rather than by constructing successors.
pub fn step_holds(net: &Net, t: TransitionId, m: &DualMarking, m2: &DualMarking) -> bool {
    let cap = |x: u32| net.capacity().admits(x);
    if !(0..m2.len()).all(|i| cap(m2.pos()[i]) && cap(m2.neg()[i])) {
        return false;
    }
    let w = |p: usize, d: Direction, s: Sign| net.weight(PlaceId(p), t, d, s);
    let n = net.place_count();
    let touched = |p: usize| {
        [Direction::Input, Direction::Output].into_iter().any(|d| w(p, d, Sign::Pos) > 0 || w(p, d, Sign::Neg) > 0)
    };
    // untouched places never change
    for p in 0..n {
        if !touched(p) && (m.pos()[p] != m2.pos()[p] || m.neg()[p] != m2.neg()[p]) {
            return false;
        }
    }
    let kind = &net.transitions()[t.0].kind;
    match (net.class(), kind) {
        (NetClass::Lpn, TransitionKind::Traditional)
        | (NetClass::Pn, _)
        | (NetClass::Spn, _)
        | (NetClass::Lspn, TransitionKind::Traditional) => {
            let mut signs_in = BTreeSet::new();
            for p in 0..n {
                for s in [Sign::Pos, Sign::Neg] {
                    let need = w(p, Direction::Input, s);
                    let have = if s == Sign::Pos { m.pos()[p] } else { m.neg()[p] };
                    if need > 0 {
                        signs_in.insert(s);
                    }
                    if have < need {
                        return false;
                    }
                }
            }
            // some output place must exist, carrying the sign of uniform inputs
            if net.class().is_signed() {
                let wanted: Vec<Sign> =
                    if signs_in.len() == 1 { signs_in.into_iter().collect() } else { vec![Sign::Pos, Sign::Neg] };
                if !(0..n).any(|p| wanted.iter().any(|&s| w(p, Direction::Output, s) > 0)) {
                    return false;
                }
            }
            (0..n).all(|p| {
                m2.pos()[p] + w(p, Direction::Input, Sign::Pos) == m.pos()[p] + w(p, Direction::Output, Sign::Pos)
                    && m2.neg()[p] + w(p, Direction::Input, Sign::Neg)
                        == m.neg()[p] + w(p, Direction::Output, Sign::Neg)
            })
        }
        (NetClass::Lpn, TransitionKind::LogicInput(Some(g))) => {
            if !m.is_plain() || !m2.is_plain() || !g.eval(&|p: &PlaceId| m.pos()[p.0] == 1) {
                return false;
            }
            (0..n).all(|p| {
                let drained = u32::from(w(p, Direction::Input, Sign::Pos) > 0 && m.pos()[p] == 1);
                let added = u32::from(w(p, Direction::Output, Sign::Pos) > 0);
                m2.pos()[p] + drained == m.pos()[p] + added
            })
        }
        (NetClass::Lpn, TransitionKind::LogicOutput(Some(g))) => {
            if !m.is_plain() || !m2.is_plain() {
                return false;
            }
            for p in 0..n {
                let input = w(p, Direction::Input, Sign::Pos) > 0;
                let output = w(p, Direction::Output, Sign::Pos) > 0;
                if input && m.pos()[p] != 1 {
                    return false;
                }
                let base = m.pos()[p] - u32::from(input);
                let ok = m2.pos()[p] == base || (output && m2.pos()[p] == base + 1);
                if !ok {
                    return false;
                }
            }
            g.eval(&|p: &PlaceId| m2.pos()[p.0] == 1)
        }
        (NetClass::Lspn, TransitionKind::LogicInput(_)) => {
            let single: Vec<usize> = (0..n)
                .filter(|&p| w(p, Direction::Input, Sign::Pos) > 0 && w(p, Direction::Input, Sign::Neg) == 0)
                .collect();
            let double: Vec<usize> = (0..n)
                .filter(|&p| w(p, Direction::Input, Sign::Pos) > 0 && w(p, Direction::Input, Sign::Neg) > 0)
                .collect();
            if !single.iter().all(|&p| m.pos()[p] == 1) {
                return false;
            }
            if !double.is_empty()
                && !(double.iter().any(|&p| m.pos()[p] == 1)
                    && double.iter().all(|&p| m.pos()[p] == 1 || m.neg()[p] == 1))
            {
                return false;
            }
            (0..n).all(|p| {
                let added = u32::from(w(p, Direction::Output, Sign::Pos) > 0 || w(p, Direction::Output, Sign::Neg) > 0);
                let (dp, dn) = if single.contains(&p) {
                    (1, 0)
                } else if double.contains(&p) {
                    if m.pos()[p] == 1 {
                        (1, 0)
                    } else {
                        (0, 1)
                    }
                } else {
                    (0, 0)
                };
                m2.pos()[p] + dp == m.pos()[p] + added && m2.neg()[p] + dn == m.neg()[p]
            })
        }
        (NetClass::Lspn, TransitionKind::LogicOutput(_)) => {
            let mut optional = Vec::new();
            for p in 0..n {
                let input = w(p, Direction::Input, Sign::Pos) > 0;
                let pos_out = w(p, Direction::Output, Sign::Pos) > 0;
                let neg_out = w(p, Direction::Output, Sign::Neg) > 0;
                if input && m.pos()[p] != 1 {
                    return false;
                }
                let base = m.pos()[p] - u32::from(input) + u32::from(pos_out && !neg_out);
                let (got_pos, got_neg, neg) = (m2.pos()[p], m2.neg()[p], m.neg()[p]);
                if pos_out && neg_out {
                    let positive = got_pos == base + 1 && got_neg == neg;
                    let negative = got_pos == base && got_neg == neg.max(1);
                    if !(positive || negative) {
                        return false;
                    }
                    optional.push(p);
                } else if got_pos != base || got_neg != neg {
                    return false;
                }
            }
            optional.is_empty() || optional.iter().any(|&p| m2.pos()[p] == 1)
        }
        _ => false,
    }
}

/// Every dual marking with entries in {0, 1}, in a fixed order.
pub fn all_unit_markings(n: usize) -> Vec<DualMarking> {
    (0u32..1 << (2 * n))
        .map(|bits| {
            let pos = (0..n).map(|i| (bits >> i) & 1).collect();
            let neg = (0..n).map(|i| (bits >> (n + i)) & 1).collect();
            DualMarking::new(pos, neg).unwrap()
        })
        .collect()
}

/// Reachable set of a capacity-1 net: repeatedly scan all 4^|P| candidate
/// markings for one that some reached marking steps to, until nothing new
/// turns up.
pub fn brute_force_reachable(net: &Net, m0: &DualMarking) -> BTreeSet<DualMarking> {
    let candidates = all_unit_markings(net.place_count());
    let mut reached: BTreeSet<DualMarking> = BTreeSet::from([m0.clone()]);
    loop {
        let mut grew = false;
        for c in &candidates {
            if reached.contains(c) {
                continue;
            }
            let hit = reached.iter().any(|m| net.transition_ids().any(|t| step_holds(net, t, m, c)));
            if hit {
                reached.insert(c.clone());
                grew = true;
            }
        }
        if !grew {
            return reached;
        }
    }
}

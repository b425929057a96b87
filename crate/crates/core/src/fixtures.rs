//! Small reference nets with their initial markings.
//!
//! The signed nets reproduce the classic two-transition SPN examples; the
//! logic nets are the one-transition input/output examples in both their LPN
//! form and their LSPN translation.

use crate::marking::DualMarking;
use crate::net::{Net, NetClass, Sign};

fn dual(s: &str) -> DualMarking {
    s.parse().expect("fixture marking")
}

/// SPN where both transitions are enabled initially; `t2` consumes a
/// negative token and `t1` a positive one.
pub fn spn_two_transitions() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Spn)
        .places(["p1", "p2", "p3", "p4"])
        .traditional("t1")
        .traditional("t2")
        .arc("p1", "t1", Sign::Pos)
        .arc("t1", "p2", Sign::Pos)
        .arc("t1", "p3", Sign::Neg)
        .arc("p1", "t2", Sign::Neg)
        .arc("t2", "p2", Sign::Neg)
        .arc("t2", "p3", Sign::Pos)
        .arc("t2", "p4", Sign::Neg)
        .build()
        .expect("fixture net");
    (net, dual("((1,0,1,0),(1,0,0,0))"))
}

/// SPN where only the positive-input transition `t1` can fire.
pub fn spn_blocked_negative() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Spn)
        .places(["p1", "p2", "p3", "p4"])
        .traditional("t1")
        .traditional("t2")
        .arc("p1", "t1", Sign::Pos)
        .arc("t1", "p3", Sign::Pos)
        .arc("t1", "p4", Sign::Neg)
        .arc("p1", "t2", Sign::Neg)
        .arc("t2", "p2", Sign::Neg)
        .build()
        .expect("fixture net");
    (net, dual("((1,0,0,0),(0,0,0,0))"))
}

/// LSPN logic input transition: `p3` mandatory, `p1`/`p2` optional.
pub fn logic_input_lspn() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Lspn)
        .places(["p1", "p2", "p3", "p4"])
        .logic_input("t", Some("p3 & (p1 | p2)"))
        .double_arc("p1", "t")
        .double_arc("p2", "t")
        .arc("p3", "t", Sign::Pos)
        .arc("t", "p4", Sign::Pos)
        .build()
        .expect("fixture net");
    (net, dual("((1,0,1,0),(0,1,0,0))"))
}

/// LSPN logic output transition: `p1` always marked, `p2`/`p3` signed.
pub fn logic_output_lspn() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Lspn)
        .places(["p1", "p2", "p3", "p4"])
        .logic_output("t", Some("p1 & (p2 | p3)"))
        .arc("p4", "t", Sign::Pos)
        .arc("t", "p1", Sign::Pos)
        .double_arc("t", "p2")
        .double_arc("t", "p3")
        .build()
        .expect("fixture net");
    (net, dual("((0,0,0,1),(0,0,0,0))"))
}

/// LPN counterpart of [`logic_input_lspn`].
pub fn logic_input_lpn() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Lpn)
        .places(["p1", "p2", "p3", "p4"])
        .logic_input("t", Some("p3 & (p1 | p2)"))
        .arc("p1", "t", Sign::Pos)
        .arc("p2", "t", Sign::Pos)
        .arc("p3", "t", Sign::Pos)
        .arc("t", "p4", Sign::Pos)
        .build()
        .expect("fixture net");
    (net, dual("(1,0,1,0)"))
}

/// LPN counterpart of [`logic_output_lspn`].
pub fn logic_output_lpn() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Lpn)
        .places(["p1", "p2", "p3", "p4"])
        .logic_output("t", Some("p1 & (p2 | p3)"))
        .arc("p4", "t", Sign::Pos)
        .arc("t", "p1", Sign::Pos)
        .arc("t", "p2", Sign::Pos)
        .arc("t", "p3", Sign::Pos)
        .build()
        .expect("fixture net");
    (net, dual("(0,0,0,1)"))
}

/// LPN whose guard mixes polarities of `p2` across terms, so it has no
/// AND-OR form and its translation is not behaviour preserving.
pub fn mixed_guard_lpn() -> (Net, DualMarking) {
    let net = Net::builder(NetClass::Lpn)
        .places(["p1", "p2", "p3", "p4"])
        .logic_input("t", Some("(p1 & p2) | (p3 & !p2)"))
        .arc("p1", "t", Sign::Pos)
        .arc("p2", "t", Sign::Pos)
        .arc("p3", "t", Sign::Pos)
        .arc("t", "p4", Sign::Pos)
        .build()
        .expect("fixture net");
    (net, dual("(1,0,0,0)"))
}

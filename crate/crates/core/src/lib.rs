//! Signed Petri nets, logic Petri nets and logic signed Petri nets.
//!
//! The crate provides exact firing semantics for the four net classes, a
//! structural translation from logic Petri nets (LPN) to logic signed Petri
//! nets (LSPN), and a reachability-based checker that decides whether an LPN
//! and an LSPN are equivalent under positive projection.

pub mod expr;
pub mod firing;
pub mod fixtures;
pub mod io;
pub mod marking;
pub mod net;
pub mod state_space;
pub mod translate;
pub mod validate;

pub use expr::{Dnf, Expr, LogicExpr};
pub use firing::{successors, FireError, FiringSequence, Outcome};
pub use marking::{positive_projection, DualMarking, Marking};
pub use net::{Capacity, Net, NetClass, PlaceId, Sign, TransitionId, TransitionKind};
pub use state_space::{check_equivalence, explore, EquivalenceVerdict, Lts, Verdict, DEFAULT_MAX_STATES};
pub use translate::{translate_lpn, Translation};
pub use validate::{arc_set, validate_net, Violation};

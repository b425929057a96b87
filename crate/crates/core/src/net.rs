//! Net structure shared by all four net classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse_expr, LogicExpr, ParseError};

/// Index of a place in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(pub usize);

/// Index of a transition in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub usize);

impl fmt::Display for PlaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NetClass {
    #[serde(rename = "PN")]
    Pn,
    #[serde(rename = "SPN")]
    Spn,
    #[serde(rename = "LPN")]
    Lpn,
    #[serde(rename = "LSPN")]
    Lspn,
}

impl NetClass {
    pub fn is_signed(self) -> bool {
        matches!(self, NetClass::Spn | NetClass::Lspn)
    }

    pub fn is_logic(self) -> bool {
        matches!(self, NetClass::Lpn | NetClass::Lspn)
    }

    /// Logic nets hold at most one token per species; plain nets are unbounded.
    pub fn default_capacity(self) -> Capacity {
        if self.is_logic() {
            Capacity::One
        } else {
            Capacity::Unbounded
        }
    }
}

impl fmt::Display for NetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NetClass::Pn => "PN",
            NetClass::Spn => "SPN",
            NetClass::Lpn => "LPN",
            NetClass::Lspn => "LSPN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Capacity {
    Unbounded,
    One,
}

impl Capacity {
    pub fn admits(self, count: u32) -> bool {
        match self {
            Capacity::Unbounded => true,
            Capacity::One => count <= 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Sign::Pos),
            "-" => Ok(Sign::Neg),
            other => Err(format!("unknown sign '{other}'")),
        }
    }
}

/// `Input` arcs run place to transition, `Output` arcs transition to place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Input,
    Output,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransitionKind {
    Traditional,
    /// Guarded by an expression over its input places. LSPN transitions may
    /// omit the guard since their enabling is read off the arc signs.
    LogicInput(Option<LogicExpr>),
    /// Constrains which output places receive tokens.
    LogicOutput(Option<LogicExpr>),
}

impl TransitionKind {
    pub fn guard(&self) -> Option<&LogicExpr> {
        match self {
            TransitionKind::Traditional => None,
            TransitionKind::LogicInput(g) | TransitionKind::LogicOutput(g) => g.as_ref(),
        }
    }

    pub fn is_logic(&self) -> bool {
        !matches!(self, TransitionKind::Traditional)
    }

    pub fn label(&self) -> &'static str {
        match self {
            TransitionKind::Traditional => "traditional",
            TransitionKind::LogicInput(_) => "logic-input",
            TransitionKind::LogicOutput(_) => "logic-output",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub kind: TransitionKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub place: PlaceId,
    pub transition: TransitionId,
    pub direction: Direction,
    pub sign: Sign,
    pub weight: u32,
}

/// A place/transition net of one of the four classes.
///
/// Places and transitions keep their declaration order; every marking vector
/// is laid out in place order. A `Net` is never mutated after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    class: NetClass,
    capacity: Capacity,
    places: Vec<String>,
    transitions: Vec<Transition>,
    arcs: Vec<Arc>,
}

impl Net {
    /// Assembles a net from resolved parts. No structural checks are made
    /// here; see [`crate::validate::validate_net`].
    pub fn from_parts(
        class: NetClass,
        capacity: Capacity,
        places: Vec<String>,
        transitions: Vec<Transition>,
        arcs: Vec<Arc>,
    ) -> Self {
        Net { class, capacity, places, transitions, arcs }
    }

    pub fn builder(class: NetClass) -> NetBuilder {
        NetBuilder::new(class)
    }

    pub fn class(&self) -> NetClass {
        self.class
    }

    pub fn capacity(&self) -> Capacity {
        self.capacity
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn place_count(&self) -> usize {
        self.places.len()
    }

    pub fn place_ids(&self) -> impl Iterator<Item = PlaceId> {
        (0..self.places.len()).map(PlaceId)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn place_id(&self, name: &str) -> Option<PlaceId> {
        self.places.iter().position(|n| n == name).map(PlaceId)
    }

    pub fn transition_id(&self, name: &str) -> Option<TransitionId> {
        self.transitions.iter().position(|t| t.name == name).map(TransitionId)
    }

    pub fn transition(&self, t: TransitionId) -> Option<&Transition> {
        self.transitions.get(t.0)
    }

    pub fn transition_name(&self, t: TransitionId) -> &str {
        &self.transitions[t.0].name
    }

    pub fn arcs_of(&self, t: TransitionId) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(move |a| a.transition == t)
    }

    pub fn inputs(&self, t: TransitionId) -> impl Iterator<Item = &Arc> {
        self.arcs_of(t).filter(|a| a.direction == Direction::Input)
    }

    pub fn outputs(&self, t: TransitionId) -> impl Iterator<Item = &Arc> {
        self.arcs_of(t).filter(|a| a.direction == Direction::Output)
    }

    /// Distinct input places of `t`, in declaration order.
    pub fn preset(&self, t: TransitionId) -> Vec<PlaceId> {
        Self::distinct(self.inputs(t))
    }

    /// Distinct output places of `t`, in declaration order.
    pub fn postset(&self, t: TransitionId) -> Vec<PlaceId> {
        Self::distinct(self.outputs(t))
    }

    fn distinct<'a>(arcs: impl Iterator<Item = &'a Arc>) -> Vec<PlaceId> {
        let mut v: Vec<PlaceId> = arcs.map(|a| a.place).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Weight of the arc with this shape, or 0 when absent.
    pub fn weight(&self, p: PlaceId, t: TransitionId, direction: Direction, sign: Sign) -> u32 {
        self.arcs
            .iter()
            .find(|a| a.place == p && a.transition == t && a.direction == direction && a.sign == sign)
            .map_or(0, |a| a.weight)
    }

    /// Renders a bound guard with place names.
    pub fn guard_text(&self, guard: &LogicExpr) -> String {
        guard.map_atoms(&|p| self.place_name(*p).to_string()).to_string()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("arc {from} -> {to} does not connect a declared place with a declared transition")]
    UnresolvedArc { from: String, to: String },
    #[error("guard of transition {transition}: {source}")]
    GuardSyntax {
        transition: String,
        #[source]
        source: ParseError,
    },
    #[error("guard of transition {transition} names unknown place {place}")]
    UnknownGuardPlace { transition: String, place: String },
}

enum KindSpec {
    Traditional,
    LogicInput(Option<String>),
    LogicOutput(Option<String>),
}

/// Builds a [`Net`] from names, resolving arcs and parsing guard text.
pub struct NetBuilder {
    class: NetClass,
    capacity: Option<Capacity>,
    places: Vec<String>,
    transitions: Vec<(String, KindSpec)>,
    arcs: Vec<(String, String, Sign, u32)>,
}

impl NetBuilder {
    pub fn new(class: NetClass) -> Self {
        NetBuilder { class, capacity: None, places: Vec::new(), transitions: Vec::new(), arcs: Vec::new() }
    }

    pub fn capacity(mut self, capacity: Capacity) -> Self {
        self.capacity = Some(capacity);
        self
    }

    pub fn place(mut self, name: impl Into<String>) -> Self {
        self.places.push(name.into());
        self
    }

    pub fn places<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.places.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn traditional(mut self, name: impl Into<String>) -> Self {
        self.transitions.push((name.into(), KindSpec::Traditional));
        self
    }

    pub fn logic_input(mut self, name: impl Into<String>, guard: Option<&str>) -> Self {
        self.transitions.push((name.into(), KindSpec::LogicInput(guard.map(str::to_string))));
        self
    }

    pub fn logic_output(mut self, name: impl Into<String>, guard: Option<&str>) -> Self {
        self.transitions.push((name.into(), KindSpec::LogicOutput(guard.map(str::to_string))));
        self
    }

    /// Adds a weight-1 arc. Direction follows from which endpoint is a place.
    pub fn arc(self, from: &str, to: &str, sign: Sign) -> Self {
        self.weighted_arc(from, to, sign, 1)
    }

    /// Adds positive and negative arcs between the same endpoints.
    pub fn double_arc(self, from: &str, to: &str) -> Self {
        self.arc(from, to, Sign::Pos).arc(from, to, Sign::Neg)
    }

    pub fn weighted_arc(mut self, from: &str, to: &str, sign: Sign, weight: u32) -> Self {
        self.arcs.push((from.to_string(), to.to_string(), sign, weight));
        self
    }

    pub fn build(self) -> Result<Net, BuildError> {
        let place_id = |n: &str| self.places.iter().position(|p| p == n).map(PlaceId);
        let trans_id = |n: &str| self.transitions.iter().position(|(t, _)| t == n).map(TransitionId);

        let mut arcs = Vec::with_capacity(self.arcs.len());
        for (from, to, sign, weight) in &self.arcs {
            let (place, transition, direction) = match (place_id(from), trans_id(to)) {
                (Some(p), Some(t)) => (p, t, Direction::Input),
                _ => match (trans_id(from), place_id(to)) {
                    (Some(t), Some(p)) => (p, t, Direction::Output),
                    _ => return Err(BuildError::UnresolvedArc { from: from.clone(), to: to.clone() }),
                },
            };
            arcs.push(Arc { place, transition, direction, sign: *sign, weight: *weight });
        }

        let bind = |transition: &str, text: &Option<String>| -> Result<Option<LogicExpr>, BuildError> {
            let Some(text) = text else { return Ok(None) };
            let parsed = parse_expr(text)
                .map_err(|source| BuildError::GuardSyntax { transition: transition.to_string(), source })?;
            parsed
                .try_map_atoms(&|name: &String| {
                    place_id(name).ok_or_else(|| BuildError::UnknownGuardPlace {
                        transition: transition.to_string(),
                        place: name.clone(),
                    })
                })
                .map(Some)
        };

        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (name, spec) in &self.transitions {
            let kind = match spec {
                KindSpec::Traditional => TransitionKind::Traditional,
                KindSpec::LogicInput(g) => TransitionKind::LogicInput(bind(name, g)?),
                KindSpec::LogicOutput(g) => TransitionKind::LogicOutput(bind(name, g)?),
            };
            transitions.push(Transition { name: name.clone(), kind });
        }

        Ok(Net {
            class: self.class,
            capacity: self.capacity.unwrap_or_else(|| self.class.default_capacity()),
            places: self.places,
            transitions,
            arcs,
        })
    }
}

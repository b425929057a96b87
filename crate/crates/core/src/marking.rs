//! Plain and dual (positive/negative) markings.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::net::{Capacity, PlaceId};

/// Token counts per place, in place declaration order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marking(pub Vec<u32>);

/// Positive and negative token counts per place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualMarking {
    pos: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkingError {
    #[error("positive and negative vectors differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("cannot parse marking '{0}'")]
    Syntax(String),
}

impl Marking {
    pub fn zeros(n: usize) -> Self {
        Marking(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, p: PlaceId) -> u32 {
        self.0[p.0]
    }
}

impl DualMarking {
    pub fn new(pos: Vec<u32>, neg: Vec<u32>) -> Result<Self, MarkingError> {
        if pos.len() != neg.len() {
            return Err(MarkingError::LengthMismatch(pos.len(), neg.len()));
        }
        Ok(DualMarking { pos, neg })
    }

    pub fn zeros(n: usize) -> Self {
        DualMarking { pos: vec![0; n], neg: vec![0; n] }
    }

    /// Embeds a plain marking as `(m, 0)`.
    pub fn from_plain(m: &Marking) -> Self {
        DualMarking { pos: m.0.clone(), neg: vec![0; m.0.len()] }
    }

    pub fn len(&self) -> usize {
        self.pos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty()
    }

    pub fn pos(&self) -> &[u32] {
        &self.pos
    }

    pub fn neg(&self) -> &[u32] {
        &self.neg
    }

    pub fn pos_at(&self, p: PlaceId) -> u32 {
        self.pos[p.0]
    }

    pub fn neg_at(&self, p: PlaceId) -> u32 {
        self.neg[p.0]
    }

    pub(crate) fn pos_mut(&mut self) -> &mut [u32] {
        &mut self.pos
    }

    pub(crate) fn neg_mut(&mut self) -> &mut [u32] {
        &mut self.neg
    }

    /// True when no negative tokens are present.
    pub fn is_plain(&self) -> bool {
        self.neg.iter().all(|&c| c == 0)
    }

    pub fn respects(&self, capacity: Capacity) -> bool {
        self.pos.iter().chain(&self.neg).all(|&c| capacity.admits(c))
    }
}

/// Drops the negative half of a dual marking.
pub fn positive_projection(m: &DualMarking) -> Marking {
    Marking(m.pos.clone())
}

fn write_vec(f: &mut fmt::Formatter<'_>, v: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_vec(f, &self.0)
    }
}

impl fmt::Display for DualMarking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        write_vec(f, &self.pos)?;
        f.write_str(",")?;
        write_vec(f, &self.neg)?;
        f.write_str(")")
    }
}

fn parse_counts(s: &str) -> Option<Vec<u32>> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(s);
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|c| c.trim().parse().ok()).collect()
}

impl FromStr for Marking {
    type Err = MarkingError;

    /// Accepts `(1,0,1)` or `1,0,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_counts(s).map(Marking).ok_or_else(|| MarkingError::Syntax(s.to_string()))
    }
}

impl FromStr for DualMarking {
    type Err = MarkingError;

    /// Accepts `((1,0),(0,1))`, or a plain marking which gets no negative tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = compact.strip_prefix("((").and_then(|r| r.strip_suffix("))")) {
            let (pos, neg) = inner.split_once("),(").ok_or_else(|| MarkingError::Syntax(s.to_string()))?;
            let pos = parse_counts(pos).ok_or_else(|| MarkingError::Syntax(s.to_string()))?;
            let neg = parse_counts(neg).ok_or_else(|| MarkingError::Syntax(s.to_string()))?;
            return DualMarking::new(pos, neg);
        }
        Ok(DualMarking::from_plain(&compact.parse()?))
    }
}

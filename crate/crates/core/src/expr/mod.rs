//! Boolean guard expressions over place identifiers.
//!
//! Guards are parsed into an [`Expr`] tree, normalized into a canonical
//! [`Dnf`], and classified per place into a [`PolarityProfile`]. Everything
//! that needs semantic (rather than syntactic) reasoning goes through small
//! truth tables in [`truth`].

mod dnf;
mod parse;
pub mod truth;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use dnf::{minterm_expansion, polarity_profile, to_dnf, Dnf, Literal, Polarity, PolarityProfile};
pub use parse::{parse_expr, ParseError};
pub use truth::{and_or_form, support, AndOrForm, MAX_TRUTH_TABLE_VARS};

use crate::net::PlaceId;

/// A guard bound to the places of a net.
pub type LogicExpr = Expr<PlaceId>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr<A> {
    Atom(A),
    Not(Box<Expr<A>>),
    And(Box<Expr<A>>, Box<Expr<A>>),
    Or(Box<Expr<A>>, Box<Expr<A>>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("expression is constant false; no DNF term survives")]
    Degenerate,
    #[error("expression has {0} variables; truth tables are limited to {MAX_TRUTH_TABLE_VARS}")]
    TooManyVariables(usize),
}

impl<A> Expr<A> {
    pub fn atom(a: A) -> Self {
        Expr::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr<A>) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn and(l: Expr<A>, r: Expr<A>) -> Self {
        Expr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Expr<A>, r: Expr<A>) -> Self {
        Expr::Or(Box::new(l), Box::new(r))
    }

    /// Evaluates the expression, reading atoms through `value`.
    pub fn eval(&self, value: &impl Fn(&A) -> bool) -> bool {
        match self {
            Expr::Atom(a) => value(a),
            Expr::Not(e) => !e.eval(value),
            Expr::And(l, r) => l.eval(value) && r.eval(value),
            Expr::Or(l, r) => l.eval(value) || r.eval(value),
        }
    }

    pub fn map_atoms<B>(&self, f: &impl Fn(&A) -> B) -> Expr<B> {
        match self {
            Expr::Atom(a) => Expr::Atom(f(a)),
            Expr::Not(e) => Expr::not(e.map_atoms(f)),
            Expr::And(l, r) => Expr::and(l.map_atoms(f), r.map_atoms(f)),
            Expr::Or(l, r) => Expr::or(l.map_atoms(f), r.map_atoms(f)),
        }
    }

    pub fn try_map_atoms<B, E>(&self, f: &impl Fn(&A) -> Result<B, E>) -> Result<Expr<B>, E> {
        Ok(match self {
            Expr::Atom(a) => Expr::Atom(f(a)?),
            Expr::Not(e) => Expr::not(e.try_map_atoms(f)?),
            Expr::And(l, r) => Expr::and(l.try_map_atoms(f)?, r.try_map_atoms(f)?),
            Expr::Or(l, r) => Expr::or(l.try_map_atoms(f)?, r.try_map_atoms(f)?),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Or(..) => 1,
            Expr::And(..) => 2,
            Expr::Not(_) => 3,
            Expr::Atom(_) => 4,
        }
    }
}

impl<A: Ord + Clone> Expr<A> {
    /// Distinct atoms in ascending order.
    pub fn atoms(&self) -> BTreeSet<A> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<A>) {
        match self {
            Expr::Atom(a) => {
                out.insert(a.clone());
            }
            Expr::Not(e) => e.collect_atoms(out),
            Expr::And(l, r) | Expr::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

// Prints with the fewest parentheses that still re-parse to the same tree.
// Both binary operators associate to the left, so a right operand of equal
// precedence keeps its parentheses.
impl<A: fmt::Display> fmt::Display for Expr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child<A: fmt::Display>(f: &mut fmt::Formatter<'_>, e: &Expr<A>, wrap: bool) -> fmt::Result {
            if wrap {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Not(e) => {
                f.write_str("!")?;
                child(f, e, e.precedence() < 3)
            }
            Expr::And(l, r) | Expr::Or(l, r) => {
                let p = self.precedence();
                child(f, l, l.precedence() < p)?;
                f.write_str(if p == 1 { " | " } else { " & " })?;
                child(f, r, r.precedence() <= p)
            }
        }
    }
}

use std::fmt;

use serde::Serialize;

use super::truth::{assignment_value, check_width};
use super::{Expr, ExprError};

/// A possibly negated atom. Orders by atom first, positive before negated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal<A> {
    pub atom: A,
    pub negated: bool,
}

/// Disjunction of literal conjunctions in canonical form.
///
/// Every term is sorted and free of repeated atoms, no term contains both
/// `p` and `!p`, and the term list itself is sorted and deduplicated. Two
/// DNFs are therefore equal exactly when their term lists are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dnf<A> {
    terms: Vec<Vec<Literal<A>>>,
}

impl<A: Ord + Clone> Dnf<A> {
    fn from_raw_terms(raw: Vec<Vec<Literal<A>>>) -> Result<Self, ExprError> {
        let mut terms: Vec<Vec<Literal<A>>> = raw
            .into_iter()
            .filter_map(|mut term| {
                term.sort();
                term.dedup();
                let contradictory = term.windows(2).any(|w| w[0].atom == w[1].atom);
                (!contradictory).then_some(term)
            })
            .collect();
        terms.sort();
        terms.dedup();
        if terms.is_empty() {
            return Err(ExprError::Degenerate);
        }
        Ok(Dnf { terms })
    }

    pub fn terms(&self) -> &[Vec<Literal<A>>] {
        &self.terms
    }

    /// Rebuilds an expression tree: left-nested `|` over left-nested `&`.
    pub fn to_expr(&self) -> Expr<A> {
        let term_expr = |term: &Vec<Literal<A>>| {
            term.iter()
                .map(|l| {
                    let a = Expr::atom(l.atom.clone());
                    if l.negated {
                        Expr::not(a)
                    } else {
                        a
                    }
                })
                .reduce(Expr::and)
                .expect("canonical terms are non-empty")
        };
        self.terms.iter().map(term_expr).reduce(Expr::or).expect("canonical DNF is non-empty")
    }

    pub fn eval(&self, value: &impl Fn(&A) -> bool) -> bool {
        self.terms.iter().any(|t| t.iter().all(|l| value(&l.atom) != l.negated))
    }
}

impl<A> Dnf<A> {
    /// Renders terms as `(a & !b) | c`, naming atoms through `name`.
    pub fn render(&self, name: &impl Fn(&A) -> String) -> String {
        let wrap = self.terms.len() > 1;
        self.terms
            .iter()
            .map(|term| {
                let body = term
                    .iter()
                    .map(|l| format!("{}{}", if l.negated { "!" } else { "" }, name(&l.atom)))
                    .collect::<Vec<_>>()
                    .join(" & ");
                if wrap && term.len() > 1 {
                    format!("({body})")
                } else {
                    body
                }
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl<A: fmt::Display> fmt::Display for Dnf<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|a| a.to_string()))
    }
}

/// Canonical DNF: negation normal form, distribution of `&` over `|`, then
/// the cleanup performed by [`Dnf`]'s invariants.
pub fn to_dnf<A: Ord + Clone>(e: &Expr<A>) -> Result<Dnf<A>, ExprError> {
    Dnf::from_raw_terms(distribute(e, false))
}

// Terms of `e` (or of `!e` when `negate`), pushing negations to the atoms.
fn distribute<A: Clone>(e: &Expr<A>, negate: bool) -> Vec<Vec<Literal<A>>> {
    match (e, negate) {
        (Expr::Atom(a), _) => vec![vec![Literal { atom: a.clone(), negated: negate }]],
        (Expr::Not(inner), _) => distribute(inner, !negate),
        (Expr::Or(l, r), false) | (Expr::And(l, r), true) => {
            let mut terms = distribute(l, negate);
            terms.extend(distribute(r, negate));
            terms
        }
        (Expr::And(l, r), false) | (Expr::Or(l, r), true) => {
            let left = distribute(l, negate);
            let right = distribute(r, negate);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for lt in &left {
                for rt in &right {
                    out.push(lt.iter().chain(rt).cloned().collect());
                }
            }
            out
        }
    }
}

/// Sum-of-minterms over `vars`: one full-width term per satisfying assignment.
///
/// Unlike [`to_dnf`] this is unique for a given boolean function, and a
/// variable whose value is free in some satisfying region shows up with both
/// polarities.
pub fn minterm_expansion<A: Ord + Clone>(e: &Expr<A>, vars: &[A]) -> Result<Dnf<A>, ExprError> {
    let mut vars = vars.to_vec();
    vars.sort();
    vars.dedup();
    check_width(vars.len())?;
    let mut raw = Vec::new();
    for mask in 0u32..(1u32 << vars.len()) {
        if e.eval(&|a| assignment_value(&vars, mask, a)) {
            raw.push(
                vars.iter()
                    .enumerate()
                    .map(|(i, a)| Literal { atom: a.clone(), negated: mask & (1 << i) == 0 })
                    .collect(),
            );
        }
    }
    Dnf::from_raw_terms(raw)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    PosOnly,
    NegOnly,
    Both,
    Absent,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::PosOnly => "pos-only",
            Polarity::NegOnly => "neg-only",
            Polarity::Both => "both",
            Polarity::Absent => "absent",
        })
    }
}

/// Per-place literal polarity, in the order the places were given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarityProfile<A> {
    entries: Vec<(A, Polarity)>,
}

impl<A: PartialEq> PolarityProfile<A> {
    pub fn entries(&self) -> &[(A, Polarity)] {
        &self.entries
    }

    pub fn get(&self, place: &A) -> Option<Polarity> {
        self.entries.iter().find(|(a, _)| a == place).map(|(_, p)| *p)
    }
}

pub fn polarity_profile<A: Ord + Clone>(d: &Dnf<A>, places: &[A]) -> PolarityProfile<A> {
    let entries = places
        .iter()
        .map(|place| {
            let mut pos = false;
            let mut neg = false;
            for lit in d.terms.iter().flatten().filter(|l| &l.atom == place) {
                if lit.negated {
                    neg = true;
                } else {
                    pos = true;
                }
            }
            let polarity = match (pos, neg) {
                (true, true) => Polarity::Both,
                (true, false) => Polarity::PosOnly,
                (false, true) => Polarity::NegOnly,
                (false, false) => Polarity::Absent,
            };
            (place.clone(), polarity)
        })
        .collect();
    PolarityProfile { entries }
}

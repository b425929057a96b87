//! Exhaustive truth-table reasoning for small guards.

use super::{Expr, ExprError};

pub const MAX_TRUTH_TABLE_VARS: usize = 16;

pub(crate) fn check_width(n: usize) -> Result<(), ExprError> {
    if n > MAX_TRUTH_TABLE_VARS {
        Err(ExprError::TooManyVariables(n))
    } else {
        Ok(())
    }
}

/// Value of `a` under `mask`, where bit `i` holds `vars[i]`. `vars` is sorted.
pub(crate) fn assignment_value<A: Ord>(vars: &[A], mask: u32, a: &A) -> bool {
    match vars.binary_search(a) {
        Ok(i) => mask & (1 << i) != 0,
        Err(_) => false,
    }
}

/// Rows of the truth table over the (sorted) atoms of `e`.
pub fn truth_table<A: Ord + Clone>(e: &Expr<A>) -> Result<(Vec<A>, Vec<bool>), ExprError> {
    let vars: Vec<A> = e.atoms().into_iter().collect();
    check_width(vars.len())?;
    let rows = (0u32..1 << vars.len()).map(|mask| e.eval(&|a| assignment_value(&vars, mask, a))).collect();
    Ok((vars, rows))
}

/// Atoms whose value can change the result, ascending.
pub fn support<A: Ord + Clone>(e: &Expr<A>) -> Result<Vec<A>, ExprError> {
    let (vars, rows) = truth_table(e)?;
    Ok(vars
        .iter()
        .enumerate()
        .filter(|(i, _)| (0..rows.len()).any(|mask| rows[mask] != rows[mask ^ (1 << i)]))
        .map(|(_, a)| a.clone())
        .collect())
}

/// `Some(v)` when `e` is the constant `v`.
pub fn constant_value<A: Ord + Clone>(e: &Expr<A>) -> Result<Option<bool>, ExprError> {
    let (_, rows) = truth_table(e)?;
    Ok(if rows.iter().all(|&r| r) {
        Some(true)
    } else if rows.iter().all(|&r| !r) {
        Some(false)
    } else {
        None
    })
}

/// A guard of the shape `(f1 & f2 & ...) & (s1 | s2 | ...)`.
///
/// `forced` places must all be marked; at least one `optional` place must be
/// marked unless the optional set is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndOrForm<A> {
    pub forced: Vec<A>,
    pub optional: Vec<A>,
}

impl<A: Ord> AndOrForm<A> {
    pub fn holds(&self, value: &impl Fn(&A) -> bool) -> bool {
        self.forced.iter().all(value) && (self.optional.is_empty() || self.optional.iter().any(value))
    }
}

/// Recognizes guards equivalent to an AND of forced places with an OR of
/// optional places. Returns `Ok(None)` when no such split exists.
pub fn and_or_form<A: Ord + Clone>(e: &Expr<A>) -> Result<Option<AndOrForm<A>>, ExprError> {
    let vars = support(e)?;
    let eval = |mask: u32| e.eval(&|a| assignment_value(&vars, mask, a));
    let sat: Vec<u32> = (0u32..1 << vars.len()).filter(|&m| eval(m)).collect();
    if sat.is_empty() {
        return Ok(None);
    }
    let (forced, optional): (Vec<_>, Vec<_>) =
        vars.iter().enumerate().partition(|(i, _)| sat.iter().all(|m| m & (1 << i) != 0));
    let form = AndOrForm {
        forced: forced.into_iter().map(|(_, a)| a.clone()).collect(),
        optional: optional.into_iter().map(|(_, a)| a.clone()).collect(),
    };
    let matches = (0u32..1 << vars.len()).all(|m| eval(m) == form.holds(&|a| assignment_value(&vars, m, a)));
    Ok(matches.then_some(form))
}

use std::fmt;

use serde::Serialize;

use super::{for_each_tuple, table_index, PolyadicGroup};
use crate::budget;
use crate::error::{Error, Result};

/// Largest number of `(2n-1)`-tuples scanned for associativity before the
/// check switches to the Hosszú–Gluskin reconstruction.
pub const ASSOCIATIVITY_SCAN_LIMIT: u128 = 100_000_000;

/// First failure found by [`verify_polyadic`]. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// Unique solvability fails: two values at `position` give the same
    /// result with the other arguments fixed.
    NotLatin { position: usize, args: Vec<usize>, other: usize, value: usize },
    /// `f(x_1^{i-1}, f(x_i^{n+i-1}), x_{n+i}^{2n-1})` differs between
    /// positions `i` and `j`.
    NotAssociative { tuple: Vec<usize>, i: usize, j: usize, left: usize, right: usize },
    /// Large-table fallback: the table differs from the operation rebuilt from
    /// its own retract, which every associative table must match.
    NotHgForm { args: Vec<usize>, table: usize, rebuilt: usize },
    /// Large-table fallback: the retract at 0 or the triple read off from it
    /// fails a group axiom.
    NoRetractForm { reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotLatin { position, args, other, value } => write!(
                f,
                "unique solvability fails at position {position}: f{args:?} = {value}, and replacing position {position} by {other} gives the same value"
            ),
            Violation::NotAssociative { tuple, i, j, left, right } => {
                write!(f, "associativity fails on {tuple:?}: inner product at {i} gives {left}, at {j} gives {right}")
            }
            Violation::NotHgForm { args, table, rebuilt } => {
                write!(f, "associativity fails: f{args:?} = {table} but the retract form gives {rebuilt}")
            }
            Violation::NoRetractForm { reason } => write!(f, "associativity fails: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", content = "violation", rename_all = "snake_case")]
pub enum Verification {
    Valid,
    Invalid(Violation),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verification::Valid => None,
            Verification::Invalid(v) => Some(v),
        }
    }
}

/// Checks both polyadic group axioms on a row-major table with extent `order`
/// in each of `arity` dimensions.
///
/// Unique solvability is checked as the Latin-cube condition: every line in
/// every coordinate direction is a permutation. Associativity compares all
/// `n` placements of the inner product on every `(2n-1)`-tuple; when there
/// are more than [`ASSOCIATIVITY_SCAN_LIMIT`] such tuples, the table is
/// instead compared against the `(θ, b)` form rebuilt from its retract at 0.
pub fn verify_polyadic(table: &[usize], order: usize, arity: usize) -> Result<Verification> {
    if arity < 2 {
        return Err(Error::BadArity(arity));
    }
    if order == 0 {
        return Err(Error::BadShape("empty carrier".into()));
    }
    let expected = budget::saturating_pow(order, arity);
    if table.len() as u128 != expected {
        return Err(Error::BadShape(format!(
            "expected {expected} entries for m={order}, n={arity}, got {}",
            table.len()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&v| v >= order) {
        return Err(Error::BadShape(format!("entry {bad} out of range 0..{order}")));
    }
    if let Some(v) = latin_violation(table, order, arity) {
        return Ok(Verification::Invalid(v));
    }
    let violation = if budget::saturating_pow(order, 2 * arity - 1) <= ASSOCIATIVITY_SCAN_LIMIT {
        associativity_violation(table, order, arity)
    } else {
        hg_form_violation(table, order, arity)
    };
    Ok(violation.map_or(Verification::Valid, Verification::Invalid))
}

fn latin_violation(table: &[usize], m: usize, n: usize) -> Option<Violation> {
    let mut seen = vec![usize::MAX; m];
    let mut args = vec![0; n];
    let mut found = None;
    for p in 0..n {
        for_each_tuple(m, n - 1, |rest| {
            seen.fill(usize::MAX);
            args[..p].copy_from_slice(&rest[..p]);
            args[p + 1..].copy_from_slice(&rest[p..]);
            for x in 0..m {
                args[p] = x;
                let v = table[table_index(&args, m)];
                if seen[v] != usize::MAX {
                    let mut witness = args.clone();
                    witness[p] = seen[v];
                    found = Some(Violation::NotLatin { position: p + 1, args: witness, other: x, value: v });
                    return false;
                }
                seen[v] = x;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn associativity_violation(table: &[usize], m: usize, n: usize) -> Option<Violation> {
    let f = |args: &[usize]| table[table_index(args, m)];
    let mut outer = vec![0; n];
    let mut found = None;
    for_each_tuple(m, 2 * n - 1, |x| {
        let mut first = 0;
        for i in 0..n {
            outer[..i].copy_from_slice(&x[..i]);
            outer[i] = f(&x[i..i + n]);
            outer[i + 1..].copy_from_slice(&x[i + n..]);
            let v = f(&outer);
            if i == 0 {
                first = v;
            } else if v != first {
                found = Some(Violation::NotAssociative { tuple: x.to_vec(), i: 1, j: i + 1, left: first, right: v });
                return false;
            }
        }
        true
    });
    found
}

/// Rebuilds `(θ, b)` from the retract at 0 and compares every entry. Any
/// associative Latin table equals its rebuilt form, so a mismatch (or a
/// retract that is not a group) proves non-associativity.
fn hg_form_violation(table: &[usize], m: usize, n: usize) -> Option<Violation> {
    let candidate = PolyadicGroup::from_table_unchecked(n, m, table.to_vec());
    let rebuilt = match crate::structure::sokolov_triple(&candidate, 0) {
        Ok(triple) => triple,
        Err(e) => return Some(Violation::NoRetractForm { reason: format!("retract at 0: {e}") }),
    };
    if let Err((_, why)) = rebuilt.check(n) {
        return Some(Violation::NoRetractForm { reason: why });
    }
    let hg = PolyadicGroup::from_triple_unchecked(rebuilt, n);
    candidate.first_disagreement(&hg).map(|args| {
        let table = candidate.apply(&args);
        let rebuilt = hg.apply(&args);
        Violation::NotHgForm { args, table, rebuilt }
    })
}

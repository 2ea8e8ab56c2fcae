use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{find_isomorphism, FiniteGroup, GroupHom};
use crate::polyadic::PolyadicGroup;

/// The binary group `x • y = f(x, a, .., a, y)` on the carrier of a
/// polyadic group, with `n - 2` copies of the basepoint `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract {
    pub basepoint: usize,
    pub group: FiniteGroup,
}

/// The retract table, validated as a group but without the identity and
/// inverse cross-checks. Fails when `p` is not actually a polyadic group.
pub(crate) fn retract_group(p: &PolyadicGroup, a: usize) -> Result<FiniteGroup> {
    let n = p.arity();
    let m = p.order();
    let mut args = vec![a; n];
    let mut table = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            args[0] = x;
            args[n - 1] = y;
            table.push(p.apply(&args));
        }
    }
    FiniteGroup::from_flat(m, table)
}

/// `ret_a(P)`. The identity is checked to be `ā` and, for `n >= 3`, the
/// inverse of every `x` is checked against `f(ā, x, .., x, x̄, ā)` with
/// `n - 3` plain copies of `x`.
pub fn retract_at(p: &PolyadicGroup, a: usize) -> Result<Retract> {
    if a >= p.order() {
        return Err(Error::OutOfRange { element: a, order: p.order() });
    }
    let group = retract_group(p, a).map_err(|e| Error::ConstructionFailed(format!("retract at {a}: {e}")))?;
    let a_bar = p.skew_of(a);
    if group.identity() != a_bar {
        return Err(Error::ConstructionFailed(format!(
            "retract at {a} has identity {} but skew({a}) = {a_bar}",
            group.identity()
        )));
    }
    if let Some(x) = inverse_formula_mismatch(p, a, &group) {
        return Err(Error::ConstructionFailed(format!("inverse formula fails at {x} in retract at {a}")));
    }
    Ok(Retract { basepoint: a, group })
}

/// First `x` whose retract inverse differs from the closed formula.
/// Always `None` for `n = 2`, where the formula does not apply.
pub fn inverse_formula_mismatch(p: &PolyadicGroup, a: usize, group: &FiniteGroup) -> Option<usize> {
    let n = p.arity();
    if n < 3 {
        return None;
    }
    let a_bar = p.skew_of(a);
    let mut args = vec![0; n];
    p.elements().find(|&x| {
        args.fill(x);
        args[0] = a_bar;
        args[n - 2] = p.skew_of(x);
        args[n - 1] = a_bar;
        p.apply(&args) != group.inv(x)
    })
}

/// An explicit isomorphism `ret_a -> ret_b`, found by search.
pub fn retracts_isomorphic(p: &PolyadicGroup, a: usize, b: usize) -> Result<GroupHom> {
    if a == b {
        return Ok(GroupHom::identity(p.order()));
    }
    let ra = retract_at(p, a)?;
    let rb = retract_at(p, b)?;
    find_isomorphism(&ra.group, &rb.group).ok_or_else(|| Error::NotFound(format!("ret_{a} and ret_{b}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct RetractReport {
    pub basepoint: usize,
    pub identity: usize,
    pub skew_of_basepoint: usize,
    pub inverse_formula_holds: bool,
}

impl Retract {
    pub fn report(&self, p: &PolyadicGroup) -> RetractReport {
        RetractReport {
            basepoint: self.basepoint,
            identity: self.group.identity(),
            skew_of_basepoint: p.skew_of(self.basepoint),
            inverse_formula_holds: inverse_formula_mismatch(p, self.basepoint, &self.group).is_none(),
        }
    }
}

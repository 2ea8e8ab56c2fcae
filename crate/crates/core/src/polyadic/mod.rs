//! Polyadic (n-ary) groups.
//!
//! A [`PolyadicGroup`] is backed either by an explicit n-dimensional
//! operation table or by a triple `(G, θ, b)` over an ordinary group, in
//! which case
//!
//! ```text
//! f(x_1, .., x_n) = x_1 θ(x_2) θ²(x_3) ⋯ θ^{n-1}(x_n) b
//! ```
//!
//! with `θ(b) = b` and `θ^{n-1} = conj_b`. Every finite polyadic group has
//! such a representation, so both backings describe the same objects.

mod iso;
mod verify;

pub use iso::{element_invariants, find_polyadic_isomorphism, fingerprint, ElementInvariant};
pub use verify::{verify_polyadic, Verification, Violation, ASSOCIATIVITY_SCAN_LIMIT};

use serde::Serialize;

use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup};

/// Largest table (`m^n` entries) that is ever materialized.
pub const MATERIALIZE_LIMIT: u128 = 10_000_000;

/// Advances `t` to the next tuple in lexicographic order over `0..m`, last
/// coordinate fastest. Returns `false` after the last tuple.
pub fn next_tuple(t: &mut [usize], m: usize) -> bool {
    for k in (0..t.len()).rev() {
        t[k] += 1;
        if t[k] < m {
            return true;
        }
        t[k] = 0;
    }
    false
}

/// Calls `visit` on every tuple of length `len` over `0..m`, in
/// lexicographic order, until it returns `false`.
pub fn for_each_tuple(m: usize, len: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if m == 0 {
        return;
    }
    let mut t = vec![0; len];
    loop {
        if !visit(&t) {
            return;
        }
        if !next_tuple(&mut t, m) {
            return;
        }
    }
}

/// Row-major index of an argument tuple in an operation table.
#[inline]
pub(crate) fn table_index(args: &[usize], m: usize) -> usize {
    args.iter().fold(0, |acc, &x| acc * m + x)
}

/// The Hosszú–Gluskin data `(G, θ, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgTriple {
    pub group: FiniteGroup,
    pub theta: Automorphism,
    pub b: usize,
}

#[derive(Clone, Debug)]
struct HgBacking {
    triple: HgTriple,
    /// `θ^k` for `k = 0..n`.
    powers: Vec<Vec<usize>>,
    /// `θ^{-k}` for `k = 0..n`.
    inverse_powers: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
enum Backing {
    Table(Vec<usize>),
    Hg(HgBacking),
}

#[derive(Clone, Debug)]
pub struct PolyadicGroup {
    arity: usize,
    order: usize,
    backing: Backing,
}

/// Which defining condition of a `(θ, b)`-derivation failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HgCondition {
    /// `θ(b) = b`
    FixesB,
    /// `θ^{n-1} = conj_b`
    PowerIsConjugation,
}

impl HgTriple {
    /// Checks `θ(b) = b` and `θ^{n-1}(x) = b x b^{-1}` for all `x`.
    pub fn check(&self, arity: usize) -> std::result::Result<(), (HgCondition, String)> {
        let g = &self.group;
        if self.theta.map().len() != g.order() || self.b >= g.order() {
            return Err((HgCondition::FixesB, "theta or b does not match the group order".into()));
        }
        if self.theta.apply(self.b) != self.b {
            return Err((
                HgCondition::FixesB,
                format!("theta({}) = {} != {}", self.b, self.theta.apply(self.b), self.b),
            ));
        }
        let power = self.theta.pow(arity as i64 - 1);
        if let Some(x) = g.elements().find(|&x| power.apply(x) != g.conj(self.b, x)) {
            return Err((
                HgCondition::PowerIsConjugation,
                format!("theta^{}({x}) = {} but b x b^-1 = {}", arity - 1, power.apply(x), g.conj(self.b, x)),
            ));
        }
        Ok(())
    }
}

impl PolyadicGroup {
    /// Validates a row-major table of `m^n` entries and wraps it.
    pub fn from_table(arity: usize, order: usize, table: Vec<usize>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        match verify_polyadic(&table, order, arity)? {
            Verification::Valid => Ok(Self { arity, order, backing: Backing::Table(table) }),
            Verification::Invalid(v) => Err(Error::NotPolyadic(v.to_string())),
        }
    }

    /// Wraps a table without checking the axioms. Callers must know the
    /// table is a polyadic group.
    pub(crate) fn from_table_unchecked(arity: usize, order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len() as u128, budget::saturating_pow(order, arity));
        Self { arity, order, backing: Backing::Table(table) }
    }

    /// `der_{θ,b}(G)` with evaluation `x_1 θ(x_2) ⋯ θ^{n-1}(x_n) b`.
    pub fn derive_theta(group: &FiniteGroup, theta: &Automorphism, b: usize, arity: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::BadArity(arity));
        }
        if b >= group.order() {
            return Err(Error::OutOfRange { element: b, order: group.order() });
        }
        let triple = HgTriple { group: group.clone(), theta: theta.clone(), b };
        triple.check(arity).map_err(|(_, why)| Error::ConditionViolated(why))?;
        Ok(Self::from_triple_unchecked(triple, arity))
    }

    pub(crate) fn from_triple_unchecked(triple: HgTriple, arity: usize) -> Self {
        let powers: Vec<Vec<usize>> = (0..arity).map(|k| triple.theta.pow(k as i64).map().to_vec()).collect();
        let inverse_powers: Vec<Vec<usize>> =
            (0..arity).map(|k| triple.theta.pow(-(k as i64)).map().to_vec()).collect();
        let order = triple.group.order();
        Self { arity, order, backing: Backing::Hg(HgBacking { triple, powers, inverse_powers }) }
    }

    /// `der^n(G)`: `f(x_1, .., x_n) = x_1 x_2 ⋯ x_n`.
    pub fn derive(group: &FiniteGroup, arity: usize) -> Result<Self> {
        Self::derive_theta(group, &Automorphism::identity(group.order()), group.identity(), arity)
    }

    /// `der_b^n(G)`: `f(x_1, .., x_n) = x_1 x_2 ⋯ x_n b` for central `b`.
    pub fn derive_b(group: &FiniteGroup, b: usize, arity: usize) -> Result<Self> {
        if b >= group.order() {
            return Err(Error::OutOfRange { element: b, order: group.order() });
        }
        if !group.is_central(b) {
            return Err(Error::NotCentral(b));
        }
        Self::derive_theta(group, &Automorphism::identity(group.order()), b, arity)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// The backing triple when this group was built by a derivation.
    pub fn hg_backing(&self) -> Option<&HgTriple> {
        match &self.backing {
            Backing::Hg(h) => Some(&h.triple),
            Backing::Table(_) => None,
        }
    }

    pub fn is_table_backed(&self) -> bool {
        matches!(self.backing, Backing::Table(_))
    }

    /// Evaluates `f` without checking the argument count.
    #[inline]
    pub fn apply(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        match &self.backing {
            Backing::Table(t) => t[table_index(args, self.order)],
            Backing::Hg(h) => {
                let g = &h.triple.group;
                let mut acc = args[0];
                for (k, &x) in args.iter().enumerate().skip(1) {
                    acc = g.mul(acc, h.powers[k][x]);
                }
                g.mul(acc, h.triple.b)
            }
        }
    }

    pub fn eval(&self, args: &[usize]) -> Result<usize> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: args.len() });
        }
        if let Some(&bad) = args.iter().find(|&&x| x >= self.order) {
            return Err(Error::OutOfRange { element: bad, order: self.order });
        }
        Ok(self.apply(args))
    }

    /// `f` applied to `n` copies of `x`.
    pub fn power(&self, x: usize) -> usize {
        self.apply(&vec![x; self.arity])
    }

    /// Number of table entries, `m^n`.
    pub fn table_size(&self) -> u128 {
        budget::saturating_pow(self.order, self.arity)
    }

    /// The full row-major table, if it fits under [`MATERIALIZE_LIMIT`].
    pub fn table(&self) -> Option<Vec<usize>> {
        match &self.backing {
            Backing::Table(t) => Some(t.clone()),
            Backing::Hg(_) => {
                if self.table_size() > MATERIALIZE_LIMIT {
                    return None;
                }
                let mut out = Vec::with_capacity(self.table_size() as usize);
                for_each_tuple(self.order, self.arity, |t| {
                    out.push(self.apply(t));
                    true
                });
                Some(out)
            }
        }
    }

    /// A table-backed copy, if the table can be materialized.
    pub fn materialize(&self) -> Option<PolyadicGroup> {
        self.table().map(|t| Self::from_table_unchecked(self.arity, self.order, t))
    }

    /// First argument tuple on which the two operations differ.
    pub fn first_disagreement(&self, other: &PolyadicGroup) -> Option<Vec<usize>> {
        if self.arity != other.arity || self.order != other.order {
            return Some(Vec::new());
        }
        let mut found = None;
        for_each_tuple(self.order, self.arity, |t| {
            if self.apply(t) != other.apply(t) {
                found = Some(t.to_vec());
                return false;
            }
            true
        });
        found
    }

    /// Same carrier size, arity and operation.
    pub fn same_operation(&self, other: &PolyadicGroup) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// The unique `x` with `f(known_1, .., x, .., known_{n-1}) = rhs`, `x`
    /// at 1-based `position`.
    pub fn solve(&self, position: usize, known: &[usize], rhs: usize) -> Result<usize> {
        let n = self.arity;
        if known.len() != n - 1 {
            return Err(Error::ArityMismatch { expected: n - 1, got: known.len() });
        }
        if position == 0 || position > n {
            return Err(Error::PreconditionViolated(format!("position {position} not in 1..={n}")));
        }
        let p = position - 1;
        match &self.backing {
            Backing::Table(_) => {
                let mut args = Vec::with_capacity(n);
                args.extend_from_slice(&known[..p]);
                args.push(0);
                args.extend_from_slice(&known[p..]);
                for x in self.elements() {
                    args[p] = x;
                    if self.apply(&args) == rhs {
                        return Ok(x);
                    }
                }
                Err(Error::NotPolyadic(format!("no solution at position {position}")))
            }
            Backing::Hg(h) => {
                let g = &h.triple.group;
                let prefix = g.product(known[..p].iter().enumerate().map(|(k, &x)| h.powers[k][x]));
                let suffix =
                    g.mul(g.product(known[p..].iter().enumerate().map(|(k, &x)| h.powers[p + 1 + k][x])), h.triple.b);
                let middle = g.mul(g.mul(g.inv(prefix), rhs), g.inv(suffix));
                Ok(h.inverse_powers[p][middle])
            }
        }
    }

    /// The skew element of `x`: the `y` with `f(x, .., x, y) = x`.
    pub fn skew_of(&self, x: usize) -> usize {
        self.solve(self.arity, &vec![x; self.arity - 1], x).expect("valid polyadic group")
    }

    pub fn skew(&self) -> SkewMap {
        SkewMap { map: self.elements().map(|x| self.skew_of(x)).collect() }
    }

    /// Checks `f(x^{(i-2)}, x̄, x^{(n-i)}, y) = y = f(y, x^{(n-i)}, x̄, x^{(i-2)})`
    /// for all `x`, `y` and `2 <= i <= n`.
    pub fn check_dornte(&self) -> DornteCheck {
        let n = self.arity;
        let skew = self.skew();
        let mut args = vec![0; n];
        for i in 2..=n {
            for x in self.elements() {
                let xb = skew.apply(x);
                for y in self.elements() {
                    // left form: positions 0..i-2 are x, then x̄, then x, last is y
                    for (k, a) in args.iter_mut().enumerate() {
                        *a = if k + 2 == i { xb } else { x };
                    }
                    args[n - 1] = y;
                    let got = self.apply(&args);
                    if got != y {
                        return DornteCheck::failed(DornteViolation { i, x, y, side: DornteSide::Left, got });
                    }
                    // right form: y, then n-i copies of x, x̄, then i-2 copies of x
                    args[0] = y;
                    for (k, a) in args.iter_mut().enumerate().skip(1) {
                        *a = if k == n - i + 1 { xb } else { x };
                    }
                    let got = self.apply(&args);
                    if got != y {
                        return DornteCheck::failed(DornteViolation { i, x, y, side: DornteSide::Right, got });
                    }
                }
            }
        }
        DornteCheck { holds: true, violation: None }
    }

    /// Whether `f(a^{(i-1)}, x, a^{(n-i)}) = x` for all `x` and all `i`.
    pub fn is_nary_identity(&self, a: usize) -> bool {
        let mut args = vec![a; self.arity];
        (0..self.arity).all(|i| {
            self.elements().all(|x| {
                args.fill(a);
                args[i] = x;
                self.apply(&args) == x
            })
        })
    }

    /// The least n-ary identity, if any. One exists iff the group is derived
    /// from an ordinary group.
    pub fn find_nary_identity(&self) -> Option<usize> {
        self.elements().find(|&a| self.is_nary_identity(a))
    }
}

/// `x ↦ x̄` for every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewMap {
    map: Vec<usize>,
}

impl SkewMap {
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DornteSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DornteViolation {
    pub i: usize,
    pub x: usize,
    pub y: usize,
    pub side: DornteSide,
    pub got: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DornteCheck {
    pub holds: bool,
    pub violation: Option<DornteViolation>,
}

impl DornteCheck {
    fn failed(v: DornteViolation) -> Self {
        Self { holds: false, violation: Some(v) }
    }
}

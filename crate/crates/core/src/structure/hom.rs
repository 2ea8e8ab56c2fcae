//! Homomorphisms of polyadic groups and their factorization `ψ = R(a) φ`
//! through retracts.

use serde::Serialize;

use super::hg::{hg_decompose, HgDecomposition};
use crate::budget;
use crate::error::{Error, Result};
use crate::group::{all_homs, GroupHom};
use crate::polyadic::{for_each_tuple, PolyadicGroup};

/// A verified homomorphism between two polyadic groups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyadicHom {
    map: Vec<usize>,
}

impl PolyadicHom {
    pub fn new(source: &PolyadicGroup, target: &PolyadicGroup, map: Vec<usize>) -> Result<Self> {
        let check = hom_verify(&map, source, target)?;
        if !check.holds {
            return Err(Error::NotAHom(format!("fails on {:?}", check.witness.unwrap_or_default())));
        }
        Ok(Self { map })
    }

    pub fn identity(order: usize) -> Self {
        Self { map: (0..order).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PolyadicHom) -> PolyadicHom {
        PolyadicHom { map: self.map.iter().map(|&x| other.map[x]).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub holds: bool,
    /// First argument tuple with `ψ(f(x)) != g(ψ(x))`.
    pub witness: Option<Vec<usize>>,
}

/// Exhaustive check of `ψ(f(x_1, .., x_n)) = g(ψx_1, .., ψx_n)`.
pub fn hom_verify(map: &[usize], source: &PolyadicGroup, target: &PolyadicGroup) -> Result<HomCheck> {
    if source.arity() != target.arity() {
        return Err(Error::ArityMismatch { expected: source.arity(), got: target.arity() });
    }
    if map.len() != source.order() {
        return Err(Error::BadShape(format!("map has length {}, source has {} elements", map.len(), source.order())));
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
        return Err(Error::OutOfRange { element: bad, order: target.order() });
    }
    let mut image = vec![0; source.arity()];
    let mut witness = None;
    for_each_tuple(source.order(), source.arity(), |t| {
        for (slot, &x) in image.iter_mut().zip(t) {
            *slot = map[x];
        }
        if map[source.apply(t)] != target.apply(&image) {
            witness = Some(t.to_vec());
            return false;
        }
        true
    });
    Ok(HomCheck { holds: witness.is_none(), witness })
}

/// `ψ = R(a) φ` over the retracts at 0 of source and target, plus the
/// compatibility conditions in both sign conventions.
#[derive(Clone, Debug)]
pub struct HomFactorization {
    /// `ψ(1)`, the image of the source retract identity.
    pub a: usize,
    pub phi: GroupHom,
    pub source: HgDecomposition,
    pub target: HgDecomposition,
    pub conditions: ConditionReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    /// `g(a, .., a) = φ(b) a`
    pub power: bool,
    /// `φ θ = I_a η φ` with `I_a(y) = a y a^{-1}`
    pub inner_a: bool,
    /// `φ θ = I(a^{-1}) η φ` with `I(a^{-1})(y) = a^{-1} y a`
    pub inner_a_inverse: bool,
}

fn conditions(
    src: &HgDecomposition,
    tgt: &HgDecomposition,
    target: &PolyadicGroup,
    phi: &[usize],
    a: usize,
) -> ConditionReport {
    let h = &tgt.retract.group;
    let power = target.power(a) == h.mul(phi[src.b], a);
    let a_inv = h.inv(a);
    let mut inner_a = true;
    let mut inner_a_inverse = true;
    for x in src.retract.group.elements() {
        let lhs = phi[src.theta.apply(x)];
        let eta = tgt.theta.apply(phi[x]);
        inner_a &= lhs == h.conj(a, eta);
        inner_a_inverse &= lhs == h.conj(a_inv, eta);
    }
    ConditionReport { power, inner_a, inner_a_inverse }
}

/// Factors a homomorphism through the retracts at 0: `a = ψ(1)` and
/// `φ(x) = ψ(x) a^{-1}`.
pub fn hom_decompose(source: &PolyadicGroup, target: &PolyadicGroup, map: &[usize]) -> Result<HomFactorization> {
    let check = hom_verify(map, source, target)?;
    if !check.holds {
        return Err(Error::NotAHom(format!("fails on {:?}", check.witness.unwrap_or_default())));
    }
    let src = hg_decompose(source, 0)?;
    let tgt = hg_decompose(target, 0)?;
    let g = &src.retract.group;
    let h = &tgt.retract.group;
    let a = map[g.identity()];
    let a_inv = h.inv(a);
    let phi_map: Vec<usize> = map.iter().map(|&y| h.mul(y, a_inv)).collect();
    let phi = GroupHom::new(g, h, phi_map).map_err(|e| Error::NotAHom(format!("φ is not a group hom: {e}")))?;
    debug_assert!(g.elements().all(|x| h.mul(phi.apply(x), a) == map[x]));
    let conditions = conditions(&src, &tgt, target, phi.map(), a);
    Ok(HomFactorization { a, phi, source: src, target: tgt, conditions })
}

/// Both enumerations of `Hom(P, Q)` and how they compare.
#[derive(Clone, Debug, Serialize)]
pub struct HomEnumeration {
    /// All maps that pass [`hom_verify`].
    pub brute_force: Vec<Vec<usize>>,
    /// `R(a) φ` over group homs `φ` and `a` with `g(a^{(n)}) = φ(b) a` and
    /// `φ θ = I_a η φ`.
    pub factored: Vec<Vec<usize>>,
    /// Same, with `I(a^{-1})` in place of `I_a`.
    pub factored_inverse_convention: Vec<Vec<usize>>,
    pub factored_matches: bool,
    pub inverse_convention_matches: bool,
}

/// Enumerates `Hom(P, Q)` twice: (A) by exhaustive search over maps and
/// (B) from pairs `(a, φ)` satisfying the compatibility conditions.
pub fn enumerate_homs(source: &PolyadicGroup, target: &PolyadicGroup) -> Result<HomEnumeration> {
    if source.arity() != target.arity() {
        return Err(Error::ArityMismatch { expected: source.arity(), got: target.arity() });
    }
    let work = budget::saturating_pow(target.order(), source.order());
    budget::check("maps between carriers", work, budget::HOM_SCAN)?;

    let brute_force = brute_force_homs(source, target);

    let src = hg_decompose(source, 0)?;
    let tgt = hg_decompose(target, 0)?;
    let h = &tgt.retract.group;
    let mut factored = Vec::new();
    let mut factored_inverse_convention = Vec::new();
    for phi in all_homs(&src.retract.group, h) {
        for a in target.elements() {
            let report = conditions(&src, &tgt, target, phi.map(), a);
            if !report.power {
                continue;
            }
            let psi: Vec<usize> = phi.map().iter().map(|&y| h.mul(y, a)).collect();
            if report.inner_a {
                factored.push(psi.clone());
            }
            if report.inner_a_inverse {
                factored_inverse_convention.push(psi);
            }
        }
    }
    factored.sort();
    factored.dedup();
    factored_inverse_convention.sort();
    factored_inverse_convention.dedup();
    let factored_matches = factored == brute_force;
    let inverse_convention_matches = factored_inverse_convention == brute_force;
    Ok(HomEnumeration {
        brute_force,
        factored,
        factored_inverse_convention,
        factored_matches,
        inverse_convention_matches,
    })
}

/// All homomorphisms by depth-first search over maps, assigning images to
/// elements in index order. A partial map is abandoned as soon as some tuple
/// over the assigned prefix, whose value is also assigned, breaks the
/// homomorphism equation. Output is sorted.
pub fn brute_force_homs(source: &PolyadicGroup, target: &PolyadicGroup) -> Vec<Vec<usize>> {
    let m = source.order();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; m];

    fn consistent(source: &PolyadicGroup, target: &PolyadicGroup, map: &[usize], k: usize) -> bool {
        let mut ok = true;
        let mut image = vec![0; source.arity()];
        for_each_tuple(k + 1, source.arity(), |t| {
            if !t.contains(&k) {
                return true;
            }
            let v = source.apply(t);
            if v <= k {
                for (slot, &x) in image.iter_mut().zip(t) {
                    *slot = map[x];
                }
                ok = map[v] == target.apply(&image);
            }
            ok
        });
        ok
    }

    fn rec(k: usize, source: &PolyadicGroup, target: &PolyadicGroup, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == source.order() {
            out.push(map.clone());
            return;
        }
        for y in target.elements() {
            map[k] = y;
            if consistent(source, target, map, k) {
                rec(k + 1, source, target, map, out);
            }
        }
        map[k] = usize::MAX;
    }

    rec(0, source, target, &mut map, &mut out);
    out
}

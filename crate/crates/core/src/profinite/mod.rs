//! Finite posets, inverse systems of polyadic groups and their thread limits,
//! the θ-invariant core, tower builders and `Pol_n(X)` checks.

mod limit;
mod poln;
mod quotients;
mod tower;

pub use limit::{
    der_limit_commute, inverse_limit, limit_retract, stage_kernel, y_set, y_set_report, DerCommuteReport,
    LimitRetractReport, ThreadLimit, YSetReport,
};
pub use poln::{
    direct_product, poln_closure_suite, poln_membership, pro_x_check, sub_polyadic_groups, ClosureCounterexample,
    ClosureReport, ConverseReport, ProXCounterexample, ProXReport, SubPolyadic,
};
pub use quotients::{reconstruct_from_quotients, theta_core, CofinalityEntry, ReconstructReport};
pub use tower::{build_tower, sign_chain, v_system, TowerSpec};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyadic::PolyadicGroup;
use crate::structure::hom_verify;

/// A finite partial order on `0..size`. Directedness is computed, not
/// required: thread limits make sense over any finite poset, and only the
/// nonemptiness argument needs upper bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    /// `leq[i * size + j]` iff `i <= j`.
    leq: Vec<bool>,
}

impl Poset {
    /// Reflexive-transitive closure of the given `(lower, upper)` pairs.
    /// Fails if the closure is not antisymmetric.
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(Error::InvalidSystem(format!("order pair ({i}, {j}) outside 0..{size}")));
            }
            leq[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in i + 1..size {
                if leq[i * size + j] && leq[j * size + i] {
                    return Err(Error::InvalidSystem(format!("{i} <= {j} <= {i} with {i} != {j}")));
                }
            }
        }
        Ok(Self { size, leq })
    }

    /// `0 <= 1 <= .. <= size - 1`.
    pub fn chain(size: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..size).map(|i| (i - 1, i)).collect();
        Self::new(size, &pairs).expect("a chain is a partial order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    pub fn upper_bound(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.size).find(|&k| self.leq(i, k) && self.leq(j, k))
    }

    /// First pair without a common upper bound.
    pub fn directedness_witness(&self) -> Option<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (i + 1..self.size).map(move |j| (i, j)))
            .find(|&(i, j)| self.upper_bound(i, j).is_none())
    }

    pub fn is_directed(&self) -> bool {
        self.size > 0 && self.directedness_witness().is_none()
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.size).find(|&g| (0..self.size).all(|i| self.leq(i, g)))
    }

    /// Pairs `(i, j)` with `i <= j`, `i != j`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| (0..self.size).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && self.leq(i, j))
            .collect()
    }

    /// Indices ordered so that every index comes after everything above it.
    pub fn top_down(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.size).collect();
        let above = |i: usize| (0..self.size).filter(|&j| self.leq(i, j)).count();
        order.sort_by_key(|&i| (above(i), i));
        order
    }
}

/// Stages `G_i` and connecting homomorphisms `φ_{ij}: G_i -> G_j` for `j <= i`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    pub poset: Poset,
    pub stages: Vec<PolyadicGroup>,
    maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl InverseSystem {
    /// `maps` holds `((from, to), map)` with `to <= from`. Identity maps may be
    /// omitted; any other missing map is filled in by composing given ones
    /// along a chain, and the system is rejected if that is impossible.
    pub fn new(poset: Poset, stages: Vec<PolyadicGroup>, maps: Vec<((usize, usize), Vec<usize>)>) -> Result<Self> {
        let size = poset.size();
        if stages.len() != size {
            return Err(Error::InvalidSystem(format!("{} stages for a poset of size {size}", stages.len())));
        }
        let mut table = BTreeMap::new();
        for ((from, to), map) in maps {
            if from >= size || to >= size || !poset.leq(to, from) {
                return Err(Error::InvalidSystem(format!("map {from} -> {to} does not go down the order")));
            }
            if map.len() != stages[from].order() || map.iter().any(|&y| y >= stages[to].order()) {
                return Err(Error::InvalidSystem(format!("map {from} -> {to} has the wrong shape")));
            }
            if table.insert((from, to), map).is_some() {
                return Err(Error::InvalidSystem(format!("map {from} -> {to} given twice")));
            }
        }
        for (i, s) in stages.iter().enumerate() {
            table.entry((i, i)).or_insert_with(|| (0..s.order()).collect());
        }
        loop {
            let mut added = false;
            for (j, i) in poset.strict_pairs() {
                if table.contains_key(&(i, j)) {
                    continue;
                }
                let via =
                    (0..size).find(|&k| table.contains_key(&(i, k)) && table.contains_key(&(k, j)) && k != i && k != j);
                if let Some(k) = via {
                    let composed: Vec<usize> = table[&(i, k)].iter().map(|&x| table[&(k, j)][x]).collect();
                    table.insert((i, j), composed);
                    added = true;
                }
            }
            if !added {
                break;
            }
        }
        if let Some((j, i)) = poset.strict_pairs().into_iter().find(|&(j, i)| !table.contains_key(&(i, j))) {
            return Err(Error::InvalidSystem(format!("no map {i} -> {j}")));
        }
        Ok(Self { poset, stages, maps: table })
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn arity(&self) -> usize {
        self.stages.first().map_or(0, PolyadicGroup::arity)
    }

    /// `φ_{ij}` for `j <= i`.
    pub fn map(&self, i: usize, j: usize) -> &[usize] {
        &self.maps[&(i, j)]
    }

    pub fn maps(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        self.maps.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn replace_map(&mut self, from: usize, to: usize, map: Vec<usize>) {
        self.maps.insert((from, to), map);
    }

    /// Product of stage sizes.
    pub fn product_size(&self) -> u128 {
        self.stages.iter().fold(1u128, |acc, s| acc.saturating_mul(s.order() as u128))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum SystemViolation {
    NotDirected { i: usize, j: usize },
    ArityMismatch { stage: usize },
    NotAHom { from: usize, to: usize, tuple: Vec<usize> },
    IdentityLaw { stage: usize, element: usize },
    Composition { i: usize, j: usize, k: usize, element: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemCheck {
    pub valid: bool,
    pub directed: bool,
    pub witness: Option<SystemViolation>,
}

/// Checks every connecting map is a polyadic hom, `φ_{ii} = id`, and
/// `φ_{jk} φ_{ij} = φ_{ik}` for `k <= j <= i`. Directedness is reported
/// separately and does not make the system invalid.
pub fn validate_system(s: &InverseSystem) -> Result<SystemCheck> {
    let directed_witness = s.poset.directedness_witness();
    let directed = s.poset.size() > 0 && directed_witness.is_none();
    let fail = |v| Ok(SystemCheck { valid: false, directed, witness: Some(v) });
    let n = s.arity();
    if let Some(stage) = s.stages.iter().position(|g| g.arity() != n) {
        return fail(SystemViolation::ArityMismatch { stage });
    }
    for (i, g) in s.stages.iter().enumerate() {
        if let Some(element) = g.elements().find(|&x| s.map(i, i)[x] != x) {
            return fail(SystemViolation::IdentityLaw { stage: i, element });
        }
    }
    for (j, i) in s.poset.strict_pairs() {
        let check = hom_verify(s.map(i, j), &s.stages[i], &s.stages[j])?;
        if !check.holds {
            return fail(SystemViolation::NotAHom { from: i, to: j, tuple: check.witness.unwrap_or_default() });
        }
    }
    let size = s.size();
    for i in 0..size {
        for j in 0..size {
            if !s.poset.leq(j, i) {
                continue;
            }
            for k in 0..size {
                if !s.poset.leq(k, j) {
                    continue;
                }
                let (ij, jk, ik) = (s.map(i, j), s.map(j, k), s.map(i, k));
                if let Some(element) = s.stages[i].elements().find(|&x| jk[ij[x]] != ik[x]) {
                    return fail(SystemViolation::Composition { i, j, k, element });
                }
            }
        }
    }
    Ok(SystemCheck {
        valid: true,
        directed,
        witness: directed_witness.map(|(i, j)| SystemViolation::NotDirected { i, j }),
    })
}

use serde::Serialize;

use super::{inverse_limit, stage_kernel, validate_system, InverseSystem, Poset, ThreadLimit};
use crate::budget;
use crate::congruence::{enumerate_congruences, quotient, Congruence};
use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup, GroupClass};
use crate::polyadic::{find_polyadic_isomorphism, for_each_tuple, PolyadicGroup};
use crate::structure::retract_at;

/// Whether the retract at 0 lies in the class. All retracts are isomorphic,
/// so the basepoint does not matter.
pub fn poln_membership(class: &str, p: &PolyadicGroup) -> Result<bool> {
    let class: GroupClass = class.parse()?;
    Ok(class.contains(&retract_at(p, 0)?.group))
}

fn member(class: GroupClass, p: &PolyadicGroup) -> Result<bool> {
    Ok(class.contains(&retract_at(p, 0)?.group))
}

/// `∏ P_k` with the componentwise operation, built from the triples of the
/// factors. Element encoding follows [`FiniteGroup::direct_product`].
pub fn direct_product(factors: &[PolyadicGroup]) -> Result<PolyadicGroup> {
    let first = factors.first().ok_or_else(|| Error::InvalidParams("empty product".into()))?;
    let n = first.arity();
    if let Some(bad) = factors.iter().find(|p| p.arity() != n) {
        return Err(Error::ArityMismatch { expected: n, got: bad.arity() });
    }
    let triples: Vec<_> = factors.iter().map(PolyadicGroup::hg_triple).collect::<Result<_>>()?;
    let groups: Vec<FiniteGroup> = triples.iter().map(|t| t.group.clone()).collect();
    let group = FiniteGroup::direct_product(&groups);
    let radices: Vec<usize> = groups.iter().map(FiniteGroup::order).collect();
    let split = |mut x: usize| {
        let mut digits = vec![0; radices.len()];
        for k in (0..radices.len()).rev() {
            digits[k] = x % radices[k];
            x /= radices[k];
        }
        digits
    };
    let join = |digits: &[usize]| digits.iter().zip(&radices).fold(0, |acc, (&d, &r)| acc * r + d);
    let theta: Vec<usize> = group
        .elements()
        .map(|x| {
            let d: Vec<usize> = split(x).iter().zip(&triples).map(|(&d, t)| t.theta.apply(d)).collect();
            join(&d)
        })
        .collect();
    let theta = Automorphism::new(&group, theta)?;
    let b = join(&triples.iter().map(|t| t.b).collect::<Vec<_>>());
    PolyadicGroup::derive_theta(&group, &theta, b, n)
}

/// A subset closed under `f` and under taking skew elements.
#[derive(Clone, Debug)]
pub struct SubPolyadic {
    pub members: Vec<usize>,
    /// The induced operation, element `k` standing for `members[k]`.
    pub group: PolyadicGroup,
}

fn close(p: &PolyadicGroup, seed: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; p.order()];
    let mut members: Vec<usize> = Vec::new();
    for &x in seed {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    }
    loop {
        let before = members.len();
        for &x in &members.clone() {
            let y = p.skew_of(x);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        let current = members.clone();
        let mut args = vec![0; p.arity()];
        for_each_tuple(current.len(), p.arity(), |t| {
            for (a, &k) in args.iter_mut().zip(t) {
                *a = current[k];
            }
            let v = p.apply(&args);
            if !inside[v] {
                inside[v] = true;
                members.push(v);
            }
            true
        });
        if members.len() == before {
            break;
        }
    }
    members.sort_unstable();
    members
}

/// Every nonempty sub-polyadic group, as joins of the ones generated by a
/// single element. Sorted by size, then members.
pub fn sub_polyadic_groups(p: &PolyadicGroup) -> Result<Vec<SubPolyadic>> {
    let mut all: Vec<Vec<usize>> = Vec::new();
    let singles: Vec<Vec<usize>> = p.elements().map(|x| close(p, &[x])).collect();
    for s in &singles {
        if !all.contains(s) {
            all.push(s.clone());
        }
    }
    let mut frontier = all.clone();
    while let Some(s) = frontier.pop() {
        for single in &singles {
            if single.iter().all(|x| s.binary_search(x).is_ok()) {
                continue;
            }
            let seed: Vec<usize> = s.iter().chain(single).copied().collect();
            let join = close(p, &seed);
            if !all.contains(&join) {
                all.push(join.clone());
                frontier.push(join);
            }
        }
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|members| {
            let k = members.len();
            budget::check(
                "sub-polyadic table entries",
                budget::saturating_pow(k, p.arity()),
                crate::polyadic::MATERIALIZE_LIMIT,
            )?;
            let mut table = Vec::with_capacity(k.pow(p.arity() as u32));
            let mut args = vec![0; p.arity()];
            for_each_tuple(k, p.arity(), |t| {
                for (a, &i) in args.iter_mut().zip(t) {
                    *a = members[i];
                }
                let v = p.apply(&args);
                table.push(members.binary_search(&v).expect("closed subset"));
                true
            });
            let group = PolyadicGroup::from_table(p.arity(), k, table)?;
            Ok(SubPolyadic { members, group })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "operation", rename_all = "snake_case")]
pub enum ClosureCounterexample {
    Subgroup { sample: usize, members: Vec<usize> },
    Quotient { sample: usize, blocks: Vec<Vec<usize>> },
    Product { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    pub class: String,
    pub samples: usize,
    pub members: usize,
    pub subgroups_checked: usize,
    pub quotients_checked: usize,
    pub products_checked: usize,
    pub counterexamples: Vec<ClosureCounterexample>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Largest product carrier tried by the closure suite.
pub const PRODUCT_ORDER_LIMIT: usize = 64;

/// Closure of `Pol_n(X)` under sub-polyadic groups, congruence quotients and
/// products of two members, over the samples that are members.
pub fn poln_closure_suite(class: &str, samples: &[PolyadicGroup]) -> Result<ClosureReport> {
    let parsed: GroupClass = class.parse()?;
    let mut member_indices = Vec::new();
    for (k, p) in samples.iter().enumerate() {
        if member(parsed, p)? {
            member_indices.push(k);
        }
    }
    let mut report = ClosureReport {
        class: parsed.to_string(),
        samples: samples.len(),
        members: member_indices.len(),
        subgroups_checked: 0,
        quotients_checked: 0,
        products_checked: 0,
        counterexamples: Vec::new(),
    };
    for &k in &member_indices {
        let p = &samples[k];
        for sub in sub_polyadic_groups(p)? {
            report.subgroups_checked += 1;
            if !member(parsed, &sub.group)? {
                report.counterexamples.push(ClosureCounterexample::Subgroup { sample: k, members: sub.members });
            }
        }
        for r in enumerate_congruences(p)? {
            report.quotients_checked += 1;
            if !member(parsed, &quotient(p, &r)?.quotient)? {
                report.counterexamples.push(ClosureCounterexample::Quotient { sample: k, blocks: r.blocks() });
            }
        }
    }
    for &i in &member_indices {
        for &j in &member_indices {
            let (a, b) = (&samples[i], &samples[j]);
            if a.arity() != b.arity() || a.order() * b.order() > PRODUCT_ORDER_LIMIT {
                continue;
            }
            report.products_checked += 1;
            if !member(parsed, &direct_product(&[a.clone(), b.clone()])?)? {
                report.counterexamples.push(ClosureCounterexample::Product { left: i, right: j });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProXCounterexample {
    pub stage: usize,
    pub blocks: Vec<Vec<usize>>,
    pub quotient_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConverseReport {
    /// Congruences of the limit, or `None` when the carrier is over the
    /// enumeration budget.
    pub congruences: Option<usize>,
    pub all_quotients_in_class: bool,
    /// The system of the limit's own quotients is valid, has every stage in
    /// the class, and its limit is isomorphic to the original limit.
    pub own_quotient_system: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProXReport {
    pub class: String,
    pub limit_order: usize,
    pub stages_in_class: Vec<bool>,
    /// Every stage-kernel quotient of the limit is in `Pol_n(X)`.
    pub forward: bool,
    pub counterexample: Option<ProXCounterexample>,
    pub converse: ConverseReport,
}

impl ProXReport {
    /// When every stage is a member, so is every stage-kernel quotient.
    pub fn implication_holds(&self) -> bool {
        !self.stages_in_class.iter().all(|&b| b) || self.forward
    }
}

pub fn pro_x_check(s: &InverseSystem, class: &str) -> Result<ProXReport> {
    let parsed: GroupClass = class.parse()?;
    let check = validate_system(s)?;
    if !check.valid {
        return Err(Error::InvalidSystem(format!("{:?}", check.witness)));
    }
    let limit = inverse_limit(s)?;
    let stages_in_class: Vec<bool> = s.stages.iter().map(|g| member(parsed, g)).collect::<Result<_>>()?;

    let mut counterexample = None;
    for stage in 0..s.size() {
        let r = stage_kernel(&limit, stage);
        let q = quotient(&limit.group, &r)?;
        if !member(parsed, &q.quotient)? {
            counterexample = Some(ProXCounterexample { stage, blocks: r.blocks(), quotient_order: q.quotient.order() });
            break;
        }
    }
    let converse = converse(&limit, parsed)?;
    Ok(ProXReport {
        class: parsed.to_string(),
        limit_order: limit.order(),
        stages_in_class,
        forward: counterexample.is_none(),
        counterexample,
        converse,
    })
}

/// If every congruence quotient of the limit is in the class, rebuilds the
/// limit from those quotients.
fn converse(limit: &ThreadLimit, class: GroupClass) -> Result<ConverseReport> {
    let congruences = match enumerate_congruences(&limit.group) {
        Ok(c) => c,
        Err(Error::BudgetExceeded { .. }) => {
            return Ok(ConverseReport { congruences: None, all_quotients_in_class: false, own_quotient_system: None })
        }
        Err(e) => return Err(e),
    };
    let mut quotients = Vec::new();
    let mut all_in = true;
    for r in &congruences {
        let q = quotient(&limit.group, r)?.quotient;
        all_in &= member(class, &q)?;
        quotients.push(q);
    }
    let own_quotient_system =
        if all_in { Some(own_system(&limit.group, &congruences, quotients, class)?) } else { None };
    Ok(ConverseReport { congruences: Some(congruences.len()), all_quotients_in_class: all_in, own_quotient_system })
}

/// The system of `P/R` over all congruences `R`, `R <= R'` iff `R'` refines `R`.
fn own_system(
    p: &PolyadicGroup,
    congruences: &[Congruence],
    quotients: Vec<PolyadicGroup>,
    class: GroupClass,
) -> Result<bool> {
    let size = congruences.len();
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && congruences[j].refines(&congruences[i]))
        .collect();
    let poset = Poset::new(size, &pairs)?;
    let maps: Vec<((usize, usize), Vec<usize>)> = pairs
        .iter()
        .map(|&(j, i)| {
            let mut map = vec![0; congruences[i].num_blocks()];
            for x in p.elements() {
                map[congruences[i].block_of(x)] = congruences[j].block_of(x);
            }
            ((i, j), map)
        })
        .collect();
    let in_class = quotients.iter().map(|q| member(class, q)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
    let system = InverseSystem::new(poset, quotients, maps)?;
    if !validate_system(&system)?.valid {
        return Ok(false);
    }
    let rebuilt = inverse_limit(&system)?;
    Ok(in_class && find_polyadic_isomorphism(&rebuilt.group, p).is_some())
}

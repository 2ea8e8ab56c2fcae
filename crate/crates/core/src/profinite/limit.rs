use std::collections::HashMap;

use serde::Serialize;

use super::{validate_system, InverseSystem};
use crate::budget;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::group::{find_isomorphism, Automorphism, FiniteGroup, GroupHom};
use crate::polyadic::{for_each_tuple, verify_polyadic, PolyadicGroup, Verification, MATERIALIZE_LIMIT};
use crate::structure::retract_at;

/// The set of threads `(x_i)` with `φ_{ij}(x_i) = x_j`, sorted
/// lexicographically, with the componentwise operation on thread indices.
#[derive(Clone, Debug)]
pub struct ThreadLimit {
    pub threads: Vec<Vec<usize>>,
    pub group: PolyadicGroup,
    index: HashMap<Vec<usize>, usize>,
}

impl ThreadLimit {
    pub fn order(&self) -> usize {
        self.threads.len()
    }

    pub fn index_of(&self, thread: &[usize]) -> Option<usize> {
        self.index.get(thread).copied()
    }

    /// Thread index to stage element.
    pub fn projection(&self, stage: usize) -> Vec<usize> {
        self.threads.iter().map(|t| t[stage]).collect()
    }

    /// Applies a stagewise binary operation to every pair of threads and
    /// looks the result up. `None` if some result is not a thread.
    fn pointwise_table(&self, op: impl Fn(usize, usize, usize) -> usize) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.order() * self.order());
        let mut z = vec![0; self.threads.first().map_or(0, Vec::len)];
        for x in &self.threads {
            for y in &self.threads {
                for (i, slot) in z.iter_mut().enumerate() {
                    *slot = op(i, x[i], y[i]);
                }
                out.push(self.index_of(&z)?);
            }
        }
        Some(out)
    }
}

/// Every thread, found depth first: indices are assigned from the top of the
/// order down, and an index below an assigned one is forced.
pub(crate) fn threads(s: &InverseSystem) -> Result<Vec<Vec<usize>>> {
    budget::check("product of stage sizes", s.product_size(), budget::THREAD_PRODUCT)?;
    let order = s.poset.top_down();
    let mut out = Vec::new();
    let mut x = vec![usize::MAX; s.size()];

    fn rec(pos: usize, order: &[usize], s: &InverseSystem, x: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == order.len() {
            out.push(x.clone());
            return;
        }
        let i = order[pos];
        let forced = order[..pos].iter().find(|&&j| s.poset.leq(i, j)).map(|&j| s.map(j, i)[x[j]]);
        let candidates: Vec<usize> = match forced {
            Some(v) => vec![v],
            None => s.stages[i].elements().collect(),
        };
        for v in candidates {
            let ok = order[..pos].iter().all(|&j| {
                (!s.poset.leq(i, j) || s.map(j, i)[x[j]] == v) && (!s.poset.leq(j, i) || s.map(i, j)[v] == x[j])
            });
            if ok {
                x[i] = v;
                rec(pos + 1, order, s, x, out);
            }
        }
        x[i] = usize::MAX;
    }

    rec(0, &order, s, &mut x, &mut out);
    out.sort();
    Ok(out)
}

/// The thread limit with its induced operation, checked closed and
/// polyadic.
pub fn inverse_limit(s: &InverseSystem) -> Result<ThreadLimit> {
    let threads = threads(s)?;
    if threads.is_empty() {
        return Err(Error::EmptyLimit);
    }
    let index: HashMap<Vec<usize>, usize> = threads.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let t = threads.len();
    let n = s.arity();
    budget::check("limit table entries", budget::saturating_pow(t, n), MATERIALIZE_LIMIT)?;
    let mut table = Vec::with_capacity(t.pow(n as u32));
    let mut args = vec![0; n];
    let mut value = vec![0; s.size()];
    let mut closed = true;
    for_each_tuple(t, n, |tuple| {
        for (i, slot) in value.iter_mut().enumerate() {
            for (a, &k) in args.iter_mut().zip(tuple) {
                *a = threads[k][i];
            }
            *slot = s.stages[i].apply(&args);
        }
        match index.get(&value) {
            Some(&k) => table.push(k),
            None => closed = false,
        }
        closed
    });
    if !closed {
        return Err(Error::ConstructionFailed("thread set is not closed under the componentwise operation".into()));
    }
    match verify_polyadic(&table, t, n)? {
        Verification::Valid => {}
        Verification::Invalid(v) => return Err(Error::ConstructionFailed(format!("limit operation: {v}"))),
    }
    let group = PolyadicGroup::from_table_unchecked(n, t, table);
    Ok(ThreadLimit { threads, group, index })
}

/// `x ~ y` iff the threads agree at `stage`.
pub fn stage_kernel(limit: &ThreadLimit, stage: usize) -> Congruence {
    Congruence::from_labels(&limit.projection(stage))
}

/// `Y_i` as a membership mask over the full product, in mixed radix with
/// stage 0 most significant: sequences with `φ_{jk}(x_j) = x_k` whenever
/// `k <= j <= i`.
pub fn y_set(s: &InverseSystem, i: usize) -> Result<Vec<bool>> {
    budget::check("product of stage sizes", s.product_size(), budget::THREAD_PRODUCT)?;
    let radices: Vec<usize> = s.stages.iter().map(PolyadicGroup::order).collect();
    let below: Vec<usize> = (0..s.size()).filter(|&j| s.poset.leq(j, i)).collect();
    let constraints: Vec<(usize, usize)> = below
        .iter()
        .flat_map(|&j| below.iter().filter(move |&&k| s.poset.leq(k, j) && k != j).map(move |&k| (j, k)))
        .collect();
    let total = s.product_size() as usize;
    let mut mask = Vec::with_capacity(total);
    let mut x = vec![0; s.size()];
    for code in 0..total {
        let mut c = code;
        for k in (0..radices.len()).rev() {
            x[k] = c % radices[k];
            c /= radices[k];
        }
        mask.push(constraints.iter().all(|&(j, k)| s.map(j, k)[x[j]] == x[k]));
    }
    Ok(mask)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YSetReport {
    pub sizes: Vec<usize>,
    pub all_nonempty: bool,
    /// `Y_s ⊆ Y_i` whenever `i <= s`.
    pub monotone: bool,
    pub intersection_size: usize,
    pub intersection_is_thread_set: bool,
}

impl YSetReport {
    pub fn holds(&self) -> bool {
        self.all_nonempty && self.monotone && self.intersection_is_thread_set
    }
}

pub fn y_set_report(s: &InverseSystem) -> Result<YSetReport> {
    let masks: Vec<Vec<bool>> = (0..s.size()).map(|i| y_set(s, i)).collect::<Result<_>>()?;
    let sizes: Vec<usize> = masks.iter().map(|m| m.iter().filter(|&&b| b).count()).collect();
    let mut monotone = true;
    for i in 0..s.size() {
        for j in 0..s.size() {
            if s.poset.leq(i, j) {
                monotone &= masks[j].iter().zip(&masks[i]).all(|(&inner, &outer)| !inner || outer);
            }
        }
    }
    let total = s.product_size() as usize;
    let intersection: Vec<bool> = (0..total).map(|c| masks.iter().all(|m| m[c])).collect();
    let radices: Vec<usize> = s.stages.iter().map(PolyadicGroup::order).collect();
    let mut thread_mask = vec![false; total];
    for t in threads(s)? {
        let code = t.iter().zip(&radices).fold(0, |acc, (&x, &r)| acc * r + x);
        thread_mask[code] = true;
    }
    Ok(YSetReport {
        all_nonempty: sizes.iter().all(|&k| k > 0),
        sizes,
        monotone,
        intersection_size: intersection.iter().filter(|&&b| b).count(),
        intersection_is_thread_set: intersection == thread_mask,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitRetractReport {
    pub thread: Vec<usize>,
    pub stage_retract_orders: Vec<usize>,
    /// Every `φ_{ij}` is a homomorphism `ret_{v_i} -> ret_{v_j}`.
    pub maps_are_group_homs: bool,
    pub group_limit_order: usize,
    /// The identity on thread indices is an isomorphism from the limit of the
    /// retracts onto `ret_v` of the limit.
    pub identity_is_isomorphism: bool,
    /// An isomorphism found by search, if the identity is not one.
    pub isomorphism: Option<Vec<usize>>,
}

impl LimitRetractReport {
    pub fn holds(&self) -> bool {
        self.maps_are_group_homs && (self.identity_is_isomorphism || self.isomorphism.is_some())
    }
}

/// Compares the limit of the stage retracts `ret_{v_i}(G_i)` with the
/// retract of the limit at the thread `v`.
pub fn limit_retract(s: &InverseSystem, limit: &ThreadLimit, v: &[usize]) -> Result<LimitRetractReport> {
    let v_index = limit.index_of(v).ok_or_else(|| Error::InvalidThread(format!("{v:?}")))?;
    let retracts: Vec<FiniteGroup> =
        s.stages.iter().zip(v).map(|(g, &a)| retract_at(g, a).map(|r| r.group)).collect::<Result<_>>()?;
    let maps_are_group_homs = s
        .poset
        .strict_pairs()
        .iter()
        .all(|&(j, i)| GroupHom::new(&retracts[i], &retracts[j], s.map(i, j).to_vec()).is_ok());
    let group_table = limit
        .pointwise_table(|i, x, y| retracts[i].mul(x, y))
        .ok_or_else(|| Error::ConstructionFailed("threads are not closed under the retract products".into()))?;
    let group_limit = FiniteGroup::from_flat(limit.order(), group_table)?;
    let ret = retract_at(&limit.group, v_index)?.group;
    let identity_is_isomorphism = group_limit == ret;
    let isomorphism =
        if identity_is_isomorphism { None } else { find_isomorphism(&group_limit, &ret).map(GroupHom::into_map) };
    Ok(LimitRetractReport {
        thread: v.to_vec(),
        stage_retract_orders: retracts.iter().map(FiniteGroup::order).collect(),
        maps_are_group_homs,
        group_limit_order: group_limit.order(),
        identity_is_isomorphism,
        isomorphism,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DerCommuteReport {
    pub threads: usize,
    pub equal: bool,
    /// First tuple of thread indices where the two operations differ.
    pub first_disagreement: Option<Vec<usize>>,
}

/// `lim der_{θ_i,b_i}(G_i)` against `der_{θ̂,b̂}(lim G_i)`. Every stage must
/// carry a triple, and every map must be a group hom commuting with the θ's
/// and sending `b_i` to `b_j`.
pub fn der_limit_commute(s: &InverseSystem) -> Result<DerCommuteReport> {
    let check = validate_system(s)?;
    if !check.valid {
        return Err(Error::InvalidSystem(format!("{:?}", check.witness)));
    }
    let triples: Vec<_> = s
        .stages
        .iter()
        .enumerate()
        .map(|(i, g)| {
            g.hg_backing().cloned().ok_or_else(|| Error::IncompatibleSystem(format!("stage {i} has no triple")))
        })
        .collect::<Result<_>>()?;
    for (j, i) in s.poset.strict_pairs() {
        let map = s.map(i, j);
        let (ti, tj) = (&triples[i], &triples[j]);
        GroupHom::new(&ti.group, &tj.group, map.to_vec())
            .map_err(|e| Error::IncompatibleSystem(format!("map {i} -> {j}: {e}")))?;
        if ti.group.elements().any(|x| map[ti.theta.apply(x)] != tj.theta.apply(map[x])) {
            return Err(Error::IncompatibleSystem(format!("map {i} -> {j} does not commute with theta")));
        }
        if map[ti.b] != tj.b {
            return Err(Error::IncompatibleSystem(format!("map {i} -> {j} does not send b to b")));
        }
    }
    let limit = inverse_limit(s)?;
    let group_table = limit
        .pointwise_table(|i, x, y| triples[i].group.mul(x, y))
        .ok_or_else(|| Error::ConstructionFailed("threads are not closed under the stage products".into()))?;
    let group = FiniteGroup::from_flat(limit.order(), group_table)?;
    let theta_hat: Vec<usize> = limit
        .threads
        .iter()
        .map(|t| {
            let image: Vec<usize> = t.iter().enumerate().map(|(i, &x)| triples[i].theta.apply(x)).collect();
            limit.index_of(&image).ok_or_else(|| Error::ConstructionFailed("θ̂ leaves the thread set".into()))
        })
        .collect::<Result<_>>()?;
    let theta_hat = Automorphism::new(&group, theta_hat)?;
    let b_hat: Vec<usize> = triples.iter().map(|t| t.b).collect();
    let b_hat = limit.index_of(&b_hat).ok_or_else(|| Error::ConstructionFailed("b̂ is not a thread".into()))?;
    let rhs = PolyadicGroup::derive_theta(&group, &theta_hat, b_hat, s.arity())?;
    let first_disagreement = rhs.first_disagreement(&limit.group);
    Ok(DerCommuteReport { threads: limit.order(), equal: first_disagreement.is_none(), first_disagreement })
}

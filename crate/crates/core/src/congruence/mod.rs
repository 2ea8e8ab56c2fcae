//! Congruences of polyadic groups and their quotients.

mod embedding;

pub use embedding::{
    congruence_as_subgroup, psi_embedding, psi_embedding_via_core, psi_report, PairSubgroup, PsiAttempt, PsiEmbedding,
    PsiReport,
};

use serde::Serialize;

use crate::budget;
use crate::error::{Error, Result};
use crate::group::{quotient_group, GroupHom, NormalSubgroup};
use crate::polyadic::{for_each_tuple, verify_polyadic, PolyadicGroup, Verification};
use crate::structure::{retract_at, PolyadicHom};

/// An equivalence relation on the carrier, stored as a block label per
/// element. Labels are canonical: blocks are numbered in order of their
/// smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Relabels any block assignment canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let labels = labels
            .iter()
            .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
                Some(&(_, new)) => new,
                None => {
                    let new = seen.len();
                    seen.push((l, new));
                    new
                }
            })
            .collect();
        Self { labels }
    }

    /// A partition given as a list of blocks over `0..order`.
    pub fn from_blocks(order: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; order];
        for (k, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= order {
                    return Err(Error::OutOfRange { element: x, order });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::BadShape(format!("element {x} lies in two blocks")));
                }
                labels[x] = k;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::BadShape(format!("element {x} lies in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn equality(order: usize) -> Self {
        Self { labels: (0..order).collect() }
    }

    pub fn full(order: usize) -> Self {
        Self { labels: vec![0; order] }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&l| l + 1)
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    /// Blocks in label order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l].push(x);
        }
        out
    }

    /// Smallest element of each block.
    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let reps = self.representatives();
        (0..self.order()).all(|x| other.related(x, reps[self.labels[x]]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<usize> = self.labels.iter().zip(&other.labels).map(|(&a, &b)| a * other.order() + b).collect();
        Self::from_labels(&pairs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityCheck {
    pub holds: bool,
    /// Two argument tuples, related coordinatewise, whose values fall in
    /// different blocks.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Exhaustive compatibility check. Changing one coordinate at a time within
/// its block is enough: any coordinatewise related pair of tuples is joined
/// by such steps.
pub fn is_congruence(p: &PolyadicGroup, r: &Congruence) -> Result<CompatibilityCheck> {
    if r.order() != p.order() {
        return Err(Error::BadShape(format!("partition covers {} elements, carrier has {}", r.order(), p.order())));
    }
    let blocks = r.blocks();
    let mut witness = None;
    for_each_tuple(p.order(), p.arity(), |t| {
        let v = p.apply(t);
        let mut other = t.to_vec();
        for i in 0..t.len() {
            for &y in &blocks[r.block_of(t[i])] {
                if y == t[i] {
                    continue;
                }
                other[i] = y;
                if !r.related(v, p.apply(&other)) {
                    witness = Some((t.to_vec(), other.clone()));
                    return false;
                }
            }
            other[i] = t[i];
        }
        true
    });
    Ok(CompatibilityCheck { holds: witness.is_none(), witness })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], x: usize, y: usize) -> bool {
    let (rx, ry) = (find(parent, x), find(parent, y));
    if rx == ry {
        return false;
    }
    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
    parent[hi] = lo;
    true
}

/// The smallest congruence containing the given pairs.
pub fn congruence_closure(p: &PolyadicGroup, pairs: &[(usize, usize)]) -> Congruence {
    let m = p.order();
    let mut parent: Vec<usize> = (0..m).collect();
    for &(x, y) in pairs {
        union(&mut parent, x, y);
    }
    // Each element is related to its root; compatibility with those pairs
    // generates compatibility with the whole relation.
    loop {
        let mut changed = false;
        let mut other = vec![0; p.arity()];
        for_each_tuple(m, p.arity(), |t| {
            other.copy_from_slice(t);
            for i in 0..t.len() {
                let root = find(&mut parent, t[i]);
                if root != t[i] {
                    other[i] = root;
                    let (u, v) = (p.apply(t), p.apply(&other));
                    changed |= union(&mut parent, u, v);
                    other[i] = t[i];
                }
            }
            true
        });
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..m).map(|x| find(&mut parent, x)).collect();
    Congruence::from_labels(&labels)
}

/// Carriers up to this size are enumerated by scanning every partition.
pub const PARTITION_SCAN_ORDER: usize = 5;

/// All congruences, ordered by decreasing number of blocks and then by
/// labels; the equality relation comes first and the one-block relation
/// last.
pub fn enumerate_congruences(p: &PolyadicGroup) -> Result<Vec<Congruence>> {
    budget::check("congruence carrier", p.order() as u128, budget::CONGRUENCE_CARRIER)?;
    let mut out = if p.order() <= PARTITION_SCAN_ORDER {
        let mut found = Vec::new();
        for labels in set_partitions(p.order()) {
            let r = Congruence { labels };
            if is_congruence(p, &r)?.holds {
                found.push(r);
            }
        }
        found
    } else {
        congruences_by_closure(p)
    };
    sort_congruences(&mut out);
    Ok(out)
}

pub(crate) fn sort_congruences(list: &mut [Congruence]) {
    list.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.labels.cmp(&b.labels)));
}

/// Every congruence is the join of the principal congruences generated by
/// its related pairs, so closing the principal ones under joins finds all.
pub fn congruences_by_closure(p: &PolyadicGroup) -> Vec<Congruence> {
    let m = p.order();
    let mut principal: Vec<Congruence> = Vec::new();
    for x in 0..m {
        for y in x + 1..m {
            let c = congruence_closure(p, &[(x, y)]);
            if !principal.contains(&c) {
                principal.push(c);
            }
        }
    }
    let mut all = vec![Congruence::equality(m)];
    let mut frontier = all.clone();
    while let Some(c) = frontier.pop() {
        let c_reps = c.representatives();
        for q in &principal {
            if q.refines(&c) {
                continue;
            }
            let q_reps = q.representatives();
            let pairs: Vec<(usize, usize)> =
                (0..m).flat_map(|x| [(x, c_reps[c.block_of(x)]), (x, q_reps[q.block_of(x)])]).collect();
            let join = congruence_closure(p, &pairs);
            if !all.contains(&join) {
                all.push(join.clone());
                frontier.push(join);
            }
        }
    }
    all
}

/// Restricted growth strings of length `m`: every set partition exactly once.
fn set_partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            cur[k] = l;
            rec(k + 1, max.max(l), cur, out);
        }
    }
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![0; m];
    rec(1, 0, &mut cur, &mut out);
    out
}

/// `(G/R, f_R)` with its projection.
#[derive(Clone, Debug)]
pub struct QuotientPolyadic {
    pub congruence: Congruence,
    /// Carrier is the block labels.
    pub quotient: PolyadicGroup,
    pub projection: PolyadicHom,
}

/// `f_R([x_1], .., [x_n]) = [f(x_1, .., x_n)]`, evaluated on block
/// representatives, then checked to be a polyadic group.
pub fn quotient(p: &PolyadicGroup, r: &Congruence) -> Result<QuotientPolyadic> {
    let check = is_congruence(p, r)?;
    if !check.holds {
        return Err(Error::NotACongruence(format!("compatibility fails on {:?}", check.witness.unwrap_or_default())));
    }
    let k = r.num_blocks();
    let n = p.arity();
    budget::check("quotient table entries", budget::saturating_pow(k, n), crate::polyadic::MATERIALIZE_LIMIT)?;
    let reps = r.representatives();
    let mut table = Vec::with_capacity(k.pow(n as u32));
    let mut args = vec![0; n];
    for_each_tuple(k, n, |t| {
        for (slot, &c) in args.iter_mut().zip(t) {
            *slot = reps[c];
        }
        table.push(r.block_of(p.apply(&args)));
        true
    });
    match verify_polyadic(&table, k, n)? {
        Verification::Valid => {}
        Verification::Invalid(v) => return Err(Error::ConstructionFailed(format!("quotient table: {v}"))),
    }
    let quotient = PolyadicGroup::from_table_unchecked(n, k, table);
    let projection = PolyadicHom::new(p, &quotient, r.labels().to_vec())?;
    Ok(QuotientPolyadic { congruence: r.clone(), quotient, projection })
}

/// The map `λ(x) = [x]` from `ret_a(P)` to `ret_{[a]}(P/R)`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub basepoint: usize,
    pub quotient_basepoint: usize,
    pub lambda: Vec<usize>,
    pub is_hom: bool,
    pub is_surjective: bool,
    pub kernel: Vec<usize>,
    /// `ker λ` is the block of the retract identity.
    pub kernel_is_identity_block: bool,
    /// Image under `ret_a / ker λ -> ret_{[a]}` of each coset, when that map
    /// is an isomorphism.
    pub induced_isomorphism: Option<Vec<usize>>,
    pub quotient_retract_order: usize,
}

impl LambdaReport {
    pub fn holds(&self) -> bool {
        self.is_hom && self.is_surjective && self.kernel_is_identity_block && self.induced_isomorphism.is_some()
    }
}

pub fn lambda_check(p: &PolyadicGroup, r: &Congruence, a: usize) -> Result<LambdaReport> {
    if a >= p.order() {
        return Err(Error::OutOfRange { element: a, order: p.order() });
    }
    let q = quotient(p, r)?;
    let source = retract_at(p, a)?;
    let qa = r.block_of(a);
    let target = retract_at(&q.quotient, qa)?;
    let lambda = r.labels().to_vec();
    let hom = GroupHom::new(&source.group, &target.group, lambda.clone()).ok();
    let is_hom = hom.is_some();
    let is_surjective = (0..r.num_blocks()).all(|c| lambda.contains(&c));
    let kernel: Vec<usize> = source.group.elements().filter(|&x| lambda[x] == target.group.identity()).collect();
    let identity_block = &r.blocks()[r.block_of(source.group.identity())];
    let kernel_is_identity_block = &kernel == identity_block;

    let induced_isomorphism = hom.and_then(|_| {
        let normal = NormalSubgroup::new(&source.group, &kernel).ok()?;
        let (cosets, projection) = quotient_group(&source.group, &normal).ok()?;
        let mut map = vec![usize::MAX; cosets.order()];
        for x in source.group.elements() {
            let c = projection.apply(x);
            if map[c] == usize::MAX {
                map[c] = lambda[x];
            } else if map[c] != lambda[x] {
                return None;
            }
        }
        let iso = GroupHom::new(&cosets, &target.group, map).ok()?;
        (iso.is_injective() && iso.is_surjective(&target.group)).then(|| iso.into_map())
    });
    Ok(LambdaReport {
        basepoint: a,
        quotient_basepoint: qa,
        lambda,
        is_hom,
        is_surjective,
        kernel,
        kernel_is_identity_block,
        induced_isomorphism,
        quotient_retract_order: target.group.order(),
    })
}

#[cfg(test)]
mod tests;

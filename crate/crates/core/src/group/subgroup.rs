use std::collections::BTreeSet;

use super::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// A subgroup, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

/// A normal subgroup, stored as a sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalSubgroup {
    members: Vec<usize>,
}

fn sorted(members: &[usize]) -> Vec<usize> {
    let mut m = members.to_vec();
    m.sort_unstable();
    m.dedup();
    m
}

fn closure_failure(group: &FiniteGroup, members: &[usize]) -> Option<String> {
    if let Some(&bad) = members.iter().find(|&&x| x >= group.order()) {
        return Some(format!("element {bad} out of range"));
    }
    if members.binary_search(&group.identity()).is_err() {
        return Some("identity missing".into());
    }
    for &x in members {
        if members.binary_search(&group.inv(x)).is_err() {
            return Some(format!("inverse of {x} missing"));
        }
        for &y in members {
            let xy = group.mul(x, y);
            if members.binary_search(&xy).is_err() {
                return Some(format!("{x}*{y}={xy} missing"));
            }
        }
    }
    None
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let members = sorted(members);
        match closure_failure(group, &members) {
            Some(why) => Err(Error::NotASubgroup(why)),
            None => Ok(Self { members }),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self, group: &FiniteGroup) -> bool {
        group.elements().all(|g| self.members.iter().all(|&h| self.contains(group.conj(g, h))))
    }

    pub fn into_normal(self, group: &FiniteGroup) -> Result<NormalSubgroup> {
        if let Some((g, h)) = first_non_normal(group, &self.members) {
            return Err(Error::NotNormal(format!("{g}*{h}*{g}^-1 leaves the subgroup")));
        }
        Ok(NormalSubgroup { members: self.members })
    }
}

fn first_non_normal(group: &FiniteGroup, members: &[usize]) -> Option<(usize, usize)> {
    for g in group.elements() {
        for &h in members {
            if members.binary_search(&group.conj(g, h)).is_err() {
                return Some((g, h));
            }
        }
    }
    None
}

impl NormalSubgroup {
    pub fn new(group: &FiniteGroup, members: &[usize]) -> Result<Self> {
        Subgroup::new(group, members)?.into_normal(group)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self { members: vec![group.identity()] }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self { members: group.elements().collect() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &NormalSubgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &NormalSubgroup) -> NormalSubgroup {
        NormalSubgroup { members: self.members.iter().copied().filter(|&x| other.contains(x)).collect() }
    }
}

/// Coset group `G/N` with its canonical projection. Cosets are labelled in
/// increasing order of their minimal element, which is the representative.
pub fn quotient_group(group: &FiniteGroup, normal: &NormalSubgroup) -> Result<(FiniteGroup, GroupHom)> {
    if let Some((g, h)) = first_non_normal(group, normal.members()) {
        return Err(Error::NotNormal(format!("{g}*{h}*{g}^-1 leaves the subgroup")));
    }
    const UNSET: usize = usize::MAX;
    let mut label = vec![UNSET; group.order()];
    let mut reps = Vec::new();
    for x in group.elements() {
        if label[x] == UNSET {
            let l = reps.len();
            reps.push(x);
            for &n in normal.members() {
                label[group.mul(x, n)] = l;
            }
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(label[group.mul(a, b)]);
        }
    }
    let quotient = FiniteGroup::from_flat(k, table)?;
    let projection = GroupHom::new(group, &quotient, label)?;
    Ok((quotient, projection))
}

/// Every subgroup, sorted by size then lexicographically by members.
///
/// Subgroups are reached by repeatedly joining a known subgroup with one more
/// element, starting from the trivial subgroup, so the power set is never
/// scanned.
pub fn enumerate_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let trivial = vec![group.identity()];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(h) = frontier.pop() {
        for g in group.elements() {
            if h.binary_search(&g).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(g);
            let joined = group.generate(&gens);
            if seen.insert(joined.clone()) {
                frontier.push(joined);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(|members| Subgroup { members }).collect();
    out.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then_with(|| a.members.cmp(&b.members)));
    out
}

/// Every normal subgroup, including the trivial and the whole group,
/// sorted by size then lexicographically.
pub fn enumerate_normal_subgroups(group: &FiniteGroup) -> Vec<NormalSubgroup> {
    enumerate_subgroups(group)
        .into_iter()
        .filter(|h| h.is_normal(group))
        .map(|h| NormalSubgroup { members: h.members })
        .collect()
}

/// Subgroup generated by all commutators `[a, b]`, `a ∈ A`, `b ∈ B`.
pub fn commutator_subgroup(group: &FiniteGroup, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> =
        a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| group.commutator(x, y)).collect();
    gens.sort_unstable();
    gens.dedup();
    group.generate(&gens)
}

/// Largest normal subgroup of `group` inside the subgroup `sub`.
pub fn normal_core(group: &FiniteGroup, sub: &Subgroup) -> NormalSubgroup {
    let members =
        sub.members().iter().copied().filter(|&h| group.elements().all(|g| sub.contains(group.conj(g, h)))).collect();
    NormalSubgroup { members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    /// Exhaustive power-set scan, independent of the join-based enumeration.
    fn brute_normal_subgroups(group: &FiniteGroup) -> Vec<Vec<usize>> {
        let m = group.order();
        let mut out = Vec::new();
        for mask in 1u32..(1 << m) {
            let members: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 1).collect();
            if let Ok(n) = NormalSubgroup::new(group, &members) {
                out.push(n.members().to_vec());
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn z4_normal_subgroups() {
        let z4 = FiniteGroup::cyclic(4);
        let found: Vec<Vec<usize>> = enumerate_normal_subgroups(&z4).iter().map(|n| n.members().to_vec()).collect();
        assert_eq!(found, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(found, brute_normal_subgroups(&z4));
    }

    #[test]
    fn z2_normal_subgroups() {
        let found = enumerate_normal_subgroups(&FiniteGroup::cyclic(2));
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn s3_normal_subgroups() {
        let s3 = library::by_name("S3").unwrap();
        let found: Vec<Vec<usize>> = enumerate_normal_subgroups(&s3).iter().map(|n| n.members().to_vec()).collect();
        assert_eq!(found, brute_normal_subgroups(&s3));
        assert_eq!(found.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 6]);
        // A_3 is the set of even permutations, i.e. the elements of order 1 or 3.
        let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
        assert_eq!(found[1], a3);
        // S3 has six subgroups in total.
        assert_eq!(enumerate_subgroups(&s3).len(), 6);
    }

    #[test]
    fn join_enumeration_matches_power_set_up_to_order_8() {
        for g in library::small_groups() {
            let found: Vec<Vec<usize>> =
                enumerate_normal_subgroups(&g.group).iter().map(|n| n.members().to_vec()).collect();
            assert_eq!(found, brute_normal_subgroups(&g.group), "{}", g.name);
        }
    }

    #[test]
    fn z4_mod_2z4() {
        let z4 = FiniteGroup::cyclic(4);
        let n = NormalSubgroup::new(&z4, &[0, 2]).unwrap();
        let (q, proj) = quotient_group(&z4, &n).unwrap();
        assert_eq!(q, FiniteGroup::cyclic(2));
        assert_eq!(proj.map(), &[0, 1, 0, 1]);
        assert_eq!(proj.kernel(&q), vec![0, 2]);
    }

    #[test]
    fn trivial_quotient_is_relabelled_group() {
        for g in library::small_groups() {
            let (q, proj) = quotient_group(&g.group, &NormalSubgroup::trivial(&g.group)).unwrap();
            assert_eq!(q.order(), g.group.order());
            assert!(proj.is_injective());
        }
    }

    #[test]
    fn klein_mod_first_axis() {
        let v = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
        // (1,0) has index 2.
        let n = NormalSubgroup::new(&v, &v.generate(&[2])).unwrap();
        assert_eq!(n.members(), &[0, 2]);
        let (q, proj) = quotient_group(&v, &n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj.map(), &[0, 1, 0, 1]);
    }

    #[test]
    fn non_normal_quotient_rejected() {
        let s3 = library::by_name("S3").unwrap();
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let sub = Subgroup::new(&s3, &s3.generate(&[t])).unwrap();
        assert!(!sub.is_normal(&s3));
        assert!(matches!(sub.clone().into_normal(&s3), Err(Error::NotNormal(_))));
        assert_eq!(normal_core(&s3, &sub).members(), &[s3.identity()]);
    }
}

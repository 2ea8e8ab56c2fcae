use super::FiniteGroup;
use crate::error::{Error, Result};

/// A homomorphism between two finite groups, stored as an image array.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupHom {
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::BadShape(format!("map has length {}, source order {}", map.len(), source.order())));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.order()) {
            return Err(Error::OutOfRange { element: bad, order: target.order() });
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHom(format!("fails at ({x}, {y})")));
                }
            }
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

    pub fn into_map(self) -> Vec<usize> {
        self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom { map: self.map.iter().map(|&x| other.map[x]).collect() }
    }

    pub fn kernel(&self, target: &FiniteGroup) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == target.identity()).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        self.image().len() == target.order()
    }
}

/// A bijective endomorphism, stored as a permutation of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    map: Vec<usize>,
}

impl Automorphism {
    pub fn new(group: &FiniteGroup, map: Vec<usize>) -> Result<Self> {
        let hom = GroupHom::new(group, group, map)?;
        if !hom.is_injective() {
            return Err(Error::NotBijective);
        }
        Ok(Self { map: hom.into_map() })
    }

    pub fn identity(order: usize) -> Self {
        Self { map: (0..order).collect() }
    }

    /// `x ↦ g x g^{-1}`.
    pub fn inner(group: &FiniteGroup, g: usize) -> Self {
        Self { map: group.elements().map(|x| group.conj(g, x)).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { map: inv }
    }

    pub fn pow(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Automorphism::identity(self.map.len());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Some `g` with `self = conj_g`, if the automorphism is inner.
    pub fn inner_witness(&self, group: &FiniteGroup) -> Option<usize> {
        group.elements().find(|&g| group.elements().all(|x| group.conj(g, x) == self.map[x]))
    }

    pub fn preserves(&self, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        subset.iter().all(|&x| sorted.binary_search(&self.map[x]).is_ok())
    }
}

/// Extends `gens[k] ↦ images[k]` to a homomorphism by walking right
/// multiplication by generators. Returns `None` when the assignment is
/// inconsistent or `gens` does not generate the source.
pub fn extend_hom(source: &FiniteGroup, target: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), images.len());
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = vec![source.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let img = target.mul(map[x], t);
            if map[y] == UNSET {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    if queue.len() != source.order() {
        return None;
    }
    Some(map)
}

fn search_homs(source: &FiniteGroup, target: &FiniteGroup, bijective: bool, mut visit: impl FnMut(Vec<usize>) -> bool) {
    let gens = source.generators();
    let gen_orders: Vec<usize> = gens.iter().map(|&g| source.element_order(g)).collect();
    let target_orders: Vec<usize> = target.elements().map(|y| target.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&k| {
            target
                .elements()
                .filter(|&y| if bijective { target_orders[y] == k } else { k % target_orders[y] == 0 })
                .collect()
        })
        .collect();
    let mut images = vec![0; gens.len()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        bijective: bool,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        if depth == gens.len() {
            if let Some(map) = extend_hom(source, target, gens, images) {
                if bijective {
                    let mut seen = vec![false; target.order()];
                    for &y in &map {
                        if std::mem::replace(&mut seen[y], true) {
                            return true;
                        }
                    }
                }
                return visit(map);
            }
            return true;
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if !rec(depth + 1, source, target, gens, candidates, images, bijective, visit) {
                return false;
            }
        }
        true
    }
    rec(0, source, target, &gens, &candidates, &mut images, bijective, &mut visit);
}

/// All homomorphisms `source -> target`, sorted by image array.
pub fn all_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    search_homs(source, target, false, |map| {
        out.push(GroupHom { map });
        true
    });
    out.sort();
    out.dedup();
    out
}

/// Some isomorphism `g -> h`, found by backtracking on generator images.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    let spectrum = |grp: &FiniteGroup| {
        let mut s: Vec<usize> = grp.elements().map(|x| grp.element_order(x)).collect();
        s.sort_unstable();
        s
    };
    if spectrum(g) != spectrum(h) {
        return None;
    }
    let mut found = None;
    search_homs(g, h, true, |map| {
        found = Some(GroupHom { map });
        false
    });
    found
}

/// The automorphism group as a sorted list of permutations.
pub fn automorphisms(group: &FiniteGroup) -> Vec<Automorphism> {
    let mut out = Vec::new();
    search_homs(group, group, true, |map| {
        out.push(Automorphism { map });
        true
    });
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    #[test]
    fn automorphism_counts() {
        let expect = [("Z2", 1), ("Z4", 2), ("V4", 6), ("S3", 6), ("Z6", 2), ("D4", 8), ("Q8", 24), ("Z2^3", 168)];
        for (name, count) in expect {
            let g = library::by_name(name).unwrap();
            assert_eq!(automorphisms(&g).len(), count, "{name}");
        }
    }

    #[test]
    fn hom_counts_match_brute_force() {
        // Brute force over all maps for tiny orders.
        let groups =
            [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), library::by_name("V4").unwrap()];
        for s in &groups {
            for t in &groups {
                let mut brute = 0;
                let total = t.order().pow(s.order() as u32);
                for code in 0..total {
                    let mut c = code;
                    let map: Vec<usize> = (0..s.order())
                        .map(|_| {
                            let v = c % t.order();
                            c /= t.order();
                            v
                        })
                        .collect();
                    if GroupHom::new(s, t, map).is_ok() {
                        brute += 1;
                    }
                }
                assert_eq!(all_homs(s, t).len(), brute, "{} -> {}", s.order(), t.order());
            }
        }
    }

    #[test]
    fn isomorphism_search() {
        let z2z3 = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
        let iso = find_isomorphism(&z2z3, &FiniteGroup::cyclic(6)).expect("Z2xZ3 = Z6");
        assert!(GroupHom::new(&z2z3, &FiniteGroup::cyclic(6), iso.map().to_vec()).is_ok());
        assert!(find_isomorphism(&FiniteGroup::cyclic(4), &library::by_name("V4").unwrap()).is_none());
        let d4 = library::by_name("D4").unwrap();
        let q8 = library::by_name("Q8").unwrap();
        assert!(find_isomorphism(&d4, &q8).is_none());
    }

    #[test]
    fn pow_and_inner() {
        let s3 = library::by_name("S3").unwrap();
        let g = 1;
        let inner = Automorphism::inner(&s3, g);
        assert_eq!(inner.inner_witness(&s3).map(|w| Automorphism::inner(&s3, w)), Some(inner.clone()));
        assert!(inner.pow(s3.element_order(g) as i64).is_identity());
        assert_eq!(inner.pow(-1), inner.inverse());
    }
}

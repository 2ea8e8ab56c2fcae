//! Finite groups given by Cayley tables.
//!
//! Elements are dense indices `0..order`. Every structure built on top of a
//! [`FiniteGroup`] (automorphisms, subgroups, homomorphisms) refers to
//! elements by these indices.

mod classes;
pub mod library;
mod morphism;
mod subgroup;

pub use classes::{class_predicate, GroupClass};
pub use morphism::{all_homs, automorphisms, extend_hom, find_isomorphism, Automorphism, GroupHom};
pub use subgroup::{
    commutator_subgroup, enumerate_normal_subgroups, enumerate_subgroups, normal_core, quotient_group, NormalSubgroup,
    Subgroup,
};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square Cayley table and builds the group.
    ///
    /// Checks run in the order shape, Latin property, identity, associativity,
    /// so a table with a repeated entry reports `NotLatin` even if it also
    /// lacks an identity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::BadShape("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::BadShape(format!("row {r} has length {}, expected {order}", row.len())));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(order, flat)
    }

    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::BadShape(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= order) {
            return Err(Error::BadShape(format!("entry {bad} out of range 0..{order}")));
        }
        let at = |x: usize, y: usize| table[x * order + y];

        let mut seen = vec![usize::MAX; order];
        for x in 0..order {
            for y in 0..order {
                let v = at(x, y);
                if seen[v] == x {
                    return Err(Error::NotLatin(format!("row {x} repeats entry {v}")));
                }
                seen[v] = x;
            }
        }
        seen.fill(usize::MAX);
        for y in 0..order {
            for x in 0..order {
                let v = at(x, y);
                if seen[v] == y {
                    return Err(Error::NotLatin(format!("column {y} repeats entry {v}")));
                }
                seen[v] = y;
            }
        }

        let identity =
            (0..order).find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x)).ok_or(Error::NoIdentity)?;

        for x in 0..order {
            for y in 0..order {
                let xy = at(x, y);
                for z in 0..order {
                    if at(xy, z) != at(x, at(y, z)) {
                        return Err(Error::NotAssociative(format!("({x}*{y})*{z} != {x}*({y}*{z})")));
                    }
                }
            }
        }

        // Latin rows guarantee exactly one solution.
        let inverse: Vec<usize> =
            (0..order).map(|x| (0..order).find(|&y| at(x, y) == identity).expect("latin row")).collect();
        Ok(Self { order, table, identity, inverse })
    }

    /// Builds a group from a closure that is known to define a group.
    /// Still validated; intended for constructors in this crate.
    pub(crate) fn from_fn(order: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(op(x, y));
            }
        }
        Self::from_flat(order, table)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self { order: 1, table: vec![0], identity: 0, inverse: vec![0] }
    }

    /// Cyclic group `Z_m` under addition mod `m`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m > 0, "cyclic group of order 0");
        let table = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        let inverse = (0..m).map(|x| (m - x) % m).collect();
        Self { order: m, table, identity: 0, inverse }
    }

    /// Direct product with mixed-radix encoding: the first factor is the most
    /// significant digit, so `(g_0, .., g_{k-1})` has index
    /// `((g_0 * m_1 + g_1) * m_2 + g_2) ...`.
    pub fn direct_product(factors: &[FiniteGroup]) -> Self {
        assert!(!factors.is_empty(), "direct product of no factors");
        let radices: Vec<usize> = factors.iter().map(|g| g.order).collect();
        let order: usize = radices.iter().product();
        let mut table = vec![0; order * order];
        let mut xs = vec![0; factors.len()];
        let mut ys = vec![0; factors.len()];
        let mut zs = vec![0; factors.len()];
        for x in 0..order {
            decode_into(x, &radices, &mut xs);
            for y in 0..order {
                decode_into(y, &radices, &mut ys);
                for (k, g) in factors.iter().enumerate() {
                    zs[k] = g.mul(xs[k], ys[k]);
                }
                table[x * order + y] = encode(&zs, &radices);
            }
        }
        let identity = encode(&factors.iter().map(|g| g.identity).collect::<Vec<_>>(), &radices);
        let inverse = (0..order)
            .map(|x| {
                let parts = decode(x, &radices);
                let inv: Vec<usize> = parts.iter().zip(factors).map(|(&p, g)| g.inv(p)).collect();
                encode(&inv, &radices)
            })
            .collect();
        Self { order, table, identity, inverse }
    }

    /// Group generated by permutations of `0..degree`. Elements are the
    /// lexicographically sorted permutations; the product is composition
    /// `(s * t)(i) = s(t(i))`.
    pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { t.iter().map(|&i| s[i]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                if g.len() != degree {
                    return Err(Error::BadShape(format!("permutation {g:?} has wrong degree")));
                }
                let p = compose(&elements[i], g);
                if !elements.contains(&p) {
                    elements.push(p);
                }
            }
            i += 1;
        }
        elements.sort();
        let index = |p: &[usize]| elements.binary_search_by(|e| e.as_slice().cmp(p)).expect("closed");
        let n = elements.len();
        Self::from_fn(n, |x, y| index(&compose(&elements[x], &elements[y])))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g x g^{-1}`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.identity {
            acc = self.mul(acc, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_central(&self, z: usize) -> bool {
        (0..self.order).all(|x| self.mul(x, z) == self.mul(z, x))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&z| self.is_central(z)).collect()
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }

    /// Sorted subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set, chosen greedily from elements of largest order.
    pub fn generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = self.elements().collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// The group on `members` (which must form a subgroup), relabelled to
    /// `0..members.len()` in sorted order. Returns the group and the
    /// embedding into `self`.
    pub fn induced(&self, members: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let index = |x: usize| sorted.binary_search(&x).ok();
        let k = sorted.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &sorted {
            for &y in &sorted {
                let xy = self.mul(x, y);
                table.push(index(xy).ok_or_else(|| Error::NotASubgroup(format!("{x}*{y}={xy} escapes")))?);
            }
        }
        Ok((FiniteGroup::from_flat(k, table)?, sorted))
    }
}

pub(crate) fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

pub(crate) fn decode(mut x: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    decode_into_inner(&mut x, radices, &mut out);
    out
}

fn decode_into(mut x: usize, radices: &[usize], out: &mut [usize]) {
    decode_into_inner(&mut x, radices, out);
}

fn decode_into_inner(x: &mut usize, radices: &[usize], out: &mut [usize]) {
    for k in (0..radices.len()).rev() {
        out[k] = *x % radices[k];
        *x /= radices[k];
    }
}

/// Encodes a pair in `G x H` built by [`FiniteGroup::direct_product`].
pub fn pair_index(x: usize, y: usize, second_order: usize) -> usize {
    x * second_order + y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: usize) -> Vec<Vec<usize>> {
        (0..m).map(|x| (0..m).map(|y| (x + y) % m).collect()).collect()
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn z4_inverse_of_one_is_three() {
        let g = FiniteGroup::from_table(&z(4)).unwrap();
        assert_eq!(g.inv(1), 3);
        assert_eq!(g, FiniteGroup::cyclic(4));
    }

    #[test]
    fn duplicated_entry_is_not_latin() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotLatin(_)), "{err:?}");
    }

    #[test]
    fn latin_but_not_associative() {
        // x - y mod 3 is a Latin square with no two-sided identity.
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + 3 - y) % 3).collect()).collect();
        assert_eq!(FiniteGroup::from_table(&t).unwrap_err(), Error::NoIdentity);
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t).unwrap_err(), Error::NotAssociative(_)));
    }

    #[test]
    fn ragged_table_is_bad_shape() {
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]), Err(Error::BadShape(_))));
        assert!(matches!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]), Err(Error::BadShape(_))));
    }

    #[test]
    fn klein_four_is_elementary() {
        let v = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
        assert_eq!(v.order(), 4);
        for x in 1..4 {
            assert_eq!(v.element_order(x), 2);
        }
    }

    #[test]
    fn single_factor_product_is_unchanged() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(FiniteGroup::direct_product(std::slice::from_ref(&z4)), z4);
    }

    #[test]
    fn z2_times_z3_is_cyclic() {
        let g = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
        let generators: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 6).collect();
        // (1,1) and (1,2) in mixed radix: 1*3+1 = 4, 1*3+2 = 5.
        assert_eq!(generators, vec![4, 5]);
    }

    #[test]
    fn permutation_group_s3() {
        let s3 = FiniteGroup::permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![s3.identity()]);
    }

    #[test]
    fn generators_span_group() {
        for g in library::small_groups() {
            assert_eq!(g.group.generate(&g.group.generators()).len(), g.group.order(), "{}", g.name);
        }
    }
}

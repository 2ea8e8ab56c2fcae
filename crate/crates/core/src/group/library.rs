//! Built-in tables for every group of order at most 8, up to isomorphism.

use super::FiniteGroup;

#[derive(Clone, Debug)]
pub struct SmallGroup {
    pub name: &'static str,
    pub group: FiniteGroup,
}

/// Dihedral group of order `2k`: index `j*k + i` encodes `r^i s^j`.
pub fn dihedral(k: usize) -> FiniteGroup {
    FiniteGroup::from_fn(2 * k, |x, y| {
        let (a, c) = (x % k, x / k);
        let (b, d) = (y % k, y / k);
        let rot = if c == 0 { (a + b) % k } else { (a + k - b) % k };
        ((c + d) % 2) * k + rot
    })
    .expect("dihedral table")
}

/// Quaternion group: index `4*s + u` encodes `(-1)^s * u` with `u` in `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, |x, y| {
        let (s, u) = (x / 4, x % 4);
        let (t, v) = (y / 4, y % 4);
        let (w, unit) = UNITS[u][v];
        ((s + t + w) % 2) * 4 + unit
    })
    .expect("quaternion table")
}

/// Symmetric group on `k` points.
pub fn symmetric(k: usize) -> FiniteGroup {
    if k < 2 {
        return FiniteGroup::trivial();
    }
    let mut swap: Vec<usize> = (0..k).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    FiniteGroup::permutation_group(k, &[swap, cycle]).expect("symmetric group")
}

/// All groups of order at most 8, one per isomorphism class, in order of
/// size and then by name.
pub fn small_groups() -> Vec<SmallGroup> {
    let z = FiniteGroup::cyclic;
    let prod = FiniteGroup::direct_product;
    vec![
        SmallGroup { name: "Z1", group: FiniteGroup::trivial() },
        SmallGroup { name: "Z2", group: z(2) },
        SmallGroup { name: "Z3", group: z(3) },
        SmallGroup { name: "Z4", group: z(4) },
        SmallGroup { name: "V4", group: prod(&[z(2), z(2)]) },
        SmallGroup { name: "Z5", group: z(5) },
        SmallGroup { name: "S3", group: symmetric(3) },
        SmallGroup { name: "Z6", group: z(6) },
        SmallGroup { name: "Z7", group: z(7) },
        SmallGroup { name: "D4", group: dihedral(4) },
        SmallGroup { name: "Q8", group: quaternion() },
        SmallGroup { name: "Z2^3", group: prod(&[z(2), z(2), z(2)]) },
        SmallGroup { name: "Z4xZ2", group: prod(&[z(4), z(2)]) },
        SmallGroup { name: "Z8", group: z(8) },
    ]
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    small_groups().into_iter().find(|g| g.name == name).map(|g| g.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn tables_validate_and_are_pairwise_non_isomorphic() {
        let groups = small_groups();
        for g in &groups {
            // Re-validate from the raw table.
            assert_eq!(FiniteGroup::from_table(&g.group.rows()).unwrap(), g.group, "{}", g.name);
        }
        for (i, g) in groups.iter().enumerate() {
            for h in &groups[i + 1..] {
                assert!(find_isomorphism(&g.group, &h.group).is_none(), "{} ~ {}", g.name, h.name);
            }
        }
    }

    #[test]
    fn expected_shapes() {
        let q8 = quaternion();
        assert_eq!(q8.center().len(), 2);
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 4).count(), 6);
        let d4 = dihedral(4);
        assert_eq!(d4.elements().filter(|&x| d4.element_order(x) == 2).count(), 5);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(dihedral(3).order(), 6);
        assert!(find_isomorphism(&dihedral(3), &symmetric(3)).is_some());
    }
}

//! Shared constructions for unit tests.

use crate::group::{automorphisms, library, Automorphism, FiniteGroup};
use crate::polyadic::PolyadicGroup;

/// `Z_m` with `f(x, y, z) = x - y + z`.
pub fn alternating(m: usize) -> PolyadicGroup {
    let g = FiniteGroup::cyclic(m);
    let neg = Automorphism::new(&g, (0..m).map(|x| (m - x) % m).collect()).unwrap();
    PolyadicGroup::derive_theta(&g, &neg, 0, 3).unwrap()
}

pub fn der(m: usize, n: usize) -> PolyadicGroup {
    PolyadicGroup::derive(&FiniteGroup::cyclic(m), n).unwrap()
}

/// `Z_2 x Z_2` with θ swapping coordinates, `b = 0`, `n = 3`.
pub fn swap_ternary() -> PolyadicGroup {
    let v = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
    // (a, b) has index 2a + b; swap exchanges 1 and 2.
    let swap = Automorphism::new(&v, vec![0, 2, 1, 3]).unwrap();
    PolyadicGroup::derive_theta(&v, &swap, 0, 3).unwrap()
}

/// Every valid `der_{θ,b}` over the built-in groups with
/// `min_order <= |G| <= max_order`.
pub fn hg_samples(arity: usize, min_order: usize, max_order: usize) -> Vec<(String, PolyadicGroup)> {
    let mut out = Vec::new();
    for sg in library::small_groups() {
        let g = &sg.group;
        if g.order() < min_order || g.order() > max_order {
            continue;
        }
        for theta in automorphisms(g) {
            for b in g.elements() {
                if let Ok(p) = PolyadicGroup::derive_theta(g, &theta, b, arity) {
                    out.push((format!("{} θ={:?} b={b}", sg.name, theta.map()), p));
                }
            }
        }
    }
    out
}

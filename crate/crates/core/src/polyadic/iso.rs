use super::{for_each_tuple, PolyadicGroup};

/// Per-element data preserved by every polyadic isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementInvariant {
    pub idempotent: bool,
    pub self_skew: bool,
    pub nary_identity: bool,
    /// Steps before `x ↦ f(x, .., x)` enters its cycle.
    pub power_tail: usize,
    pub power_cycle: usize,
}

pub fn element_invariants(p: &PolyadicGroup) -> Vec<ElementInvariant> {
    let powers: Vec<usize> = p.elements().map(|x| p.power(x)).collect();
    p.elements()
        .map(|x| {
            let mut seen = vec![usize::MAX; p.order()];
            let mut cur = x;
            let mut step = 0;
            while seen[cur] == usize::MAX {
                seen[cur] = step;
                cur = powers[cur];
                step += 1;
            }
            ElementInvariant {
                idempotent: powers[x] == x,
                self_skew: p.skew_of(x) == x,
                nary_identity: p.is_nary_identity(x),
                power_tail: seen[cur],
                power_cycle: step - seen[cur],
            }
        })
        .collect()
}

/// Sorted multiset of element invariants, prefixed by size and arity.
pub fn fingerprint(p: &PolyadicGroup) -> (usize, usize, Vec<ElementInvariant>) {
    let mut inv = element_invariants(p);
    inv.sort();
    (p.arity(), p.order(), inv)
}

/// A bijection `σ` with `σ(f(x_1, .., x_n)) = g(σx_1, .., σx_n)`, found by
/// backtracking over elements in index order. After each assignment every
/// tuple over the assigned prefix is checked.
pub fn find_polyadic_isomorphism(p: &PolyadicGroup, q: &PolyadicGroup) -> Option<Vec<usize>> {
    if p.arity() != q.arity() || p.order() != q.order() {
        return None;
    }
    let pi = element_invariants(p);
    let qi = element_invariants(q);
    let (mut ps, mut qs) = (pi.clone(), qi.clone());
    ps.sort();
    qs.sort();
    if ps != qs {
        return None;
    }
    let m = p.order();
    let mut sigma = vec![usize::MAX; m];
    let mut used = vec![false; m];

    fn consistent(p: &PolyadicGroup, q: &PolyadicGroup, sigma: &[usize], used: &[bool], k: usize) -> bool {
        let n = p.arity();
        let mut ok = true;
        let mut image = vec![0; n];
        for_each_tuple(k + 1, n, |t| {
            if !t.contains(&k) {
                return true;
            }
            for (slot, &x) in image.iter_mut().zip(t) {
                *slot = sigma[x];
            }
            let v = p.apply(t);
            let w = q.apply(&image);
            if v <= k {
                if sigma[v] != w {
                    ok = false;
                }
            } else if used[w] {
                ok = false;
            }
            ok
        });
        ok
    }

    fn rec(
        k: usize,
        p: &PolyadicGroup,
        q: &PolyadicGroup,
        pi: &[super::ElementInvariant],
        qi: &[super::ElementInvariant],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let m = p.order();
        if k == m {
            return true;
        }
        for y in 0..m {
            if used[y] || pi[k] != qi[y] {
                continue;
            }
            sigma[k] = y;
            used[y] = true;
            if consistent(p, q, sigma, used, k) && rec(k + 1, p, q, pi, qi, sigma, used) {
                return true;
            }
            used[y] = false;
            sigma[k] = usize::MAX;
        }
        false
    }

    if rec(0, p, q, &pi, &qi, &mut sigma, &mut used) {
        Some(sigma)
    } else {
        None
    }
}

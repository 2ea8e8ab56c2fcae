use super::{validate_system, InverseSystem, Poset};
use crate::error::{Error, Result};
use crate::group::{Automorphism, FiniteGroup, GroupHom};
use crate::polyadic::PolyadicGroup;

#[derive(Clone, Debug)]
pub enum TowerSpec {
    /// Stages `der_{θ,b}(Z/p^k)` for `k = 1..=depth`, `θ(x) = sign * x`,
    /// with reduction maps. Stage `k - 1` is the one of order `p^k`.
    CyclicPk { p: usize, depth: usize, sign: i8, b: usize, arity: usize },
    /// Stages `der^n(G_k)`; `homs[k]` maps `groups[k + 1]` onto `groups[k]`.
    DerivedChain { groups: Vec<FiniteGroup>, homs: Vec<Vec<usize>>, arity: usize },
}

pub fn build_tower(spec: &TowerSpec) -> Result<InverseSystem> {
    let system = match spec {
        TowerSpec::CyclicPk { p, depth, sign, b, arity } => cyclic_pk(*p, *depth, *sign, *b, *arity)?,
        TowerSpec::DerivedChain { groups, homs, arity } => derived_chain(groups, homs, *arity)?,
    };
    let check = validate_system(&system)?;
    if !check.valid {
        return Err(Error::InvalidParams(format!("tower fails validation: {:?}", check.witness)));
    }
    Ok(system)
}

fn cyclic_pk(p: usize, depth: usize, sign: i8, b: usize, arity: usize) -> Result<InverseSystem> {
    if p < 2 || depth == 0 {
        return Err(Error::InvalidParams(format!("need p >= 2 and depth >= 1, got p = {p}, depth = {depth}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParams(format!("sign must be +1 or -1, got {sign}")));
    }
    let mut stages = Vec::with_capacity(depth);
    let mut modulus = 1usize;
    for _ in 0..depth {
        modulus = modulus.checked_mul(p).ok_or_else(|| Error::InvalidParams("p^depth overflows".into()))?;
        let g = FiniteGroup::cyclic(modulus);
        let theta: Vec<usize> = (0..modulus).map(|x| if sign == 1 { x } else { (modulus - x) % modulus }).collect();
        let theta = Automorphism::new(&g, theta)?;
        let stage = PolyadicGroup::derive_theta(&g, &theta, b % modulus, arity)
            .map_err(|e| Error::InvalidParams(format!("stage Z/{modulus}: {e}")))?;
        stages.push(stage);
    }
    let maps =
        (1..depth).map(|k| ((k, k - 1), (0..stages[k].order()).map(|x| x % stages[k - 1].order()).collect())).collect();
    InverseSystem::new(Poset::chain(depth), stages, maps)
}

fn derived_chain(groups: &[FiniteGroup], homs: &[Vec<usize>], arity: usize) -> Result<InverseSystem> {
    if groups.is_empty() || homs.len() + 1 != groups.len() {
        return Err(Error::InvalidParams(format!(
            "{} groups need {} homs, got {}",
            groups.len(),
            groups.len().saturating_sub(1),
            homs.len()
        )));
    }
    let mut maps = Vec::new();
    for (k, h) in homs.iter().enumerate() {
        GroupHom::new(&groups[k + 1], &groups[k], h.clone())
            .map_err(|e| Error::InvalidParams(format!("hom {}: {e}", k + 1)))?;
        maps.push(((k + 1, k), h.clone()));
    }
    let stages = groups.iter().map(|g| PolyadicGroup::derive(g, arity)).collect::<Result<Vec<_>>>()?;
    InverseSystem::new(Poset::chain(groups.len()), stages, maps)
}

/// Stages `x - y + z` on `Z_2`, `Z_4`, `Z_6` with both larger stages reduced
/// mod 2 onto the first: a V-shaped, non-directed index set.
pub fn v_system() -> InverseSystem {
    let poset = Poset::new(3, &[(0, 1), (0, 2)]).expect("V poset");
    let stages: Vec<PolyadicGroup> = [2, 4, 6]
        .iter()
        .map(|&m| {
            let g = FiniteGroup::cyclic(m);
            let neg = Automorphism::new(&g, (0..m).map(|x| (m - x) % m).collect()).expect("negation");
            PolyadicGroup::derive_theta(&g, &neg, 0, 3).expect("x - y + z")
        })
        .collect();
    let maps = vec![((1, 0), (0..4).map(|x| x % 2).collect()), ((2, 0), (0..6).map(|x| x % 2).collect())];
    InverseSystem::new(poset, stages, maps).expect("V system")
}

/// `der^n(S_3) -> der^n(Z_2)` through the sign map.
pub fn sign_chain(arity: usize) -> Result<InverseSystem> {
    let s3 = crate::group::library::symmetric(3);
    let sign: Vec<usize> = s3.elements().map(|x| usize::from(s3.element_order(x) == 2)).collect();
    build_tower(&TowerSpec::DerivedChain { groups: vec![FiniteGroup::cyclic(2), s3], homs: vec![sign], arity })
}

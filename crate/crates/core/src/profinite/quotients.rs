use serde::Serialize;

use super::{inverse_limit, validate_system, InverseSystem, Poset};
use crate::error::{Error, Result};
use crate::group::{enumerate_normal_subgroups, quotient_group, Automorphism, FiniteGroup, NormalSubgroup};
use crate::polyadic::PolyadicGroup;
use crate::structure::hom_verify;

/// `K = L ∩ θ(L) ∩ .. ∩ θ^{n-1}(L)`, checked normal, θ-invariant and inside `L`.
pub fn theta_core(
    group: &FiniteGroup,
    theta: &Automorphism,
    l: &NormalSubgroup,
    arity: usize,
) -> Result<NormalSubgroup> {
    if theta.pow(arity as i64 - 1).inner_witness(group).is_none() {
        return Err(Error::PreconditionViolated(format!("theta^{} is not inner", arity - 1)));
    }
    let mut members: Vec<usize> = l.members().to_vec();
    let mut power = Automorphism::identity(group.order());
    for _ in 1..arity {
        power = theta.compose(&power);
        members.retain(|&x| l.contains(power.inverse().apply(x)));
    }
    let k = NormalSubgroup::new(group, &members).map_err(|e| Error::ConstructionFailed(format!("core: {e}")))?;
    if !theta.preserves(k.members()) {
        return Err(Error::ConstructionFailed("core is not θ-invariant".into()));
    }
    if !k.is_subset_of(l) {
        return Err(Error::ConstructionFailed("core is not inside L".into()));
    }
    Ok(k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CofinalityEntry {
    pub l: Vec<usize>,
    pub k: Vec<usize>,
    /// `K` is one of the θ-invariant normal subgroups and `K ⊆ L`.
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructReport {
    pub normal_subgroups: usize,
    /// Members of each θ-invariant normal subgroup, one stage each.
    pub invariant_subgroups: Vec<Vec<usize>>,
    pub stage_orders: Vec<usize>,
    pub system_valid: bool,
    pub limit_order: usize,
    /// `x ↦ (xK)_K`, as thread indices, when it is a polyadic isomorphism.
    pub isomorphism: Option<Vec<usize>>,
    pub cofinality: Vec<CofinalityEntry>,
}

impl ReconstructReport {
    pub fn holds(&self) -> bool {
        self.system_valid && self.isomorphism.is_some() && self.cofinality.iter().all(|c| c.ok)
    }
}

/// Rebuilds `P = der_{θ,b}(G)` as the limit of `der_{θ_K, bK}(G/K)` over the
/// θ-invariant normal subgroups `K`, ordered by reverse inclusion.
pub fn reconstruct_from_quotients(p: &PolyadicGroup) -> Result<ReconstructReport> {
    let triple = p.hg_triple()?;
    let (g, theta, b, n) = (&triple.group, &triple.theta, triple.b, p.arity());
    let normals = enumerate_normal_subgroups(g);
    let invariant: Vec<NormalSubgroup> = normals.iter().filter(|k| theta.preserves(k.members())).cloned().collect();

    let mut stages = Vec::new();
    let mut projections = Vec::new();
    for k in &invariant {
        let (q, proj) = quotient_group(g, k)?;
        let mut theta_k = vec![usize::MAX; q.order()];
        for x in g.elements() {
            theta_k[proj.apply(x)] = proj.apply(theta.apply(x));
        }
        let theta_k = Automorphism::new(&q, theta_k)?;
        stages.push(PolyadicGroup::derive_theta(&q, &theta_k, proj.apply(b), n)?);
        projections.push(proj.into_map());
    }

    // i <= j iff K_j ⊆ K_i.
    let size = invariant.len();
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && invariant[j].is_subset_of(&invariant[i]))
        .collect();
    let poset = Poset::new(size, &pairs)?;
    let mut maps = Vec::new();
    for &(j, i) in &pairs {
        // G/K_i -> G/K_j through any representative.
        let mut map = vec![usize::MAX; stages[i].order()];
        for x in g.elements() {
            map[projections[i][x]] = projections[j][x];
        }
        maps.push(((i, j), map));
    }
    let system = InverseSystem::new(poset, stages, maps)?;
    let system_valid = validate_system(&system)?.valid;
    let limit = inverse_limit(&system)?;

    let into_limit: Option<Vec<usize>> =
        g.elements().map(|x| limit.index_of(&projections.iter().map(|pr| pr[x]).collect::<Vec<_>>())).collect();
    let isomorphism = into_limit.filter(|map| {
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == limit.order()
            && limit.order() == p.order()
            && hom_verify(map, p, &limit.group).is_ok_and(|c| c.holds)
    });

    let cofinality = normals
        .iter()
        .map(|l| match theta_core(g, theta, l, n) {
            Ok(k) => CofinalityEntry {
                l: l.members().to_vec(),
                ok: invariant.contains(&k) && k.is_subset_of(l),
                k: k.members().to_vec(),
            },
            Err(_) => CofinalityEntry { l: l.members().to_vec(), k: Vec::new(), ok: false },
        })
        .collect();

    Ok(ReconstructReport {
        normal_subgroups: normals.len(),
        invariant_subgroups: invariant.iter().map(|k| k.members().to_vec()).collect(),
        stage_orders: system.stages.iter().map(PolyadicGroup::order).collect(),
        system_valid,
        limit_order: limit.order(),
        isomorphism,
        cofinality,
    })
}

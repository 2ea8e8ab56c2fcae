//! A congruence as a subgroup of `G × G`, and the embedding
//! `ψ([x]) = (x, 1)R` of the quotient into `der_{θ̄,b̄}((G × G)/R)`.

use serde::Serialize;

use super::{is_congruence, quotient, Congruence};
use crate::error::{Error, Result};
use crate::group::{normal_core, pair_index, quotient_group, Automorphism, FiniteGroup, NormalSubgroup, Subgroup};
use crate::polyadic::PolyadicGroup;
use crate::structure::{hg_decompose, hom_verify, HgDecomposition};

/// `R = {(x, y) : x ~ y}` inside `G × G`, with `G` the retract at 0.
#[derive(Clone, Debug)]
pub struct PairSubgroup {
    pub decomposition: HgDecomposition,
    /// `G × G`, pair `(x, y)` at index `x * m + y`.
    pub product: FiniteGroup,
    pub pairs: Subgroup,
    pub normal: bool,
}

pub fn congruence_as_subgroup(p: &PolyadicGroup, r: &Congruence) -> Result<PairSubgroup> {
    let check = is_congruence(p, r)?;
    if !check.holds {
        return Err(Error::NotACongruence(format!("compatibility fails on {:?}", check.witness.unwrap_or_default())));
    }
    let decomposition = hg_decompose(p, 0)?;
    let g = &decomposition.retract.group;
    let m = g.order();
    let product = FiniteGroup::direct_product(&[g.clone(), g.clone()]);
    let members: Vec<usize> =
        (0..m).flat_map(|x| (0..m).filter(move |&y| r.related(x, y)).map(move |y| pair_index(x, y, m))).collect();
    let pairs = Subgroup::new(&product, &members).map_err(|e| Error::NotASubgroup(format!("R in G x G: {e}")))?;
    let normal = pairs.is_normal(&product);
    Ok(PairSubgroup { decomposition, product, pairs, normal })
}

/// One attempt at building `ψ` over `(G × G)/C` for a normal subgroup `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiAttempt {
    /// `|C|`.
    pub subgroup_order: usize,
    pub target_order: Option<usize>,
    pub well_defined: bool,
    pub injective: bool,
    pub is_hom: bool,
    /// The first step that failed, if any.
    pub failure: Option<String>,
}

impl PsiAttempt {
    pub fn ok(&self) -> bool {
        self.failure.is_none() && self.well_defined && self.injective && self.is_hom
    }

    fn failed(subgroup_order: usize, why: String) -> Self {
        Self {
            subgroup_order,
            target_order: None,
            well_defined: false,
            injective: false,
            is_hom: false,
            failure: Some(why),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PsiEmbedding {
    pub target: PolyadicGroup,
    /// `ψ` indexed by block label.
    pub map: Vec<usize>,
    /// Members of the subgroup `C` that was factored out.
    pub subgroup: Vec<usize>,
}

const NOT_A_HOM: &str = "ψ is not a polyadic hom";

fn attempt(
    p: &PolyadicGroup,
    r: &Congruence,
    sub: &PairSubgroup,
    c: &NormalSubgroup,
) -> (PsiAttempt, Option<PsiEmbedding>) {
    let d = &sub.decomposition;
    let g = &d.retract.group;
    let m = g.order();
    let size = c.len();
    let (q, proj) = match quotient_group(&sub.product, c) {
        Ok(x) => x,
        Err(e) => return (PsiAttempt::failed(size, format!("(G x G)/R: {e}")), None),
    };

    // θ̄((x, y)C) = (θx, θy)C
    let theta_pair = |u: usize| pair_index(d.theta.apply(u / m), d.theta.apply(u % m), m);
    let mut theta_bar = vec![usize::MAX; q.order()];
    for u in sub.product.elements() {
        let (from, to) = (proj.apply(u), proj.apply(theta_pair(u)));
        if theta_bar[from] == usize::MAX {
            theta_bar[from] = to;
        } else if theta_bar[from] != to {
            return (PsiAttempt::failed(size, "θ x θ does not preserve R".into()), None);
        }
    }
    let theta_bar = match Automorphism::new(&q, theta_bar) {
        Ok(t) => t,
        Err(e) => return (PsiAttempt::failed(size, format!("θ̄ is not an automorphism: {e}")), None),
    };
    let b_bar = proj.apply(pair_index(d.b, g.identity(), m));
    let target = PolyadicGroup::derive_theta(&q, &theta_bar, b_bar, p.arity());

    // ψ([x]) = (x, 1)C
    let image = |x: usize| proj.apply(pair_index(x, g.identity(), m));
    let reps = r.representatives();
    let map: Vec<usize> = reps.iter().map(|&x| image(x)).collect();
    let well_defined = p.elements().all(|x| image(x) == map[r.block_of(x)]);
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == map.len();

    let target = match target {
        Ok(t) => t,
        Err(e) => {
            let out = PsiAttempt {
                subgroup_order: size,
                target_order: Some(q.order()),
                well_defined,
                injective,
                is_hom: false,
                failure: Some(format!("der over (G x G)/R: {e}")),
            };
            return (out, None);
        }
    };
    let is_hom = match quotient(p, r) {
        Ok(qp) => hom_verify(&map, &qp.quotient, &target).is_ok_and(|c| c.holds),
        Err(_) => false,
    };
    let failure = if !well_defined {
        Some("ψ is not well defined on blocks".to_string())
    } else if !injective {
        Some("ψ is not injective".to_string())
    } else if !is_hom {
        Some(NOT_A_HOM.to_string())
    } else {
        None
    };
    let out =
        PsiAttempt { subgroup_order: size, target_order: Some(q.order()), well_defined, injective, is_hom, failure };
    let embedding = out.ok().then(|| PsiEmbedding { target, map, subgroup: c.members().to_vec() });
    (out, embedding)
}

fn into_result(a: PsiAttempt, e: Option<PsiEmbedding>) -> Result<PsiEmbedding> {
    if let Some(e) = e {
        return Ok(e);
    }
    let why = a.failure.clone().unwrap_or_default();
    Err(if !a.well_defined && a.target_order.is_some() {
        Error::IllDefined(why)
    } else if !a.injective && a.target_order.is_some() {
        Error::NotInjective(why)
    } else if a.failure.as_deref() == Some(NOT_A_HOM) {
        Error::NotAHom(why)
    } else {
        Error::ConstructionFailed(why)
    })
}

/// `ψ` into `der_{θ̄,b̄}((G × G)/R)`. Needs `R` normal in `G × G`.
pub fn psi_embedding(p: &PolyadicGroup, r: &Congruence) -> Result<PsiEmbedding> {
    let sub = congruence_as_subgroup(p, r)?;
    if !sub.normal {
        return Err(Error::NotNormal("R is not normal in G x G, so (G x G)/R is not a group".into()));
    }
    let c = NormalSubgroup::new(&sub.product, sub.pairs.members())?;
    let (a, e) = attempt(p, r, &sub, &c);
    into_result(a, e)
}

/// `ψ` with `R` replaced by its normal core in `G × G`.
pub fn psi_embedding_via_core(p: &PolyadicGroup, r: &Congruence) -> Result<PsiEmbedding> {
    let sub = congruence_as_subgroup(p, r)?;
    let c = normal_core(&sub.product, &sub.pairs);
    let (a, e) = attempt(p, r, &sub, &c);
    into_result(a, e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub blocks: usize,
    pub r_is_subgroup: bool,
    pub r_is_normal: bool,
    /// `ψ` over `(G × G)/R` itself.
    pub direct: PsiAttempt,
    /// `ψ` over `(G × G)/core(R)`, tried only when `R` is not normal.
    pub via_core: Option<PsiAttempt>,
}

impl PsiReport {
    pub fn holds(&self) -> bool {
        self.r_is_subgroup && self.direct.ok()
    }
}

/// Both attempts, without failing early.
pub fn psi_report(p: &PolyadicGroup, r: &Congruence) -> Result<PsiReport> {
    let sub = match congruence_as_subgroup(p, r) {
        Ok(s) => s,
        Err(Error::NotASubgroup(why)) => {
            return Ok(PsiReport {
                blocks: r.num_blocks(),
                r_is_subgroup: false,
                r_is_normal: false,
                direct: PsiAttempt::failed(0, why),
                via_core: None,
            })
        }
        Err(e) => return Err(e),
    };
    let size = sub.pairs.len();
    let (direct, via_core) = if sub.normal {
        let c = NormalSubgroup::new(&sub.product, sub.pairs.members())?;
        (attempt(p, r, &sub, &c).0, None)
    } else {
        let core = normal_core(&sub.product, &sub.pairs);
        let direct = PsiAttempt::failed(size, "R is not normal in G x G, so (G x G)/R is not a group".into());
        (direct, Some(attempt(p, r, &sub, &core).0))
    };
    Ok(PsiReport { blocks: r.num_blocks(), r_is_subgroup: true, r_is_normal: sub.normal, direct, via_core })
}

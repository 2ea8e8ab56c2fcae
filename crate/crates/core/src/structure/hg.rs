use super::retract::{retract_at, retract_group, Retract};
use crate::error::{Error, Result};
use crate::group::Automorphism;
use crate::polyadic::{HgTriple, PolyadicGroup};

/// A polyadic group written as `der_{θ,b}` of its retract at a basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HgDecomposition {
    pub arity: usize,
    pub retract: Retract,
    pub theta: Automorphism,
    pub b: usize,
}

impl HgDecomposition {
    pub fn basepoint(&self) -> usize {
        self.retract.basepoint
    }

    pub fn triple(&self) -> HgTriple {
        HgTriple { group: self.retract.group.clone(), theta: self.theta.clone(), b: self.b }
    }
}

/// `θ(x) = f(v̄, x, v, .., v)` and `b = f(v̄, .., v̄)` over `ret_v`, computed
/// without the retract cross-checks.
pub(crate) fn sokolov_triple(p: &PolyadicGroup, v: usize) -> Result<HgTriple> {
    let n = p.arity();
    let group = retract_group(p, v)?;
    let v_bar = p.skew_of(v);
    let mut args = vec![v; n];
    args[0] = v_bar;
    let theta_map: Vec<usize> = p
        .elements()
        .map(|x| {
            args[1] = x;
            p.apply(&args)
        })
        .collect();
    let theta = Automorphism::new(&group, theta_map)?;
    let b = p.power(v_bar);
    Ok(HgTriple { group, theta, b })
}

/// Decomposes `P` over `ret_v`. Before returning, checks `θ(b) = b`,
/// `θ^{n-1} = conj_b`, and that the triple reproduces `f` on every tuple.
pub fn hg_decompose(p: &PolyadicGroup, v: usize) -> Result<HgDecomposition> {
    let retract = retract_at(p, v)?;
    let triple = sokolov_triple(p, v).map_err(|e| Error::ConstructionFailed(format!("decomposition at {v}: {e}")))?;
    triple.check(p.arity()).map_err(|(_, why)| Error::ConstructionFailed(format!("decomposition at {v}: {why}")))?;
    let rebuilt = PolyadicGroup::from_triple_unchecked(triple.clone(), p.arity());
    if let Some(t) = rebuilt.first_disagreement(p) {
        return Err(Error::ConstructionFailed(format!("decomposition at {v} does not reproduce f at {t:?}")));
    }
    Ok(HgDecomposition { arity: p.arity(), retract, theta: triple.theta, b: triple.b })
}

/// `der_{θ,b}` of the decomposition's retract group.
pub fn hg_reconstruct(d: &HgDecomposition) -> Result<PolyadicGroup> {
    PolyadicGroup::derive_theta(&d.retract.group, &d.theta, d.b, d.arity)
}

impl PolyadicGroup {
    /// A `(G, θ, b)` description: the backing triple if there is one,
    /// otherwise the decomposition over the retract at 0.
    pub fn hg_triple(&self) -> Result<HgTriple> {
        match self.hg_backing() {
            Some(t) => Ok(t.clone()),
            None => Ok(hg_decompose(self, 0)?.triple()),
        }
    }
}

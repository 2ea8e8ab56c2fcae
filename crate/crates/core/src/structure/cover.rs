//! The Post cover `G*` of a polyadic group.
//!
//! Given `P = der_{θ,b}(G)`, adjoin a formal element `t` with
//! `t x t^{-1} = θ(x)` and `t^{n-1} = b`. Every element of the resulting
//! group is uniquely `x t^k` with `x ∈ G`, `0 <= k < n - 1`, and
//! `x ↦ x t` embeds `P` so that `f(x_1, .., x_n) = (x_1 t)(x_2 t)⋯(x_n t)`.
//! The pair `(x, k)` is stored at index `k * m + x`.

use serde::Serialize;

use super::hg::{hg_decompose, HgDecomposition};
use crate::error::{Error, Result};
use crate::group::{all_homs, extend_hom, find_isomorphism, quotient_group, FiniteGroup, GroupHom, NormalSubgroup};
use crate::polyadic::{for_each_tuple, PolyadicGroup};
use crate::structure::hom::hom_verify;

#[derive(Clone, Debug)]
pub struct PostCover {
    pub cover: FiniteGroup,
    /// Index in `cover` of each carrier element.
    pub embedding: Vec<usize>,
    /// `{(x, 0)}`, isomorphic to the retract.
    pub kernel: NormalSubgroup,
    pub decomposition: HgDecomposition,
}

/// The five defining properties of the cover, each checked separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoverChecks {
    /// The embedded carrier is one coset of the kernel.
    pub coset_of_kernel: bool,
    /// The kernel is isomorphic to a retract.
    pub kernel_isomorphic_to_retract: bool,
    /// `cover / kernel` is cyclic of order `n - 1`.
    pub quotient_cyclic: bool,
    /// `f(x_1, .., x_n)` is the product of the embedded arguments.
    pub product_formula: bool,
    /// The embedded carrier generates the cover.
    pub generated_by_image: bool,
}

impl CoverChecks {
    pub fn all(&self) -> bool {
        self.coset_of_kernel
            && self.kernel_isomorphic_to_retract
            && self.quotient_cyclic
            && self.product_formula
            && self.generated_by_image
    }

    pub fn named(&self) -> [(&'static str, bool); 5] {
        [
            ("coset_of_kernel", self.coset_of_kernel),
            ("kernel_isomorphic_to_retract", self.kernel_isomorphic_to_retract),
            ("quotient_cyclic_of_order_n_minus_1", self.quotient_cyclic),
            ("product_formula", self.product_formula),
            ("generated_by_image", self.generated_by_image),
        ]
    }
}

/// Builds the cover over the retract at 0 and verifies all five properties.
pub fn post_cover(p: &PolyadicGroup) -> Result<PostCover> {
    let decomposition = hg_decompose(p, 0)?;
    let cover = build_cover(&decomposition, p.arity())?;
    let checks = cover.verify(p);
    if !checks.all() {
        let failed: Vec<&str> = checks.named().iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
        return Err(Error::ConstructionFailed(format!("post cover fails {failed:?}")));
    }
    Ok(cover)
}

fn build_cover(d: &HgDecomposition, n: usize) -> Result<PostCover> {
    let g = &d.retract.group;
    let m = g.order();
    let levels = n - 1;
    let theta_powers: Vec<Vec<usize>> = (0..levels).map(|k| d.theta.pow(k as i64).map().to_vec()).collect();
    let cover = FiniteGroup::from_fn(levels * m, |u, w| {
        let (x, k) = (u % m, u / m);
        let (y, l) = (w % m, w / m);
        let mut z = g.mul(x, theta_powers[k][y]);
        let mut s = k + l;
        if s >= levels {
            z = g.mul(z, d.b);
            s -= levels;
        }
        s * m + z
    })
    .map_err(|e| Error::ConstructionFailed(format!("cover table: {e}")))?;
    // x ↦ x t; when n = 2, t = t^{n-1} = b.
    let embedding: Vec<usize> =
        if levels > 1 { (0..m).map(|x| m + x).collect() } else { (0..m).map(|x| g.mul(x, d.b)).collect() };
    let kernel = NormalSubgroup::new(&cover, &(0..m).collect::<Vec<_>>())
        .map_err(|e| Error::ConstructionFailed(format!("kernel: {e}")))?;
    Ok(PostCover { cover, embedding, kernel, decomposition: d.clone() })
}

impl PostCover {
    pub fn order(&self) -> usize {
        self.cover.order()
    }

    pub fn verify(&self, p: &PolyadicGroup) -> CoverChecks {
        let c = &self.cover;
        let n = p.arity();

        let mut image = self.embedding.clone();
        image.sort_unstable();
        image.dedup();
        let g0 = self.embedding[0];
        let mut coset: Vec<usize> = self.kernel.members().iter().map(|&k| c.mul(g0, k)).collect();
        coset.sort_unstable();
        let coset_of_kernel = image.len() == p.order() && coset == image;

        let kernel_isomorphic_to_retract = match c.induced(self.kernel.members()) {
            Ok((k, _)) => find_isomorphism(&k, &self.decomposition.retract.group).is_some(),
            Err(_) => false,
        };

        let quotient_cyclic = match quotient_group(c, &self.kernel) {
            Ok((q, _)) => q.order() == n - 1 && q.is_cyclic(),
            Err(_) => false,
        };

        let mut product_formula = true;
        for_each_tuple(p.order(), n, |t| {
            let prod = c.product(t.iter().map(|&x| self.embedding[x]));
            if prod != self.embedding[p.apply(t)] {
                product_formula = false;
            }
            product_formula
        });

        let generated_by_image = c.generate(&image).len() == c.order();

        CoverChecks {
            coset_of_kernel,
            kernel_isomorphic_to_retract,
            quotient_cyclic,
            product_formula,
            generated_by_image,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UniversalExtension {
    /// `h: G* -> H` with `h ∘ embedding = β`.
    pub hom: GroupHom,
    /// Number of homomorphisms `G* -> H` that agree with `β` on the embedded
    /// carrier, counted exhaustively; `None` when either group has more than
    /// [`UNIQUENESS_SCAN_ORDER`] elements.
    pub agreeing_homs: Option<usize>,
}

pub const UNIQUENESS_SCAN_ORDER: usize = 12;

/// Extends a polyadic homomorphism `β: P -> der^n(H)` to an ordinary
/// homomorphism on the cover.
pub fn universal_extend(
    p: &PolyadicGroup,
    cover: &PostCover,
    target: &FiniteGroup,
    beta: &[usize],
) -> Result<UniversalExtension> {
    let derived = PolyadicGroup::derive(target, p.arity())?;
    let check = hom_verify(beta, p, &derived)?;
    if !check.holds {
        return Err(Error::PreconditionViolated(format!(
            "beta is not a polyadic hom into der^n(H): {:?}",
            check.witness
        )));
    }
    let map = extend_hom(&cover.cover, target, &cover.embedding, beta)
        .ok_or_else(|| Error::ExtensionNotFound("embedding images are inconsistent".into()))?;
    let hom = GroupHom::new(&cover.cover, target, map).map_err(|e| Error::ExtensionNotFound(e.to_string()))?;
    let agreeing_homs =
        (cover.order() <= UNIQUENESS_SCAN_ORDER && target.order() <= UNIQUENESS_SCAN_ORDER).then(|| {
            all_homs(&cover.cover, target)
                .iter()
                .filter(|h| cover.embedding.iter().zip(beta).all(|(&e, &b)| h.apply(e) == b))
                .count()
        });
    Ok(UniversalExtension { hom, agreeing_homs })
}

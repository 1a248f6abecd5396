//! Compactifications by round ideals.
//!
//! A strong inclusion `⊲` on a sub-pcd-lattice `P ⊆ L` determines the
//! compact regular frame `R(P, ⊲)` of round ideals and the dense map
//! `μ: L → R(P)`, `μ⁻(I) = ⋁I`. When `⊲` is compatible with `L`, `μ` is a
//! compactification, and every map into a compact regular frame that `⊲` is
//! finer than extends uniquely along it. Conversely every compactification is
//! recovered, up to isomorphism, from a strong inclusion built out of it.
//!
//! Isomorphisms are always exhibited through the explicit extension maps,
//! never found by search.

mod extension;
mod ideals;
mod witness;

use std::fmt;
use std::sync::Arc;

use crate::framemap::{finer_than, ContinuousMap};
use crate::lattice::{minimal_subcover, Basis, PcdLattice};
use crate::relation::{interpolative_core_on_basis, strong_regularity_failure, StrongInclusion};
use crate::{Error, Result};

pub use extension::{compatibility_failure, explicit_lhd_f, extension_map, is_compatible, lhd_from_maps, mu};
pub use ideals::{
    down_arrow, is_round_ideal, RoundIdealFrame, Strategy, MAX_ENUMERATION_CARRIER, PRINCIPAL_CROSS_CHECK,
};
pub use witness::{cover_interpolants, CoverInterpolants};

/// A dense embedding into a compact regular frame.
#[derive(Clone, Debug)]
pub struct Compactification {
    map: ContinuousMap,
    frame: Option<Arc<RoundIdealFrame>>,
}

impl Compactification {
    /// Checks that `map` is continuous, dense and an embedding, and that its
    /// target is compact and regular with respect to the map's basis.
    pub fn new(map: ContinuousMap) -> Result<Self> {
        if let Some(v) = map.validate().violations.first() {
            return Err(Error::precondition(format!("not a continuous map: {v:?}"), vec![]));
        }
        if let Some(a) = map.density_failure() {
            return Err(Error::precondition("map is not dense", vec![a]));
        }
        if let Some(x) = map.embedding_failure() {
            return Err(Error::precondition("map is not an embedding", vec![x]));
        }
        let k = map.target();
        let parts: Vec<_> = map.basis().iter().collect();
        let sub = minimal_subcover(k, &parts, k.top())?;
        debug_assert_eq!(k.join_all(sub), k.top());
        if let Some(x) = k.regularity_failure(map.basis()) {
            return Err(Error::precondition("codomain is not regular", vec![x]));
        }
        Ok(Compactification { map, frame: None })
    }

    fn with_frame(map: ContinuousMap, frame: Arc<RoundIdealFrame>) -> Result<Self> {
        let mut k = Self::new(map)?;
        k.frame = Some(frame);
        Ok(k)
    }

    pub fn source(&self) -> &Arc<PcdLattice> {
        self.map.source()
    }

    /// The compact regular frame `kL`.
    pub fn target(&self) -> &Arc<PcdLattice> {
        self.map.target()
    }

    pub fn map(&self) -> &ContinuousMap {
        &self.map
    }

    /// The round-ideal frame, when the target was built as one.
    pub fn frame(&self) -> Option<&Arc<RoundIdealFrame>> {
        self.frame.as_ref()
    }
}

/// `γL` with the extensions of the maps it was built from.
#[derive(Clone, Debug)]
pub struct GammaCompactification {
    pub compactification: Compactification,
    pub frame: Arc<RoundIdealFrame>,
    /// `g_i` with `g_i ∘ μ = f_i`, in input order.
    pub extensions: Vec<ContinuousMap>,
}

/// Builds `γL = R(B_𝓕*, ⊲_≺)` from a strongly regular basis `b` of `l` and
/// maps into compact regular frames, where `B_𝓕` adds the images of the
/// maps to `b` and `⊲_≺` is the interpolative core of `≺` on its closure.
pub fn gamma_compactification(l: Arc<PcdLattice>, b: &Basis, maps: &[ContinuousMap]) -> Result<GammaCompactification> {
    b.check_basis_of(&l)?;
    if let Some(x) = strong_regularity_failure(&l, b) {
        return Err(Error::precondition(
            format!("basis is not strongly regular at {}", l.name(x)),
            vec![x],
        ));
    }
    let mut gens: Vec<_> = b.iter().collect();
    for (i, f) in maps.iter().enumerate() {
        extension::check_same_source(f.source(), &l)
            .map_err(|_| Error::Mismatch(format!("map {i} does not start at the lattice")))?;
        let m = f.target();
        if let Some(x) = m.regularity_failure(&m.full_basis()) {
            return Err(Error::precondition(format!("target of map {i} is not regular"), vec![x]));
        }
        let closure = m.pcd_closure(f.basis().iter());
        gens.extend(closure.iter().map(|x| f.extend(x)));
    }
    let p = l.pcd_closure(gens);
    let core = interpolative_core_on_basis(&l, &p);
    if let Some(a) = compatibility_failure(&l, &p, &core) {
        return Err(Error::Internal(format!("⊲≺ is not compatible at {}", l.name(a))));
    }
    let si = StrongInclusion::new(&l, p, core)?;
    let frame = Arc::new(RoundIdealFrame::new(l.clone(), si)?);
    let k = Compactification::with_frame(mu(&frame), frame.clone())?;
    let extensions = maps
        .iter()
        .map(|f| extension_map(&frame, f, &f.target().full_basis()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GammaCompactification {
        compactification: k,
        frame,
        extensions,
    })
}

/// `(P_k, ⊲_k)` built from a compactification, and the isomorphism
/// `g: R(P_k, ⊲_k) → kL` with `g ∘ μ = k`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub frame: Arc<RoundIdealFrame>,
    pub iso: ContinuousMap,
}

impl Reconstruction {
    pub fn carrier(&self) -> &Basis {
        self.frame.carrier()
    }

    pub fn inclusion(&self) -> &StrongInclusion {
        self.frame.inclusion()
    }
}

pub fn from_compactification(k: &Compactification) -> Result<Reconstruction> {
    from_compactification_with_basis(k, &k.target().full_basis())
}

/// As [`from_compactification`], building `P_k` and `⊲_k` from the given
/// sub-pcd-lattice basis of `kL`.
pub fn from_compactification_with_basis(k: &Compactification, b_kl: &Basis) -> Result<Reconstruction> {
    let kl = k.target();
    b_kl.check_basis_of(kl)?;
    b_kl.check_sub_pcd_lattice(kl)?;
    let l = k.source();
    let f = k.map().rebase(b_kl.clone())?;
    let (p, lhd) = extension::lhd_from_basis(l, &f, b_kl)?;
    if let Some(a) = compatibility_failure(l, &p, &lhd) {
        return Err(Error::precondition(
            format!("⊲_k is not compatible at {}", l.name(a)),
            vec![a],
        ));
    }
    let si = StrongInclusion::new(l, p, lhd)?;
    let frame = Arc::new(RoundIdealFrame::new(l.clone(), si)?);
    let iso = extension_map(&frame, &f, b_kl)?;
    if !iso.is_order_isomorphism() {
        return Err(Error::Internal("reconstructed frame is not isomorphic to kL".into()));
    }
    Ok(Reconstruction { frame, iso })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    /// `k1 ≤ k2`: `k1` factors through `k2`.
    Below,
    Above,
    Incomparable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equivalent => "≅",
            Verdict::Below => "≤",
            Verdict::Above => "≥",
            Verdict::Incomparable => "incomparable",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: Verdict,
    /// `h: k2L → k1L` with `h ∘ k2 = k1`, when `k1 ≤ k2`.
    pub k1_through_k2: Option<ContinuousMap>,
    /// `h: k1L → k2L` with `h ∘ k1 = k2`, when `k2 ≤ k1`.
    pub k2_through_k1: Option<ContinuousMap>,
}

/// `k1 ≤ k2` iff `⊲_{k2}` is finer than `k1`; the mediating map is the
/// extension of `k1` through `R(P_{k2}, ⊲_{k2}) ≅ k2L`.
pub fn compare(k1: &Compactification, k2: &Compactification) -> Result<Comparison> {
    extension::check_same_source(k1.source(), k2.source())?;
    let r1 = from_compactification(k1)?;
    let r2 = from_compactification(k2)?;
    let h12 = mediator(k1, &r2, k2)?;
    let h21 = mediator(k2, &r1, k1)?;
    let verdict = match (&h12, &h21) {
        (Some(_), Some(_)) => Verdict::Equivalent,
        (Some(_), None) => Verdict::Below,
        (None, Some(_)) => Verdict::Above,
        (None, None) => Verdict::Incomparable,
    };
    Ok(Comparison {
        verdict,
        k1_through_k2: h12,
        k2_through_k1: h21,
    })
}

/// `h: k2L → k1L` with `h ∘ k2 = k1` if `k1` lies in the class of `k2`.
fn mediator(k1: &Compactification, r2: &Reconstruction, k2: &Compactification) -> Result<Option<ContinuousMap>> {
    if !finer_than(r2.carrier(), r2.inclusion().relation(), k1.map()).is_finer() {
        return Ok(None);
    }
    let g = extension_map(&r2.frame, k1.map(), &k1.target().full_basis())?;
    let h = g.compose(&r2.iso.inverse()?)?;
    if !h.compose(k2.map())?.same_as(k1.map()) {
        return Err(Error::Internal("mediating map does not factor".into()));
    }
    Ok(Some(h))
}

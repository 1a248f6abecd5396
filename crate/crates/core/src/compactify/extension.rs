use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::framemap::{finer_than, same_lattice, ContinuousMap};
use crate::lattice::{Basis, PcdLattice};
use crate::relation::{least_strong_inclusion, Relation};
use crate::{Elem, Error, Result};

use super::RoundIdealFrame;

/// `μ: L → R(P)` with `μ⁻(⇓a) = ⋁⇓a` on the basis `B_d`.
pub fn mu(fr: &RoundIdealFrame) -> ContinuousMap {
    let l = fr.source();
    let assignment: Vec<(Elem, Elem)> = fr
        .basis()
        .iter()
        .map(|i| (i, l.join_all(fr.ideals()[i].ones())))
        .collect();
    ContinuousMap::new(l.clone(), fr.lattice().clone(), fr.basis().clone(), assignment)
        .expect("B_d generates the frame")
}

/// First carrier element `a` with `a ≠ ⋁{x ∈ P : x ⊲ a}`.
pub fn compatibility_failure(l: &PcdLattice, p: &Basis, lhd: &Relation) -> Option<Elem> {
    let cols = lhd.transpose();
    p.iter().find(|&a| {
        let mut below = cols.row(a).clone();
        below.intersect_with(p.bits());
        l.join_all(below.ones()) != a
    })
}

pub fn is_compatible(l: &PcdLattice, p: &Basis, lhd: &Relation) -> bool {
    compatibility_failure(l, p, lhd).is_none()
}

fn check_pcd_basis(m: &PcdLattice, b: &Basis) -> Result<()> {
    b.check_basis_of(m)?;
    b.check_sub_pcd_lattice(m)
}

/// For `f: L → L′` in the class of maps that `⊲` is finer than, the map
/// `g: R(P) → L′` with `g⁻(a) = {c ∈ P : c ≤ f⁻[b] for some b ∈ B′, b ≺ a}`.
/// The result is checked to be continuous and to satisfy `g ∘ μ = f`.
pub fn extension_map(fr: &RoundIdealFrame, f: &ContinuousMap, b_prime: &Basis) -> Result<ContinuousMap> {
    if !same_lattice(f.source(), fr.source()) {
        return Err(Error::Mismatch("map does not start at the frame's source".into()));
    }
    let target = f.target();
    check_pcd_basis(target, b_prime)?;
    let p = fr.carrier();
    let tag = finer_than(p, fr.inclusion().relation(), f);
    if let Some((y, x)) = tag.failure {
        return Err(Error::precondition(
            format!(
                "strong inclusion is not finer than the map at {} ≺ {}",
                target.name(y),
                target.name(x)
            ),
            vec![y, x],
        ));
    }
    let l = fr.source();
    let mut assignment = Vec::new();
    for a in b_prime.iter() {
        let mut ideal = FixedBitSet::with_capacity(l.len());
        for b in b_prime.iter().filter(|&b| target.well_inside(b, a)) {
            ideal.union_with(l.down(f.extend(b)));
        }
        ideal.intersect_with(p.bits());
        let i = fr.ideal_index(&ideal).ok_or_else(|| {
            Error::Internal(format!("g⁻({}) is not a round ideal", target.name(a)))
        })?;
        assignment.push((a, i));
    }
    let g = ContinuousMap::new(fr.lattice().clone(), target.clone(), b_prime.clone(), assignment)?;
    if let Some(v) = g.validate().violations.first() {
        return Err(Error::Internal(format!("extension is not continuous: {v:?}")));
    }
    if !g.compose(&mu(fr))?.same_as(f) {
        return Err(Error::Internal("extension does not factor the map through μ".into()));
    }
    Ok(g)
}

/// The seed `{(f⁻[b], f⁻[a]) : a, b ∈ B, b ≺ a}` of a map on the basis `B`.
pub(crate) fn map_seed(f: &ContinuousMap, b: &Basis) -> Vec<(Elem, Elem)> {
    let m = f.target();
    b.iter()
        .flat_map(|y| b.iter().map(move |x| (y, x)))
        .filter(|&(y, x)| m.well_inside(y, x))
        .map(|(y, x)| (f.extend(y), f.extend(x)))
        .collect()
}

/// The carrier `(S ∪ {f⁻[b] : b ∈ B_i})*` and the least strong inclusion on
/// it containing every `(f⁻[b], f⁻[a])` with `b ≺ a`. Each map is read on
/// the full element set of its target.
pub fn lhd_from_maps(l: &PcdLattice, s: &[Elem], maps: &[ContinuousMap]) -> Result<(Basis, Relation)> {
    let n = l.len();
    let mut seed_elems: Vec<Elem> = s.to_vec();
    let mut seed = Relation::new(n);
    for (i, f) in maps.iter().enumerate() {
        if **f.source() != *l {
            return Err(Error::Mismatch(format!("map {i} does not start at the lattice")));
        }
        let m = f.target();
        let full = m.full_basis();
        if let Some(x) = m.regularity_failure(&full) {
            return Err(Error::precondition(
                format!("target of map {i} is not regular at {}", m.name(x)),
                vec![x],
            ));
        }
        seed_elems.extend(full.iter().map(|b| f.extend(b)));
        for (x, y) in map_seed(f, &full) {
            seed.insert(x, y);
        }
    }
    if let Some(&x) = seed_elems.iter().find(|&&x| x >= n) {
        return Err(Error::malformed(format!("element {x} out of range")));
    }
    let p = l.pcd_closure(seed_elems);
    let lhd = least_strong_inclusion(l, &p, &seed)?;
    Ok((p, lhd))
}

/// `P = {f⁻[b] : b ∈ B}*` and the least strong inclusion on it containing
/// `(f⁻[b], f⁻[a])` for `b ≺ a` in `B`.
pub(crate) fn lhd_from_basis(l: &PcdLattice, f: &ContinuousMap, b: &Basis) -> Result<(Basis, Relation)> {
    let p = l.pcd_closure(b.iter().map(|x| f.extend(x)));
    let seed = Relation::from_pairs(l.len(), map_seed(f, b));
    let lhd = least_strong_inclusion(l, &p, &seed)?;
    Ok((p, lhd))
}

/// `{(x, y) ∈ P × P : x ≤ f⁻(b), f⁻(a) ≤ y for some a, b ∈ B_M with b ≺ a}`.
pub fn explicit_lhd_f(p: &Basis, f: &ContinuousMap, b_m: &Basis) -> Result<Relation> {
    let (l, m) = (f.source(), f.target());
    if let Some(a) = f.pseudocomplement_failure() {
        return Err(Error::precondition(
            format!("map does not preserve the pseudocomplement of {}", m.name(a)),
            vec![a],
        ));
    }
    let mut out = Relation::new(l.len());
    for (lo, hi) in map_seed(f, b_m) {
        let mut above = l.up(hi).clone();
        above.intersect_with(p.bits());
        for x in p.iter().filter(|&x| l.leq(x, lo)) {
            out.row_mut(x).union_with(&above);
        }
    }
    Ok(out)
}

/// The sources of two maps agree.
pub(crate) fn check_same_source(a: &Arc<PcdLattice>, b: &Arc<PcdLattice>) -> Result<()> {
    if same_lattice(a, b) {
        Ok(())
    } else {
        Err(Error::Mismatch("compactifications of different lattices".into()))
    }
}

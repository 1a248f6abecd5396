use crate::lattice::{minimal_subcover, Basis, PcdLattice};
use crate::{Elem, Error, Result};

/// Finite families with `b ≤ ∨p_i ≺ ∨p′_i ≺ ⋁U`, `p_i ≺ p′_i ≺ p″_i` and
/// `p″_i ∈ U`; or `b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverInterpolants {
    Zero,
    Families {
        p: Vec<Elem>,
        p1: Vec<Elem>,
        p2: Vec<Elem>,
    },
}

/// In a compact regular `l` with a sublattice basis `basis`, given
/// `b ≺ ⋁u`: every `u_i` is the join of basis elements two `≺`-steps below
/// it, so `b*` and those elements cover the top. A minimal finite subcover
/// gives the `p_i`; each is then paired with the lowest-index `p′_i` and
/// `p″_i ∈ u` it interpolates through.
pub fn cover_interpolants(l: &PcdLattice, basis: &Basis, b: Elem, u: &[Elem]) -> Result<CoverInterpolants> {
    if let Some(&x) = u.iter().find(|&&x| x >= l.len() || !basis.contains(x)) {
        return Err(Error::precondition("cover element outside the basis", vec![x]));
    }
    let ju = l.join_all(u.iter().copied());
    if !l.well_inside(b, ju) {
        return Err(Error::precondition("element is not well inside the cover", vec![b, ju]));
    }
    if b == l.bottom() {
        return Ok(CoverInterpolants::Zero);
    }
    let wi = l.well_inside_relation();
    // p ≺ p′ ≺ p″ with p″ in u: the lowest-index (p′, p″) for each p.
    let step = |p: Elem| -> Option<(Elem, Elem)> {
        basis.iter().filter(|&q| wi.contains(p, q)).find_map(|q| {
            let mut us: Vec<Elem> = u.iter().copied().filter(|&r| wi.contains(q, r)).collect();
            us.sort_unstable();
            us.first().map(|&r| (q, r))
        })
    };
    let v: Vec<Elem> = basis.iter().filter(|&p| step(p).is_some()).collect();
    let b_star = l.pseudocomplement(b);
    let mut parts = v.clone();
    parts.push(b_star);
    let sub = minimal_subcover(l, &parts, l.top()).map_err(|_| {
        Error::precondition("lattice is not regular enough to cover the top", vec![b])
    })?;
    // Dropping b* keeps b below the join: b ∧ (b* ∨ c) = b ∧ c.
    let (mut p, mut p1, mut p2) = (Vec::new(), Vec::new(), Vec::new());
    for x in sub.into_iter().filter(|x| v.contains(x)) {
        let (q, r) = step(x).expect("members of v interpolate");
        p.push(x);
        p1.push(q);
        p2.push(r);
    }
    Ok(CoverInterpolants::Families { p, p1, p2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_cover() {
        let b3 = PcdLattice::boolean(3).unwrap();
        let full = b3.full_basis();
        // atoms are 1, 2, 4 (masks); cover by {a} ∪ {b}, b-element = {a,b} = 3
        let w = cover_interpolants(&b3, &full, 3, &[1, 2]).unwrap();
        let CoverInterpolants::Families { p, p1, p2 } = w else { panic!() };
        assert!(b3.leq(3, b3.join_all(p.iter().copied())));
        for i in 0..p.len() {
            assert!(b3.well_inside(p[i], p1[i]) && b3.well_inside(p1[i], p2[i]));
            assert!([1, 2].contains(&p2[i]));
        }
        assert_eq!(cover_interpolants(&b3, &full, 0, &[]).unwrap(), CoverInterpolants::Zero);
        assert!(cover_interpolants(&b3, &full, 4, &[1, 2]).is_err());
    }
}

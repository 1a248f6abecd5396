use crate::lattice::{Basis, PcdLattice};
use crate::par::{self, Execution};
use crate::{Elem, Error, Result};

use super::{interpolative_core_on_basis, Relation};

/// Deepest scale the crate will build; a depth-`d` scale has `2^d + 1` values.
pub const MAX_SCALE_DEPTH: u32 = 16;

/// Depth used when none is given: `⌊log₂ n⌋ + 2`, capped. A chain of strictly
/// increasing distinct values has at most `n` entries, so this many halvings
/// exceed what any finite lattice can tell apart.
pub fn default_depth(n: usize) -> u32 {
    (usize::BITS - n.leading_zeros() + 1).min(MAX_SCALE_DEPTH)
}

/// Values of a scale at the dyadic points `k / 2^depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scale {
    pub depth: u32,
    pub values: Vec<Elem>,
}

impl Scale {
    pub fn at(&self, k: usize) -> Elem {
        self.values[k]
    }

    /// First `(k, k')` with `k < k'` but `s(k) ⊀ s(k')`.
    pub fn violation(&self, l: &PcdLattice) -> Option<(usize, usize)> {
        let m = self.values.len();
        (0..m).find_map(|p| {
            (p + 1..m)
                .find(|&q| !l.well_inside(self.values[p], self.values[q]))
                .map(|q| (p, q))
        })
    }
}

/// Scale from `y` to `x` by repeated midpoint interpolation in `lhd`, always
/// taking the lowest-index interpolant.
pub fn build_scale(lhd: &Relation, y: Elem, x: Elem, depth: u32) -> Result<Scale> {
    if depth > MAX_SCALE_DEPTH {
        return Err(Error::TooLarge {
            what: "scale depth",
            size: depth as usize,
            limit: MAX_SCALE_DEPTH as usize,
        });
    }
    if !lhd.contains(y, x) {
        return Err(Error::NoScale {
            from: y.to_string(),
            to: x.to_string(),
        });
    }
    let mut values = vec![y, x];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(2 * values.len() - 1);
        for w in values.windows(2) {
            let z = lhd.interpolant(w[0], w[1]).ok_or_else(|| {
                Error::precondition("relation does not interpolate", vec![w[0], w[1]])
            })?;
            next.extend([w[0], z]);
        }
        next.push(x);
        values = next;
    }
    Ok(Scale { depth, values })
}

/// Pairs `(y, x)` of basis elements joined by a scale through the
/// interpolative core on `b`.
pub fn really_inside_via_scales(l: &PcdLattice, b: &Basis, depth: u32) -> Result<Relation> {
    let core = interpolative_core_on_basis(l, b);
    let n = l.len();
    let rows = par::map_range(Execution::default(), n, |y| -> Result<Vec<Elem>> {
        let mut row = Vec::new();
        if !b.contains(y) {
            return Ok(row);
        }
        for x in b.iter() {
            match build_scale(&core, y, x, depth) {
                Ok(s) => {
                    if let Some((p, q)) = s.violation(l) {
                        return Err(Error::Internal(format!(
                            "scale from {y} to {x} breaks at {p} < {q}"
                        )));
                    }
                    row.push(x);
                }
                Err(Error::NoScale { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(row)
    });
    let mut out = Relation::new(n);
    for (y, row) in rows.into_iter().enumerate() {
        for x in row? {
            out.insert(y, x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_scale() {
        let b2 = PcdLattice::boolean(2).unwrap();
        let s = build_scale(&b2.order_relation(), 0, 3, 2).unwrap();
        // Lowest interpolant of (y, x) under ≤ is y itself.
        assert_eq!(s.values, vec![0, 0, 0, 0, 3]);
        assert_eq!(s.violation(&b2), None);
        let c = build_scale(&b2.order_relation(), 1, 1, 3).unwrap();
        assert!(c.values.iter().all(|&v| v == 1));
    }

    #[test]
    fn chain_has_no_scale_from_middle_to_itself() {
        let c = PcdLattice::chain(["0", "m", "1"]).unwrap();
        let core = interpolative_core_on_basis(&c, &c.full_basis());
        assert!(matches!(build_scale(&core, 1, 1, 2), Err(Error::NoScale { .. })));
        assert!(build_scale(&core, 1, 2, 2).is_ok());
    }

    #[test]
    fn scales_recover_the_core() {
        for l in [
            PcdLattice::chain(["t"]).unwrap(),
            PcdLattice::boolean(3).unwrap(),
            PcdLattice::chain(["0", "a", "b", "1"]).unwrap(),
        ] {
            let b = l.full_basis();
            let r = really_inside_via_scales(&l, &b, default_depth(l.len())).unwrap();
            assert_eq!(r, interpolative_core_on_basis(&l, &b));
        }
        assert_eq!(default_depth(1), 2);
        assert_eq!(default_depth(8), 5);
    }
}

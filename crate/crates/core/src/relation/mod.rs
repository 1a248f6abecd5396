//! Binary relations on lattice elements and the constructions built from
//! them: interpolative cores, strong inclusions and scales.

mod interpolate;
mod scale;
mod strong;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::fixpoint::TokenSet;
use crate::lattice::{Basis, PcdLattice};
use crate::Elem;

pub use interpolate::{
    interpolation_definition, interpolative_core_on_basis, is_strongly_regular_basis, largest_interpolative,
    ordered_sandwich, strong_regularity_failure, Interpolation,
};
pub use scale::{build_scale, default_depth, really_inside_via_scales, Scale, MAX_SCALE_DEPTH};
pub use strong::{
    check_strong_inclusion, check_strong_inclusion_with, least_strong_inclusion, strong_inclusion_definition,
    Counterexample, SiReport,
    StrongInclusion, StrongInclusionRules,
};

/// A relation on `0..n`, stored as one bitset row per left element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<FixedBitSet>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Relation {
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut row = FixedBitSet::with_capacity(n);
        row.insert_range(..);
        Relation { rows: vec![row; n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Self {
        let mut r = Self::new(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub(crate) fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        Relation { rows }
    }

    /// Pair `(x, y)` is token `x * n + y`.
    pub fn from_token_set(n: usize, s: &TokenSet) -> Self {
        Self::from_pairs(n, s.iter().map(|t| (t / n, t % n)))
    }

    pub fn to_token_set(&self) -> TokenSet {
        let n = self.n();
        TokenSet::from_indices(n * n, self.pairs().map(|(x, y)| x * n + y))
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: Elem, y: Elem) {
        self.rows[x].insert(y);
    }

    pub fn remove(&mut self, x: Elem, y: Elem) {
        self.rows[x].set(y, false);
    }

    pub fn row(&self, x: Elem) -> &FixedBitSet {
        &self.rows[x]
    }

    pub(crate) fn row_mut(&mut self, x: Elem) -> &mut FixedBitSet {
        &mut self.rows[x]
    }

    /// `{x : (x, y) ∈ R}`
    pub fn column(&self, y: Elem) -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(self.n());
        for (x, row) in self.rows.iter().enumerate() {
            if row.contains(y) {
                c.insert(x);
            }
        }
        c
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(FixedBitSet::is_clear)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n() == other.n() && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.union_with(b);
        }
        out
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
        out
    }

    /// The pairs lying in `b × b`.
    pub fn restrict(&self, b: &Basis) -> Relation {
        let mut out = Relation::new(self.n());
        for x in b.iter() {
            let mut row = self.rows[x].clone();
            row.intersect_with(b.bits());
            out.rows[x] = row;
        }
        out
    }

    pub fn is_within(&self, b: &Basis) -> bool {
        self.pairs().all(|(x, y)| b.contains(x) && b.contains(y))
    }

    pub fn transpose(&self) -> Relation {
        let n = self.n();
        let mut out = Relation::new(n);
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    /// `R ; S = {(x, z) : ∃y. (x, y) ∈ R, (y, z) ∈ S}`
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.n();
        let mut out = Relation::new(n);
        for x in 0..n {
            for y in self.rows[x].ones() {
                out.rows[x].union_with(&other.rows[y]);
            }
        }
        out
    }

    /// First pair with no interpolant inside the relation, if any.
    pub fn interpolation_failure(&self) -> Option<(Elem, Elem)> {
        let cols = self.transpose();
        self.pairs().find(|&(x, y)| self.rows[x].is_disjoint(&cols.rows[y]))
    }

    pub fn is_interpolative(&self) -> bool {
        self.interpolation_failure().is_none()
    }

    /// Lowest-index `z` with `(x, z)` and `(z, y)` in the relation.
    pub fn interpolant(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.rows[x].ones().find(|&z| self.rows[z].contains(y))
    }

    pub fn display<'a>(&'a self, l: &'a PcdLattice) -> impl fmt::Display + 'a {
        DisplayRelation { r: self, l }
    }
}

struct DisplayRelation<'a> {
    r: &'a Relation,
    l: &'a PcdLattice,
}

impl fmt::Display for DisplayRelation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, y)) in self.r.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", self.l.name(x), self.l.name(y))?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_round_trip_and_algebra() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2), (2, 2)]);
        assert_eq!(Relation::from_token_set(3, &r.to_token_set()), r);
        assert_eq!(r.compose(&r), Relation::from_pairs(3, [(0, 2), (1, 2), (2, 2)]));
        assert_eq!(r.transpose().transpose(), r);
        assert_eq!(r.interpolation_failure(), Some((0, 1)));
        assert_eq!(r.interpolant(1, 2), Some(2));
        assert_eq!(r.restrict(&Basis::from_elems(3, [1, 2])), Relation::from_pairs(3, [(1, 2), (2, 2)]));
    }
}

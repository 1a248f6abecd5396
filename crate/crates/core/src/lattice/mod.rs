//! Finite pseudocomplemented distributive lattices.
//!
//! A [`PcdLattice`] is only ever constructed from tables that pass
//! [`validate`]; every other operation in the crate relies on that.
//! Empty joins are the bottom and empty meets the top throughout.

mod cover;
mod poset;
mod validate;

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::fixpoint::{self, InductiveDefinition, Universe};
use crate::relation::Relation;
use crate::{Elem, Error, Result};

pub use cover::{is_compact, minimal_subcover, Cover};
pub use poset::{DownsetLattice, Poset, MAX_POSET_POINTS};
pub use validate::{validate, validate_with, Axiom, LatticeTables, ValidationReport, Violation};

/// Largest lattice the crate will build.
pub const MAX_ELEMENTS: usize = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct PcdLattice {
    names: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    pstar: Vec<Elem>,
}

impl fmt::Debug for PcdLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcdLattice")
            .field("elements", &self.names)
            .field("covers", &self.covers())
            .finish()
    }
}

impl PcdLattice {
    /// Builds a lattice from generating order pairs; the reflexive-transitive
    /// closure of `pairs` must be a pcd-lattice.
    pub fn from_order(names: Vec<String>, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::malformed("a lattice needs at least one element"));
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "lattice",
                size: n,
                limit: MAX_ELEMENTS,
            });
        }
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::malformed(format!("order pair ({a}, {b}) out of range")));
            }
            leq[a][b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let tables = validate::derive_tables(names, leq).map_err(Error::Invalid)?;
        Self::from_tables(tables)
    }

    pub fn from_tables(tables: LatticeTables) -> Result<Self> {
        if tables.names.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "lattice",
                size: tables.names.len(),
                limit: MAX_ELEMENTS,
            });
        }
        let report = validate(&tables)?;
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        Ok(Self::from_tables_unchecked(tables))
    }

    pub(crate) fn from_tables_unchecked(t: LatticeTables) -> Self {
        let n = t.names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if t.leq[x][y] {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        PcdLattice {
            names: t.names,
            up,
            down,
            meet: t.meet.into_iter().flatten().collect(),
            join: t.join.into_iter().flatten().collect(),
            bottom: t.bottom,
            top: t.top,
            pstar: t.pstar,
        }
    }

    pub fn tables(&self) -> LatticeTables {
        let n = self.len();
        LatticeTables {
            names: self.names.clone(),
            leq: (0..n).map(|x| (0..n).map(|y| self.leq(x, y)).collect()).collect(),
            meet: self.meet.chunks(n).map(<[Elem]>::to_vec).collect(),
            join: self.join.chunks(n).map(<[Elem]>::to_vec).collect(),
            bottom: self.bottom,
            top: self.top,
            pstar: self.pstar.clone(),
        }
    }

    /// The chain `0 < 1 < ... < k-1` labelled by the given names.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let k = names.len();
        Self::from_order(names, (1..k).map(|i| (i - 1, i)))
    }

    /// The Boolean algebra of subsets of `k` atoms.
    pub fn boolean(k: usize) -> Result<Self> {
        Ok(Poset::antichain(k)?.downset_lattice()?.lattice)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name)
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    /// `{y : x ≤ y}`
    pub fn up(&self, x: Elem) -> &FixedBitSet {
        &self.up[x]
    }

    /// `{y : y ≤ x}`
    pub fn down(&self, x: Elem) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.len() + y]
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bottom, |a, x| self.join(a, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |a, x| self.meet(a, x))
    }

    /// `y* = ⋁{c : c ∧ y = 0}`.
    pub fn pseudocomplement(&self, y: Elem) -> Elem {
        self.pstar[y]
    }

    /// `y ≺ x` iff `x ∨ y* = 1`.
    pub fn well_inside(&self, y: Elem, x: Elem) -> bool {
        self.join(x, self.pstar[y]) == self.top
    }

    /// The full well-inside relation, with pairs `(y, x)` for `y ≺ x`.
    pub fn well_inside_relation(&self) -> Relation {
        let n = self.len();
        Relation::from_pairs(
            n,
            self.elements()
                .flat_map(|y| (0..n).map(move |x| (y, x)))
                .filter(|&(y, x)| self.well_inside(y, x)),
        )
    }

    pub fn order_relation(&self) -> Relation {
        Relation::from_rows(self.up.clone())
    }

    pub fn is_complemented(&self, x: Elem) -> bool {
        self.join(x, self.pstar[x]) == self.top
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|x| self.is_complemented(x))
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].ones() {
                if y != x && !(0..n).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn full_basis(&self) -> Basis {
        Basis::full(self.len())
    }

    /// Join of the basis elements well inside `a`.
    fn regular_part(&self, b: &Basis, a: Elem) -> Elem {
        self.join_all(b.iter().filter(|&c| self.well_inside(c, a)))
    }

    /// First basis element that is not the join of basis elements well inside it.
    pub fn regularity_failure(&self, b: &Basis) -> Option<Elem> {
        b.iter().find(|&a| self.regular_part(b, a) != a)
    }

    /// `a = ⋁{c ∈ B : c ≺ a}` for every `a ∈ B`.
    pub fn is_regular(&self, b: &Basis) -> bool {
        self.regularity_failure(b).is_none()
    }

    /// Least subset containing `seed` and closed under pseudocomplement and
    /// finite meets and joins, computed as the least fixpoint of the
    /// corresponding inductive definition on the element universe.
    pub fn pcd_closure(&self, seed: impl IntoIterator<Item = Elem>) -> Basis {
        let n = self.len();
        let universe = Universe::new(0..n).expect("indices are distinct");
        let mut steps: Vec<(Elem, Vec<Elem>)> = seed.into_iter().map(|b| (b, vec![])).collect();
        steps.push((self.bottom, vec![]));
        steps.push((self.top, vec![]));
        for u in 0..n {
            steps.push((self.pstar[u], vec![u]));
            for v in u + 1..n {
                steps.push((self.meet(u, v), vec![u, v]));
                steps.push((self.join(u, v), vec![u, v]));
            }
        }
        let defn = InductiveDefinition::from_indices(universe, steps).expect("steps are in range");
        Basis::from_bits(fixpoint::lfp(&defn).into_bits())
    }
}

/// A subset of a lattice's elements, typically a generating set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Basis {
    bits: FixedBitSet,
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Basis {
    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        Basis { bits }
    }

    pub fn empty(n: usize) -> Self {
        Basis {
            bits: FixedBitSet::with_capacity(n),
        }
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for e in elems {
            bits.insert(e);
        }
        Basis { bits }
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        Basis { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    /// Size of the ambient lattice.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: Elem) {
        self.bits.insert(x);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_subset(&self, other: &Basis) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Basis) -> Basis {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Basis { bits }
    }

    fn check_size(&self, l: &PcdLattice) -> Result<()> {
        if self.universe_len() != l.len() {
            return Err(Error::Mismatch(format!(
                "element set over {} elements used with a lattice of {}",
                self.universe_len(),
                l.len()
            )));
        }
        Ok(())
    }

    /// First element `x` with `x ≠ ⋁{b ∈ B : b ≤ x}`.
    pub fn generation_failure(&self, l: &PcdLattice) -> Option<Elem> {
        l.elements()
            .find(|&x| l.join_all(self.iter().filter(|&b| l.leq(b, x))) != x)
    }

    pub fn generates(&self, l: &PcdLattice) -> bool {
        self.universe_len() == l.len() && self.generation_failure(l).is_none()
    }

    /// Fails unless this set generates `l`.
    pub fn check_basis_of(&self, l: &PcdLattice) -> Result<()> {
        self.check_size(l)?;
        match self.generation_failure(l) {
            None => Ok(()),
            Some(x) => Err(Error::precondition(
                format!("element {} is not the join of the basis elements below it", l.name(x)),
                vec![x],
            )),
        }
    }

    /// Fails unless this set contains 0 and 1 and is closed under ∧, ∨ and *.
    pub fn check_sub_pcd_lattice(&self, l: &PcdLattice) -> Result<()> {
        self.check_size(l)?;
        let fail = |what: &str, w: Vec<Elem>| Err(Error::precondition(format!("not a sub-pcd-lattice: {what}"), w));
        if !self.contains(l.bottom()) || !self.contains(l.top()) {
            return fail("missing bottom or top", vec![]);
        }
        for x in self.iter() {
            if !self.contains(l.pseudocomplement(x)) {
                return fail("not closed under pseudocomplement", vec![x]);
            }
            for y in self.iter() {
                if !self.contains(l.meet(x, y)) {
                    return fail("not closed under meet", vec![x, y]);
                }
                if !self.contains(l.join(x, y)) {
                    return fail("not closed under join", vec![x, y]);
                }
            }
        }
        Ok(())
    }

    pub fn is_sub_pcd_lattice(&self, l: &PcdLattice) -> bool {
        self.check_sub_pcd_lattice(l).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> PcdLattice {
        PcdLattice::chain(["0", "m", "1"]).unwrap()
    }

    fn n5() -> Result<PcdLattice> {
        // 0 < a < b < 1, 0 < c < 1
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        PcdLattice::from_order(names, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
    }

    #[test]
    fn validate_examples() {
        let one = PcdLattice::chain(["t"]).unwrap();
        assert_eq!(one.len(), 1);
        assert!(validate(&one.tables()).unwrap().is_valid());
        let b2 = PcdLattice::boolean(2).unwrap();
        assert!(validate(&b2.tables()).unwrap().is_valid());
        match n5() {
            Err(Error::Invalid(r)) => {
                assert!(r.violates(Axiom::Distributivity));
                assert_eq!(r.violations.len(), 1);
            }
            other => panic!("N5 accepted: {other:?}"),
        }
    }

    #[test]
    fn n5_distributivity_witness_is_real() {
        // Direct triple check on the raw tables, independent of the report.
        let names = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        let mut leq = vec![vec![false; 5]; 5];
        for (x, y) in [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (0, 2), (0, 4), (1, 4)] {
            leq[x][y] = true;
        }
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        let t = validate::derive_tables(names, leq).unwrap();
        // b ∧ (a ∨ c) = b, but (b ∧ a) ∨ (b ∧ c) = a
        assert_eq!(t.meet[2][t.join[1][3]], 2);
        assert_eq!(t.join[t.meet[2][1]][t.meet[2][3]], 1);
        let r = validate(&t).unwrap();
        let v = r.violations.iter().find(|v| v.axiom == Axiom::Distributivity).unwrap();
        let (x, y, z) = (v.witness[0], v.witness[1], v.witness[2]);
        assert_ne!(t.meet[x][t.join[y][z]], t.join[t.meet[x][y]][t.meet[x][z]]);
    }

    #[test]
    fn validate_reports_every_axiom() {
        let mut t = PcdLattice::boolean(2).unwrap().tables();
        t.pstar[1] = t.top;
        t.meet[1][2] = 1;
        let r = validate(&t).unwrap();
        assert!(r.violates(Axiom::Pseudocomplement));
        assert!(r.violates(Axiom::Meet));
        t.meet.pop();
        assert!(matches!(validate(&t), Err(Error::Malformed(_))));
    }

    #[test]
    fn pseudocomplement_examples() {
        let c = chain3();
        assert_eq!(c.pseudocomplement(0), 2);
        assert_eq!(c.pseudocomplement(2), 0);
        assert_eq!(c.pseudocomplement(1), 0);
    }

    #[test]
    fn well_inside_examples() {
        let c = chain3();
        let wi = c.well_inside_relation();
        for x in c.elements() {
            assert!(wi.contains(0, x));
        }
        assert!(!wi.contains(1, 1));
        let b3 = PcdLattice::boolean(3).unwrap();
        assert_eq!(b3.well_inside_relation(), b3.order_relation());
    }

    #[test]
    fn regularity_examples() {
        let b3 = PcdLattice::boolean(3).unwrap();
        assert!(b3.is_regular(&b3.full_basis()));
        let c = chain3();
        assert_eq!(c.regularity_failure(&c.full_basis()), Some(1));
        let one = PcdLattice::chain(["t"]).unwrap();
        assert!(one.is_regular(&one.full_basis()));
    }

    #[test]
    fn pcd_closure_examples() {
        let c = chain3();
        assert_eq!(c.pcd_closure([]), Basis::from_elems(3, [0, 2]));
        assert_eq!(c.pcd_closure(0..3), c.full_basis());
        assert_eq!(c.pcd_closure([1]), c.full_basis());
    }

    #[test]
    fn basis_checks() {
        let b2 = PcdLattice::boolean(2).unwrap();
        // atoms generate
        let atoms = Basis::from_elems(4, [1, 2]);
        assert!(atoms.generates(&b2));
        assert!(!atoms.is_sub_pcd_lattice(&b2));
        assert!(!Basis::from_elems(4, [1]).generates(&b2));
        assert!(b2.full_basis().is_sub_pcd_lattice(&b2));
    }
}

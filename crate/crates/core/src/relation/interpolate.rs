use crate::fixpoint::{self, InductiveDefinition, Operator, TokenSet, Universe};
use crate::lattice::{Basis, PcdLattice};
use crate::Elem;

use super::Relation;

/// Pruning operator whose greatest fixpoint is the largest interpolative
/// subrelation of `r`: a pair survives a round if it has an interpolant in
/// the current set.
pub struct Interpolation<'a> {
    r: &'a Relation,
}

impl<'a> Interpolation<'a> {
    pub fn new(r: &'a Relation) -> Self {
        Interpolation { r }
    }
}

impl Operator for Interpolation<'_> {
    fn universe_len(&self) -> usize {
        self.r.n() * self.r.n()
    }

    fn apply(&self, c: &TokenSet) -> TokenSet {
        let n = self.r.n();
        let cur = Relation::from_token_set(n, c).intersection(self.r);
        let cols = cur.transpose();
        TokenSet::from_indices(
            n * n,
            self.r
                .pairs()
                .filter(|&(x, z)| !cur.row(x).is_disjoint(cols.row(z)))
                .map(|(x, z)| x * n + z),
        )
    }
}

pub fn largest_interpolative(r: &Relation) -> Relation {
    Relation::from_token_set(r.n(), &fixpoint::gfp(&Interpolation::new(r)))
}

/// The same rules as an explicit step list over pair tokens: `((x, z),
/// {(x, y), (y, z)})` for every chain of pairs in `r`. Only sensible for
/// small relations; used to cross-check the implicit operator.
pub fn interpolation_definition(r: &Relation) -> InductiveDefinition<(Elem, Elem)> {
    let n = r.n();
    let universe = Universe::new(r.pairs()).expect("pairs are distinct");
    let steps = r.pairs().flat_map(|(x, z)| {
        (0..n)
            .filter(move |&y| r.contains(x, y) && r.contains(y, z))
            .map(move |y| ((x, z), vec![(x, y), (y, z)]))
    });
    InductiveDefinition::new(universe, steps.collect::<Vec<_>>()).expect("tokens come from the universe")
}

/// `≺₀′`: the largest interpolative relation inside `≺ ∩ (b × b)`.
pub fn interpolative_core_on_basis(l: &PcdLattice, b: &Basis) -> Relation {
    largest_interpolative(&l.well_inside_relation().restrict(b))
}

/// First basis element that is not the join of the basis elements
/// core-below it.
pub fn strong_regularity_failure(l: &PcdLattice, b: &Basis) -> Option<Elem> {
    let core = interpolative_core_on_basis(l, b);
    let cols = core.transpose();
    b.iter().find(|&a| l.join_all(cols.row(a).ones()) != a)
}

pub fn is_strongly_regular_basis(l: &PcdLattice, b: &Basis) -> bool {
    strong_regularity_failure(l, b).is_none()
}

/// `{(x, y) ∈ b × b : x ≤ u, (u, v) ∈ core, v ≤ y for some u, v}`. With the
/// full basis and any relation this is `≤ ∘ R ∘ ≤`.
pub fn ordered_sandwich(l: &PcdLattice, b: &Basis, core: &Relation) -> Relation {
    let n = l.len();
    // Everything above some core-successor of u, within b.
    let reach: Vec<_> = (0..n)
        .map(|u| {
            let mut row = fixedbitset::FixedBitSet::with_capacity(n);
            for v in core.row(u).ones() {
                row.union_with(l.up(v));
            }
            row.intersect_with(b.bits());
            row
        })
        .collect();
    let mut out = Relation::new(n);
    for x in b.iter() {
        for u in l.up(x).ones() {
            out.row_mut(x).union_with(&reach[u]);
        }
    }
    out
}

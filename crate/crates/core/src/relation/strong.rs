use std::fmt;

use fixedbitset::FixedBitSet;

use crate::fixpoint::{self, InductiveDefinition, Operator, TokenSet, Universe};
use crate::lattice::{Basis, PcdLattice};
use crate::par::{self, Execution};
use crate::{Elem, Error, Result};

use super::Relation;

/// Why one strong-inclusion condition fails: `pair` is missing from the
/// relation (conditions 1–5), lies outside `≺` (6), or has no interpolant
/// (7). `from` lists the pairs of the relation that force it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub pair: (Elem, Elem),
    pub from: Vec<(Elem, Elem)>,
}

/// The outcome of each of the seven conditions, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiReport {
    pub conditions: [Option<Counterexample>; 7],
}

impl SiReport {
    /// Condition `i`, numbered from 1.
    pub fn holds(&self, i: usize) -> bool {
        self.conditions[i - 1].is_none()
    }

    pub fn is_strong_inclusion(&self) -> bool {
        self.conditions.iter().all(Option::is_none)
    }

    pub fn first_failure(&self) -> Option<(usize, &Counterexample)> {
        self.conditions
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.as_ref().map(|c| (i + 1, c)))
    }
}

impl fmt::Display for SiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.conditions.iter().enumerate() {
            match c {
                None => writeln!(f, "condition {}: ok", i + 1)?,
                Some(c) => writeln!(f, "condition {}: fails at {:?} (from {:?})", i + 1, c.pair, c.from)?,
            }
        }
        Ok(())
    }
}

fn check_carrier(l: &PcdLattice, on: &Basis) -> Result<()> {
    on.check_sub_pcd_lattice(l)
}

/// Evaluates conditions 1–7 for `lhd` on the sub-pcd-lattice `on`.
pub fn check_strong_inclusion(l: &PcdLattice, lhd: &Relation, on: &Basis) -> Result<SiReport> {
    check_strong_inclusion_with(l, lhd, on, Execution::default())
}

pub fn check_strong_inclusion_with(l: &PcdLattice, lhd: &Relation, on: &Basis, exec: Execution) -> Result<SiReport> {
    check_carrier(l, on)?;
    if lhd.n() != l.len() {
        return Err(Error::Mismatch(format!(
            "relation over {} elements used with a lattice of {}",
            lhd.n(),
            l.len()
        )));
    }
    if let Some((x, y)) = lhd.pairs().find(|&(x, y)| !on.contains(x) || !on.contains(y)) {
        return Err(Error::precondition("relation leaves its carrier", vec![x, y]));
    }
    let n = l.len();
    let (bot, top) = (l.bottom(), l.top());
    let missing = |pair: (Elem, Elem), from: Vec<(Elem, Elem)>| Counterexample { pair, from };

    let c1 = [(bot, bot), (top, top)]
        .into_iter()
        .find(|&(x, y)| !lhd.contains(x, y))
        .map(|p| missing(p, vec![]));

    let c2 = par::find_first(exec, n, |a| {
        lhd.row(a).ones().find_map(|b| {
            on.iter().filter(|&x| l.leq(x, a)).find_map(|x| {
                on.iter()
                    .find(|&y| l.leq(b, y) && !lhd.contains(x, y))
                    .map(|y| missing((x, y), vec![(a, b)]))
            })
        })
    });

    let c3 = par::find_first(exec, n, |x| {
        let row = lhd.row(x);
        row.ones().find_map(|a| {
            row.ones()
                .find(|&b| !lhd.contains(x, l.meet(a, b)))
                .map(|b| missing((x, l.meet(a, b)), vec![(x, a), (x, b)]))
        })
    });

    let cols = lhd.transpose();
    let c4 = par::find_first(exec, n, |x| {
        lhd.row(x).ones().find_map(|a| {
            cols.row(a)
                .ones()
                .find(|&y| !lhd.contains(l.join(x, y), a))
                .map(|y| missing((l.join(x, y), a), vec![(x, a), (y, a)]))
        })
    });

    let c5 = lhd
        .pairs()
        .find(|&(a, b)| !lhd.contains(l.pseudocomplement(b), l.pseudocomplement(a)))
        .map(|(a, b)| missing((l.pseudocomplement(b), l.pseudocomplement(a)), vec![(a, b)]));

    let c6 = lhd
        .pairs()
        .find(|&(x, y)| !l.well_inside(x, y))
        .map(|p| missing(p, vec![]));

    let c7 = lhd
        .pairs()
        .find(|&(x, y)| lhd.row(x).is_disjoint(cols.row(y)))
        .map(|p| missing(p, vec![]));

    Ok(SiReport {
        conditions: [c1, c2, c3, c4, c5, c6, c7],
    })
}

/// The rules generating the least strong inclusion containing a seed:
/// the seed pairs, `(0,0)`, `(1,1)`, and closure under conditions 2–5 on
/// the carrier `p`. Pair `(x, y)` is token `x * n + y`.
pub struct StrongInclusionRules<'a> {
    l: &'a PcdLattice,
    p: &'a Basis,
    seed: &'a Relation,
}

impl<'a> StrongInclusionRules<'a> {
    pub fn new(l: &'a PcdLattice, p: &'a Basis, seed: &'a Relation) -> Self {
        StrongInclusionRules { l, p, seed }
    }
}

impl Operator for StrongInclusionRules<'_> {
    fn universe_len(&self) -> usize {
        self.l.len() * self.l.len()
    }

    fn apply(&self, c: &TokenSet) -> TokenSet {
        let (l, p) = (self.l, self.p);
        let n = l.len();
        let cur = Relation::from_token_set(n, c).restrict(p);
        let mut out = self.seed.clone();
        out.insert(l.bottom(), l.bottom());
        out.insert(l.top(), l.top());

        // Condition 2: everything in p above some b with (a, b) ∈ C,
        // collected per a, then pushed down to every x ≤ a.
        let above: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in cur.row(a).ones() {
                    row.union_with(l.up(b));
                }
                row.intersect_with(p.bits());
                row
            })
            .collect();
        for x in p.iter() {
            for a in l.up(x).ones() {
                out.row_mut(x).union_with(&above[a]);
            }
        }
        // Condition 3.
        for x in p.iter() {
            let row: Vec<Elem> = cur.row(x).ones().collect();
            for (i, &a) in row.iter().enumerate() {
                for &b in &row[i..] {
                    out.insert(x, l.meet(a, b));
                }
            }
        }
        // Condition 4.
        let cols = cur.transpose();
        for a in p.iter() {
            let col: Vec<Elem> = cols.row(a).ones().collect();
            for (i, &x) in col.iter().enumerate() {
                for &y in &col[i..] {
                    out.insert(l.join(x, y), a);
                }
            }
        }
        // Condition 5.
        for (a, b) in cur.pairs() {
            out.insert(l.pseudocomplement(b), l.pseudocomplement(a));
        }
        out.to_token_set()
    }
}

/// The same rules as an explicit step list over the pairs of `p × p`.
/// Quartic in `|p|`; intended for cross-checking on small carriers.
pub fn strong_inclusion_definition(l: &PcdLattice, p: &Basis, seed: &Relation) -> InductiveDefinition<(Elem, Elem)> {
    let elems: Vec<Elem> = p.iter().collect();
    let universe = Universe::new(elems.iter().flat_map(|&x| elems.iter().map(move |&y| (x, y)))).expect("distinct");
    let mut steps: Vec<((Elem, Elem), Vec<(Elem, Elem)>)> = seed.pairs().map(|s| (s, vec![])).collect();
    steps.push(((l.bottom(), l.bottom()), vec![]));
    steps.push(((l.top(), l.top()), vec![]));
    for &a in &elems {
        for &b in &elems {
            for &x in elems.iter().filter(|&&x| l.leq(x, a)) {
                for &y in elems.iter().filter(|&&y| l.leq(b, y)) {
                    steps.push(((x, y), vec![(a, b)]));
                }
            }
            steps.push(((l.pseudocomplement(b), l.pseudocomplement(a)), vec![(a, b)]));
        }
    }
    for &x in &elems {
        for &a in &elems {
            for &b in &elems {
                steps.push(((x, l.meet(a, b)), vec![(x, a), (x, b)]));
                steps.push(((l.join(x, a), b), vec![(x, b), (a, b)]));
            }
        }
    }
    InductiveDefinition::new(universe, steps).expect("carrier is closed")
}

/// The least relation containing `seed` and closed under conditions 1–5 on
/// `p`. The seed must lie inside `≺` and interpolate; the result is then a
/// strong inclusion.
pub fn least_strong_inclusion(l: &PcdLattice, p: &Basis, seed: &Relation) -> Result<Relation> {
    check_carrier(l, p)?;
    if seed.n() != l.len() {
        return Err(Error::Mismatch(format!(
            "seed over {} elements used with a lattice of {}",
            seed.n(),
            l.len()
        )));
    }
    if let Some((x, y)) = seed.pairs().find(|&(x, y)| !p.contains(x) || !p.contains(y)) {
        return Err(Error::precondition(
            format!("seed pair ({}, {}) leaves the carrier", l.name(x), l.name(y)),
            vec![x, y],
        ));
    }
    if let Some((x, y)) = seed.pairs().find(|&(x, y)| !l.well_inside(x, y)) {
        return Err(Error::precondition(
            format!("seed pair ({}, {}) is not well inside", l.name(x), l.name(y)),
            vec![x, y],
        ));
    }
    if let Some((x, y)) = seed.interpolation_failure() {
        return Err(Error::precondition(
            format!("seed pair ({}, {}) has no interpolant in the seed", l.name(x), l.name(y)),
            vec![x, y],
        ));
    }
    let rules = StrongInclusionRules::new(l, p, seed);
    Ok(Relation::from_token_set(l.len(), &fixpoint::lfp(&rules)))
}

/// A relation checked to be a strong inclusion on its carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongInclusion {
    carrier: Basis,
    rel: Relation,
}

impl StrongInclusion {
    pub fn new(l: &PcdLattice, carrier: Basis, rel: Relation) -> Result<Self> {
        let report = check_strong_inclusion(l, &rel, &carrier)?;
        if let Some((i, c)) = report.first_failure() {
            let (x, y) = c.pair;
            return Err(Error::precondition(
                format!(
                    "not a strong inclusion: condition {i} fails at ({}, {})",
                    l.name(x),
                    l.name(y)
                ),
                vec![x, y],
            ));
        }
        Ok(StrongInclusion { carrier, rel })
    }

    /// Built by [`least_strong_inclusion`] and then re-checked.
    pub fn generated(l: &PcdLattice, carrier: Basis, seed: &Relation) -> Result<Self> {
        let rel = least_strong_inclusion(l, &carrier, seed)?;
        Self::new(l, carrier, rel)
    }

    /// `x ⊲ y` iff `x = 0` or `y = 1`, generated from the empty seed.
    pub fn least(l: &PcdLattice, carrier: Basis) -> Result<Self> {
        Self::generated(l, carrier, &Relation::new(l.len()))
    }

    pub fn carrier(&self) -> &Basis {
        &self.carrier
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.rel.contains(x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Poset;

    fn trivial(l: &PcdLattice, p: &Basis) -> Relation {
        let n = l.len();
        Relation::from_pairs(
            n,
            p.iter()
                .flat_map(|x| p.iter().map(move |y| (x, y)))
                .filter(|&(x, y)| x == l.bottom() || y == l.top()),
        )
    }

    #[test]
    fn empty_seed_gives_trivial_inclusion() {
        for l in [
            PcdLattice::chain(["0", "m", "1"]).unwrap(),
            PcdLattice::boolean(2).unwrap(),
            Poset::with_default_names(3, [(0, 2)]).unwrap().downset_lattice().unwrap().lattice,
        ] {
            let p = l.full_basis();
            let least = least_strong_inclusion(&l, &p, &Relation::new(l.len())).unwrap();
            assert_eq!(least, trivial(&l, &p));
            assert!(check_strong_inclusion(&l, &least, &p).unwrap().is_strong_inclusion());
            let bounds = Relation::from_pairs(l.len(), [(l.bottom(), l.bottom()), (l.top(), l.top())]);
            assert_eq!(least_strong_inclusion(&l, &p, &bounds).unwrap(), least);
        }
    }

    #[test]
    fn boolean_well_inside_is_closed() {
        let b2 = PcdLattice::boolean(2).unwrap();
        let wi = b2.well_inside_relation();
        assert_eq!(least_strong_inclusion(&b2, &b2.full_basis(), &wi).unwrap(), b2.order_relation());
    }

    #[test]
    fn chain_well_inside_satisfies_first_six() {
        let c = PcdLattice::chain(["0", "m", "1"]).unwrap();
        let r = check_strong_inclusion(&c, &c.well_inside_relation(), &c.full_basis()).unwrap();
        for i in 1..=6 {
            assert!(r.holds(i), "condition {i}");
        }
        // On the 3-chain ≺ also interpolates: (0, m) through 0, (m, 1) through 1.
        assert!(r.holds(7));
        let lone = Relation::from_pairs(3, [(0, 1)]);
        let r = check_strong_inclusion(&c, &lone, &c.full_basis()).unwrap();
        assert_eq!(r.conditions[6].as_ref().unwrap().pair, (0, 1));
    }

    #[test]
    fn full_relation_fails_six() {
        let c = PcdLattice::chain(["0", "m", "1"]).unwrap();
        let r = check_strong_inclusion(&c, &Relation::full(3), &c.full_basis()).unwrap();
        let w = r.conditions[5].as_ref().unwrap().pair;
        assert!(!c.well_inside(w.0, w.1));
    }

    #[test]
    fn implicit_and_explicit_rules_agree() {
        let l = Poset::with_default_names(3, [(0, 1)]).unwrap().downset_lattice().unwrap().lattice;
        let p = l.full_basis();
        let core = super::super::interpolative_core_on_basis(&l, &p);
        let defn = strong_inclusion_definition(&l, &p, &core);
        let explicit = Relation::from_pairs(l.len(), defn.universe().tokens_of(&fixpoint::lfp(&defn)).copied());
        assert_eq!(least_strong_inclusion(&l, &p, &core).unwrap(), explicit);
    }

    #[test]
    fn rejects_bad_seeds() {
        let c = PcdLattice::chain(["0", "m", "1"]).unwrap();
        let p = c.full_basis();
        let not_wi = Relation::from_pairs(3, [(1, 1)]);
        assert!(matches!(least_strong_inclusion(&c, &p, &not_wi), Err(Error::Precondition(e)) if e.witness == [1, 1]));
        let no_interp = Relation::from_pairs(3, [(0, 1)]);
        assert!(matches!(least_strong_inclusion(&c, &p, &no_interp), Err(Error::Precondition(e)) if e.witness == [0, 1]));
        let not_closed = Basis::from_elems(3, [1, 2]);
        assert!(check_strong_inclusion(&c, &Relation::new(3), &not_closed).is_err());
    }
}

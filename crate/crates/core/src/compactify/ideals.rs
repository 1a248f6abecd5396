use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::lattice::{minimal_subcover, Basis, LatticeTables, PcdLattice};
use crate::relation::StrongInclusion;
use crate::{Elem, Error, Result};

/// Largest carrier for which round ideals are enumerated exhaustively.
pub const MAX_ENUMERATION_CARRIER: usize = 24;

/// How the round ideals of a carrier are found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Search all ideals of the carrier and keep the round ones.
    Exhaustive,
    /// Take `↓t` for every `t ⊲ t`. On finite carriers these are exactly the
    /// round ideals; the exhaustive search is used to confirm that on
    /// carriers of up to [`PRINCIPAL_CROSS_CHECK`] elements.
    #[default]
    Principal,
}

/// Carriers up to this size are also enumerated exhaustively when building
/// with [`Strategy::Principal`], and the two answers compared.
pub const PRINCIPAL_CROSS_CHECK: usize = 12;

/// Whether `members` is an ideal of the carrier in which every element is
/// strongly included in another member.
pub fn is_round_ideal(l: &PcdLattice, si: &StrongInclusion, members: &FixedBitSet) -> bool {
    let p = si.carrier();
    members.is_subset(p.bits())
        && members.contains(l.bottom())
        && members.ones().all(|x| {
            p.iter().all(|y| !l.leq(y, x) || members.contains(y))
                && members.ones().all(|y| members.contains(l.join(x, y)))
                && !si.relation().row(x).is_disjoint(members)
        })
}

/// `⇓a = {b ∈ P : b ⊲ a}`.
pub fn down_arrow(si: &StrongInclusion, a: Elem) -> Result<FixedBitSet> {
    if !si.carrier().contains(a) {
        return Err(Error::precondition("element is not in the carrier", vec![a]));
    }
    Ok(si.relation().transpose().row(a).clone())
}

/// All ideals of the carrier, by backtracking along a linear extension.
/// Every element below an included one must already be included, and an
/// excluded element must not be the join of two included ones.
fn all_ideals(l: &PcdLattice, p: &Basis) -> Result<Vec<FixedBitSet>> {
    if p.len() > MAX_ENUMERATION_CARRIER {
        return Err(Error::TooLarge {
            what: "round-ideal carrier",
            size: p.len(),
            limit: MAX_ENUMERATION_CARRIER,
        });
    }
    let mut order: Vec<Elem> = p.iter().collect();
    order.sort_by_key(|&x| (l.down(x).count_ones(..), x));
    let mut out = Vec::new();
    let mut current = FixedBitSet::with_capacity(l.len());
    search(l, p, &order, 0, &mut current, &mut out);
    Ok(out)
}

fn search(l: &PcdLattice, p: &Basis, order: &[Elem], i: usize, cur: &mut FixedBitSet, out: &mut Vec<FixedBitSet>) {
    let Some(&x) = order.get(i) else {
        out.push(cur.clone());
        return;
    };
    let below_ok = p.iter().all(|y| y == x || !l.leq(y, x) || cur.contains(y));
    if below_ok {
        cur.insert(x);
        search(l, p, order, i + 1, cur, out);
        cur.set(x, false);
    }
    if x == l.bottom() {
        return;
    }
    let is_join = cur.ones().any(|a| cur.ones().any(|b| l.join(a, b) == x));
    if !is_join {
        search(l, p, order, i + 1, cur, out);
    }
}

/// The frame `R(P, ⊲)` of round ideals, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct RoundIdealFrame {
    source: Arc<PcdLattice>,
    inclusion: StrongInclusion,
    ideals: Vec<FixedBitSet>,
    lattice: Arc<PcdLattice>,
    /// Frame element `⇓a` for each carrier element `a`.
    down: Vec<Option<Elem>>,
    basis: Basis,
}

impl RoundIdealFrame {
    pub fn new(source: Arc<PcdLattice>, inclusion: StrongInclusion) -> Result<Self> {
        Self::with_strategy(source, inclusion, Strategy::default())
    }

    pub fn with_strategy(source: Arc<PcdLattice>, inclusion: StrongInclusion, strategy: Strategy) -> Result<Self> {
        let l = &*source;
        let p = inclusion.carrier().clone();
        let lhd = inclusion.relation();
        let mut ideals: Vec<FixedBitSet> = match strategy {
            Strategy::Exhaustive => all_ideals(l, &p)?
                .into_iter()
                .filter(|i| is_round_ideal(l, &inclusion, i))
                .collect(),
            Strategy::Principal => principal_round_ideals(l, &p, lhd),
        };
        sort_ideals(&mut ideals);
        if strategy == Strategy::Principal && p.len() <= PRINCIPAL_CROSS_CHECK {
            let mut all: Vec<FixedBitSet> = all_ideals(l, &p)?
                .into_iter()
                .filter(|i| is_round_ideal(l, &inclusion, i))
                .collect();
            sort_ideals(&mut all);
            if all != ideals {
                return Err(Error::Internal("principal round ideals differ from the enumerated ones".into()));
            }
        }

        let m = ideals.len();
        let find = |s: &FixedBitSet| ideals.binary_search_by(|i| ideal_key(i).cmp(&ideal_key(s))).ok();
        let mut meet = vec![vec![0; m]; m];
        let mut join = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                let mut both = ideals[a].clone();
                both.intersect_with(&ideals[b]);
                meet[a][b] = find(&both).ok_or_else(|| Error::Internal("meet of round ideals is not round".into()))?;
                let j = join_of(l, &p, ideals[a].ones().chain(ideals[b].ones()));
                join[a][b] = find(&j).ok_or_else(|| Error::Internal("join of round ideals is not round".into()))?;
            }
        }
        let bottom = (0..m)
            .find(|&i| (0..m).all(|j| ideals[i].is_subset(&ideals[j])))
            .ok_or_else(|| Error::Internal("no least round ideal".into()))?;
        let top = (0..m)
            .find(|&i| (0..m).all(|j| ideals[j].is_subset(&ideals[i])))
            .ok_or_else(|| Error::Internal("no greatest round ideal".into()))?;
        let pstar = (0..m)
            .map(|a| (0..m).filter(|&c| meet[a][c] == bottom).fold(bottom, |acc, c| join[acc][c]))
            .collect();
        let names = ideals
            .iter()
            .map(|i| format!("I({})", l.name(l.join_all(i.ones()))))
            .collect();
        let tables = LatticeTables {
            names,
            leq: (0..m).map(|a| (0..m).map(|b| ideals[a].is_subset(&ideals[b])).collect()).collect(),
            meet,
            join,
            bottom,
            top,
            pstar,
        };
        let lattice = Arc::new(PcdLattice::from_tables(tables)?);

        let cols = lhd.transpose();
        let mut down = vec![None; l.len()];
        let mut basis = Basis::empty(m);
        for a in p.iter() {
            let i = find(cols.row(a)).ok_or_else(|| Error::Internal(format!("⇓{} is not a round ideal", l.name(a))))?;
            down[a] = Some(i);
            basis.insert(i);
        }
        Ok(RoundIdealFrame {
            source,
            inclusion,
            ideals,
            lattice,
            down,
            basis,
        })
    }

    pub fn source(&self) -> &Arc<PcdLattice> {
        &self.source
    }

    pub fn inclusion(&self) -> &StrongInclusion {
        &self.inclusion
    }

    pub fn carrier(&self) -> &Basis {
        self.inclusion.carrier()
    }

    /// The frame as a pcd-lattice; element `i` is `self.ideals()[i]`.
    pub fn lattice(&self) -> &Arc<PcdLattice> {
        &self.lattice
    }

    pub fn ideals(&self) -> &[FixedBitSet] {
        &self.ideals
    }

    pub fn members(&self, i: Elem) -> Vec<Elem> {
        self.ideals[i].ones().collect()
    }

    pub fn ideal_index(&self, members: &FixedBitSet) -> Option<Elem> {
        self.ideals
            .binary_search_by(|i| ideal_key(i).cmp(&ideal_key(members)))
            .ok()
    }

    /// The frame element `⇓a`.
    pub fn down(&self, a: Elem) -> Option<Elem> {
        self.down.get(a).copied().flatten()
    }

    /// `B_d = {⇓a : a ∈ P}`.
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// Why the frame fails to be compact and regular, if it does. Finite
    /// frames are compact, so a failure here means a bug upstream.
    pub fn compact_regular_failure(&self) -> Option<String> {
        let fr = &*self.lattice;
        let parts: Vec<Elem> = self.basis.iter().collect();
        let mut covers = vec![parts.clone()];
        for skip in 0..parts.len() {
            let rest: Vec<Elem> = parts.iter().copied().filter(|&x| x != parts[skip]).collect();
            if fr.join_all(rest.iter().copied()) == fr.top() {
                covers.push(rest);
            }
        }
        for c in &covers {
            match minimal_subcover(fr, c, fr.top()) {
                Ok(sub) if fr.join_all(sub.iter().copied()) == fr.top() => {}
                Ok(_) => return Some("extracted subcover does not cover".into()),
                Err(e) => return Some(format!("basic cover has no finite subcover: {e}")),
            }
        }
        fr.regularity_failure(&self.basis)
            .map(|x| format!("{} is not the join of basic elements well inside it", fr.name(x)))
    }

    pub fn is_compact_regular(&self) -> bool {
        self.compact_regular_failure().is_none()
    }
}

fn ideal_key(i: &FixedBitSet) -> (usize, Vec<usize>) {
    (i.count_ones(..), i.ones().collect())
}

fn sort_ideals(v: &mut [FixedBitSet]) {
    v.sort_by_cached_key(ideal_key);
}

/// `{x ∈ P : x ≤ ∨u}` for the finite family `u`.
fn join_of(l: &PcdLattice, p: &Basis, u: impl Iterator<Item = Elem>) -> FixedBitSet {
    let mut out = l.down(l.join_all(u)).clone();
    out.intersect_with(p.bits());
    out
}

fn principal_round_ideals(l: &PcdLattice, p: &Basis, lhd: &crate::relation::Relation) -> Vec<FixedBitSet> {
    p.iter()
        .filter(|&t| lhd.contains(t, t))
        .map(|t| join_of(l, p, std::iter::once(t)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;

    fn ideals_brute(l: &PcdLattice, si: &StrongInclusion) -> Vec<FixedBitSet> {
        let p: Vec<Elem> = si.carrier().iter().collect();
        let mut out: Vec<FixedBitSet> = (0u32..1 << p.len())
            .map(|m| {
                let mut s = FixedBitSet::with_capacity(l.len());
                for (i, &x) in p.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        s.insert(x);
                    }
                }
                s
            })
            .filter(|s| is_round_ideal(l, si, s))
            .collect();
        sort_ideals(&mut out);
        out
    }

    #[test]
    fn boolean_with_order() {
        let b2 = Arc::new(PcdLattice::boolean(2).unwrap());
        let si = StrongInclusion::new(&b2, b2.full_basis(), b2.order_relation()).unwrap();
        let fr = RoundIdealFrame::with_strategy(b2.clone(), si.clone(), Strategy::Exhaustive).unwrap();
        assert_eq!(fr.ideals().len(), 4);
        assert!(fr.lattice().is_boolean());
        assert_eq!(fr.ideals(), ideals_brute(&b2, &si));
        assert!(fr.is_compact_regular());
        assert_eq!(down_arrow(&si, 1).unwrap().ones().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn trivial_inclusion_gives_two_chain() {
        let c = Arc::new(PcdLattice::chain(["0", "a", "b", "1"]).unwrap());
        let si = StrongInclusion::least(&c, c.full_basis()).unwrap();
        assert_eq!(down_arrow(&si, 2).unwrap().ones().collect::<Vec<_>>(), vec![0]);
        assert_eq!(down_arrow(&si, 3).unwrap().count_ones(..), 4);
        let fr = RoundIdealFrame::new(c.clone(), si.clone()).unwrap();
        assert_eq!(fr.ideals().len(), 2);
        assert_eq!(fr.ideals(), ideals_brute(&c, &si));
        assert!(fr.is_compact_regular());

        let one = Arc::new(PcdLattice::chain(["t"]).unwrap());
        let si = StrongInclusion::least(&one, one.full_basis()).unwrap();
        assert_eq!(si.relation(), &Relation::from_pairs(1, [(0, 0)]));
        let fr = RoundIdealFrame::new(one, si).unwrap();
        assert_eq!(fr.ideals().len(), 1);
        assert!(fr.is_compact_regular());
    }

    #[test]
    fn enumeration_cap() {
        let big = PcdLattice::boolean(5).unwrap();
        assert!(matches!(all_ideals(&big, &big.full_basis()), Err(Error::TooLarge { .. })));
    }
}

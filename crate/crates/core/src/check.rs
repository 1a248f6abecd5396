//! The invariant suite run by `--check-all`.
//!
//! Every check here must hold for any valid input; a failure is a bug in the
//! crate, not a property of the instance. Checks are independent and run
//! concurrently.

use std::fmt;
use std::sync::Arc;

use crate::compactify::{
    compare, from_compactification, mu, GammaCompactification, RoundIdealFrame, Strategy, Verdict,
    PRINCIPAL_CROSS_CHECK,
};
use crate::framemap::ContinuousMap;
use crate::lattice::{validate, Basis, PcdLattice};
use crate::par::{self, Execution};
use crate::relation::{
    check_strong_inclusion, default_depth, interpolative_core_on_basis, largest_interpolative,
    really_inside_via_scales, Relation, StrongInclusion,
};

/// Lattices above this size skip the quadratic-in-`≺` scale check.
const SCALE_CHECK_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: &'static str,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Suite {
    pub outcomes: Vec<Outcome>,
}

impl Suite {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }

    pub fn extend(&mut self, other: Suite) {
        self.outcomes.extend(other.outcomes);
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "PASS {}", o.name)?,
                Some(why) => writeln!(f, "FAIL {}: {why}", o.name)?,
            }
        }
        Ok(())
    }
}

type Check<'a> = (&'static str, Box<dyn Fn() -> Result<(), String> + Send + Sync + 'a>);

fn run(checks: Vec<Check<'_>>) -> Suite {
    let outcomes = par::map_slice(Execution::default(), &checks, |(name, c)| Outcome {
        name,
        failure: c().err(),
    });
    Suite { outcomes }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// Complemented elements: a Boolean sub-pcd-lattice on which `≤` is a
/// compatible strong inclusion.
fn complemented(l: &PcdLattice) -> Basis {
    Basis::from_elems(l.len(), l.elements().filter(|&x| l.is_complemented(x)))
}

pub fn check_lattice(l: &Arc<PcdLattice>) -> Suite {
    let n = l.len();
    let checks: Vec<Check> = vec![
        ("tables satisfy the pcd-lattice axioms", Box::new(|| {
            let r = validate(&l.tables()).map_err(|e| e.to_string())?;
            ensure(r.is_valid(), || format!("{r}"))
        })),
        ("pseudocomplement is the largest disjoint element", Box::new(|| {
            for y in l.elements() {
                let s = l.pseudocomplement(y);
                ensure(l.meet(s, y) == l.bottom(), || format!("{} meets its pseudocomplement", l.name(y)))?;
                if let Some(c) = l.elements().find(|&c| l.meet(c, y) == l.bottom() && !l.leq(c, s)) {
                    return Err(format!("{} is disjoint from {} but not below {}", l.name(c), l.name(y), l.name(s)));
                }
            }
            Ok(())
        })),
        ("well-inside is x ∨ y* = 1", Box::new(|| {
            let wi = l.well_inside_relation();
            let brute = Relation::from_pairs(
                n,
                (0..n)
                    .flat_map(|y| (0..n).map(move |x| (y, x)))
                    .filter(|&(y, x)| l.join(x, l.pseudocomplement(y)) == l.top())
                    .collect::<Vec<_>>(),
            );
            ensure(wi == brute, || "well-inside relation differs from its definition".into())
        })),
        ("interpolative core is interpolative, inside ≺, and largest", Box::new(|| {
            let wi = l.well_inside_relation();
            let core = interpolative_core_on_basis(l, &l.full_basis());
            ensure(core.is_interpolative(), || format!("core fails at {:?}", core.interpolation_failure()))?;
            ensure(core.is_subset(&wi), || "core leaves ≺".into())?;
            // Any interpolative R ⊆ ≺ lies in the core, in particular core ∪ R.
            let grown = largest_interpolative(&core.union(&wi.restrict(&complemented(l))));
            ensure(grown == core, || "core is not the largest interpolative part".into())
        })),
        ("scales exist exactly through the core", Box::new(|| {
            if n > SCALE_CHECK_LIMIT {
                return Ok(());
            }
            let b = l.full_basis();
            let r = really_inside_via_scales(l, &b, default_depth(n)).map_err(|e| e.to_string())?;
            ensure(r == interpolative_core_on_basis(l, &b), || "scales disagree with the core".into())
        })),
        ("least strong inclusion is x = 0 or y = 1", Box::new(|| {
            let si = StrongInclusion::least(l, l.full_basis()).map_err(|e| e.to_string())?;
            let expect = Relation::from_pairs(
                n,
                (0..n)
                    .flat_map(|x| (0..n).map(move |y| (x, y)))
                    .filter(|&(x, y)| x == l.bottom() || y == l.top())
                    .collect::<Vec<_>>(),
            );
            ensure(*si.relation() == expect, || "unexpected least strong inclusion".into())
        })),
        ("order on complemented elements gives a compact regular frame", Box::new(|| {
            let p = complemented(l);
            let lhd = l.order_relation().restrict(&p);
            let report = check_strong_inclusion(l, &lhd, &p).map_err(|e| e.to_string())?;
            ensure(report.is_strong_inclusion(), || format!("{report}"))?;
            let si = StrongInclusion::new(l, p, lhd).map_err(|e| e.to_string())?;
            let fr = RoundIdealFrame::new(l.clone(), si).map_err(|e| e.to_string())?;
            if let Some(why) = fr.compact_regular_failure() {
                return Err(why);
            }
            let m = mu(&fr);
            ensure(m.validate().is_valid() && m.is_dense(), || "μ is not a dense map".into())
        })),
    ];
    run(checks)
}

/// Laws for one continuous map, plus the dense-map laws when `f` is dense
/// and its target regular.
pub fn check_map(f: &ContinuousMap) -> Suite {
    let checks: Vec<Check> = vec![
        ("continuity", Box::new(|| {
            let r = f.validate();
            ensure(r.is_valid(), || format!("{:?}", r.violations.first()))
        })),
        ("identity laws", Box::new(|| {
            let left = ContinuousMap::identity(f.target().clone()).compose(f).map_err(|e| e.to_string())?;
            let right = f.compose(&ContinuousMap::identity(f.source().clone())).map_err(|e| e.to_string())?;
            ensure(left.same_as(f) && right.same_as(f), || "composition with the identity changes the map".into())
        })),
        ("dense maps into regular targets preserve pseudocomplements", Box::new(|| {
            if !dense_regular(f) {
                return Ok(());
            }
            ensure(f.preserves_pseudocomplements(), || format!("fails at {:?}", f.pseudocomplement_failure()))
        })),
        ("dense maps into regular targets are one-one", Box::new(|| {
            if !dense_regular(f) {
                return Ok(());
            }
            ensure(f.is_injective(), || format!("fails at {:?}", f.injectivity_failure()))
        })),
    ];
    run(checks)
}

fn dense_regular(f: &ContinuousMap) -> bool {
    let m = f.target();
    f.is_dense() && m.is_regular(&m.full_basis())
}

pub fn check_gamma(g: &GammaCompactification, maps: &[ContinuousMap]) -> Suite {
    let k = &g.compactification;
    let checks: Vec<Check> = vec![
        ("frame is compact regular", Box::new(|| {
            g.frame.compact_regular_failure().map_or(Ok(()), Err)
        })),
        ("round ideals are principal", Box::new(|| {
            if g.frame.carrier().len() > PRINCIPAL_CROSS_CHECK {
                return Ok(());
            }
            let ex = RoundIdealFrame::with_strategy(
                g.frame.source().clone(),
                g.frame.inclusion().clone(),
                Strategy::Exhaustive,
            )
            .map_err(|e| e.to_string())?;
            ensure(ex.ideals() == g.frame.ideals(), || "exhaustive and principal ideals differ".into())
        })),
        ("μ is a dense embedding", Box::new(|| {
            let m = k.map();
            ensure(m.is_dense() && m.is_embedding(), || "μ is not a dense embedding".into())
        })),
        ("extensions factor the maps", Box::new(|| {
            for (i, (gi, f)) in g.extensions.iter().zip(maps).enumerate() {
                let c = gi.compose(k.map()).map_err(|e| e.to_string())?;
                ensure(c.same_as(f), || format!("g ∘ μ differs from map {i}"))?;
            }
            Ok(())
        })),
        ("reconstruction is an isomorphism", Box::new(|| {
            let r = from_compactification(k).map_err(|e| e.to_string())?;
            ensure(r.iso.is_order_isomorphism(), || "reconstruction is not an isomorphism".into())
        })),
        ("compare is reflexive", Box::new(|| {
            let c = compare(k, k).map_err(|e| e.to_string())?;
            ensure(c.verdict == Verdict::Equivalent, || format!("verdict {}", c.verdict))
        })),
    ];
    run(checks)
}

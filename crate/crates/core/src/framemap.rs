//! Continuous maps between finite locales.
//!
//! A continuous map `f: L → M` is given backwards, by its inverse image on a
//! basis of the target: `f⁻: B_M → L`. It must satisfy
//!
//! 1. `⋁_{a ∈ B_M} f⁻(a) = 1`;
//! 2. `f⁻(a) ∧ f⁻(b) = ⋁{f⁻(c) : c ∈ B_M, c ≤ a, c ≤ b}`;
//! 3. `a ≤ ⋁U` (with `U ⊆ B_M`) implies `f⁻(a) ≤ ⋁f⁻[U]`.
//!
//! The extension `f⁻[a] = ⋁{f⁻(b) : b ∈ B_M, b ≤ a}` is then a frame
//! homomorphism `M → L`, and all whole-frame questions (density, embedding,
//! equality) are answered through it.

use std::fmt;
use std::sync::Arc;

use crate::lattice::{Basis, DownsetLattice, PcdLattice};
use crate::relation::Relation;
use crate::{Elem, Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    source: Arc<PcdLattice>,
    target: Arc<PcdLattice>,
    basis: Basis,
    /// `f⁻(b)` for `b` in the basis, `None` elsewhere.
    images: Vec<Option<Elem>>,
    /// `f⁻[a]` for every target element.
    ext: Vec<Elem>,
}

impl fmt::Debug for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.assignment().map(|(b, x)| (self.target.name(b), self.source.name(x))))
            .finish()
    }
}

/// One failed continuity condition, with witnesses as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    /// Condition 1: the images join to `join` rather than the top.
    Cover { join: Elem },
    /// Condition 2 at basis elements `a`, `b`.
    Meet { a: Elem, b: Elem, lhs: Elem, rhs: Elem },
    /// Condition 3: `a ≤ ⋁u` but `f⁻(a) ≰ ⋁f⁻[u]`.
    Cover3 { a: Elem, u: Vec<Elem> },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MapReport {
    pub violations: Vec<MapViolation>,
}

impl MapReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub(crate) fn same_lattice(a: &Arc<PcdLattice>, b: &Arc<PcdLattice>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ContinuousMap {
    /// Builds `f: source → target` from `(b, f⁻(b))` pairs covering exactly
    /// the basis. Only the shape is checked here; see [`Self::validate`].
    pub fn new(
        source: Arc<PcdLattice>,
        target: Arc<PcdLattice>,
        basis: Basis,
        assignment: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self> {
        basis.check_basis_of(&target).map_err(|e| match e {
            Error::Precondition(p) => Error::malformed(format!("map basis: {}", p.what)),
            e => e,
        })?;
        let mut images = vec![None; target.len()];
        for (b, x) in assignment {
            if b >= target.len() || !basis.contains(b) {
                return Err(Error::malformed(format!("map assigns to non-basis element {b}")));
            }
            if x >= source.len() {
                return Err(Error::malformed(format!("image {x} is not a source element")));
            }
            if images[b].replace(x).is_some() {
                return Err(Error::malformed(format!(
                    "basis element {} assigned twice",
                    target.name(b)
                )));
            }
        }
        if let Some(b) = basis.iter().find(|&b| images[b].is_none()) {
            return Err(Error::malformed(format!(
                "basis element {} has no image",
                target.name(b)
            )));
        }
        let ext = target
            .elements()
            .map(|a| source.join_all(basis.iter().filter(|&b| target.leq(b, a)).map(|b| images[b].unwrap())))
            .collect();
        Ok(ContinuousMap {
            source,
            target,
            basis,
            images,
            ext,
        })
    }

    /// [`Self::new`] followed by [`Self::validate`]; invalid maps are errors.
    pub fn checked(
        source: Arc<PcdLattice>,
        target: Arc<PcdLattice>,
        basis: Basis,
        assignment: impl IntoIterator<Item = (Elem, Elem)>,
    ) -> Result<Self> {
        let f = Self::new(source, target, basis, assignment)?;
        let report = f.validate();
        match report.violations.first() {
            None => Ok(f),
            Some(v) => Err(Error::precondition(format!("not a continuous map: {v:?}"), vec![])),
        }
    }

    pub fn identity(l: Arc<PcdLattice>) -> Self {
        let b = l.full_basis();
        let n = l.len();
        Self::new(l.clone(), l, b, (0..n).map(|x| (x, x))).expect("identity is well formed")
    }

    /// The frame homomorphism `D(Q_M) → D(Q_L)` taking a downset to its
    /// preimage under the monotone `phi: Q_L → Q_M`.
    pub fn from_monotone(l: &DownsetLattice, m: &DownsetLattice, phi: &[usize]) -> Result<Self> {
        let (ql, qm) = (&l.poset, &m.poset);
        if phi.len() != ql.len() || phi.iter().any(|&q| q >= qm.len()) {
            return Err(Error::malformed("point map has the wrong shape"));
        }
        for i in 0..ql.len() {
            for j in 0..ql.len() {
                if ql.leq(i, j) && !qm.leq(phi[i], phi[j]) {
                    return Err(Error::malformed(format!("point map is not monotone at ({i}, {j})")));
                }
            }
        }
        let assignment: Vec<(Elem, Elem)> = m
            .masks
            .iter()
            .enumerate()
            .map(|(a, &mask)| {
                let pre = (0..ql.len()).filter(|&q| mask >> phi[q] & 1 == 1).fold(0u32, |s, q| s | 1 << q);
                (a, l.element_of(pre).expect("preimage of a downset is a downset"))
            })
            .collect();
        let target = Arc::new(m.lattice.clone());
        Self::new(Arc::new(l.lattice.clone()), target.clone(), target.full_basis(), assignment)
    }

    pub fn source(&self) -> &Arc<PcdLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PcdLattice> {
        &self.target
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// `f⁻(b)` for a basis element.
    pub fn image(&self, b: Elem) -> Option<Elem> {
        self.images.get(b).copied().flatten()
    }

    /// `(b, f⁻(b))` over the basis, in index order.
    pub fn assignment(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.basis.iter().map(|b| (b, self.images[b].unwrap()))
    }

    /// `f⁻[a] = ⋁{f⁻(b) : b ∈ B_M, b ≤ a}`.
    pub fn extend(&self, a: Elem) -> Elem {
        self.ext[a]
    }

    pub fn extension(&self) -> &[Elem] {
        &self.ext
    }

    /// All three continuity conditions; the first witness of each failure.
    pub fn validate(&self) -> MapReport {
        let (l, m) = (&*self.source, &*self.target);
        let img = |b: Elem| self.images[b].unwrap();
        let mut violations = Vec::new();

        let join = l.join_all(self.assignment().map(|(_, x)| x));
        if join != l.top() {
            violations.push(MapViolation::Cover { join });
        }

        let meet_fail = self.basis.iter().find_map(|a| {
            self.basis.iter().find_map(|b| {
                let lhs = l.meet(img(a), img(b));
                let rhs = l.join_all(
                    self.basis
                        .iter()
                        .filter(|&c| m.leq(c, a) && m.leq(c, b))
                        .map(img),
                );
                (lhs != rhs).then_some(MapViolation::Meet { a, b, lhs, rhs })
            })
        });
        violations.extend(meet_fail);

        // Condition 3 holds iff f⁻ is monotone on the basis and its extension
        // preserves the empty join and binary joins; each failure yields a
        // concrete cover.
        let below = |x: Elem| self.basis.iter().filter(move |&c| m.leq(c, x));
        let cover3 = self
            .basis
            .iter()
            .find_map(|a| {
                self.basis
                    .iter()
                    .find(|&b| m.leq(a, b) && !l.leq(img(a), img(b)))
                    .map(|b| MapViolation::Cover3 { a, u: vec![b] })
            })
            .or_else(|| {
                below(m.bottom())
                    .find(|&b| img(b) != l.bottom())
                    .map(|a| MapViolation::Cover3 { a, u: vec![] })
            })
            .or_else(|| {
                m.elements().find_map(|x| {
                    m.elements().find_map(|y| {
                        let rhs = l.join(self.ext[x], self.ext[y]);
                        below(m.join(x, y)).find(|&a| !l.leq(img(a), rhs)).map(|a| {
                            let mut u: Vec<Elem> = below(x).chain(below(y)).collect();
                            u.sort_unstable();
                            u.dedup();
                            MapViolation::Cover3 { a, u }
                        })
                    })
                })
            });
        violations.extend(cover3);
        MapReport { violations }
    }

    /// `(f ∘ g)⁻(a) = g⁻[f⁻(a)]` for `f: M → N` (self) and `g: L → M`.
    pub fn compose(&self, g: &ContinuousMap) -> Result<ContinuousMap> {
        if !same_lattice(&self.source, &g.target) {
            return Err(Error::Mismatch("composite maps do not meet in the middle".into()));
        }
        Self::new(
            g.source.clone(),
            self.target.clone(),
            self.basis.clone(),
            self.assignment().map(|(a, x)| (a, g.extend(x))),
        )
    }

    /// The same map presented on another basis of the target.
    pub fn rebase(&self, basis: Basis) -> Result<ContinuousMap> {
        let pairs: Vec<_> = basis.iter().map(|b| (b, self.ext[b])).collect();
        Self::new(self.source.clone(), self.target.clone(), basis, pairs)
    }

    /// Equality of the induced frame homomorphisms.
    pub fn same_as(&self, other: &ContinuousMap) -> bool {
        same_lattice(&self.source, &other.source) && same_lattice(&self.target, &other.target) && self.ext == other.ext
    }

    /// First nonzero `a` with `f⁻[a] = 0`.
    pub fn density_failure(&self) -> Option<Elem> {
        let (l, m) = (&*self.source, &*self.target);
        m.elements().find(|&a| a != m.bottom() && self.ext[a] == l.bottom())
    }

    pub fn is_dense(&self) -> bool {
        self.density_failure().is_none()
    }

    /// First source element outside the image of `f⁻[·]`.
    pub fn embedding_failure(&self) -> Option<Elem> {
        let mut hit = vec![false; self.source.len()];
        for &x in &self.ext {
            hit[x] = true;
        }
        hit.iter().position(|&h| !h)
    }

    pub fn is_embedding(&self) -> bool {
        self.embedding_failure().is_none()
    }

    /// First pair of distinct target elements with equal extensions.
    pub fn injectivity_failure(&self) -> Option<(Elem, Elem)> {
        let n = self.target.len();
        (0..n).find_map(|a| (a + 1..n).find(|&b| self.ext[a] == self.ext[b]).map(|b| (a, b)))
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_failure().is_none()
    }

    /// First `a` with `f⁻[a*] ≠ f⁻[a]*`.
    pub fn pseudocomplement_failure(&self) -> Option<Elem> {
        let (l, m) = (&*self.source, &*self.target);
        m.elements()
            .find(|&a| self.ext[m.pseudocomplement(a)] != l.pseudocomplement(self.ext[a]))
    }

    pub fn preserves_pseudocomplements(&self) -> bool {
        self.pseudocomplement_failure().is_none()
    }

    /// For a map whose extension is a bijection, the inverse map `M → L`.
    pub fn inverse(&self) -> Result<ContinuousMap> {
        if let Some((a, b)) = self.injectivity_failure() {
            return Err(Error::precondition("map is not injective", vec![a, b]));
        }
        if let Some(x) = self.embedding_failure() {
            return Err(Error::precondition("map is not surjective", vec![x]));
        }
        let mut back = vec![0; self.source.len()];
        for (a, &x) in self.ext.iter().enumerate() {
            back[x] = a;
        }
        let basis = self.source.full_basis();
        Self::new(
            self.target.clone(),
            self.source.clone(),
            basis,
            back.into_iter().enumerate(),
        )
    }

    /// Whether `f⁻[·]` is an order isomorphism: bijective, monotone both ways.
    pub fn is_order_isomorphism(&self) -> bool {
        let (l, m) = (&*self.source, &*self.target);
        self.is_injective()
            && self.is_embedding()
            && m.elements()
                .all(|a| m.elements().all(|b| m.leq(a, b) == l.leq(self.ext[a], self.ext[b])))
    }
}

/// Whether `lhd` (on a carrier `P ⊆ L`) is finer than `f⁻ × f⁻[≺]`, with
/// the witnesses that show it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapClassTag {
    /// For each `y ≺ x` in the target, in order, the first `(p, p′)` with
    /// `f⁻[y] ≤ p ⊲ p′ ≤ f⁻[x]`.
    pub witnesses: Vec<((Elem, Elem), (Elem, Elem))>,
    /// The first `≺`-pair without a witness.
    pub failure: Option<(Elem, Elem)>,
}

impl MapClassTag {
    pub fn is_finer(&self) -> bool {
        self.failure.is_none()
    }
}

/// Searches witnesses in lexicographic `(p, p′)` order; stops at the first
/// `≺`-pair that has none.
pub fn finer_than(carrier: &Basis, lhd: &Relation, f: &ContinuousMap) -> MapClassTag {
    let (l, m) = (&*f.source, &*f.target);
    let mut witnesses = Vec::new();
    for (y, x) in m.well_inside_relation().pairs() {
        let (fy, fx) = (f.extend(y), f.extend(x));
        let w = carrier.iter().filter(|&p| l.leq(fy, p)).find_map(|p| {
            lhd.row(p)
                .ones()
                .find(|&q| carrier.contains(q) && l.leq(q, fx))
                .map(|q| (p, q))
        });
        match w {
            Some(w) => witnesses.push(((y, x), w)),
            None => {
                return MapClassTag {
                    witnesses,
                    failure: Some((y, x)),
                }
            }
        }
    }
    MapClassTag {
        witnesses,
        failure: None,
    }
}

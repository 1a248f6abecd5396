//! Least and greatest fixpoints of inductive definitions over a finite universe.
//!
//! An inductive definition is a set of steps `(conclusion, premises)`. Its
//! one-step consequence operator maps a set `C` to the conclusions of all
//! steps whose premises lie in `C`. The least fixpoint (the smallest closed
//! set) is reached by Kleene iteration from the empty set, the greatest
//! (the largest set contained in its own consequences) by iteration from the
//! full universe. On a universe of `n` tokens both stabilise within `n`
//! changing rounds.
//!
//! Besides explicit [`InductiveDefinition`]s, any monotone [`Operator`] can
//! be iterated; the relation module uses this for rule systems whose step
//! lists would be too large to materialise.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// An ordered finite list of pairwise distinct tokens.
#[derive(Clone, Debug)]
pub struct Universe<T> {
    items: Vec<T>,
    index: HashMap<T, usize>,
}

impl<T: Clone + Eq + Hash + fmt::Debug> Universe<T> {
    pub fn new(items: impl IntoIterator<Item = T>) -> Result<Self> {
        let items: Vec<T> = items.into_iter().collect();
        let mut index = HashMap::with_capacity(items.len());
        for (i, t) in items.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::malformed(format!("duplicate token {t:?} in universe")));
            }
        }
        Ok(Universe { items, index })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn token(&self, i: usize) -> &T {
        &self.items[i]
    }

    pub fn items(&self) -> &[T] {
        &self.items
    }

    pub fn position(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    fn require(&self, t: &T) -> Result<usize> {
        self.position(t)
            .ok_or_else(|| Error::malformed(format!("token {t:?} is not in the universe")))
    }

    /// The set of the given tokens; fails on a token outside the universe.
    pub fn set<'a>(&self, tokens: impl IntoIterator<Item = &'a T>) -> Result<TokenSet>
    where
        T: 'a,
    {
        let mut s = TokenSet::empty(self.len());
        for t in tokens {
            s.insert(self.require(t)?);
        }
        Ok(s)
    }

    pub fn tokens_of<'a>(&'a self, s: &'a TokenSet) -> impl Iterator<Item = &'a T> + 'a {
        s.iter().map(move |i| &self.items[i])
    }
}

/// A subset of a universe, stored as a bitset over token positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TokenSet {
    bits: FixedBitSet,
}

impl fmt::Debug for TokenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl TokenSet {
    pub fn empty(universe_len: usize) -> Self {
        TokenSet {
            bits: FixedBitSet::with_capacity(universe_len),
        }
    }

    pub fn full(universe_len: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe_len);
        bits.insert_range(..);
        TokenSet { bits }
    }

    pub fn from_indices(universe_len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe_len);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        TokenSet { bits }
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn into_bits(self) -> FixedBitSet {
        self.bits
    }

    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Member positions in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn is_subset(&self, other: &TokenSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &TokenSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &TokenSet) {
        self.bits.intersect_with(&other.bits);
    }
}

/// A monotone operator on the subsets of a finite universe.
pub trait Operator {
    fn universe_len(&self) -> usize;

    /// One-step consequences of `c`. Must be monotone in `c`.
    fn apply(&self, c: &TokenSet) -> TokenSet;
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub conclusion: usize,
    /// Sorted, without duplicates.
    pub premises: Vec<usize>,
}

/// A finite set of steps over a materialised universe.
#[derive(Clone, Debug)]
pub struct InductiveDefinition<T> {
    universe: Universe<T>,
    steps: Vec<Step>,
}

impl<T: Clone + Eq + Hash + fmt::Debug> InductiveDefinition<T> {
    pub fn new<I, P>(universe: Universe<T>, steps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, P)>,
        P: IntoIterator<Item = T>,
    {
        let mut indexed = Vec::new();
        for (c, ps) in steps {
            let c = universe.require(&c)?;
            let ps = ps
                .into_iter()
                .map(|p| universe.require(&p))
                .collect::<Result<Vec<_>>>()?;
            indexed.push((c, ps));
        }
        Self::from_indices(universe, indexed)
    }

    /// Steps given by token positions. Duplicate steps are merged.
    pub fn from_indices<I, P>(universe: Universe<T>, steps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, P)>,
        P: IntoIterator<Item = usize>,
    {
        let n = universe.len();
        let mut set = BTreeSet::new();
        for (c, ps) in steps {
            let mut premises: Vec<usize> = ps.into_iter().collect();
            if c >= n || premises.iter().any(|&p| p >= n) {
                return Err(Error::malformed(format!(
                    "step ({c}, {premises:?}) refers outside a universe of {n} tokens"
                )));
            }
            premises.sort_unstable();
            premises.dedup();
            set.insert(Step {
                conclusion: c,
                premises,
            });
        }
        Ok(InductiveDefinition {
            universe,
            steps: set.into_iter().collect(),
        })
    }

    pub fn universe(&self) -> &Universe<T> {
        &self.universe
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Conclusions of all steps whose premises lie in `c`.
    pub fn gamma(&self, c: &TokenSet) -> Result<TokenSet> {
        if c.universe_len() != self.universe.len() {
            return Err(Error::malformed(format!(
                "token set over {} tokens used with a universe of {}",
                c.universe_len(),
                self.universe.len()
            )));
        }
        Ok(self.apply(c))
    }
}

impl<T> Operator for InductiveDefinition<T> {
    fn universe_len(&self) -> usize {
        self.universe.items.len()
    }

    fn apply(&self, c: &TokenSet) -> TokenSet {
        let mut out = TokenSet::empty(self.universe.items.len());
        for s in &self.steps {
            if !out.contains(s.conclusion) && s.premises.iter().all(|&p| c.contains(p)) {
                out.insert(s.conclusion);
            }
        }
        out
    }
}

/// A fixpoint together with the number of iteration rounds that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub set: TokenSet,
    /// Rounds that changed the iterate; at most the universe size.
    pub rounds: usize,
}

/// Least fixpoint: iterate `A ← A ∪ Γ(A)` from the empty set.
pub fn least_fixpoint<O: Operator + ?Sized>(op: &O) -> Fixpoint {
    let n = op.universe_len();
    let mut a = TokenSet::empty(n);
    let mut rounds = 0;
    loop {
        let mut next = op.apply(&a);
        next.union_with(&a);
        if next == a {
            break;
        }
        a = next;
        rounds += 1;
        debug_assert!(rounds <= n);
    }
    Fixpoint { set: a, rounds }
}

/// Greatest fixpoint: iterate `Y ← Y ∩ Γ(Y)` from the full universe.
pub fn greatest_fixpoint<O: Operator + ?Sized>(op: &O) -> Fixpoint {
    let n = op.universe_len();
    let mut y = TokenSet::full(n);
    let mut rounds = 0;
    loop {
        let mut next = op.apply(&y);
        next.intersect_with(&y);
        if next == y {
            break;
        }
        y = next;
        rounds += 1;
        debug_assert!(rounds <= n);
    }
    Fixpoint { set: y, rounds }
}

pub fn lfp<O: Operator + ?Sized>(op: &O) -> TokenSet {
    least_fixpoint(op).set
}

pub fn gfp<O: Operator + ?Sized>(op: &O) -> TokenSet {
    greatest_fixpoint(op).set
}

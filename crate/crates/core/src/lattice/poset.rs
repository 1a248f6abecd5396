use fixedbitset::FixedBitSet;

use super::{LatticeTables, PcdLattice, MAX_ELEMENTS};
use crate::{Elem, Error, Result};

/// Posets are kept small enough that downsets fit in a `u32` mask.
pub const MAX_POSET_POINTS: usize = 16;

/// A finite partial order, stored as reflexive-transitive up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<FixedBitSet>,
}

fn point_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| {
            if k <= 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("p{i}")
            }
        })
        .collect()
}

impl Poset {
    /// The order generated by `pairs` (`(i, j)` meaning `i ≤ j`).
    pub fn new(names: Vec<String>, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let k = names.len();
        if k > MAX_POSET_POINTS {
            return Err(Error::TooLarge {
                what: "poset",
                size: k,
                limit: MAX_POSET_POINTS,
            });
        }
        let mut up = vec![FixedBitSet::with_capacity(k); k];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (i, j) in pairs {
            if i >= k || j >= k {
                return Err(Error::malformed(format!("poset pair ({i}, {j}) out of range")));
            }
            up[i].insert(j);
        }
        for m in 0..k {
            for i in 0..k {
                if up[i].contains(m) {
                    let via = up[m].clone();
                    up[i].union_with(&via);
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if up[i].contains(j) && up[j].contains(i) {
                    return Err(Error::malformed(format!(
                        "order is not antisymmetric: {} and {} are mutually below each other",
                        names[i], names[j]
                    )));
                }
            }
        }
        Ok(Poset { names, up })
    }

    pub fn antichain(k: usize) -> Result<Self> {
        Self::new(point_names(k), [])
    }

    pub fn chain(k: usize) -> Result<Self> {
        Self::new(point_names(k), (1..k).map(|i| (i - 1, i)))
    }

    pub fn with_default_names(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(point_names(k), pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// Strict order pairs `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].ones().filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    fn down_mask(&self, j: usize) -> u32 {
        (0..self.len()).filter(|&i| self.leq(i, j)).fold(0, |m, i| m | 1 << i)
    }

    pub fn is_downset(&self, mask: u32) -> bool {
        (0..self.len())
            .filter(|&j| mask >> j & 1 == 1)
            .all(|j| self.down_mask(j) & !mask == 0)
    }

    /// The lattice of downsets ordered by inclusion; elements are listed in
    /// increasing mask order, so the empty downset comes first.
    pub fn downset_lattice(&self) -> Result<DownsetLattice> {
        let k = self.len();
        let downs: Vec<u32> = (0..k).map(|j| self.down_mask(j)).collect();
        let is_down = |mask: u32| (0..k).filter(|&j| mask >> j & 1 == 1).all(|j| downs[j] & !mask == 0);
        let mut masks = Vec::new();
        for mask in 0u32..(1u32 << k) {
            if is_down(mask) {
                masks.push(mask);
                if masks.len() > MAX_ELEMENTS {
                    return Err(Error::TooLarge {
                        what: "downset lattice",
                        size: masks.len(),
                        limit: MAX_ELEMENTS,
                    });
                }
            }
        }
        let n = masks.len();
        let pos = |m: u32| masks.binary_search(&m).expect("closed under the lattice operations");
        let names = masks
            .iter()
            .map(|&m| {
                let members: Vec<&str> = (0..k)
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| self.names[i].as_str())
                    .collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let leq = masks
            .iter()
            .map(|&a| masks.iter().map(|&b| a & !b == 0).collect())
            .collect();
        let meet = masks
            .iter()
            .map(|&a| masks.iter().map(|&b| pos(a & b)).collect())
            .collect();
        let join = masks
            .iter()
            .map(|&a| masks.iter().map(|&b| pos(a | b)).collect())
            .collect();
        let pstar = masks
            .iter()
            .map(|&a| {
                let m = (0..k).filter(|&p| downs[p] & a == 0).fold(0, |m, p| m | 1 << p);
                pos(m)
            })
            .collect();
        let tables = LatticeTables {
            names,
            leq,
            meet,
            join,
            bottom: 0,
            top: n - 1,
            pstar,
        };
        Ok(DownsetLattice {
            poset: self.clone(),
            lattice: PcdLattice::from_tables_unchecked(tables),
            masks,
        })
    }
}

/// A lattice of downsets together with the poset it came from.
#[derive(Clone, Debug)]
pub struct DownsetLattice {
    pub poset: Poset,
    pub lattice: PcdLattice,
    /// Downset of each lattice element, as a bitmask over poset points.
    pub masks: Vec<u32>,
}

impl DownsetLattice {
    pub fn element_of(&self, mask: u32) -> Option<Elem> {
        self.masks.binary_search(&mask).ok()
    }
}

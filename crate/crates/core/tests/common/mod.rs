//! Brute-force oracles shared by the integration tests. Everything here is
//! recomputed from the order relation alone, by definition, without calling
//! the library's derived operations.
#![allow(dead_code)]

use pointfree::lattice::{PcdLattice, Poset};
use pointfree::relation::Relation;

/// Tables recomputed from `leq`.
pub struct Brute {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bot: usize,
    pub top: usize,
    pub pstar: Vec<usize>,
}

impl Brute {
    pub fn new(l: &PcdLattice) -> Self {
        let n = l.len();
        let leq: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| l.leq(x, y)).collect()).collect();
        let bot = (0..n).find(|&x| (0..n).all(|y| leq[x][y])).unwrap();
        let top = (0..n).find(|&x| (0..n).all(|y| leq[y][x])).unwrap();
        let glb = |x: usize, y: usize| {
            (0..n)
                .filter(|&z| leq[z][x] && leq[z][y])
                .find(|&z| (0..n).all(|w| !(leq[w][x] && leq[w][y]) || leq[w][z]))
                .unwrap()
        };
        let lub = |x: usize, y: usize| {
            (0..n)
                .filter(|&z| leq[x][z] && leq[y][z])
                .find(|&z| (0..n).all(|w| !(leq[x][w] && leq[y][w]) || leq[z][w]))
                .unwrap()
        };
        let meet: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| glb(x, y)).collect()).collect();
        let join: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| lub(x, y)).collect()).collect();
        // y* = the largest c with c ∧ y = 0.
        let pstar = (0..n)
            .map(|y| {
                let disjoint: Vec<usize> = (0..n).filter(|&c| meet[c][y] == bot).collect();
                *disjoint
                    .iter()
                    .find(|&&c| disjoint.iter().all(|&d| leq[d][c]))
                    .unwrap()
            })
            .collect();
        Brute {
            n,
            leq,
            meet,
            join,
            bot,
            top,
            pstar,
        }
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |a, b| self.join[a][b])
    }

    /// `y ≺ x` iff `x ∨ y* = 1`.
    pub fn wi(&self, y: usize, x: usize) -> bool {
        self.join[x][self.pstar[y]] == self.top
    }

    pub fn wi_relation(&self) -> Relation {
        let n = self.n;
        Relation::from_pairs(
            n,
            (0..n)
                .flat_map(|y| (0..n).map(move |x| (y, x)))
                .filter(|&(y, x)| self.wi(y, x))
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_regular_wrt(&self, basis: &[usize]) -> bool {
        (0..self.n).all(|x| self.join_all(basis.iter().copied().filter(|&b| self.wi(b, x))) == x)
    }
}

/// Conditions 1–7 on the carrier `p`, straight from their statements.
pub fn si_conditions(b: &Brute, p: &[usize], r: &Relation) -> [bool; 7] {
    let has = |x: usize, y: usize| r.contains(x, y);
    let rp: Vec<(usize, usize)> = r.pairs().collect();
    let c1 = has(b.bot, b.bot) && has(b.top, b.top);
    let c2 = rp.iter().all(|&(a, bb)| {
        p.iter()
            .all(|&x| !b.leq[x][a] || p.iter().all(|&y| !b.leq[bb][y] || has(x, y)))
    });
    let c3 = rp
        .iter()
        .all(|&(x, a)| rp.iter().filter(|&&(x2, _)| x2 == x).all(|&(_, c)| has(x, b.meet[a][c])));
    let c4 = rp
        .iter()
        .all(|&(x, a)| rp.iter().filter(|&&(_, a2)| a2 == a).all(|&(y, _)| has(b.join[x][y], a)));
    let c5 = rp.iter().all(|&(a, bb)| has(b.pstar[bb], b.pstar[a]));
    let c6 = rp.iter().all(|&(x, y)| b.wi(x, y));
    let c7 = rp.iter().all(|&(x, y)| p.iter().any(|&z| has(x, z) && has(z, y)));
    [c1, c2, c3, c4, c5, c6, c7]
}

/// `ext: target → source` preserves 0, 1, binary meets and binary joins.
pub fn is_frame_hom(src: &Brute, tgt: &Brute, ext: &[usize]) -> bool {
    ext[tgt.bot] == src.bot
        && ext[tgt.top] == src.top
        && (0..tgt.n).all(|a| {
            (0..tgt.n).all(|c| {
                ext[tgt.meet[a][c]] == src.meet[ext[a]][ext[c]] && ext[tgt.join[a][c]] == src.join[ext[a]][ext[c]]
            })
        })
}

/// A bijection that preserves and reflects the order.
pub fn is_order_iso(src: &Brute, tgt: &Brute, ext: &[usize]) -> bool {
    let mut seen = vec![false; src.n];
    for &x in ext {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    src.n == tgt.n && (0..tgt.n).all(|a| (0..tgt.n).all(|c| tgt.leq[a][c] == src.leq[ext[a]][ext[c]]))
}

/// Disjoint union, points renamed `a, b, ...` in order.
pub fn disjoint_union(parts: &[Poset]) -> Poset {
    let mut pairs = Vec::new();
    let mut off = 0;
    for p in parts {
        for i in 0..p.len() {
            for j in 0..p.len() {
                if i != j && p.leq(i, j) {
                    pairs.push((off + i, off + j));
                }
            }
        }
        off += p.len();
    }
    Poset::with_default_names(off, pairs).unwrap()
}

/// Connected component of each point, numbered in order of first point.
pub fn components(p: &Poset) -> Vec<usize> {
    let k = p.len();
    let mut comp = vec![usize::MAX; k];
    let mut next = 0;
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = next;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if comp[j] == usize::MAX && (p.leq(i, j) || p.leq(j, i)) {
                    comp[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    comp
}

/// All subsets of `0..n` as bitmasks.
pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

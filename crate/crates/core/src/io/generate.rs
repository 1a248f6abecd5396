use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Basis, DownsetLattice, PcdLattice, Poset};
use crate::relation::{largest_interpolative, Relation};
use crate::{Error, Result};

/// Largest poset `generate` accepts: its downset lattice has at most `2^8`
/// elements.
pub const MAX_GENERATED_POINTS: usize = 8;

/// The generator behind every seeded construction in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A poset on `k` points where each `i < j` is made comparable with
/// probability ½, then closed transitively. Index order is a linear extension.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Result<Poset> {
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.random_bool(0.5) {
                pairs.push((i, j));
            }
        }
    }
    Poset::with_default_names(k, pairs)
}

pub fn generate_downsets(seed: u64, size: usize) -> Result<DownsetLattice> {
    if size > MAX_GENERATED_POINTS {
        return Err(Error::TooLarge {
            what: "generated poset",
            size,
            limit: MAX_GENERATED_POINTS,
        });
    }
    random_poset(&mut rng(seed), size)?.downset_lattice()
}

/// The downset lattice of a random poset; a pure function of its arguments.
pub fn generate(seed: u64, size: usize) -> Result<PcdLattice> {
    Ok(generate_downsets(seed, size)?.lattice)
}

/// A uniformly chosen value for each point, in a linear extension order,
/// among those above the images of everything below it. Gives up after a
/// fixed number of dead ends (possible when the target lacks upper bounds)
/// and falls back to a random constant map. `None` only for an empty target
/// and a nonempty source.
pub fn random_monotone<R: Rng + ?Sized>(rng: &mut R, src: &Poset, tgt: &Poset) -> Option<Vec<usize>> {
    if tgt.is_empty() {
        return src.is_empty().then(Vec::new);
    }
    let k = src.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (0..k).filter(|&q| src.leq(q, p)).count());
    'attempt: for _ in 0..64 {
        let mut phi = vec![usize::MAX; k];
        for &p in &order {
            let allowed: Vec<usize> = (0..tgt.len())
                .filter(|&t| (0..k).all(|q| q == p || !src.leq(q, p) || tgt.leq(phi[q], t)))
                .collect();
            match allowed.choose(rng) {
                Some(&t) => phi[p] = t,
                None => continue 'attempt,
            }
        }
        return Some(phi);
    }
    Some(vec![rng.random_range(0..tgt.len()); k])
}

/// Keeps each pair of `r` independently with probability `p`.
pub fn random_subrelation<R: Rng + ?Sized>(rng: &mut R, r: &Relation, p: f64) -> Relation {
    Relation::from_pairs(r.n(), r.pairs().filter(|_| rng.random_bool(p)).collect::<Vec<_>>())
}

/// A random subset of `≺` on the carrier, pruned to its largest
/// interpolative part so that it can seed a strong inclusion.
pub fn random_interpolating_seed<R: Rng + ?Sized>(rng: &mut R, l: &PcdLattice, carrier: &Basis) -> Relation {
    let wi = l.well_inside_relation().restrict(carrier);
    largest_interpolative(&random_subrelation(rng, &wi, 0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::lattice_document;
    use crate::io::Document;

    #[test]
    fn small_sizes() {
        assert_eq!(generate(7, 0).unwrap().len(), 1);
        let two = generate(7, 1).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.leq(0, 1));
        assert!(matches!(generate(0, 9), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn deterministic() {
        let render = |s| Document::Lattice(lattice_document("g", &generate(s, 4).unwrap())).render();
        for s in 0..5 {
            assert_eq!(render(s), render(s));
        }
        assert!((0..20).map(render).collect::<std::collections::HashSet<_>>().len() > 1);
    }

    #[test]
    fn monotone_maps_are_monotone() {
        let mut r = rng(3);
        for _ in 0..50 {
            let a = random_poset(&mut r, 5).unwrap();
            let b = random_poset(&mut r, 3).unwrap();
            let phi = random_monotone(&mut r, &a, &b).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    assert!(!a.leq(i, j) || b.leq(phi[i], phi[j]));
                }
            }
        }
    }
}

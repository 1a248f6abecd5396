use super::{Basis, PcdLattice};
use crate::{Elem, Error, Result};

/// A family of elements claimed to join to at least `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub target: Elem,
    pub parts: Vec<Elem>,
}

impl Cover {
    pub fn of_top(l: &PcdLattice, parts: impl IntoIterator<Item = Elem>) -> Self {
        Cover {
            target: l.top(),
            parts: parts.into_iter().collect(),
        }
    }
}

/// Smallest subfamily of `parts` whose join is above `target`. Among those
/// of minimal size the lexicographically first (by element index) is chosen.
pub fn minimal_subcover(l: &PcdLattice, parts: &[Elem], target: Elem) -> Result<Vec<Elem>> {
    let mut parts: Vec<Elem> = parts.to_vec();
    parts.sort_unstable();
    parts.dedup();
    if let Some(&bad) = parts.iter().find(|&&p| p >= l.len()) {
        return Err(Error::malformed(format!("cover part {bad} out of range")));
    }
    let join = l.join_all(parts.iter().copied());
    if !l.leq(target, join) {
        return Err(Error::NotACover {
            join: l.name(join).to_string(),
            target: l.name(target).to_string(),
        });
    }
    for k in 0..=parts.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let j = l.join_all(idx.iter().map(|&i| parts[i]));
            if l.leq(target, j) {
                return Ok(idx.iter().map(|&i| parts[i]).collect());
            }
            if !next_combination(&mut idx, parts.len()) {
                break;
            }
        }
    }
    unreachable!("the full family covers")
}

/// Advances `idx` to the next k-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Extracts a finite subcover of a basic cover. Finite lattices are compact,
/// so this succeeds whenever the parts lie in the basis and really cover.
pub fn is_compact(l: &PcdLattice, b: &Basis, c: &Cover) -> Result<Vec<Elem>> {
    if let Some(&p) = c.parts.iter().find(|&&p| p >= l.len() || !b.contains(p)) {
        return Err(Error::malformed(format!("cover part {p} is not a basis element")));
    }
    minimal_subcover(l, &c.parts, c.target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn compactness_examples() {
        let b2 = PcdLattice::boolean(2).unwrap();
        let full = b2.full_basis();
        let (a, a_star, top) = (1, 2, 3);
        assert_eq!(b2.pseudocomplement(a), a_star);
        assert_eq!(is_compact(&b2, &full, &Cover::of_top(&b2, [top])).unwrap(), vec![top]);
        assert_eq!(is_compact(&b2, &full, &Cover::of_top(&b2, [a, a_star])).unwrap(), vec![a, a_star]);
        assert_eq!(
            is_compact(&b2, &full, &Cover::of_top(&b2, [a, a_star, top])).unwrap(),
            vec![top]
        );
        assert!(matches!(
            is_compact(&b2, &full, &Cover::of_top(&b2, [a])),
            Err(Error::NotACover { .. })
        ));
        let atoms = Basis::from_elems(4, [1, 2]);
        assert!(is_compact(&b2, &atoms, &Cover::of_top(&b2, [top])).is_err());
    }

    #[test]
    fn one_element_lattice_has_empty_subcover() {
        let one = PcdLattice::chain(["t"]).unwrap();
        let c = Cover::of_top(&one, [0]);
        assert_eq!(is_compact(&one, &one.full_basis(), &c).unwrap(), Vec::<Elem>::new());
    }
}

//! Axiom checking for raw lattice tables.

use std::fmt;

use crate::par::{self, Execution};
use crate::{Elem, Error, Result};

/// Structurally plain tables describing a candidate pcd-lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub bottom: Elem,
    pub top: Elem,
    pub pstar: Vec<Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    Bounds,
    MeetExists,
    JoinExists,
    Meet,
    Join,
    Distributivity,
    Pseudocomplement,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::Bounds => "bounds",
            Axiom::MeetExists => "meet-existence",
            Axiom::JoinExists => "join-existence",
            Axiom::Meet => "meet",
            Axiom::Join => "join",
            Axiom::Distributivity => "distributivity",
            Axiom::Pseudocomplement => "pseudocomplement",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Every violated axiom, each with its first witness in index order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub names: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, witness: Option<Vec<Elem>>) {
        if let Some(witness) = witness {
            self.violations.push(Violation { axiom, witness });
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            let labels: Vec<&str> = v
                .witness
                .iter()
                .map(|&x| self.names.get(x).map(String::as_str).unwrap_or("?"))
                .collect();
            write!(f, "{} [{}]", v.axiom, labels.join(" "))?;
        }
        Ok(())
    }
}

fn check_dimensions(t: &LatticeTables) -> Result<()> {
    let n = t.names.len();
    let square = |m: &[Vec<Elem>]| m.len() == n && m.iter().all(|r| r.len() == n && r.iter().all(|&v| v < n));
    if t.leq.len() != n || t.leq.iter().any(|r| r.len() != n) {
        return Err(Error::malformed(format!("order matrix is not {n}x{n}")));
    }
    if !square(&t.meet) || !square(&t.join) {
        return Err(Error::malformed(format!("meet/join tables are not {n}x{n} over 0..{n}")));
    }
    if t.pstar.len() != n || t.pstar.iter().any(|&v| v >= n) {
        return Err(Error::malformed("pseudocomplement vector has the wrong shape"));
    }
    if n == 0 {
        return Err(Error::malformed("a lattice needs at least one element"));
    }
    if t.bottom >= n || t.top >= n {
        return Err(Error::malformed("bottom/top index out of range"));
    }
    Ok(())
}

/// Lists every violated pcd-lattice axiom. Fails only on shape errors.
pub fn validate(t: &LatticeTables) -> Result<ValidationReport> {
    validate_with(t, Execution::default())
}

pub fn validate_with(t: &LatticeTables, exec: Execution) -> Result<ValidationReport> {
    check_dimensions(t)?;
    let n = t.names.len();
    let le = |a: Elem, b: Elem| t.leq[a][b];
    let mut r = ValidationReport {
        names: t.names.clone(),
        violations: Vec::new(),
    };

    r.push(Axiom::Reflexivity, (0..n).find(|&x| !le(x, x)).map(|x| vec![x]));
    r.push(
        Axiom::Antisymmetry,
        pairs(n).find(|&(x, y)| x != y && le(x, y) && le(y, x)).map(|(x, y)| vec![x, y]),
    );
    r.push(
        Axiom::Transitivity,
        par::find_first(exec, n, |x| {
            (0..n)
                .filter(|&y| le(x, y))
                .find_map(|y| (0..n).find(|&z| le(y, z) && !le(x, z)).map(|z| vec![x, y, z]))
        }),
    );
    r.push(
        Axiom::Bounds,
        (0..n).find(|&x| !le(t.bottom, x) || !le(x, t.top)).map(|x| vec![x]),
    );
    r.push(
        Axiom::Meet,
        par::find_first(exec, n, |x| {
            (0..n).find_map(|y| {
                let m = t.meet[x][y];
                if !le(m, x) || !le(m, y) {
                    return Some(vec![x, y, m]);
                }
                (0..n).find(|&z| le(z, x) && le(z, y) && !le(z, m)).map(|z| vec![x, y, z])
            })
        }),
    );
    r.push(
        Axiom::Join,
        par::find_first(exec, n, |x| {
            (0..n).find_map(|y| {
                let j = t.join[x][y];
                if !le(x, j) || !le(y, j) {
                    return Some(vec![x, y, j]);
                }
                (0..n).find(|&z| le(x, z) && le(y, z) && !le(j, z)).map(|z| vec![x, y, z])
            })
        }),
    );
    r.push(
        Axiom::Distributivity,
        par::find_first(exec, n, |x| {
            pairs(n)
                .find(|&(y, z)| t.meet[x][t.join[y][z]] != t.join[t.meet[x][y]][t.meet[x][z]])
                .map(|(y, z)| vec![x, y, z])
        }),
    );
    r.push(
        Axiom::Pseudocomplement,
        par::find_first(exec, n, |x| {
            let p = t.pstar[x];
            if t.meet[x][p] != t.bottom {
                return Some(vec![x, p]);
            }
            (0..n)
                .find(|&c| t.meet[c][x] == t.bottom && !le(c, p))
                .map(|c| vec![x, c])
        }),
    );
    Ok(r)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

/// Derives tables from a reflexive-transitive order matrix. Non-existence of
/// bounds, meets or joins is reported; the pseudocomplement of `y` is taken
/// as the join of everything meeting `y` at the bottom.
pub(crate) fn derive_tables(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<LatticeTables, ValidationReport> {
    let n = names.len();
    let mut report = ValidationReport {
        names: names.clone(),
        violations: Vec::new(),
    };
    let le = |a: usize, b: usize| leq[a][b];
    report.push(
        Axiom::Antisymmetry,
        pairs(n).find(|&(x, y)| x != y && le(x, y) && le(y, x)).map(|(x, y)| vec![x, y]),
    );
    if !report.is_valid() {
        return Err(report);
    }
    let bottom = (0..n).find(|&b| (0..n).all(|x| le(b, x)));
    let top = (0..n).find(|&t| (0..n).all(|x| le(x, t)));
    let (Some(bottom), Some(top)) = (bottom, top) else {
        report.push(Axiom::Bounds, Some(vec![]));
        return Err(report);
    };

    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    let mut no_meet = None;
    let mut no_join = None;
    for x in 0..n {
        for y in x..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
            match lower.iter().find(|&&m| lower.iter().all(|&z| le(z, m))) {
                Some(&m) => {
                    meet[x][y] = m;
                    meet[y][x] = m;
                }
                None => {
                    no_meet.get_or_insert(vec![x, y]);
                }
            }
            let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            match upper.iter().find(|&&j| upper.iter().all(|&z| le(j, z))) {
                Some(&j) => {
                    join[x][y] = j;
                    join[y][x] = j;
                }
                None => {
                    no_join.get_or_insert(vec![x, y]);
                }
            }
        }
    }
    report.push(Axiom::MeetExists, no_meet);
    report.push(Axiom::JoinExists, no_join);
    if !report.is_valid() {
        return Err(report);
    }
    let pstar = (0..n)
        .map(|y| {
            (0..n)
                .filter(|&c| meet[c][y] == bottom)
                .fold(bottom, |acc, c| join[acc][c])
        })
        .collect();
    Ok(LatticeTables {
        names,
        leq,
        meet,
        join,
        bottom,
        top,
        pstar,
    })
}

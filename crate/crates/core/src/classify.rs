//! Module-class predicates read directly off the submodule lattice.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{annihilator, colon_ideal, colon_submodule, ideal_times, SubmoduleLattice};
use crate::module::FiniteModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub multiplication: bool,
    pub comultiplication: bool,
    pub distributive: bool,
    pub uniserial: bool,
    pub local: bool,
    pub hollow: bool,
    pub coatomic: bool,
    pub fi_coatomic: bool,
    pub duo: bool,
    pub self_projective: bool,
    pub semisimple: bool,
    pub spcd: bool,
}

/// Dense `n × n` tables of lattice sums and meets.
#[derive(Clone, Debug)]
pub struct LatticeTables {
    n: usize,
    join: Vec<usize>,
    meet: Vec<usize>,
}

impl LatticeTables {
    pub fn new(m: &FiniteModule, lattice: &SubmoduleLattice) -> Self {
        let n = lattice.len();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let s = lattice.sum(m, a, b);
                let i = lattice.meet(a, b);
                join[a * n + b] = s;
                join[b * n + a] = s;
                meet[a * n + b] = i;
                meet[b * n + a] = i;
            }
        }
        LatticeTables { n, join, meet }
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }
}

pub fn classify(
    m: &FiniteModule,
    lattice: &SubmoduleLattice,
    tables: &LatticeTables,
    fi: &[bool],
    self_projective: bool,
) -> Result<Classification> {
    let n = lattice.len();
    let top = lattice.top_id();
    let mut multiplication = true;
    let mut comultiplication = true;
    for l in lattice.iter() {
        let colon = colon_ideal(m, l)?;
        if &ideal_times(m, &colon, lattice.top())? != l {
            multiplication = false;
        }
        let ann = annihilator(m, l)?;
        if &colon_submodule(m, lattice.zero(), &ann)? != l {
            comultiplication = false;
        }
    }
    let distributive = (0..n).all(|a| {
        (0..n).all(|b| (b..n).all(|c| tables.meet(a, tables.join(b, c)) == tables.join(tables.meet(a, b), tables.meet(a, c))))
    });
    let uniserial = (0..n).all(|a| (a..n).all(|b| lattice.le(a, b) || lattice.le(b, a)));
    let maximal = lattice.maximal();
    let local = lattice.sum_all(m, 0..top) != top;
    let hollow = (0..top).all(|a| (0..top).all(|b| tables.join(a, b) != top));
    let coatomic = (0..top).all(|l| maximal.iter().any(|&k| lattice.le(l, k)));
    let proper_fi: Vec<usize> = (0..top).filter(|&i| fi[i]).collect();
    let max_fi = lattice.maximal_among(&proper_fi);
    let fi_coatomic = proper_fi.iter().all(|&l| max_fi.iter().any(|&k| lattice.le(l, k)));
    let duo = fi.iter().all(|&f| f);
    let semisimple = lattice.sum_all(m, lattice.minimal_nonzero()) == top;
    Ok(Classification {
        multiplication,
        comultiplication,
        distributive,
        uniserial,
        local,
        hollow,
        coatomic,
        fi_coatomic,
        duo,
        self_projective,
        semisimple,
        spcd: self_projective && coatomic && duo,
    })
}

/// `𝓤^f.i.(L)`, `𝓠^f.i.(L)` and the maximal proper f.i. submodules above `L`, as lattice ids of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UfiQfi {
    pub u_fi: Vec<usize>,
    pub q_fi: Vec<usize>,
    pub max_fi: Vec<usize>,
}

/// `q_fi_in_quotient` lists the ids (in `M`) of submodules `L̃ ⊇ L` whose image is f.i. in `M/L`.
pub fn ufi_qfi(lattice: &SubmoduleLattice, fi: &[bool], l: usize, q_fi_in_quotient: Vec<usize>) -> Result<UfiQfi> {
    if !fi[l] {
        return Err(Error::NotFullyInvariant);
    }
    let u_fi: Vec<usize> = lattice.ids().filter(|&k| fi[k] && lattice.le(l, k)).collect();
    let proper: Vec<usize> = u_fi.iter().copied().filter(|&k| k != lattice.top_id()).collect();
    let all_proper_fi: Vec<usize> = (0..lattice.top_id()).filter(|&k| fi[k]).collect();
    let max_fi = lattice
        .maximal_among(&all_proper_fi)
        .into_iter()
        .filter(|k| proper.contains(k))
        .collect();
    let mut q_fi = q_fi_in_quotient;
    q_fi.sort_unstable();
    Ok(UfiQfi { u_fi, q_fi, max_fi })
}

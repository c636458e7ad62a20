//! Everything computed about one module, built once and shared by the checks.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, Classification, LatticeTables, UfiQfi};
use crate::error::{Error, Result};
use crate::hom::{fully_invariant_flags, hom_group, hom_into, self_projectivity_witness, star_with, HomGroup, MapsInto};
use crate::lattice::{Radicals, Submodule, SubmoduleLattice};
use crate::module::{FiniteModule, Quotient};
use crate::topology::{FiniteTopology, Variant};

/// Size caps for rings, modules and enumerated endomorphism rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub ring: usize,
    pub module: usize,
    pub end: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring: crate::ring::DEFAULT_RING_CAP,
            module: crate::module::DEFAULT_MODULE_CAP,
            end: crate::hom::DEFAULT_END_CAP,
        }
    }
}

pub struct ModuleAnalysis {
    module: FiniteModule,
    lattice: SubmoduleLattice,
    tables: LatticeTables,
    end: HomGroup,
    fi: Vec<bool>,
    fi_ids: Vec<usize>,
    radicals: Radicals,
    self_projectivity_witness: Option<usize>,
    classification: Classification,
    caps: Caps,
    maps: RwLock<HashMap<usize, Arc<MapsInto>>>,
    stars: RwLock<HashMap<(usize, usize), usize>>,
    fully_prime: Vec<bool>,
    points: Vec<usize>,
    full: FiniteTopology,
    fi_topology: FiniteTopology,
    quotients: RwLock<HashMap<usize, Arc<QuotientAnalysis>>>,
}

/// `M/L` analysed in its own right, with the lattice correspondence to `M`.
pub struct QuotientAnalysis {
    pub l: usize,
    pub quotient: Quotient,
    pub analysis: ModuleAnalysis,
    /// `up[k]` is the id of `K/L` for `K ⊇ L`.
    pub up: Vec<Option<usize>>,
    /// `down[q]` is the id in `M` of the preimage of `q`.
    pub down: Vec<usize>,
}

impl std::fmt::Debug for ModuleAnalysis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleAnalysis")
            .field("order", &self.module.order())
            .field("submodules", &self.lattice.len())
            .field("points", &self.points)
            .finish()
    }
}

impl ModuleAnalysis {
    pub fn new(module: FiniteModule, caps: Caps) -> Result<Self> {
        Self::build(module, caps, None)
    }

    /// As [`ModuleAnalysis::new`], with the spectrum replaced by `points` before the topologies are built.
    pub fn with_spectrum_points(module: FiniteModule, caps: Caps, points: Vec<usize>) -> Result<Self> {
        Self::build(module, caps, Some(points))
    }

    fn build(module: FiniteModule, caps: Caps, points: Option<Vec<usize>>) -> Result<Self> {
        let lattice = SubmoduleLattice::enumerate(&module, caps.module)?;
        let tables = LatticeTables::new(&module, &lattice);
        let end = hom_group(&module, &module)?;
        let fi = fully_invariant_flags(&lattice, &end);
        let fi_ids: Vec<usize> = (0..fi.len()).filter(|&i| fi[i]).collect();
        let radicals = lattice.radicals(&module);
        let witness = self_projectivity_witness(&module, &lattice, &end)?;
        let classification = classify(&module, &lattice, &tables, &fi, witness.is_none())?;
        let placeholder = FiniteTopology::build(&lattice, &[], &fi, Variant::Full)?;
        let mut a = ModuleAnalysis {
            module,
            lattice,
            tables,
            end,
            fi,
            fi_ids,
            radicals,
            self_projectivity_witness: witness,
            classification,
            caps,
            maps: RwLock::new(HashMap::new()),
            stars: RwLock::new(HashMap::new()),
            fully_prime: Vec::new(),
            points: Vec::new(),
            full: placeholder.clone(),
            fi_topology: placeholder,
            quotients: RwLock::new(HashMap::new()),
        };
        let mut fully_prime = vec![false; a.lattice.len()];
        for k in 0..a.lattice.top_id() {
            if a.fi[k] {
                fully_prime[k] = a.fully_prime_by_stars(k)?;
            }
        }
        a.fully_prime = fully_prime;
        let mut points = match points {
            Some(p) => p,
            None => (0..a.lattice.len()).filter(|&k| a.fully_prime[k]).collect(),
        };
        points.sort_unstable();
        points.dedup();
        a.full = FiniteTopology::build(&a.lattice, &points, &a.fi, Variant::Full)?;
        a.fi_topology = FiniteTopology::build(&a.lattice, &points, &a.fi, Variant::Fi)?;
        a.points = points;
        Ok(a)
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn lattice(&self) -> &SubmoduleLattice {
        &self.lattice
    }

    pub fn tables(&self) -> &LatticeTables {
        &self.tables
    }

    pub fn sub(&self, id: usize) -> &Submodule {
        self.lattice.get(id)
    }

    pub fn top(&self) -> usize {
        self.lattice.top_id()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn end(&self) -> &HomGroup {
        &self.end
    }

    pub fn fi(&self) -> &[bool] {
        &self.fi
    }

    pub fn fi_ids(&self) -> &[usize] {
        &self.fi_ids
    }

    pub fn proper_fi(&self) -> Vec<usize> {
        self.fi_ids.iter().copied().filter(|&k| k != self.top()).collect()
    }

    pub fn radicals(&self) -> &Radicals {
        &self.radicals
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn is_self_projective(&self) -> bool {
        self.self_projectivity_witness.is_none()
    }

    /// A proper `L` for which some map `M → M/L` does not lift.
    pub fn self_projectivity_witness(&self) -> Option<usize> {
        self.self_projectivity_witness
    }

    /// Spectrum points as submodule ids, canonical order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn topology(&self, variant: Variant) -> &FiniteTopology {
        match variant {
            Variant::Full => &self.full,
            Variant::Fi => &self.fi_topology,
        }
    }

    /// `Hom(M, Y)` generators with values in `M`.
    pub fn maps_into(&self, y: usize) -> Result<Arc<MapsInto>> {
        if let Some(m) = self.maps.read().expect("poisoned").get(&y) {
            return Ok(m.clone());
        }
        let maps = Arc::new(hom_into(&self.module, self.lattice.get(y))?);
        Ok(self.maps.write().expect("poisoned").entry(y).or_insert(maps).clone())
    }

    /// `X ∗_M Y` as a lattice id.
    pub fn star(&self, x: usize, y: usize) -> Result<usize> {
        if let Some(&s) = self.stars.read().expect("poisoned").get(&(x, y)) {
            return Ok(s);
        }
        let maps = self.maps_into(y)?;
        let s = star_with(&self.module, self.lattice.get(x), &maps);
        let id = self
            .lattice
            .id_of_bits(s.bits())
            .ok_or_else(|| Error::NotASubmodule("star product is missing from the lattice".into()))?;
        self.stars.write().expect("poisoned").insert((x, y), id);
        Ok(id)
    }

    fn fully_prime_by_stars(&self, k: usize) -> Result<bool> {
        for &x in &self.fi_ids {
            if self.lattice.le(x, k) {
                continue;
            }
            for &y in &self.fi_ids {
                if self.lattice.le(y, k) {
                    continue;
                }
                if self.lattice.le(self.star(x, y)?, k) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The star-product criterion, computed afresh for `K ⋨^f.i. M`.
    pub fn is_fully_prime_in(&self, k: usize) -> Result<bool> {
        if k == self.top() {
            return Err(Error::NotProper);
        }
        if !self.fi[k] {
            return Err(Error::NotFullyInvariant);
        }
        Ok(self.fully_prime[k])
    }

    /// Image of `K ⊇ L` under `M → M/L`, and preimages back.
    pub fn quotient(&self, l: usize) -> Result<Arc<QuotientAnalysis>> {
        if let Some(q) = self.quotients.read().expect("poisoned").get(&l) {
            return Ok(q.clone());
        }
        let quotient = self.module.quotient(self.lattice.get(l))?;
        let analysis = ModuleAnalysis::new(quotient.module.clone(), self.caps)?;
        let ql = analysis.lattice();
        let qn = quotient.module.order();
        let mut down = Vec::with_capacity(ql.len());
        for q in ql.iter() {
            let mut bits = FixedBitSet::with_capacity(self.module.order());
            for m in self.module.elements() {
                if q.contains(quotient.projection[m as usize]) {
                    bits.insert(m as usize);
                }
            }
            down.push(self.lattice.id_of_bits(&bits).expect("preimage of a submodule is a submodule"));
        }
        let mut up = vec![None; self.lattice.len()];
        for (k, slot) in up.iter_mut().enumerate() {
            if self.lattice.le(l, k) {
                let mut bits = FixedBitSet::with_capacity(qn);
                for x in self.lattice.get(k).bits().ones() {
                    bits.insert(quotient.projection[x] as usize);
                }
                *slot = ql.id_of_bits(&bits);
            }
        }
        let qa = Arc::new(QuotientAnalysis {
            l,
            quotient,
            analysis,
            up,
            down,
        });
        Ok(self.quotients.write().expect("poisoned").entry(l).or_insert(qa).clone())
    }

    /// `𝓤^f.i.(L)`, `𝓠^f.i.(L)` and `𝓜^f.i.(L)`; `L = M` is allowed and gives `{M}` for both families.
    pub fn ufi_qfi(&self, l: usize) -> Result<UfiQfi> {
        let q_fi = if l == self.top() {
            vec![l]
        } else {
            let q = self.quotient(l)?;
            q.analysis.fi_ids().iter().map(|&x| q.down[x]).collect()
        };
        crate::classify::ufi_qfi(&self.lattice, &self.fi, l, q_fi)
    }

    /// Element list of a submodule, for reports.
    pub fn elements_of(&self, id: usize) -> Vec<u32> {
        self.lattice.get(id).elements()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn regular(n: u32) -> ModuleAnalysis {
        let m = FiniteModule::regular(Arc::new(FiniteRing::zn(n).unwrap()));
        ModuleAnalysis::new(m, Caps::default()).unwrap()
    }

    #[test]
    fn z6_points() {
        let a = regular(6);
        let sets: Vec<Vec<u32>> = a.points().iter().map(|&p| a.elements_of(p)).collect();
        assert_eq!(sets, vec![vec![0, 3], vec![0, 2, 4]]);
        assert!(a.classification().spcd);
    }

    #[test]
    fn z4_quotient_correspondence() {
        let a = regular(4);
        let q = a.quotient(1).unwrap();
        assert_eq!(q.analysis.module().order(), 2);
        assert_eq!(q.down, vec![1, 2]);
        assert_eq!(q.up, vec![None, Some(0), Some(1)]);
        let u = a.ufi_qfi(1).unwrap();
        assert_eq!(u.u_fi, u.q_fi);
    }

    #[test]
    fn fully_prime_rejects_bad_inputs() {
        let a = regular(6);
        assert_eq!(a.is_fully_prime_in(a.top()), Err(Error::NotProper));
        assert_eq!(a.is_fully_prime_in(0), Ok(false));
    }
}

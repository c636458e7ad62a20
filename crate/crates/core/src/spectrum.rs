//! Prime and fully prime submodules, varieties, radicals and the max-property.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::analysis::{Caps, ModuleAnalysis};
use crate::error::{Error, Result};
use crate::hom::cogen_gen;
use crate::lattice::{additive_span, Ideal, SubmoduleLattice};
use crate::module::FiniteModule;
use crate::ring::FiniteRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PointFlags {
    pub fully_prime: bool,
    pub prime: bool,
    /// `M/K` is cogenerated by each of its non-zero submodules.
    pub b_prime_quotient: bool,
    /// `M/K` is cogenerated by each of its non-zero f.i. submodules.
    pub quotient_fully_prime: bool,
    pub maximal: bool,
    pub maximal_fi: bool,
    pub minimal_in_spec: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumPoint {
    pub id: usize,
    pub elements: Vec<u32>,
    pub flags: PointFlags,
}

#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub points: Vec<SpectrumPoint>,
    pub rad_fp: Vec<u32>,
    pub rad_fp_id: usize,
    pub fp_primeless: bool,
    /// Prime f.i. proper submodules that are not fully prime.
    pub prime_not_fully_prime: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxProperty {
    /// `(L, L^e)` for each `L ∈ Max(M)`.
    pub l_e: Vec<(usize, usize)>,
    pub complete: bool,
    pub plain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalAbove {
    pub points: Vec<usize>,
    /// Set when the variety is empty.
    pub empty_variety: bool,
}

/// Largest `Max(M)` for which the plain max-property is decided by listing subsets.
const PLAIN_SUBSET_LIMIT: usize = 16;

impl ModuleAnalysis {
    /// `rRm ⊆ K ⇒ m ∈ K or rM ⊆ K` over all `r`, `m`.
    pub fn is_prime_in(&self, k: usize) -> Result<bool> {
        if k == self.top() {
            return Err(Error::NotProper);
        }
        let elementwise = self.prime_elementwise(k);
        debug_assert_eq!(elementwise, self.prime_by_annihilators(k)?);
        Ok(elementwise)
    }

    pub fn prime_elementwise(&self, k: usize) -> bool {
        let m = self.module();
        let ring = m.ring();
        let kk = self.sub(k);
        let kills: Vec<bool> = ring.elements().map(|r| m.elements().all(|x| kk.contains(m.act(r, x)))).collect();
        ring.elements().all(|r| {
            kills[r as usize]
                || m.elements()
                    .all(|x| kk.contains(x) || !ring.elements().all(|s| kk.contains(m.act(ring.mul(r, s), x))))
        })
    }

    /// `ann(M/K) = ann(L/K)` for every `L ⊋ K`.
    pub fn prime_by_annihilators(&self, k: usize) -> Result<bool> {
        if k == self.top() {
            return Err(Error::NotProper);
        }
        let lat = self.lattice();
        let ann = |l: usize| -> FixedBitSet {
            let m = self.module();
            let kk = self.sub(k);
            let mut bits = FixedBitSet::with_capacity(m.ring().order());
            for r in m.ring().elements() {
                if self.sub(l).bits().ones().all(|x| kk.contains(m.act(r, x as u32))) {
                    bits.insert(r as usize);
                }
            }
            bits
        };
        let whole = ann(self.top());
        Ok(lat.ids().filter(|&l| l != k && lat.le(k, l)).all(|l| ann(l) == whole))
    }

    /// `IL ⊆ K ⇒ L ⊆ K or IM ⊆ K` over two-sided ideals `I` and all `L`.
    pub fn prime_by_ideals(&self, k: usize, ideals: &[Ideal]) -> bool {
        let m = self.module();
        let kk = self.sub(k);
        let lat = self.lattice();
        let maps_into_k = |i: &Ideal, l: usize| i.elements.ones().all(|r| self.sub(l).bits().ones().all(|x| kk.contains(m.act(r as u32, x as u32))));
        ideals
            .iter()
            .filter(|i| i.is_two_sided)
            .all(|i| maps_into_k(i, self.top()) || lat.ids().all(|l| lat.le(l, k) || !maps_into_k(i, l)))
    }

    /// Point ids of `𝓥^fp(L)` and `𝓧^fp(L)`, as submodule ids.
    pub fn variety(&self, l: usize) -> (Vec<usize>, Vec<usize>) {
        self.points().iter().partition(|&&k| self.lattice().le(l, k))
    }

    /// `⋂ 𝓥^fp(L)`, or `M` when the variety is empty.
    pub fn rad_fp(&self, l: usize) -> usize {
        let (v, _) = self.variety(l);
        self.lattice().meet_all(v)
    }

    pub fn is_fp_radical(&self, l: usize) -> bool {
        self.rad_fp(l) == l
    }

    pub fn minimal_above(&self, l: usize) -> Result<MinimalAbove> {
        if l == self.top() {
            return Err(Error::NotProper);
        }
        if !self.fi()[l] {
            return Err(Error::NotFullyInvariant);
        }
        let (v, _) = self.variety(l);
        let points = self.lattice().minimal_among(&v);
        Ok(MinimalAbove {
            empty_variety: points.is_empty(),
            points,
        })
    }

    pub fn max_property(&self) -> MaxProperty {
        max_property_of(self.lattice(), &self.radicals().max_list)
    }

    /// `Max^f.i.(M)`: maximal members of the proper f.i. submodules.
    pub fn max_fi(&self) -> Vec<usize> {
        self.lattice().maximal_among(&self.proper_fi())
    }

    pub fn spec_fp(&self) -> Result<Spectrum> {
        let lat = self.lattice();
        let maximal = &self.radicals().max_list;
        let max_fi = self.max_fi();
        let minimal = lat.minimal_among(self.points());
        let mut points = Vec::new();
        for &k in self.points() {
            let (b_prime_quotient, quotient_fully_prime) = self.quotient_cogeneration(k)?;
            points.push(SpectrumPoint {
                id: k,
                elements: self.elements_of(k),
                flags: PointFlags {
                    fully_prime: self.fi()[k] && k != self.top() && self.is_fully_prime_in(k)?,
                    prime: self.is_prime_in(k)?,
                    b_prime_quotient,
                    quotient_fully_prime,
                    maximal: maximal.contains(&k),
                    maximal_fi: max_fi.contains(&k),
                    minimal_in_spec: minimal.contains(&k),
                },
            });
        }
        let rad = self.rad_fp(0);
        let mut prime_not_fully_prime = Vec::new();
        for k in self.proper_fi() {
            if !self.is_fully_prime_in(k)? && self.is_prime_in(k)? {
                prime_not_fully_prime.push(k);
            }
        }
        Ok(Spectrum {
            points,
            rad_fp: self.elements_of(rad),
            rad_fp_id: rad,
            fp_primeless: self.points().is_empty(),
            prime_not_fully_prime,
        })
    }

    /// Whether `M/K` is cogenerated by all, and by all f.i., non-zero submodules.
    pub fn quotient_cogeneration(&self, k: usize) -> Result<(bool, bool)> {
        let q = self.quotient(k)?;
        let qa = &q.analysis;
        let mut all = true;
        let mut fi = true;
        for s in 1..qa.lattice().len() {
            let c = cogen_gen(qa.module(), qa.sub(s))?.cogenerated;
            all &= c;
            if qa.fi()[s] {
                fi &= c;
            }
        }
        Ok((all, fi))
    }
}

pub fn max_property_of(lat: &SubmoduleLattice, max_list: &[usize]) -> MaxProperty {
    let l_e: Vec<(usize, usize)> = max_list
        .iter()
        .map(|&l| (l, lat.meet_all(max_list.iter().copied().filter(|&k| k != l))))
        .collect();
    let complete = l_e.iter().all(|&(l, e)| !lat.le(e, l));
    let plain = if max_list.len() <= PLAIN_SUBSET_LIMIT {
        max_list.iter().all(|&l| {
            let others: Vec<usize> = max_list.iter().copied().filter(|&k| k != l).collect();
            (1u32..1 << others.len()).all(|mask| {
                let meet = lat.meet_all((0..others.len()).filter(|&i| mask >> i & 1 == 1).map(|i| others[i]));
                !lat.le(meet, l)
            })
        })
    } else {
        // finite Max: plain and complete coincide
        complete
    };
    MaxProperty { l_e, complete, plain }
}

/// `IJ`: the additive span of all products.
pub fn ideal_product(ring: &FiniteRing, regular: &FiniteModule, i: &FixedBitSet, j: &FixedBitSet) -> FixedBitSet {
    let mut zero = FixedBitSet::with_capacity(ring.order());
    zero.insert(0);
    let products: Vec<u32> = i.ones().flat_map(|a| j.ones().map(move |b| ring.mul(a as u32, b as u32))).collect();
    additive_span(regular, zero, products)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RingPredicates {
    pub commutative: bool,
    pub pi_regular: bool,
    pub zero_dimensional: bool,
    pub von_neumann_regular: bool,
    pub semisimple: bool,
    pub left_duo: bool,
    pub right_duo: bool,
    /// Always true for finite rings.
    pub semilocal: bool,
    pub max_complete: bool,
    pub prime_ring: bool,
}

/// Two-sided ideals, `Spec(R)` and the ring-level predicates.
pub struct RingSpectrum {
    pub ring: Arc<FiniteRing>,
    pub regular: ModuleAnalysis,
    pub opposite_regular: ModuleAnalysis,
    pub ideals: Vec<Ideal>,
    /// Indices into `ideals`.
    pub spec: Vec<usize>,
    pub maximal: Vec<usize>,
    pub predicates: RingPredicates,
}

impl RingSpectrum {
    pub fn new(ring: Arc<FiniteRing>, caps: Caps) -> Result<Self> {
        let regular = ModuleAnalysis::new(FiniteModule::regular(ring.clone()), caps)?;
        let op = Arc::new(ring.opposite());
        let opposite_regular = ModuleAnalysis::new(FiniteModule::regular(op), caps)?;
        let ideals: Vec<Ideal> = two_sided_ideals(&ring, regular.lattice())?;
        let n = ring.order();
        let proper: Vec<usize> = (0..ideals.len()).filter(|&i| ideals[i].len() < n).collect();
        let spec: Vec<usize> = proper.iter().copied().filter(|&i| is_prime_ideal(&ring, &ideals[i])).collect();
        let le = |a: usize, b: usize| ideals[a].elements.is_subset(&ideals[b].elements);
        let maximal: Vec<usize> = proper
            .iter()
            .copied()
            .filter(|&i| proper.iter().all(|&j| j == i || !le(i, j)))
            .collect();
        let zero_dimensional = spec.iter().all(|p| maximal.contains(p));
        let elems: Vec<u32> = ring.elements().collect();
        let pi_regular = elems.iter().all(|&a| {
            (1..=n).any(|k| {
                let p = ring.pow(a, k);
                elems.iter().any(|&x| ring.mul(ring.mul(p, x), p) == p)
            })
        });
        let von_neumann_regular = elems.iter().all(|&a| elems.iter().any(|&x| ring.mul(ring.mul(a, x), a) == a));
        let semisimple = regular.radicals().rad == 0;
        let left_duo = regular.classification().duo;
        let right_duo = opposite_regular.classification().duo;
        let l_e: Vec<bool> = maximal
            .iter()
            .map(|&l| {
                let mut meet = FixedBitSet::with_capacity(n);
                meet.insert_range(..);
                for &k in maximal.iter().filter(|&&k| k != l) {
                    meet.intersect_with(&ideals[k].elements);
                }
                !meet.is_subset(&ideals[l].elements)
            })
            .collect();
        let zero_is_prime = spec.iter().any(|&p| ideals[p].len() == 1);
        let predicates = RingPredicates {
            commutative: ring.is_commutative(),
            pi_regular,
            zero_dimensional,
            von_neumann_regular,
            semisimple,
            left_duo,
            right_duo,
            semilocal: true,
            max_complete: l_e.iter().all(|&b| b),
            prime_ring: zero_is_prime,
        };
        Ok(RingSpectrum {
            ring,
            regular,
            opposite_regular,
            ideals,
            spec,
            maximal,
            predicates,
        })
    }

    /// `Spec(R)` as element sets.
    pub fn spec_sets(&self) -> Vec<Vec<u32>> {
        self.spec.iter().map(|&i| self.ideals[i].members()).collect()
    }
}

/// Left ideals that are also right ideals.
pub fn two_sided_ideals(ring: &FiniteRing, left: &SubmoduleLattice) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for l in left.iter() {
        let ideal = Ideal::from_bits(ring, l.bits().clone())?;
        if ideal.is_two_sided {
            out.push(ideal);
        }
    }
    Ok(out)
}

/// `aRb ⊆ P ⇒ a ∈ P or b ∈ P`.
pub fn is_prime_ideal(ring: &FiniteRing, p: &Ideal) -> bool {
    if p.len() == ring.order() {
        return false;
    }
    ring.elements().all(|a| {
        p.contains(a)
            || ring
                .elements()
                .all(|b| p.contains(b) || !ring.elements().all(|r| p.contains(ring.mul(ring.mul(a, r), b))))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(n: u32) -> ModuleAnalysis {
        let m = FiniteModule::regular(Arc::new(FiniteRing::zn(n).unwrap()));
        ModuleAnalysis::new(m, Caps::default()).unwrap()
    }

    #[test]
    fn prime_tests() {
        let a = regular(6);
        let two = a.lattice().find(&[0, 2, 4]).unwrap();
        assert!(a.is_prime_in(two).unwrap());
        let b = regular(4);
        assert!(!b.is_prime_in(0).unwrap());
        let c = regular(5);
        assert!(c.is_prime_in(0).unwrap());
    }

    #[test]
    fn spectra_and_radicals() {
        let a = regular(6);
        let s = a.spec_fp().unwrap();
        assert_eq!(s.rad_fp, vec![0]);
        assert!(s.points.iter().all(|p| p.flags.maximal && p.flags.prime && p.flags.b_prime_quotient));
        let b = regular(4);
        let s = b.spec_fp().unwrap();
        assert_eq!(s.rad_fp, vec![0, 2]);
        assert_eq!(b.rad_fp(0), 1);
        assert_eq!(b.rad_fp(b.top()), b.top());
    }

    #[test]
    fn varieties_and_minimality() {
        let a = regular(6);
        let three = a.lattice().find(&[0, 3]).unwrap();
        let (v, x) = a.variety(three);
        assert_eq!(v, vec![three]);
        assert_eq!(x.len(), 1);
        assert_eq!(a.minimal_above(0).unwrap().points.len(), 2);
        assert_eq!(a.minimal_above(a.top()), Err(Error::NotProper));
    }

    #[test]
    fn max_properties() {
        assert!(regular(6).max_property().complete);
        assert!(regular(8).max_property().complete);
        let p = regular(30).max_property();
        assert!(p.complete && p.plain);
    }

    #[test]
    fn ring_spectra() {
        let z6 = RingSpectrum::new(Arc::new(FiniteRing::zn(6).unwrap()), Caps::default()).unwrap();
        assert_eq!(z6.spec_sets(), vec![vec![0, 3], vec![0, 2, 4]]);
        assert!(z6.predicates.von_neumann_regular && z6.predicates.semisimple && z6.predicates.zero_dimensional);
        let z4 = RingSpectrum::new(Arc::new(FiniteRing::zn(4).unwrap()), Caps::default()).unwrap();
        assert_eq!(z4.spec_sets(), vec![vec![0, 2]]);
        assert!(z4.predicates.pi_regular && !z4.predicates.von_neumann_regular && !z4.predicates.semisimple);
        let z5 = RingSpectrum::new(Arc::new(FiniteRing::zn(5).unwrap()), Caps::default()).unwrap();
        assert_eq!(z5.spec_sets(), vec![vec![0]]);
        assert!(z5.predicates.prime_ring);
    }
}

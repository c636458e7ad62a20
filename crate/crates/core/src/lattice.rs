//! Submodules, the submodule lattice and the colon operations.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::module::{FiniteModule, ModuleId};
use crate::ring::FiniteRing;

/// A subset of a module closed under addition and the ring action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Submodule {
    parent: ModuleId,
    bits: FixedBitSet,
}

impl Submodule {
    /// Validates closure; the set must contain zero.
    pub fn from_elements(m: &FiniteModule, elements: &[u32]) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(m.order());
        for &x in elements {
            if x as usize >= m.order() {
                return Err(Error::NotASubmodule(format!("element {x} is out of range")));
            }
            bits.insert(x as usize);
        }
        if !bits.contains(0) {
            return Err(Error::NotASubmodule("zero is missing".into()));
        }
        for a in bits.ones() {
            for b in bits.ones() {
                if !bits.contains(m.add(a as u32, b as u32) as usize) {
                    return Err(Error::NotASubmodule(format!("{a} + {b} leaves the set")));
                }
            }
            for r in m.ring().elements() {
                if !bits.contains(m.act(r, a as u32) as usize) {
                    return Err(Error::NotASubmodule(format!("{r}·{a} leaves the set")));
                }
            }
        }
        Ok(Submodule { parent: m.id(), bits })
    }

    pub(crate) fn from_bits(parent: ModuleId, bits: FixedBitSet) -> Self {
        Submodule { parent, bits }
    }

    pub fn parent(&self) -> ModuleId {
        self.parent
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    /// Never true: every submodule contains zero.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn contains(&self, m: u32) -> bool {
        self.bits.contains(m as usize)
    }

    /// Sorted element list.
    pub fn elements(&self) -> Vec<u32> {
        self.bits.ones().map(|x| x as u32).collect()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.bits.is_subset(&other.bits)
    }
}

impl Ord for Submodule {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
            .then_with(|| self.parent.cmp(&other.parent))
    }
}

impl PartialOrd for Submodule {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Submodule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

/// Additive span of `gens` inside `m`, starting from `start` (which must be a subgroup).
pub(crate) fn additive_span(m: &FiniteModule, start: FixedBitSet, gens: impl IntoIterator<Item = u32>) -> FixedBitSet {
    let mut set = start;
    let mut members: Vec<u32> = set.ones().map(|x| x as u32).collect();
    for g in gens {
        if set.contains(g as usize) {
            continue;
        }
        let base = members.clone();
        let mut shift = g;
        while !set.contains(shift as usize) {
            for &c in &base {
                let x = m.add(c, shift);
                set.insert(x as usize);
                members.push(x);
            }
            shift = m.add(shift, g);
        }
    }
    set
}

/// `RS`: the submodule generated by a set of elements.
pub fn generated_submodule(m: &FiniteModule, gens: &[u32]) -> Submodule {
    let mut zero = FixedBitSet::with_capacity(m.order());
    zero.insert(0);
    let orbit = gens.iter().flat_map(|&g| m.ring().elements().map(move |r| m.act(r, g)));
    Submodule::from_bits(m.id(), additive_span(m, zero, orbit.collect::<Vec<_>>()))
}

/// `A + B`.
pub fn submodule_sum(m: &FiniteModule, a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.parent != m.id() || b.parent != m.id() {
        return Err(Error::ParentMismatch);
    }
    let mut bits = FixedBitSet::with_capacity(m.order());
    for x in a.bits.ones() {
        for y in b.bits.ones() {
            bits.insert(m.add(x as u32, y as u32) as usize);
        }
    }
    Ok(Submodule::from_bits(m.id(), bits))
}

/// `A ∩ B`.
pub fn submodule_intersect(a: &Submodule, b: &Submodule) -> Result<Submodule> {
    if a.parent != b.parent {
        return Err(Error::ParentMismatch);
    }
    let mut bits = a.bits.clone();
    bits.intersect_with(&b.bits);
    Ok(Submodule::from_bits(a.parent, bits))
}

/// An additive subgroup of a ring with recomputed one- and two-sided flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Ideal {
    #[serde(serialize_with = "serialize_bits")]
    pub elements: FixedBitSet,
    pub is_left: bool,
    pub is_right: bool,
    pub is_two_sided: bool,
}

fn serialize_bits<S: Serializer>(bits: &FixedBitSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    bits.ones().collect::<Vec<_>>().serialize(s)
}

impl Ideal {
    pub fn from_bits(ring: &FiniteRing, elements: FixedBitSet) -> Result<Self> {
        if !elements.contains(0) {
            return Err(Error::NotASubmodule("zero is missing".into()));
        }
        for a in elements.ones() {
            for b in elements.ones() {
                if !elements.contains(ring.add(a as u32, b as u32) as usize) {
                    return Err(Error::NotASubmodule(format!("{a} + {b} leaves the set")));
                }
            }
        }
        let is_left = elements
            .ones()
            .all(|a| ring.elements().all(|r| elements.contains(ring.mul(r, a as u32) as usize)));
        let is_right = elements
            .ones()
            .all(|a| ring.elements().all(|r| elements.contains(ring.mul(a as u32, r) as usize)));
        Ok(Ideal {
            elements,
            is_left,
            is_right,
            is_two_sided: is_left && is_right,
        })
    }

    pub fn contains(&self, r: u32) -> bool {
        self.elements.contains(r as usize)
    }

    pub fn members(&self) -> Vec<u32> {
        self.elements.ones().map(|x| x as u32).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same set as a submodule of the regular module (requires a left ideal).
    pub fn as_submodule(&self, regular: &FiniteModule) -> Result<Submodule> {
        if !self.is_left {
            return Err(Error::NotASubmodule("not a left ideal".into()));
        }
        Ok(Submodule::from_bits(regular.id(), self.elements.clone()))
    }
}

/// `(L :_R M) = {r ∈ R | rM ⊆ L}`.
pub fn colon_ideal(m: &FiniteModule, l: &Submodule) -> Result<Ideal> {
    if l.parent != m.id() {
        return Err(Error::ParentMismatch);
    }
    let mut bits = FixedBitSet::with_capacity(m.ring().order());
    for r in m.ring().elements() {
        if m.elements().all(|x| l.contains(m.act(r, x))) {
            bits.insert(r as usize);
        }
    }
    Ideal::from_bits(m.ring(), bits)
}

/// `(0 :_R L) = {r ∈ R | rL = 0}`.
pub fn annihilator(m: &FiniteModule, l: &Submodule) -> Result<Ideal> {
    if l.parent != m.id() {
        return Err(Error::ParentMismatch);
    }
    let mut bits = FixedBitSet::with_capacity(m.ring().order());
    for r in m.ring().elements() {
        if l.bits.ones().all(|x| m.act(r, x as u32) == 0) {
            bits.insert(r as usize);
        }
    }
    Ideal::from_bits(m.ring(), bits)
}

/// `(L :_M I) = {m ∈ M | Im ⊆ L}`; one-sided `I` may produce a non-submodule, which is reported.
pub fn colon_submodule(m: &FiniteModule, l: &Submodule, ideal: &Ideal) -> Result<Submodule> {
    if l.parent != m.id() {
        return Err(Error::ParentMismatch);
    }
    let members = ideal.members();
    let set: Vec<u32> = m.elements().filter(|&x| members.iter().all(|&i| l.contains(m.act(i, x)))).collect();
    Submodule::from_elements(m, &set)
}

/// `IL`, the submodule additively spanned by `{i·x}`.
pub fn ideal_times(m: &FiniteModule, ideal: &Ideal, l: &Submodule) -> Result<Submodule> {
    if l.parent != m.id() {
        return Err(Error::ParentMismatch);
    }
    let mut zero = FixedBitSet::with_capacity(m.order());
    zero.insert(0);
    let products: Vec<u32> = ideal
        .elements
        .ones()
        .flat_map(|i| l.bits.ones().map(move |x| (i as u32, x as u32)))
        .map(|(i, x)| m.act(i, x))
        .collect();
    let span = additive_span(m, zero, products);
    // Closing under the action covers one-sided ideals as well.
    let closed = generated_submodule(m, &span.ones().map(|x| x as u32).collect::<Vec<_>>());
    Ok(closed)
}

/// The complete lattice `𝓛(M)` in canonical order.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    module: ModuleId,
    order: usize,
    subs: Vec<Submodule>,
    index: HashMap<FixedBitSet, usize>,
    cyclic: Vec<usize>,
    /// `below[j]` has bit `i` set iff `subs[i] ⊆ subs[j]`.
    below: Vec<FixedBitSet>,
}

/// `Max(M)`, `Rad(M)` and `Soc(M)` as lattice ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Radicals {
    pub max_list: Vec<usize>,
    pub rad: usize,
    pub soc: usize,
}

impl SubmoduleLattice {
    /// Enumerates every submodule as a sum of cyclic submodules `Rm`.
    pub fn enumerate(m: &FiniteModule, cap: usize) -> Result<Self> {
        if m.order() > cap {
            return Err(Error::SizeCap {
                what: "module",
                size: m.order(),
                cap,
            });
        }
        let n = m.order();
        let mut cyclic_sets: Vec<FixedBitSet> = Vec::new();
        let mut cyclic_of = Vec::with_capacity(n);
        let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
        for x in m.elements() {
            let mut bits = FixedBitSet::with_capacity(n);
            for r in m.ring().elements() {
                bits.insert(m.act(r, x) as usize);
            }
            let k = *seen.entry(bits.clone()).or_insert_with(|| {
                cyclic_sets.push(bits);
                cyclic_sets.len() - 1
            });
            cyclic_of.push(k);
        }
        let cyclic_members: Vec<Vec<u32>> = cyclic_sets.iter().map(|b| b.ones().map(|x| x as u32).collect()).collect();
        let mut family: HashMap<FixedBitSet, ()> = HashMap::new();
        let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
        for c in &cyclic_sets {
            if family.insert(c.clone(), ()).is_none() {
                queue.push_back(c.clone());
            }
        }
        while let Some(a) = queue.pop_front() {
            let members: Vec<u32> = a.ones().map(|x| x as u32).collect();
            for (k, c) in cyclic_sets.iter().enumerate() {
                if c.is_subset(&a) {
                    continue;
                }
                let mut sum = FixedBitSet::with_capacity(n);
                for &x in &members {
                    for &y in &cyclic_members[k] {
                        sum.insert(m.add(x, y) as usize);
                    }
                }
                if !family.contains_key(&sum) {
                    family.insert(sum.clone(), ());
                    queue.push_back(sum);
                }
            }
        }
        let mut subs: Vec<Submodule> = family.into_keys().map(|bits| Submodule::from_bits(m.id(), bits)).collect();
        subs.sort();
        let index: HashMap<FixedBitSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.bits.clone(), i)).collect();
        let cyclic = cyclic_of.iter().map(|&k| index[&cyclic_sets[k]]).collect();
        let k = subs.len();
        let mut below = vec![FixedBitSet::with_capacity(k); k];
        for (j, target) in subs.iter().enumerate() {
            for (i, s) in subs.iter().enumerate().take(j + 1) {
                if s.bits.is_subset(&target.bits) {
                    below[j].insert(i);
                }
            }
        }
        Ok(SubmoduleLattice {
            module: m.id(),
            order: n,
            subs,
            index,
            cyclic,
            below,
        })
    }

    pub fn module_id(&self) -> ModuleId {
        self.module
    }

    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn get(&self, id: usize) -> &Submodule {
        &self.subs[id]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Submodule> {
        self.subs.iter()
    }

    pub fn ids(&self) -> std::ops::Range<usize> {
        0..self.subs.len()
    }

    pub fn zero_id(&self) -> usize {
        0
    }

    pub fn top_id(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn zero(&self) -> &Submodule {
        &self.subs[0]
    }

    pub fn top(&self) -> &Submodule {
        &self.subs[self.top_id()]
    }

    /// Id of the submodule with exactly this element set.
    pub fn find(&self, elements: &[u32]) -> Option<usize> {
        let mut bits = FixedBitSet::with_capacity(self.order);
        for &x in elements {
            if x as usize >= self.order {
                return None;
            }
            bits.insert(x as usize);
        }
        self.index.get(&bits).copied()
    }

    pub fn id_of(&self, s: &Submodule) -> Result<usize> {
        if s.parent != self.module {
            return Err(Error::ParentMismatch);
        }
        self.index
            .get(&s.bits)
            .copied()
            .ok_or_else(|| Error::NotASubmodule("set is not in the lattice".into()))
    }

    pub fn id_of_bits(&self, bits: &FixedBitSet) -> Option<usize> {
        self.index.get(bits).copied()
    }

    /// Id of `Rm`.
    pub fn cyclic(&self, m: u32) -> usize {
        self.cyclic[m as usize]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn sum(&self, m: &FiniteModule, a: usize, b: usize) -> usize {
        if self.le(a, b) {
            return b;
        }
        if self.le(b, a) {
            return a;
        }
        let s = submodule_sum(m, &self.subs[a], &self.subs[b]).expect("lattice members share a parent");
        self.index[&s.bits]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut bits = self.subs[a].bits.clone();
        bits.intersect_with(&self.subs[b].bits);
        self.index[&bits]
    }

    /// `⋂` of the given ids (`M` for none).
    pub fn meet_all(&self, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.top_id(), |acc, i| self.meet(acc, i))
    }

    /// `Σ` of the given ids (`0` for none).
    pub fn sum_all(&self, m: &FiniteModule, ids: impl IntoIterator<Item = usize>) -> usize {
        ids.into_iter().fold(self.zero_id(), |acc, i| self.sum(m, acc, i))
    }

    /// Maximal proper submodules.
    pub fn maximal(&self) -> Vec<usize> {
        let top = self.top_id();
        (0..top)
            .filter(|&i| (0..top).all(|j| j == i || !self.le(i, j)))
            .collect()
    }

    /// Minimal non-zero (simple) submodules.
    pub fn minimal_nonzero(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| (1..self.len()).all(|j| j == i || !self.le(j, i)))
            .collect()
    }

    /// Maximal elements of `candidates` under inclusion.
    pub fn maximal_among(&self, candidates: &[usize]) -> Vec<usize> {
        candidates
            .iter()
            .copied()
            .filter(|&i| candidates.iter().all(|&j| j == i || !self.le(i, j)))
            .collect()
    }

    /// Minimal elements of `candidates` under inclusion.
    pub fn minimal_among(&self, candidates: &[usize]) -> Vec<usize> {
        candidates
            .iter()
            .copied()
            .filter(|&i| candidates.iter().all(|&j| j == i || !self.le(j, i)))
            .collect()
    }

    pub fn radicals(&self, m: &FiniteModule) -> Radicals {
        let max_list = self.maximal();
        assert!(!max_list.is_empty(), "a finite non-zero module has a maximal submodule");
        let rad = self.meet_all(max_list.iter().copied());
        let soc = self.sum_all(m, self.minimal_nonzero());
        Radicals { max_list, rad, soc }
    }

    /// `Σ_{L ≪ M} L`.
    pub fn sum_of_superfluous(&self, m: &FiniteModule) -> usize {
        let small: Vec<usize> = self.ids().filter(|&i| self.is_superfluous(m, i)).collect();
        self.sum_all(m, small)
    }

    /// `⋂_{L ⊴ M} L`.
    pub fn meet_of_essential(&self) -> usize {
        self.meet_all(self.ids().filter(|&i| self.is_essential(i)).collect::<Vec<_>>())
    }

    /// `L ∩ L̃ ≠ 0` for every non-zero `L̃`.
    pub fn is_essential(&self, l: usize) -> bool {
        (1..self.len()).all(|j| self.meet(l, j) != 0)
    }

    /// `L + L̃ ≠ M` for every proper `L̃`.
    pub fn is_superfluous(&self, m: &FiniteModule, l: usize) -> bool {
        let top = self.top_id();
        (0..top).all(|j| self.sum(m, l, j) != top)
    }
}

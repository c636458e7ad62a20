use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{decompose, CyclicGroup};
use crate::lattice::Submodule;
use crate::ring::FiniteRing;

/// Default upper bound on module order.
pub const DEFAULT_MODULE_CAP: usize = 256;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed module; clones share it, rebuilt modules do not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleId(u64);

impl ModuleId {
    fn fresh() -> Self {
        ModuleId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A finite unital left module with a dense action table `act[r * |M| + m]`.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    id: ModuleId,
    ring: Arc<FiniteRing>,
    group: CyclicGroup,
    act: Vec<u32>,
}

impl FiniteModule {
    pub fn from_table(ring: Arc<FiniteRing>, add_cyclic: &[u32], act: Vec<u32>, cap: usize) -> Result<Self> {
        let group = CyclicGroup::new(add_cyclic)?;
        let n = group.size();
        if n > cap {
            return Err(Error::SizeCap {
                what: "module",
                size: n,
                cap,
            });
        }
        if n < 2 {
            return Err(Error::ZeroModule);
        }
        let expected = ring.order() * n;
        if act.len() != expected {
            return Err(Error::MalformedTable(format!(
                "action table has {} entries, expected {expected}",
                act.len()
            )));
        }
        if let Some(pos) = act.iter().position(|&x| x as usize >= n) {
            return Err(Error::MalformedTable(format!(
                "entry {} at position {pos} is not an element index below {n}",
                act[pos]
            )));
        }
        let module = FiniteModule {
            id: ModuleId::fresh(),
            ring,
            group,
            act,
        };
        module.validate()?;
        Ok(module)
    }

    /// The regular module `_R R`.
    pub fn regular(ring: Arc<FiniteRing>) -> Self {
        FiniteModule {
            id: ModuleId::fresh(),
            group: ring.group().clone(),
            act: ring.mul_table().to_vec(),
            ring,
        }
    }

    /// Builds the action from one matrix per ring element in `generators`.
    ///
    /// Row `i` of `matrices[g]` holds the digits of `generators[g] · e_i`. The
    /// generators must span `R` additively; `None` means the canonical
    /// additive generators of the ring.
    pub fn from_matrices(
        ring: Arc<FiniteRing>,
        add_cyclic: &[u32],
        matrices: &[Vec<Vec<u32>>],
        generators: Option<&[u32]>,
        cap: usize,
    ) -> Result<Self> {
        let group = CyclicGroup::new(add_cyclic)?;
        let n = group.size();
        if n > cap {
            return Err(Error::SizeCap {
                what: "module",
                size: n,
                cap,
            });
        }
        if n < 2 {
            return Err(Error::ZeroModule);
        }
        let default_gens = ring.additive_generators();
        let gens = generators.unwrap_or(&default_gens);
        if gens.len() != matrices.len() {
            return Err(Error::MalformedTable(format!(
                "{} matrices given for {} ring generators",
                matrices.len(),
                gens.len()
            )));
        }
        if let Some(&g) = gens.iter().find(|&&g| g as usize >= ring.order()) {
            return Err(Error::MalformedTable(format!("ring generator {g} is out of range")));
        }
        let mut gen_tables = Vec::with_capacity(gens.len());
        for (k, matrix) in matrices.iter().enumerate() {
            gen_tables.push(matrix_table(&group, matrix).map_err(|e| e.at(format!("/{k}")))?);
        }
        // Spread the generator actions over all of R by additive BFS.
        let size_r = ring.order();
        let mut tables: Vec<Option<Vec<u32>>> = vec![None; size_r];
        tables[0] = Some(vec![0; n]);
        let mut queue = VecDeque::from([0u32]);
        while let Some(r) = queue.pop_front() {
            let base = tables[r as usize].clone().unwrap();
            for (k, &g) in gens.iter().enumerate() {
                let s = ring.add(r, g);
                let sum: Vec<u32> = base.iter().zip(&gen_tables[k]).map(|(&a, &b)| group.add(a, b)).collect();
                match &tables[s as usize] {
                    Some(existing) if *existing != sum => {
                        return Err(Error::NotBiadditive {
                            r: s,
                            m: g,
                            n: r,
                        });
                    }
                    Some(_) => {}
                    None => {
                        tables[s as usize] = Some(sum);
                        queue.push_back(s);
                    }
                }
            }
        }
        if let Some(r) = tables.iter().position(Option::is_none) {
            return Err(Error::MalformedTable(format!(
                "ring element {r} is not an additive combination of the generators"
            )));
        }
        let act: Vec<u32> = tables.into_iter().flat_map(Option::unwrap).collect();
        let module = FiniteModule {
            id: ModuleId::fresh(),
            ring,
            group,
            act,
        };
        module.validate()?;
        Ok(module)
    }

    fn validate(&self) -> Result<()> {
        let ring = &*self.ring;
        let n = self.order() as u32;
        for m in 0..n {
            if self.act(ring.one(), m) != m {
                return Err(Error::NotUnital { m });
            }
        }
        for r in ring.elements() {
            for m in 0..n {
                let rm = self.act(r, m);
                for k in 0..n {
                    if self.act(r, self.add(m, k)) != self.add(rm, self.act(r, k)) {
                        return Err(Error::NotBiadditive { r, m, n: k });
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                let rs = ring.add(r, s);
                for m in 0..n {
                    if self.act(rs, m) != self.add(self.act(r, m), self.act(s, m)) {
                        return Err(Error::NotBiadditive { r, m, n: s });
                    }
                }
            }
        }
        for r in ring.elements() {
            for s in ring.elements() {
                let rs = ring.mul(r, s);
                for m in 0..n {
                    if self.act(rs, m) != self.act(r, self.act(s, m)) {
                        return Err(Error::NotAssociativeAction { r, s, m });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> ModuleId {
        self.id
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn group(&self) -> &CyclicGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.size()
    }

    pub fn add_cyclic(&self) -> &[u32] {
        self.group.orders()
    }

    #[inline]
    pub fn act(&self, r: u32, m: u32) -> u32 {
        self.act[r as usize * self.order() + m as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.group.add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.group.neg(a)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order() as u32
    }

    /// Flat action table.
    pub fn act_table(&self) -> &[u32] {
        &self.act
    }

    /// Canonical additive generators `e_i`.
    pub fn generators(&self) -> Vec<u32> {
        (0..self.group.rank()).map(|i| self.group.generator(i)).collect()
    }

    /// True when both modules are over structurally equal rings.
    pub fn same_ring(&self, other: &FiniteModule) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    /// `M/L` with least-index coset representatives.
    pub fn quotient(&self, l: &Submodule) -> Result<Quotient> {
        if l.parent() != self.id {
            return Err(Error::ParentMismatch);
        }
        if l.len() == self.order() {
            return Err(Error::ZeroModule);
        }
        let n = self.order();
        let members = l.elements();
        let mut rep = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for m in 0..n as u32 {
            if rep[m as usize] != u32::MAX {
                continue;
            }
            reps.push(m);
            for &x in &members {
                rep[self.add(m, x) as usize] = m;
            }
        }
        let dec = decompose(&reps, 0, n, |a, b| rep[self.add(a, b) as usize])?;
        let mut pos = vec![u32::MAX; n];
        for (x, &e) in dec.encode.iter().enumerate() {
            pos[e as usize] = x as u32;
        }
        let size_q = dec.encode.len();
        let mut act = vec![0u32; self.ring.order() * size_q];
        for r in self.ring.elements() {
            for (x, &e) in dec.encode.iter().enumerate() {
                act[r as usize * size_q + x] = pos[rep[self.act(r, e) as usize] as usize];
            }
        }
        let group = CyclicGroup::new(&dec.orders)?;
        let module = FiniteModule {
            id: ModuleId::fresh(),
            ring: self.ring.clone(),
            group,
            act,
        };
        debug_assert!(module.validate().is_ok());
        let projection = (0..n).map(|m| pos[rep[m] as usize]).collect();
        let mut representatives = vec![0u32; size_q];
        for (x, &e) in dec.encode.iter().enumerate() {
            representatives[x] = e;
        }
        Ok(Quotient {
            module,
            projection,
            representatives,
        })
    }

    /// `L` as a module in its own right, with its embedding into `M`.
    pub fn submodule_as_module(&self, l: &Submodule) -> Result<Embedded> {
        if l.parent() != self.id {
            return Err(Error::ParentMismatch);
        }
        if l.len() < 2 {
            return Err(Error::ZeroModule);
        }
        let n = self.order();
        let members = l.elements();
        let dec = decompose(&members, 0, n, |a, b| self.add(a, b))?;
        let mut position = vec![u32::MAX; n];
        for (x, &e) in dec.encode.iter().enumerate() {
            position[e as usize] = x as u32;
        }
        let size_l = dec.encode.len();
        let mut act = vec![0u32; self.ring.order() * size_l];
        for r in self.ring.elements() {
            for (x, &e) in dec.encode.iter().enumerate() {
                let image = position[self.act(r, e) as usize];
                if image == u32::MAX {
                    return Err(Error::NotASubmodule(format!("{r}·{e} leaves the set")));
                }
                act[r as usize * size_l + x] = image;
            }
        }
        let module = FiniteModule {
            id: ModuleId::fresh(),
            ring: self.ring.clone(),
            group: CyclicGroup::new(&dec.orders)?,
            act,
        };
        Ok(Embedded {
            module,
            embedding: dec.encode,
            position,
        })
    }

    /// External direct sum `M ⊕ N`; `M` carries the most significant digits.
    pub fn direct_sum(&self, other: &FiniteModule, cap: usize) -> Result<FiniteModule> {
        if !self.same_ring(other) {
            return Err(Error::RingMismatch);
        }
        let (a, b) = (self.order(), other.order());
        let size = a * b;
        if size > cap {
            return Err(Error::SizeCap {
                what: "module",
                size,
                cap,
            });
        }
        let mut add_cyclic = self.add_cyclic().to_vec();
        add_cyclic.extend_from_slice(other.add_cyclic());
        let mut act = vec![0u32; self.ring.order() * size];
        for r in self.ring.elements() {
            for x in 0..size {
                let (x1, x2) = ((x / b) as u32, (x % b) as u32);
                act[r as usize * size + x] = self.act(r, x1) * b as u32 + other.act(r, x2);
            }
        }
        Ok(FiniteModule {
            id: ModuleId::fresh(),
            ring: self.ring.clone(),
            group: CyclicGroup::new(&add_cyclic)?,
            act,
        })
    }

    /// The isomorphic copy `N` with `θ: M → N` given by a group automorphism `sigma`.
    ///
    /// `N` has the same additive group and the action `r·x = θ(r·θ⁻¹(x))`.
    pub fn transport(&self, sigma: &[u32]) -> Result<FiniteModule> {
        let n = self.order();
        if sigma.len() != n {
            return Err(Error::MalformedTable("automorphism has the wrong length".into()));
        }
        let mut inverse = vec![u32::MAX; n];
        for (m, &s) in sigma.iter().enumerate() {
            if s as usize >= n || inverse[s as usize] != u32::MAX {
                return Err(Error::MalformedTable("automorphism is not a bijection".into()));
            }
            inverse[s as usize] = m as u32;
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                if sigma[self.add(a, b) as usize] != self.add(sigma[a as usize], sigma[b as usize]) {
                    return Err(Error::MalformedTable("automorphism is not additive".into()));
                }
            }
        }
        let mut act = vec![0u32; self.ring.order() * n];
        for r in self.ring.elements() {
            for x in 0..n {
                act[r as usize * n + x] = sigma[self.act(r, inverse[x]) as usize];
            }
        }
        let module = FiniteModule {
            id: ModuleId::fresh(),
            ring: self.ring.clone(),
            group: self.group.clone(),
            act,
        };
        module.validate()?;
        Ok(module)
    }

    /// A non-identity automorphism of the additive group when one is cheap to write down.
    ///
    /// Prefers a shear `e_j ↦ e_j + e_i` (needs `d_i | d_j`), otherwise scales
    /// one generator by a unit other than 1. Falls back to the identity for `Z_2`.
    pub fn shear_automorphism(&self) -> Vec<u32> {
        let g = &self.group;
        let orders = g.orders();
        let k = orders.len();
        let mut images: Vec<u32> = (0..k).map(|i| g.generator(i)).collect();
        let shear = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).find(|&(i, j)| i != j && orders[j].is_multiple_of(orders[i]));
        if let Some((i, j)) = shear {
            images[j] = g.add(g.generator(j), g.generator(i));
        } else if let Some(i) = (0..k).find(|&i| orders[i] > 2) {
            images[i] = g.scale(g.generator(i), orders[i] as i128 - 1);
        }
        (0..g.size() as u32)
            .map(|m| {
                g.digits(m)
                    .iter()
                    .zip(&images)
                    .fold(0, |acc, (&d, &img)| g.add(acc, g.scale(img, d as i128)))
            })
            .collect()
    }
}

/// Digits-to-table expansion of a linear map given by images of generators.
fn matrix_table(group: &CyclicGroup, matrix: &[Vec<u32>]) -> Result<Vec<u32>> {
    let orders = group.orders();
    if matrix.len() != orders.len() {
        return Err(Error::MalformedTable(format!(
            "matrix has {} rows, expected {}",
            matrix.len(),
            orders.len()
        )));
    }
    let mut images = Vec::with_capacity(orders.len());
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != orders.len() {
            return Err(Error::MalformedTable(format!("row {i} has {} entries", row.len())).at(format!("/{i}")));
        }
        let img = group.index(row);
        if !orders[i].is_multiple_of(group.element_order(img)) {
            return Err(Error::MalformedTable(format!(
                "image of generator {i} has order {}, which does not divide {}",
                group.element_order(img),
                orders[i]
            ))
            .at(format!("/{i}")));
        }
        images.push(img);
    }
    Ok((0..group.size() as u32)
        .map(|m| {
            group
                .digits(m)
                .iter()
                .zip(&images)
                .fold(0, |acc, (&d, &img)| group.add(acc, group.scale(img, d as i128)))
        })
        .collect())
}

/// `M/L` together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FiniteModule,
    /// element of `M` ↦ element of `M/L`
    pub projection: Vec<u32>,
    /// element of `M/L` ↦ least element of its coset in `M`
    pub representatives: Vec<u32>,
}

/// A submodule re-encoded as a module.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub module: FiniteModule,
    /// element of `L` ↦ element of `M`
    pub embedding: Vec<u32>,
    /// element of `M` ↦ element of `L`, or `u32::MAX` outside `L`
    pub position: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SubmoduleLattice;

    fn z(n: u32) -> Arc<FiniteRing> {
        Arc::new(FiniteRing::zn(n).unwrap())
    }

    #[test]
    fn regular_z6() {
        let m = FiniteModule::regular(z(6));
        assert_eq!(m.order(), 6);
        assert_eq!(m.act(4, 5), 2);
    }

    #[test]
    fn scalar_module_z2_squared() {
        let m = FiniteModule::from_matrices(z(2), &[2, 2], &[vec![vec![1, 0], vec![0, 1]]], None, 256).unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(m.act(0, 3), 0);
        assert_eq!(m.act(1, 3), 3);
    }

    #[test]
    fn z2_plus_z4_over_z4() {
        let m = FiniteModule::from_matrices(z(4), &[2, 4], &[vec![vec![1, 0], vec![0, 1]]], None, 256).unwrap();
        let g = m.group();
        assert_eq!(m.act(3, g.index(&[1, 1])), g.index(&[1, 3]));
    }

    #[test]
    fn bad_matrix_order_is_reported() {
        // Z_2 ⊕ Z_4 over Z_8: any image of the order-2 generator must have order dividing 2.
        let err = FiniteModule::from_matrices(z(8), &[2, 4], &[vec![vec![0, 1], vec![0, 1]]], None, 256).unwrap_err();
        assert!(matches!(err.root(), Error::MalformedTable(_)));
    }

    #[test]
    fn non_unital_table_is_rejected() {
        let ring = z(2);
        let act = vec![0; 4];
        let err = FiniteModule::from_table(ring, &[2], act, 256).unwrap_err();
        assert_eq!(err, Error::NotUnital { m: 1 });
    }

    #[test]
    fn zero_module_is_rejected() {
        assert_eq!(FiniteModule::from_table(z(2), &[], vec![0, 0], 256).unwrap_err(), Error::ZeroModule);
    }

    #[test]
    fn quotient_of_z6_by_evens() {
        let m = FiniteModule::regular(z(6));
        let lat = SubmoduleLattice::enumerate(&m, 256).unwrap();
        let evens = lat.find(&[0, 2, 4]).unwrap();
        let q = m.quotient(lat.get(evens)).unwrap();
        assert_eq!(q.module.order(), 2);
        assert_eq!(q.representatives[q.projection[3] as usize], 1);
        assert_eq!(q.projection[0], q.projection[4]);
    }

    #[test]
    fn quotient_by_zero_is_bijective() {
        let m = FiniteModule::regular(z(4));
        let lat = SubmoduleLattice::enumerate(&m, 256).unwrap();
        let q = m.quotient(lat.zero()).unwrap();
        let mut p = q.projection.clone();
        p.sort_unstable();
        assert_eq!(p, vec![0, 1, 2, 3]);
        assert!(matches!(m.quotient(lat.top()), Err(Error::ZeroModule)));
    }

    #[test]
    fn transported_module_is_valid() {
        let m = FiniteModule::from_matrices(z(4), &[2, 4], &[vec![vec![1, 0], vec![0, 1]]], None, 256).unwrap();
        let sigma = m.shear_automorphism();
        assert!(sigma.iter().enumerate().any(|(i, &s)| i as u32 != s));
        m.transport(&sigma).unwrap();
    }
}

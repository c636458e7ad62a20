//! Brute-force oracles. Nothing here calls the Smith-normal-form or generator-based paths.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use modtop::analysis::Caps;
use modtop::module::FiniteModule;
use modtop::schema::build_module;
use modtop::verify::{default_catalog, EntrySpec};

pub type Set = Vec<u32>;

/// Bitmask of a subset for `|M| ≤ 32`.
pub fn mask(s: &[u32]) -> u64 {
    s.iter().fold(0, |acc, &x| acc | 1 << x)
}

pub fn unmask(bits: u64) -> Set {
    (0..64).filter(|i| bits >> i & 1 == 1).collect()
}

pub fn is_submodule(m: &FiniteModule, bits: u64) -> bool {
    if bits & 1 == 0 {
        return false;
    }
    let els = unmask(bits);
    els.iter().all(|&a| els.iter().all(|&b| bits >> m.add(a, b) & 1 == 1))
        && els.iter().all(|&a| m.ring().elements().all(|r| bits >> m.act(r, a) & 1 == 1))
}

/// Every subset containing zero, tested for closure.
pub fn submodules(m: &FiniteModule) -> BTreeSet<Set> {
    let n = m.order();
    assert!(n <= 20, "subset oracle is exponential");
    (0u64..1 << (n - 1))
        .map(|rest| rest << 1 | 1)
        .filter(|&b| is_submodule(m, b))
        .map(unmask)
        .collect()
}

/// `R`-linear maps `M → N` given as tables, by enumerating generator images.
pub fn homs(m: &FiniteModule, n: &FiniteModule) -> Vec<Vec<u32>> {
    let g = m.group();
    let k = g.rank();
    let size = n.order() as u64;
    let total = size.pow(k as u32);
    let mut out = Vec::new();
    'outer: for code in 0..total {
        let mut c = code;
        let images: Vec<u32> = (0..k)
            .map(|_| {
                let x = (c % size) as u32;
                c /= size;
                x
            })
            .collect();
        for i in 0..k {
            let o = g.orders()[i];
            let mut acc = 0;
            for _ in 0..o {
                acc = n.add(acc, images[i]);
            }
            if acc != 0 {
                continue 'outer;
            }
        }
        let table: Vec<u32> = m
            .elements()
            .map(|x| {
                g.digits(x).iter().enumerate().fold(0, |acc, (i, &d)| {
                    let mut v = acc;
                    for _ in 0..d {
                        v = n.add(v, images[i]);
                    }
                    v
                })
            })
            .collect();
        let linear = m.elements().all(|x| {
            m.elements().all(|y| table[m.add(x, y) as usize] == n.add(table[x as usize], table[y as usize]))
                && m.ring().elements().all(|r| table[m.act(r, x) as usize] == n.act(r, table[x as usize]))
        });
        if linear {
            out.push(table);
        }
    }
    out
}

pub fn additive_closure(m: &FiniteModule, seed: impl IntoIterator<Item = u32>) -> u64 {
    let mut bits = 1u64;
    let mut queue: VecDeque<u32> = seed.into_iter().collect();
    let mut members = vec![0u32];
    while let Some(x) = queue.pop_front() {
        if bits >> x & 1 == 1 {
            continue;
        }
        bits |= 1 << x;
        members.push(x);
        for &y in members.clone().iter() {
            let s = m.add(x, y);
            if bits >> s & 1 == 0 {
                queue.push_back(s);
            }
        }
    }
    bits
}

pub struct Oracle<'a> {
    pub m: &'a FiniteModule,
    pub subs: Vec<u64>,
    pub ends: Vec<Vec<u32>>,
}

impl<'a> Oracle<'a> {
    pub fn new(m: &'a FiniteModule) -> Self {
        let subs = submodules(m).iter().map(|s| mask(s)).collect();
        let ends = homs(m, m);
        Oracle { m, subs, ends }
    }

    pub fn top(&self) -> u64 {
        (1u64 << self.m.order()) - 1
    }

    pub fn image(&self, f: &[u32], x: u64) -> u64 {
        unmask(x).iter().fold(0, |acc, &e| acc | 1 << f[e as usize])
    }

    pub fn is_fi(&self, x: u64) -> bool {
        self.ends.iter().all(|f| self.image(f, x) & !x == 0)
    }

    pub fn fi(&self) -> Vec<u64> {
        self.subs.iter().copied().filter(|&x| self.is_fi(x)).collect()
    }

    /// `Σ f(X)` over every endomorphism with image in `Y`.
    pub fn star(&self, x: u64, y: u64) -> u64 {
        let mut seed = Vec::new();
        for f in &self.ends {
            if self.image(f, self.top()) & !y == 0 {
                seed.extend(unmask(self.image(f, x)));
            }
        }
        additive_closure(self.m, seed)
    }

    pub fn is_fully_prime(&self, k: u64, fi: &[u64]) -> bool {
        if k == self.top() || !self.is_fi(k) {
            return false;
        }
        fi.iter().all(|&x| {
            fi.iter()
                .all(|&y| self.star(x, y) & !k != 0 || x & !k == 0 || y & !k == 0)
        })
    }

    pub fn spectrum(&self) -> BTreeSet<Set> {
        let fi = self.fi();
        fi.iter().copied().filter(|&k| self.is_fully_prime(k, &fi)).map(unmask).collect()
    }

    fn ann_mod(&self, l: u64, k: u64) -> Vec<u32> {
        self.m
            .ring()
            .elements()
            .filter(|&r| unmask(l).iter().all(|&x| k >> self.m.act(r, x) & 1 == 1))
            .collect()
    }

    /// `ann(L/K) = ann(M/K)` for every `L ⊋ K`.
    pub fn is_prime(&self, k: u64) -> bool {
        let whole = self.ann_mod(self.top(), k);
        k != self.top()
            && self
                .subs
                .iter()
                .filter(|&&l| l != k && k & !l == 0)
                .all(|&l| self.ann_mod(l, k) == whole)
    }

    /// Every map `M → M/L` lifts through the projection, by search over `End(M)`.
    pub fn is_self_projective(&self) -> bool {
        let m = self.m;
        for &l in &self.subs {
            if l == self.top() {
                continue;
            }
            let sub = modtop::lattice::Submodule::from_elements(m, &unmask(l)).unwrap();
            let q = m.quotient(&sub).unwrap();
            let lifted: HashSet<Vec<u32>> = self
                .ends
                .iter()
                .map(|h| h.iter().map(|&x| q.projection[x as usize]).collect())
                .collect();
            if homs(m, &q.module).iter().any(|g| !lifted.contains(g)) {
                return false;
            }
        }
        true
    }
}

/// Catalog modules of order at most `max`, with their names.
pub fn small_catalog_modules(max: usize) -> Vec<(String, FiniteModule)> {
    let caps = Caps::default();
    default_catalog()
        .entries
        .into_iter()
        .filter_map(|e| match e.spec {
            EntrySpec::Module(spec) => {
                let m = build_module(&spec, &caps).unwrap();
                (m.order() <= max).then_some((e.name, m))
            }
            EntrySpec::Ring(_) => None,
        })
        .collect()
}

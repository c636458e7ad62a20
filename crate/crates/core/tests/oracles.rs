mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{homs, mask, small_catalog_modules, unmask, Oracle};
use modtop::analysis::{Caps, ModuleAnalysis};
use modtop::hom::{cogen_gen, hom_group, star_product};
use modtop::lattice::SubmoduleLattice;
use modtop::module::FiniteModule;
use modtop::ring::FiniteRing;

const MAX: usize = 16;

/// Catalog modules up to `MAX` elements and their quotients by proper nonzero f.i. submodules.
fn subjects() -> Vec<(String, FiniteModule)> {
    let mut out = Vec::new();
    for (name, m) in small_catalog_modules(MAX) {
        let a = ModuleAnalysis::new(m.clone(), Caps::default()).unwrap();
        for l in a.proper_fi().into_iter().filter(|&l| l != 0) {
            let q = m.quotient(a.sub(l)).unwrap();
            out.push((format!("{name} / {:?}", a.elements_of(l)), q.module));
        }
        out.push((name, m));
    }
    out.push(("Z2 over Z2xZ2".into(), {
        let r = Arc::new(FiniteRing::product(&[FiniteRing::zn(2).unwrap(), FiniteRing::zn(2).unwrap()], 64).unwrap());
        // (a, b) acts on Z2 through a.
        let act = (0..4u32).flat_map(|r| (0..2u32).map(move |x| (r >> 1) * x)).collect();
        FiniteModule::from_table(r, &[2], act, 256).unwrap()
    }));
    out
}

#[test]
fn lattice_matches_subset_enumeration() {
    for (name, m) in subjects() {
        let lat = SubmoduleLattice::enumerate(&m, 1 << 20).unwrap();
        let ours: BTreeSet<Vec<u32>> = lat.iter().map(|s| s.elements()).collect();
        assert_eq!(ours, common::submodules(&m), "{name}");
        assert_eq!(ours.len(), lat.len(), "{name}: duplicate submodules");
    }
}

#[test]
fn hom_group_matches_map_enumeration() {
    let subjects = subjects();
    let mut pairs = 0;
    for (na, a) in &subjects {
        for (nb, b) in &subjects {
            if !a.same_ring(b) {
                continue;
            }
            let h = hom_group(a, b).unwrap();
            let ours: BTreeSet<Vec<u32>> = h.enumerate(1 << 20).unwrap().into_iter().collect();
            let brute: BTreeSet<Vec<u32>> = homs(a, b).into_iter().collect();
            assert_eq!(h.group_order as usize, brute.len(), "|Hom({na}, {nb})|");
            assert_eq!(ours, brute, "Hom({na}, {nb})");
            pairs += 1;
        }
    }
    assert!(pairs > 100, "only {pairs} pairs");
}

#[test]
fn fully_invariant_and_star_match_all_endomorphisms() {
    for (name, m) in subjects() {
        let o = Oracle::new(&m);
        let a = ModuleAnalysis::new(m.clone(), Caps::default()).unwrap();
        let lat = a.lattice();
        for id in lat.ids() {
            assert_eq!(a.fi()[id], o.is_fi(mask(&a.elements_of(id))), "{name}: f.i. flag of {:?}", a.elements_of(id));
        }
        for x in lat.ids() {
            for y in lat.ids() {
                let ours = star_product(&m, a.sub(x), a.sub(y)).unwrap();
                let brute = o.star(mask(&a.elements_of(x)), mask(&a.elements_of(y)));
                assert_eq!(ours.elements(), unmask(brute), "{name}: star of {x} and {y}");
                assert_eq!(a.elements_of(a.star(x, y).unwrap()), unmask(brute));
            }
        }
    }
}

#[test]
fn spectrum_and_primes_match_definitions() {
    for (name, m) in subjects() {
        let o = Oracle::new(&m);
        let a = ModuleAnalysis::new(m.clone(), Caps::default()).unwrap();
        let ours: BTreeSet<Vec<u32>> = a.points().iter().map(|&p| a.elements_of(p)).collect();
        assert_eq!(ours, o.spectrum(), "{name}: spectrum");
        for k in 0..a.top() {
            assert_eq!(a.is_prime_in(k).unwrap(), o.is_prime(mask(&a.elements_of(k))), "{name}: prime {k}");
        }
    }
}

#[test]
fn self_projectivity_matches_lift_search() {
    for (name, m) in subjects() {
        let o = Oracle::new(&m);
        let a = ModuleAnalysis::new(m.clone(), Caps::default()).unwrap();
        assert_eq!(a.is_self_projective(), o.is_self_projective(), "{name}");
    }
}

#[test]
fn cogeneration_matches_kernels_and_images() {
    for (name, m) in subjects() {
        let o = Oracle::new(&m);
        let lat = SubmoduleLattice::enumerate(&m, 1 << 20).unwrap();
        for k in lat.iter().filter(|k| !k.is_zero()) {
            let kb = mask(&k.elements());
            let mut kernel_meet = o.top();
            for f in o.ends.iter().filter(|f| o.image(f, o.top()) & !kb == 0) {
                let ker = m.elements().filter(|&x| f[x as usize] == 0).fold(0u64, |acc, x| acc | 1 << x);
                kernel_meet &= ker;
            }
            let emb = m.submodule_as_module(k).unwrap();
            let mut seed = Vec::new();
            for g in homs(&emb.module, &m) {
                seed.extend(g);
            }
            let generated = common::additive_closure(&m, seed) == o.top();
            let c = cogen_gen(&m, k).unwrap();
            assert_eq!(c.cogenerated, kernel_meet == 1, "{name}: cogenerated by {:?}", k.elements());
            assert_eq!(c.generated, generated, "{name}: generated by {:?}", k.elements());
        }
    }
}

use std::sync::Arc;

use proptest::prelude::*;

use modtop::analysis::{Caps, ModuleAnalysis};
use modtop::group::{decompose, CyclicGroup};
use modtop::lattice::SubmoduleLattice;
use modtop::module::FiniteModule;
use modtop::ring::FiniteRing;
use modtop::schema::build_ring;
use modtop::snf::{integer_kernel, smith_normal_form, IntMatrix};
use modtop::verify::{self, catalog, Status};

const SIZE: usize = 32;

fn ring(choice: u8) -> Arc<FiniteRing> {
    let r = match choice % 8 {
        0..=3 => FiniteRing::zn([4, 6, 8, 12][choice as usize % 4]).unwrap(),
        4 => FiniteRing::product(&[FiniteRing::zn(2).unwrap(), FiniteRing::zn(3).unwrap()], 64).unwrap(),
        5 => FiniteRing::product(&[FiniteRing::zn(2).unwrap(), FiniteRing::zn(2).unwrap()], 64).unwrap(),
        6 => build_ring(&catalog::upper_triangular_z2(), &Caps::default()).unwrap(),
        _ => build_ring(&catalog::f4(), &Caps::default()).unwrap(),
    };
    Arc::new(r)
}

/// `R/L` for the `pick`-th left ideal `L`.
fn cyclic_piece(r: &Arc<FiniteRing>, pick: usize) -> FiniteModule {
    let reg = FiniteModule::regular(r.clone());
    let lat = SubmoduleLattice::enumerate(&reg, 1 << 16).unwrap();
    let proper = lat.top_id();
    reg.quotient(lat.get(pick % proper)).unwrap().module
}

/// Direct sums of cyclic modules over a handful of small rings.
fn module() -> impl Strategy<Value = FiniteModule> {
    (any::<u8>(), prop::collection::vec(any::<usize>(), 1..=3)).prop_map(|(choice, picks)| {
        let r = ring(choice);
        let mut m = cyclic_piece(&r, picks[0]);
        for &p in &picks[1..] {
            let piece = cyclic_piece(&r, p);
            if m.order() * piece.order() <= SIZE {
                m = m.direct_sum(&piece, SIZE).unwrap();
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_is_modular(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let (lat, t) = (a.lattice(), a.tables());
        for x in lat.ids() {
            for y in lat.ids() {
                prop_assert_eq!(t.join(x, y), t.join(y, x));
                prop_assert_eq!(t.meet(x, y), t.meet(y, x));
                prop_assert_eq!(t.join(x, t.meet(x, y)), x);
                prop_assert_eq!(t.meet(x, t.join(x, y)), x);
                for z in lat.ids() {
                    prop_assert_eq!(t.join(t.join(x, y), z), t.join(x, t.join(y, z)));
                    if lat.le(x, z) {
                        prop_assert_eq!(t.join(x, t.meet(y, z)), t.meet(t.join(x, y), z));
                    }
                }
            }
        }
    }

    #[test]
    fn star_stays_inside_its_factors(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let lat = a.lattice();
        for x in lat.ids() {
            for y in lat.ids() {
                let s = a.star(x, y).unwrap();
                prop_assert!(lat.le(s, y));
                if a.fi()[x] {
                    prop_assert!(lat.le(s, x));
                }
                if a.fi()[y] {
                    prop_assert!(a.fi()[s], "star into a f.i. submodule is f.i.");
                }
            }
        }
    }

    #[test]
    fn radical_and_socle_have_both_descriptions(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let lat = a.lattice();
        let r = a.radicals();
        prop_assert_eq!(r.rad, lat.sum_of_superfluous(a.module()));
        prop_assert_eq!(r.soc, lat.meet_of_essential());
        prop_assert_eq!(r.rad, lat.meet_all(r.max_list.iter().copied()));
        prop_assert_eq!(r.soc, lat.sum_all(a.module(), lat.minimal_nonzero()));
    }

    #[test]
    fn fp_radical_is_a_closure_operator(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let lat = a.lattice();
        for x in lat.ids() {
            let rx = a.rad_fp(x);
            prop_assert!(lat.le(x, rx));
            prop_assert_eq!(a.rad_fp(rx), rx);
            for y in lat.ids().filter(|&y| lat.le(x, y)) {
                prop_assert!(lat.le(rx, a.rad_fp(y)));
            }
        }
    }

    #[test]
    fn fully_prime_points_are_prime(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        for &k in a.points() {
            prop_assert!(a.is_prime_in(k).unwrap());
            prop_assert!(a.fi()[k]);
        }
    }

    #[test]
    fn harness_finds_no_counterexamples(m in module()) {
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let checks: Vec<_> = verify::CHECKS.iter().collect();
        for e in verify::run_module_checks("random", &a, &checks) {
            prop_assert_ne!(e.status, Status::Fail, "{:?}", e);
        }
    }

    #[test]
    fn spectrum_is_transport_invariant(m in module()) {
        let sigma = m.shear_automorphism();
        let n = m.transport(&sigma).unwrap();
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let b = ModuleAnalysis::new(n, Caps::default()).unwrap();
        let mut moved: Vec<Vec<u32>> = a
            .points()
            .iter()
            .map(|&p| {
                let mut s: Vec<u32> = a.elements_of(p).iter().map(|&x| sigma[x as usize]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        moved.sort();
        let mut target: Vec<Vec<u32>> = b.points().iter().map(|&p| b.elements_of(p)).collect();
        target.sort();
        prop_assert_eq!(moved, target);
    }

    #[test]
    fn smith_form_diagonalises(rows in prop::collection::vec(prop::collection::vec(-12i128..12, 3), 1..4)) {
        let a = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&a).unwrap();
        let d = s.left.mul(&a).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j && i < s.diagonal.len() { s.diagonal[i] } else { 0 };
                prop_assert_eq!(d.get(i, j), expected);
            }
        }
        for w in s.diagonal[..s.rank].windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let id = s.right.mul(&s.right_inverse).unwrap();
        prop_assert_eq!(id, IntMatrix::identity(a.cols()));
        for v in integer_kernel(&a).unwrap() {
            for r in &rows {
                prop_assert_eq!(r.iter().zip(&v).map(|(x, y)| x * y).sum::<i128>(), 0);
            }
        }
    }

    #[test]
    fn decomposition_is_invariant_factor_form(orders in prop::collection::vec(2u32..7, 1..4)) {
        let g = CyclicGroup::new(&orders).unwrap();
        let elements: Vec<u32> = (0..g.size() as u32).collect();
        let d = decompose(&elements, 0, g.size(), |a, b| g.add(a, b)).unwrap();
        prop_assert_eq!(d.orders.iter().map(|&o| o as usize).product::<usize>(), g.size());
        for w in d.orders.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let mut seen = d.encode.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), g.size());
    }
}

use std::sync::Arc;

use modtop::analysis::{Caps, ModuleAnalysis};
use modtop::error::Error;
use modtop::hom::{cogen_gen, hom_group, hom_into, star_product};
use modtop::lattice::{colon_ideal, colon_submodule, Ideal};
use modtop::module::FiniteModule;
use modtop::ring::FiniteRing;
use modtop::schema::{build_module, build_ring, ModuleSpec, RingSpec};
use modtop::spectrum::RingSpectrum;
use modtop::topology::{bit, FiniteTopology, Variant};
use modtop::verify::{self, catalog, Catalog, Status};

fn zn(n: u32) -> Arc<FiniteRing> {
    Arc::new(FiniteRing::zn(n).unwrap())
}

fn regular(n: u32) -> ModuleAnalysis {
    ModuleAnalysis::new(FiniteModule::regular(zn(n)), Caps::default()).unwrap()
}

fn matrices(n: u32, add: Vec<u32>) -> ModuleAnalysis {
    let k = add.len();
    let id = vec![(0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()];
    let m = build_module(&ModuleSpec::matrices(RingSpec::Zn { n }, add, id), &Caps::default()).unwrap();
    ModuleAnalysis::new(m, Caps::default()).unwrap()
}

fn points(a: &ModuleAnalysis) -> Vec<Vec<u32>> {
    a.points().iter().map(|&p| a.elements_of(p)).collect()
}

fn id(a: &ModuleAnalysis, elements: &[u32]) -> usize {
    a.lattice().find(elements).unwrap()
}

#[test]
fn exact_spectra() {
    let z6 = regular(6);
    assert_eq!(points(&z6), vec![vec![0, 3], vec![0, 2, 4]]);
    assert_eq!(z6.rad_fp(0), 0);
    let z4 = regular(4);
    assert_eq!(points(&z4), vec![vec![0, 2]]);
    assert_eq!(z4.elements_of(z4.rad_fp(0)), vec![0, 2]);
    let v = matrices(2, vec![2, 2]);
    assert_eq!(points(&v), vec![vec![0]]);
    assert_eq!(v.rad_fp(0), 0);
}

#[test]
fn lattices_and_operations() {
    let z6 = regular(6);
    assert_eq!(z6.lattice().len(), 4);
    let (a, b) = (id(&z6, &[0, 3]), id(&z6, &[0, 2, 4]));
    assert_eq!(z6.tables().join(a, b), z6.top());
    assert_eq!(z6.tables().meet(a, b), 0);
    assert_eq!(matrices(2, vec![2, 2]).lattice().len(), 5);
    assert_eq!(regular(4).lattice().len(), 3);
    let q = z6.module().quotient(z6.sub(b)).unwrap();
    assert_eq!(q.module.order(), 2);
    assert_eq!(q.projection[3], q.projection[1]);
}

#[test]
fn colon_ideals_and_submodules() {
    let z6 = regular(6);
    let l = z6.sub(id(&z6, &[0, 2, 4]));
    assert_eq!(colon_ideal(z6.module(), l).unwrap().members(), vec![0, 2, 4]);
    let v = matrices(2, vec![2, 2]);
    assert_eq!(colon_ideal(v.module(), v.sub(1)).unwrap().members(), vec![0]);
    let z4 = regular(4);
    let two = Ideal::from_bits(z4.module().ring(), z4.sub(1).bits().clone()).unwrap();
    assert_eq!(colon_submodule(z4.module(), z4.sub(0), &two).unwrap().elements(), vec![0, 2]);
    let three = Ideal::from_bits(z6.module().ring(), z6.sub(id(&z6, &[0, 3])).bits().clone()).unwrap();
    assert_eq!(colon_submodule(z6.module(), z6.sub(0), &three).unwrap().elements(), vec![0, 2, 4]);
}

#[test]
fn radicals_and_socles() {
    let z6 = regular(6);
    assert_eq!(z6.radicals().max_list.len(), 2);
    assert_eq!(z6.radicals().rad, 0);
    assert_eq!(z6.radicals().soc, z6.top());
    let z4 = regular(4);
    assert_eq!(z4.elements_of(z4.radicals().rad), vec![0, 2]);
    assert_eq!(z4.elements_of(z4.radicals().soc), vec![0, 2]);
    assert!(z4.lattice().is_essential(1) && z4.lattice().is_superfluous(z4.module(), 1));
}

#[test]
fn hom_groups_and_endomorphisms() {
    let z6 = regular(6);
    let m = z6.module();
    assert_eq!(hom_into(m, z6.sub(id(&z6, &[0, 2, 4]))).unwrap().order, 3);
    assert_eq!(hom_into(m, z6.sub(0)).unwrap().order, 1);
    assert_eq!(z6.end().group_order, 6);
    let v = matrices(2, vec![2, 2]);
    let z2 = FiniteModule::regular(v.module().ring_arc().clone());
    assert_eq!(hom_group(v.module(), &z2).unwrap().group_order, 4);
    assert_eq!(v.end().group_order, 16);
    assert!(matches!(hom_group(m, &z2), Err(Error::RingMismatch)));
}

#[test]
fn fully_invariant_and_star() {
    let z6 = regular(6);
    assert!(z6.fi().iter().all(|&b| b) && z6.classification().duo);
    let v = matrices(2, vec![2, 2]);
    assert_eq!(v.fi_ids(), &[0, v.top()]);
    assert!(!v.classification().duo);
    let (three, two) = (id(&z6, &[0, 3]), id(&z6, &[0, 2, 4]));
    assert_eq!(z6.star(three, two).unwrap(), 0);
    let z4 = regular(4);
    assert!(star_product(z4.module(), z4.sub(1), z4.sub(1)).unwrap().is_zero());
}

#[test]
fn self_projectivity_and_cogeneration() {
    assert!(regular(12).is_self_projective());
    assert!(matrices(2, vec![2, 2]).is_self_projective());
    let n = matrices(4, vec![2, 4]);
    assert!(!n.is_self_projective());
    let v = matrices(2, vec![2, 2]);
    assert!(cogen_gen(v.module(), v.sub(1)).unwrap().cogenerated);
    let z4 = regular(4);
    assert!(!cogen_gen(z4.module(), z4.sub(1)).unwrap().cogenerated);
    let top = cogen_gen(z4.module(), z4.sub(z4.top())).unwrap();
    assert!(top.cogenerated && top.generated);
}

#[test]
fn classification_records() {
    let c = *regular(6).classification();
    assert!(c.multiplication && c.duo && c.spcd && c.semisimple && !c.hollow);
    let c = *regular(4).classification();
    assert!(c.local && c.hollow && c.uniserial && c.spcd);
    let c = *matrices(2, vec![2, 2]).classification();
    assert!(!c.duo && c.semisimple && !c.multiplication);
}

#[test]
fn ufi_and_qfi() {
    let z4 = regular(4);
    let u = z4.ufi_qfi(0).unwrap();
    assert_eq!(u.u_fi, z4.fi_ids());
    assert_eq!(u.q_fi, z4.fi_ids());
    let u = z4.ufi_qfi(1).unwrap();
    assert_eq!(u.u_fi, vec![1, 2]);
    assert_eq!(u.q_fi, vec![1, 2]);
    let v = matrices(2, vec![2, 2]);
    assert_eq!(v.ufi_qfi(1), Err(Error::NotFullyInvariant));
}

#[test]
fn prime_and_fully_prime() {
    let z6 = regular(6);
    let two = id(&z6, &[0, 2, 4]);
    assert!(z6.is_prime_in(two).unwrap());
    assert!(z6.is_fully_prime_in(two).unwrap());
    assert!(!z6.is_fully_prime_in(0).unwrap());
    let z4 = regular(4);
    assert!(!z4.is_prime_in(0).unwrap());
    assert!(!z4.is_fully_prime_in(0).unwrap());
    let v = matrices(2, vec![2, 2]);
    assert!(v.is_fully_prime_in(0).unwrap());
    let simple = regular(5);
    assert!(simple.is_prime_in(0).unwrap());
}

#[test]
fn varieties_and_radicals() {
    let z6 = regular(6);
    let three = id(&z6, &[0, 3]);
    assert_eq!(z6.variety(0).0, z6.points());
    assert_eq!(z6.variety(three), (vec![three], vec![id(&z6, &[0, 2, 4])]));
    assert!(z6.variety(z6.top()).0.is_empty());
    assert_eq!(z6.rad_fp(z6.top()), z6.top());
    assert_eq!(z6.minimal_above(0).unwrap().points, z6.points());
    let z4 = regular(4);
    assert_eq!(z4.minimal_above(1).unwrap().points, vec![1]);
    assert!(z6.max_property().complete);
    assert!(z4.max_property().complete);
    let m = matrices(36, vec![4, 9]);
    assert!(m.max_property().complete);
}

#[test]
fn ring_spectra() {
    let caps = Caps::default();
    let z6 = RingSpectrum::new(zn(6), caps).unwrap();
    assert_eq!(z6.spec_sets(), vec![vec![0, 3], vec![0, 2, 4]]);
    let p = z6.predicates;
    assert!(p.von_neumann_regular && p.semisimple && p.zero_dimensional);
    let z4 = RingSpectrum::new(zn(4), caps).unwrap();
    assert_eq!(z4.spec_sets(), vec![vec![0, 2]]);
    assert!(z4.predicates.pi_regular && !z4.predicates.von_neumann_regular && !z4.predicates.semisimple);
    let z7 = RingSpectrum::new(zn(7), caps).unwrap();
    assert_eq!(z7.spec_sets(), vec![vec![0]]);
    let t2 = build_ring(&catalog::upper_triangular_z2(), &caps).unwrap();
    let t2 = RingSpectrum::new(Arc::new(t2), caps).unwrap();
    assert!(!t2.predicates.commutative);
}

#[test]
fn topologies() {
    let z6 = regular(6);
    let t = z6.topology(Variant::Full);
    assert_eq!(t.closed_sets.len(), 4);
    let p = t.properties().unwrap();
    assert!(p.t2 && p.discrete && !p.connected && p.irreducible == Some(false));
    assert_eq!(t.closure(bit(0)).unwrap(), bit(0));
    assert_eq!(t.closure(0).unwrap(), 0);
    assert_eq!(t.closure(t.whole()).unwrap(), t.whole());
    assert_eq!(t.components(), vec![bit(0), bit(1)]);
    assert!(t.specialization().unwrap().hasse.is_empty());
    assert!(t.locally_finite(&[bit(0), bit(1)]).unwrap().holds);
    assert!(t.locally_finite(&[]).unwrap().holds);
    let z4 = regular(4);
    let t = z4.topology(Variant::Full);
    assert_eq!(t.closed_sets.len(), 2);
    let p = t.properties().unwrap();
    assert!(p.irreducible == Some(true) && p.ultraconnected == Some(true) && p.t2);
    let v = matrices(2, vec![2, 2]);
    assert!(v.topology(Variant::Full).is_topology);
    assert_eq!(v.topology(Variant::Full).closed_sets.len(), 2);
    let uniserial = regular(27);
    assert_eq!(uniserial.topology(Variant::Full).properties().unwrap().irreducible, Some(true));
}

#[test]
fn zero_and_a_maximal_point_specialize() {
    let n = matrices(4, vec![2, 4]);
    assert_eq!(points(&n), vec![vec![0, 2], vec![0, 2, 4, 6]]);
    let order = n.topology(Variant::Full).specialization().unwrap();
    assert_eq!(order.hasse, vec![(0, 1)]);
    let sums = matrices(8, vec![2, 4, 8]);
    assert_eq!(sums.points().len(), 3);
}

#[test]
fn empty_spectrum_topology() {
    let m = FiniteModule::regular(zn(6));
    let a = ModuleAnalysis::with_spectrum_points(m, Caps::default(), Vec::new()).unwrap();
    let p = a.topology(Variant::Full).properties().unwrap();
    assert!(p.empty_space);
    assert_eq!(p.irreducible(), Err(Error::EmptySpace));
    let t = FiniteTopology::build(a.lattice(), &[], a.fi(), Variant::Fi).unwrap();
    assert!(t.is_empty());
}

#[test]
fn named_checks_on_small_subjects() {
    let all: Vec<_> = verify::CHECKS.iter().collect();
    let status = |a: &ModuleAnalysis, id: &str| {
        let c = [verify::check(id).unwrap()];
        verify::run_module_checks("s", a, &c)[0].status
    };
    assert_eq!(status(&regular(6), "lemma_fp_to_p"), Status::Pass);
    assert_eq!(status(&regular(4), "prop_ultra"), Status::Pass);
    assert_eq!(status(&regular(6), "thm_fp_discrete"), Status::Pass);
    let simple = regular(5);
    let entries = verify::run_module_checks("Z5", &simple, &all);
    let conn = entries.iter().find(|e| e.check_id == "lemma_conn_chain").unwrap();
    assert_eq!(conn.status, Status::Degenerate);
    assert!(entries.iter().filter(|e| e.status == Status::Degenerate).count() >= 5);
}

#[test]
fn corrupted_catalog_entry_is_skipped() {
    let text = r#"{"entries":[
        {"name":"Z6","module":{"kind":"regular","ring":{"kind":"Zn","n":6}}},
        {"name":"bad","module":{"ring":{"kind":"Zn","n":4},"add_cyclic":[3],"matrices":[[[1]]]}}
    ]}"#;
    let report = verify::run(&Catalog::parse(text).unwrap(), Caps::default(), None).unwrap();
    let bad: Vec<_> = report.entries.iter().filter(|e| e.subject == "bad").collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0].status, Status::Skipped);
    assert!(bad[0].reason.is_some());
    assert_eq!(report.summary.total.fail, 0);
    assert_eq!(report.exit_code(), 2);
}

#[test]
fn report_order_is_canonical() {
    let c = verify::default_catalog();
    let a = verify::run(&c, Caps::default(), Some("lemma_fp_to_p,prop_ultra")).unwrap();
    let b = verify::run(&c, Caps::default(), Some("lemma_fp_to_p,prop_ultra")).unwrap();
    assert_eq!(a.hash, b.hash);
    assert!(a.entries.iter().all(|e| e.check_id == "lemma_fp_to_p" || e.check_id == "prop_ultra"));
    assert_eq!(a.entries[0].subject, "Z2");
}

#[test]
fn flipped_multiplication_entry_is_rejected() {
    let mut mul: Vec<u32> = (0..36).map(|i| (i / 6) * (i % 6) % 6).collect();
    mul[2 * 6 + 3] = 1;
    let spec = RingSpec::Table { add_cyclic: vec![6], mul: modtop::schema::Table::Flat(mul), one: 1 };
    let err = build_ring(&spec, &Caps::default()).unwrap_err();
    assert!(matches!(err, Error::NotDistributive { .. }), "{err}");
}

//! Module-level theorem replays.

use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use super::Outcome;
use crate::analysis::ModuleAnalysis;
use crate::error::Result;
use crate::hom::cogen_gen;
use crate::lattice::SubmoduleLattice;
use crate::module::FiniteModule;
use crate::spectrum::two_sided_ideals;
use crate::topology::{bit, count, members, varieties, PointSet, Variant};

/// Exhaustive subset enumeration stops above this many points.
const EXHAUSTIVE_POINTS: usize = 10;

fn els(a: &ModuleAnalysis, id: usize) -> Vec<u32> {
    a.elements_of(id)
}

fn sets(a: &ModuleAnalysis, ids: &[usize]) -> Vec<Vec<u32>> {
    ids.iter().map(|&i| els(a, i)).collect()
}

fn mask_sets(a: &ModuleAnalysis, s: PointSet) -> Vec<Vec<u32>> {
    members(s).map(|p| els(a, a.points()[p])).collect()
}

fn vmasks(a: &ModuleAnalysis) -> Vec<PointSet> {
    varieties(a.lattice(), a.points())
}

fn whole(a: &ModuleAnalysis) -> PointSet {
    a.topology(Variant::Full).whole()
}

fn mask_of(a: &ModuleAnalysis, ids: &[usize]) -> PointSet {
    ids.iter()
        .filter_map(|&k| a.points().iter().position(|&p| p == k))
        .fold(0, |acc, p| acc | bit(p))
}

/// Every subset for small spectra, else those of size at most two.
fn subsets(n: usize) -> Vec<PointSet> {
    if n <= EXHAUSTIVE_POINTS {
        (0..1u128 << n).collect()
    } else {
        let mut v = vec![0];
        for i in 0..n {
            v.push(bit(i));
            for j in i + 1..n {
                v.push(bit(i) | bit(j));
            }
        }
        v
    }
}

fn meet_of(a: &ModuleAnalysis, s: PointSet) -> usize {
    a.lattice().meet_all(members(s).map(|p| a.points()[p]))
}

fn id_set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn spec_is_max(a: &ModuleAnalysis) -> bool {
    id_set(a.points()) == id_set(&a.radicals().max_list)
}

fn require_topology(a: &ModuleAnalysis) -> std::result::Result<(), Outcome> {
    let t = a.topology(Variant::Full);
    if t.is_topology {
        Ok(())
    } else {
        Err(Outcome::Degenerate("not a top^fp-module".into()))
    }
}

macro_rules! gate {
    ($e:expr) => {
        match $e {
            Ok(()) => {}
            Err(o) => return Ok(o),
        }
    };
}

macro_rules! hyp {
    ($cond:expr, $name:expr) => {
        if !$cond {
            return Ok(Outcome::Degenerate($name.into()));
        }
    };
}

macro_rules! fail {
    ($($w:tt)*) => {
        return Ok(Outcome::Fail(json!($($w)*)))
    };
}

pub fn lemma_ww_fi(a: &ModuleAnalysis) -> Result<Outcome> {
    let sp = a.is_self_projective();
    for &l in a.fi_ids() {
        let u = a.ufi_qfi(l)?;
        let us = id_set(&u.u_fi);
        let qs = id_set(&u.q_fi);
        if !qs.is_subset(&us) || (sp && qs != us) {
            fail!({"L": els(a, l), "U_fi": sets(a, &u.u_fi), "Q_fi": sets(a, &u.q_fi), "self_projective": sp});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_spcd_comm(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.module().ring().is_commutative(), "ring is not commutative");
    let c = a.classification();
    let items = [c.spcd, c.self_projective && c.duo, c.multiplication];
    if items.iter().any(|&b| b != items[0]) {
        fail!({"spcd": items[0], "self_projective_and_duo": items[1], "multiplication": items[2]});
    }
    Ok(Outcome::Pass)
}

pub fn ring_ideals(m: &FiniteModule) -> Result<Vec<crate::lattice::Ideal>> {
    let regular = FiniteModule::regular(Arc::clone(m.ring_arc()));
    let lat = SubmoduleLattice::enumerate(&regular, usize::MAX)?;
    two_sided_ideals(m.ring(), &lat)
}

pub fn lemma_k_prime(a: &ModuleAnalysis) -> Result<Outcome> {
    let ideals = ring_ideals(a.module())?;
    for k in 0..a.top() {
        let by_definition = a.prime_by_annihilators(k)?;
        let by_ideals = a.prime_by_ideals(k, &ideals);
        let elementwise = a.prime_elementwise(k);
        if by_definition != by_ideals || by_ideals != elementwise {
            fail!({"K": els(a, k), "definition": by_definition, "ideals": by_ideals, "elementwise": elementwise});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_fp_to_p(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(!a.points().is_empty(), "spectrum is empty");
    for &k in a.points() {
        if !a.is_prime_in(k)? {
            fail!({"K": els(a, k)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn prop_fp_cog(a: &ModuleAnalysis) -> Result<Outcome> {
    let fully_prime = a.points().contains(&0);
    let mut cogenerated = true;
    let mut first = None;
    for &k in a.fi_ids().iter().filter(|&&k| k != 0) {
        if !cogen_gen(a.module(), a.sub(k))?.cogenerated {
            cogenerated = false;
            first.get_or_insert(k);
        }
    }
    if fully_prime != cogenerated {
        fail!({"zero_fully_prime": fully_prime, "cogenerated_by_all": cogenerated, "non_cogenerating": first.map(|k| els(a, k))});
    }
    Ok(Outcome::Pass)
}

pub fn prop_fppai(a: &ModuleAnalysis) -> Result<Outcome> {
    let sp = a.is_self_projective();
    for l in a.proper_fi() {
        let q = a.quotient(l)?;
        let qfi = id_set(&a.ufi_qfi(l)?.q_fi);
        let source: Vec<usize> = a.points().iter().copied().filter(|k| qfi.contains(k)).collect();
        let image: BTreeSet<usize> = source.iter().map(|&k| q.up[k].expect("K contains L")).collect();
        let target = id_set(q.analysis.points());
        if !image.is_subset(&target) {
            fail!({"L": els(a, l), "part": 1, "image": image, "spec_quotient": target});
        }
        if sp && image != target {
            fail!({"L": els(a, l), "part": 2, "image": image, "spec_quotient": target});
        }
    }
    Ok(Outcome::Pass)
}

pub fn cor_mkp(a: &ModuleAnalysis) -> Result<Outcome> {
    let sp = a.is_self_projective();
    for k in a.proper_fi() {
        let fp = a.points().contains(&k);
        let quotient_fp = a.quotient(k)?.analysis.points().contains(&0);
        if (fp && !quotient_fp) || (sp && fp != quotient_fp) {
            fail!({"K": els(a, k), "fully_prime": fp, "quotient_fully_prime": quotient_fp, "self_projective": sp});
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_duo_coatomic(a: &ModuleAnalysis) -> Result<Outcome> {
    let max_fi = a.max_fi();
    for &l in &max_fi {
        if !a.quotient(l)?.analysis.points().contains(&0) {
            fail!({"L": els(a, l), "claim": "M/L is fully prime"});
        }
    }
    hyp!(a.is_self_projective(), "not self-projective");
    let pts = id_set(a.points());
    if let Some(&l) = max_fi.iter().find(|l| !pts.contains(l)) {
        fail!({"L": els(a, l), "claim": "Max^fi ⊆ Spec^fp"});
    }
    if a.classification().duo {
        if let Some(&l) = a.radicals().max_list.iter().find(|l| !pts.contains(l)) {
            fail!({"L": els(a, l), "claim": "Max ⊆ Spec^fp"});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_semi_local(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.is_self_projective() && a.classification().duo, "not self-projective and duo");
    let mp = a.max_property();
    if !mp.complete || !mp.plain {
        fail!({"l_e": mp.l_e.iter().map(|&(l, e)| (els(a, l), els(a, e))).collect::<Vec<_>>()});
    }
    Ok(Outcome::Pass)
}

pub fn lemma_minimal(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(
        a.is_self_projective() && a.classification().fi_coatomic,
        "not self-projective and f.i.-coatomic"
    );
    for l in a.proper_fi() {
        if a.minimal_above(l)?.points.is_empty() {
            fail!({"L": els(a, l)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_fp_properties(a: &ModuleAnalysis) -> Result<Outcome> {
    let vs = vmasks(a);
    let lat = a.lattice();
    let t = a.tables();
    if vs[a.top()] != 0 || vs[0] != whole(a) {
        fail!({"part": 1, "V_M": mask_sets(a, vs[a.top()]), "V_0": mask_sets(a, vs[0])});
    }
    for x in lat.ids() {
        for y in lat.ids() {
            if vs[x] & vs[y] != vs[t.join(x, y)] {
                fail!({"part": 2, "L1": els(a, x), "L2": els(a, y)});
            }
        }
    }
    for &x in a.fi_ids() {
        for &y in a.fi_ids() {
            let union = vs[x] | vs[y];
            let meet = vs[t.meet(x, y)];
            let star = vs[a.star(x, y)?];
            if union != meet || meet != star {
                fail!({"part": 3, "L": els(a, x), "L_tilde": els(a, y),
                    "union": mask_sets(a, union), "meet": mask_sets(a, meet), "star": mask_sets(a, star)});
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Number of f.i. pairs the three-way identity is checked on.
pub fn fp_properties_pairs(a: &ModuleAnalysis) -> usize {
    a.fi_ids().len() * a.fi_ids().len()
}

pub fn thm_fi_topology(a: &ModuleAnalysis) -> Result<Outcome> {
    let fi = a.topology(Variant::Fi);
    if !fi.is_topology {
        let (x, y) = fi.witness.expect("witness accompanies failure");
        fail!({"variant": "fi", "closed_a": mask_sets(a, x), "closed_b": mask_sets(a, y)});
    }
    if a.classification().duo {
        let full = a.topology(Variant::Full);
        if !full.is_topology {
            let (x, y) = full.witness.expect("witness accompanies failure");
            fail!({"variant": "full", "closed_a": mask_sets(a, x), "closed_b": mask_sets(a, y)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_fp_closure(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    let t = a.topology(Variant::Full);
    let vs = vmasks(a);
    for s in subsets(t.len()) {
        let closure = t.closure(s)?;
        let formula = vs[meet_of(a, s)];
        if closure != formula {
            fail!({"A": mask_sets(a, s), "closure": mask_sets(a, closure), "V_J": mask_sets(a, formula)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_1(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    let t = a.topology(Variant::Full);
    let n = t.len();
    for p in 0..n {
        for q in p + 1..n {
            if t.closure(bit(p))? == t.closure(bit(q))? {
                fail!({"points": mask_sets(a, bit(p) | bit(q))});
            }
        }
    }
    if !t.properties()?.t0 {
        fail!({"t0": false});
    }
    Ok(Outcome::Pass)
}

/// Every open set is a union of basic sets `𝓧(Rm)`.
pub fn basis_check(a: &ModuleAnalysis) -> Option<PointSet> {
    let t = a.topology(Variant::Full);
    let vs = vmasks(a);
    let w = t.whole();
    let basic: Vec<PointSet> = a.module().elements().map(|m| w & !vs[a.lattice().cyclic(m)]).collect();
    t.open_sets()
        .into_iter()
        .find(|&u| basic.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b) != u)
}

pub fn rem_fp_rms_2(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    if let Some(u) = basis_check(a) {
        fail!({"open": mask_sets(a, u)});
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_3(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    let t = a.topology(Variant::Full);
    let vs = vmasks(a);
    let order = t.specialization()?;
    let lat = a.lattice();
    for (p, &l) in a.points().iter().enumerate() {
        if t.closure(bit(p))? != vs[l] {
            fail!({"L": els(a, l), "closure": mask_sets(a, t.closure(bit(p))?)});
        }
        for (q, &k) in a.points().iter().enumerate() {
            let in_closure = q == p || order.above[p] >> q & 1 == 1;
            if in_closure != lat.le(l, k) {
                fail!({"L": els(a, l), "K": els(a, k), "in_closure": in_closure});
            }
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_4(a: &ModuleAnalysis) -> Result<Outcome> {
    let lat = a.lattice();
    let rad: Vec<usize> = lat.ids().map(|l| a.rad_fp(l)).collect();
    for l in lat.ids() {
        if !lat.le(l, rad[l]) {
            fail!({"L": els(a, l), "rad": els(a, rad[l])});
        }
        for l2 in lat.ids() {
            if lat.le(l, l2) && !lat.le(rad[l], rad[l2]) {
                fail!({"L1": els(a, l), "L2": els(a, l2)});
            }
        }
    }
    if !a.points().is_empty() && rad[0] == a.top() {
        fail!({"rad_fp": els(a, rad[0]), "claim": "Rad^fp(M) ⊊ M"});
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_5(a: &ModuleAnalysis) -> Result<Outcome> {
    for l in a.lattice().ids() {
        let r = a.rad_fp(l);
        if a.rad_fp(r) != r {
            fail!({"L": els(a, l), "rad": els(a, r)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_6(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.is_self_projective(), "not self-projective");
    let lat = a.lattice();
    let pts = id_set(a.points());
    let max_fi = a.max_fi();
    for &l in a.fi_ids() {
        if let Some(&k) = max_fi.iter().find(|&&k| lat.le(l, k) && !pts.contains(&k)) {
            fail!({"L": els(a, l), "K": els(a, k)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_7(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    let vs = vmasks(a);
    let w = whole(a);
    let rad = a.radicals().rad;
    for l in a.lattice().ids() {
        if (vs[l] == 0) != (l == a.top()) {
            fail!({"part": "a", "L": els(a, l)});
        }
        if vs[l] == w && !a.lattice().le(l, rad) {
            fail!({"part": "b", "L": els(a, l)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn rem_fp_rms_8(a: &ModuleAnalysis) -> Result<Outcome> {
    let m = a.module();
    let sigma = m.shear_automorphism();
    let n = m.transport(&sigma)?;
    let b = ModuleAnalysis::new(n, a.caps())?;
    let image = |k: usize| -> Option<usize> {
        let mut bits = FixedBitSet::with_capacity(m.order());
        for x in a.sub(k).bits().ones() {
            bits.insert(sigma[x] as usize);
        }
        b.lattice().id_of_bits(&bits)
    };
    let mapped: Vec<Option<usize>> = a.points().iter().map(|&k| image(k)).collect();
    let mapped_set: BTreeSet<usize> = mapped.iter().flatten().copied().collect();
    if mapped.iter().any(Option::is_none) || mapped_set != id_set(b.points()) {
        fail!({"sigma": sigma, "spec_M": sets(a, a.points()), "spec_N": sets(&b, b.points())});
    }
    if image(a.rad_fp(0)) != Some(b.rad_fp(0)) {
        fail!({"sigma": sigma, "rad_M": els(a, a.rad_fp(0)), "rad_N": els(&b, b.rad_fp(0))});
    }
    let rho: Vec<usize> = mapped
        .iter()
        .map(|k| b.points().iter().position(|p| Some(*p) == *k).expect("mapped onto spectrum"))
        .collect();
    let (ta, tb) = (a.topology(Variant::Full), b.topology(Variant::Full));
    let push = |s: PointSet| members(s).fold(0, |acc, p| acc | bit(rho[p]));
    if ta.closed_sets.len() != tb.closed_sets.len() || ta.closed_sets.iter().any(|&c| !tb.is_closed(push(c))) {
        fail!({"sigma": sigma, "claim": "homeomorphism"});
    }
    Ok(Outcome::Pass)
}

pub fn thm_noeth(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    let t = a.topology(Variant::Full);
    let vs = vmasks(a);
    let radicals: Vec<usize> = a.lattice().ids().filter(|&l| a.is_fp_radical(l)).collect();
    let images: BTreeSet<PointSet> = radicals.iter().map(|&l| vs[l]).collect();
    if images.len() != radicals.len() {
        fail!({"claim": "injective", "fp_radicals": sets(a, &radicals)});
    }
    let closed: BTreeSet<PointSet> = t.closed_sets.iter().copied().collect();
    if images != closed {
        fail!({"claim": "surjective", "images": images.len(), "closed_sets": closed.len()});
    }
    for (c, pre) in t.closed_sets.iter().zip(&t.preimages) {
        let psi = a.rad_fp(pre[0]);
        if pre.iter().any(|&l| a.rad_fp(l) != psi) || vs[psi] != *c || !a.is_fp_radical(psi) {
            fail!({"claim": "inverse", "closed": mask_sets(a, *c), "psi": els(a, psi)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn thm_noeth_2(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    // Finite chains on both sides: the number of closed sets bounds every chain.
    let t = a.topology(Variant::Full);
    let radicals = a.lattice().ids().filter(|&l| a.is_fp_radical(l)).count();
    if radicals != t.closed_sets.len() {
        fail!({"fp_radicals": radicals, "closed_sets": t.closed_sets.len()});
    }
    Ok(Outcome::Degenerate("finite module: ACC and the Noetherian property both hold automatically".into()))
}

pub fn thm_noeth_3(a: &ModuleAnalysis) -> Result<Outcome> {
    gate!(require_topology(a));
    if let Some(u) = basis_check(a) {
        fail!({"open": mask_sets(a, u)});
    }
    Ok(Outcome::Degenerate("finite module: always Noetherian, spectrum always Noetherian".into()))
}

pub fn prop_a_irred(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    for s in subsets(t.len()) {
        let irreducible = t.is_irreducible_subset(s);
        let j = meet_of(a, s);
        let criterion = j != a.top() && a.is_fully_prime_in(j)?;
        if irreducible != criterion {
            fail!({"A": mask_sets(a, s), "irreducible": irreducible, "J_fully_prime": criterion});
        }
    }
    Ok(Outcome::Pass)
}

pub fn cor_rad_irred(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let fully_prime = |k: usize| -> Result<bool> { Ok(k != a.top() && a.is_fully_prime_in(k)?) };
    let irreducible = t.properties()?.irreducible.unwrap_or(false);
    let rad = a.rad_fp(0);
    if irreducible != fully_prime(rad)? {
        fail!({"part": 1, "irreducible": irreducible, "rad_fp": els(a, rad)});
    }
    if a.is_self_projective() {
        let max = &a.radicals().max_list;
        let mask = mask_of(a, max);
        if count(mask) != max.len() {
            fail!({"part": 2, "claim": "Max ⊆ Spec^fp"});
        }
        let max_irreducible = t.is_irreducible_subset(mask);
        if max_irreducible != fully_prime(a.radicals().rad)? {
            fail!({"part": 2, "max_irreducible": max_irreducible, "rad": els(a, a.radicals().rad)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn prop_k_irred(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let vs = vmasks(a);
    let irreducible: BTreeSet<PointSet> = t.irreducible_closed_sets().into_iter().map(|s| s.set).collect();
    let from_points: BTreeSet<PointSet> = a.points().iter().map(|&k| vs[k]).collect();
    if from_points.len() != a.points().len() || from_points != irreducible {
        fail!({"part": 1, "irreducible_closed": irreducible.iter().map(|&s| mask_sets(a, s)).collect::<Vec<_>>()});
    }
    let minimal = a.lattice().minimal_among(a.points());
    let from_minimal: BTreeSet<PointSet> = minimal.iter().map(|&k| vs[k]).collect();
    let components: BTreeSet<PointSet> = t.components().into_iter().collect();
    if from_minimal != components {
        fail!({"part": 2, "minimal": sets(a, &minimal), "components": components.iter().map(|&s| mask_sets(a, s)).collect::<Vec<_>>()});
    }
    Ok(Outcome::Pass)
}

pub fn cor_sober(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let vs = vmasks(a);
    for s in t.irreducible_closed_sets() {
        let expected: Vec<usize> = (0..t.len()).filter(|&p| vs[a.points()[p]] == s.set).collect();
        if s.generic_points.len() != 1 || s.generic_points != expected {
            fail!({"closed": mask_sets(a, s.set), "generic_points": s.generic_points.len()});
        }
    }
    Ok(Outcome::Pass)
}

pub fn prop_ultra(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    gate!(require_topology(a));
    let p = a.topology(Variant::Full).properties()?;
    let Some(ultra) = p.ultraconnected else {
        fail!({"claim": "S-PCD module has a non-empty spectrum"});
    };
    if ultra != a.classification().hollow {
        fail!({"hollow": a.classification().hollow, "ultraconnected": ultra});
    }
    Ok(Outcome::Pass)
}

pub fn lemma_open_compact(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let vs = vmasks(a);
    let w = t.whole();
    let lat = a.lattice();
    for (c, pre) in t.closed_sets.iter().zip(&t.preimages) {
        let u = w & !c;
        let l = pre[0];
        let mut covered: PointSet = 0;
        let mut generators = Vec::new();
        for x in a.sub(l).elements() {
            let basic = w & !vs[lat.cyclic(x)];
            if basic & !covered != 0 {
                covered |= basic;
                generators.push(x);
            }
        }
        let n = lat.sum_all(a.module(), generators.iter().map(|&x| lat.cyclic(x)));
        if covered != u || w & !vs[n] != u {
            fail!({"open": mask_sets(a, u), "generators": generators});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_open_compact_1(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo, "not duo");
    Ok(Outcome::Degenerate("finite space: countable and finite generation coincide".into()))
}

/// The proof's subcover: for each maximal `N_k` one member of the cover not below it.
fn lindelof_replay(a: &ModuleAnalysis) -> Option<Value> {
    let lat = a.lattice();
    let vs = vmasks(a);
    let w = whole(a);
    let max = &a.radicals().max_list;
    if let Some(&n) = max.iter().find(|n| !a.points().contains(n)) {
        return Some(json!({"N": els(a, n), "claim": "Max ⊆ Spec^fp"}));
    }
    let cyclic: Vec<usize> = a.module().elements().map(|x| lat.cyclic(x)).collect();
    let all: Vec<usize> = lat.ids().filter(|&l| l != 0).collect();
    for cover in [cyclic, all] {
        let mut chosen = Vec::new();
        for &n in max {
            match cover.iter().find(|&&l| !lat.le(l, n)) {
                Some(&l) => chosen.push(l),
                None => return Some(json!({"N": els(a, n), "claim": "some cover member is not below N"})),
            }
        }
        let sum = lat.sum_all(a.module(), chosen.iter().copied());
        let covered = chosen.iter().fold(0, |acc, &l| acc | (w & !vs[l]));
        if sum != a.top() || covered != w {
            return Some(json!({"chosen": sets(a, &chosen), "sum": els(a, sum)}));
        }
    }
    None
}

pub fn thm_fp_lindelof(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    gate!(require_topology(a));
    if let Some(w) = lindelof_replay(a) {
        return Ok(Outcome::Fail(w));
    }
    if !a.topology(Variant::Full).properties()?.compact {
        fail!({"compact": false});
    }
    Ok(Outcome::Pass)
}

pub fn thm_fp_lindelof_1(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    gate!(require_topology(a));
    if let Some(w) = lindelof_replay(a) {
        return Ok(Outcome::Fail(w));
    }
    Ok(Outcome::Degenerate("finite space: countable compactness is compactness".into()))
}

pub fn prop_local_conn(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().duo && spec_is_max(a), "not duo with Spec^fp = Max");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let p = t.properties()?;
    let mp = a.max_property();
    let vs = vmasks(a);
    let w = t.whole();
    if mp.complete {
        for &(l, e) in &mp.l_e {
            let pos = a.points().iter().position(|&k| k == l).expect("Spec = Max");
            if w & !vs[e] != bit(pos) {
                fail!({"part": 1, "L": els(a, l), "L_e": els(a, e)});
            }
        }
        if !p.discrete {
            fail!({"part": 1, "discrete": false});
        }
    }
    let unique = a.radicals().max_list.len() == 1;
    if unique != (mp.complete && p.connected) {
        fail!({"part": 2, "unique_maximal": unique, "complete": mp.complete, "connected": p.connected});
    }
    Ok(Outcome::Pass)
}

pub fn cor_local(a: &ModuleAnalysis) -> Result<Outcome> {
    let max = id_set(&a.radicals().max_list);
    hyp!(
        a.classification().spcd && a.points().iter().all(|k| max.contains(k)),
        "not S-PCD with every fully prime maximal"
    );
    gate!(require_topology(a));
    let p = a.topology(Variant::Full).properties()?;
    let mp = a.max_property();
    if !(mp.complete && p.compact) {
        fail!({"part": 2, "complete": mp.complete, "compact": p.compact});
    }
    let local = a.classification().local;
    if local != (mp.plain && p.connected) {
        fail!({"part": 3, "local": local, "max_property": mp.plain, "connected": p.connected});
    }
    Ok(Outcome::Pass)
}

pub fn lemma_conn_chain(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    gate!(require_topology(a));
    let t = a.topology(Variant::Full);
    hyp!(t.len() >= 2, "spectrum has fewer than two points");
    let lat = a.lattice();
    let pts = a.points();
    let vs = vmasks(a);
    let comparable = |i: usize, j: usize| lat.le(pts[i], pts[j]) || lat.le(pts[j], pts[i]);
    for s in subsets(t.len()).into_iter().filter(|&s| count(s) >= 2) {
        let connected = t.is_connected_subset(s);
        for i in members(s) {
            if members(s).any(|j| j != i && comparable(i, j)) {
                continue;
            }
            if connected {
                fail!({"A": mask_sets(a, s), "K": els(a, pts[i])});
            }
            // The disconnection used in the proof.
            let f = lat.meet_all(members(s).filter(|&j| j != i).map(|j| pts[j]));
            let w1 = s & !vs[pts[i]];
            let w2 = s & !vs[f];
            if w1 & w2 != 0 || w1 | w2 != s || w1 == 0 || w2 == 0 {
                fail!({"A": mask_sets(a, s), "K": els(a, pts[i]), "W1": mask_sets(a, w1), "W2": mask_sets(a, w2)});
            }
        }
    }
    Ok(Outcome::Pass)
}

pub fn prop_loc_finite(a: &ModuleAnalysis) -> Result<Outcome> {
    let mp = a.max_property();
    hyp!(a.classification().spcd && mp.complete, "not S-PCD with the complete max-property");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let lat = a.lattice();
    let vs = vmasks(a);
    let w = t.whole();
    let max = &a.radicals().max_list;
    let mut families = vec![max.clone()];
    families.extend(max.iter().map(|&k| vec![k]));
    for family in &families {
        for (p, &l) in a.points().iter().enumerate() {
            let outside: Vec<usize> = family.iter().copied().filter(|&k| !lat.le(l, k)).collect();
            let f = lat.meet_all(outside.iter().copied());
            let near: Vec<usize> = family.iter().copied().filter(|&k| !lat.le(f, k)).collect();
            let above: Vec<usize> = family.iter().copied().filter(|&k| lat.le(l, k)).collect();
            let in_m_l = above.iter().all(|k| max.contains(k));
            if lat.le(f, l) || id_set(&near) != id_set(&above) || !in_m_l || (w & !vs[f]) >> p & 1 == 0 {
                fail!({"family": sets(a, family), "L": els(a, l), "F": els(a, f)});
            }
        }
        let g: Vec<PointSet> = family.iter().map(|&k| mask_of(a, &[k])).collect();
        if !t.locally_finite(&g)?.holds {
            fail!({"family": sets(a, family)});
        }
    }
    Ok(Outcome::Pass)
}

pub fn lemma_singleton(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    let t = a.topology(Variant::Full);
    if !t.is_topology {
        fail!({"claim": "duo module is a top^fp-module"});
    }
    let max = &a.radicals().max_list;
    let (lat, top) = (a.lattice(), a.top());
    for l in lat.ids() {
        let maximal = max.contains(&l);
        let fully_prime = l != top && a.fi()[l] && a.is_fully_prime_in(l)?;
        let (v, _) = a.variety(l);
        let isolated_variety = fully_prime && v == vec![l];
        let closed_singleton = t.point_of(l).is_some_and(|p| t.is_closed(bit(p)));
        if maximal != isolated_variety || isolated_variety != closed_singleton {
            fail!({"L": els(a, l), "maximal": maximal, "fully_prime_isolated": isolated_variety, "closed_singleton": closed_singleton});
        }
    }
    Ok(Outcome::Pass)
}

pub fn prop_frecht(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(a.classification().spcd, "not S-PCD");
    gate!(require_topology(a));
    let t1 = a.topology(Variant::Full).properties()?.t1;
    let eq = spec_is_max(a);
    if eq != t1 {
        fail!({"spec_is_max": eq, "t1": t1});
    }
    Ok(Outcome::Pass)
}

pub fn thm_fp_discrete(a: &ModuleAnalysis) -> Result<Outcome> {
    hyp!(
        a.classification().spcd && a.max_property().complete,
        "not S-PCD with the complete max-property"
    );
    gate!(require_topology(a));
    let p = a.topology(Variant::Full).properties()?;
    let items = [spec_is_max(a), p.discrete, p.t2, p.t1];
    if items.iter().any(|&b| b != items[0]) {
        fail!({"spec_is_max": items[0], "discrete": items[1], "t2": items[2], "t1": items[3]});
    }
    Ok(Outcome::Pass)
}

//! Ring-level theorem replays.

use std::collections::BTreeSet;

use serde_json::json;

use super::Outcome;
use crate::error::Result;
use crate::spectrum::{ideal_product, RingSpectrum};
use crate::topology::{bit, varieties, Variant};

macro_rules! fail {
    ($($w:tt)*) => {
        return Ok(Outcome::Fail(json!($($w)*)))
    };
}

fn point_sets(a: &crate::analysis::ModuleAnalysis) -> BTreeSet<Vec<u32>> {
    a.points().iter().map(|&p| a.elements_of(p)).collect()
}

pub fn ring_star_is_product(rs: &RingSpectrum) -> Result<Outcome> {
    let reg = &rs.regular;
    let lat = reg.lattice();
    let ids: Vec<usize> = rs
        .ideals
        .iter()
        .map(|i| lat.id_of_bits(&i.elements).expect("ideals are left ideals"))
        .collect();
    for (i, &x) in ids.iter().enumerate() {
        for (j, &y) in ids.iter().enumerate() {
            let product = ideal_product(&rs.ring, reg.module(), &rs.ideals[i].elements, &rs.ideals[j].elements);
            let star = reg.star(x, y)?;
            if reg.sub(star).bits() != &product {
                fail!({"I": rs.ideals[i].members(), "J": rs.ideals[j].members(),
                    "star": reg.elements_of(star), "product": product.ones().collect::<Vec<_>>()});
            }
        }
    }
    let spec: BTreeSet<Vec<u32>> = rs.spec_sets().into_iter().collect();
    let left = point_sets(reg);
    let right = point_sets(&rs.opposite_regular);
    if left != spec || right != spec {
        fail!({"spec": spec, "left_regular": left, "right_regular": right});
    }
    Ok(Outcome::Pass)
}

pub fn prop_ring_compact(rs: &RingSpectrum) -> Result<Outcome> {
    let reg = &rs.regular;
    let t = reg.topology(Variant::Full);
    if !t.is_topology {
        return Ok(Outcome::Degenerate("not a left top^fp ring".into()));
    }
    // Replay on the cover by basic sets of non-units, when it covers.
    let lat = reg.lattice();
    let vs = varieties(lat, reg.points());
    let w = t.whole();
    let mut covered = 0;
    let mut chosen = Vec::new();
    for a in rs.ring.elements().filter(|&a| !rs.ring.is_unit(a)) {
        let basic = w & !vs[lat.cyclic(a)];
        if basic & !covered != 0 {
            covered |= basic;
            chosen.push(a);
        }
    }
    if covered == w && w != 0 {
        let sum = lat.sum_all(reg.module(), chosen.iter().map(|&a| lat.cyclic(a)));
        if !reg.sub(sum).contains(rs.ring.one()) {
            fail!({"chosen": chosen, "sum": reg.elements_of(sum)});
        }
    }
    Ok(Outcome::Degenerate("finite space: compactness is automatic".into()))
}

pub fn cor_pi_reg(rs: &RingSpectrum) -> Result<Outcome> {
    let p = &rs.predicates;
    if !(p.left_duo || p.right_duo) {
        return Ok(Outcome::Degenerate("neither left nor right duo".into()));
    }
    let side = if p.left_duo { &rs.regular } else { &rs.opposite_regular };
    let props = side.topology(Variant::Fi).properties()?;
    let items = [
        p.zero_dimensional,
        p.pi_regular && p.max_complete,
        props.discrete,
        props.t2,
        props.t1,
    ];
    if items.iter().any(|&b| b != items[0]) {
        fail!({"zero_dimensional": items[0], "pi_regular_complete": items[1], "discrete": items[2], "t2": items[3], "t1": items[4]});
    }
    Ok(Outcome::Pass)
}

pub fn cor_0_dim(rs: &RingSpectrum) -> Result<Outcome> {
    let p = &rs.predicates;
    if !p.commutative {
        return Ok(Outcome::Degenerate("ring is not commutative".into()));
    }
    let t = rs.regular.topology(Variant::Fi);
    let props = t.properties()?;
    let singletons_closed = (0..t.len()).all(|i| t.is_closed(bit(i)));
    let items = [
        p.zero_dimensional,
        p.pi_regular,
        props.discrete,
        props.t2,
        props.t1 && singletons_closed,
    ];
    if items.iter().any(|&b| b != items[0]) {
        fail!({"part": 1, "zero_dimensional": items[0], "pi_regular": items[1], "discrete": items[2], "t2": items[3], "t1": items[4]});
    }
    // Semilocal, Noetherian and perfect all hold for finite rings.
    let vnr = p.von_neumann_regular;
    let conditions = [vnr && p.semilocal, vnr && p.max_complete, vnr, vnr];
    if conditions.iter().any(|&c| c != p.semisimple) {
        fail!({"part": 2, "semisimple": p.semisimple, "von_neumann_regular": vnr, "max_complete": p.max_complete});
    }
    Ok(Outcome::Pass)
}

//! Catalogs of subjects and the built-in default.

use serde::{Deserialize, Serialize};

use crate::analysis::Caps;
use crate::error::{Error, Result};
use crate::schema::{build_ring, ModuleSpec, RingSpec, Table};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntrySpec {
    Module(ModuleSpec),
    Ring(RingSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(flatten)]
    pub spec: EntrySpec,
    /// Also verify `M/L` for every proper nonzero fully invariant `L`.
    #[serde(default)]
    pub quotients: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn module(&mut self, name: impl Into<String>, spec: ModuleSpec, quotients: bool, tags: &[&str]) {
        self.entries.push(CatalogEntry {
            name: name.into(),
            spec: EntrySpec::Module(spec),
            quotients,
            tags: tags.iter().map(|t| t.to_string()).collect(),
        });
    }

    pub fn ring(&mut self, name: impl Into<String>, spec: RingSpec, tags: &[&str]) {
        self.entries.push(CatalogEntry {
            name: name.into(),
            spec: EntrySpec::Ring(spec),
            quotients: false,
            tags: tags.iter().map(|t| t.to_string()).collect(),
        });
    }
}

fn zn(n: u32) -> RingSpec {
    RingSpec::Zn { n }
}

fn identity(k: usize) -> Vec<Vec<Vec<u32>>> {
    vec![(0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()]
}

/// Upper triangular 2×2 matrices over `Z_2`; digits `(a, b, d)` of `[[a, b], [0, d]]`.
pub fn upper_triangular_z2() -> RingSpec {
    let enc = |a: u32, b: u32, d: u32| 4 * a + 2 * b + d;
    let mut mul = Vec::with_capacity(64);
    for x in 0..8u32 {
        for y in 0..8u32 {
            let (a, b, d) = (x >> 2, (x >> 1) & 1, x & 1);
            let (a2, b2, d2) = (y >> 2, (y >> 1) & 1, y & 1);
            mul.push(enc(a * a2, (a * b2 + b * d2) % 2, d * d2));
        }
    }
    RingSpec::Table {
        add_cyclic: vec![2, 2, 2],
        mul: Table::Flat(mul),
        one: enc(1, 0, 1),
    }
}

/// The field with four elements; index `2a + b` is `aω + b` with `ω² = ω + 1`.
pub fn f4() -> RingSpec {
    let mut mul = Vec::with_capacity(16);
    for x in 0..4u32 {
        for y in 0..4u32 {
            let (a, b, c, d) = (x >> 1, x & 1, y >> 1, y & 1);
            let hi = (a * c + a * d + b * c) % 2;
            let lo = (a * c + b * d) % 2;
            mul.push(2 * hi + lo);
        }
    }
    RingSpec::Table {
        add_cyclic: vec![2, 2],
        mul: Table::Flat(mul),
        one: 1,
    }
}

pub fn opposite(spec: &RingSpec) -> Result<RingSpec> {
    let ring = build_ring(spec, &Caps::default())?.opposite();
    Ok(RingSpec::Table {
        add_cyclic: ring.add_cyclic().to_vec(),
        mul: Table::Flat(ring.mul_table().to_vec()),
        one: ring.one(),
    })
}

pub fn default_catalog() -> Catalog {
    let mut c = Catalog::default();
    for n in 2..=30 {
        c.module(format!("Z{n}"), ModuleSpec::regular(zn(n)), true, &["cyclic"]);
    }
    for p in [2u32, 3] {
        c.module(
            format!("Z{p}xZ{p} over Z{p}"),
            ModuleSpec::matrices(zn(p), vec![p, p], identity(2)),
            true,
            &["semisimple"],
        );
    }
    c.module("Z2+Z4 over Z4", ModuleSpec::matrices(zn(4), vec![2, 4], identity(2)), true, &["non-duo"]);
    c.module("Z2+Z4 over Z8", ModuleSpec::matrices(zn(8), vec![2, 4], identity(2)), true, &["non-duo"]);
    c.module("Z2+Z4+Z8 over Z8", ModuleSpec::matrices(zn(8), vec![2, 4, 8], identity(3)), true, &["non-duo"]);
    c.module("Z4+Z9 over Z36", ModuleSpec::matrices(zn(36), vec![4, 9], identity(2)), true, &[]);
    c.module("Z3+Z9 over Z9", ModuleSpec::matrices(zn(9), vec![3, 9], identity(2)), true, &["non-duo"]);
    c.module("Z2 over Z4", ModuleSpec::matrices(zn(4), vec![2], identity(1)), false, &[]);
    let t2 = upper_triangular_z2();
    let t2op = opposite(&t2).expect("triangular ring is valid");
    c.module("T2(Z2)", ModuleSpec::regular(t2.clone()), true, &["noncommutative"]);
    c.module("T2(Z2)^op", ModuleSpec::regular(t2op.clone()), true, &["noncommutative"]);
    c.module(
        "T2(Z2)e11",
        ModuleSpec::matrices(t2.clone(), vec![2], vec![vec![vec![1]], vec![vec![0]], vec![vec![0]]]),
        false,
        &["noncommutative"],
    );
    c.module(
        "T2(Z2)e22",
        ModuleSpec::matrices(
            t2.clone(),
            vec![2, 2],
            vec![
                vec![vec![1, 0], vec![0, 0]],
                vec![vec![0, 0], vec![1, 0]],
                vec![vec![0, 0], vec![0, 1]],
            ],
        ),
        true,
        &["noncommutative"],
    );
    let z2z3 = RingSpec::Product { factors: vec![zn(2), zn(3)] };
    let z2z2 = RingSpec::Product { factors: vec![zn(2), zn(2)] };
    c.module("F4", ModuleSpec::regular(f4()), false, &["field"]);
    c.module("Z2xZ3", ModuleSpec::regular(z2z3.clone()), true, &["product"]);
    c.module("Z2xZ2", ModuleSpec::regular(z2z2.clone()), true, &["product"]);
    for n in 2..=30 {
        c.ring(format!("ring Z{n}"), zn(n), &["cyclic"]);
    }
    c.ring("ring T2(Z2)", t2, &["noncommutative"]);
    c.ring("ring T2(Z2)^op", t2op, &["noncommutative"]);
    c.ring("ring F4", f4(), &["field"]);
    c.ring("ring Z2xZ3", z2z3, &["product"]);
    c.ring("ring Z2xZ2", z2z2, &["product"]);
    c.ring("ring Z4xZ9", RingSpec::Product { factors: vec![zn(4), zn(9)] }, &["product"]);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::build_module;

    #[test]
    fn default_entries_build() {
        let caps = Caps::default();
        for e in default_catalog().entries {
            match &e.spec {
                EntrySpec::Module(m) => {
                    build_module(m, &caps).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
                EntrySpec::Ring(r) => {
                    build_ring(r, &caps).unwrap_or_else(|err| panic!("{}: {err}", e.name));
                }
            }
        }
    }

    #[test]
    fn catalog_round_trips() {
        let c = default_catalog();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(Catalog::parse(&text).unwrap(), c);
    }

    #[test]
    fn t2_is_noncommutative() {
        let r = build_ring(&upper_triangular_z2(), &Caps::default()).unwrap();
        assert!(!r.is_commutative());
        assert_eq!(r.one(), 5);
    }
}

//! JSON documents describing rings and modules.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::Caps;
use crate::error::{Error, Result};
use crate::module::FiniteModule;
use crate::ring::FiniteRing;

/// A table given either flat (row-major) or as nested rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Table {
    Flat(Vec<u32>),
    Rows(Vec<Vec<u32>>),
}

impl Table {
    pub fn flatten(&self) -> Vec<u32> {
        match self {
            Table::Flat(v) => v.clone(),
            Table::Rows(rows) => rows.iter().flatten().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingSpec {
    #[serde(rename = "Zn")]
    Zn { n: u32 },
    #[serde(rename = "product")]
    Product { factors: Vec<RingSpec> },
    #[serde(rename = "table")]
    Table { add_cyclic: Vec<u32>, mul: Table, one: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    /// `regular`, `table` or `matrices`; inferred from the other fields when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add_cyclic: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub act: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<u32>>,
}

impl ModuleSpec {
    pub fn regular(ring: RingSpec) -> Self {
        ModuleSpec {
            kind: Some("regular".into()),
            ring,
            add_cyclic: None,
            act: None,
            matrices: None,
            generators: None,
        }
    }

    pub fn matrices(ring: RingSpec, add_cyclic: Vec<u32>, matrices: Vec<Vec<Vec<u32>>>) -> Self {
        ModuleSpec {
            kind: None,
            ring,
            add_cyclic: Some(add_cyclic),
            act: None,
            matrices: Some(matrices),
            generators: None,
        }
    }
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Ring(RingSpec),
    Module(ModuleSpec),
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("ring").is_some() {
        serde_json::from_value(value).map(Document::Module).map_err(|e| Error::Parse(e.to_string()))
    } else {
        serde_json::from_value(value).map(Document::Ring).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn build_ring(spec: &RingSpec, caps: &Caps) -> Result<FiniteRing> {
    match spec {
        RingSpec::Zn { n } => {
            if *n as usize > caps.ring {
                return Err(Error::SizeCap {
                    what: "ring",
                    size: *n as usize,
                    cap: caps.ring,
                });
            }
            FiniteRing::zn(*n).map_err(|e| e.at("/n"))
        }
        RingSpec::Product { factors } => {
            let built = factors
                .iter()
                .enumerate()
                .map(|(i, f)| build_ring(f, caps).map_err(|e| e.at(format!("/factors/{i}"))))
                .collect::<Result<Vec<_>>>()?;
            FiniteRing::product(&built, caps.ring)
        }
        RingSpec::Table { add_cyclic, mul, one } => {
            FiniteRing::from_table(add_cyclic, mul.flatten(), *one, caps.ring).map_err(|e| match e {
                Error::MalformedTable(_) => e.at("/mul"),
                other => other,
            })
        }
    }
}

pub fn build_module(spec: &ModuleSpec, caps: &Caps) -> Result<FiniteModule> {
    let ring = Arc::new(build_ring(&spec.ring, caps).map_err(|e| e.at("/ring"))?);
    let kind = match (&spec.kind, &spec.act, &spec.matrices) {
        (Some(k), _, _) => k.as_str(),
        (None, Some(_), _) => "table",
        (None, None, Some(_)) => "matrices",
        (None, None, None) => "regular",
    };
    let add_cyclic = || spec.add_cyclic.clone().ok_or_else(|| Error::Parse("missing field `add_cyclic`".into()).at("/add_cyclic"));
    match kind {
        "regular" => {
            if ring.order() > caps.module {
                return Err(Error::SizeCap {
                    what: "module",
                    size: ring.order(),
                    cap: caps.module,
                });
            }
            Ok(FiniteModule::regular(ring))
        }
        "table" => {
            let act = spec.act.as_ref().ok_or_else(|| Error::Parse("missing field `act`".into()).at("/act"))?;
            FiniteModule::from_table(ring, &add_cyclic()?, act.flatten(), caps.module).map_err(|e| match e {
                Error::MalformedTable(_) => e.at("/act"),
                other => other,
            })
        }
        "matrices" => {
            let matrices = spec
                .matrices
                .as_ref()
                .ok_or_else(|| Error::Parse("missing field `matrices`".into()).at("/matrices"))?;
            FiniteModule::from_matrices(ring, &add_cyclic()?, matrices, spec.generators.as_deref(), caps.module).map_err(|e| match e {
                Error::AtPath { .. } | Error::MalformedTable(_) => e.at("/matrices"),
                other => other,
            })
        }
        other => Err(Error::Parse(format!("unknown module kind `{other}`")).at("/kind")),
    }
}

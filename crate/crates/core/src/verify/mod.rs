//! Named theorem checks run over a catalog of subjects.
//!
//! Each check evaluates its hypotheses first. A subject that fails them
//! yields `degenerate` with the missing hypothesis as the reason; a
//! subject that meets them yields `pass` or `fail`, and a failure always
//! carries a witness.

pub mod catalog;
pub mod module_checks;
pub mod report;
pub mod ring_checks;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::{Caps, ModuleAnalysis, QuotientAnalysis};
use crate::error::{Error, Result};
use crate::schema::{build_module, build_ring};
use crate::spectrum::RingSpectrum;

pub use catalog::{default_catalog, Catalog, CatalogEntry, EntrySpec};
pub use report::{Counts, Entry, Report, Status, Summary};

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Value),
    Degenerate(String),
}

#[derive(Clone, Copy)]
pub enum Runner {
    Module(fn(&ModuleAnalysis) -> Result<Outcome>),
    Ring(fn(&RingSpectrum) -> Result<Outcome>),
}

#[derive(Clone, Copy)]
pub struct CheckDef {
    pub id: &'static str,
    pub runner: Runner,
}

impl CheckDef {
    pub fn subject_kind(&self) -> &'static str {
        match self.runner {
            Runner::Module(_) => "module",
            Runner::Ring(_) => "ring",
        }
    }
}

macro_rules! registry {
    ($($kind:ident $id:literal => $f:path),* $(,)?) => {
        pub const CHECKS: &[CheckDef] = &[$(CheckDef { id: $id, runner: Runner::$kind($f) }),*];
    };
}

use module_checks as mc;
use ring_checks as rc;

registry! {
    Module "lemma_ww_fi" => mc::lemma_ww_fi,
    Module "lemma_spcd_comm" => mc::lemma_spcd_comm,
    Module "lemma_K_prime" => mc::lemma_k_prime,
    Module "lemma_fp_to_p" => mc::lemma_fp_to_p,
    Module "prop_fp_cog" => mc::prop_fp_cog,
    Module "prop_fppai" => mc::prop_fppai,
    Module "cor_MKp" => mc::cor_mkp,
    Module "rem_duo_coatomic" => mc::rem_duo_coatomic,
    Module "lemma_semi_local" => mc::lemma_semi_local,
    Module "lemma_minimal" => mc::lemma_minimal,
    Module "lemma_fp_properties" => mc::lemma_fp_properties,
    Module "thm_fi_topology" => mc::thm_fi_topology,
    Module "lemma_fp_closure" => mc::lemma_fp_closure,
    Module "rem_fp_rms_1" => mc::rem_fp_rms_1,
    Module "rem_fp_rms_2" => mc::rem_fp_rms_2,
    Module "rem_fp_rms_3" => mc::rem_fp_rms_3,
    Module "rem_fp_rms_4" => mc::rem_fp_rms_4,
    Module "rem_fp_rms_5" => mc::rem_fp_rms_5,
    Module "rem_fp_rms_6" => mc::rem_fp_rms_6,
    Module "rem_fp_rms_7" => mc::rem_fp_rms_7,
    Module "rem_fp_rms_8" => mc::rem_fp_rms_8,
    Module "thm_noeth" => mc::thm_noeth,
    Module "thm_noeth_2" => mc::thm_noeth_2,
    Module "thm_noeth_3" => mc::thm_noeth_3,
    Module "prop_A_irred" => mc::prop_a_irred,
    Module "cor_rad_irred" => mc::cor_rad_irred,
    Module "prop_K_irred" => mc::prop_k_irred,
    Module "cor_sober" => mc::cor_sober,
    Module "prop_ultra" => mc::prop_ultra,
    Module "lemma_open_compact" => mc::lemma_open_compact,
    Module "lemma_open_compact_1" => mc::lemma_open_compact_1,
    Module "thm_fp_lindelof" => mc::thm_fp_lindelof,
    Module "thm_fp_lindelof_1" => mc::thm_fp_lindelof_1,
    Module "prop_local_conn" => mc::prop_local_conn,
    Module "cor_local" => mc::cor_local,
    Module "lemma_conn_chain" => mc::lemma_conn_chain,
    Module "prop_loc_finite" => mc::prop_loc_finite,
    Module "lemma_singleton" => mc::lemma_singleton,
    Module "prop_frecht" => mc::prop_frecht,
    Module "thm_fp_discrete" => mc::thm_fp_discrete,
    Ring "ring_star_is_product" => rc::ring_star_is_product,
    Ring "prop_ring_compact" => rc::prop_ring_compact,
    Ring "cor_pi_reg" => rc::cor_pi_reg,
    Ring "cor_0_dim" => rc::cor_0_dim,
}

/// Checks expected to be degenerate on every finite subject.
pub const ALWAYS_DEGENERATE: &[&str] = &[
    "thm_noeth_2",
    "thm_noeth_3",
    "lemma_open_compact_1",
    "thm_fp_lindelof_1",
    "prop_ring_compact",
];

pub fn check(id: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Resolves a comma-separated filter into check definitions.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static CheckDef>> {
    match filter {
        None => Ok(CHECKS.iter().collect()),
        Some(f) => f
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|id| check(id).ok_or_else(|| Error::UnknownCheck(id.to_string())))
            .collect(),
    }
}

enum Handle {
    Own(Arc<ModuleAnalysis>),
    Quotient(Arc<QuotientAnalysis>),
}

impl Handle {
    fn get(&self) -> &ModuleAnalysis {
        match self {
            Handle::Own(a) => a,
            Handle::Quotient(q) => &q.analysis,
        }
    }
}

enum Subject {
    Module(String, Handle),
    Ring(String, Arc<RingSpectrum>),
    Skipped(String, String),
}

fn outcome_entry(subject: &str, id: &str, started: Instant, outcome: Result<Outcome>) -> Entry {
    let (status, reason, witness) = match outcome {
        Ok(Outcome::Pass) => (Status::Pass, None, None),
        Ok(Outcome::Degenerate(r)) => (Status::Degenerate, Some(r), None),
        Ok(Outcome::Fail(w)) => (Status::Fail, None, Some(w)),
        Err(e) => (Status::Fail, Some("check raised an error".into()), Some(json!({"error": e.to_string()}))),
    };
    Entry {
        subject: subject.to_string(),
        check_id: id.to_string(),
        status,
        reason,
        witness,
        timing_ms: (started.elapsed().as_secs_f64() * 1e6).round() / 1e3,
    }
}

/// Runs the selected module checks on one analysis.
pub fn run_module_checks(name: &str, a: &ModuleAnalysis, checks: &[&CheckDef]) -> Vec<Entry> {
    checks
        .iter()
        .filter_map(|c| match c.runner {
            Runner::Module(f) => {
                let t = Instant::now();
                Some(outcome_entry(name, c.id, t, f(a)))
            }
            Runner::Ring(_) => None,
        })
        .collect()
}

pub fn run_ring_checks(name: &str, rs: &RingSpectrum, checks: &[&CheckDef]) -> Vec<Entry> {
    checks
        .iter()
        .filter_map(|c| match c.runner {
            Runner::Ring(f) => {
                let t = Instant::now();
                Some(outcome_entry(name, c.id, t, f(rs)))
            }
            Runner::Module(_) => None,
        })
        .collect()
}

fn set_label(elements: &[u32]) -> String {
    let inner: Vec<String> = elements.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn build_entry(e: &CatalogEntry, caps: Caps) -> Vec<Subject> {
    match &e.spec {
        EntrySpec::Ring(spec) => match build_ring(spec, &caps).and_then(|r| RingSpectrum::new(Arc::new(r), caps)) {
            Ok(rs) => vec![Subject::Ring(e.name.clone(), Arc::new(rs))],
            Err(err) => vec![Subject::Skipped(e.name.clone(), err.to_string())],
        },
        EntrySpec::Module(spec) => {
            let a = match build_module(spec, &caps).and_then(|m| ModuleAnalysis::new(m, caps)) {
                Ok(a) => Arc::new(a),
                Err(err) => return vec![Subject::Skipped(e.name.clone(), err.to_string())],
            };
            let mut out = Vec::new();
            if e.quotients {
                for l in a.proper_fi().into_iter().filter(|&l| l != 0) {
                    let name = format!("{} / {}", e.name, set_label(&a.elements_of(l)));
                    match a.quotient(l) {
                        Ok(q) => out.push(Subject::Module(name, Handle::Quotient(q))),
                        Err(err) => out.push(Subject::Skipped(name, err.to_string())),
                    }
                }
            }
            out.insert(0, Subject::Module(e.name.clone(), Handle::Own(a)));
            out
        }
    }
}

/// Builds every catalog subject and runs the selected checks, in catalog order.
pub fn run(catalog: &Catalog, caps: Caps, filter: Option<&str>) -> Result<Report> {
    let checks = select(filter)?;
    let subjects: Vec<Subject> = catalog
        .entries
        .par_iter()
        .map(|e| build_entry(e, caps))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let entries: Vec<Entry> = subjects
        .par_iter()
        .map(|s| match s {
            Subject::Module(name, h) => run_module_checks(name, h.get(), &checks),
            Subject::Ring(name, rs) => run_ring_checks(name, rs, &checks),
            Subject::Skipped(name, reason) => vec![Entry {
                subject: name.clone(),
                check_id: "build".into(),
                status: Status::Skipped,
                reason: Some(reason.clone()),
                witness: None,
                timing_ms: 0.0,
            }],
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(Report::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FiniteModule;
    use crate::ring::FiniteRing;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), CHECKS.len());
    }

    #[test]
    fn unknown_filter_is_an_error() {
        assert!(matches!(select(Some("no_such_check")), Err(Error::UnknownCheck(_))));
        assert_eq!(select(Some("prop_ultra")).unwrap().len(), 1);
    }

    #[test]
    fn z6_passes_everything() {
        let m = FiniteModule::regular(Arc::new(FiniteRing::zn(6).unwrap()));
        let a = ModuleAnalysis::new(m, Caps::default()).unwrap();
        let all: Vec<&CheckDef> = CHECKS.iter().collect();
        for e in run_module_checks("Z6", &a, &all) {
            assert_ne!(e.status, Status::Fail, "{e:?}");
        }
    }

    #[test]
    fn deleting_a_point_is_caught() {
        let m = FiniteModule::regular(Arc::new(FiniteRing::zn(6).unwrap()));
        let a = ModuleAnalysis::with_spectrum_points(m, Caps::default(), vec![1]).unwrap();
        let all: Vec<&CheckDef> = CHECKS.iter().collect();
        let fails = run_module_checks("Z6", &a, &all).into_iter().filter(|e| e.status == Status::Fail).count();
        assert!(fails >= 1);
    }
}

//! Fully prime spectra of finite modules over finite rings.

pub mod analysis;
pub mod classify;
pub mod error;
pub mod group;
pub mod hom;
pub mod lattice;
pub mod module;
pub mod ring;
pub mod schema;
pub mod snf;
pub mod spectrum;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Ideal, Submodule, SubmoduleLattice};
pub use module::{FiniteModule, ModuleId};
pub use ring::FiniteRing;

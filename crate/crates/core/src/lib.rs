//! Finite and windowed gyrogroups.
//!
//! Table-backed gyrogroups with exhaustive axiom and identity checks,
//! normal subgroups and quotients, group-gyro extensions and their factor
//! systems, morphisms between them, and the semi cross product `H ⋈ K` of a
//! group by a gyrogroup.

pub mod axioms;
pub mod builtin;
pub mod error;
pub mod extension;
pub mod factor;
pub mod gyrogroup;
pub mod io;
pub mod k8;
pub mod morphism;
pub mod perm;
pub mod product;
pub mod rule;
pub mod semi_cross;
pub mod structure;
pub mod table;

pub use axioms::{verify_axioms, verify_identities, Check, CheckReport, Window};
pub use error::{GyroError, Result};
pub use extension::{Extension, Section};
pub use factor::FactorSystem;
pub use gyrogroup::{FiniteGyrogroup, FiniteMagma, Magma};
pub use perm::Perm;
pub use rule::RuleGyrogroup;
pub use semi_cross::SigmaMap;
pub use structure::Subset;
pub use table::CayleyTable;

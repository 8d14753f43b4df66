//! Finite semirings and semimodules given by tables, with halos, additive
//! spines and summand-absorbing submodules.

pub mod dot;
pub mod error;
pub mod halo;
pub mod io;
pub mod lattice;
pub mod limits;
pub mod linear;
pub mod matrix;
pub mod module;
pub mod monoid;
pub mod monoid_semiring;
pub mod semiring;
pub mod spine;
pub mod subset;
pub mod suite;
pub mod zoo;

pub use dot::lattice_to_dot;
pub use error::{Error, Law, Result};
pub use halo::{halo, is_additive_spine, HaloResult, HaloTable, HaloWitness, SpineCheck};
pub use io::{load_structure, CheckConfig, Structure};
pub use lattice::{
    enumerate_sa, enumerate_sa_bruteforce, enumerate_sigma_sa, is_sa, sa_closure, SaLattice,
    SpineSource,
};
pub use limits::{Limits, Verification, DEFAULT_SEED};
pub use linear::LinearMap;
pub use matrix::MatrixSemiring;
pub use module::{FreeModule, Module, Restriction, Submodule};
pub use monoid::FiniteMonoid;
pub use monoid_semiring::MonoidSemiring;
pub use semiring::Semiring;
pub use subset::Subset;
pub use suite::{
    check_theorem_suite, run_checks, CheckReport, Status, SuiteOptions, TheoremReport, THEOREMS,
};
pub use zoo::{zoo, Construction, ZooInstance};

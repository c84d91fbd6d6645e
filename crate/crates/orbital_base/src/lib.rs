//! Finite groups acting on finite sets, equivariant maps, pullbacks, orbit
//! categories and their slices, plus a small generic finite-category type used
//! for atomicity and chain-length checks.

pub mod error;
pub mod fincat;
pub mod gmap;
pub mod group;
pub mod gset;
pub mod io;
pub mod orbit_cat;

pub use error::OrbitalError;
pub use fincat::{retraction_category, AtomicCheck, FinCategory};
pub use gmap::{
    brute_force_maps, diagonal_complement, equivariant_maps, find_isomorphism, pullback, DiagonalComplement, GMap,
    Pullback,
};
pub use group::FiniteGroup;
pub use gset::{GSet, Orbit};
pub use orbit_cat::{check_homs_against_brute_force, Level, OrbitCat, Slice};

/// The four groups exercised by the verification suite.
pub const TEST_GROUPS: [&str; 4] = ["C2", "C3", "C4", "S3"];

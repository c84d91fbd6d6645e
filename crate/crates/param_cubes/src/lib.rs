//! Parametrised posets over slices of orbit categories. The central objects are
//! the cubes of maps `w: W → V`, whose fibre at a level `b: U → V` is the powerset
//! of orbits of `U ×_V W`, together with their punctures, singleton inclusions,
//! basechange and the pushforward comparison for singletons.

pub mod catalogue;
pub mod cube;
pub mod error;
pub mod io;
pub mod mask;
pub mod param;
pub mod pushforward;

pub use catalogue::{catalogue, coproduct_map, orbit_to_point, CatalogueEntry};
pub use cube::{
    basechange, build_cube, build_cube_over, decomposition_from_orbit_partition, point_of, BaseChange,
    CubeDecomposition, ParamCube, SingletonChecks, SingletonInclusion,
};
pub use error::CubeError;
pub use io::ParamPosetFile;
pub use mask::{preimage, MaskPoset, MAX_ENUMERATED_ORBITS, MAX_ORBITS};
pub use param::{ParamPoset, Puncture, TotalPoset, TOTAL_CAP};
pub use pushforward::{pushforward_singletons, PushforwardLevel, ThetaEntry};

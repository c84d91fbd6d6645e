//! Finite lattices and the order-theoretic toolkit used by the rest of the workspace:
//! posets, distributive lattices with complements, smashing localisations,
//! excisable structures and faces.

pub mod error;
pub mod excisable;
pub mod faces;
pub mod io;
pub mod lattice;
pub mod maps;
pub mod poset;
pub mod smash;

pub use error::LatticeError;
pub use excisable::{induced_excisable, ExcisableStructure};
pub use faces::{all_faces, face_map, DecompositionTriple, FaceMap};
pub use io::{lattice_from_json, lattice_to_json, LatticeFile};
pub use lattice::{subset_label, Complementation, FinLattice};
pub use maps::{check_galois, GaloisCheck, MonotoneMap};
pub use poset::{FinPoset, SIZE_CAP};
pub use smash::{
    complement_decomposition, meet_join_pair, smash_localization, ComplementDecomposition, SmashAdjunctions,
    SmashLocalization,
};

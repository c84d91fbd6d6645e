//! Exact rational diagrams over finite posets.

pub mod approx;
pub mod decomposition;
pub mod diagram;
pub mod error;
pub mod excisive;
pub mod exec;
pub mod functor;
pub mod io;
pub mod kan;
pub mod limits;
pub mod linalg;
pub mod random;
pub mod semiadditive;
pub mod transport;

pub use approx::{
    c_sigma, c_sigma_map, p_sigma, rezk_factorization, t_sigma, t_stage, theta, Excision, RezkFactorization,
    Stabilization, TSigma, TStage, Tower,
};
pub use decomposition::{colim_decomposition, random_cover, slice_cover, Cover, DecompositionReport};
pub use diagram::PosetDiagram;
pub use error::KanError;
pub use excisive::{check_excisive, sample_cocartesian, ExcisiveReport, SampleWitness};
pub use exec::Exec;
pub use functor::{apply_functor, respects_composition, FunctorSpec, VectFunctor};
pub use io::{diagram_from_json, diagram_to_json, DiagramFile};
pub use kan::{
    is_cartesian, is_cocartesian, is_right_extended, lkan, rkan, ComponentWitness, LeftKan, RightKan, UniversalityCheck,
};
pub use limits::{colim, colim_over, lim, lim_over, punctured, Colimit, Limit};
pub use linalg::{q, q_frac, Mat, Q};
pub use random::{random_diagram, rng_for, sub_seed, SamplerConfig};
pub use semiadditive::{biproduct_square, semiadditive_square_check, SemiadditiveReport};
pub use transport::{face_transport_check, SubCheck, TransportReport};

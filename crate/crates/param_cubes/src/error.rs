use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("fibre with {orbits} orbits exceeds the supported width")]
    FibreOverflow { orbits: usize },
    #[error("fibre at level {level} is empty")]
    EmptyFibre { level: String },
    #[error("orbit sets do not partition the terminal orbits")]
    NotAPartition,
    #[error("base has no terminal level")]
    NoTerminalLevel,
    #[error("restriction along {morphism} leaves the subposet")]
    NotStable { morphism: String },
    #[error("functoriality fails at {0}")]
    Functoriality(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Orbital(#[from] orbital_base::OrbitalError),
    #[error(transparent)]
    Lattice(#[from] lattice_core::LatticeError),
}

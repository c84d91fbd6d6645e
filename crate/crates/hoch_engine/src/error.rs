use orbital_base::OrbitalError;
use param_cubes::CubeError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HochError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotComplex { degree: i32 },
    #[error("map does not commute with differentials at degree {degree}")]
    NotChainMap { degree: i32 },
    #[error("diagram is not functorial on the composite of morphisms {first} and {second}")]
    Functoriality { first: usize, second: usize },
    #[error("degree {degree} lies outside the supported range [{lo}, {hi}]")]
    Unbounded { degree: i32, lo: i32, hi: i32 },
    #[error("total dimension {dim} exceeds the cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("indexing category is not EI: {0}")]
    NotEi(String),
    #[error("malformed input: {0}")]
    Json(String),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Orbital(#[from] OrbitalError),
}

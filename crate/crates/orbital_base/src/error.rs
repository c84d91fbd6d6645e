use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitalError {
    #[error("group table is malformed: {0}")]
    GroupTable(String),
    #[error("group law `{law}` fails at {witness:?}")]
    GroupLaw { law: &'static str, witness: Vec<usize> },
    #[error("action is malformed: {0}")]
    Action(String),
    #[error("map is not equivariant: g={group_element}, point={point}")]
    NotEquivariant { group_element: usize, point: usize },
    #[error("maps do not share a target")]
    TargetMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("diagonal is not a union of orbits")]
    DiagonalNotSummand,
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("category axiom `{axiom}` fails at {witness:?}")]
    CategoryAxiom { axiom: &'static str, witness: Vec<usize> },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("json: {0}")]
    Json(String),
}

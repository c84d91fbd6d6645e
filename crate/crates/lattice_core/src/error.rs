use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("empty poset: a lattice needs a bottom and a top")]
    Empty,
    #[error("poset has {size} elements, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("duplicate element id {label:?} at positions {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },
    #[error("unknown element id {0:?}")]
    UnknownLabel(String),
    #[error("{axiom} fails, witness {witness:?}")]
    Axiom { axiom: &'static str, witness: Vec<String> },
    #[error("no {which} for {a:?} and {b:?}")]
    NotALattice { which: &'static str, a: String, b: String },
    #[error("lattice is not distributive, witness {0:?}")]
    NotDistributive(Vec<String>),
    #[error("element {0:?} has no complement")]
    NoComplement(String),
    #[error("element {0:?} has several complements")]
    AmbiguousComplement(String),
    #[error("elements {a:?} and {d:?} are not disjoint")]
    NotDisjoint { a: String, d: String },
    #[error("subset is not downward closed: {below:?} <= {above:?} but only the latter is included")]
    NotDownClosed { below: String, above: String },
    #[error("subset must contain the bottom element")]
    MissingBottom,
    #[error("map is not monotone: {a:?} <= {b:?} but images are unrelated")]
    NotMonotone { a: String, b: String },
    #[error("json error: {0}")]
    Json(String),
}

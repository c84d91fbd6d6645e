use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::lattice::FinLattice;

/// On-disk lattice description: element labels and cover pairs `[lower, upper]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl LatticeFile {
    /// Covers are sorted by label pair so the output is byte-stable.
    pub fn from_lattice(l: &FinLattice) -> Self {
        let elements: Vec<String> = l.poset().labels().to_vec();
        let covers: BTreeSet<[String; 2]> =
            l.poset().covers().into_iter().map(|(a, b)| [elements[a].clone(), elements[b].clone()]).collect();
        LatticeFile { elements, covers: covers.into_iter().collect() }
    }

    pub fn to_lattice(&self) -> Result<FinLattice, LatticeError> {
        let index = |s: &str| {
            self.elements.iter().position(|e| e == s).ok_or_else(|| LatticeError::UnknownLabel(s.to_string()))
        };
        let covers =
            self.covers.iter().map(|[a, b]| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>, LatticeError>>()?;
        FinLattice::from_covers(self.elements.clone(), &covers)
    }
}

pub fn lattice_from_json(text: &str) -> Result<FinLattice, LatticeError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| LatticeError::Json(e.to_string()))?;
    file.to_lattice()
}

pub fn lattice_to_json(l: &FinLattice) -> String {
    serde_json::to_string_pretty(&LatticeFile::from_lattice(l)).expect("lattice file serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_stable() {
        let l = FinLattice::powerset(3).unwrap();
        let text = lattice_to_json(&l);
        let back = lattice_from_json(&text).unwrap();
        assert_eq!(back.len(), 8);
        assert_eq!(lattice_to_json(&back), text);
    }

    #[test]
    fn unknown_label_is_an_error() {
        let text = r#"{"elements":["a","b"],"covers":[["a","c"]]}"#;
        assert_eq!(lattice_from_json(text).unwrap_err(), LatticeError::UnknownLabel("c".into()));
    }

    #[test]
    fn malformed_json_is_an_error() {
        assert!(matches!(lattice_from_json("{"), Err(LatticeError::Json(_))));
    }
}

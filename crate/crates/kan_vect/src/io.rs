use std::collections::BTreeMap;
use std::sync::Arc;

use lattice_core::{FinLattice, LatticeFile};
use serde::{Deserialize, Serialize};

use crate::diagram::PosetDiagram;
use crate::error::KanError;
use crate::linalg::Mat;

/// JSON form of a diagram over a lattice; edges are keyed `"lo->hi"` by element id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub shape: LatticeFile,
    pub dims: BTreeMap<String, usize>,
    pub edges: BTreeMap<String, Vec<Vec<String>>>,
}

impl DiagramFile {
    pub fn from_diagram(l: &FinLattice, d: &PosetDiagram) -> Self {
        let p = d.shape();
        let dims = (0..d.len()).map(|x| (p.label(x).to_string(), d.dim(x))).collect();
        let edges = p
            .covers()
            .into_iter()
            .map(|(lo, hi)| (format!("{}->{}", p.label(lo), p.label(hi)), d.map(lo, hi).to_strings()))
            .collect();
        DiagramFile { shape: LatticeFile::from_lattice(l), dims, edges }
    }

    pub fn to_diagram(&self) -> Result<(FinLattice, PosetDiagram), KanError> {
        let l = self.shape.to_lattice()?;
        let p: Arc<_> = l.poset().clone();
        let mut dims = Vec::with_capacity(p.len());
        for x in 0..p.len() {
            let d = self.dims.get(p.label(x)).ok_or_else(|| KanError::Shape(format!("no dim for {}", p.label(x))))?;
            dims.push(*d);
        }
        let mut edges = BTreeMap::new();
        for (lo, hi) in p.covers() {
            let key = format!("{}->{}", p.label(lo), p.label(hi));
            let rows = self.edges.get(&key).ok_or_else(|| KanError::Shape(format!("missing edge {key}")))?;
            let m = if dims[hi] == 0 {
                Mat::zeros(0, dims[lo])
            } else {
                Mat::from_strings(rows, dims[lo]).ok_or_else(|| KanError::Shape(format!("bad matrix on {key}")))?
            };
            edges.insert((lo, hi), m);
        }
        let d = PosetDiagram::new(p, dims, |lo, hi| edges.remove(&(lo, hi)).expect("every cover has an edge"))?;
        Ok((l, d))
    }
}

pub fn diagram_to_json(l: &FinLattice, d: &PosetDiagram) -> String {
    serde_json::to_string_pretty(&DiagramFile::from_diagram(l, d)).expect("diagram files serialize")
}

pub fn diagram_from_json(s: &str) -> Result<(FinLattice, PosetDiagram), KanError> {
    let f: DiagramFile = serde_json::from_str(s).map_err(|e| KanError::Json(e.to_string()))?;
    f.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_diagram, rng_for, SamplerConfig};

    #[test]
    fn round_trip() {
        let l = FinLattice::powerset(2).unwrap();
        let d = random_diagram(&mut rng_for(5, 0), l.poset().clone(), &SamplerConfig::default());
        let (l2, d2) = diagram_from_json(&diagram_to_json(&l, &d)).unwrap();
        assert_eq!(l2.len(), 4);
        assert_eq!(d, d2);
    }
}

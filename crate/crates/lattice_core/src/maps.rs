use std::sync::Arc;

use crate::error::LatticeError;
use crate::poset::FinPoset;

/// An order-preserving map between finite posets.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    source: Arc<FinPoset>,
    target: Arc<FinPoset>,
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Arc<FinPoset>, target: Arc<FinPoset>, map: Vec<usize>) -> Result<Self, LatticeError> {
        if map.len() != source.len() {
            return Err(LatticeError::Shape(format!("map has {} entries, source has {}", map.len(), source.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(LatticeError::Shape(format!("image {bad} outside target of size {}", target.len())));
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if source.leq(a, b) && !target.leq(map[a], map[b]) {
                    return Err(LatticeError::NotMonotone { a: source.label(a).into(), b: source.label(b).into() });
                }
            }
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn identity(p: Arc<FinPoset>) -> Self {
        let map = (0..p.len()).collect();
        MonotoneMap { source: p.clone(), target: p, map }
    }

    pub fn source(&self) -> &Arc<FinPoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPoset> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, LatticeError> {
        if self.target.len() != other.source.len() {
            return Err(LatticeError::Shape("composite of non-composable maps".into()));
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    /// Order-reflecting: `f(a) ≤ f(b)` implies `a ≤ b`. Together with monotonicity
    /// this is full faithfulness of the induced functor between posets.
    pub fn is_full(&self) -> bool {
        self.full_witness().is_none()
    }

    pub fn full_witness(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        for a in 0..n {
            for b in 0..n {
                if self.target.leq(self.map[a], self.map[b]) && !self.source.leq(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn same_values(&self, other: &MonotoneMap) -> bool {
        self.map == other.map
    }
}

/// Result of an exhaustive adjunction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisCheck {
    pub holds: bool,
    /// First pair `(x, y)` with `f(x) ≤ y` disagreeing with `x ≤ g(y)`.
    pub witness: Option<(usize, usize)>,
}

/// Checks `f ⊣ g`, i.e. `f(x) ≤ y ⟺ x ≤ g(y)` for all `x` in the source of `f`
/// and `y` in its target.
pub fn check_galois(f: &MonotoneMap, g: &MonotoneMap) -> Result<GaloisCheck, LatticeError> {
    let (p, q) = (f.source(), f.target());
    if g.source().len() != q.len() || g.target().len() != p.len() {
        return Err(LatticeError::Shape("adjunction check needs f: P -> Q and g: Q -> P".into()));
    }
    for x in 0..p.len() {
        for y in 0..q.len() {
            if q.leq(f.apply(x), y) != p.leq(x, g.apply(y)) {
                return Ok(GaloisCheck { holds: false, witness: Some((x, y)) });
            }
        }
    }
    Ok(GaloisCheck { holds: true, witness: None })
}

use std::collections::BTreeMap;
use std::sync::Arc;

use lattice_core::FinPoset;

use crate::error::KanError;
use crate::linalg::Mat;

/// A functor from a finite poset to finite-dimensional rational vector spaces.
///
/// Edge maps are supplied on covering relations; every composite `a ≤ b` is
/// derived at construction and all chains between the same endpoints must agree.
#[derive(Clone, Debug)]
pub struct PosetDiagram {
    shape: Arc<FinPoset>,
    dims: Vec<usize>,
    /// `maps[a][b]` for `a ≤ b`.
    maps: Vec<Vec<Option<Mat>>>,
}

impl PartialEq for PosetDiagram {
    fn eq(&self, other: &Self) -> bool {
        *self.shape == *other.shape && self.dims == other.dims && self.maps == other.maps
    }
}

impl PosetDiagram {
    /// Builds a diagram from cover maps; `edge(lo, hi)` must be `dims[hi] × dims[lo]`.
    pub fn new(
        shape: Arc<FinPoset>,
        dims: Vec<usize>,
        mut edge: impl FnMut(usize, usize) -> Mat,
    ) -> Result<Self, KanError> {
        let n = shape.len();
        if dims.len() != n {
            return Err(KanError::Shape(format!("{} dims for {} elements", dims.len(), n)));
        }
        let covers = shape.covers();
        let mut cover_maps: BTreeMap<(usize, usize), Mat> = BTreeMap::new();
        for &(lo, hi) in &covers {
            let m = edge(lo, hi);
            if m.rows() != dims[hi] || m.cols() != dims[lo] {
                return Err(KanError::Shape(format!(
                    "edge {}->{} is {}x{}, expected {}x{}",
                    shape.label(lo),
                    shape.label(hi),
                    m.rows(),
                    m.cols(),
                    dims[hi],
                    dims[lo]
                )));
            }
            cover_maps.insert((lo, hi), m);
        }
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            into[hi].push(lo);
        }
        let order = shape.linear_extension();
        let mut maps: Vec<Vec<Option<Mat>>> = vec![vec![None; n]; n];
        for a in 0..n {
            maps[a][a] = Some(Mat::identity(dims[a]));
            for &b in &order {
                if !shape.lt(a, b) {
                    continue;
                }
                let mut found: Option<Mat> = None;
                for &c in into[b].iter().filter(|&&c| shape.leq(a, c)) {
                    let via = cover_maps[&(c, b)].mul(maps[a][c].as_ref().expect("earlier in linear extension"));
                    match &found {
                        None => found = Some(via),
                        Some(prev) if *prev != via => {
                            return Err(KanError::Functoriality {
                                from: shape.label(a).into(),
                                to: shape.label(b).into(),
                            })
                        }
                        Some(_) => {}
                    }
                }
                maps[a][b] = found;
            }
        }
        Ok(PosetDiagram { shape, dims, maps })
    }

    /// The same space at every element with identity maps.
    pub fn constant(shape: Arc<FinPoset>, dim: usize) -> Self {
        let n = shape.len();
        Self::new(shape, vec![dim; n], |_, _| Mat::identity(dim)).expect("identities compose")
    }

    pub fn zero(shape: Arc<FinPoset>) -> Self {
        Self::constant(shape, 0)
    }

    pub fn shape(&self) -> &Arc<FinPoset> {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    #[inline]
    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The structure map `D(a) → D(b)`; panics unless `a ≤ b`.
    pub fn map(&self, a: usize, b: usize) -> &Mat {
        self.maps[a][b].as_ref().unwrap_or_else(|| panic!("no arrow from {a} to {b}"))
    }

    /// Rebuilds from cover maps after replacing some of them.
    pub fn with_edges(&self, mut edge: impl FnMut(usize, usize, &Mat) -> Mat) -> Result<Self, KanError> {
        PosetDiagram::new(self.shape.clone(), self.dims.clone(), |lo, hi| edge(lo, hi, self.map(lo, hi)))
    }

    /// Restriction to the full subposet on `members`, in the given order.
    pub fn restrict(&self, members: &[usize]) -> PosetDiagram {
        let sub = Arc::new(self.shape.full_subposet(members));
        let dims = members.iter().map(|&m| self.dims[m]).collect();
        PosetDiagram::new(sub, dims, |lo, hi| self.map(members[lo], members[hi]).clone())
            .expect("restriction of a functor is a functor")
    }

    /// Precomposition `D∘f` along a monotone map given by `images` from `shape`.
    pub fn reindex(&self, shape: Arc<FinPoset>, images: &[usize]) -> Result<PosetDiagram, KanError> {
        if images.len() != shape.len() {
            return Err(KanError::Shape("reindexing map has the wrong length".into()));
        }
        for (lo, hi) in shape.covers() {
            if !self.shape.leq(images[lo], images[hi]) {
                return Err(KanError::Shape(format!("reindexing map is not monotone at {}", shape.label(lo))));
            }
        }
        let dims = images.iter().map(|&i| self.dims[i]).collect();
        PosetDiagram::new(shape, dims, |lo, hi| self.map(images[lo], images[hi]).clone())
    }

    /// Checks that `components` form a natural transformation `self → other`.
    pub fn is_natural(&self, other: &PosetDiagram, components: &[Mat]) -> bool {
        components.len() == self.len()
            && (0..self.len()).all(|a| components[a].rows() == other.dim(a) && components[a].cols() == self.dim(a))
            && self
                .shape
                .covers()
                .into_iter()
                .all(|(lo, hi)| other.map(lo, hi).mul(&components[lo]) == components[hi].mul(self.map(lo, hi)))
    }

    /// Precomposes every map out of `source` with `twist`, an endomorphism of `D(source)`.
    /// Functoriality is preserved when `source` is minimal.
    pub fn twist_out_of(&self, source: usize, twist: &Mat) -> Result<PosetDiagram, KanError> {
        self.with_edges(|lo, _, m| if lo == source { m.mul(twist) } else { m.clone() })
    }

    /// Postcomposes every map into `target` with `twist`. Functoriality is preserved when `target` is maximal.
    pub fn twist_into(&self, target: usize, twist: &Mat) -> Result<PosetDiagram, KanError> {
        self.with_edges(|_, hi, m| if hi == target { twist.mul(m) } else { m.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::FinLattice;

    #[test]
    fn non_commuting_square_is_rejected() {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let err = PosetDiagram::new(p, vec![1; 4], |lo, hi| {
            if lo == 0b01 && hi == 0b11 {
                Mat::from_i64(1, 1, &[2])
            } else {
                Mat::identity(1)
            }
        })
        .unwrap_err();
        assert!(matches!(err, KanError::Functoriality { .. }));
    }

    #[test]
    fn composites_are_derived() {
        let c = FinLattice::chain(3).unwrap();
        let d = PosetDiagram::new(c.poset().clone(), vec![1; 3], |_, _| Mat::from_i64(1, 1, &[3])).unwrap();
        assert_eq!(d.map(0, 2), &Mat::from_i64(1, 1, &[9]));
    }
}

use std::collections::BTreeMap;

use kan_vect::Mat;
use serde::{Deserialize, Serialize};

use crate::error::HochError;

/// Lowest degree accepted from external input.
pub const MIN_DEGREE: i32 = -8;
/// Highest degree accepted from external input.
pub const MAX_DEGREE: i32 = 8;
/// Largest total dimension accepted from external input.
pub const INPUT_DIM_CAP: usize = 64;

/// A bounded chain complex of finite-dimensional rational vector spaces with
/// homological grading: `d_n: C_n → C_{n-1}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChainComplex {
    dims: BTreeMap<i32, usize>,
    /// `d_n`, stored only when both `C_n` and `C_{n-1}` are nonzero.
    d: BTreeMap<i32, Mat>,
}

impl ChainComplex {
    /// Validates shapes and `d∘d = 0`. Zero-dimensional degrees are dropped.
    pub fn new(dims: BTreeMap<i32, usize>, d: BTreeMap<i32, Mat>) -> Result<Self, HochError> {
        let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
        let dim = |n: i32| dims.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, m) in d {
            if (m.rows(), m.cols()) != (dim(n - 1), dim(n)) {
                return Err(HochError::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim(n - 1),
                    dim(n)
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                kept.insert(n, m);
            }
        }
        let c = ChainComplex { dims, d: kept };
        for (&n, m) in &c.d {
            if let Some(below) = c.d.get(&(n - 1)) {
                if !below.mul(m).is_zero() {
                    return Err(HochError::NotComplex { degree: n });
                }
            }
        }
        Ok(c)
    }

    /// Construction without validation, for callers that build `d` from a
    /// totalization known to square to zero. Checked in debug builds.
    pub(crate) fn from_parts(dims: BTreeMap<i32, usize>, d: BTreeMap<i32, Mat>) -> Self {
        if cfg!(debug_assertions) {
            Self::new(dims, d).expect("construction yields a chain complex")
        } else {
            let dims: BTreeMap<i32, usize> = dims.into_iter().filter(|&(_, n)| n > 0).collect();
            let d = d.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect();
            ChainComplex { dims, d }
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `Q^n` in a single degree.
    pub fn concentrated(degree: i32, n: usize) -> Self {
        Self::from_parts(BTreeMap::from([(degree, n)]), BTreeMap::new())
    }

    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    /// `d_n: C_n → C_{n-1}`, as an explicit (possibly empty or zero) matrix.
    pub fn d(&self, n: i32) -> Mat {
        self.d.get(&n).cloned().unwrap_or_else(|| Mat::zeros(self.dim(n - 1), self.dim(n)))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Smallest and largest degrees carrying a nonzero space.
    pub fn support(&self) -> Option<(i32, i32)> {
        Some((*self.dims.keys().next()?, *self.dims.keys().next_back()?))
    }

    /// Degrees where the complex is nonzero.
    pub fn degrees(&self) -> Vec<i32> {
        self.dims.keys().copied().collect()
    }

    /// Rejects complexes outside the input bounds.
    pub fn check_bounds(&self) -> Result<(), HochError> {
        if let Some((lo, hi)) = self.support() {
            for degree in [lo, hi] {
                if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
                    return Err(HochError::Unbounded { degree, lo: MIN_DEGREE, hi: MAX_DEGREE });
                }
            }
        }
        if self.total_dim() > INPUT_DIM_CAP {
            return Err(HochError::TooLarge { dim: self.total_dim(), cap: INPUT_DIM_CAP });
        }
        Ok(())
    }

    fn rank_d(&self, n: i32) -> usize {
        self.d.get(&n).map_or(0, Mat::rank)
    }

    /// Betti numbers in every degree with nonzero homology.
    pub fn homology(&self) -> BTreeMap<i32, usize> {
        self.dims
            .iter()
            .map(|(&n, &dim)| (n, dim - self.rank_d(n) - self.rank_d(n + 1)))
            .filter(|&(_, b)| b > 0)
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_empty()
    }

    /// `(ΣC)_n = C_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Self {
        ChainComplex {
            dims: self.dims.iter().map(|(&n, &m)| (n + k, m)).collect(),
            d: self.d.iter().map(|(&n, m)| (n + k, if k % 2 != 0 { m.neg() } else { m.clone() })).collect(),
        }
    }

    /// Linear dual: `(C^∨)_n = (C_{-n})^*` with `d^∨_n = (d_{1-n})^T`.
    pub fn dual(&self) -> Self {
        ChainComplex {
            dims: self.dims.iter().map(|(&n, &m)| (-n, m)).collect(),
            d: self.d.iter().map(|(&n, m)| (1 - n, m.transpose())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Self {
        let mut dims = self.dims.clone();
        for (&n, &m) in &other.dims {
            *dims.entry(n).or_insert(0) += m;
        }
        let degrees: Vec<i32> = dims.keys().copied().collect();
        let d = degrees.iter().map(|&n| (n, Mat::block_diag(&[&self.d(n), &other.d(n)]))).collect();
        ChainComplex::from_parts(dims, d)
    }

    /// Acyclic complex `Q^n → Q^n` (identity) in degrees `k+1 → k`.
    pub fn contractible(k: i32, n: usize) -> Self {
        let dims = BTreeMap::from([(k, n), (k + 1, n)]);
        ChainComplex::from_parts(dims, BTreeMap::from([(k + 1, Mat::identity(n))]))
    }
}

/// A degreewise linear map between two complexes. Components are stored only in
/// degrees where both source and target are nonzero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChainMap {
    comps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap { comps: c.dims.iter().map(|(&n, &m)| (n, Mat::identity(m))).collect() }
    }

    /// Builds the map from `f(n)` for every degree where both ends are nonzero.
    pub fn from_fn(src: &ChainComplex, tgt: &ChainComplex, mut f: impl FnMut(i32) -> Mat) -> Self {
        let mut comps = BTreeMap::new();
        for &n in src.dims.keys() {
            if tgt.dim(n) > 0 {
                let m = f(n);
                debug_assert_eq!((m.rows(), m.cols()), (tgt.dim(n), src.dim(n)));
                comps.insert(n, m);
            }
        }
        ChainMap { comps }
    }

    /// Validates shapes and compatibility with the differentials.
    pub fn new(src: &ChainComplex, tgt: &ChainComplex, comps: BTreeMap<i32, Mat>) -> Result<Self, HochError> {
        for (&n, m) in &comps {
            if (m.rows(), m.cols()) != (tgt.dim(n), src.dim(n)) {
                return Err(HochError::Shape(format!("component in degree {n} has the wrong shape")));
            }
        }
        let f = ChainMap { comps: comps.into_iter().filter(|(_, m)| m.rows() > 0 && m.cols() > 0).collect() };
        if let Some(degree) = f.failure_degree(src, tgt) {
            return Err(HochError::NotChainMap { degree });
        }
        Ok(f)
    }

    /// Component in degree `n` as an explicit matrix.
    pub fn at(&self, n: i32, src: &ChainComplex, tgt: &ChainComplex) -> Mat {
        self.comps.get(&n).cloned().unwrap_or_else(|| Mat::zeros(tgt.dim(n), src.dim(n)))
    }

    pub fn comps(&self) -> &BTreeMap<i32, Mat> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mat::is_zero)
    }

    /// First degree where `d f ≠ f d`, if any.
    pub fn failure_degree(&self, src: &ChainComplex, tgt: &ChainComplex) -> Option<i32> {
        let mut degrees: Vec<i32> = src.dims.keys().copied().collect();
        degrees.sort_unstable();
        degrees.into_iter().find(|&n| tgt.d(n).mul(&self.at(n, src, tgt)) != self.at(n - 1, src, tgt).mul(&src.d(n)))
    }

    pub fn is_chain_map(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        self.failure_degree(src, tgt).is_none()
    }

    /// `other ∘ self` for `self: A → B` and `other: B → C`.
    pub fn then(&self, other: &ChainMap, a: &ChainComplex, b: &ChainComplex, c: &ChainComplex) -> ChainMap {
        ChainMap::from_fn(a, c, |n| other.at(n, b, c).mul(&self.at(n, a, b)))
    }

    pub fn add(&self, other: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> ChainMap {
        ChainMap::from_fn(src, tgt, |n| self.at(n, src, tgt).add(&other.at(n, src, tgt)))
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(&n, m)| (n, m.neg())).collect() }
    }

    /// `f^∨: tgt^∨ → src^∨` with components `(f_{-n})^T`.
    pub fn dual(&self) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(&n, m)| (-n, m.transpose())).collect() }
    }

    /// The same components viewed between the `k`-fold shifts.
    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap { comps: self.comps.iter().map(|(&n, m)| (n + k, m.clone())).collect() }
    }

    pub fn direct_sum(
        &self,
        other: &ChainMap,
        srcs: (&ChainComplex, &ChainComplex),
        tgts: (&ChainComplex, &ChainComplex),
    ) -> ChainMap {
        let src = srcs.0.direct_sum(srcs.1);
        let tgt = tgts.0.direct_sum(tgts.1);
        ChainMap::from_fn(&src, &tgt, |n| Mat::block_diag(&[&self.at(n, srcs.0, tgts.0), &other.at(n, srcs.1, tgts.1)]))
    }
}

/// `Cone(f)_n = X_{n-1} ⊕ Y_n` with `d(x, y) = (-dx, f x + dy)`.
/// A seeded random bounded complex of total dimension at most `max_total_dim`,
/// built as a direct sum of two-term complexes with random differentials in
/// degrees between −3 and 3.
pub fn random_complex(rng: &mut impl rand::Rng, max_total_dim: usize) -> ChainComplex {
    let mut c = ChainComplex::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(-3..=2);
        let (top, bottom) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        if c.total_dim() + top + bottom > max_total_dim {
            continue;
        }
        let d = kan_vect::random::random_matrix(rng, bottom, top, 2);
        let dims = BTreeMap::from([(k + 1, top), (k, bottom)]);
        let piece = ChainComplex::from_parts(dims, BTreeMap::from([(k + 1, d)]));
        c = c.direct_sum(&piece);
    }
    c
}

pub fn mapping_cone(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> ChainComplex {
    let mut dims = BTreeMap::new();
    for (&n, &m) in &src.dims {
        *dims.entry(n + 1).or_insert(0) += m;
    }
    for (&n, &m) in &tgt.dims {
        *dims.entry(n).or_insert(0) += m;
    }
    let degrees: Vec<i32> = dims.keys().copied().collect();
    let d = degrees
        .iter()
        .map(|&n| {
            let (x_in, y_in) = (src.dim(n - 1), tgt.dim(n));
            let (x_out, y_out) = (src.dim(n - 2), tgt.dim(n - 1));
            let mut m = Mat::zeros(x_out + y_out, x_in + y_in);
            m.put(0, 0, &src.d(n - 1).neg());
            m.put(x_out, 0, &f.at(n - 1, src, tgt));
            m.put(x_out, x_in, &tgt.d(n));
            (n, m)
        })
        .collect();
    ChainComplex::from_parts(dims, d)
}

/// Outcome of a quasi-isomorphism test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QiVerdict {
    pub quasi_iso: bool,
    pub source_homology: BTreeMap<i32, usize>,
    pub target_homology: BTreeMap<i32, usize>,
    /// Homology of the mapping cone; empty exactly for a quasi-isomorphism.
    pub cone_homology: BTreeMap<i32, usize>,
}

/// Exact quasi-isomorphism test: the mapping cone is acyclic, equivalently the
/// induced map on homology is invertible in every degree.
pub fn quasi_iso(f: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> QiVerdict {
    let cone_homology = mapping_cone(f, src, tgt).homology();
    QiVerdict {
        quasi_iso: cone_homology.is_empty(),
        source_homology: src.homology(),
        target_homology: tgt.homology(),
        cone_homology,
    }
}

/// On-disk form: `{"range":[lo,hi], "dims":{deg:n}, "d":{deg: matrix}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub range: [i32; 2],
    pub dims: BTreeMap<i32, usize>,
    pub d: BTreeMap<i32, Vec<Vec<String>>>,
}

impl ComplexFile {
    pub fn from_complex(c: &ChainComplex) -> Self {
        let (lo, hi) = c.support().unwrap_or((0, 0));
        ComplexFile {
            range: [lo, hi],
            dims: c.dims.clone(),
            d: c.d.iter().map(|(&n, m)| (n, m.to_strings())).collect(),
        }
    }

    /// Parses and validates, including the input degree and size bounds.
    pub fn to_complex(&self) -> Result<ChainComplex, HochError> {
        let [lo, hi] = self.range;
        if let Some(&n) = self.dims.keys().find(|&&n| n < lo || n > hi) {
            return Err(HochError::Json(format!("degree {n} outside the declared range")));
        }
        let dim = |n: i32| self.dims.get(&n).copied().unwrap_or(0);
        let mut d = BTreeMap::new();
        for (&n, rows) in &self.d {
            let m = Mat::from_strings(rows, dim(n))
                .filter(|m| m.rows() == dim(n - 1))
                .ok_or_else(|| HochError::Json(format!("malformed d_{n}")))?;
            d.insert(n, m);
        }
        let c = ChainComplex::new(self.dims.clone(), d)?;
        c.check_bounds()?;
        Ok(c)
    }
}

pub fn complex_to_json(c: &ChainComplex) -> String {
    serde_json::to_string_pretty(&ComplexFile::from_complex(c)).expect("complex serializes")
}

pub fn complex_from_json(s: &str) -> Result<ChainComplex, HochError> {
    let file: ComplexFile = serde_json::from_str(s).map_err(|e| HochError::Json(e.to_string()))?;
    file.to_complex()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(a: i64) -> ChainComplex {
        ChainComplex::new(BTreeMap::from([(0, 1), (1, 1)]), BTreeMap::from([(1, Mat::from_i64(1, 1, &[a]))])).unwrap()
    }

    #[test]
    fn homology_of_small_complexes() {
        assert!(two_term(2).is_acyclic());
        assert_eq!(two_term(0).homology(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(ChainComplex::concentrated(3, 2).shift(-1).homology(), BTreeMap::from([(2, 2)]));
    }

    #[test]
    fn non_complex_is_rejected() {
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let d = BTreeMap::from([(1, Mat::from_i64(1, 1, &[1])), (2, Mat::from_i64(1, 1, &[1]))]);
        assert_eq!(ChainComplex::new(dims, d), Err(HochError::NotComplex { degree: 2 }));
    }

    #[test]
    fn cone_detects_quasi_isomorphisms() {
        let c = ChainComplex::concentrated(0, 1);
        let big = c.direct_sum(&ChainComplex::contractible(0, 2));
        let incl =
            ChainMap::from_fn(&c, &big, |n| if n == 0 { Mat::from_i64(3, 1, &[1, 0, 0]) } else { Mat::zeros(0, 0) });
        assert!(incl.is_chain_map(&c, &big));
        assert!(quasi_iso(&incl, &c, &big).quasi_iso);
        assert!(!quasi_iso(&ChainMap::zero(), &c, &big).quasi_iso);
    }

    #[test]
    fn dual_is_an_involution_and_preserves_betti_numbers() {
        let c = two_term(0).direct_sum(&two_term(3).shift(2));
        assert_eq!(c.dual().dual(), c);
        let flipped: BTreeMap<i32, usize> = c.homology().into_iter().map(|(n, b)| (-n, b)).collect();
        assert_eq!(c.dual().homology(), flipped);
    }

    #[test]
    fn json_round_trip_and_bounds() {
        let c = two_term(5).shift(-3);
        assert_eq!(complex_from_json(&complex_to_json(&c)).unwrap(), c);
        let far = ChainComplex::concentrated(9, 1);
        assert!(matches!(complex_from_json(&complex_to_json(&far)), Err(HochError::Unbounded { degree: 9, .. })));
    }
}

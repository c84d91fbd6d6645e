use serde::{Deserialize, Serialize};

use crate::diagram::PosetDiagram;
use crate::error::KanError;
use num::Zero;

use crate::linalg::{Mat, Q};

/// An endofunctor of finite-dimensional rational vector spaces, given on dimensions and matrices.
pub trait VectFunctor: Send + Sync {
    fn obj(&self, dim: usize) -> usize;
    fn map(&self, f: &Mat) -> Mat;
    fn describe(&self) -> String;
}

/// The functors used as test inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorSpec {
    /// Constant at a space of the given dimension.
    Constant(usize),
    Identity,
    DirectSumPower(usize),
    TensorPower(usize),
    SymmetricSquare,
    /// Applied left to right: the first entry acts first.
    Composite(Vec<FunctorSpec>),
}

fn sym2_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Index of the monomial `e_i e_j` (`i ≤ j`) in the lexicographic basis of `Sym² Q^n`.
fn sym2_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * i.saturating_sub(1) / 2 + j - i
}

fn sym2_map(f: &Mat) -> Mat {
    let (m, n) = (f.rows(), f.cols());
    let mut out = Mat::zeros(sym2_dim(m), sym2_dim(n));
    for i in 0..n {
        for j in i..n {
            let col = sym2_index(n, i, j);
            for k in 0..m {
                for l in k..m {
                    let mut v = f.get(k, i) * f.get(l, j);
                    if k != l {
                        v += f.get(l, i) * f.get(k, j);
                    }
                    if !v.is_zero() {
                        out.set(sym2_index(m, k, l), col, v);
                    }
                }
            }
        }
    }
    out
}

impl FunctorSpec {
    /// Whether `F(0) = 0`.
    pub fn is_reduced(&self) -> bool {
        self.obj(0) == 0
    }
}

impl VectFunctor for FunctorSpec {
    fn obj(&self, dim: usize) -> usize {
        match self {
            FunctorSpec::Constant(v) => *v,
            FunctorSpec::Identity => dim,
            FunctorSpec::DirectSumPower(k) => k * dim,
            FunctorSpec::TensorPower(k) => dim.pow(*k as u32),
            FunctorSpec::SymmetricSquare => sym2_dim(dim),
            FunctorSpec::Composite(list) => list.iter().fold(dim, |d, g| g.obj(d)),
        }
    }

    fn map(&self, f: &Mat) -> Mat {
        match self {
            FunctorSpec::Constant(v) => Mat::identity(*v),
            FunctorSpec::Identity => f.clone(),
            FunctorSpec::DirectSumPower(k) => Mat::block_diag(&vec![f; *k]),
            FunctorSpec::TensorPower(k) => (0..*k).fold(Mat::identity(1), |acc, _| acc.kron(f)),
            FunctorSpec::SymmetricSquare => sym2_map(f),
            FunctorSpec::Composite(list) => list.iter().fold(f.clone(), |m, g| g.map(&m)),
        }
    }

    fn describe(&self) -> String {
        match self {
            FunctorSpec::Constant(v) => format!("const({v})"),
            FunctorSpec::Identity => "id".into(),
            FunctorSpec::DirectSumPower(k) => format!("sum^{k}"),
            FunctorSpec::TensorPower(k) => format!("tensor^{k}"),
            FunctorSpec::SymmetricSquare => "sym2".into(),
            FunctorSpec::Composite(list) => list.iter().map(|g| g.describe()).collect::<Vec<_>>().join(" then "),
        }
    }
}

/// Applies a functor to every value and edge of a diagram.
pub fn apply_functor(f: &dyn VectFunctor, d: &PosetDiagram) -> Result<PosetDiagram, KanError> {
    let dims = d.dims().iter().map(|&n| f.obj(n)).collect();
    PosetDiagram::new(d.shape().clone(), dims, |lo, hi| f.map(d.map(lo, hi)))
}

/// Checks `F(g∘f) = F(g)∘F(f)` and `F(id) = id` for the given composable pair.
pub fn respects_composition(f: &dyn VectFunctor, first: &Mat, second: &Mat) -> bool {
    let n = first.cols();
    let ids = f.map(&Mat::identity(n)) == Mat::identity(f.obj(n));
    ids && f.map(&second.mul(first)) == f.map(second).mul(&f.map(first))
}

/// Scalar helper for tests and samplers.
pub fn scalar_matrix(n: usize, s: &Q) -> Mat {
    Mat::identity(n).scale(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn sym2_basis_indexing() {
        let n = 3;
        let idx: Vec<usize> = (0..n).flat_map(|i| (i..n).map(move |j| sym2_index(n, i, j))).collect();
        assert_eq!(idx, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn sym2_of_scalar_is_square() {
        let m = FunctorSpec::SymmetricSquare.map(&scalar_matrix(2, &q(3)));
        assert_eq!(m, scalar_matrix(3, &q(9)));
    }

    #[test]
    fn composite_dims() {
        let f = FunctorSpec::Composite(vec![FunctorSpec::DirectSumPower(2), FunctorSpec::TensorPower(2)]);
        assert_eq!(f.obj(3), 36);
        assert!(f.is_reduced());
        assert!(!FunctorSpec::Constant(1).is_reduced());
    }

    #[test]
    fn spec_json_shape() {
        let f = FunctorSpec::Composite(vec![FunctorSpec::Identity, FunctorSpec::TensorPower(2)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"composite":["identity",{"tensor_power":2}]}"#);
    }
}

use lattice_core::FinLattice;
use serde::Serialize;

use crate::diagram::PosetDiagram;
use crate::functor::VectFunctor;
use crate::kan::{is_cartesian, is_cocartesian};
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiadditiveReport {
    pub functor: String,
    /// The square `(X⊕Y; X, Y; 0)` of projections is a pushout.
    pub pushout: bool,
    pub pullback: bool,
    /// `F(X⊕Y) → F(X)⊕F(Y)` is invertible.
    pub comparison_invertible: bool,
    pub source_dim: usize,
    pub product_dim: usize,
}

/// Projections out of a direct sum arranged on the square, with zero at the top.
pub fn biproduct_square(x: usize, y: usize) -> PosetDiagram {
    let sq = FinLattice::powerset(2).expect("square");
    let dims = vec![x + y, x, y, 0];
    PosetDiagram::new(sq.poset().clone(), dims.clone(), |lo, hi| match (lo, hi) {
        (0, 1) => Mat::hstack(&[&Mat::identity(x), &Mat::zeros(x, y)], x),
        (0, 2) => Mat::hstack(&[&Mat::zeros(y, x), &Mat::identity(y)], y),
        _ => Mat::zeros(0, dims[lo]),
    })
    .expect("projections to zero commute")
}

pub fn semiadditive_square_check(f: &dyn VectFunctor, x: usize, y: usize) -> SemiadditiveReport {
    let sq = biproduct_square(x, y);
    let pushout = is_cocartesian(&sq, &[true, true, true, false]).holds;
    let pullback = is_cartesian(&sq).holds;
    let fx = f.map(sq.map(0, 1));
    let fy = f.map(sq.map(0, 2));
    let comparison = Mat::vstack(&[&fx, &fy], f.obj(x + y));
    SemiadditiveReport {
        functor: f.describe(),
        pushout,
        pullback,
        comparison_invertible: comparison.is_invertible(),
        source_dim: f.obj(x + y),
        product_dim: f.obj(x) + f.obj(y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::FunctorSpec;

    #[test]
    fn identity_is_additive() {
        let r = semiadditive_square_check(&FunctorSpec::Identity, 1, 1);
        assert!(r.pushout && r.pullback && r.comparison_invertible);
    }

    #[test]
    fn constant_is_not() {
        let r = semiadditive_square_check(&FunctorSpec::Constant(1), 2, 3);
        assert!(r.pushout);
        assert!(!r.comparison_invertible);
        assert_eq!((r.source_dim, r.product_dim), (1, 2));
    }

    #[test]
    fn zero_summand() {
        let r = semiadditive_square_check(&FunctorSpec::TensorPower(2), 0, 2);
        assert!(r.comparison_invertible);
    }
}

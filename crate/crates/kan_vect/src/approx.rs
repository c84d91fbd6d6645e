use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use lattice_core::{ExcisableStructure, FinLattice, FinPoset};
use serde::Serialize;

use crate::diagram::PosetDiagram;
use crate::error::KanError;
use crate::functor::{apply_functor, VectFunctor};
use crate::kan::{is_cartesian, is_cocartesian, lkan, LeftKan, UniversalityCheck};
use crate::limits::{colim_over, lim_over, Limit};
use crate::linalg::Mat;

/// A finite lattice together with a downward-closed subset containing the bottom.
#[derive(Clone, Debug)]
pub struct Excision {
    pub shape: Arc<FinPoset>,
    pub sigma: Vec<bool>,
    /// Ambient indices of the subset, ascending.
    pub members: Vec<usize>,
    pub bottom: usize,
    /// All elements except the bottom.
    pub punctured: Vec<usize>,
    join: Vec<Vec<usize>>,
}

impl Excision {
    pub fn new(shape: Arc<FinPoset>, sigma: Vec<bool>) -> Result<Self, KanError> {
        let n = shape.len();
        if sigma.len() != n {
            return Err(KanError::Shape("excisable mask has the wrong length".into()));
        }
        let bottom = shape.bottom().ok_or_else(|| KanError::Shape("shape has no bottom".into()))?;
        if !sigma[bottom] {
            return Err(KanError::Lattice(lattice_core::LatticeError::MissingBottom));
        }
        if !shape.is_down_closed(&sigma) {
            return Err(KanError::NotClosed("downward"));
        }
        let mut join = vec![vec![0; n]; n];
        for (a, row) in join.iter_mut().enumerate() {
            for (b, j) in row.iter_mut().enumerate() {
                *j = shape.lub(a, b).ok_or_else(|| KanError::Shape("shape is not a lattice".into()))?;
            }
        }
        let members = (0..n).filter(|&x| sigma[x]).collect();
        let punctured = (0..n).filter(|&x| x != bottom).collect();
        Ok(Excision { shape, sigma, members, bottom, punctured, join })
    }

    pub fn from_structure(l: &FinLattice, s: &ExcisableStructure) -> Result<Self, KanError> {
        Self::new(l.poset().clone(), s.mask().to_vec())
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    /// The subposet carrying excisable data.
    pub fn sigma_shape(&self) -> Arc<FinPoset> {
        Arc::new(self.shape.full_subposet(&self.members))
    }

    /// Left Kan extension of data given on the subset.
    pub fn extend(&self, data: &PosetDiagram) -> Result<LeftKan, KanError> {
        lkan(self.shape.clone(), &self.members, data)
    }

    /// The diagram `y ↦ D(x∨y)`.
    pub fn shift(&self, d: &PosetDiagram, x: usize) -> PosetDiagram {
        let images: Vec<usize> = (0..self.shape.len()).map(|y| self.join(x, y)).collect();
        d.reindex(self.shape.clone(), &images).expect("joining with a fixed element is monotone")
    }
}

/// `C_σ(X)`: the space at the bottom, zero elsewhere on the subset, left Kan extended.
pub fn c_sigma(ex: &Excision, dim: usize) -> LeftKan {
    let k = ex.members.len();
    let b = ex.members.iter().position(|&m| m == ex.bottom).expect("bottom is a member");
    let dims = (0..k).map(|i| if i == b { dim } else { 0 }).collect();
    let data = PosetDiagram::new(ex.sigma_shape(), dims, |lo, hi| {
        Mat::zeros(if hi == b { dim } else { 0 }, if lo == b { dim } else { 0 })
    })
    .expect("zero maps compose");
    ex.extend(&data).expect("the subset is downward closed")
}

/// Components of `C_σ(f)` for a linear map `f`.
pub fn c_sigma_map(ex: &Excision, source: &LeftKan, target: &LeftKan, f: &Mat) -> Vec<Mat> {
    let comps: Vec<Mat> = ex
        .members
        .iter()
        .enumerate()
        .map(|(i, &m)| if m == ex.bottom { f.clone() } else { Mat::zeros(target.source.dim(i), source.source.dim(i)) })
        .collect();
    source.induced(target, &comps)
}

/// Everything needed to evaluate `T_σF` on one dimension.
#[derive(Clone, Debug)]
pub struct TStage {
    pub cone: LeftKan,
    /// `F` applied to the cone diagram.
    pub applied: PosetDiagram,
    /// Limit of `applied` over the punctured shape.
    pub lim: Limit,
    /// `θ: F(X) → T_σF(X)`.
    pub theta: Mat,
}

pub fn t_stage(f: &dyn VectFunctor, ex: &Excision, dim: usize) -> TStage {
    let cone = c_sigma(ex, dim);
    let applied = apply_functor(f, &cone.diagram).expect("functors preserve functoriality");
    let lim = lim_over(&applied, &ex.punctured);
    let legs: Vec<Mat> = lim.minima.iter().map(|&m| applied.map(ex.bottom, m).clone()).collect();
    let theta = lim.factor(&legs, applied.dim(ex.bottom));
    TStage { cone, applied, lim, theta }
}

/// `T_σF` as a functor in its own right, memoised per dimension.
pub struct TSigma {
    inner: Arc<dyn VectFunctor>,
    ex: Arc<Excision>,
    cache: Mutex<HashMap<usize, Arc<TStage>>>,
    /// Images of matrices already mapped; stacked stages otherwise recompute them exponentially often.
    maps: Mutex<HashMap<Mat, Mat>>,
}

impl TSigma {
    pub fn new(inner: Arc<dyn VectFunctor>, ex: Arc<Excision>) -> Self {
        TSigma { inner, ex, cache: Mutex::new(HashMap::new()), maps: Mutex::new(HashMap::new()) }
    }

    pub fn stage(&self, dim: usize) -> Arc<TStage> {
        if let Some(s) = self.cache.lock().expect("cache lock").get(&dim) {
            return s.clone();
        }
        let s = Arc::new(t_stage(self.inner.as_ref(), &self.ex, dim));
        self.cache.lock().expect("cache lock").insert(dim, s.clone());
        s
    }

    /// `θ_F` at a space of dimension `dim`.
    pub fn theta(&self, dim: usize) -> Mat {
        self.stage(dim).theta.clone()
    }
}

impl VectFunctor for TSigma {
    fn obj(&self, dim: usize) -> usize {
        self.stage(dim).lim.dim()
    }

    fn map(&self, f: &Mat) -> Mat {
        if let Some(m) = self.maps.lock().expect("map cache lock").get(f) {
            return m.clone();
        }
        let src = self.stage(f.cols());
        let tgt = self.stage(f.rows());
        let comps = c_sigma_map(&self.ex, &src.cone, &tgt.cone, f);
        let applied: Vec<Mat> = comps.iter().map(|c| self.inner.map(c)).collect();
        let image = tgt.lim.induced(&src.lim, &src.applied, &applied);
        self.maps.lock().expect("map cache lock").insert(f.clone(), image.clone());
        image
    }

    fn describe(&self) -> String {
        format!("T({})", self.inner.describe())
    }
}

pub fn t_sigma(f: &dyn VectFunctor, ex: &Excision, dim: usize) -> usize {
    t_stage(f, ex, dim).lim.dim()
}

pub fn theta(f: &dyn VectFunctor, ex: &Excision, dim: usize) -> Mat {
    t_stage(f, ex, dim).theta
}

/// The functors `F, T_σF, T_σ²F, …` up to a stage cap.
pub struct Tower {
    pub stages: Vec<Arc<dyn VectFunctor>>,
    ts: Vec<Arc<TSigma>>,
}

impl Tower {
    pub fn new(f: Arc<dyn VectFunctor>, ex: Arc<Excision>, max_stage: usize) -> Self {
        let mut stages = vec![f];
        let mut ts = Vec::new();
        for _ in 0..max_stage {
            let t = Arc::new(TSigma::new(stages.last().unwrap().clone(), ex.clone()));
            ts.push(t.clone());
            stages.push(t);
        }
        Tower { stages, ts }
    }

    /// The connecting map `T^kF(X) → T^{k+1}F(X)`, which is `θ` for `T^kF`.
    pub fn connecting(&self, k: usize, dim: usize) -> Mat {
        self.ts[k].theta(dim)
    }

    pub fn max_stage(&self) -> usize {
        self.ts.len()
    }
}

/// Where the tower became constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub stage: usize,
    pub dim: usize,
    /// `dim T^kF(X)` for `k = 0..=max_stage`.
    pub trajectory: Vec<usize>,
    pub connecting_ranks: Vec<usize>,
}

/// Iterates `T_σ` and reports the first stage after which every connecting map is invertible.
pub fn p_sigma(
    f: Arc<dyn VectFunctor>,
    ex: Arc<Excision>,
    dim: usize,
    max_stage: usize,
) -> Result<Stabilization, KanError> {
    if max_stage == 0 {
        return Err(KanError::Shape("the stage cap must be at least 1".into()));
    }
    let tower = Tower::new(f, ex, max_stage);
    let trajectory: Vec<usize> = tower.stages.iter().map(|s| s.obj(dim)).collect();
    let maps: Vec<Mat> = (0..max_stage).map(|k| tower.connecting(k, dim)).collect();
    let connecting_ranks = maps.iter().map(Mat::rank).collect();
    let mut stage = max_stage;
    while stage > 0 && maps[stage - 1].is_invertible() {
        stage -= 1;
    }
    if stage == max_stage {
        return Err(KanError::NotStabilized { trajectory });
    }
    Ok(Stabilization { stage, dim: trajectory[stage], trajectory, connecting_ranks })
}

/// The factorisation of `θ_F` at a cocartesian diagram through a cartesian one.
#[derive(Clone, Debug)]
pub struct RezkFactorization {
    pub middle: PosetDiagram,
    /// `F(D(x)) → E(x)`.
    pub first: Vec<Mat>,
    /// `E(x) → T_σF(D(x))`.
    pub second: Vec<Mat>,
    pub theta: Vec<Mat>,
    pub middle_cartesian: UniversalityCheck,
    pub composite_is_theta: bool,
    pub first_natural: bool,
}

impl RezkFactorization {
    pub fn holds(&self) -> bool {
        self.middle_cartesian.holds && self.composite_is_theta && self.first_natural
    }
}

/// Builds `E(x) = lim_{y ≠ ⊥} F(D(x∨y))` and the two maps whose composite is `θ_F` at `D(x)`.
pub fn rezk_factorization(f: &dyn VectFunctor, ex: &Excision, d: &PosetDiagram) -> Result<RezkFactorization, KanError> {
    let n = ex.shape.len();
    if let Some(w) = is_cocartesian(d, &ex.sigma).witness {
        return Err(KanError::NotCocartesian { element: w.element });
    }
    let mut applied_shifts = Vec::with_capacity(n);
    let mut lims = Vec::with_capacity(n);
    let mut first = Vec::with_capacity(n);
    let mut second = Vec::with_capacity(n);
    let mut thetas = Vec::with_capacity(n);
    for x in 0..n {
        let shifted = ex.shift(d, x);
        if let Some(w) = is_cocartesian(&shifted, &ex.sigma).witness {
            return Err(KanError::NotCocartesian { element: w.element });
        }
        let g = apply_functor(f, &shifted)?;
        let lim = lim_over(&g, &ex.punctured);
        let legs: Vec<Mat> = lim.minima.iter().map(|&m| g.map(ex.bottom, m).clone()).collect();
        first.push(lim.factor(&legs, g.dim(ex.bottom)));

        // Comparison of the shifted diagram with the cone on D(x), through pointwise colimits.
        let stage = t_stage(f, ex, d.dim(x));
        let cone = &stage.cone.diagram;
        let on_sigma: Vec<Mat> = (0..n)
            .map(|m| if m == ex.bottom { Mat::identity(d.dim(x)) } else { Mat::zeros(cone.dim(m), shifted.dim(m)) })
            .collect();
        let eta: Vec<Mat> = (0..n)
            .map(|y| {
                let below: Vec<usize> = ex.members.iter().copied().filter(|&q| ex.shape.leq(q, y)).collect();
                let src = colim_over(&shifted, &below);
                let tgt = colim_over(cone, &below);
                let counit = |c: &crate::limits::Colimit, dgm: &PosetDiagram| {
                    let legs: Vec<Mat> = c.maxima.iter().map(|&m| dgm.map(m, y).clone()).collect();
                    c.factor(&legs, dgm.dim(y))
                };
                let back = counit(&src, &shifted).inverse().expect("shifted diagram is cocartesian");
                counit(&tgt, cone).mul(&src.induced(&tgt, cone, &on_sigma)).mul(&back)
            })
            .collect();
        let f_eta: Vec<Mat> = eta.iter().map(|e| f.map(e)).collect();
        second.push(stage.lim.induced(&lim, &g, &f_eta));
        thetas.push(stage.theta);
        applied_shifts.push(g);
        lims.push(lim);
    }
    let dims = lims.iter().map(Limit::dim).collect();
    let middle = PosetDiagram::new(ex.shape.clone(), dims, |lo, hi| {
        let comps: Vec<Mat> = (0..n).map(|y| f.map(d.map(ex.join(lo, y), ex.join(hi, y)))).collect();
        lims[hi].induced(&lims[lo], &applied_shifts[lo], &comps)
    })?;
    let composite_is_theta = (0..n).all(|x| second[x].mul(&first[x]) == thetas[x]);
    let fd = apply_functor(f, d)?;
    let first_natural = fd.is_natural(&middle, &first);
    let middle_cartesian = is_cartesian(&middle);
    Ok(RezkFactorization { middle, first, second, theta: thetas, middle_cartesian, composite_is_theta, first_natural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::FunctorSpec;

    fn square_star() -> Excision {
        let l = FinLattice::powerset(2).unwrap();
        Excision::from_structure(&l, &ExcisableStructure::singletons(&l)).unwrap()
    }

    #[test]
    fn cone_on_square_star() {
        let ex = square_star();
        assert_eq!(c_sigma(&ex, 1).diagram.dims(), &[1, 0, 0, 0]);
        assert_eq!(c_sigma(&ex, 0).diagram.dims(), &[0, 0, 0, 0]);
    }

    #[test]
    fn constant_functor_theta_is_identity() {
        let ex = square_star();
        let th = theta(&FunctorSpec::Constant(1), &ex, 3);
        assert!(th.is_identity());
    }

    #[test]
    fn identity_tower_stabilizes_at_one() {
        let ex = Arc::new(square_star());
        let s = p_sigma(Arc::new(FunctorSpec::Identity), ex, 2, 4).unwrap();
        assert_eq!((s.stage, s.dim), (1, 0));
    }

    #[test]
    fn interval_identity() {
        let l = FinLattice::chain(2).unwrap();
        let ex = Excision::from_structure(&l, &ExcisableStructure::bottom_only(&l)).unwrap();
        assert!(theta(&FunctorSpec::Identity, &ex, 2).is_identity());
    }
}

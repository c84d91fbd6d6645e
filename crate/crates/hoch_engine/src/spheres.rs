//! Parametrised spheres `S^w = Σ^w S^0` and their dimension calculus.

use std::collections::BTreeMap;
use std::sync::Arc;

use orbital_base::{GMap, OrbitCat};
use param_cubes::coproduct_map;
use serde::Serialize;

use crate::coefficient::{CoefficientSystem, SliceContext};
use crate::error::HochError;
use crate::suspension::{suspension_values, CubeContext};

/// Fibrewise sphere dimensions of `S^w`, one per level of the slice over the target of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereDims {
    pub levels: Vec<String>,
    pub dims: Vec<i32>,
}

impl SphereDims {
    pub fn get(&self, level: &str) -> Option<i32> {
        self.levels.iter().position(|l| l == level).map(|i| self.dims[i])
    }

    pub fn as_map(&self) -> BTreeMap<String, i32> {
        self.levels.iter().cloned().zip(self.dims.iter().copied()).collect()
    }
}

fn cube_context(orbits: &Arc<OrbitCat>, w: &GMap) -> Result<Arc<CubeContext>, HochError> {
    let ctx = SliceContext::over(orbits.clone(), w.target().clone())?;
    CubeContext::new(ctx, w)
}

fn orbit_counts(cc: &CubeContext) -> Vec<usize> {
    (0..cc.context().len()).map(|l| cc.orbits(l)).collect()
}

/// Orbit counts of the fibres of `w` over each level of a slice of its target.
fn orbit_counts_over(ctx: &SliceContext, w: &GMap) -> Result<Vec<usize>, HochError> {
    let cube = param_cubes::build_cube_over(ctx.slice().clone(), w)?;
    Ok((0..ctx.len()).map(|l| cube.poset().fibre(l).orbits()).collect())
}

/// Sphere dimensions from orbit counts: one less than the number of orbits of
/// the fibre of `w` over each level.
pub fn sphere_dims(orbits: &Arc<OrbitCat>, w: &GMap) -> Result<SphereDims, HochError> {
    sphere_dims_over(&*SliceContext::over(orbits.clone(), w.target().clone())?, w)
}

/// [`sphere_dims`] over an already built slice of the target of `w`.
pub fn sphere_dims_over(ctx: &SliceContext, w: &GMap) -> Result<SphereDims, HochError> {
    Ok(SphereDims {
        levels: ctx.level_names(),
        dims: orbit_counts_over(ctx, w)?.into_iter().map(|n| n as i32 - 1).collect(),
    })
}

/// Chain-level certificate for [`sphere_dims`].
#[derive(Clone, Debug, Serialize)]
pub struct SphereCertificate {
    pub dims: SphereDims,
    /// Homology of `Σ^w` of the unit at each level.
    pub homology: Vec<BTreeMap<i32, usize>>,
    /// Whether every level has a single rank-one class in the predicted degree.
    pub certified: bool,
}

/// Computes `Σ^w` of the unit and checks it against the orbit-count dimensions.
pub fn certify_sphere_dims(orbits: &Arc<OrbitCat>, w: &GMap) -> Result<SphereCertificate, HochError> {
    let cc = cube_context(orbits, w)?;
    let dims = SphereDims {
        levels: cc.context().level_names(),
        dims: orbit_counts(&cc).into_iter().map(|n| n as i32 - 1).collect(),
    };
    let unit = CoefficientSystem::unit(cc.context().clone());
    let homology: Vec<BTreeMap<i32, usize>> = suspension_values(&unit, &cc)?.iter().map(|c| c.homology()).collect();
    let certified = homology.iter().zip(&dims.dims).all(|(h, &d)| *h == BTreeMap::from([(d, 1)]));
    Ok(SphereCertificate { dims, homology, certified })
}

/// The three dimension identities at one level.
#[derive(Clone, Debug, Serialize)]
pub struct CalculusLevel {
    pub level: String,
    /// Orbit counts of the fibres of `u` and `w` over this level.
    pub orbits_u: usize,
    pub orbits_w: usize,
    pub dim_w: i32,
    pub dim_w_plus: i32,
    pub dim_u_plus: i32,
    pub dim_u_sqcup_w: i32,
    /// Dimension of the indexed smash of circles, the orbit count of `w`.
    pub dim_tensor_circle: i32,
    /// `dim S^{w_+} = dim S^w + 1`.
    pub adding_a_point: bool,
    /// `dim S^{u ⊔ w} = dim S^{u_+} + dim S^w`.
    pub disjoint_union: bool,
    /// `dim w_⊗ S^1 = dim S^{w_+}`.
    pub tensor_of_circles: bool,
}

/// Report on the sphere calculus for a pair of maps into a common target.
#[derive(Clone, Debug, Serialize)]
pub struct CalculusReport {
    pub levels: Vec<CalculusLevel>,
    pub holds: bool,
}

/// Checks the dimension identities relating `S^w`, `S^{w_+}`, `S^{u ⊔ w}` and the
/// indexed smash of circles, where `w_+: W ⊔ V → V`, at every level.
pub fn sphere_calculus_check(orbits: &Arc<OrbitCat>, u: &GMap, w: &GMap) -> Result<CalculusReport, HochError> {
    sphere_calculus_check_over(&*SliceContext::over(orbits.clone(), w.target().clone())?, u, w)
}

/// [`sphere_calculus_check`] over an already built slice of the common target.
pub fn sphere_calculus_check_over(ctx: &SliceContext, u: &GMap, w: &GMap) -> Result<CalculusReport, HochError> {
    if !u.target().same_action(w.target()) {
        return Err(HochError::Shape("u and w must share a target".into()));
    }
    let id = GMap::identity(w.target().clone());
    let w_plus = coproduct_map(&[w, &id]);
    let u_plus = coproduct_map(&[u, &id]);
    let u_sqcup_w = coproduct_map(&[u, w]);
    let dims = |m: &GMap| sphere_dims_over(ctx, m);
    let (dw, dwp, dup, duw) = (dims(w)?, dims(&w_plus)?, dims(&u_plus)?, dims(&u_sqcup_w)?);
    let (cu, cw) = (orbit_counts_over(ctx, u)?, orbit_counts_over(ctx, w)?);
    let levels: Vec<CalculusLevel> = (0..dw.levels.len())
        .map(|l| {
            let tensor = cw[l] as i32;
            CalculusLevel {
                level: dw.levels[l].clone(),
                orbits_u: cu[l],
                orbits_w: cw[l],
                dim_w: dw.dims[l],
                dim_w_plus: dwp.dims[l],
                dim_u_plus: dup.dims[l],
                dim_u_sqcup_w: duw.dims[l],
                dim_tensor_circle: tensor,
                adding_a_point: dwp.dims[l] == dw.dims[l] + 1,
                disjoint_union: duw.dims[l] == dup.dims[l] + dw.dims[l],
                tensor_of_circles: tensor == dwp.dims[l],
            }
        })
        .collect();
    let holds = levels.iter().all(|l| l.adding_a_point && l.disjoint_union && l.tensor_of_circles);
    Ok(CalculusReport { levels, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbital_base::FiniteGroup;
    use param_cubes::orbit_to_point;

    fn orbit_cat(name: &str) -> Arc<OrbitCat> {
        Arc::new(OrbitCat::new(Arc::new(FiniteGroup::by_name(name).unwrap())))
    }

    #[test]
    fn sign_sphere_profile() {
        let o = orbit_cat("C2");
        let w = orbit_to_point(&o, "free").unwrap();
        let cert = certify_sphere_dims(&o, &w).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.dims.get("C2/e"), Some(1));
        assert_eq!(cert.dims.get("C2/C2"), Some(0));
    }

    #[test]
    fn identity_gives_zero_spheres() {
        let o = orbit_cat("S3");
        let pt = param_cubes::point_of(&o);
        let d = sphere_dims(&o, &GMap::identity(pt)).unwrap();
        assert!(d.dims.iter().all(|&x| x == 0));
    }
}

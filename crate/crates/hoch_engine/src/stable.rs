//! Cartesian and cocartesian checks for ordinary cubes of chain complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use lattice_core::FinPoset;
use param_cubes::MaskPoset;
use rand::Rng;
use serde::Serialize;

use crate::complex::{quasi_iso, ChainComplex, ChainMap};
use crate::diagram::CatDiagram;
use crate::error::HochError;
use crate::hocolim::{Hocolim, Holim};
use crate::norm::singleton_cocartesian;
use crate::shape::Shape;

/// Largest cube dimension accepted by [`stable_cube_check`].
pub const MAX_CUBE_DIM: usize = 4;

/// The `n`-cube as a poset shape; object `m` is the subset with bitmask `m`.
pub fn cube_shape(n: usize) -> Result<Arc<Shape>, HochError> {
    if n > MAX_CUBE_DIM {
        return Err(HochError::TooLarge { dim: n, cap: MAX_CUBE_DIM });
    }
    let poset: FinPoset = MaskPoset::powerset(n)?.to_fin_poset()?;
    Ok(Shape::from_poset(&poset))
}

/// A comparison map that failed, with the homology of its cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeWitness {
    pub comparison: &'static str,
    pub source_homology: BTreeMap<i32, usize>,
    pub target_homology: BTreeMap<i32, usize>,
    pub cone_homology: BTreeMap<i32, usize>,
}

/// Outcome of [`stable_cube_check`].
#[derive(Clone, Debug, Serialize)]
pub struct CubeReport {
    pub dimension: usize,
    /// `hocolim` of the top-punctured cube maps quasi-isomorphically to the top.
    pub cocartesian: bool,
    /// The bottom maps quasi-isomorphically to `holim` of the bottom-punctured cube.
    pub cartesian: bool,
    /// The cube is left Kan extended from the bottom and the singletons.
    pub singleton_cocartesian: bool,
    /// Cocartesian and cartesian agree, as they must for chain complexes.
    pub stable_agreement: bool,
    /// Singleton cocartesian implies cartesian; vacuous below dimension two,
    /// where every cube is left Kan extended from its singletons.
    pub singleton_implies_cartesian: bool,
    pub witnesses: Vec<CubeWitness>,
}

fn witness(comparison: &'static str, map: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> Option<CubeWitness> {
    let v = quasi_iso(map, src, tgt);
    (!v.quasi_iso).then_some(CubeWitness {
        comparison,
        source_homology: v.source_homology,
        target_homology: v.target_homology,
        cone_homology: v.cone_homology,
    })
}

/// Compares the cube with its punctured homotopy (co)limits.
pub fn stable_cube_check(cube: &CatDiagram, n: usize) -> Result<CubeReport, HochError> {
    let shape = cube_shape(n)?;
    if cube.shape().len() != shape.len() {
        return Err(HochError::Shape(format!("expected a {n}-cube")));
    }
    let full = (1usize << n) - 1;
    let mut witnesses = Vec::new();

    let top_punctured: Vec<usize> = (0..full).collect();
    let colim = Hocolim::new(&cube.restrict(&top_punctured))?;
    let legs: Vec<ChainMap> =
        top_punctured.iter().map(|&s| cube.arrow_map(s, full).expect("s ⊆ top").clone()).collect();
    let to_top = colim.factor_cocone(cube.value(full), &legs);
    let cocartesian_witness = witness("cocartesian", &to_top, colim.complex(), cube.value(full));

    let bottom_punctured: Vec<usize> = (1..=full).collect();
    let lim = Holim::new(&cube.restrict(&bottom_punctured))?;
    let legs: Vec<ChainMap> =
        bottom_punctured.iter().map(|&s| cube.arrow_map(0, s).expect("bottom ⊆ s").clone()).collect();
    let from_bottom = lim.factor_cone(cube.value(0), &legs);
    let cartesian_witness = witness("cartesian", &from_bottom, cube.value(0), lim.complex());

    let cocartesian = cocartesian_witness.is_none();
    let cartesian = cartesian_witness.is_none();
    witnesses.extend(cocartesian_witness);
    witnesses.extend(cartesian_witness);
    let singleton = singleton_cocartesian(cube, n)?;
    Ok(CubeReport {
        dimension: n,
        cocartesian,
        cartesian,
        singleton_cocartesian: singleton,
        stable_agreement: cocartesian == cartesian,
        singleton_implies_cartesian: n < 2 || !singleton || cartesian,
        witnesses,
    })
}

/// The cube `S ↦ ⊕_{i ∉ S} A_i` with projections, which is cartesian and cocartesian.
pub fn projection_cube(parts: &[ChainComplex]) -> Result<CatDiagram, HochError> {
    let n = parts.len();
    let shape = cube_shape(n)?;
    let outside = |s: usize| -> Vec<usize> { (0..n).filter(|&i| s >> i & 1 == 0).collect() };
    let value = |s: usize| outside(s).iter().fold(ChainComplex::zero(), |acc, &i| acc.direct_sum(&parts[i]));
    let values: Vec<ChainComplex> = (0..1usize << n).map(value).collect();
    CatDiagram::from_covers(shape, values.clone(), |s, t| {
        let (from, to) = (outside(s), outside(t));
        ChainMap::from_fn(&values[s], &values[t], |deg| {
            let mut m = kan_vect::Mat::zeros(values[t].dim(deg), values[s].dim(deg));
            let (mut row, mut col) = (0, 0);
            for &i in &from {
                let d = parts[i].dim(deg);
                if to.contains(&i) {
                    m.put(row, col, &kan_vect::Mat::identity(d));
                    row += d;
                }
                col += d;
            }
            m
        })
    })
}

/// The constant cube on a complex.
pub fn constant_cube(n: usize, value: &ChainComplex) -> Result<CatDiagram, HochError> {
    let shape = cube_shape(n)?;
    CatDiagram::from_covers(shape, vec![value.clone(); 1 << n], |_, _| ChainMap::identity(value))
}

/// Ways of breaking a cube while keeping it a functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mutation {
    /// Every map into the top becomes zero.
    DisconnectTop,
    /// Every map out of the bottom becomes zero.
    DisconnectBottom,
}

/// Applies a mutation; the result is again a functor on the cube.
pub fn mutate_cube(cube: &CatDiagram, n: usize, mutation: Mutation) -> Result<CatDiagram, HochError> {
    let full = (1usize << n) - 1;
    let values = cube.values().to_vec();
    CatDiagram::from_covers(cube.shape().clone(), values, |s, t| {
        let cut = match mutation {
            Mutation::DisconnectTop => t == full,
            Mutation::DisconnectBottom => s == 0,
        };
        if cut {
            ChainMap::zero()
        } else {
            cube.arrow_map(s, t).expect("cover").clone()
        }
    })
}

/// Adds an acyclic two-term summand at the given vertices, with zero maps to
/// and from it; returns the enlarged cube and its projection onto the original.
pub fn pad_with_acyclic(
    cube: &CatDiagram,
    vertices: &[usize],
    rng: &mut impl Rng,
) -> Result<(CatDiagram, Vec<ChainMap>), HochError> {
    let padding: Vec<ChainComplex> = (0..cube.shape().len())
        .map(|v| {
            if vertices.contains(&v) {
                ChainComplex::contractible(rng.gen_range(-2..=2), rng.gen_range(1..=2))
            } else {
                ChainComplex::zero()
            }
        })
        .collect();
    let values: Vec<ChainComplex> = cube.values().iter().zip(&padding).map(|(a, p)| a.direct_sum(p)).collect();
    let padded = CatDiagram::from_covers(cube.shape().clone(), values.clone(), |s, t| {
        let zero = ChainMap::zero();
        cube.arrow_map(s, t).expect("cover").direct_sum(
            &zero,
            (cube.value(s), &padding[s]),
            (cube.value(t), &padding[t]),
        )
    })?;
    let projections = (0..values.len())
        .map(|v| {
            let id = ChainMap::identity(cube.value(v));
            let zero = ChainMap::zero();
            id.direct_sum(&zero, (cube.value(v), &padding[v]), (cube.value(v), &ChainComplex::zero()))
        })
        .collect();
    Ok((padded, projections))
}

/// Outcome of the gluing check for two cartesian cubes related by a natural map
/// that is a quasi-isomorphism away from the bottom.
#[derive(Clone, Debug, Serialize)]
pub struct GluingReport {
    pub both_cartesian: bool,
    pub equivalent_away_from_bottom: bool,
    pub equivalent_at_bottom: bool,
}

/// Checks that a natural map `F → G` of cartesian cubes which is a
/// quasi-isomorphism at every nonempty vertex is one at the bottom too.
pub fn gluing_check(f: &CatDiagram, g: &CatDiagram, map: &[ChainMap], n: usize) -> Result<GluingReport, HochError> {
    if !f.is_natural(g, map) {
        return Err(HochError::Shape("the comparison is not natural".into()));
    }
    let both_cartesian = stable_cube_check(f, n)?.cartesian && stable_cube_check(g, n)?.cartesian;
    let equivalent_away_from_bottom = (1..1usize << n).all(|v| quasi_iso(&map[v], f.value(v), g.value(v)).quasi_iso);
    let equivalent_at_bottom = quasi_iso(&map[0], f.value(0), g.value(0)).quasi_iso;
    Ok(GluingReport { both_cartesian, equivalent_away_from_bottom, equivalent_at_bottom })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_cubes_pass_every_check() {
        let parts = vec![ChainComplex::concentrated(0, 1), ChainComplex::concentrated(1, 2)];
        let report = stable_cube_check(&projection_cube(&parts).unwrap(), 2).unwrap();
        assert!(report.cocartesian && report.cartesian && report.singleton_cocartesian);
    }

    #[test]
    fn constant_cubes_are_cartesian_and_cocartesian() {
        for n in 1..=3 {
            let report = stable_cube_check(&constant_cube(n, &ChainComplex::concentrated(0, 1)).unwrap(), n).unwrap();
            assert!(report.cartesian && report.cocartesian, "n = {n}");
        }
        let point = stable_cube_check(&constant_cube(0, &ChainComplex::concentrated(0, 1)).unwrap(), 0).unwrap();
        assert!(!point.cocartesian && !point.cartesian);
    }

    #[test]
    fn disconnecting_the_top_is_detected() {
        let parts = vec![ChainComplex::concentrated(0, 1); 2];
        let cube = projection_cube(&parts).unwrap();
        let constant = constant_cube(2, &ChainComplex::concentrated(0, 1)).unwrap();
        let broken = mutate_cube(&constant, 2, Mutation::DisconnectTop).unwrap();
        let report = stable_cube_check(&broken, 2).unwrap();
        assert!(!report.cocartesian && report.stable_agreement);
        assert_eq!(report.witnesses[0].comparison, "cocartesian");
        let broken = mutate_cube(&cube, 2, Mutation::DisconnectBottom).unwrap();
        assert!(!stable_cube_check(&broken, 2).unwrap().cartesian);
    }
}

use std::sync::Arc;

use orbital_base::{FiniteGroup, GMap, OrbitCat};
use param_cubes::{
    basechange, build_cube, catalogue, coproduct_map, decomposition_from_orbit_partition, orbit_to_point,
    pushforward_singletons, ParamPosetFile, Puncture, TotalPoset,
};

fn orbit_cat(name: &str) -> OrbitCat {
    OrbitCat::new(Arc::new(FiniteGroup::by_name(name).unwrap()))
}

fn sizes_by_name(o: &OrbitCat, w: &GMap) -> Vec<(String, usize)> {
    let cube = build_cube(o, w).unwrap();
    (0..cube.slice().len()).map(|l| (cube.slice().level_name(l).to_string(), cube.poset().fibre(l).len())).collect()
}

#[test]
fn free_c2_cube_fibres() {
    let o = orbit_cat("C2");
    let w = orbit_to_point(&o, "free").unwrap();
    assert_eq!(sizes_by_name(&o, &w), vec![("C2/e".to_string(), 4), ("C2/C2".to_string(), 2)]);
}

#[test]
fn identity_cube_is_an_interval_everywhere() {
    let o = orbit_cat("S3");
    let w = GMap::identity(o.object(o.point_index()).clone());
    assert!(sizes_by_name(&o, &w).iter().all(|(_, n)| *n == 2));
}

#[test]
fn s3_cube_over_order_two_cosets() {
    let o = orbit_cat("S3");
    let w = orbit_to_point(&o, "C2").unwrap();
    let sizes: Vec<usize> = sizes_by_name(&o, &w).into_iter().map(|(_, n)| n).collect();
    assert_eq!(sizes, vec![8, 4, 2, 2]);
}

#[test]
fn punctures_of_small_cubes() {
    let o = orbit_cat("C2");
    let cube = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    let top = cube.poset().puncture(Puncture::Top).unwrap();
    assert_eq!(top.fibre(1).elements().unwrap(), vec![0]);
    assert_eq!(top.fibre(0).len(), 3);
    let id = build_cube(&o, &GMap::identity(o.object(1).clone())).unwrap();
    let bottom = id.poset().puncture(Puncture::Bottom).unwrap();
    assert!(bottom.fibres().iter().all(|f| f.elements().unwrap() == vec![1]));
    let both = bottom.puncture(Puncture::Top).unwrap();
    assert!(both.fibres().iter().all(|f| f.is_empty()));
}

#[test]
fn singleton_inclusion_for_free_c2() {
    let o = orbit_cat("C2");
    let cube = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    let inc = cube.singleton_inclusion().unwrap();
    assert_eq!(inc.images[1], vec![0]);
    let mut free_level = inc.images[0].clone();
    free_level.sort_unstable();
    assert_eq!(free_level, vec![0, 0b01, 0b10]);
    let checks = cube.check_singletons(&inc).unwrap();
    assert!(checks.all_hold());
    assert!(checks.inside_top_puncture);
}

#[test]
fn singleton_inclusion_of_identity_is_an_isomorphism() {
    let o = orbit_cat("C3");
    let cube = build_cube(&o, &GMap::identity(o.object(1).clone())).unwrap();
    let inc = cube.singleton_inclusion().unwrap();
    assert!(inc.images.iter().all(|img| img == &vec![0, 1]));
    assert!(!cube.check_singletons(&inc).unwrap().inside_top_puncture);
}

#[test]
fn global_points_of_orbit_cubes() {
    let o = orbit_cat("C2");
    let free = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    assert_eq!(free.global_points().unwrap(), vec![0, 1]);
    let mixed = coproduct_map(&[&o.hom(0, 1)[0], &o.hom(1, 1)[0]]);
    assert_eq!(build_cube(&o, &mixed).unwrap().global_points().unwrap().len(), 4);
    assert_eq!(free.enumerate_points().unwrap().iter().filter(|p| p.0 == 0).count(), 4);
}

#[test]
fn decomposition_of_mixed_c2_cube() {
    let o = orbit_cat("C2");
    let w = coproduct_map(&[&o.hom(0, 1)[0], &o.hom(1, 1)[0]]);
    let cube = build_cube(&o, &w).unwrap();
    // Terminal orbits: the free orbit comes first.
    let dec = decomposition_from_orbit_partition(&cube, 0b01, 0b10, 0).unwrap();
    assert!(dec.triples_valid(&cube).unwrap());
    assert!(dec.identification_valid(&cube));
    let free = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    for l in 0..cube.slice().len() {
        assert_eq!(dec.face_cube.orbit_count(l), free.orbit_count(l));
    }
    let whole = decomposition_from_orbit_partition(&cube, 0b11, 0, 0).unwrap();
    assert!(whole.identification.iter().enumerate().all(|(l, id)| id.len() == cube.orbit_count(l)));
    let empty = decomposition_from_orbit_partition(&cube, 0, 0b11, 0).unwrap();
    assert!(empty.face_cube.poset().fibres().iter().all(|f| f.len() == 1));
    assert!(decomposition_from_orbit_partition(&cube, 0b01, 0b01, 0b10).is_err());
}

#[test]
fn basechange_of_free_c2_cube_along_free_orbit() {
    let o = orbit_cat("C2");
    let cube = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    let b = o.hom(0, 1)[0].clone();
    let bc = basechange(&o, &cube, &b).unwrap();
    assert!(bc.cube_compatible());
    assert!(bc.singletons_compatible(&cube).unwrap());
    assert!(bc.restricted.fibres().iter().all(|f| f.len() == 4));
    let id = basechange(&o, &cube, &GMap::identity(o.object(1).clone())).unwrap();
    assert_eq!(id.level_map, (0..cube.slice().len()).collect::<Vec<_>>());
    assert!(id.cube_compatible());
}

#[test]
fn s3_basechange_along_order_three_cosets() {
    let o = orbit_cat("S3");
    let cube = build_cube(&o, &orbit_to_point(&o, "C2").unwrap()).unwrap();
    let b = o.hom(2, 3)[0].clone();
    let bc = basechange(&o, &cube, &b).unwrap();
    assert!(bc.cube_compatible());
    assert!(bc.singletons_compatible(&cube).unwrap());
}

#[test]
fn pushforward_through_c4() {
    let o = orbit_cat("C4");
    let w = o.hom(0, 1)[0].clone();
    let a = o.hom(1, 2)[0].clone();
    let report = pushforward_singletons(&o, &a, &w).unwrap();
    assert!(report.iter().all(|l| l.bijective && l.compatible));
    let composite = build_cube(&o, &w.then(&a).unwrap()).unwrap();
    for (l, level) in report.iter().enumerate() {
        assert_eq!(level.orbit_bijection.len(), composite.orbit_count(l));
    }
}

#[test]
fn pushforward_along_identity_is_trivial() {
    let o = orbit_cat("C2");
    let w = orbit_to_point(&o, "free").unwrap();
    let a = GMap::identity(o.object(1).clone());
    for level in pushforward_singletons(&o, &a, &w).unwrap() {
        assert_eq!(level.outer_orbits, 1);
        assert!(level.bijective && level.compatible);
        assert!(level.theta.iter().all(|t| t.orbit == 0));
    }
}

#[test]
fn total_poset_recovers_fibres() {
    let o = orbit_cat("C2");
    let cube = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    let total = TotalPoset::new(cube.poset()).unwrap();
    assert_eq!(total.objects.len(), 6);
    for l in 0..cube.slice().len() {
        let objs = total.fibre_objects(l);
        assert_eq!(objs.len(), cube.poset().fibre(l).len());
        for &i in &objs {
            for &k in &objs {
                let within = total
                    .category
                    .hom(i, k)
                    .iter()
                    .any(|&m| total.base_morphism[m] == cube.slice().category().identity(l));
                assert_eq!(within, total.objects[i].1 & !total.objects[k].1 == 0);
            }
        }
    }
}

#[test]
fn catalogue_cubes_pass_structural_checks() {
    for name in ["C2", "C3"] {
        let o = orbit_cat(name);
        for entry in catalogue(&o, 2) {
            let cube = build_cube(&o, &entry.w).unwrap();
            cube.poset().check_functoriality().unwrap();
            assert!(cube.poset().preserves_bottom_and_top());
            assert!(cube.check_boolean().unwrap(), "{}", entry.name);
            let inc = cube.singleton_inclusion().unwrap();
            assert!(cube.check_singletons(&inc).unwrap().all_hold(), "{}", entry.name);
        }
    }
}

#[test]
fn cube_file_lists_every_level() {
    let o = orbit_cat("C2");
    let cube = build_cube(&o, &orbit_to_point(&o, "free").unwrap()).unwrap();
    let file = ParamPosetFile::from_cube(&cube, "C2/C2").unwrap();
    assert_eq!(file.fibres.len(), 2);
    assert_eq!(file.restrictions.len(), cube.slice().category().morphism_count());
}

mod restriction_laws {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Restricting along an orbit map is a map of Boolean lattices.
        #[test]
        fn restriction_preserves_meets_joins_and_complements(
            group in prop::sample::select(vec!["C2", "C3", "C4", "S3"]),
            pick in any::<prop::sample::Index>(),
            morphism in any::<prop::sample::Index>(),
            a in any::<u64>(),
            b in any::<u64>(),
        ) {
            let o = orbit_cat(group);
            let entries = catalogue(&o, 2);
            let cube = build_cube(&o, &entries[pick.index(entries.len())].w).unwrap();
            let p = cube.poset();
            let f = morphism.index(p.category().morphism_count());
            let full = |level: usize| (1u64 << p.fibre(level).orbits()) - 1;
            let (src, tgt) = (p.category().src(f), p.category().tgt(f));
            let (a, b) = (a & full(tgt), b & full(tgt));
            prop_assert_eq!(p.restrict(f, a & b), p.restrict(f, a) & p.restrict(f, b));
            prop_assert_eq!(p.restrict(f, a | b), p.restrict(f, a) | p.restrict(f, b));
            prop_assert_eq!(p.restrict(f, full(tgt) & !a), full(src) & !p.restrict(f, a));
        }
    }
}

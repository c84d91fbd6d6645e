use std::collections::BTreeMap;
use std::sync::Arc;

use hoch_engine::coefficient::pieces;
use hoch_engine::*;
use kan_vect::random::{random_diagram, SamplerConfig};
use lattice_core::FinPoset;
use orbital_base::{FiniteGroup, GMap, OrbitCat};
use param_cubes::{coproduct_map, orbit_to_point};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shifted(h: &BTreeMap<i32, usize>, k: i32) -> BTreeMap<i32, usize> {
    h.iter().map(|(&n, &r)| (n + k, r)).collect()
}

fn punctured_square() -> Arc<Shape> {
    // ∅ below two atoms, no top.
    let poset = FinPoset::from_relation(
        vec!["0".into(), "a".into(), "b".into()],
        vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]],
    )
    .unwrap();
    Shape::from_poset(&poset)
}

fn orbit_cat(name: &str) -> Arc<OrbitCat> {
    Arc::new(OrbitCat::new(Arc::new(FiniteGroup::by_name(name).unwrap())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn punctured_square_suspends(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_complex(&mut rng, 6);
        let values = vec![x.clone(), ChainComplex::zero(), ChainComplex::zero()];
        let d = CatDiagram::from_covers(punctured_square(), values, |_, _| ChainMap::zero()).unwrap();
        prop_assert_eq!(hocolim_poset(&d).unwrap().homology(), shifted(&x.homology(), 1));
        prop_assert_eq!(holim_poset(&d.dual()).unwrap().homology(), shifted(&x.dual().homology(), -1));
    }

    #[test]
    fn homotopy_colimits_are_invariant_under_perturbation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(param_cubes::MaskPoset::powerset(2).unwrap().without_top().to_fin_poset().unwrap());
        let cfg = SamplerConfig { max_dim: 2, ..SamplerConfig::default() };
        let d = from_vector_diagram(&random_diagram(&mut rng, shape, &cfg), 0).unwrap();
        let (p, eta) = perturb(&d, &mut rng).unwrap();
        let (h, hp) = (Hocolim::new(&d).unwrap(), Hocolim::new(&p).unwrap());
        prop_assert!(quasi_iso(&h.induced(&hp, &eta), h.complex(), hp.complex()).quasi_iso);
        let (l, lp) = (Holim::new(&d).unwrap(), Holim::new(&p).unwrap());
        prop_assert_eq!(l.complex().homology(), lp.complex().homology());
    }

    #[test]
    fn a_top_element_computes_the_colimit(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = Arc::new(param_cubes::MaskPoset::powerset(2).unwrap().to_fin_poset().unwrap());
        let cfg = SamplerConfig { max_dim: 2, ..SamplerConfig::default() };
        let d = from_vector_diagram(&random_diagram(&mut rng, shape, &cfg), 1).unwrap();
        let h = Hocolim::new(&d).unwrap();
        let legs: Vec<ChainMap> = (0..4).map(|s| d.arrow_map(s, 3).unwrap().clone()).collect();
        let to_top = h.factor_cocone(d.value(3), &legs);
        prop_assert!(quasi_iso(&to_top, h.complex(), d.value(3)).quasi_iso);
    }

    #[test]
    fn trivial_group_norm_is_always_an_equivalence(seed in any::<u64>(), points in 1usize..=3) {
        let ctx = SliceContext::for_group("trivial").unwrap();
        let f = orbit_to_point(ctx.orbits(), "free").unwrap();
        let nc = NormContext::new(ctx.clone(), &coproduct_map(&vec![&f; points])).unwrap();
        let x = random_system(&ctx, &mut ChaCha8Rng::seed_from_u64(seed), 6);
        prop_assert!(norm_map(&nc, &x).unwrap().all_quasi_iso());
    }

    #[test]
    fn free_orbit_norm_fails_exactly_when_the_free_level_has_homology(seed in any::<u64>(), group in prop::sample::select(vec!["C2", "C3"])) {
        let ctx = SliceContext::for_group(group).unwrap();
        let nc = NormContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
        let x = random_system(&ctx, &mut ChaCha8Rng::seed_from_u64(seed), 6);
        let norm = norm_map(&nc, &x).unwrap();
        let fixed = ctx.orbits().point_index();
        let free = ctx.orbits().free_index();
        prop_assert!(norm.levels[fixed].lower_homology.is_empty());
        prop_assert_eq!(norm.levels[fixed].quasi_iso, x.value(free).is_acyclic());
        prop_assert!(norm.is_natural());
        let ab = alpha_beta_cubes(&nc, &x).unwrap();
        prop_assert!(ab.checks_pass());
    }
}

#[test]
fn identity_suspension_is_the_identity() {
    let o = orbit_cat("C3");
    let ctx = SliceContext::over_point(o.clone()).unwrap();
    let cc = CubeContext::new(ctx.clone(), &GMap::identity(param_cubes::point_of(&o))).unwrap();
    let x = random_system(&ctx, &mut ChaCha8Rng::seed_from_u64(2), 6);
    let s = suspension_w(&x, &cc).unwrap();
    assert_eq!(s.homology(), x.homology());
    assert!(unit_check(&x, &cc).unwrap().all_quasi_iso());
}

#[test]
fn fold_of_two_points_shifts_by_one() {
    let ctx = SliceContext::for_group("trivial").unwrap();
    let f = orbit_to_point(ctx.orbits(), "free").unwrap();
    let cc = CubeContext::new(ctx.clone(), &coproduct_map(&[&f, &f])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let x = random_system(&ctx, &mut rng, 6);
        let s = suspension_w(&x, &cc).unwrap();
        assert_eq!(s.homology()[0], shifted(&x.homology()[0], 1));
        let unit = unit_check(&x, &cc).unwrap();
        assert!(unit.all_quasi_iso() && unit.levels.iter().all(|l| l.consistent));
        assert!(counit_check(&x, &cc).unwrap().all_quasi_iso());
    }
}

#[test]
fn c2_free_suspension_matches_the_fibrewise_computation() {
    let ctx = SliceContext::for_group("C2").unwrap();
    let cc = CubeContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
    let (free, fixed) = (ctx.orbits().free_index(), ctx.orbits().point_index());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let x = random_system(&ctx, &mut rng, 6);
        let s = suspension_w(&x, &cc).unwrap();
        assert_eq!(s.value(free).homology(), shifted(&x.value(free).homology(), 1));
        assert_eq!(s.value(fixed).homology(), x.value(fixed).homology());
    }
}

#[test]
fn unit_zig_zags_are_consistent_with_loops_of_suspensions() {
    let ctx = SliceContext::for_group("C2").unwrap();
    let cc = CubeContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..6 {
        let x = random_system(&ctx, &mut rng, 5);
        let report = unit_check(&x, &cc).unwrap();
        let omega_sigma = loop_w(&suspension_w(&x, &cc).unwrap(), &cc).unwrap();
        for (l, level) in report.levels.iter().enumerate() {
            assert!(level.consistent);
            assert_eq!(level.target_homology, omega_sigma.value(l).homology());
        }
        assert!(counit_check(&x, &cc).unwrap().levels.iter().all(|l| l.consistent));
    }
}

#[test]
fn representables_and_simples_are_functors() {
    let ctx = SliceContext::for_group("S3").unwrap();
    for a in 0..ctx.len() {
        pieces::representable(&ctx, a);
        for chi in pieces::characters(&ctx, a) {
            pieces::simple(&ctx, a, &chi);
        }
    }
}

#[test]
fn sphere_profiles() {
    let c2 = orbit_cat("C2");
    let d = certify_sphere_dims(&c2, &orbit_to_point(&c2, "free").unwrap()).unwrap();
    assert!(d.certified);
    assert_eq!(d.dims.dims, vec![1, 0]);
    let s3 = orbit_cat("S3");
    let d = certify_sphere_dims(&s3, &orbit_to_point(&s3, "S3/C2").unwrap()).unwrap();
    assert!(d.certified);
    assert_eq!(
        d.dims.as_map(),
        BTreeMap::from([("S3/C2".into(), 1), ("S3/C3".into(), 0), ("S3/S3".into(), 0), ("S3/e".into(), 2)])
    );
}

#[test]
fn wide_fibres_use_the_cubical_model() {
    let s3 = orbit_cat("S3");
    let free = orbit_to_point(&s3, "free").unwrap();
    let w = coproduct_map(&[&free, &free]);
    let cert = certify_sphere_dims(&s3, &w).unwrap();
    assert!(cert.certified);
    assert_eq!(cert.dims.get("S3/e"), Some(11));
}

#[test]
fn bar_and_cubical_models_agree_where_both_apply() {
    let c4 = orbit_cat("C4");
    for entry in param_cubes::catalogue(&c4, 2) {
        let ctx = SliceContext::over(c4.clone(), entry.w.target().clone()).unwrap();
        let cc = CubeContext::new(ctx.clone(), &entry.w).unwrap();
        let x = random_system(&ctx, &mut ChaCha8Rng::seed_from_u64(3), 4);
        let bar = suspension_values(&x, &cc).unwrap();
        for (l, value) in bar.iter().enumerate() {
            let n = cc.orbits(l) as i32;
            let cubical = if n == 0 { BTreeMap::new() } else { shifted(&x.value(l).homology(), n - 1) };
            assert_eq!(value.homology(), cubical, "{} at {}", entry.name, ctx.level_name(l));
        }
    }
}

#[test]
fn sphere_calculus_examples() {
    let c2 = orbit_cat("C2");
    let free = orbit_to_point(&c2, "free").unwrap();
    let report = sphere_calculus_check(&c2, &free, &free).unwrap();
    assert!(report.holds);
    assert_eq!(report.levels.iter().map(|l| (l.dim_w_plus, l.dim_w)).collect::<Vec<_>>(), vec![(2, 1), (1, 0)]);
    let s3 = orbit_cat("S3");
    let u = orbit_to_point(&s3, "S3/C3").unwrap();
    let w = orbit_to_point(&s3, "S3/C2").unwrap();
    let report = sphere_calculus_check(&s3, &u, &w).unwrap();
    assert!(report.holds && report.levels.len() == 4);
    let id = GMap::identity(param_cubes::point_of(&s3));
    let report = sphere_calculus_check(&s3, &id, &id).unwrap();
    assert!(report.levels.iter().all(|l| l.dim_w == 0 && l.dim_w_plus == 1 && l.dim_u_sqcup_w == 1));
}

#[test]
fn c3_free_norm_fails_at_the_fixed_level() {
    let ctx = SliceContext::for_group("C3").unwrap();
    let nc = NormContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
    let norm = norm_map(&nc, &CoefficientSystem::unit(ctx.clone())).unwrap();
    let fixed = &norm.levels[ctx.orbits().point_index()];
    assert!(fixed.lower_homology.is_empty() && !fixed.upper_homology.is_empty() && !fixed.quasi_iso);
}

#[test]
fn zero_system_gives_zero_cubes() {
    let ctx = SliceContext::for_group("C2").unwrap();
    let nc = NormContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
    let ab = alpha_beta_cubes(&nc, &CoefficientSystem::zero(ctx)).unwrap();
    assert!(ab.alpha.cubes.iter().chain(&ab.beta.cubes).all(|c| c.total_dim() == 0));
}

#[test]
fn trivial_group_alpha_is_the_coproduct_square() {
    let ctx = SliceContext::for_group("trivial").unwrap();
    let f = orbit_to_point(ctx.orbits(), "free").unwrap();
    let nc = NormContext::new(ctx.clone(), &coproduct_map(&[&f, &f])).unwrap();
    let x = CoefficientSystem::unit(ctx);
    let ab = alpha_beta_cubes(&nc, &x).unwrap();
    let dims: Vec<usize> = ab.alpha.cubes[0].values().iter().map(ChainComplex::total_dim).collect();
    assert_eq!(dims, vec![2, 1, 1, 0]);
    assert!(ab.checks_pass() && ab.levels[0].aleph_quasi_iso_at_bottom);
}

#[test]
fn gluing_of_cartesian_cubes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=3 {
        let parts: Vec<ChainComplex> = (0..n).map(|_| random_complex(&mut rng, 3)).collect();
        let g = projection_cube(&parts).unwrap();
        let vertices: Vec<usize> = (0..1usize << n).collect();
        let (f, map) = pad_with_acyclic(&g, &vertices, &mut rng).unwrap();
        let report = gluing_check(&f, &g, &map, n).unwrap();
        assert!(
            report.both_cartesian && report.equivalent_away_from_bottom && report.equivalent_at_bottom,
            "n = {n}: {report:?}"
        );
    }
}

#[test]
fn stable_cubes_agree_on_both_notions() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=3 {
        let shape = Arc::new(param_cubes::MaskPoset::powerset(n).unwrap().to_fin_poset().unwrap());
        let cfg = SamplerConfig { max_dim: 2, ..SamplerConfig::default() };
        for _ in 0..4 {
            let cube = from_vector_diagram(&random_diagram(&mut rng, shape.clone(), &cfg), 0).unwrap();
            let report = stable_cube_check(&cube, n).unwrap();
            assert!(report.stable_agreement && report.singleton_implies_cartesian, "{report:?}");
        }
    }
}

#[test]
fn probe_witness_round_trips_through_json() {
    let ctx = SliceContext::for_group("C2").unwrap();
    let cc = CubeContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").unwrap()).unwrap();
    let outcome = faithfulness_probe(&cc, 3, 40).unwrap();
    let witness = outcome.witness().unwrap();
    assert!(witness.system.to_system(ctx).unwrap().total_dim() <= PROBE_MAX_TOTAL_DIM);
    let text = serde_json::to_string(witness).unwrap();
    let back: Witness = serde_json::from_str(&text).unwrap();
    assert!(!replay_witness(&cc, &back).unwrap().all_quasi_iso());
}

use std::sync::Arc;

use kan_vect::random::{random_matrix, random_star_diagram};
use kan_vect::*;
use lattice_core::{ExcisableStructure, FinLattice, FinPoset};
use proptest::prelude::*;

fn square() -> FinLattice {
    FinLattice::powerset(2).unwrap()
}

fn star_excision(n: usize) -> Excision {
    let l = FinLattice::powerset(n).unwrap();
    Excision::from_structure(&l, &ExcisableStructure::singletons(&l)).unwrap()
}

/// Dimension of the space of cocones from `d` to the line, solved over every comparable pair.
fn cocone_space_dim(d: &PosetDiagram) -> usize {
    let p = d.shape();
    let n = d.len();
    let offsets: Vec<usize> = (0..=n).map(|i| d.dims()[..i].iter().sum()).collect();
    let total = offsets[n];
    let mut rows: Vec<Mat> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.lt(a, b) {
                // g_b · D(a→b) − g_a = 0, unknowns are the row vectors g_q laid side by side.
                let mut c = Mat::zeros(d.dim(a), total);
                c.put(0, offsets[b], &d.map(a, b).transpose());
                c.put(0, offsets[a], &Mat::identity(d.dim(a)).neg());
                rows.push(c);
            }
        }
    }
    let parts: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(&parts, total).kernel().dim()
}

/// Dimension of the space of cones from the line, solved over every comparable pair.
fn cone_space_dim(d: &PosetDiagram) -> usize {
    let p = d.shape();
    let n = d.len();
    let offsets: Vec<usize> = (0..=n).map(|i| d.dims()[..i].iter().sum()).collect();
    let total = offsets[n];
    let mut rows: Vec<Mat> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.lt(a, b) {
                let mut c = Mat::zeros(d.dim(b), total);
                c.put(0, offsets[a], d.map(a, b));
                c.put(0, offsets[b], &Mat::identity(d.dim(b)).neg());
                rows.push(c);
            }
        }
    }
    let parts: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(&parts, total).kernel().dim()
}

fn small_cfg(seed: u64) -> SamplerConfig {
    SamplerConfig { samples: 12, max_dim: 2, max_numerator: 3, seed, injective: false }
}

#[test]
fn colimits_and_limits_match_brute_force_cones() {
    let shapes: Vec<Arc<FinPoset>> = vec![
        square().poset().clone(),
        FinLattice::powerset(3).unwrap().poset().clone(),
        Arc::new(square().poset().full_subposet(&[0, 1, 2])),
        Arc::new(square().poset().full_subposet(&[1, 2, 3])),
        FinLattice::pentagon().poset().clone(),
    ];
    for (s, shape) in shapes.into_iter().enumerate() {
        for i in 0..15 {
            let d = random_diagram(&mut rng_for(s as u64, i), shape.clone(), &small_cfg(0));
            assert_eq!(colim(&d).dim(), cocone_space_dim(&d), "colimit, shape {s} sample {i}");
            assert_eq!(lim(&d).dim(), cone_space_dim(&d), "limit, shape {s} sample {i}");
        }
    }
}

#[test]
fn pushout_along_injections() {
    let sq = square();
    let span = Arc::new(sq.poset().full_subposet(&[0, 1, 2]));
    let d = PosetDiagram::new(span, vec![1, 2, 2], |_, hi| {
        if hi == 1 {
            Mat::from_i64(2, 1, &[1, 0])
        } else {
            Mat::from_i64(2, 1, &[0, 1])
        }
    })
    .unwrap();
    assert_eq!(colim(&d).dim(), 3);
}

#[test]
fn lkan_on_interval_from_bottom() {
    let l = FinLattice::chain(2).unwrap();
    let data = PosetDiagram::constant(Arc::new(l.poset().full_subposet(&[0])), 3);
    let ext = lkan(l.poset().clone(), &[0], &data).unwrap();
    assert_eq!(ext.diagram.dims(), &[3, 3]);
    assert!(ext.diagram.map(0, 1).is_identity());
}

#[test]
fn lkan_transitivity() {
    let cube = FinLattice::powerset(3).unwrap();
    let p = cube.poset().clone();
    let small: Vec<usize> = vec![0, 1, 2, 4];
    let mid: Vec<usize> = vec![0, 1, 2, 3, 4, 5];
    let small_in_mid: Vec<usize> = small.iter().map(|s| mid.iter().position(|m| m == s).unwrap()).collect();
    let mid_shape = Arc::new(p.full_subposet(&mid));
    let mut small_mask = vec![false; 8];
    small.iter().for_each(|&s| small_mask[s] = true);
    for i in 0..10 {
        let data = random_star_diagram(&mut rng_for(11, i), Arc::new(p.full_subposet(&small)), &small_cfg(0));
        let direct = lkan(p.clone(), &small, &data).unwrap().diagram;
        let stage = lkan(mid_shape.clone(), &small_in_mid, &data).unwrap().diagram;
        let twice = lkan(p.clone(), &mid, &stage).unwrap().diagram;
        assert_eq!(direct.dims(), twice.dims());
        assert!(is_cocartesian(&twice, &small_mask).holds);
    }
}

#[test]
fn cone_construction_examples() {
    let ex = star_excision(2);
    assert_eq!(c_sigma(&ex, 1).diagram.dims(), &[1, 0, 0, 0]);
    assert!(is_cocartesian(&c_sigma(&ex, 2).diagram, &ex.sigma).holds);
    let l = FinLattice::chain(2).unwrap();
    let ex1 = Excision::from_structure(&l, &ExcisableStructure::bottom_only(&l)).unwrap();
    let c = c_sigma(&ex1, 2).diagram;
    assert_eq!(c.dims(), &[2, 2]);
    assert!(c.map(0, 1).is_identity());
    assert_eq!(c_sigma(&ex, 0).diagram.total_dim(), 0);
}

#[test]
fn cone_construction_preserves_cokernels() {
    let ex = star_excision(3);
    for i in 0..10 {
        let mut rng = rng_for(21, i);
        let f = random_matrix(&mut rng, 3, 2, 2);
        let (src, tgt) = (c_sigma(&ex, 2), c_sigma(&ex, 3));
        let comps = c_sigma_map(&ex, &src, &tgt, &f);
        let coker_dim = f.cokernel().dim();
        let pointwise: Vec<usize> = comps.iter().map(|m| m.cokernel().dim()).collect();
        assert_eq!(pointwise, c_sigma(&ex, coker_dim).diagram.dims().to_vec());
    }
}

#[test]
fn theta_examples() {
    let ex = star_excision(2);
    assert_eq!(t_sigma(&FunctorSpec::Constant(1), &ex, 4), 1);
    assert!(theta(&FunctorSpec::Constant(1), &ex, 4).is_identity());
    assert_eq!(t_sigma(&FunctorSpec::Identity, &ex, 3), 0);
    let l = FinLattice::chain(2).unwrap();
    let ex1 = Excision::from_structure(&l, &ExcisableStructure::bottom_only(&l)).unwrap();
    assert_eq!(t_sigma(&FunctorSpec::Identity, &ex1, 3), 3);
    assert!(theta(&FunctorSpec::Identity, &ex1, 3).is_identity());
}

#[test]
fn tower_examples() {
    let ex = Arc::new(star_excision(2));
    let s = p_sigma(Arc::new(FunctorSpec::Constant(2)), ex.clone(), 3, 8).unwrap();
    assert_eq!((s.stage, s.dim), (0, 2));
    let s = p_sigma(Arc::new(FunctorSpec::Identity), ex.clone(), 3, 8).unwrap();
    assert_eq!((s.stage, s.dim), (1, 0));
    let s = p_sigma(Arc::new(FunctorSpec::Constant(0)), ex, 3, 8).unwrap();
    assert!(s.trajectory.iter().all(|&d| d == 0));
}

#[test]
fn tower_stages_are_functors_and_excisive_after_stabilizing() {
    let ex = Arc::new(star_excision(2));
    let specs =
        [FunctorSpec::Constant(1), FunctorSpec::Identity, FunctorSpec::SymmetricSquare, FunctorSpec::TensorPower(2)];
    for spec in specs {
        let tower = Tower::new(Arc::new(spec.clone()), ex.clone(), 3);
        for (k, stage) in tower.stages.iter().enumerate() {
            let mut rng = rng_for(31, k as u64);
            let f = random_matrix(&mut rng, 2, 2, 2);
            let g = random_matrix(&mut rng, 3, 2, 2);
            assert!(respects_composition(stage.as_ref(), &f, &g), "{} stage {k}", spec.describe());
        }
        let s = p_sigma(Arc::new(spec.clone()), ex.clone(), 2, 3).unwrap();
        // The connecting map after stabilization is invertible and the stable stage is excisive.
        assert!(tower.connecting(s.stage, 2).is_invertible());
        let report = check_excisive(tower.stages[s.stage].as_ref(), &ex, &small_cfg(5), Exec::Sequential);
        assert!(report.holds(), "{}", spec.describe());
    }
}

#[test]
fn approximation_commutes_with_reduced_precomposition() {
    let ex = star_excision(2);
    let outer = FunctorSpec::TensorPower(2);
    for inner in [FunctorSpec::DirectSumPower(2), FunctorSpec::Identity, FunctorSpec::SymmetricSquare] {
        for n in 0..3 {
            let pre = apply_functor(&inner, &c_sigma(&ex, n).diagram).unwrap();
            assert_eq!(pre, c_sigma(&ex, inner.obj(n)).diagram);
            let composite = FunctorSpec::Composite(vec![inner.clone(), outer.clone()]);
            assert_eq!(theta(&composite, &ex, n), theta(&outer, &ex, inner.obj(n)));
        }
    }
}

#[test]
fn rezk_factorization_examples() {
    let ex = star_excision(2);
    let r = rezk_factorization(&FunctorSpec::TensorPower(2), &ex, &c_sigma(&ex, 2).diagram).unwrap();
    assert!(r.holds());
    assert_eq!(r.second[0].mul(&r.first[0]), theta(&FunctorSpec::TensorPower(2), &ex, 2));

    let data =
        PosetDiagram::new(
            ex.sigma_shape(),
            vec![1, 1, 0],
            |_, hi| {
                if hi == 1 {
                    Mat::identity(1)
                } else {
                    Mat::zeros(0, 1)
                }
            },
        )
        .unwrap();
    let d = ex.extend(&data).unwrap().diagram;
    let r = rezk_factorization(&FunctorSpec::Identity, &ex, &d).unwrap();
    assert!(r.holds());

    let r = rezk_factorization(&FunctorSpec::Constant(2), &ex, &d).unwrap();
    assert!(r.middle.dims().iter().all(|&n| n == 2));
    assert!(r.first.iter().chain(&r.second).all(Mat::is_identity));
}

#[test]
fn rezk_factorization_on_random_cubes() {
    let ex = star_excision(3);
    for i in 0..6 {
        let d = sample_cocartesian(&ex, &small_cfg(41), i);
        for spec in [FunctorSpec::Identity, FunctorSpec::SymmetricSquare, FunctorSpec::Constant(1)] {
            let r = rezk_factorization(&spec, &ex, &d).unwrap();
            assert!(r.holds(), "sample {i}, {}", spec.describe());
        }
    }
}

#[test]
fn rezk_rejects_non_cocartesian_input() {
    let ex = star_excision(2);
    let d = PosetDiagram::constant(square().poset().clone(), 1).twist_into(3, &Mat::zeros(1, 1)).unwrap();
    assert!(matches!(rezk_factorization(&FunctorSpec::Identity, &ex, &d), Err(KanError::NotCocartesian { .. })));
}

#[test]
fn excisiveness_examples() {
    let ex = star_excision(2);
    let cfg = SamplerConfig { samples: 20, seed: 3, ..Default::default() };
    assert!(check_excisive(&FunctorSpec::Constant(3), &ex, &cfg, Exec::Parallel).holds());
    let inj = SamplerConfig { injective: true, ..cfg.clone() };
    assert!(check_excisive(&FunctorSpec::Identity, &ex, &inj, Exec::Parallel).holds());
    let r = check_excisive(&FunctorSpec::TensorPower(2), &ex, &cfg, Exec::Parallel);
    assert!(!r.holds());
    let w = r.witness.unwrap();
    let replay = sample_cocartesian(&ex, &cfg, w.sample);
    assert_eq!(replay.dims(), w.dims.as_slice());
}

#[test]
fn face_transport_on_three_cube() {
    let l = FinLattice::powerset(3).unwrap();
    let cfg = SamplerConfig { samples: 6, max_dim: 2, seed: 9, ..Default::default() };
    for sigma in [ExcisableStructure::singletons(&l), ExcisableStructure::spherical(&l).unwrap()] {
        for a in l.elements() {
            let r = face_transport_check(&l, &sigma, a, &FunctorSpec::Identity, &cfg, Exec::Parallel).unwrap();
            assert!(r.holds(), "a = {}: {r:?}", l.label(a));
            assert!(r.mutations.checked > 0);
        }
    }
}

#[test]
fn face_transport_at_top_uses_the_whole_cube() {
    let l = FinLattice::powerset(2).unwrap();
    let cfg = SamplerConfig { samples: 4, seed: 2, ..Default::default() };
    let r = face_transport_check(
        &l,
        &ExcisableStructure::singletons(&l),
        l.top(),
        &FunctorSpec::SymmetricSquare,
        &cfg,
        Exec::Sequential,
    )
    .unwrap();
    assert!(r.holds());
    assert_eq!(r.faces_cocartesian.checked, 4);
}

#[test]
fn colimit_decomposition_covers() {
    for n in [2, 3] {
        let (shape, cover) = slice_cover(n, 1).unwrap();
        for i in 0..5 {
            let d = random_diagram(&mut rng_for(51, i), shape.clone(), &small_cfg(0));
            assert!(colim_decomposition(&cover, &d).unwrap().holds());
        }
    }
    let cube = FinLattice::powerset(3).unwrap();
    for i in 0..20 {
        let mut rng = rng_for(61, i);
        let cover = random_cover(&mut rng, cube.poset(), 3);
        let d = random_diagram(&mut rng, cube.poset().clone(), &small_cfg(0));
        assert!(colim_decomposition(&cover, &d).unwrap().holds(), "cover {i}");
    }
}

#[test]
fn semiadditivity_examples() {
    let r = semiadditive_square_check(&FunctorSpec::Identity, 1, 1);
    assert!(r.pushout && r.comparison_invertible);
    let r = semiadditive_square_check(&FunctorSpec::Constant(1), 2, 3);
    assert!(r.pushout && !r.comparison_invertible);
    let r = semiadditive_square_check(&FunctorSpec::DirectSumPower(3), 0, 2);
    assert!(r.comparison_invertible);
}

fn spec_strategy() -> impl Strategy<Value = FunctorSpec> {
    let leaf = prop_oneof![
        (0usize..3).prop_map(FunctorSpec::Constant),
        Just(FunctorSpec::Identity),
        (0usize..3).prop_map(FunctorSpec::DirectSumPower),
        (0usize..3).prop_map(FunctorSpec::TensorPower),
        Just(FunctorSpec::SymmetricSquare),
    ];
    leaf.prop_recursive(2, 4, 2, |inner| prop::collection::vec(inner, 1..3).prop_map(FunctorSpec::Composite))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn functor_specs_are_functors(spec in spec_strategy(), seed in 0u64..1000) {
        let mut rng = rng_for(seed, 0);
        let f = random_matrix(&mut rng, 2, 2, 3);
        let g = random_matrix(&mut rng, 2, 2, 3);
        prop_assert!(respects_composition(&spec, &f, &g));
    }

    #[test]
    fn left_extension_restricts_back(seed in 0u64..1000, n in 2usize..4) {
        let ex = star_excision(n);
        let data = random_diagram(&mut rng_for(seed, 1), ex.sigma_shape(), &small_cfg(0));
        let ext = ex.extend(&data).unwrap();
        prop_assert!(ext.restriction_is_iso());
        prop_assert!(is_cocartesian(&ext.diagram, &ex.sigma).holds);
    }

    #[test]
    fn right_extension_restricts_back(seed in 0u64..1000) {
        let cube = FinLattice::powerset(3).unwrap();
        let up: Vec<usize> = vec![3, 5, 6, 7];
        let data = random_diagram(&mut rng_for(seed, 2), Arc::new(cube.poset().full_subposet(&up)), &small_cfg(0));
        let ext = rkan(cube.poset().clone(), &up, &data).unwrap();
        prop_assert!(ext.restriction_is_iso());
    }

    #[test]
    fn diagram_json_round_trip(seed in 0u64..1000) {
        let l = FinLattice::powerset(2).unwrap();
        let d = random_diagram(&mut rng_for(seed, 3), l.poset().clone(), &small_cfg(0));
        let (_, back) = diagram_from_json(&diagram_to_json(&l, &d)).unwrap();
        prop_assert_eq!(back, d);
    }
}

//! The verification battery: one function per property, run from a single seed.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use hoch_engine::{
    alpha_beta_cubes, certify_sphere_dims, faithfulness_probe, from_vector_diagram, hocolim_poset, holim_poset,
    norm_map, perturb, quasi_iso, random_complex, random_system, replay_witness, sphere_calculus_check_over,
    CatDiagram, ChainComplex, ChainMap, CoefficientSystem, CubeContext, HochError, Hocolim, Holim, NormContext,
    ProbeOutcome, Shape, SliceContext, Witness,
};
use kan_vect::{
    c_sigma, colim_decomposition, face_transport_check, p_sigma, random_cover, random_diagram, rezk_factorization,
    rng_for, sample_cocartesian, slice_cover, sub_seed, t_sigma, theta, Excision, Exec, FunctorSpec, SamplerConfig,
    VectFunctor,
};
use lattice_core::{
    check_galois, complement_decomposition, meet_join_pair, smash_localization, ExcisableStructure, FinLattice,
    FinPoset,
};
use orbital_base::{check_homs_against_brute_force, diagonal_complement, FiniteGroup, OrbitCat};
use param_cubes::{basechange, build_cube, catalogue, coproduct_map, orbit_to_point, MaskPoset, Puncture};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::SuiteConfig;
use crate::report::{Fingerprint, PropertyReport, Recorder, Status, SuiteReport};

/// Property names in report order.
pub const PROPERTIES: [&str; 11] = [
    "colimit_decomposition",
    "complement_decomposition",
    "cubes_and_singletons",
    "excisive_approximation",
    "face_transport",
    "homotopy_engine",
    "lattice_laws",
    "norm",
    "orbital_base",
    "probe",
    "sphere_calculus",
];

type PropertyFn = fn(&SuiteConfig, u64, &mut Recorder) -> Result<(), String>;

fn property_fn(name: &str) -> PropertyFn {
    match name {
        "colimit_decomposition" => colimit_decomposition,
        "complement_decomposition" => complement_decomposition_property,
        "cubes_and_singletons" => cubes_and_singletons,
        "excisive_approximation" => excisive_approximation,
        "face_transport" => face_transport,
        "homotopy_engine" => homotopy_engine,
        "lattice_laws" => lattice_laws,
        "norm" => norm,
        "orbital_base" => orbital_base,
        "probe" => probe,
        "sphere_calculus" => sphere_calculus,
        other => unreachable!("unknown property {other}"),
    }
}

/// Stable 64-bit hash of a property name, used to derive its sub-seed.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

/// The seed a property receives from the suite seed.
pub fn property_seed(seed: u64, name: &str) -> u64 {
    sub_seed(seed, name_hash(name))
}

/// A stored failure: enough to rerun the property that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub property: String,
    pub config: SuiteConfig,
    pub payload: serde_json::Value,
}

impl WitnessFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// How a suite run is executed.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Directory for witness files; none means witnesses are kept in the report only.
    pub witness_dir: Option<PathBuf>,
    pub timings: bool,
    pub exec: Exec,
}

/// Runs one property and returns its report, writing a witness file when one is produced.
pub fn run_property(cfg: &SuiteConfig, name: &str, opts: &RunOptions) -> PropertyReport {
    let start = Instant::now();
    let mut rec = Recorder::default();
    if let Err(e) = property_fn(name)(cfg, property_seed(cfg.seed, name), &mut rec) {
        rec.check("evaluation", false, e);
    }
    let status = rec.status();
    let witness = rec.witness.take().and_then(|payload| {
        let dir = opts.witness_dir.as_ref()?;
        let file = WitnessFile { property: name.to_string(), config: cfg.clone(), payload };
        let path = dir.join(format!("{name}.witness.json"));
        std::fs::create_dir_all(dir).ok()?;
        std::fs::write(&path, serde_json::to_string_pretty(&file).ok()?).ok()?;
        Some(path.display().to_string())
    });
    PropertyReport {
        name: name.to_string(),
        status,
        checks: rec.checks,
        witness,
        elapsed_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs every selected property; properties may run concurrently, and the report
/// is assembled in property-name order.
pub fn run_suite(cfg: &SuiteConfig, opts: &RunOptions) -> Result<SuiteReport, String> {
    cfg.validate()?;
    let names: Vec<&str> = PROPERTIES.iter().copied().filter(|p| cfg.selects(p)).collect();
    let properties = opts.exec.map(names, |name| run_property(cfg, name, opts));
    Ok(SuiteReport { config: cfg.clone(), environment: Fingerprint::current(), properties })
}

/// Outcome of replaying a witness file.
#[derive(Clone, Debug, Serialize)]
pub struct Replay {
    pub property: String,
    /// Whether the recorded failure (or predicted failure) was observed again.
    pub reproduced: bool,
    pub detail: String,
}

/// Feeds a witness back through the operation that produced it.
pub fn replay(file: &WitnessFile) -> Result<Replay, String> {
    if file.property == "probe" {
        let witness: Witness = serde_json::from_value(file.payload["witness"].clone()).map_err(|e| e.to_string())?;
        let group = file.payload["group"].as_str().ok_or("probe witness lacks a group")?;
        let cc = free_cube_context(group).map_err(|e| e.to_string())?;
        let report = replay_witness(&cc, &witness).map_err(|e| e.to_string())?;
        let failing = report.failing_level().map(|l| l.level.clone());
        return Ok(Replay {
            property: file.property.clone(),
            reproduced: failing.as_deref() == Some(witness.failing_level.as_str()),
            detail: format!("unit fails at {}", failing.unwrap_or_else(|| "no level".into())),
        });
    }
    if !crate::suite::PROPERTIES.contains(&file.property.as_str()) {
        return Err(format!("unknown property {}", file.property));
    }
    let report = run_property(&file.config, &file.property, &RunOptions::default());
    let failed: Vec<String> =
        report.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.name.clone()).collect();
    Ok(Replay { property: file.property.clone(), reproduced: !failed.is_empty(), detail: failed.join("; ") })
}

fn orbit_cat(name: &str) -> Result<Arc<OrbitCat>, String> {
    Ok(Arc::new(OrbitCat::new(Arc::new(FiniteGroup::by_name(name).map_err(|e| e.to_string())?))))
}

fn free_cube_context(group: &str) -> Result<Arc<CubeContext>, HochError> {
    let ctx = SliceContext::for_group(group)?;
    let w = orbit_to_point(ctx.orbits(), "free").expect("every group has a free orbit");
    CubeContext::new(ctx, &w)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn sampler(cfg: &SuiteConfig, seed: u64, samples: usize) -> SamplerConfig {
    SamplerConfig { samples, max_dim: cfg.max_vector_dim, max_numerator: 3, seed, injective: false }
}

fn lattice_laws(cfg: &SuiteConfig, _seed: u64, rec: &mut Recorder) -> Result<(), String> {
    for n in 0..=cfg.lattice_rank() {
        let l = FinLattice::powerset(n).map_err(err)?;
        let comp = l.complementation().map_err(err)?;
        let mut failures = Vec::new();
        let mut count = 0usize;
        for x in l.elements() {
            for a in l.elements() {
                count += 4;
                let laws =
                    [l.meet(x, x) == x, l.join(x, x) == x, l.join(x, l.meet(x, a)) == x, l.meet(x, l.join(x, a)) == x];
                if laws.contains(&false) {
                    failures.push(format!("idempotence/absorption at ({}, {})", l.label(x), l.label(a)));
                }
            }
            let (left, right) = meet_join_pair(&l, &comp, x).map_err(err)?;
            let galois = check_galois(&left, &right).map_err(err)?;
            let smash = smash_localization(&l, &comp, x).map_err(err)?.check_adjunctions().map_err(err)?;
            count += 2;
            if !galois.holds {
                failures.push(format!("Galois pair at {}", l.label(x)));
            }
            if !smash.all_hold() {
                failures.push(format!("smash adjunctions at {}", l.label(x)));
            }
        }
        if !failures.is_empty() {
            rec.witness(json!({ "rank": n, "failures": failures }));
        }
        rec.check(format!("powerset({n})"), failures.is_empty(), format!("{count} laws, {} failures", failures.len()));
    }
    let m3 = FinLattice::diamond();
    rec.check(
        "diamond rejected",
        m3.distributivity_witness().is_some() && m3.complementation().is_err(),
        "not distributive",
    );
    Ok(())
}

fn complement_decomposition_property(cfg: &SuiteConfig, _seed: u64, rec: &mut Recorder) -> Result<(), String> {
    for n in 0..=cfg.lattice_rank() {
        let l = FinLattice::powerset(n).map_err(err)?;
        let comp = l.complementation().map_err(err)?;
        let bad: Vec<String> = l
            .elements()
            .filter(|&x| {
                complement_decomposition(&l, &comp, x)
                    .map(|d| !d.round_trips() || d.left.len() * d.right.len() != l.len())
                    .unwrap_or(true)
            })
            .map(|x| l.label(x).to_string())
            .collect();
        if !bad.is_empty() {
            rec.witness(json!({ "rank": n, "elements": bad }));
        }
        rec.check(format!("powerset({n})"), bad.is_empty(), format!("{} elements round-trip", l.len() - bad.len()));
    }
    Ok(())
}

/// Samples per (dimension, structure, element) for face transport, sized so the
/// default run checks well over two hundred diagrams.
fn transport_samples(n: usize) -> usize {
    match n {
        0 | 1 => 16,
        2 => 10,
        3 => 6,
        _ => 5,
    }
}

fn face_transport(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    if cfg.max_cube_dim == 0 {
        rec.skip("face transport", "no cube of positive dimension requested");
        return Ok(());
    }
    let mut diagrams = 0;
    let mut case = 0u64;
    for n in 1..=cfg.max_cube_dim {
        let l = FinLattice::powerset(n).map_err(err)?;
        let structures = [
            ("singletons", ExcisableStructure::singletons(&l)),
            ("spherical", ExcisableStructure::spherical(&l).map_err(err)?),
        ];
        for (label, sigma) in &structures {
            let mut failures = Vec::new();
            let (mut mutations, mut samples) = (0, 0);
            for a in l.elements() {
                case += 1;
                let functor = if case.is_multiple_of(2) { FunctorSpec::Identity } else { FunctorSpec::SymmetricSquare };
                let sc = sampler(cfg, sub_seed(seed, case), transport_samples(n));
                let r = face_transport_check(&l, sigma, a, &functor, &sc, Exec::Parallel).map_err(err)?;
                samples += r.samples;
                mutations += r.mutations.checked;
                if !r.holds() {
                    rec.witness(json!({ "dimension": n, "structure": label, "element": l.label(a), "sampler_seed": sc.seed, "samples": sc.samples, "report": r }));
                    failures.push(l.label(a).to_string());
                }
            }
            diagrams += samples;
            rec.check(
                format!("{n}-cube, {label}"),
                failures.is_empty() && mutations > 0,
                format!("{samples} diagrams, {mutations} mutations detected, failing elements {failures:?}"),
            );
        }
    }
    rec.check("sample count", diagrams >= 200 || cfg.max_cube_dim < 4, format!("{diagrams} diagrams in total"));
    Ok(())
}

fn excisive_approximation(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    if cfg.max_cube_dim == 0 {
        rec.skip("excisive approximation", "no cube of positive dimension requested");
        return Ok(());
    }
    for n in 1..=cfg.max_cube_dim {
        let l = FinLattice::powerset(n).map_err(err)?;
        let ex = Arc::new(Excision::from_structure(&l, &ExcisableStructure::singletons(&l)).map_err(err)?);
        let mut constant_ok = true;
        for k in 0..=3 {
            for dim in 0..=cfg.max_vector_dim {
                constant_ok &= theta(&FunctorSpec::Constant(k), &ex, dim).is_invertible();
                let s = p_sigma(Arc::new(FunctorSpec::Constant(k)), ex.clone(), dim, cfg.stage_cap).map_err(err)?;
                constant_ok &= s.stage == 0 && s.dim == k;
            }
        }
        rec.check(format!("{n}-cube constants"), constant_ok, "θ invertible, tower stable at stage 0");
        let degenerate = (0..=cfg.max_vector_dim).all(|d| t_sigma(&FunctorSpec::Identity, &ex, d) == 0)
            && (0..=cfg.max_vector_dim).all(|d| c_sigma(&ex, d).diagram.total_dim() == d);
        rec.check(format!("{n}-cube reduced degeneracy"), degenerate, "T_σ of the identity vanishes");
        let sc = sampler(cfg, sub_seed(seed, n as u64), 10);
        let mut cartesian = 0;
        let mut failures = Vec::new();
        for i in 0..sc.samples {
            let d = sample_cocartesian(&ex, &sc, i);
            for spec in [
                FunctorSpec::Identity,
                FunctorSpec::SymmetricSquare,
                FunctorSpec::TensorPower(2),
                FunctorSpec::Constant(1),
            ] {
                let r = rezk_factorization(&spec, &ex, &d).map_err(err)?;
                if r.middle_cartesian.holds && r.holds() {
                    cartesian += 1;
                } else {
                    failures.push(format!("sample {i}, {}", spec.describe()));
                }
            }
        }
        if !failures.is_empty() {
            rec.witness(json!({ "dimension": n, "sampler_seed": sc.seed, "failures": failures }));
        }
        rec.check(
            format!("{n}-cube middle cube"),
            failures.is_empty(),
            format!("{cartesian} factorizations with cartesian middle cube"),
        );
    }
    Ok(())
}

fn orbital_base(cfg: &SuiteConfig, _seed: u64, rec: &mut Recorder) -> Result<(), String> {
    for g in &cfg.groups {
        let o = orbit_cat(g)?;
        let atomic = o.category().check_atomic();
        rec.check(format!("{g} atomic"), atomic.holds, format!("{} objects", o.len()));
        rec.check(format!("{g} hom sets"), check_homs_against_brute_force(&o).map_err(err)?, "match brute force");
        let mut checked = 0;
        let mut bad = Vec::new();
        for i in 0..o.len() {
            for j in 0..o.len() {
                for w in o.hom(i, j) {
                    let dc = diagonal_complement(w).map_err(err)?;
                    let n = w.source().len();
                    let pairs = (0..n)
                        .flat_map(|x| (0..n).map(move |y| (x, y)))
                        .filter(|&(x, y)| w.apply(x) == w.apply(y))
                        .count();
                    checked += 1;
                    if n + dc.complement.len() != pairs || !dc.splitting.is_iso() {
                        bad.push(format!("{} -> {}", o.object_name(i), o.object_name(j)));
                    }
                }
            }
        }
        if !bad.is_empty() {
            rec.witness(json!({ "group": g, "maps": bad }));
        }
        rec.check(
            format!("{g} diagonal complements"),
            bad.is_empty(),
            format!("{checked} maps, pair counts by enumeration"),
        );
    }
    Ok(())
}

fn cubes_and_singletons(cfg: &SuiteConfig, _seed: u64, rec: &mut Recorder) -> Result<(), String> {
    for g in &cfg.groups {
        let o = orbit_cat(g)?;
        let mut bad = Vec::new();
        let entries = catalogue(&o, 3);
        let mut basechanges = 0;
        for entry in &entries {
            let cube = build_cube(&o, &entry.w).map_err(err)?;
            let inc = cube.singleton_inclusion().map_err(err)?;
            let checks = cube.check_singletons(&inc).map_err(err)?;
            let top =
                cube.poset().puncture(Puncture::Top).map_err(err)?.is_down_closed_in(cube.poset()).map_err(err)?;
            let boolean = cube.check_boolean().map_err(err)?;
            let mut stable = true;
            let v = o.classify(entry.w.target()).ok_or("catalogue targets are orbits")?;
            for u in 0..o.len() {
                for b in o.hom(u, v) {
                    let bc = basechange(&o, &cube, b).map_err(err)?;
                    stable &= bc.cube_compatible() && bc.singletons_compatible(&cube).map_err(err)?;
                    basechanges += 1;
                }
            }
            if !(boolean && checks.fully_faithful && checks.natural && checks.down_closed && top && stable) {
                bad.push(json!({ "w": entry.name, "boolean": boolean, "fully_faithful": checks.fully_faithful, "natural": checks.natural, "singletons_down_closed": checks.down_closed, "top_puncture_down_closed": top, "basechange": stable }));
            }
        }
        let ok = bad.is_empty();
        if !ok {
            rec.witness(json!({ "group": g, "cubes": bad }));
        }
        rec.check(g.clone(), ok, format!("{} cubes, {basechanges} basechanges", entries.len()));
    }
    Ok(())
}

fn punctured_square() -> Result<Arc<Shape>, String> {
    let poset = MaskPoset::powerset(2).map_err(err)?.without_top().to_fin_poset().map_err(err)?;
    Ok(Shape::from_poset(&poset))
}

fn shifted(h: &BTreeMap<i32, usize>, k: i32) -> BTreeMap<i32, usize> {
    h.iter().map(|(&n, &r)| (n + k, r)).collect()
}

fn homotopy_engine(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    const SAMPLES: u64 = 50;
    let square = punctured_square()?;
    let mut bad = Vec::new();
    for i in 0..SAMPLES {
        let x = random_complex(&mut rng_for(seed, i), cfg.max_complex_dim);
        // Object 0 is the bottom of the punctured square.
        let values = vec![x.clone(), ChainComplex::zero(), ChainComplex::zero()];
        let d = CatDiagram::from_covers(square.clone(), values, |_, _| ChainMap::zero()).map_err(err)?;
        if hocolim_poset(&d).map_err(err)?.homology() != shifted(&x.homology(), 1) {
            bad.push(i);
        }
    }
    rec.check("punctured square suspends", bad.is_empty(), format!("{SAMPLES} complexes, failing samples {bad:?}"));

    let top_dim = cfg.max_cube_dim.clamp(1, 3);
    let cube = Arc::new(MaskPoset::powerset(top_dim).map_err(err)?.to_fin_poset().map_err(err)?);
    let top = cube.top().expect("cubes have a top");
    let sc = sampler(cfg, seed, SAMPLES as usize);
    let mut bad = Vec::new();
    for i in 0..SAMPLES {
        let d =
            from_vector_diagram(&random_diagram(&mut rng_for(seed ^ 0x7097, i), cube.clone(), &sc), (i % 3) as i32 - 1)
                .map_err(err)?;
        let h = Hocolim::new(&d).map_err(err)?;
        let legs: Vec<ChainMap> =
            (0..cube.len()).map(|s| d.arrow_map(s, top).expect("top is terminal").clone()).collect();
        if !quasi_iso(&h.factor_cocone(d.value(top), &legs), h.complex(), d.value(top)).quasi_iso {
            bad.push(i);
        }
    }
    rec.check(
        "top element",
        bad.is_empty(),
        format!("{SAMPLES} diagrams on the {top_dim}-cube, failing samples {bad:?}"),
    );

    let shape = Arc::new(MaskPoset::powerset(2).map_err(err)?.without_top().to_fin_poset().map_err(err)?);
    let mut bad = Vec::new();
    for i in 0..SAMPLES {
        let mut rng = rng_for(seed ^ 0x9e27, i);
        let d = from_vector_diagram(&random_diagram(&mut rng, shape.clone(), &sc), 0).map_err(err)?;
        let (p, eta) = perturb(&d, &mut rng).map_err(err)?;
        let (h, hp) = (Hocolim::new(&d).map_err(err)?, Hocolim::new(&p).map_err(err)?);
        let (l, lp) = (Holim::new(&d).map_err(err)?, Holim::new(&p).map_err(err)?);
        let colim_ok = quasi_iso(&h.induced(&hp, &eta), h.complex(), hp.complex()).quasi_iso;
        let lim_ok = quasi_iso(&lp.induced(&l, &eta), l.complex(), lp.complex()).quasi_iso;
        if !(colim_ok && lim_ok) {
            bad.push(i);
        }
    }
    rec.check(
        "quasi-isomorphism invariance",
        bad.is_empty(),
        format!("{SAMPLES} perturbed diagrams, failing samples {bad:?}"),
    );
    let limit = holim_poset(
        &CatDiagram::from_covers(
            square,
            vec![ChainComplex::concentrated(0, 1), ChainComplex::zero(), ChainComplex::zero()],
            |_, _| ChainMap::zero(),
        )
        .map_err(err)?,
    )
    .map_err(err)?;
    rec.check(
        "punctured square limit",
        limit.homology() == BTreeMap::from([(0, 1)]),
        "holim of a bottom-only square is its bottom value",
    );
    Ok(())
}

fn sphere_calculus(cfg: &SuiteConfig, _seed: u64, rec: &mut Recorder) -> Result<(), String> {
    for g in &cfg.groups {
        let o = orbit_cat(g)?;
        let entries = catalogue(&o, 2);
        let uncertified: Vec<&str> = entries
            .iter()
            .filter(|e| !certify_sphere_dims(&o, &e.w).map(|c| c.certified).unwrap_or(false))
            .map(|e| e.name.as_str())
            .collect();
        if !uncertified.is_empty() {
            rec.witness(json!({ "group": g, "uncertified": uncertified }));
        }
        rec.check(format!("{g} certificates"), uncertified.is_empty(), format!("{} maps", entries.len()));
        let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_target.entry(o.classify(e.w.target()).ok_or("catalogue targets are orbits")?).or_default().push(i);
        }
        let (mut pairs, mut failing) = (0, Vec::new());
        for (&v, members) in &by_target {
            let ctx = SliceContext::over(o.clone(), o.object(v).clone()).map_err(err)?;
            for &i in members {
                for &j in members {
                    let report = sphere_calculus_check_over(&ctx, &entries[i].w, &entries[j].w).map_err(err)?;
                    pairs += 1;
                    if !report.holds {
                        failing.push(format!("({}, {})", entries[i].name, entries[j].name));
                    }
                }
            }
        }
        if !failing.is_empty() {
            rec.witness(json!({ "group": g, "pairs": failing }));
        }
        rec.check(format!("{g} dimension identities"), failing.is_empty(), format!("{pairs} pairs at every level"));
    }
    Ok(())
}

fn norm(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    const SAMPLES: u64 = 8;
    let trivial = SliceContext::for_group("trivial").map_err(err)?;
    let point = orbit_to_point(trivial.orbits(), "free").expect("the trivial group has a free orbit");
    let mut ok = true;
    for points in 1..=3 {
        let nc = NormContext::new(trivial.clone(), &coproduct_map(&vec![&point; points])).map_err(err)?;
        for i in 0..SAMPLES {
            let x = random_system(&trivial, &mut rng_for(seed, i), cfg.max_complex_dim);
            ok &= norm_map(&nc, &x).map_err(err)?.all_quasi_iso();
        }
    }
    rec.check(
        "trivial group",
        ok,
        format!("norm is a quasi-isomorphism for folds of 1..=3 points, {SAMPLES} systems each"),
    );
    for g in cfg.groups.iter().filter(|g| g.as_str() != "S3") {
        let ctx = SliceContext::for_group(g).map_err(err)?;
        let nc =
            NormContext::new(ctx.clone(), &orbit_to_point(ctx.orbits(), "free").expect("free orbit")).map_err(err)?;
        let report = norm_map(&nc, &CoefficientSystem::unit(ctx.clone())).map_err(err)?;
        let fixed = &report.levels[ctx.orbits().point_index()];
        let confirmed = fixed.lower_homology.is_empty() && !fixed.upper_homology.is_empty() && !fixed.quasi_iso;
        rec.predicted(
            format!("{g} free orbit norm"),
            confirmed,
            format!(
                "lower {:?} vs upper {:?} at {}: not semiadditive",
                fixed.lower_homology, fixed.upper_homology, fixed.level
            ),
        );
        rec.check(format!("{g} norm natural"), report.is_natural(), "norm commutes with restrictions");
        let mut passes = 0;
        for i in 0..SAMPLES {
            let x = random_system(&ctx, &mut rng_for(seed ^ 0xab, i), cfg.max_complex_dim);
            let ab = alpha_beta_cubes(&nc, &x).map_err(err)?;
            if ab.checks_pass() {
                passes += 1;
            } else {
                rec.witness(json!({ "group": g, "system": hoch_engine::SystemFile::from_system(&x) }));
            }
        }
        rec.check(
            format!("{g} α and β"),
            passes == SAMPLES,
            format!("{passes}/{SAMPLES} systems pass singleton checks"),
        );
    }
    if cfg.has_group("S3") {
        rec.skip("S3 free orbit norm", "the free fibre has six orbits, beyond the fibrewise cube cap");
    }
    Ok(())
}

fn probe(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    const ATTEMPTS: usize = 200;
    if !cfg.has_group("C2") {
        rec.skip("free orbit probe", "runs over C2 only");
        return Ok(());
    }
    let cc = free_cube_context("C2").map_err(err)?;
    match faithfulness_probe(&cc, seed, ATTEMPTS).map_err(err)? {
        ProbeOutcome::Witness { witness, report } => {
            let replayed = replay_witness(&cc, &witness).map_err(err)?;
            let same = replayed.failing_level().map(|l| l.level.as_str()) == Some(witness.failing_level.as_str());
            let level = report.failing_level().expect("witness has a failing level");
            rec.predicted(
                "C2 free orbit probe",
                same,
                format!(
                    "attempt {} fails at {}: {:?} vs {:?}; replay {}",
                    witness.attempt,
                    level.level,
                    level.source_homology,
                    level.target_homology,
                    if same { "reproduces it" } else { "differs" }
                ),
            );
            rec.witness(json!({ "group": "C2", "witness": witness }));
        }
        ProbeOutcome::ExhaustedNoWitness { attempts } => {
            rec.check("C2 free orbit probe", false, format!("no witness in {attempts} attempts"));
        }
    }
    Ok(())
}

fn colimit_decomposition(cfg: &SuiteConfig, seed: u64, rec: &mut Recorder) -> Result<(), String> {
    const COVERS: u64 = 100;
    let sc = sampler(cfg, seed, 1);
    let mut shapes: Vec<(String, Arc<FinPoset>, Option<kan_vect::Cover>)> = Vec::new();
    for n in [2usize, 3] {
        if n <= cfg.max_cube_dim.max(2) {
            for block in 1..(1usize << n) - 1 {
                let (shape, cover) = slice_cover(n, block).map_err(err)?;
                shapes.push((format!("punctured {n}-cube, block {block:b}"), shape, Some(cover)));
            }
        }
    }
    for n in 1..=cfg.max_cube_dim.max(1) {
        let l = FinLattice::powerset(n).map_err(err)?;
        shapes.push((format!("{n}-cube"), l.poset().clone(), None));
    }
    let (mut slice_checked, mut random_checked) = (0, 0);
    let mut failures = Vec::new();
    let mut rng = rng_for(seed, COVERS);
    for i in 0..COVERS {
        let (label, shape, fixed) = &shapes[i as usize % shapes.len()];
        let cover = match fixed {
            Some(c) => {
                slice_checked += 1;
                c.clone()
            }
            None => {
                random_checked += 1;
                random_cover(&mut rng, shape, 3)
            }
        };
        let d = random_diagram(&mut rng, shape.clone(), &sc);
        if !colim_decomposition(&cover, &d).map_err(err)?.holds() {
            failures.push(format!("cover {i} on {label}"));
        }
    }
    if !failures.is_empty() {
        rec.witness(json!({ "failures": failures }));
    }
    rec.check(
        "direct and decomposed colimits",
        failures.is_empty(),
        format!("{COVERS} covers: {slice_checked} slice covers of punctured cubes, {random_checked} random covers"),
    );
    Ok(())
}

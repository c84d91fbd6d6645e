use std::sync::Arc;

use lattice_core::{all_faces, induced_excisable, ExcisableStructure, FinLattice};
use serde::Serialize;

use crate::approx::Excision;
use crate::diagram::PosetDiagram;
use crate::error::KanError;
use crate::excisive::sample_cocartesian;
use crate::exec::Exec;
use crate::functor::{apply_functor, FunctorSpec};
use crate::kan::{is_cartesian, is_cocartesian, rkan};
use crate::linalg::{q, Mat};
use crate::random::{random_diagram, random_interval_diagram, rng_for, SamplerConfig};

/// Counts for one implication checked over many samples.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubCheck {
    pub checked: usize,
    /// Samples where the hypothesis did not hold.
    pub vacuous: usize,
    pub failures: usize,
    pub witness: Option<String>,
}

impl SubCheck {
    fn record(&mut self, premise: bool, conclusion: bool, describe: impl FnOnce() -> String) {
        if !premise {
            self.vacuous += 1;
            return;
        }
        self.checked += 1;
        if !conclusion {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(describe());
            }
        }
    }

    fn merge(&mut self, other: SubCheck) {
        self.checked += other.checked;
        self.vacuous += other.vacuous;
        self.failures += other.failures;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of transporting (co)cartesianness along shifts and faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub element: String,
    pub samples: usize,
    /// Shifting a cocartesian diagram by `x∨−` keeps it cocartesian.
    pub shifts_cocartesian: SubCheck,
    /// Every face of a cocartesian diagram is cocartesian for the induced structure.
    pub faces_cocartesian: SubCheck,
    /// Cartesian faces force a cartesian diagram.
    pub faces_force_cartesian: SubCheck,
    /// The same implication after applying the functor.
    pub functor_transfer: SubCheck,
    /// Shifting any diagram by a non-bottom element makes it cartesian.
    pub shifts_cartesian: SubCheck,
    /// Corrupted diagrams that the checks must reject; `failures` counts undetected ones.
    pub mutations: SubCheck,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        [
            &self.shifts_cocartesian,
            &self.faces_cocartesian,
            &self.faces_force_cartesian,
            &self.functor_transfer,
            &self.shifts_cartesian,
            &self.mutations,
        ]
        .iter()
        .all(|c| c.holds())
    }

    fn merge(&mut self, other: TransportReport) {
        self.samples += other.samples;
        self.shifts_cocartesian.merge(other.shifts_cocartesian);
        self.faces_cocartesian.merge(other.faces_cocartesian);
        self.faces_force_cartesian.merge(other.faces_force_cartesian);
        self.functor_transfer.merge(other.functor_transfer);
        self.shifts_cartesian.merge(other.shifts_cartesian);
        self.mutations.merge(other.mutations);
    }
}

/// The faces of `L` in direction `a`, as reindexing data.
struct Faces {
    domain: Arc<lattice_core::FinPoset>,
    induced: Vec<bool>,
    images: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl Faces {
    fn all_cartesian(&self, x: &PosetDiagram) -> Result<bool, KanError> {
        for img in &self.images {
            if !is_cartesian(&x.reindex(self.domain.clone(), img)?).holds {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Projection killing the last basis vector.
fn corank_one(n: usize) -> Mat {
    let mut p = Mat::identity(n);
    p.set(n - 1, n - 1, q(0));
    p
}

/// Checks the transport statements on random diagrams over `l` with structure `sigma`, in direction `a`.
pub fn face_transport_check(
    l: &FinLattice,
    sigma: &ExcisableStructure,
    a: usize,
    functor: &FunctorSpec,
    cfg: &SamplerConfig,
    exec: Exec,
) -> Result<TransportReport, KanError> {
    let comp = l.complementation()?;
    let ex = Excision::from_structure(l, sigma)?;
    let (induced, local, _) = induced_excisable(l, &comp, sigma, a)?;
    let faces: Vec<_> = all_faces(l, &comp, a)?;
    let faces = Faces {
        domain: local.poset().clone(),
        induced: induced.mask().to_vec(),
        images: faces.iter().map(|f| f.map.as_slice().to_vec()).collect(),
        labels: faces.iter().map(|f| l.label(f.triple.d).to_string()).collect(),
    };
    let shape = l.poset().clone();
    let a_comp = comp.comp[a];
    let coatoms: Vec<usize> =
        l.elements().filter(|&y| y == l.top() || shape.covers().contains(&(y, l.top()))).collect();

    let per_sample = exec.map((0..cfg.samples).collect(), |i| -> Result<TransportReport, KanError> {
        let mut r = TransportReport { samples: 1, ..Default::default() };
        let mut rng = rng_for(cfg.seed ^ 0x5eed_face, i as u64);
        let x = sample_cocartesian(&ex, cfg, i);
        let arbitrary = random_interval_diagram(&mut rng, shape.clone(), cfg);
        let top_data = random_diagram(&mut rng, Arc::new(shape.full_subposet(&coatoms)), cfg);
        let strongly_cartesian = rkan(shape.clone(), &coatoms, &top_data)?.diagram;
        let along_complement = {
            let base = random_interval_diagram(&mut rng, shape.clone(), cfg);
            let images: Vec<usize> = l.elements().map(|y| l.meet(y, a_comp)).collect();
            base.reindex(shape.clone(), &images)?
        };

        for y in l.elements() {
            let shifted = ex.shift(&x, y);
            let check = is_cocartesian(&shifted, &ex.sigma);
            r.shifts_cocartesian.record(true, check.holds, || format!("sample {i}, shift by {}", l.label(y)));
        }
        for (img, d) in faces.images.iter().zip(&faces.labels) {
            let face = x.reindex(faces.domain.clone(), img)?;
            let check = is_cocartesian(&face, &faces.induced);
            r.faces_cocartesian.record(true, check.holds, || format!("sample {i}, face through {d}"));
        }
        for (name, cand) in
            [("cocartesian", &x), ("strongly cartesian", &strongly_cartesian), ("pulled back", &along_complement)]
        {
            let premise = faces.all_cartesian(cand)?;
            r.faces_force_cartesian.record(premise, is_cartesian(cand).holds, || format!("sample {i}, {name} diagram"));
            let applied = apply_functor(functor, cand)?;
            let premise = faces.all_cartesian(&applied)?;
            r.functor_transfer.record(premise, is_cartesian(&applied).holds, || format!("sample {i}, {name} diagram"));
        }
        for cand in [&x, &arbitrary] {
            for y in l.elements().filter(|&y| y != l.bottom()) {
                let check = is_cartesian(&ex.shift(cand, y));
                r.shifts_cartesian.record(true, check.holds, || format!("sample {i}, shift by {}", l.label(y)));
            }
        }

        // A cartesian diagram with its maps out of the bottom made singular is no longer cartesian.
        for cand in [&strongly_cartesian, &along_complement] {
            let n = cand.dim(l.bottom());
            if n > 0 && is_cartesian(cand).holds && l.len() > 1 {
                let broken = cand.twist_out_of(l.bottom(), &corank_one(n))?;
                let broken_cartesian = is_cartesian(&broken).holds;
                let premise = faces.all_cartesian(&broken)?;
                r.faces_force_cartesian.record(premise, broken_cartesian, || format!("sample {i}, corrupted diagram"));
                let caught = !broken_cartesian;
                r.mutations.record(true, caught, || format!("sample {i}, singular maps out of the bottom"));
            }
        }
        // A cocartesian diagram with a singular map into the top is no longer cocartesian.
        let top = l.top();
        if !ex.sigma[top] && x.dim(top) > 0 {
            let broken = x.twist_into(top, &corank_one(x.dim(top)))?;
            let caught = !is_cocartesian(&broken, &ex.sigma).holds;
            r.mutations.record(true, caught, || format!("sample {i}, singular maps into the top"));
        }
        Ok(r)
    });

    let mut report = TransportReport { element: l.label(a).into(), ..Default::default() };
    for r in per_sample {
        report.merge(r?);
    }
    Ok(report)
}

use serde::Serialize;

use crate::approx::Excision;
use crate::diagram::PosetDiagram;
use crate::exec::Exec;
use crate::functor::{apply_functor, VectFunctor};
use crate::kan::{is_cartesian, ComponentWitness};
use crate::random::{random_diagram, rng_for, sub_seed, SamplerConfig};

/// A failing random sample, enough to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleWitness {
    pub sample: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub component: ComponentWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExcisiveReport {
    pub functor: String,
    pub samples: usize,
    pub passed: usize,
    pub failed: usize,
    /// The failing sample of smallest total dimension.
    pub witness: Option<SampleWitness>,
}

impl ExcisiveReport {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

/// The `index`-th random cocartesian diagram: random data on the subset, left Kan extended.
pub fn sample_cocartesian(ex: &Excision, cfg: &SamplerConfig, index: usize) -> PosetDiagram {
    let mut rng = rng_for(cfg.seed, index as u64);
    let data = random_diagram(&mut rng, ex.sigma_shape(), cfg);
    ex.extend(&data).expect("the subset is downward closed").diagram
}

/// Applies `f` to random cocartesian diagrams and tests whether the results are cartesian.
pub fn check_excisive(f: &dyn VectFunctor, ex: &Excision, cfg: &SamplerConfig, exec: Exec) -> ExcisiveReport {
    let outcomes = exec.map((0..cfg.samples).collect(), |i| {
        let d = sample_cocartesian(ex, cfg, i);
        let fd = apply_functor(f, &d).expect("functors preserve functoriality");
        is_cartesian(&fd).witness.map(|w| SampleWitness {
            sample: i,
            seed: sub_seed(cfg.seed, i as u64),
            dims: d.dims().to_vec(),
            component: w,
        })
    });
    let failures: Vec<SampleWitness> = outcomes.into_iter().flatten().collect();
    let witness = failures.iter().min_by_key(|w| (w.dims.iter().sum::<usize>(), w.sample)).cloned();
    ExcisiveReport {
        functor: f.describe(),
        samples: cfg.samples,
        passed: cfg.samples - failures.len(),
        failed: failures.len(),
        witness,
    }
}

//! Seeded search for coefficient systems whose suspension-loop unit fails to be
//! a quasi-isomorphism.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coefficient::{random_system, SystemFile};
use crate::error::HochError;
use crate::suspension::{unit_check, CubeContext, UnitReport};

/// Largest total dimension of a probed system.
pub const PROBE_MAX_TOTAL_DIM: usize = 6;

/// A system whose unit fails, with everything needed to replay it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub attempt: usize,
    pub system: SystemFile,
    pub failing_level: String,
}

/// Result of the search.
#[derive(Clone, Debug, Serialize)]
pub enum ProbeOutcome {
    Witness { witness: Witness, report: UnitReport },
    ExhaustedNoWitness { attempts: usize },
}

impl ProbeOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ProbeOutcome::Witness { witness, .. } => Some(witness),
            ProbeOutcome::ExhaustedNoWitness { .. } => None,
        }
    }
}

/// Tries up to `attempts` seeded random systems of total dimension at most
/// [`PROBE_MAX_TOTAL_DIM`], skipping zero systems, and returns the first one
/// whose unit `X → Ω^w Σ^w X` fails at some level.
pub fn faithfulness_probe(cc: &CubeContext, seed: u64, attempts: usize) -> Result<ProbeOutcome, HochError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..attempts {
        let x = random_system(cc.context(), &mut rng, PROBE_MAX_TOTAL_DIM);
        if x.total_dim() == 0 {
            continue;
        }
        let report = unit_check(&x, cc)?;
        if let Some(level) = report.failing_level() {
            let witness =
                Witness { seed, attempt, system: SystemFile::from_system(&x), failing_level: level.level.clone() };
            return Ok(ProbeOutcome::Witness { witness, report });
        }
    }
    Ok(ProbeOutcome::ExhaustedNoWitness { attempts })
}

/// Recomputes the unit for a stored witness.
pub fn replay_witness(cc: &CubeContext, witness: &Witness) -> Result<UnitReport, HochError> {
    let x = witness.system.to_system(cc.context().clone())?;
    unit_check(&x, cc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficient::SliceContext;
    use param_cubes::orbit_to_point;

    #[test]
    fn free_orbit_over_c2_has_a_replayable_witness() {
        let ctx = SliceContext::for_group("C2").unwrap();
        let w = orbit_to_point(ctx.orbits(), "free").unwrap();
        let cc = CubeContext::new(ctx, &w).unwrap();
        let outcome = faithfulness_probe(&cc, 7, 50).unwrap();
        let witness = outcome.witness().expect("a witness exists").clone();
        let replayed = replay_witness(&cc, &witness).unwrap();
        assert_eq!(replayed.failing_level().unwrap().level, witness.failing_level);
    }

    #[test]
    fn trivial_group_has_no_witness() {
        let ctx = SliceContext::for_group("trivial").unwrap();
        let fold = param_cubes::coproduct_map(&[&orbit_to_point(ctx.orbits(), "free").unwrap(); 2]);
        let cc = CubeContext::new(ctx, &fold).unwrap();
        assert!(faithfulness_probe(&cc, 1, 20).unwrap().witness().is_none());
    }
}

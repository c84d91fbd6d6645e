use std::sync::Arc;

use lattice_core::FinPoset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::PosetDiagram;
use crate::linalg::{q_frac, Mat};

/// Parameters shared by the random diagram generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub samples: usize,
    /// Largest dimension at any element.
    pub max_dim: usize,
    /// Entries are `n/d` with `|n| ≤ max_numerator` and `d ∈ {1, 2}`.
    pub max_numerator: i64,
    pub seed: u64,
    /// Restrict star data to injective maps.
    pub injective: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { samples: 32, max_dim: 4, max_numerator: 3, seed: 0, injective: false }
    }
}

/// Independent, replayable seed for the `index`-th sample of a run.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, index))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, max_numerator: i64) -> Mat {
    Mat::from_fn(rows, cols, |_, _| q_frac(rng.gen_range(-max_numerator..=max_numerator), rng.gen_range(1..=2)))
}

pub fn random_invertible(rng: &mut impl Rng, n: usize, max_numerator: i64) -> Mat {
    loop {
        let m = random_matrix(rng, n, n, max_numerator);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A matrix of full column rank; needs `rows ≥ cols`.
pub fn random_injective(rng: &mut impl Rng, rows: usize, cols: usize, max_numerator: i64) -> Mat {
    assert!(rows >= cols, "no injection from dimension {cols} into {rows}");
    loop {
        let m = random_matrix(rng, rows, cols, max_numerator);
        if m.is_injective() {
            return m;
        }
    }
}

/// Whether every non-bottom element is minimal among non-bottom elements.
pub fn is_star(shape: &FinPoset) -> bool {
    match shape.bottom() {
        None => false,
        Some(b) => (0..shape.len()).all(|x| x == b || !(0..shape.len()).any(|y| y != b && shape.lt(y, x))),
    }
}

/// Arbitrary maps out of the bottom of a star-shaped poset.
pub fn random_star_diagram(rng: &mut impl Rng, shape: Arc<FinPoset>, cfg: &SamplerConfig) -> PosetDiagram {
    let b = shape.bottom().expect("star has a bottom");
    let base = rng.gen_range(0..=cfg.max_dim);
    let dims: Vec<usize> = (0..shape.len())
        .map(|x| {
            if x == b {
                base
            } else if cfg.injective {
                rng.gen_range(base..=cfg.max_dim.max(base))
            } else {
                rng.gen_range(0..=cfg.max_dim)
            }
        })
        .collect();
    let maps: Vec<Mat> = (0..shape.len())
        .map(|x| {
            if cfg.injective {
                random_injective(rng, dims[x], base, cfg.max_numerator)
            } else {
                random_matrix(rng, dims[x], base, cfg.max_numerator)
            }
        })
        .collect();
    PosetDiagram::new(shape, dims, |_, hi| maps[hi].clone()).expect("stars have no composites")
}

/// A sum of interval modules `[birth, death)` in random bases.
pub fn random_interval_diagram(rng: &mut impl Rng, shape: Arc<FinPoset>, cfg: &SamplerConfig) -> PosetDiagram {
    let n = shape.len();
    let mut dims = vec![0usize; n];
    let mut generators: Vec<(usize, Option<usize>)> = Vec::new();
    for _ in 0..(2 * cfg.max_dim) {
        let birth = rng.gen_range(0..n);
        let later: Vec<usize> = (0..n).filter(|&k| shape.lt(birth, k)).collect();
        let death =
            if later.is_empty() || rng.gen_bool(0.4) { None } else { Some(later[rng.gen_range(0..later.len())]) };
        let alive = |x: usize| shape.leq(birth, x) && death.is_none_or(|k| !shape.leq(k, x));
        if (0..n).any(|x| alive(x) && dims[x] == cfg.max_dim) {
            continue;
        }
        for (x, d) in dims.iter_mut().enumerate() {
            if alive(x) {
                *d += 1;
            }
        }
        generators.push((birth, death));
    }
    let alive_at = |x: usize| -> Vec<usize> {
        generators
            .iter()
            .enumerate()
            .filter(|(_, &(b, k))| shape.leq(b, x) && k.is_none_or(|k| !shape.leq(k, x)))
            .map(|(i, _)| i)
            .collect()
    };
    let bases: Vec<Vec<usize>> = (0..n).map(alive_at).collect();
    let twists: Vec<Mat> = dims.iter().map(|&d| random_invertible(rng, d, cfg.max_numerator)).collect();
    let inverses: Vec<Mat> = twists.iter().map(|t| t.inverse().expect("invertible")).collect();
    PosetDiagram::new(shape.clone(), dims.clone(), |lo, hi| {
        let plain = Mat::from_fn(dims[hi], dims[lo], |i, j| {
            if bases[hi][i] == bases[lo][j] {
                crate::linalg::q(1)
            } else {
                crate::linalg::q(0)
            }
        });
        twists[hi].mul(&plain).mul(&inverses[lo])
    })
    .expect("interval modules are functors")
}

/// Random data on a poset: arbitrary maps on stars, interval sums elsewhere.
pub fn random_diagram(rng: &mut impl Rng, shape: Arc<FinPoset>, cfg: &SamplerConfig) -> PosetDiagram {
    if is_star(&shape) && shape.len() > 1 {
        random_star_diagram(rng, shape, cfg)
    } else {
        random_interval_diagram(rng, shape, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::FinLattice;

    #[test]
    fn interval_diagrams_respect_the_cap() {
        let cube = FinLattice::powerset(3).unwrap();
        let cfg = SamplerConfig { max_dim: 2, ..Default::default() };
        for i in 0..10 {
            let d = random_interval_diagram(&mut rng_for(7, i), cube.poset().clone(), &cfg);
            assert!(d.dims().iter().all(|&n| n <= 2));
        }
    }

    #[test]
    fn star_detection() {
        let sq = FinLattice::powerset(2).unwrap();
        assert!(is_star(&sq.poset().full_subposet(&[0, 1, 2])));
        assert!(!is_star(sq.poset()));
    }

    #[test]
    fn seeds_replay() {
        let a = random_matrix(&mut rng_for(3, 4), 2, 2, 3);
        let b = random_matrix(&mut rng_for(3, 4), 2, 2, 3);
        assert_eq!(a, b);
        assert_ne!(sub_seed(3, 4), sub_seed(3, 5));
    }
}

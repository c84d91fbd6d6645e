use std::sync::Arc;

use lattice_core::FinPoset;
use rand::Rng;
use serde::Serialize;

use crate::diagram::PosetDiagram;
use crate::error::KanError;
use crate::limits::{colim, colim_over};
use crate::linalg::Mat;

/// Downward-closed pieces of a poset indexed by a poset, with `j ≤ k` meaning piece `j` lies in piece `k`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub index: Arc<FinPoset>,
    /// Ambient indices of each piece, ascending.
    pub pieces: Vec<Vec<usize>>,
}

fn label_set(shape: &FinPoset, piece: &[usize]) -> String {
    let ls: Vec<&str> = piece.iter().map(|&p| shape.label(p)).collect();
    format!("{{{}}}", ls.join(","))
}

impl Cover {
    /// Orders pieces by inclusion.
    pub fn from_pieces(mut pieces: Vec<Vec<usize>>) -> Result<Self, KanError> {
        for p in &mut pieces {
            p.sort_unstable();
            p.dedup();
        }
        let labels = (0..pieces.len()).map(|j| format!("piece{j}")).collect();
        let leq = pieces.iter().map(|a| pieces.iter().map(|b| a.iter().all(|x| b.contains(x))).collect()).collect();
        let index = Arc::new(FinPoset::from_relation(labels, leq)?);
        Ok(Cover { index, pieces })
    }

    /// Checks that the pieces are downward closed, cover the shape, respect the index order and
    /// meet only in unions of common lower pieces.
    pub fn validate(&self, shape: &FinPoset) -> Result<(), KanError> {
        if self.pieces.len() != self.index.len() {
            return Err(KanError::Shape("one piece per index element is required".into()));
        }
        let n = shape.len();
        let masks: Vec<Vec<bool>> = self
            .pieces
            .iter()
            .map(|p| {
                let mut m = vec![false; n];
                p.iter().for_each(|&x| m[x] = true);
                m
            })
            .collect();
        if masks.iter().any(|m| !shape.is_down_closed(m)) {
            return Err(KanError::NotClosed("downward"));
        }
        if let Some(x) = (0..n).find(|&x| !masks.iter().any(|m| m[x])) {
            return Err(KanError::CoverIncomplete(shape.label(x).into()));
        }
        let j_len = self.index.len();
        for j in 0..j_len {
            for k in 0..j_len {
                if self.index.leq(j, k) && !(0..n).all(|x| !masks[j][x] || masks[k][x]) {
                    return Err(KanError::Shape(format!("piece {j} is not contained in piece {k}")));
                }
                let meet: Vec<usize> = (0..n).filter(|&x| masks[j][x] && masks[k][x]).collect();
                let lower: Vec<usize> = (0..n)
                    .filter(|&x| (0..j_len).any(|l| self.index.leq(l, j) && self.index.leq(l, k) && masks[l][x]))
                    .collect();
                if meet != lower {
                    return Err(KanError::CoverNotClosed {
                        first: label_set(shape, &self.pieces[j]),
                        second: label_set(shape, &self.pieces[k]),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub pieces: usize,
    pub direct_dim: usize,
    pub iterated_dim: usize,
    pub canonical_invertible: bool,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.direct_dim == self.iterated_dim && self.canonical_invertible
    }
}

/// Compares the colimit of `d` with the colimit over the index of the colimits over the pieces.
pub fn colim_decomposition(cover: &Cover, d: &PosetDiagram) -> Result<DecompositionReport, KanError> {
    cover.validate(d.shape())?;
    let direct = colim(d);
    let local: Vec<_> = cover.pieces.iter().map(|p| colim_over(d, p)).collect();
    let outer_diagram = PosetDiagram::new(cover.index.clone(), local.iter().map(|c| c.dim()).collect(), |j, k| {
        local[j].to_larger(&local[k], d)
    })?;
    let outer = colim(&outer_diagram);
    let legs: Vec<Mat> = outer
        .maxima
        .iter()
        .map(|&j| {
            let inner: Vec<Mat> = local[j].maxima.iter().map(|&m| direct.leg(d, m)).collect();
            local[j].factor(&inner, direct.dim())
        })
        .collect();
    let canonical = outer.factor(&legs, direct.dim());
    Ok(DecompositionReport {
        pieces: cover.pieces.len(),
        direct_dim: direct.dim(),
        iterated_dim: outer.dim(),
        canonical_invertible: canonical.is_invertible(),
    })
}

fn down_closure(shape: &FinPoset, generators: &[usize]) -> Vec<usize> {
    (0..shape.len()).filter(|&x| generators.iter().any(|&g| shape.leq(x, g))).collect()
}

/// Random down-sets covering the shape, closed under nonempty intersections.
pub fn random_cover(rng: &mut impl Rng, shape: &FinPoset, max_generators: usize) -> Cover {
    let n = shape.len();
    let maximal: Vec<usize> = (0..n).filter(|&x| !(0..n).any(|y| shape.lt(x, y))).collect();
    let count = rng.gen_range(1..=max_generators.max(1));
    let mut gens: Vec<Vec<usize>> = (0..count).map(|_| vec![rng.gen_range(0..n)]).collect();
    for &m in &maximal {
        let k = rng.gen_range(0..gens.len());
        gens[k].push(m);
    }
    let mut pieces: Vec<Vec<usize>> = gens.iter().map(|g| down_closure(shape, g)).collect();
    loop {
        let mut added = false;
        for i in 0..pieces.len() {
            for j in 0..i {
                let meet: Vec<usize> = pieces[i].iter().copied().filter(|x| pieces[j].contains(x)).collect();
                if !meet.is_empty() && !pieces.contains(&meet) {
                    pieces.push(meet);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    pieces.sort();
    pieces.dedup();
    Cover::from_pieces(pieces).expect("inclusion is a partial order on distinct sets")
}

/// The top-punctured `n`-cube split by two complementary coordinate blocks: subsets missing
/// part of `block`, subsets missing part of its complement, and their intersection.
pub fn slice_cover(n: usize, block: usize) -> Result<(Arc<FinPoset>, Cover), KanError> {
    let full = (1usize << n) - 1;
    let other = full & !block;
    if block == 0 || other == 0 {
        return Err(KanError::Shape("both coordinate blocks must be nonempty".into()));
    }
    let cube = lattice_core::FinLattice::powerset(n)?;
    let members: Vec<usize> = (0..full).collect();
    let shape = Arc::new(cube.poset().full_subposet(&members));
    let first: Vec<usize> = members.iter().copied().filter(|&s| s & block != block).collect();
    let second: Vec<usize> = members.iter().copied().filter(|&s| s & other != other).collect();
    let both: Vec<usize> = first.iter().copied().filter(|s| second.contains(s)).collect();
    let index =
        Arc::new(FinPoset::from_covers(vec!["both".into(), "first".into(), "second".into()], &[(0, 1), (0, 2)])?);
    Ok((shape, Cover { index, pieces: vec![both, first, second] }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_diagram, rng_for, SamplerConfig};

    #[test]
    fn slice_cover_of_square_is_two_edges() {
        let (shape, cover) = slice_cover(2, 0b01).unwrap();
        assert_eq!(cover.pieces, vec![vec![0], vec![0, 2], vec![0, 1]]);
        cover.validate(&shape).unwrap();
        let d = random_diagram(&mut rng_for(1, 0), shape, &SamplerConfig::default());
        assert!(colim_decomposition(&cover, &d).unwrap().holds());
    }

    #[test]
    fn single_piece() {
        let (shape, _) = slice_cover(3, 0b001).unwrap();
        let cover = Cover::from_pieces(vec![(0..shape.len()).collect()]).unwrap();
        let d = random_diagram(&mut rng_for(2, 0), shape, &SamplerConfig::default());
        assert!(colim_decomposition(&cover, &d).unwrap().holds());
    }

    #[test]
    fn disjoint_edges_are_rejected() {
        let (shape, _) = slice_cover(2, 0b01).unwrap();
        let cover = Cover::from_pieces(vec![vec![0, 1], vec![0, 2]]).unwrap();
        assert!(matches!(cover.validate(&shape), Err(KanError::CoverNotClosed { .. })));
    }
}

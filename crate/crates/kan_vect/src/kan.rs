use std::sync::Arc;

use lattice_core::FinPoset;
use serde::Serialize;

use crate::diagram::PosetDiagram;
use crate::error::KanError;
use crate::limits::{colim_over, lim_over, Colimit, Limit};
use crate::linalg::Mat;

fn check_subshape(shape: &FinPoset, members: &[usize], f: &PosetDiagram) -> Result<(), KanError> {
    if f.len() != members.len() || members.iter().any(|&m| m >= shape.len()) {
        return Err(KanError::Shape("diagram does not live on the given subposet".into()));
    }
    let sub = f.shape();
    for i in 0..members.len() {
        for j in 0..members.len() {
            if sub.leq(i, j) != shape.leq(members[i], members[j]) {
                return Err(KanError::Shape("subposet order differs from the ambient order".into()));
            }
        }
    }
    Ok(())
}

fn mask_of(n: usize, members: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &m in members {
        mask[m] = true;
    }
    mask
}

/// Left Kan extension along a downward-closed inclusion, with its pointwise colimits.
#[derive(Clone, Debug)]
pub struct LeftKan {
    pub diagram: PosetDiagram,
    pub source: PosetDiagram,
    /// Ambient indices of the subposet carrying `source`.
    pub members: Vec<usize>,
    /// For each ambient element `ℓ`, the colimit over the members below it (source indices).
    pub colims: Vec<Colimit>,
}

/// Extends `f`, defined on the full subposet `members` of `shape`, by pointwise colimits.
pub fn lkan(shape: Arc<FinPoset>, members: &[usize], f: &PosetDiagram) -> Result<LeftKan, KanError> {
    check_subshape(&shape, members, f)?;
    if !shape.is_down_closed(&mask_of(shape.len(), members)) {
        return Err(KanError::NotClosed("downward"));
    }
    let colims: Vec<Colimit> = (0..shape.len())
        .map(|l| {
            let below: Vec<usize> = (0..members.len()).filter(|&i| shape.leq(members[i], l)).collect();
            colim_over(f, &below)
        })
        .collect();
    let dims = colims.iter().map(Colimit::dim).collect();
    let diagram = PosetDiagram::new(shape, dims, |lo, hi| colims[lo].to_larger(&colims[hi], f))?;
    Ok(LeftKan { diagram, source: f.clone(), members: members.to_vec(), colims })
}

impl LeftKan {
    /// Whether restricting back along the inclusion recovers the source up to the canonical isomorphism.
    pub fn restriction_is_iso(&self) -> bool {
        self.members.iter().enumerate().all(|(i, &l)| self.colims[l].leg(&self.source, i).is_invertible())
    }

    /// The extension of a natural transformation between the sources.
    pub fn induced(&self, target: &LeftKan, components: &[Mat]) -> Vec<Mat> {
        (0..self.colims.len()).map(|l| self.colims[l].induced(&target.colims[l], &target.source, components)).collect()
    }
}

/// Right Kan extension along an upward-closed inclusion, with its pointwise limits.
#[derive(Clone, Debug)]
pub struct RightKan {
    pub diagram: PosetDiagram,
    pub source: PosetDiagram,
    pub members: Vec<usize>,
    pub lims: Vec<Limit>,
}

pub fn rkan(shape: Arc<FinPoset>, members: &[usize], f: &PosetDiagram) -> Result<RightKan, KanError> {
    check_subshape(&shape, members, f)?;
    if !shape.is_up_closed(&mask_of(shape.len(), members)) {
        return Err(KanError::NotClosed("upward"));
    }
    let lims: Vec<Limit> = (0..shape.len())
        .map(|l| {
            let above: Vec<usize> = (0..members.len()).filter(|&i| shape.leq(l, members[i])).collect();
            lim_over(f, &above)
        })
        .collect();
    let dims = lims.iter().map(Limit::dim).collect();
    let diagram = PosetDiagram::new(shape, dims, |lo, hi| lims[hi].from_larger(&lims[lo], f))?;
    Ok(RightKan { diagram, source: f.clone(), members: members.to_vec(), lims })
}

impl RightKan {
    pub fn restriction_is_iso(&self) -> bool {
        self.members.iter().enumerate().all(|(i, &l)| self.lims[l].leg(&self.source, i).is_invertible())
    }
}

/// A failing component of a unit or counit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWitness {
    pub element: String,
    /// Dimension of the value of the diagram.
    pub value_dim: usize,
    /// Dimension of the Kan-extended value it is compared with.
    pub extended_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalityCheck {
    pub holds: bool,
    pub witness: Option<ComponentWitness>,
}

impl UniversalityCheck {
    fn from_witness(witness: Option<ComponentWitness>) -> Self {
        UniversalityCheck { holds: witness.is_none(), witness }
    }
}

/// Whether `x` is left Kan extended from the downward-closed subset `sigma` (a membership mask).
pub fn is_cocartesian(x: &PosetDiagram, sigma: &[bool]) -> UniversalityCheck {
    let p = x.shape();
    let witness = (0..x.len()).filter(|&l| !sigma[l]).find_map(|l| {
        let below: Vec<usize> = (0..x.len()).filter(|&q| sigma[q] && p.leq(q, l)).collect();
        let c = colim_over(x, &below);
        let legs: Vec<Mat> = c.maxima.iter().map(|&m| x.map(m, l).clone()).collect();
        let counit = c.factor(&legs, x.dim(l));
        (!counit.is_invertible()).then(|| ComponentWitness {
            element: p.label(l).into(),
            value_dim: x.dim(l),
            extended_dim: c.dim(),
            rank: counit.rank(),
        })
    });
    UniversalityCheck::from_witness(witness)
}

/// Whether `x` is right Kan extended from the upward-closed subset `tau`.
pub fn is_right_extended(x: &PosetDiagram, tau: &[bool]) -> UniversalityCheck {
    let p = x.shape();
    let witness = (0..x.len()).filter(|&l| !tau[l]).find_map(|l| {
        let above: Vec<usize> = (0..x.len()).filter(|&q| tau[q] && p.leq(l, q)).collect();
        let c = lim_over(x, &above);
        let legs: Vec<Mat> = c.minima.iter().map(|&m| x.map(l, m).clone()).collect();
        let unit = c.factor(&legs, x.dim(l));
        (!unit.is_invertible()).then(|| ComponentWitness {
            element: p.label(l).into(),
            value_dim: x.dim(l),
            extended_dim: c.dim(),
            rank: unit.rank(),
        })
    });
    UniversalityCheck::from_witness(witness)
}

/// Cartesian: right Kan extended from the complement of the bottom element.
/// On a shape without bottom every diagram counts as cartesian.
pub fn is_cartesian(x: &PosetDiagram) -> UniversalityCheck {
    let tau: Vec<bool> = (0..x.len()).map(|l| Some(l) != x.shape().bottom()).collect();
    is_right_extended(x, &tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::FinLattice;

    #[test]
    fn singleton_star_extends_to_pushout() {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let star =
            PosetDiagram::new(Arc::new(p.full_subposet(&[0, 1, 2])), vec![1, 1, 1], |_, _| Mat::identity(1)).unwrap();
        let ext = lkan(p, &[0, 1, 2], &star).unwrap();
        assert_eq!(ext.diagram.dims(), &[1, 1, 1, 1]);
        assert!(ext.restriction_is_iso());
        let sigma = [true, true, true, false];
        assert!(is_cocartesian(&ext.diagram, &sigma).holds);
        assert!(is_cartesian(&ext.diagram).holds);
    }

    #[test]
    fn right_extension_from_top_is_constant() {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let top = PosetDiagram::constant(Arc::new(p.full_subposet(&[3])), 2);
        let ext = rkan(p, &[3], &top).unwrap();
        assert_eq!(ext.diagram.dims(), &[2, 2, 2, 2]);
        assert!(ext.restriction_is_iso());
    }

    #[test]
    fn non_closed_inclusion_is_rejected() {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let f = PosetDiagram::constant(Arc::new(p.full_subposet(&[1])), 1);
        assert_eq!(lkan(p, &[1], &f).unwrap_err(), KanError::NotClosed("downward"));
    }

    #[test]
    fn non_universal_square_has_witness_at_top() {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let d = PosetDiagram::new(p, vec![1, 1, 1, 2], |lo, hi| match (lo, hi) {
            (1, 3) | (2, 3) => Mat::from_i64(2, 1, &[1, 1]),
            _ => Mat::identity(1),
        })
        .unwrap();
        let check = is_cocartesian(&d, &[true, true, true, false]);
        assert!(!check.holds);
        assert_eq!(check.witness.unwrap().element, sq.label(3));
    }
}

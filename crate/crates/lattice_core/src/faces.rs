use crate::error::LatticeError;
use crate::lattice::{Complementation, FinLattice};
use crate::maps::{check_galois, GaloisCheck, MonotoneMap};

/// Three pairwise disjoint elements joining to the top.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompositionTriple {
    pub a: usize,
    pub d: usize,
    pub z: usize,
}

impl DecompositionTriple {
    /// Completes a disjoint pair `(a, d)` with `z = (a∨d)^c`.
    pub fn complete(l: &FinLattice, comp: &Complementation, a: usize, d: usize) -> Result<Self, LatticeError> {
        if l.meet(a, d) != l.bottom() {
            return Err(LatticeError::NotDisjoint { a: l.label(a).into(), d: l.label(d).into() });
        }
        let t = DecompositionTriple { a, d, z: comp.comp[l.join(a, d)] };
        debug_assert!(t.is_valid(l));
        Ok(t)
    }

    pub fn is_valid(&self, l: &FinLattice) -> bool {
        let b = l.bottom();
        l.meet(self.a, self.d) == b
            && l.meet(self.a, self.z) == b
            && l.meet(self.d, self.z) == b
            && l.join(self.a, l.join(self.d, self.z)) == l.top()
    }
}

/// The `a`-face `y ↦ d∨y` from the down-set of `a` into `L`.
#[derive(Clone, Debug)]
pub struct FaceMap {
    pub triple: DecompositionTriple,
    pub domain: FinLattice,
    /// Position in `L` of each element of the domain.
    pub domain_embed: Vec<usize>,
    pub map: MonotoneMap,
}

pub fn face_map(l: &FinLattice, comp: &Complementation, a: usize, d: usize) -> Result<FaceMap, LatticeError> {
    let triple = DecompositionTriple::complete(l, comp, a, d)?;
    let (domain, domain_embed) = l.down_lattice(a);
    let map = MonotoneMap::new(
        domain.poset().clone(),
        l.poset().clone(),
        domain_embed.iter().map(|&y| l.join(d, y)).collect(),
    )?;
    Ok(FaceMap { triple, domain, domain_embed, map })
}

/// Every `a`-face: one for each `d` disjoint from `a`, including `d = ∅`.
pub fn all_faces(l: &FinLattice, comp: &Complementation, a: usize) -> Result<Vec<FaceMap>, LatticeError> {
    l.elements().filter(|&d| l.meet(a, d) == l.bottom()).map(|d| face_map(l, comp, a, d)).collect()
}

impl FaceMap {
    pub fn is_fully_faithful(&self) -> bool {
        self.map.is_injective() && self.map.is_full()
    }

    /// Checks the colocalisation `d∨− ⊣ a∧−` between the domain and the up-set of `d`.
    pub fn colocalisation(&self, l: &FinLattice) -> Result<GaloisCheck, LatticeError> {
        let (up, up_embed) = l.up_lattice(self.triple.d);
        let pos_up = |e: usize| up_embed.iter().position(|&y| y == e).expect("join with d lies above d");
        let pos_dom = |e: usize| self.domain_embed.iter().position(|&y| y == e).expect("meet with a lies below a");
        let left = MonotoneMap::new(
            self.domain.poset().clone(),
            up.poset().clone(),
            (0..self.domain.len()).map(|y| pos_up(self.map.apply(y))).collect(),
        )?;
        let right = MonotoneMap::new(
            up.poset().clone(),
            self.domain.poset().clone(),
            up_embed.iter().map(|&t| pos_dom(l.meet(self.triple.a, t))).collect(),
        )?;
        check_galois(&left, &right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_of_three_cube() {
        let l = FinLattice::powerset(3).unwrap();
        let c = l.complementation().unwrap();
        let f = face_map(&l, &c, 0b001, 0b010).unwrap();
        assert_eq!(f.map.as_slice(), &[0b010, 0b011]);
        assert_eq!(f.triple.z, 0b100);
        assert!(f.is_fully_faithful());
        assert!(f.colocalisation(&l).unwrap().holds);
    }

    #[test]
    fn face_with_empty_d_is_inclusion() {
        let l = FinLattice::powerset(3).unwrap();
        let c = l.complementation().unwrap();
        let f = face_map(&l, &c, 0b011, 0).unwrap();
        assert_eq!(f.map.as_slice(), f.domain_embed.as_slice());
    }

    #[test]
    fn overlapping_pair_is_rejected() {
        let l = FinLattice::powerset(2).unwrap();
        let c = l.complementation().unwrap();
        assert!(matches!(face_map(&l, &c, 0b01, 0b11), Err(LatticeError::NotDisjoint { .. })));
    }

    #[test]
    fn face_count_matches_disjoint_elements() {
        let l = FinLattice::powerset(3).unwrap();
        let c = l.complementation().unwrap();
        assert_eq!(all_faces(&l, &c, 0b001).unwrap().len(), 4);
        assert_eq!(all_faces(&l, &c, 0).unwrap().len(), 8);
    }
}

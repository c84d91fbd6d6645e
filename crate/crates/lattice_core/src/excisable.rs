use crate::error::LatticeError;
use crate::lattice::{Complementation, FinLattice};
use crate::smash::smash_localization;

/// A nonempty downward-closed subset of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcisableStructure {
    members: Vec<bool>,
}

impl ExcisableStructure {
    pub fn new(l: &FinLattice, members: Vec<bool>) -> Result<Self, LatticeError> {
        if members.len() != l.len() {
            return Err(LatticeError::Shape("membership vector has the wrong length".into()));
        }
        if !members[l.bottom()] {
            return Err(LatticeError::MissingBottom);
        }
        for y in l.elements().filter(|&y| members[y]) {
            if let Some(x) = l.elements().find(|&x| l.leq(x, y) && !members[x]) {
                return Err(LatticeError::NotDownClosed { below: l.label(x).into(), above: l.label(y).into() });
            }
        }
        Ok(ExcisableStructure { members })
    }

    /// Down-closure of the given generators together with the bottom element.
    pub fn generated_by(l: &FinLattice, generators: &[usize]) -> Self {
        let mut members = vec![false; l.len()];
        members[l.bottom()] = true;
        for &g in generators {
            for x in l.elements().filter(|&x| l.leq(x, g)) {
                members[x] = true;
            }
        }
        ExcisableStructure { members }
    }

    pub fn bottom_only(l: &FinLattice) -> Self {
        Self::generated_by(l, &[])
    }

    /// Bottom and atoms: the singleton structure on a cube.
    pub fn singletons(l: &FinLattice) -> Self {
        Self::generated_by(l, &l.atoms())
    }

    /// Everything except the top element: the spherical structure on a cube.
    pub fn spherical(l: &FinLattice) -> Result<Self, LatticeError> {
        let members = l.elements().map(|x| x != l.top()).collect();
        Self::new(l, members)
    }

    pub fn whole(l: &FinLattice) -> Self {
        ExcisableStructure { members: vec![true; l.len()] }
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&x| self.members[x]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The image of `σ` under `x∧−`, as an excisable structure on `L_x`.
/// Returns the structure together with the lattice `L_x` and its embedding into `L`.
pub fn induced_excisable(
    l: &FinLattice,
    comp: &Complementation,
    sigma: &ExcisableStructure,
    x: usize,
) -> Result<(ExcisableStructure, FinLattice, Vec<usize>), LatticeError> {
    let s = smash_localization(l, comp, x)?;
    let mut members = vec![false; s.local.len()];
    for y in sigma.elements() {
        members[s.project.apply(y)] = true;
    }
    let induced = ExcisableStructure::new(&s.local, members)?;
    Ok((induced, s.local, s.embed))
}

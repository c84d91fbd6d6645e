use std::sync::Arc;

use crate::error::LatticeError;
use crate::poset::FinPoset;

/// A finite lattice with eagerly tabulated meets and joins.
#[derive(Clone, Debug)]
pub struct FinLattice {
    poset: Arc<FinPoset>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// A total complement map, computed from the lattice and never supplied by callers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complementation {
    pub comp: Vec<usize>,
}

/// Label used for the subset `mask` of `{1..n}` in powerset lattices.
pub fn subset_label(mask: usize) -> String {
    let members: Vec<String> =
        (0..usize::BITS as usize).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", members.join(","))
}

impl FinLattice {
    pub fn from_poset(poset: Arc<FinPoset>) -> Result<Self, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let bottom = poset.bottom().ok_or(LatticeError::Axiom { axiom: "bottom exists", witness: vec![] })?;
        let top = poset.top().ok_or(LatticeError::Axiom { axiom: "top exists", witness: vec![] })?;
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in a..n {
                let m = poset.glb(a, b).ok_or_else(|| LatticeError::NotALattice {
                    which: "meet",
                    a: poset.label(a).into(),
                    b: poset.label(b).into(),
                })?;
                let j = poset.lub(a, b).ok_or_else(|| LatticeError::NotALattice {
                    which: "join",
                    a: poset.label(a).into(),
                    b: poset.label(b).into(),
                })?;
                meet[a][b] = m;
                meet[b][a] = m;
                join[a][b] = j;
                join[b][a] = j;
            }
        }
        Ok(FinLattice { poset, meet, join, bottom, top })
    }

    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        Self::from_poset(Arc::new(FinPoset::from_covers(labels, covers)?))
    }

    /// Subsets of `{1..n}` ordered by inclusion; element index equals the bitmask.
    pub fn powerset(n: usize) -> Result<Self, LatticeError> {
        let size = 1usize << n;
        if size > crate::poset::SIZE_CAP {
            return Err(LatticeError::TooLarge { size, cap: crate::poset::SIZE_CAP });
        }
        let labels = (0..size).map(subset_label).collect();
        let leq = (0..size).map(|a| (0..size).map(|b| a & !b == 0).collect()).collect();
        let poset = Arc::new(FinPoset::from_relation(labels, leq)?);
        let meet = (0..size).map(|a| (0..size).map(|b| a & b).collect()).collect();
        let join = (0..size).map(|a| (0..size).map(|b| a | b).collect()).collect();
        Ok(FinLattice { poset, meet, join, bottom: 0, top: size - 1 })
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(labels, &covers)
    }

    /// The diamond: bottom, three pairwise incomparable atoms, top.
    pub fn diamond() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_covers(labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).expect("diamond is a lattice")
    }

    /// The pentagon: `0 < a < b < 1` and `0 < c < 1`.
    pub fn pentagon() -> Self {
        let labels = ["0", "a", "b", "c", "1"].map(String::from).to_vec();
        Self::from_covers(labels, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("pentagon is a lattice")
    }

    pub fn poset(&self) -> &Arc<FinPoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// One-element lattices (bottom equals top) are accepted but flagged.
    pub fn is_degenerate(&self) -> bool {
        self.bottom == self.top
    }

    /// Re-derives the lattice laws from the tables; used as a self-check.
    pub fn validate_tables(&self) -> Result<(), LatticeError> {
        for a in self.elements() {
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Err(LatticeError::Axiom { axiom: "bounds", witness: vec![self.label(a).into()] });
            }
            for b in self.elements() {
                let m = self.meet(a, b);
                let j = self.join(a, b);
                let glb_ok = self.leq(m, a)
                    && self.leq(m, b)
                    && self.elements().all(|c| !(self.leq(c, a) && self.leq(c, b)) || self.leq(c, m));
                let lub_ok = self.leq(a, j)
                    && self.leq(b, j)
                    && self.elements().all(|c| !(self.leq(a, c) && self.leq(b, c)) || self.leq(j, c));
                if !glb_ok || !lub_ok {
                    return Err(LatticeError::Axiom {
                        axiom: if glb_ok { "join is least upper bound" } else { "meet is greatest lower bound" },
                        witness: vec![self.label(a).into(), self.label(b).into()],
                    });
                }
            }
        }
        Ok(())
    }

    /// Exhaustive distributivity check; returns a failing triple `(a, b, c)` with
    /// `(a∧c)∨(b∧c) ≠ (a∨b)∧c`, or `None` when the lattice is distributive.
    pub fn distributivity_witness(&self) -> Option<[usize; 3]> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.join(self.meet(a, c), self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), c);
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// The unique complement of `x`. Uniqueness is asserted, so callers should
    /// only use this on distributive lattices.
    pub fn complement(&self, x: usize) -> Result<usize, LatticeError> {
        let mut found = self.elements().filter(|&y| self.join(x, y) == self.top && self.meet(x, y) == self.bottom);
        let first = found.next().ok_or_else(|| LatticeError::NoComplement(self.label(x).into()))?;
        if found.next().is_some() {
            return Err(LatticeError::AmbiguousComplement(self.label(x).into()));
        }
        Ok(first)
    }

    /// Complements of all elements, after checking distributivity.
    pub fn complementation(&self) -> Result<Complementation, LatticeError> {
        if let Some(w) = self.distributivity_witness() {
            return Err(LatticeError::NotDistributive(w.iter().map(|&e| self.label(e).to_string()).collect()));
        }
        let comp = self.elements().map(|x| self.complement(x)).collect::<Result<Vec<_>, _>>()?;
        Ok(Complementation { comp })
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| a != self.bottom && self.elements().all(|b| !(self.poset.lt(b, a)) || b == self.bottom))
            .collect()
    }

    /// Checks that `x ↦ {atoms ≤ x}` is a lattice isomorphism onto the powerset of atoms.
    /// Returns the bitmask image of every element on success.
    pub fn atom_map_isomorphism(&self) -> Option<Vec<usize>> {
        let atoms = self.atoms();
        if atoms.len() >= usize::BITS as usize || self.len() != 1usize << atoms.len() {
            return None;
        }
        let image: Vec<usize> = self
            .elements()
            .map(|x| atoms.iter().enumerate().filter(|(_, &a)| self.leq(a, x)).fold(0, |m, (i, _)| m | 1 << i))
            .collect();
        let mut seen = vec![false; self.len()];
        for &m in &image {
            if seen[m] {
                return None;
            }
            seen[m] = true;
        }
        for a in self.elements() {
            for b in self.elements() {
                if image[self.meet(a, b)] != image[a] & image[b] || image[self.join(a, b)] != image[a] | image[b] {
                    return None;
                }
            }
        }
        Some(image)
    }

    /// The down-set of `x` as a lattice, with its embedding into `self`.
    pub fn down_lattice(&self, x: usize) -> (FinLattice, Vec<usize>) {
        self.interval(self.bottom, x)
    }

    /// The up-set of `d` as a lattice, with its embedding into `self`.
    pub fn up_lattice(&self, d: usize) -> (FinLattice, Vec<usize>) {
        self.interval(d, self.top)
    }

    /// The interval `[lo, hi]`, a sublattice closed under meet and join.
    pub fn interval(&self, lo: usize, hi: usize) -> (FinLattice, Vec<usize>) {
        let members: Vec<usize> = self.elements().filter(|&y| self.leq(lo, y) && self.leq(y, hi)).collect();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let poset = Arc::new(self.poset.full_subposet(&members));
        let meet = members.iter().map(|&a| members.iter().map(|&b| pos[self.meet(a, b)]).collect()).collect();
        let join = members.iter().map(|&a| members.iter().map(|&b| pos[self.join(a, b)]).collect()).collect();
        let lattice = FinLattice { poset, meet, join, bottom: pos[lo], top: pos[hi] };
        (lattice, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerset_two_is_distributive() {
        let l = FinLattice::powerset(2).unwrap();
        assert!(l.is_distributive());
        l.validate_tables().unwrap();
        assert_eq!(l.label(3), "{1,2}");
        assert_eq!(l.label(0), "{}");
    }

    #[test]
    fn diamond_and_pentagon_fail_distributivity() {
        let m3 = FinLattice::diamond();
        let w = m3.distributivity_witness().unwrap();
        let [a, b, c] = w;
        assert_ne!(m3.join(m3.meet(a, c), m3.meet(b, c)), m3.meet(m3.join(a, b), c));
        assert!(!FinLattice::pentagon().is_distributive());
    }

    #[test]
    fn complements_in_powerset() {
        let l = FinLattice::powerset(2).unwrap();
        assert_eq!(l.complement(1).unwrap(), 2);
        assert_eq!(l.complement(l.top()).unwrap(), l.bottom());
    }

    #[test]
    fn chain_middle_has_no_complement() {
        let l = FinLattice::chain(3).unwrap();
        assert_eq!(l.complement(1), Err(LatticeError::NoComplement("1".into())));
        assert!(l.complementation().is_err());
    }

    #[test]
    fn diamond_has_ambiguous_complements() {
        let m3 = FinLattice::diamond();
        assert!(matches!(m3.complement(1), Err(LatticeError::AmbiguousComplement(_))));
    }

    #[test]
    fn atom_map_recovers_powerset() {
        let l = FinLattice::powerset(3).unwrap();
        let image = l.atom_map_isomorphism().unwrap();
        assert_eq!(image, (0..8).collect::<Vec<_>>());
        assert!(FinLattice::chain(3).unwrap().atom_map_isomorphism().is_none());
    }

    #[test]
    fn degenerate_lattice_is_flagged() {
        let l = FinLattice::chain(1).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(l.complementation().unwrap().comp, vec![0]);
    }

    #[test]
    fn powerset_above_cap_is_rejected() {
        assert!(matches!(FinLattice::powerset(9), Err(LatticeError::TooLarge { .. })));
    }

    #[test]
    fn intervals_are_sublattices() {
        let l = FinLattice::powerset(3).unwrap();
        let (down, embed) = l.down_lattice(0b011);
        assert_eq!(down.len(), 4);
        for a in down.elements() {
            for b in down.elements() {
                assert_eq!(embed[down.meet(a, b)], l.meet(embed[a], embed[b]));
                assert_eq!(embed[down.join(a, b)], l.join(embed[a], embed[b]));
            }
        }
    }
}

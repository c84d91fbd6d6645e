use lattice_core::{subset_label, FinLattice, FinPoset, SIZE_CAP};

use crate::error::CubeError;

/// Widest orbit set a fibre may have.
pub const MAX_ORBITS: usize = 63;
/// Widest orbit set whose fibre may be enumerated element by element.
pub const MAX_ENUMERATED_ORBITS: usize = 20;

/// A subposet of the powerset of an orbit set, ordered by inclusion.
/// Elements are bitmasks over the orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskPoset {
    orbits: usize,
    without_bottom: bool,
    without_top: bool,
    explicit: Option<Vec<u64>>,
}

impl MaskPoset {
    pub fn powerset(orbits: usize) -> Result<Self, CubeError> {
        if orbits > MAX_ORBITS {
            return Err(CubeError::FibreOverflow { orbits });
        }
        Ok(MaskPoset { orbits, without_bottom: false, without_top: false, explicit: None })
    }

    /// An explicit member list; it is sorted and deduplicated.
    pub fn explicit(orbits: usize, mut members: Vec<u64>) -> Result<Self, CubeError> {
        if orbits > MAX_ORBITS {
            return Err(CubeError::FibreOverflow { orbits });
        }
        members.sort_unstable();
        members.dedup();
        Ok(MaskPoset { orbits, without_bottom: false, without_top: false, explicit: Some(members) })
    }

    pub fn orbits(&self) -> usize {
        self.orbits
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.orbits) - 1
    }

    pub fn is_powerset(&self) -> bool {
        self.explicit.is_none() && !self.without_bottom && !self.without_top
    }

    pub fn contains(&self, m: u64) -> bool {
        if m & !self.full() != 0 || (self.without_bottom && m == 0) || (self.without_top && m == self.full()) {
            return false;
        }
        match &self.explicit {
            Some(list) => list.binary_search(&m).is_ok(),
            None => true,
        }
    }

    pub fn without_top(&self) -> Self {
        MaskPoset { without_top: true, ..self.clone() }
    }

    pub fn without_bottom(&self) -> Self {
        MaskPoset { without_bottom: true, ..self.clone() }
    }

    pub fn len(&self) -> usize {
        match &self.explicit {
            Some(list) => list.iter().filter(|&&m| self.contains(m)).count(),
            None => {
                let total = 1usize << self.orbits;
                let bottom = usize::from(self.without_bottom);
                let top = usize::from(self.without_top);
                // For zero orbits bottom and top coincide.
                if self.orbits == 0 {
                    total.saturating_sub(bottom.max(top))
                } else {
                    total - bottom - top
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in increasing numeric order.
    pub fn elements(&self) -> Result<Vec<u64>, CubeError> {
        match &self.explicit {
            Some(list) => Ok(list.iter().copied().filter(|&m| self.contains(m)).collect()),
            None if self.orbits > MAX_ENUMERATED_ORBITS => Err(CubeError::FibreOverflow { orbits: self.orbits }),
            None => Ok((0..=self.full()).filter(|&m| self.contains(m)).collect()),
        }
    }

    /// Down-closure checked through covers: removing one orbit from a member stays inside.
    pub fn is_down_closed(&self) -> Result<bool, CubeError> {
        if self.explicit.is_none() && !self.without_bottom {
            return Ok(true);
        }
        for m in self.elements()? {
            for i in 0..self.orbits {
                if m >> i & 1 == 1 && !self.contains(m & !(1 << i)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Materialises the inclusion order as a [`FinPoset`]; only for small fibres.
    pub fn to_fin_poset(&self) -> Result<FinPoset, CubeError> {
        let elems = self.elements()?;
        if elems.len() > SIZE_CAP {
            return Err(CubeError::FibreOverflow { orbits: self.orbits });
        }
        let labels = elems.iter().map(|&m| subset_label(m as usize)).collect();
        let leq = elems.iter().map(|&a| elems.iter().map(|&b| a & !b == 0).collect()).collect();
        Ok(FinPoset::from_relation(labels, leq)?)
    }

    /// The fibre as a validated lattice, when it is one and is small enough.
    pub fn to_lattice(&self) -> Result<FinLattice, CubeError> {
        Ok(FinLattice::from_poset(std::sync::Arc::new(self.to_fin_poset()?))?)
    }
}

/// Preimage of a mask along an orbit map: orbit `i` is kept when its image is.
#[inline]
pub fn preimage(orbit_image: &[usize], m: u64) -> u64 {
    orbit_image.iter().enumerate().fold(0, |acc, (i, &j)| acc | ((m >> j & 1) << i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn punctured_square_has_three_elements() {
        let sq = MaskPoset::powerset(2).unwrap();
        assert_eq!(sq.without_top().len(), 3);
        assert_eq!(sq.without_top().without_bottom().len(), 2);
        assert!(sq.without_top().is_down_closed().unwrap());
        assert!(!sq.without_bottom().is_down_closed().unwrap());
    }

    #[test]
    fn double_puncture_of_an_interval_is_empty() {
        let p = MaskPoset::powerset(1).unwrap().without_top().without_bottom();
        assert!(p.is_empty());
        assert_eq!(MaskPoset::powerset(0).unwrap().without_top().len(), 0);
    }

    #[test]
    fn small_fibres_are_boolean() {
        let l = MaskPoset::powerset(3).unwrap().to_lattice().unwrap();
        assert!(l.is_distributive());
        assert!(l.complementation().is_ok());
    }

    #[test]
    fn preimage_of_orbit_map() {
        assert_eq!(preimage(&[1, 1, 0], 0b10), 0b011);
        assert_eq!(preimage(&[1, 1, 0], 0b01), 0b100);
    }
}

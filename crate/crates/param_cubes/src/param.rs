use std::sync::Arc;

use orbital_base::{FinCategory, Slice};

use crate::error::CubeError;
use crate::mask::{preimage, MaskPoset};

/// Which global element a puncture removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Puncture {
    Top,
    Bottom,
}

/// A parametrised poset over a slice of the orbit category whose fibres are
/// subposets of orbit powersets and whose restrictions are orbit preimages.
#[derive(Clone, Debug)]
pub struct ParamPoset {
    slice: Arc<Slice>,
    fibres: Vec<MaskPoset>,
    /// For each slice morphism `f: a → b`, the orbit map from level `a` to level `b`.
    orbit_maps: Arc<Vec<Vec<usize>>>,
}

impl ParamPoset {
    pub fn new(slice: Arc<Slice>, fibres: Vec<MaskPoset>, orbit_maps: Arc<Vec<Vec<usize>>>) -> Result<Self, CubeError> {
        let cat = slice.category();
        if fibres.len() != slice.len() || orbit_maps.len() != cat.morphism_count() {
            return Err(CubeError::Shape("one fibre per level and one orbit map per morphism".into()));
        }
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            if orbit_maps[f].len() != fibres[a].orbits() || orbit_maps[f].iter().any(|&j| j >= fibres[b].orbits()) {
                return Err(CubeError::Shape(format!("orbit map along {}", cat.morphism_label(f))));
            }
        }
        Ok(ParamPoset { slice, fibres, orbit_maps })
    }

    pub fn slice(&self) -> &Arc<Slice> {
        &self.slice
    }

    pub fn category(&self) -> &FinCategory {
        self.slice.category()
    }

    pub fn fibre(&self, level: usize) -> &MaskPoset {
        &self.fibres[level]
    }

    pub fn fibres(&self) -> &[MaskPoset] {
        &self.fibres
    }

    pub fn orbit_map(&self, morphism: usize) -> &[usize] {
        &self.orbit_maps[morphism]
    }

    pub fn orbit_maps(&self) -> &Arc<Vec<Vec<usize>>> {
        &self.orbit_maps
    }

    /// Restriction along `f: a → b`, from the fibre at `b` to the fibre at `a`.
    #[inline]
    pub fn restrict(&self, morphism: usize, m: u64) -> u64 {
        preimage(&self.orbit_maps[morphism], m)
    }

    /// Identities act trivially and restriction along `g∘f` is restriction along `g`
    /// followed by restriction along `f`, on the orbit maps themselves.
    pub fn check_functoriality(&self) -> Result<(), CubeError> {
        let cat = self.category();
        for a in 0..cat.len() {
            let id = &self.orbit_maps[cat.identity(a)];
            if id.iter().enumerate().any(|(i, &j)| i != j) {
                return Err(CubeError::Functoriality(format!("identity at {}", cat.object_label(a))));
            }
        }
        for f in 0..cat.morphism_count() {
            for c in 0..cat.len() {
                for &g in cat.hom(cat.tgt(f), c) {
                    let gf = cat.compose(g, f);
                    let via: Vec<usize> = self.orbit_maps[f].iter().map(|&j| self.orbit_maps[g][j]).collect();
                    if via != self.orbit_maps[gf] {
                        return Err(CubeError::Functoriality(format!(
                            "{} after {}",
                            cat.morphism_label(g),
                            cat.morphism_label(f)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every restriction sends members to members.
    pub fn check_restrictions_stay_inside(&self) -> Result<(), CubeError> {
        let cat = self.category();
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            for m in self.fibres[b].elements()? {
                if !self.fibres[a].contains(self.restrict(f, m)) {
                    return Err(CubeError::NotStable { morphism: cat.morphism_label(f).to_string() });
                }
            }
        }
        Ok(())
    }

    /// Restrictions preserve the global bottom and top, checked on every morphism.
    pub fn preserves_bottom_and_top(&self) -> bool {
        let cat = self.category();
        (0..cat.morphism_count()).all(|f| {
            let (a, b) = (cat.src(f), cat.tgt(f));
            self.restrict(f, 0) == 0 && self.restrict(f, self.fibres[b].full()) == self.fibres[a].full()
        })
    }

    /// Removes the global top or bottom from every fibre.
    pub fn puncture(&self, which: Puncture) -> Result<ParamPoset, CubeError> {
        let fibres = self
            .fibres
            .iter()
            .map(|f| match which {
                Puncture::Top => f.without_top(),
                Puncture::Bottom => f.without_bottom(),
            })
            .collect();
        let out = ParamPoset { slice: self.slice.clone(), fibres, orbit_maps: self.orbit_maps.clone() };
        out.check_restrictions_stay_inside()?;
        Ok(out)
    }

    /// Subfamily with the given fibres over the same base and restrictions.
    pub fn with_fibres(&self, fibres: Vec<MaskPoset>) -> Result<ParamPoset, CubeError> {
        let out = ParamPoset::new(self.slice.clone(), fibres, self.orbit_maps.clone())?;
        out.check_restrictions_stay_inside()?;
        Ok(out)
    }

    /// Each fibre is downward closed inside the corresponding fibre of `ambient`
    /// and contained in it.
    pub fn is_down_closed_in(&self, ambient: &ParamPoset) -> Result<bool, CubeError> {
        for (mine, theirs) in self.fibres.iter().zip(&ambient.fibres) {
            if !theirs.is_powerset() {
                return Err(CubeError::Shape("ambient fibres must be full powersets".into()));
            }
            if !mine.is_down_closed()? || mine.orbits() != theirs.orbits() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The Grothendieck construction of a parametrised poset: objects `(level, element)`,
/// and a morphism `(b₁, j₁) → (b₂, j₂)` is a slice morphism `f: b₂ → b₁` with `f*j₁ ≤ j₂`.
#[derive(Clone, Debug)]
pub struct TotalPoset {
    pub objects: Vec<(usize, u64)>,
    /// Underlying slice morphism of each total morphism.
    pub base_morphism: Vec<usize>,
    pub category: FinCategory,
}

/// Largest total object count materialised.
pub const TOTAL_CAP: usize = 4096;

impl TotalPoset {
    pub fn new(p: &ParamPoset) -> Result<Self, CubeError> {
        let mut objects = Vec::new();
        for level in 0..p.fibres.len() {
            for m in p.fibres[level].elements()? {
                objects.push((level, m));
            }
        }
        if objects.len() > TOTAL_CAP {
            return Err(CubeError::FibreOverflow { orbits: objects.len() });
        }
        let cat = p.category();
        let mut morphisms = Vec::new();
        let mut base_morphism = Vec::new();
        for (i, &(b1, j1)) in objects.iter().enumerate() {
            for (k, &(b2, j2)) in objects.iter().enumerate() {
                for &f in cat.hom(b2, b1) {
                    if p.restrict(f, j1) & !j2 == 0 {
                        morphisms.push((i, k, cat.morphism_label(f).to_string()));
                        base_morphism.push(f);
                    }
                }
            }
        }
        let identities = (0..objects.len())
            .map(|i| {
                (0..morphisms.len())
                    .find(|&m| {
                        morphisms[m].0 == i && morphisms[m].1 == i && base_morphism[m] == cat.identity(objects[i].0)
                    })
                    .expect("identity morphism present")
            })
            .collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.0, m.1)).collect();
        let bm = base_morphism.clone();
        let category = FinCategory::new(
            objects
                .iter()
                .map(|&(l, m)| format!("{}:{}", p.slice.level_name(l), lattice_core::subset_label(m as usize)))
                .collect(),
            morphisms,
            identities,
            |g, f| {
                let base = cat.compose(bm[f], bm[g]);
                let (s, t) = (ends[f].0, ends[g].1);
                (0..bm.len()).find(|&m| ends[m] == (s, t) && bm[m] == base).expect("total category closed")
            },
        )?;
        Ok(TotalPoset { objects, base_morphism, category })
    }

    /// Objects over a given level, i.e. the fibre.
    pub fn fibre_objects(&self, level: usize) -> Vec<usize> {
        (0..self.objects.len()).filter(|&i| self.objects[i].0 == level).collect()
    }
}

use std::sync::Arc;

use crate::error::OrbitalError;
use crate::fincat::FinCategory;
use crate::gmap::{equivariant_maps, GMap};
use crate::group::FiniteGroup;
use crate::gset::GSet;

/// The orbit category: one coset space `G/H` per conjugacy class of subgroups,
/// with all equivariant maps between them.
#[derive(Clone, Debug)]
pub struct OrbitCat {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Vec<usize>>,
    objects: Vec<Arc<GSet>>,
    homs: Vec<Vec<Vec<GMap>>>,
}

impl OrbitCat {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let subgroups = group.subgroup_class_reps();
        let objects: Vec<Arc<GSet>> = subgroups.iter().map(|h| Arc::new(GSet::cosets(group.clone(), h))).collect();
        let homs = objects.iter().map(|x| objects.iter().map(|y| equivariant_maps(x, y)).collect()).collect();
        OrbitCat { group, subgroups, objects, homs }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &Arc<GSet> {
        &self.objects[i]
    }

    pub fn objects(&self) -> &[Arc<GSet>] {
        &self.objects
    }

    pub fn subgroup(&self, i: usize) -> &[usize] {
        &self.subgroups[i]
    }

    /// Index of the free orbit `G/e`.
    pub fn free_index(&self) -> usize {
        0
    }

    /// Index of the one-point orbit `G/G`.
    pub fn point_index(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object_name(&self, i: usize) -> String {
        format!("{}/{}", self.group.name(), self.group.subgroup_name(&self.subgroups[i]))
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        (0..self.len()).find(|&i| self.object_name(i) == name || self.group.subgroup_name(&self.subgroups[i]) == name)
    }

    pub fn hom(&self, i: usize, j: usize) -> &[GMap] {
        &self.homs[i][j]
    }

    /// Index of the orbit object isomorphic to a transitive `G`-set.
    pub fn classify(&self, x: &GSet) -> Option<usize> {
        if !x.is_transitive() {
            return None;
        }
        let stab = x.stabilizer(0);
        (0..self.len())
            .find(|&i| self.subgroups[i].len() == stab.len() && self.group.subconjugate(&stab, &self.subgroups[i]))
    }

    /// The orbit category as a [`FinCategory`].
    pub fn category(&self) -> FinCategory {
        self.slice(Arc::new(GSet::point(self.group.clone()))).category().clone()
    }

    /// The slice over a `G`-set `V`.
    pub fn slice(&self, base: Arc<GSet>) -> Slice {
        Slice::new(self, base)
    }
}

/// One object of a slice: an orbit object `U` with a map `U → V`.
#[derive(Clone, Debug)]
pub struct Level {
    pub object: usize,
    pub map: GMap,
}

/// The slice `T_{/V}` realised as an explicit comma category.
#[derive(Clone, Debug)]
pub struct Slice {
    base: Arc<GSet>,
    levels: Vec<Level>,
    /// For every slice morphism, the underlying map between orbit objects.
    underlying: Vec<GMap>,
    category: FinCategory,
    object_names: Vec<String>,
}

impl Slice {
    fn new(orbits: &OrbitCat, base: Arc<GSet>) -> Self {
        let mut levels = Vec::new();
        for i in 0..orbits.len() {
            for map in equivariant_maps(orbits.object(i), &base) {
                levels.push(Level { object: i, map });
            }
        }
        let labels: Vec<String> = levels
            .iter()
            .map(|l| {
                if base.len() == 1 {
                    orbits.object_name(l.object)
                } else {
                    format!("{}->{:?}", orbits.object_name(l.object), l.map.apply(0))
                }
            })
            .collect();
        let mut morphisms = Vec::new();
        let mut underlying = Vec::new();
        for (a, la) in levels.iter().enumerate() {
            for (b, lb) in levels.iter().enumerate() {
                for h in orbits.hom(la.object, lb.object) {
                    if h.then(&lb.map).expect("composable").as_slice() == la.map.as_slice() {
                        morphisms.push((a, b, format!("{}:{:?}", labels[a], h.apply(0))));
                        underlying.push(h.clone());
                    }
                }
            }
        }
        let identities = (0..levels.len())
            .map(|a| {
                (0..underlying.len())
                    .find(|&m| {
                        morphisms[m].0 == a
                            && morphisms[m].1 == a
                            && underlying[m].as_slice().iter().enumerate().all(|(p, &q)| p == q)
                    })
                    .expect("identity lies in the slice")
            })
            .collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.0, m.1)).collect();
        let category = FinCategory::new(labels.clone(), morphisms, identities, |g, f| {
            let composite = underlying[f].then(&underlying[g]).expect("composable");
            (0..underlying.len())
                .find(|&m| ends[m] == (ends[f].0, ends[g].1) && underlying[m].as_slice() == composite.as_slice())
                .expect("slice closed under composition")
        })
        .expect("slice is a category");
        Slice { base, levels, underlying, category, object_names: labels }
    }

    pub fn base(&self) -> &Arc<GSet> {
        &self.base
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn level_name(&self, i: usize) -> &str {
        &self.object_names[i]
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    /// The underlying orbit map of a slice morphism.
    pub fn underlying(&self, m: usize) -> &GMap {
        &self.underlying[m]
    }

    /// Levels whose structure map is an isomorphism (terminal objects when `V` is transitive).
    pub fn terminal_levels(&self) -> Vec<usize> {
        (0..self.levels.len()).filter(|&i| self.levels[i].map.is_iso()).collect()
    }

    /// Slice morphism with the given endpoints and underlying map.
    pub fn find_morphism(&self, from: usize, to: usize, map: &[usize]) -> Option<usize> {
        self.category.hom(from, to).iter().copied().find(|&m| self.underlying[m].as_slice() == map)
    }

    /// Longest chain of non-invertible morphisms in the slice.
    pub fn length(&self) -> usize {
        self.category.longest_noniso_chain().expect("orbit slices are EI with finite length")
    }
}

/// Validates that each hom-set agrees with brute-force enumeration.
pub fn check_homs_against_brute_force(orbits: &OrbitCat) -> Result<bool, OrbitalError> {
    for i in 0..orbits.len() {
        for j in 0..orbits.len() {
            let brute = crate::gmap::brute_force_maps(orbits.object(i), orbits.object(j))?;
            let fast = orbits.hom(i, j);
            if brute.len() != fast.len() || !brute.iter().all(|m| fast.contains(m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(name: &str) -> OrbitCat {
        OrbitCat::new(Arc::new(FiniteGroup::by_name(name).unwrap()))
    }

    #[test]
    fn hom_set_sizes() {
        let c2 = cat("C2");
        assert_eq!(c2.hom(0, 0).len(), 2);
        assert_eq!(c2.hom(1, 0).len(), 0);
        assert_eq!(c2.hom(0, 1).len(), 1);
        assert!(check_homs_against_brute_force(&cat("S3")).unwrap());
    }

    #[test]
    fn orbit_categories_are_atomic() {
        for name in ["1", "C2", "C3", "C4", "S3"] {
            assert!(cat(name).category().check_atomic().holds, "{name}");
        }
    }

    #[test]
    fn slice_lengths_over_point() {
        for (name, expected) in [("1", 0), ("C2", 1), ("C3", 1), ("C4", 2), ("S3", 2)] {
            let o = cat(name);
            let pt = o.object(o.point_index()).clone();
            assert_eq!(o.slice(pt).length(), expected, "{name}");
        }
    }

    #[test]
    fn slice_over_free_orbit_is_a_groupoid() {
        let o = cat("C3");
        let s = o.slice(o.object(0).clone());
        assert_eq!(s.len(), 3);
        assert_eq!(s.length(), 0);
        assert_eq!(s.terminal_levels().len(), 3);
    }

    #[test]
    fn object_names() {
        let o = cat("C4");
        let names: Vec<String> = (0..o.len()).map(|i| o.object_name(i)).collect();
        assert_eq!(names, ["C4/e", "C4/C2", "C4/C4"]);
        assert_eq!(o.index_by_name("C4/C2"), Some(1));
    }
}

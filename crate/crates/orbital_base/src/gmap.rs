use std::sync::Arc;

use crate::error::OrbitalError;
use crate::gset::GSet;

/// Cap on the number of functions scanned by brute-force enumeration.
pub const BRUTE_FORCE_CAP: usize = 5_000_000;

/// An equivariant map between `G`-sets.
#[derive(Clone, Debug)]
pub struct GMap {
    source: Arc<GSet>,
    target: Arc<GSet>,
    map: Vec<usize>,
}

impl PartialEq for GMap {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source.same_action(&other.source) && self.target.same_action(&other.target)
    }
}

impl Eq for GMap {}

impl GMap {
    pub fn new(source: Arc<GSet>, target: Arc<GSet>, map: Vec<usize>) -> Result<Self, OrbitalError> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(OrbitalError::Action("map has the wrong shape".into()));
        }
        for g in source.group().elements() {
            if let Some(p) = (0..source.len()).find(|&p| map[source.act(g, p)] != target.act(g, map[p])) {
                return Err(OrbitalError::NotEquivariant { group_element: g, point: p });
            }
        }
        Ok(GMap { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<GSet>, target: Arc<GSet>, map: Vec<usize>) -> Self {
        debug_assert!(GMap::new(source.clone(), target.clone(), map.clone()).is_ok());
        GMap { source, target, map }
    }

    pub fn identity(x: Arc<GSet>) -> Self {
        let map = (0..x.len()).collect();
        GMap { source: x.clone(), target: x, map }
    }

    /// The unique map to the one-point set.
    pub fn to_point(x: Arc<GSet>) -> Self {
        let pt = Arc::new(GSet::point(x.group().clone()));
        GMap { map: vec![0; x.len()], source: x, target: pt }
    }

    pub fn source(&self) -> &Arc<GSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GSet> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.map[p]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GMap) -> Result<GMap, OrbitalError> {
        if !self.target.same_action(&other.source) {
            return Err(OrbitalError::NotComposable);
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Ok(GMap { source: self.source.clone(), target: other.target.clone(), map })
    }

    pub fn is_iso(&self) -> bool {
        self.source.len() == self.target.len() && {
            let mut seen = vec![false; self.target.len()];
            self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        }
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_iso() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (p, &y) in self.map.iter().enumerate() {
            inv[y] = p;
        }
        Some(GMap { source: self.target.clone(), target: self.source.clone(), map: inv })
    }

    /// Restriction to a stable subset given as a sorted point list, together with the sub-`G`-set.
    pub fn restrict_to(&self, members: &[usize]) -> Result<GMap, OrbitalError> {
        let (sub, _) = self.source.sub_on(members)?;
        let map = members.iter().map(|&p| self.map[p]).collect();
        Ok(GMap { source: Arc::new(sub), target: self.target.clone(), map })
    }
}

/// All equivariant maps `X → Y`, enumerated orbit by orbit through fixed points:
/// on a transitive piece, a map is determined by where the basepoint goes, and
/// that image must be fixed by the basepoint's stabilizer.
pub fn equivariant_maps(x: &Arc<GSet>, y: &Arc<GSet>) -> Vec<GMap> {
    let group = x.group();
    let orbits = x.orbits();
    let choices: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| (0..y.len()).filter(|&q| o.stabilizer.iter().all(|&h| y.act(h, q) == q)).collect())
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; orbits.len()];
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let mut map = vec![usize::MAX; x.len()];
        for (o, (orbit, &k)) in orbits.iter().zip(&pick).enumerate() {
            let target_point = choices[o][k];
            for g in group.elements() {
                map[x.act(g, orbit.basepoint)] = y.act(g, target_point);
            }
        }
        out.push(GMap::new_unchecked(x.clone(), y.clone(), map));
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// All equivariant maps by scanning every function `X → Y`. Used as an oracle.
pub fn brute_force_maps(x: &Arc<GSet>, y: &Arc<GSet>) -> Result<Vec<GMap>, OrbitalError> {
    let (n, m) = (x.len(), y.len());
    let total = (m as f64).powi(n as i32);
    if total > BRUTE_FORCE_CAP as f64 {
        return Err(OrbitalError::TooLarge(format!("{m}^{n} functions")));
    }
    let mut out = Vec::new();
    if m == 0 {
        if n == 0 {
            out.push(GMap::new_unchecked(x.clone(), y.clone(), vec![]));
        }
        return Ok(out);
    }
    let mut f = vec![0usize; n];
    loop {
        if let Ok(map) = GMap::new(x.clone(), y.clone(), f.clone()) {
            out.push(map);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// An isomorphism `X → Y` if one exists.
pub fn find_isomorphism(x: &Arc<GSet>, y: &Arc<GSet>) -> Option<GMap> {
    if x.len() != y.len() {
        return None;
    }
    let xo = x.orbits();
    let yo = y.orbits();
    if xo.len() != yo.len() {
        return None;
    }
    let mut used = vec![false; yo.len()];
    let mut map = vec![usize::MAX; x.len()];
    if assign_orbits(x, y, &xo, &yo, 0, &mut used, &mut map) {
        Some(GMap::new_unchecked(x.clone(), y.clone(), map))
    } else {
        None
    }
}

fn assign_orbits(
    x: &GSet,
    y: &GSet,
    xo: &[crate::gset::Orbit],
    yo: &[crate::gset::Orbit],
    i: usize,
    used: &mut [bool],
    map: &mut [usize],
) -> bool {
    if i == xo.len() {
        return true;
    }
    let o = &xo[i];
    for j in 0..yo.len() {
        if used[j] || yo[j].points.len() != o.points.len() {
            continue;
        }
        // Same orbit size plus stabilizer containment forces equality.
        if let Some(&q) = yo[j].points.iter().find(|&&q| o.stabilizer.iter().all(|&h| y.act(h, q) == q)) {
            for g in x.group().elements() {
                map[x.act(g, o.basepoint)] = y.act(g, q);
            }
            used[j] = true;
            if assign_orbits(x, y, xo, yo, i + 1, used, map) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

/// `X ×_Z Y` with its two projections; points are pairs in lexicographic order.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Arc<GSet>,
    pub pairs: Vec<(usize, usize)>,
    pub proj1: GMap,
    pub proj2: GMap,
}

impl Pullback {
    /// Position of the pair `(x, y)` among the points, if it lies in the pullback.
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }

    /// The unique map from a cone `(p: C → X, q: C → Y)` into the pullback.
    pub fn induced(&self, p: &GMap, q: &GMap) -> Option<GMap> {
        let map: Option<Vec<usize>> = (0..p.source().len()).map(|c| self.index_of(p.apply(c), q.apply(c))).collect();
        GMap::new(p.source().clone(), self.object.clone(), map?).ok()
    }
}

pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback, OrbitalError> {
    if !f.target().same_action(g.target()) {
        return Err(OrbitalError::TargetMismatch);
    }
    let (x, y) = (f.source(), g.source());
    let pairs: Vec<(usize, usize)> = (0..x.len())
        .flat_map(|a| (0..y.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == g.apply(b))
        .collect();
    let group = x.group().clone();
    let act = group
        .elements()
        .map(|h| {
            pairs
                .iter()
                .map(|&(a, b)| pairs.binary_search(&(x.act(h, a), y.act(h, b))).expect("pullback is stable"))
                .collect()
        })
        .collect();
    let object = Arc::new(GSet::new(group, pairs.len(), act)?);
    let proj1 = GMap::new_unchecked(object.clone(), x.clone(), pairs.iter().map(|p| p.0).collect());
    let proj2 = GMap::new_unchecked(object.clone(), y.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { object, pairs, proj1, proj2 })
}

/// `W ×_V W ≅ W ⊔ C`: the off-diagonal part with its two projections to `W`.
#[derive(Clone, Debug)]
pub struct DiagonalComplement {
    pub complement: Arc<GSet>,
    pub first: GMap,
    pub second: GMap,
    /// Isomorphism `W ⊔ C → W ×_V W`.
    pub splitting: GMap,
}

pub fn diagonal_complement(w: &GMap) -> Result<DiagonalComplement, OrbitalError> {
    let pb = pullback(w, w)?;
    let off: Vec<usize> = (0..pb.pairs.len()).filter(|&i| pb.pairs[i].0 != pb.pairs[i].1).collect();
    let (c_set, _) = pb.object.sub_on(&off).map_err(|_| OrbitalError::DiagonalNotSummand)?;
    let diag: Vec<usize> = (0..pb.pairs.len()).filter(|&i| pb.pairs[i].0 == pb.pairs[i].1).collect();
    pb.object.sub_on(&diag).map_err(|_| OrbitalError::DiagonalNotSummand)?;
    let complement = Arc::new(c_set);
    let first =
        GMap::new_unchecked(complement.clone(), w.source().clone(), off.iter().map(|&i| pb.pairs[i].0).collect());
    let second =
        GMap::new_unchecked(complement.clone(), w.source().clone(), off.iter().map(|&i| pb.pairs[i].1).collect());
    let union = Arc::new(w.source().disjoint_union(&complement));
    let mut split: Vec<usize> = (0..w.source().len()).map(|p| pb.index_of(p, p).expect("diagonal pair")).collect();
    split.extend(off.iter().copied());
    let splitting = GMap::new(union, pb.object.clone(), split)?;
    debug_assert!(splitting.is_iso());
    Ok(DiagonalComplement { complement, first, second, splitting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn orbit(g: &Arc<FiniteGroup>, index: usize) -> Arc<GSet> {
        Arc::new(GSet::cosets(g.clone(), &g.subgroup_class_reps()[index]))
    }

    #[test]
    fn free_c2_squared_over_point() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let w = GMap::to_point(orbit(&g, 0));
        let pb = pullback(&w, &w).unwrap();
        assert_eq!(pb.object.len(), 4);
        assert_eq!(pb.object.orbits().len(), 2);
        let dc = diagonal_complement(&w).unwrap();
        assert_eq!(dc.complement.len(), 2);
        assert!(dc.complement.is_transitive());
    }

    #[test]
    fn s3_product_of_two_orbits_is_free() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let a = GMap::to_point(orbit(&g, 1));
        let b = GMap::to_point(orbit(&g, 2));
        let pb = pullback(&a, &b).unwrap();
        assert_eq!(pb.object.len(), 6);
        assert!(pb.object.is_transitive());
        assert_eq!(pb.object.orbits()[0].stabilizer, vec![0]);
    }

    #[test]
    fn diagonal_complement_of_iso_is_empty() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let w = GMap::identity(orbit(&g, 0));
        assert!(diagonal_complement(&w).unwrap().complement.is_empty());
    }

    #[test]
    fn fixed_point_enumeration_matches_brute_force() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let objs: Vec<_> = (0..4).map(|i| orbit(&g, i)).collect();
        for x in &objs {
            for y in &objs {
                assert_eq!(equivariant_maps(x, y).len(), brute_force_maps(x, y).unwrap().len());
            }
        }
    }

    #[test]
    fn isomorphism_between_relabelled_orbits() {
        let g = Arc::new(FiniteGroup::cyclic(4));
        let x = orbit(&g, 1);
        let y = Arc::new(GSet::new(g.clone(), 2, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap());
        assert!(find_isomorphism(&x, &y).is_some());
        let two_fixed = Arc::new(GSet::new(g, 2, vec![vec![0, 1]; 4]).unwrap());
        assert!(find_isomorphism(&x, &two_fixed).is_none());
    }
}

use std::sync::Arc;

use crate::error::OrbitalError;
use crate::group::FiniteGroup;

/// A finite left `G`-set, `act[g][p] = g·p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    points: usize,
    act: Vec<Vec<usize>>,
}

/// One transitive component with its smallest point as basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub basepoint: usize,
    pub stabilizer: Vec<usize>,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, points: usize, act: Vec<Vec<usize>>) -> Result<Self, OrbitalError> {
        if act.len() != group.order() || act.iter().any(|row| row.len() != points || row.iter().any(|&p| p >= points)) {
            return Err(OrbitalError::Action("table must be order × points with entries in range".into()));
        }
        let e = group.identity();
        if let Some(p) = (0..points).find(|&p| act[e][p] != p) {
            return Err(OrbitalError::Action(format!("identity moves point {p}")));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(p) = (0..points).find(|&p| act[g][act[h][p]] != act[gh][p]) {
                    return Err(OrbitalError::Action(format!("g={g}, h={h} not compatible at point {p}")));
                }
            }
        }
        Ok(GSet { group, points, act })
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        let act = vec![Vec::new(); group.order()];
        GSet { group, points: 0, act }
    }

    /// The one-point `G`-set.
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        let act = vec![vec![0]; group.order()];
        GSet { group, points: 1, act }
    }

    /// Left cosets `gH`, ordered by smallest element.
    pub fn cosets(group: Arc<FiniteGroup>, subgroup: &[usize]) -> Self {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for g in group.elements() {
            let mut coset: Vec<usize> = subgroup.iter().map(|&h| group.mul(g, h)).collect();
            coset.sort_unstable();
            if !reps.contains(&coset) {
                reps.push(coset);
            }
        }
        reps.sort();
        let index_of = |x: usize| reps.iter().position(|c| c.binary_search(&x).is_ok()).expect("cosets cover G");
        let act = group.elements().map(|g| reps.iter().map(|c| index_of(group.mul(g, c[0]))).collect()).collect();
        GSet { points: reps.len(), group, act }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    #[inline]
    pub fn act(&self, g: usize, p: usize) -> usize {
        self.act[g][p]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn stabilizer(&self, p: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act[g][p] == p).collect()
    }

    /// Transitive components ordered by smallest point.
    pub fn orbits(&self) -> Vec<Orbit> {
        let mut seen = vec![false; self.points];
        let mut out = Vec::new();
        for p in 0..self.points {
            if seen[p] {
                continue;
            }
            let mut pts: Vec<usize> = self.group.elements().map(|g| self.act[g][p]).collect();
            pts.sort_unstable();
            pts.dedup();
            for &q in &pts {
                seen[q] = true;
            }
            out.push(Orbit { points: pts, basepoint: p, stabilizer: self.stabilizer(p) });
        }
        out
    }

    /// For each point, the index of its orbit in [`GSet::orbits`] order.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.points];
        for (i, o) in self.orbits().iter().enumerate() {
            for &p in &o.points {
                idx[p] = i;
            }
        }
        idx
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// The sub-`G`-set on a union of orbits, with the inclusion as a point list.
    pub fn sub_on(&self, members: &[usize]) -> Result<(GSet, Vec<usize>), OrbitalError> {
        let mut pos = vec![usize::MAX; self.points];
        for (i, &p) in members.iter().enumerate() {
            pos[p] = i;
        }
        let mut act = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let row: Option<Vec<usize>> =
                members.iter().map(|&p| Some(pos[self.act[g][p]]).filter(|&q| q != usize::MAX)).collect();
            act.push(row.ok_or_else(|| OrbitalError::Action("subset is not stable".into()))?);
        }
        Ok((GSet { group: self.group.clone(), points: members.len(), act }, members.to_vec()))
    }

    /// `self ⊔ other`: points of `self` first.
    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let n = self.points;
        let act = self
            .group
            .elements()
            .map(|g| {
                let mut row = self.act[g].clone();
                row.extend(other.act[g].iter().map(|&p| p + n));
                row
            })
            .collect();
        GSet { group: self.group.clone(), points: n + other.points, act }
    }

    /// Same underlying action, regardless of which group handle is attached.
    pub fn same_action(&self, other: &GSet) -> bool {
        self.points == other.points && self.act == other.act
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_c2_has_one_free_orbit() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let x = GSet::cosets(g, &[0]);
        let orbits = x.orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].stabilizer, vec![0]);
    }

    #[test]
    fn trivial_action_on_two_points() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let x = GSet::new(g, 2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let orbits = x.orbits();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.stabilizer == vec![0, 1]));
    }

    #[test]
    fn s3_cosets_of_order_two_subgroup() {
        let g = Arc::new(FiniteGroup::symmetric3());
        let h = g.subgroup_class_reps()[1].clone();
        let x = GSet::cosets(g, &h);
        assert_eq!(x.len(), 3);
        let orbits = x.orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].stabilizer, h);
    }

    #[test]
    fn invalid_action_is_rejected() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0]];
        assert!(GSet::new(g, 3, bad).is_err());
    }
}

use crate::diagram::PosetDiagram;
use crate::linalg::{Cokernel, Kernel, Mat};

/// A colimit over a full subposet, presented as a quotient of the sum over its maximal elements.
#[derive(Clone, Debug)]
pub struct Colimit {
    /// Ambient indices of the subposet.
    pub members: Vec<usize>,
    pub maxima: Vec<usize>,
    offsets: Vec<usize>,
    /// For each member, the chosen maximal element above it.
    above: Vec<usize>,
    pub coker: Cokernel,
}

impl Colimit {
    pub fn dim(&self) -> usize {
        self.coker.dim()
    }

    fn block(&self, m: usize) -> usize {
        self.maxima.iter().position(|&x| x == m).expect("maximal element")
    }

    /// The chosen maximal element above a member.
    pub fn above(&self, member: usize) -> usize {
        let i = self.members.iter().position(|&x| x == member).expect("member of the colimit shape");
        self.above[i]
    }

    /// Embeds `D(member)` into the sum over maxima via its chosen maximal element.
    pub fn into_sum(&self, d: &PosetDiagram, member: usize) -> Mat {
        let m = self.above(member);
        let k = self.block(m);
        let total = *self.offsets.last().unwrap();
        let mut out = Mat::zeros(total, d.dim(member));
        out.put(self.offsets[k], 0, d.map(member, m));
        out
    }

    /// Cocone leg `D(member) → colim`.
    pub fn leg(&self, d: &PosetDiagram, member: usize) -> Mat {
        self.coker.quotient.mul(&self.into_sum(d, member))
    }

    /// The map out of the colimit determined by a cocone, given by its legs at the maxima.
    pub fn factor(&self, legs_at_maxima: &[Mat], target_dim: usize) -> Mat {
        let parts: Vec<&Mat> = legs_at_maxima.iter().collect();
        Mat::hstack(&parts, target_dim).mul(&self.coker.section)
    }

    /// Map induced by a natural transformation `d → e` restricted to the same subposet.
    pub fn induced(&self, target: &Colimit, e: &PosetDiagram, components: &[Mat]) -> Mat {
        let legs: Vec<Mat> = self.maxima.iter().map(|&m| target.leg(e, m).mul(&components[m])).collect();
        self.factor(&legs, target.dim())
    }

    /// Map induced by enlarging the index subposet: `self` must index a subset of `target`.
    pub fn to_larger(&self, target: &Colimit, d: &PosetDiagram) -> Mat {
        let legs: Vec<Mat> = self.maxima.iter().map(|&m| target.leg(d, m)).collect();
        self.factor(&legs, target.dim())
    }
}

/// Colimit of `d` over the full subposet on `members` (ambient indices).
pub fn colim_over(d: &PosetDiagram, members: &[usize]) -> Colimit {
    let p = d.shape();
    let maxima: Vec<usize> = members.iter().copied().filter(|&a| !members.iter().any(|&b| p.lt(a, b))).collect();
    let mut offsets = vec![0];
    for &m in &maxima {
        offsets.push(offsets.last().unwrap() + d.dim(m));
    }
    let total = *offsets.last().unwrap();
    let mut relations: Vec<Mat> = Vec::new();
    let mut above = Vec::with_capacity(members.len());
    for &q in members {
        let ups: Vec<usize> = (0..maxima.len()).filter(|&k| p.leq(q, maxima[k])).collect();
        above.push(maxima[ups[0]]);
        let k0 = ups[0];
        for &k in &ups[1..] {
            let mut r = Mat::zeros(total, d.dim(q));
            r.put(offsets[k0], 0, d.map(q, maxima[k0]));
            r.put(offsets[k], 0, &d.map(q, maxima[k]).neg());
            relations.push(r);
        }
    }
    let parts: Vec<&Mat> = relations.iter().collect();
    let coker = Mat::hstack(&parts, total).cokernel();
    Colimit { members: members.to_vec(), maxima, offsets, above, coker }
}

/// Colimit over the whole shape.
pub fn colim(d: &PosetDiagram) -> Colimit {
    let all: Vec<usize> = (0..d.len()).collect();
    colim_over(d, &all)
}

/// A limit over a full subposet, presented as compatible families on its minimal elements.
#[derive(Clone, Debug)]
pub struct Limit {
    pub members: Vec<usize>,
    pub minima: Vec<usize>,
    offsets: Vec<usize>,
    below: Vec<usize>,
    pub kernel: Kernel,
}

impl Limit {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    fn block(&self, m: usize) -> usize {
        self.minima.iter().position(|&x| x == m).expect("minimal element")
    }

    pub fn below(&self, member: usize) -> usize {
        let i = self.members.iter().position(|&x| x == member).expect("member of the limit shape");
        self.below[i]
    }

    /// Projection from the sum over minima to `D(member)`.
    pub fn from_sum(&self, d: &PosetDiagram, member: usize) -> Mat {
        let m = self.below(member);
        let k = self.block(m);
        let total = *self.offsets.last().unwrap();
        let mut out = Mat::zeros(d.dim(member), total);
        out.put(0, self.offsets[k], d.map(m, member));
        out
    }

    /// Cone leg `lim → D(member)`.
    pub fn leg(&self, d: &PosetDiagram, member: usize) -> Mat {
        self.from_sum(d, member).mul(&self.kernel.basis)
    }

    /// The map into the limit determined by a cone, given by its legs at the minima.
    pub fn factor(&self, legs_at_minima: &[Mat], source_dim: usize) -> Mat {
        let parts: Vec<&Mat> = legs_at_minima.iter().collect();
        self.kernel.coordinates(&Mat::vstack(&parts, source_dim))
    }

    /// Map induced by a natural transformation `d → e` restricted to the same subposet.
    pub fn induced(&self, source: &Limit, d: &PosetDiagram, components: &[Mat]) -> Mat {
        let legs: Vec<Mat> = self.minima.iter().map(|&m| components[m].mul(&source.leg(d, m))).collect();
        self.factor(&legs, source.dim())
    }

    /// Map induced by shrinking the index subposet: `self` must index a subset of `source`.
    pub fn from_larger(&self, source: &Limit, d: &PosetDiagram) -> Mat {
        let legs: Vec<Mat> = self.minima.iter().map(|&m| source.leg(d, m)).collect();
        self.factor(&legs, source.dim())
    }
}

/// Limit of `d` over the full subposet on `members` (ambient indices).
pub fn lim_over(d: &PosetDiagram, members: &[usize]) -> Limit {
    let p = d.shape();
    let minima: Vec<usize> = members.iter().copied().filter(|&a| !members.iter().any(|&b| p.lt(b, a))).collect();
    let mut offsets = vec![0];
    for &m in &minima {
        offsets.push(offsets.last().unwrap() + d.dim(m));
    }
    let total = *offsets.last().unwrap();
    let mut constraints: Vec<Mat> = Vec::new();
    let mut below = Vec::with_capacity(members.len());
    for &q in members {
        let downs: Vec<usize> = (0..minima.len()).filter(|&k| p.leq(minima[k], q)).collect();
        below.push(minima[downs[0]]);
        let k0 = downs[0];
        for &k in &downs[1..] {
            let mut c = Mat::zeros(d.dim(q), total);
            c.put(0, offsets[k0], d.map(minima[k0], q));
            c.put(0, offsets[k], &d.map(minima[k], q).neg());
            constraints.push(c);
        }
    }
    let parts: Vec<&Mat> = constraints.iter().collect();
    let kernel = Mat::vstack(&parts, total).kernel();
    Limit { members: members.to_vec(), minima, offsets, below, kernel }
}

pub fn lim(d: &PosetDiagram) -> Limit {
    let all: Vec<usize> = (0..d.len()).collect();
    lim_over(d, &all)
}

/// Elements other than the bottom, the index set of the punctured shape.
pub fn punctured(d: &PosetDiagram) -> Vec<usize> {
    let b = d.shape().bottom();
    (0..d.len()).filter(|&x| Some(x) != b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice_core::FinLattice;

    fn pushout_of_injections() -> PosetDiagram {
        let sq = FinLattice::powerset(2).unwrap();
        let p = sq.poset().clone();
        let dims = vec![1, 2, 2, 0];
        let d = PosetDiagram::new(p.clone(), dims, |lo, hi| match (lo, hi) {
            (0, 1) => Mat::from_i64(2, 1, &[1, 0]),
            (0, 2) => Mat::from_i64(2, 1, &[0, 1]),
            _ => Mat::zeros(0, 2),
        })
        .unwrap();
        d.restrict(&[0, 1, 2])
    }

    #[test]
    fn pushout_dimension() {
        let span = pushout_of_injections();
        assert_eq!(colim(&span).dim(), 3);
    }

    #[test]
    fn top_element_colimit_is_value() {
        let sq = FinLattice::powerset(2).unwrap();
        let d = PosetDiagram::constant(sq.poset().clone(), 2);
        let c = colim(&d);
        assert_eq!(c.dim(), 2);
        assert!(c.leg(&d, 3).is_identity());
    }

    #[test]
    fn limit_into_zero_sources() {
        let sq = FinLattice::powerset(2).unwrap();
        let d =
            PosetDiagram::new(sq.poset().clone(), vec![0, 0, 0, 3], |_, hi| Mat::zeros(if hi == 3 { 3 } else { 0 }, 0))
                .unwrap();
        assert_eq!(lim_over(&d, &[1, 2, 3]).dim(), 0);
    }

    #[test]
    fn constant_square_limit() {
        let sq = FinLattice::powerset(2).unwrap();
        let d = PosetDiagram::constant(sq.poset().clone(), 2);
        let l = lim_over(&d, &punctured(&d));
        assert_eq!(l.dim(), 2);
    }
}

//! Homotopy colimits by the bar construction relative to the isomorphisms, and
//! homotopy limits by duality.
//!
//! Sign convention, used everywhere: an element of `F(c_0)_q` sitting on a chain
//! of length `k` has total degree `k + q`, and the total differential is
//! `D = d_F + (-1)^q ∂` where `∂ = Σ_i (-1)^i d_i` is the simplicial boundary.
//! With the sign on the internal degree `q` the two differentials anticommute
//! exactly, so `D∘D = 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use kan_vect::{q, Mat};

use crate::complex::{ChainComplex, ChainMap};
use crate::diagram::CatDiagram;
use crate::error::HochError;
use crate::shape::Chains;

/// Largest ambient dimension of a single totalization.
pub const TOTAL_CAP: usize = 20_000;

#[derive(Clone, Debug)]
struct Block {
    /// Start of each chain's coordinates in the ambient sum.
    offsets: Vec<usize>,
    ambient: usize,
    /// Quotient and section for the coinvariants; `None` when there are no relations.
    quotient: Option<(Mat, Mat)>,
    dim: usize,
}

impl Block {
    fn project(&self, m: Mat) -> Mat {
        match &self.quotient {
            Some((qt, _)) => qt.mul(&m),
            None => m,
        }
    }

    fn lift(&self, m: Mat) -> Mat {
        match &self.quotient {
            Some((_, s)) => m.mul(s),
            None => m,
        }
    }
}

/// The totalization of the relative bar construction of a diagram.
#[derive(Clone, Debug)]
pub struct Hocolim {
    diagram: CatDiagram,
    chains: Arc<Chains>,
    blocks: BTreeMap<(usize, i32), Block>,
    /// For each total degree, the blocks `(k, q)` in order with their offsets.
    layout: BTreeMap<i32, Vec<(usize, i32, usize)>>,
    complex: ChainComplex,
}

impl Hocolim {
    pub fn new(diagram: &CatDiagram) -> Result<Self, HochError> {
        let chains = diagram.shape().chains()?;
        let cat = diagram.shape().category();
        let mut degrees: Vec<i32> = diagram.values().iter().flat_map(ChainComplex::degrees).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut blocks = BTreeMap::new();
        let mut total = 0;
        for (k, level) in chains.levels.iter().enumerate() {
            for &qd in &degrees {
                let mut offsets = Vec::with_capacity(level.chains.len());
                let mut ambient = 0;
                for c in &level.chains {
                    offsets.push(ambient);
                    ambient += diagram.value(c.start()).dim(qd);
                }
                if ambient == 0 {
                    continue;
                }
                total += ambient;
                if total > TOTAL_CAP {
                    return Err(HochError::TooLarge { dim: total, cap: TOTAL_CAP });
                }
                let mut columns: Vec<Mat> = Vec::new();
                for r in &level.relations {
                    let x = diagram.value(level.chains[r.first].start()).dim(qd);
                    if x == 0 {
                        continue;
                    }
                    let mut m = Mat::zeros(ambient, x);
                    m.put(offsets[r.first], 0, &Mat::identity(x));
                    let second = match r.act {
                        Some(g) => {
                            let (a, b) = (cat.src(g), cat.tgt(g));
                            diagram.map(g).at(qd, diagram.value(a), diagram.value(b)).neg()
                        }
                        None => Mat::identity(x).neg(),
                    };
                    let o = offsets[r.second];
                    for i in 0..second.rows() {
                        for j in 0..x {
                            let v = m.get(o + i, j) + second.get(i, j);
                            m.set(o + i, j, v);
                        }
                    }
                    columns.push(m);
                }
                let quotient = if columns.is_empty() {
                    None
                } else {
                    let refs: Vec<&Mat> = columns.iter().collect();
                    let coker = Mat::hstack(&refs, ambient).cokernel();
                    Some((coker.quotient, coker.section))
                };
                let dim = quotient.as_ref().map_or(ambient, |(qt, _)| qt.rows());
                if dim > 0 {
                    blocks.insert((k, qd), Block { offsets, ambient, quotient, dim });
                }
            }
        }
        let mut layout: BTreeMap<i32, Vec<(usize, i32, usize)>> = BTreeMap::new();
        for &(k, qd) in blocks.keys() {
            let entry = layout.entry(k as i32 + qd).or_default();
            let offset = entry.last().map_or(0, |&(k0, q0, o)| o + blocks[&(k0, q0)].dim);
            entry.push((k, qd, offset));
        }
        let mut h = Hocolim { diagram: diagram.clone(), chains, blocks, layout, complex: ChainComplex::zero() };
        h.complex = h.totalize();
        Ok(h)
    }

    fn tot_dim(&self, n: i32) -> usize {
        self.layout.get(&n).map_or(0, |v| v.iter().map(|&(k, qd, _)| self.blocks[&(k, qd)].dim).sum())
    }

    fn offset(&self, n: i32, k: usize, qd: i32) -> Option<usize> {
        self.layout.get(&n)?.iter().find(|&&(k0, q0, _)| (k0, q0) == (k, qd)).map(|&(_, _, o)| o)
    }

    fn totalize(&self) -> ChainComplex {
        let cat = self.diagram.shape().category();
        let dims: BTreeMap<i32, usize> = self.layout.keys().map(|&n| (n, self.tot_dim(n))).collect();
        let mut d = BTreeMap::new();
        for (&n, entries) in &self.layout {
            let rows = self.tot_dim(n - 1);
            if rows == 0 {
                continue;
            }
            let mut m = Mat::zeros(rows, dims[&n]);
            for &(k, qd, col) in entries {
                let src = &self.blocks[&(k, qd)];
                let level = &self.chains.levels[k];
                if let (Some(tgt), Some(row)) = (self.blocks.get(&(k, qd - 1)), self.offset(n - 1, k, qd - 1)) {
                    let mut amb = Mat::zeros(tgt.ambient, src.ambient);
                    for (i, c) in level.chains.iter().enumerate() {
                        let v = self.diagram.value(c.start());
                        if v.dim(qd) > 0 && v.dim(qd - 1) > 0 {
                            amb.put(tgt.offsets[i], src.offsets[i], &v.d(qd));
                        }
                    }
                    m.put(row, col, &tgt.project(src.lift(amb)));
                }
                if k == 0 {
                    continue;
                }
                if let (Some(tgt), Some(row)) = (self.blocks.get(&(k - 1, qd)), self.offset(n - 1, k - 1, qd)) {
                    let sign = if qd.rem_euclid(2) == 0 { 1 } else { -1 };
                    let mut amb = Mat::zeros(tgt.ambient, src.ambient);
                    for (i, c) in level.chains.iter().enumerate() {
                        let x = self.diagram.value(c.start()).dim(qd);
                        if x == 0 {
                            continue;
                        }
                        for face in &level.faces[i] {
                            let s = q(sign * face.sign);
                            let block = match face.act {
                                Some(f) => {
                                    let (a, b) = (cat.src(f), cat.tgt(f));
                                    self.diagram.map(f).at(qd, self.diagram.value(a), self.diagram.value(b)).scale(&s)
                                }
                                None => Mat::identity(x).scale(&s),
                            };
                            add_block(&mut amb, tgt.offsets[face.target], src.offsets[i], &block);
                        }
                    }
                    m.put(row, col, &tgt.project(src.lift(amb)));
                }
            }
            d.insert(n, m);
        }
        ChainComplex::from_parts(dims, d)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    /// The structure map `F(c) → hocolim F` from the chain of length zero at `c`.
    pub fn leg(&self, c: usize) -> ChainMap {
        let value = self.diagram.value(c);
        ChainMap::from_fn(value, &self.complex, |n| {
            let mut m = Mat::zeros(self.tot_dim(n), value.dim(n));
            if let (Some(b), Some(row)) = (self.blocks.get(&(0, n)), self.offset(n, 0, n)) {
                let mut amb = Mat::zeros(b.ambient, value.dim(n));
                amb.put(b.offsets[c], 0, &Mat::identity(value.dim(n)));
                m.put(row, 0, &b.project(amb));
            }
            m
        })
    }

    /// The map `hocolim F → Z` induced by a strict cocone `legs[c]: F(c) → Z`.
    /// The legs must be natural and invariant under isomorphisms.
    pub fn factor_cocone(&self, z: &ChainComplex, legs: &[ChainMap]) -> ChainMap {
        ChainMap::from_fn(&self.complex, z, |n| {
            let mut m = Mat::zeros(z.dim(n), self.tot_dim(n));
            if let (Some(b), Some(col)) = (self.blocks.get(&(0, n)), self.offset(n, 0, n)) {
                let mut amb = Mat::zeros(z.dim(n), b.ambient);
                for (c, leg) in legs.iter().enumerate() {
                    let v = self.diagram.value(c);
                    if v.dim(n) > 0 {
                        amb.put(0, b.offsets[c], &leg.at(n, v, z));
                    }
                }
                m.put(0, col, &b.lift(amb));
            }
            m
        })
    }

    /// The map `hocolim F → hocolim F'` induced by a functor `φ` between the
    /// shapes (on objects and morphisms) and a natural map `η_c: F(c) → F'(φ c)`.
    /// Chains containing an arrow sent to an isomorphism map to zero.
    pub fn induced_along(
        &self,
        target: &Hocolim,
        on_objects: &dyn Fn(usize) -> usize,
        on_morphisms: &dyn Fn(usize) -> usize,
        eta: &[ChainMap],
    ) -> ChainMap {
        let tcat = target.diagram.shape().category();
        ChainMap::from_fn(&self.complex, &target.complex, |n| {
            let mut m = Mat::zeros(target.tot_dim(n), self.tot_dim(n));
            for &(k, qd, col) in self.layout.get(&n).into_iter().flatten() {
                let (Some(tb), Some(row)) = (target.blocks.get(&(k, qd)), target.offset(n, k, qd)) else { continue };
                let sb = &self.blocks[&(k, qd)];
                let mut amb = Mat::zeros(tb.ambient, sb.ambient);
                for (i, c) in self.chains.levels[k].chains.iter().enumerate() {
                    let v = self.diagram.value(c.start());
                    if v.dim(qd) == 0 {
                        continue;
                    }
                    let arrows: Vec<usize> = c.arrows.iter().map(|&f| on_morphisms(f)).collect();
                    if arrows.iter().any(|&f| tcat.is_iso(f)) {
                        continue;
                    }
                    let start = on_objects(c.start());
                    let j = target.chains.find(start, &arrows).expect("image of a chain is a chain");
                    let w = target.diagram.value(start);
                    amb.put(tb.offsets[j], sb.offsets[i], &eta[c.start()].at(qd, v, w));
                }
                m.put(row, col, &tb.project(sb.lift(amb)));
            }
            m
        })
    }

    /// The map induced by a natural transformation between diagrams on the same shape.
    pub fn induced(&self, target: &Hocolim, eta: &[ChainMap]) -> ChainMap {
        self.induced_along(target, &|c| c, &|f| f, eta)
    }
}

fn add_block(m: &mut Mat, r: usize, c: usize, block: &Mat) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let b = block.get(i, j);
            if !num_is_zero(b) {
                let v = m.get(r + i, c + j) + b;
                m.set(r + i, c + j, v);
            }
        }
    }
}

fn num_is_zero(x: &kan_vect::Q) -> bool {
    use num::Zero;
    x.is_zero()
}

/// Homotopy limit, computed as the dual of the homotopy colimit of the dual
/// diagram on the opposite category.
#[derive(Clone, Debug)]
pub struct Holim {
    inner: Hocolim,
    complex: ChainComplex,
}

impl Holim {
    pub fn new(diagram: &CatDiagram) -> Result<Self, HochError> {
        let inner = Hocolim::new(&diagram.dual())?;
        let complex = inner.complex.dual();
        Ok(Holim { inner, complex })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// The structure map `holim F → F(c)`.
    pub fn leg(&self, c: usize) -> ChainMap {
        self.inner.leg(c).dual()
    }

    /// The map `Z → holim F` induced by a strict cone `legs[c]: Z → F(c)`.
    pub fn factor_cone(&self, z: &ChainComplex, legs: &[ChainMap]) -> ChainMap {
        let duals: Vec<ChainMap> = legs.iter().map(ChainMap::dual).collect();
        self.inner.factor_cocone(&z.dual(), &duals).dual()
    }

    /// The map `holim F' → holim F` induced by a functor `φ` from this shape to the
    /// source's shape and natural maps `η_c: F'(φ c) → F(c)`.
    pub fn induced_from(
        &self,
        source: &Holim,
        on_objects: &dyn Fn(usize) -> usize,
        on_morphisms: &dyn Fn(usize) -> usize,
        eta: &[ChainMap],
    ) -> ChainMap {
        let duals: Vec<ChainMap> = eta.iter().map(ChainMap::dual).collect();
        self.inner.induced_along(&source.inner, on_objects, on_morphisms, &duals).dual()
    }

    /// The map induced by a natural transformation `η: F' → F` on the same shape.
    pub fn induced(&self, source: &Holim, eta: &[ChainMap]) -> ChainMap {
        self.induced_from(source, &|c| c, &|f| f, eta)
    }
}

/// Homotopy colimit of a diagram over a finite poset.
pub fn hocolim_poset(d: &CatDiagram) -> Result<ChainComplex, HochError> {
    Ok(Hocolim::new(d)?.complex)
}

/// Homotopy limit of a diagram over a finite poset.
pub fn holim_poset(d: &CatDiagram) -> Result<ChainComplex, HochError> {
    Ok(Holim::new(d)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::quasi_iso;
    use crate::shape::Shape;
    use lattice_core::{FinLattice, FinPoset};
    use std::collections::BTreeMap;

    fn two_term() -> ChainComplex {
        let dims = BTreeMap::from([(0, 2), (1, 1)]);
        ChainComplex::new(dims, BTreeMap::from([(1, Mat::from_i64(2, 1, &[1, 0]))])).unwrap()
    }

    fn extended_by_zero(p: &FinPoset, at: usize, x: &ChainComplex) -> CatDiagram {
        let shape = Shape::from_poset(p);
        let values = (0..p.len()).map(|a| if a == at { x.clone() } else { ChainComplex::zero() }).collect();
        CatDiagram::from_covers(shape, values, |_, _| ChainMap::zero()).unwrap()
    }

    #[test]
    fn punctured_square_suspends() {
        let l = FinLattice::powerset(2).unwrap();
        let p = l.poset().full_subposet(&[0, 1, 2]);
        let x = ChainComplex::concentrated(0, 1).direct_sum(&two_term().shift(2));
        let h = hocolim_poset(&extended_by_zero(&p, 0, &x)).unwrap();
        assert_eq!(h.homology(), x.shift(1).homology());
    }

    #[test]
    fn bottom_punctured_square_loops() {
        let l = FinLattice::powerset(2).unwrap();
        let p = l.poset().full_subposet(&[1, 2, 3]);
        let y = ChainComplex::concentrated(2, 3);
        let h = holim_poset(&extended_by_zero(&p, 2, &y)).unwrap();
        assert_eq!(h.homology(), y.shift(-1).homology());
    }

    #[test]
    fn top_leg_is_a_quasi_isomorphism() {
        let l = FinLattice::powerset(2).unwrap();
        let shape = Shape::from_poset(l.poset());
        let x = two_term();
        let values = vec![x.clone(); 4];
        let d = CatDiagram::from_covers(shape, values, |_, _| ChainMap::identity(&x)).unwrap();
        let h = Hocolim::new(&d).unwrap();
        assert!(quasi_iso(&h.leg(3), &x, h.complex()).quasi_iso);
        let lim = Holim::new(&d).unwrap();
        assert!(quasi_iso(&lim.leg(0), lim.complex(), &x).quasi_iso);
    }

    #[test]
    fn orbit_category_constant_diagram_is_contractible_to_a_point() {
        let g = Arc::new(orbital_base::FiniteGroup::cyclic(2));
        let orbits = orbital_base::OrbitCat::new(g);
        let shape = Shape::new(orbits.category()).unwrap();
        let unit = ChainComplex::concentrated(0, 1);
        let n = shape.category().morphism_count();
        let d = CatDiagram::new(shape.clone(), vec![unit.clone(); 2], vec![ChainMap::identity(&unit); n]).unwrap();
        assert_eq!(Hocolim::new(&d).unwrap().complex().homology(), BTreeMap::from([(0, 1)]));
        assert_eq!(Holim::new(&d).unwrap().complex().homology(), BTreeMap::from([(0, 1)]));
    }
}

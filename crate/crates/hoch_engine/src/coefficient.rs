use std::collections::BTreeMap;
use std::sync::Arc;

use kan_vect::{q, Mat};
use orbital_base::{FiniteGroup, GSet, OrbitCat, Slice};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{quasi_iso, ChainComplex, ChainMap, ComplexFile, QiVerdict};
use crate::diagram::{same_map, CatDiagram};
use crate::error::HochError;
use crate::shape::Shape;

/// An orbit category together with one of its slices, shared by all
/// coefficient systems living over that slice.
#[derive(Debug)]
pub struct SliceContext {
    orbits: Arc<OrbitCat>,
    slice: Arc<Slice>,
    shape: Arc<Shape>,
}

impl SliceContext {
    pub fn over(orbits: Arc<OrbitCat>, base: Arc<GSet>) -> Result<Arc<Self>, HochError> {
        let slice = Arc::new(orbits.slice(base));
        let shape = Shape::new(slice.category().clone())?;
        Ok(Arc::new(SliceContext { orbits, slice, shape }))
    }

    /// The slice over the one-point `G`-set, i.e. the orbit category itself.
    pub fn over_point(orbits: Arc<OrbitCat>) -> Result<Arc<Self>, HochError> {
        let pt = orbits.object(orbits.point_index()).clone();
        Self::over(orbits, pt)
    }

    pub fn for_group(name: &str) -> Result<Arc<Self>, HochError> {
        let group = Arc::new(FiniteGroup::by_name(name)?);
        Self::over_point(Arc::new(OrbitCat::new(group)))
    }

    pub fn orbits(&self) -> &Arc<OrbitCat> {
        &self.orbits
    }

    pub fn slice(&self) -> &Arc<Slice> {
        &self.slice
    }

    /// The slice category as a shape; coefficient systems are functors on its opposite.
    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.slice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slice.is_empty()
    }

    pub fn level_name(&self, level: usize) -> &str {
        self.slice.level_name(level)
    }

    pub fn level_names(&self) -> Vec<String> {
        (0..self.len()).map(|l| self.level_name(l).to_string()).collect()
    }

    /// Slice morphisms `a → b`.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.slice.category().hom(a, b)
    }
}

/// A contravariant functor from a slice of the orbit category to chain
/// complexes: a complex per level and, for each morphism `f: a → b`, a chain map
/// `X(b) → X(a)`.
#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    ctx: Arc<SliceContext>,
    diagram: CatDiagram,
}

/// A map of coefficient systems, one chain map per level.
pub type SystemMap = Vec<ChainMap>;

impl CoefficientSystem {
    /// `restrictions[f]` is the map `X(tgt f) → X(src f)`.
    pub fn new(
        ctx: Arc<SliceContext>,
        values: Vec<ChainComplex>,
        restrictions: Vec<ChainMap>,
    ) -> Result<Self, HochError> {
        let diagram = CatDiagram::new(ctx.shape.opposite(), values, restrictions)?;
        Ok(CoefficientSystem { ctx, diagram })
    }

    /// Constant system with identity restrictions.
    pub fn constant(ctx: Arc<SliceContext>, c: &ChainComplex) -> Self {
        let n = ctx.slice.category().morphism_count();
        let values = vec![c.clone(); ctx.len()];
        let diagram =
            CatDiagram::new(ctx.shape.opposite(), values, vec![ChainMap::identity(c); n]).expect("constant functor");
        CoefficientSystem { ctx, diagram }
    }

    /// The unit: `Q` in degree 0 at every level.
    pub fn unit(ctx: Arc<SliceContext>) -> Self {
        Self::constant(ctx, &ChainComplex::concentrated(0, 1))
    }

    pub fn zero(ctx: Arc<SliceContext>) -> Self {
        Self::constant(ctx, &ChainComplex::zero())
    }

    pub fn context(&self) -> &Arc<SliceContext> {
        &self.ctx
    }

    /// The underlying functor on the opposite of the slice category.
    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    pub fn value(&self, level: usize) -> &ChainComplex {
        self.diagram.value(level)
    }

    pub fn values(&self) -> &[ChainComplex] {
        self.diagram.values()
    }

    /// Restriction `X(b) → X(a)` along a slice morphism `a → b`.
    pub fn restriction(&self, f: usize) -> &ChainMap {
        self.diagram.map(f)
    }

    pub fn total_dim(&self) -> usize {
        self.diagram.total_dim()
    }

    /// Homology per level.
    pub fn homology(&self) -> Vec<BTreeMap<i32, usize>> {
        self.values().iter().map(ChainComplex::homology).collect()
    }

    pub fn direct_sum(&self, other: &CoefficientSystem) -> CoefficientSystem {
        CoefficientSystem { ctx: self.ctx.clone(), diagram: self.diagram.direct_sum(&other.diagram) }
    }

    /// Levelwise shift, keeping restriction components.
    pub fn shift(&self, k: i32) -> CoefficientSystem {
        let cat = self.diagram.shape().category();
        let values: Vec<ChainComplex> = self.values().iter().map(|c| c.shift(k)).collect();
        let maps = (0..cat.morphism_count()).map(|f| self.restriction(f).shift(k)).collect();
        let diagram = CatDiagram::new(self.diagram.shape().clone(), values, maps).expect("shift preserves functors");
        CoefficientSystem { ctx: self.ctx.clone(), diagram }
    }

    pub fn is_natural(&self, other: &CoefficientSystem, f: &SystemMap) -> bool {
        self.diagram.is_natural(&other.diagram, f)
    }

    /// Levelwise quasi-isomorphism verdicts for a map of systems.
    pub fn quasi_iso_levels(&self, other: &CoefficientSystem, f: &SystemMap) -> Vec<QiVerdict> {
        (0..self.ctx.len()).map(|l| quasi_iso(&f[l], self.value(l), other.value(l))).collect()
    }

    pub fn same_as(&self, other: &CoefficientSystem) -> bool {
        let cat = self.diagram.shape().category();
        self.values() == other.values()
            && (0..cat.morphism_count()).all(|f| {
                same_map(self.restriction(f), other.restriction(f), self.value(cat.src(f)), self.value(cat.tgt(f)))
            })
    }
}

/// Building blocks for seeded random coefficient systems.
pub mod pieces {
    use super::*;

    /// `Q[Hom(−, a)]` in degree 0, with restriction by precomposition.
    pub fn representable(ctx: &Arc<SliceContext>, a: usize) -> CoefficientSystem {
        let cat = ctx.slice.category();
        let basis: Vec<Vec<usize>> = (0..ctx.len()).map(|b| cat.hom(b, a).to_vec()).collect();
        let values: Vec<ChainComplex> = basis.iter().map(|h| ChainComplex::concentrated(0, h.len())).collect();
        let maps = (0..cat.morphism_count())
            .map(|f| {
                let (s, t) = (cat.src(f), cat.tgt(f));
                let m = Mat::from_fn(basis[s].len(), basis[t].len(), |i, j| {
                    if cat.compose(basis[t][j], f) == basis[s][i] {
                        q(1)
                    } else {
                        q(0)
                    }
                });
                ChainMap::from_fn(&values[t], &values[s], |_| m.clone())
            })
            .collect();
        CoefficientSystem::new(ctx.clone(), values, maps).expect("representables are functors")
    }

    /// Characters `Aut(a) → {±1}` of the automorphism group of a level.
    pub fn characters(ctx: &Arc<SliceContext>, a: usize) -> Vec<Vec<i64>> {
        let cat = ctx.slice.category();
        let autos = cat.hom(a, a).to_vec();
        let mut out = Vec::new();
        for bits in 0u32..(1 << autos.len()) {
            let chi: Vec<i64> = (0..autos.len()).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            let pos = |f: usize| autos.iter().position(|&g| g == f).expect("automorphism");
            let multiplicative = autos
                .iter()
                .enumerate()
                .all(|(i, &g)| autos.iter().enumerate().all(|(j, &h)| chi[pos(cat.compose(g, h))] == chi[i] * chi[j]));
            if multiplicative {
                out.push(autos.iter().map(|&g| chi[pos(g)]).collect());
            }
        }
        out
    }

    /// `Q` at the levels isomorphic to `a`, with automorphisms acting through a
    /// character and every non-invertible restriction zero.
    pub fn simple(ctx: &Arc<SliceContext>, a: usize, character: &[i64]) -> CoefficientSystem {
        let cat = ctx.slice.category();
        let autos = cat.hom(a, a).to_vec();
        let iso_class: Vec<bool> = (0..ctx.len()).map(|b| cat.isomorphic(a, b)).collect();
        let values: Vec<ChainComplex> =
            iso_class.iter().map(|&i| ChainComplex::concentrated(0, usize::from(i))).collect();
        // Transport the character along a chosen isomorphism from `a` to each level in its class.
        let to_level: Vec<Option<usize>> =
            (0..ctx.len()).map(|b| cat.hom(a, b).iter().copied().find(|&f| cat.is_iso(f))).collect();
        let maps = (0..cat.morphism_count())
            .map(|f| {
                let (s, t) = (cat.src(f), cat.tgt(f));
                if !cat.is_iso(f) || !iso_class[s] {
                    return ChainMap::zero();
                }
                // Conjugate f: s → t to an automorphism of a.
                let into_s = to_level[s].expect("s ≅ a");
                let out_of_t = cat.inverse(to_level[t].expect("t ≅ a")).expect("iso");
                let auto = cat.compose(out_of_t, cat.compose(f, into_s));
                let k = autos.iter().position(|&g| g == auto).expect("automorphism of a");
                ChainMap::from_fn(&values[t], &values[s], |_| Mat::from_i64(1, 1, &[character[k]]))
            })
            .collect();
        CoefficientSystem::new(ctx.clone(), values, maps).expect("simple systems are functors")
    }

    /// Natural map `Q[Hom(−, a)] → Q[Hom(−, b)]` given by postcomposition with
    /// `Σ coeffs[i] · hom(a, b)[i]`.
    pub fn yoneda_map(ctx: &Arc<SliceContext>, a: usize, b: usize, coeffs: &[i64]) -> SystemMap {
        let cat = ctx.slice.category();
        let homs = cat.hom(a, b).to_vec();
        (0..ctx.len())
            .map(|c| {
                let src = cat.hom(c, a).to_vec();
                let tgt = cat.hom(c, b).to_vec();
                let mut m = Mat::zeros(tgt.len(), src.len());
                for (j, &h) in src.iter().enumerate() {
                    for (k, &g) in homs.iter().enumerate() {
                        let i = tgt.iter().position(|&x| x == cat.compose(g, h)).expect("composite lies in hom(c, b)");
                        let v = m.get(i, j) + &q(coeffs[k]);
                        m.set(i, j, v);
                    }
                }
                let (s, t) = (ChainComplex::concentrated(0, src.len()), ChainComplex::concentrated(0, tgt.len()));
                ChainMap::from_fn(&s, &t, |_| m.clone())
            })
            .collect()
    }

    /// Levelwise mapping cone of a map of systems concentrated in degree 0: the
    /// two-term system `source → target` in degrees 1 and 0.
    pub fn two_term(source: &CoefficientSystem, target: &CoefficientSystem, f: &SystemMap) -> CoefficientSystem {
        let ctx = source.ctx.clone();
        let cat = ctx.slice.category();
        let values: Vec<ChainComplex> = (0..ctx.len())
            .map(|l| {
                let (a, b) = (source.value(l).dim(0), target.value(l).dim(0));
                let dims = BTreeMap::from([(1, a), (0, b)]);
                let d = f[l].at(0, source.value(l), target.value(l));
                ChainComplex::new(dims, BTreeMap::from([(1, d)])).expect("two-term complex")
            })
            .collect();
        let maps = (0..cat.morphism_count())
            .map(|m| {
                let (s, t) = (cat.src(m), cat.tgt(m));
                let top = source.restriction(m).at(0, source.value(t), source.value(s));
                let bottom = target.restriction(m).at(0, target.value(t), target.value(s));
                ChainMap::from_fn(&values[t], &values[s], |n| if n == 1 { top.clone() } else { bottom.clone() })
            })
            .collect();
        CoefficientSystem::new(ctx, values, maps).expect("a natural map gives a two-term system")
    }
}

/// Seeded random coefficient system assembled from shifted representables,
/// simple pieces and two-term cones of Yoneda maps, with total dimension at
/// most `max_total_dim` (falls back to the zero system if nothing fits).
pub fn random_system(ctx: &Arc<SliceContext>, rng: &mut impl Rng, max_total_dim: usize) -> CoefficientSystem {
    let mut x = CoefficientSystem::zero(ctx.clone());
    let pieces = rng.gen_range(1..=3);
    for _ in 0..pieces {
        let a = rng.gen_range(0..ctx.len());
        let piece = match rng.gen_range(0..4) {
            0 => pieces::representable(ctx, a),
            1 => CoefficientSystem::unit(ctx.clone()),
            2 => {
                let chars = pieces::characters(ctx, a);
                pieces::simple(ctx, a, &chars[rng.gen_range(0..chars.len())])
            }
            _ => {
                let b = rng.gen_range(0..ctx.len());
                let homs = ctx.hom(a, b).len();
                if homs == 0 {
                    continue;
                }
                let coeffs: Vec<i64> = (0..homs).map(|_| rng.gen_range(-1..=1)).collect();
                let f = pieces::yoneda_map(ctx, a, b, &coeffs);
                pieces::two_term(&pieces::representable(ctx, a), &pieces::representable(ctx, b), &f)
            }
        };
        let piece = piece.shift(rng.gen_range(0..=1));
        if x.total_dim() + piece.total_dim() <= max_total_dim {
            x = x.direct_sum(&piece);
        }
    }
    x
}

/// On-disk form of a coefficient system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub group: String,
    pub levels: Vec<String>,
    pub values: Vec<ComplexFile>,
    /// Restriction maps keyed by slice-morphism id, then by degree.
    pub maps: BTreeMap<usize, BTreeMap<i32, Vec<Vec<String>>>>,
}

impl SystemFile {
    pub fn from_system(x: &CoefficientSystem) -> Self {
        let cat = x.ctx.slice.category();
        SystemFile {
            group: x.ctx.orbits.group().name().to_string(),
            levels: x.ctx.level_names(),
            values: x.values().iter().map(ComplexFile::from_complex).collect(),
            maps: (0..cat.morphism_count())
                .map(|f| (f, x.restriction(f).comps().iter().map(|(&n, m)| (n, m.to_strings())).collect()))
                .collect(),
        }
    }

    /// Rebuilds the system over a context for the same group, validating functoriality.
    pub fn to_system(&self, ctx: Arc<SliceContext>) -> Result<CoefficientSystem, HochError> {
        if self.levels != ctx.level_names() || self.values.len() != ctx.len() {
            return Err(HochError::Json("levels do not match the orbit category".into()));
        }
        let values: Vec<ChainComplex> = self.values.iter().map(ComplexFile::to_complex).collect::<Result<_, _>>()?;
        let cat = ctx.slice.category();
        let mut maps = Vec::with_capacity(cat.morphism_count());
        for f in 0..cat.morphism_count() {
            let (src, tgt) = (&values[cat.tgt(f)], &values[cat.src(f)]);
            let mut comps = BTreeMap::new();
            for (&n, rows) in self.maps.get(&f).into_iter().flatten() {
                let m = Mat::from_strings(rows, src.dim(n))
                    .filter(|m| m.rows() == tgt.dim(n))
                    .ok_or_else(|| HochError::Json(format!("malformed map {f} in degree {n}")))?;
                comps.insert(n, m);
            }
            maps.push(ChainMap::new(src, tgt, comps)?);
        }
        CoefficientSystem::new(ctx, values, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn representable_of_the_free_orbit() {
        let ctx = SliceContext::for_group("C2").unwrap();
        let r = pieces::representable(&ctx, 0);
        assert_eq!(r.values().iter().map(ChainComplex::total_dim).collect::<Vec<_>>(), vec![2, 0]);
        assert_eq!(pieces::characters(&ctx, 0).len(), 2);
    }

    #[test]
    fn random_systems_respect_the_cap_and_round_trip() {
        let ctx = SliceContext::for_group("S3").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = random_system(&ctx, &mut rng, 6);
            assert!(x.total_dim() <= 6);
            let back = SystemFile::from_system(&x).to_system(ctx.clone()).unwrap();
            assert!(back.same_as(&x));
        }
    }
}

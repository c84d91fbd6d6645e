use std::collections::BTreeMap;
use std::sync::Arc;

use kan_vect::{Mat, PosetDiagram};
use rand::Rng;

use crate::complex::{ChainComplex, ChainMap};
use crate::error::HochError;
use crate::shape::Shape;

/// A covariant functor from a finite EI category into chain complexes, with one
/// chain map per morphism.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    shape: Arc<Shape>,
    values: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
}

impl CatDiagram {
    /// Validates that every map is a chain map, identities act trivially and
    /// composites are respected.
    pub fn new(shape: Arc<Shape>, values: Vec<ChainComplex>, maps: Vec<ChainMap>) -> Result<Self, HochError> {
        let cat = shape.category();
        if values.len() != cat.len() || maps.len() != cat.morphism_count() {
            return Err(HochError::Shape("one value per object and one map per morphism".into()));
        }
        let d = CatDiagram { shape, values, maps };
        let cat = d.shape.category();
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            if let Some(degree) = d.maps[f].failure_degree(&d.values[a], &d.values[b]) {
                return Err(HochError::NotChainMap { degree });
            }
            if f == cat.identity(a)
                && !same_map(&d.maps[f], &ChainMap::identity(&d.values[a]), &d.values[a], &d.values[a])
            {
                return Err(HochError::Functoriality { first: f, second: f });
            }
        }
        for f in 0..cat.morphism_count() {
            for c in 0..cat.len() {
                for &g in cat.hom(cat.tgt(f), c) {
                    let gf = cat.compose(g, f);
                    let composite = d.compose_maps(g, f);
                    if !same_map(&composite, &d.maps[gf], &d.values[cat.src(f)], &d.values[c]) {
                        return Err(HochError::Functoriality { first: g, second: f });
                    }
                }
            }
        }
        Ok(d)
    }

    /// A poset diagram from maps on covering relations; composites are derived
    /// and agreement along different routes is enforced.
    pub fn from_covers(
        shape: Arc<Shape>,
        values: Vec<ChainComplex>,
        mut edge: impl FnMut(usize, usize) -> ChainMap,
    ) -> Result<Self, HochError> {
        let cat = shape.category();
        let n = cat.len();
        let mut maps: Vec<Option<ChainMap>> = vec![None; cat.morphism_count()];
        // Order pairs by the length of the interval so routes are derived from shorter ones.
        let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(f) = shape.arrow(a, b) {
                    pairs.push((a, b, f));
                }
            }
        }
        let between =
            |a: usize, b: usize| (0..n).filter(|&c| shape.arrow(a, c).is_some() && shape.arrow(c, b).is_some()).count();
        pairs.sort_by_key(|&(a, b, _)| between(a, b));
        for (a, b, f) in pairs {
            let m = if a == b {
                ChainMap::identity(&values[a])
            } else {
                let via =
                    (0..n).find(|&c| c != a && c != b && shape.arrow(a, c).is_some() && shape.arrow(c, b).is_some());
                match via {
                    Some(c) => {
                        let first = maps[shape.arrow(a, c).expect("a ≤ c")].clone().expect("shorter interval done");
                        let second = maps[shape.arrow(c, b).expect("c ≤ b")].clone().expect("shorter interval done");
                        first.then(&second, &values[a], &values[c], &values[b])
                    }
                    None => edge(a, b),
                }
            };
            maps[f] = Some(m);
        }
        Self::new(shape, values, maps.into_iter().map(|m| m.expect("every morphism assigned")).collect())
    }

    fn compose_maps(&self, g: usize, f: usize) -> ChainMap {
        let cat = self.shape.category();
        let (a, b, c) = (cat.src(f), cat.tgt(f), cat.tgt(g));
        self.maps[f].then(&self.maps[g], &self.values[a], &self.values[b], &self.values[c])
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    pub fn value(&self, a: usize) -> &ChainComplex {
        &self.values[a]
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    pub fn map(&self, f: usize) -> &ChainMap {
        &self.maps[f]
    }

    /// Value of the map `a ≤ b` in a poset diagram.
    pub fn arrow_map(&self, a: usize, b: usize) -> Option<&ChainMap> {
        self.shape.arrow(a, b).map(|f| &self.maps[f])
    }

    /// The objectwise dual, a functor on the opposite category.
    pub fn dual(&self) -> CatDiagram {
        CatDiagram {
            shape: self.shape.opposite(),
            values: self.values.iter().map(ChainComplex::dual).collect(),
            maps: self.maps.iter().map(ChainMap::dual).collect(),
        }
    }

    /// Restriction to a full subcategory.
    pub fn restrict(&self, objects: &[usize]) -> CatDiagram {
        let (shape, embed) = self.shape.full_subcategory(objects);
        CatDiagram {
            shape,
            values: objects.iter().map(|&a| self.values[a].clone()).collect(),
            maps: embed.iter().map(|&f| self.maps[f].clone()).collect(),
        }
    }

    /// Objectwise direct sum with another diagram on the same shape.
    pub fn direct_sum(&self, other: &CatDiagram) -> CatDiagram {
        let cat = self.shape.category();
        let maps = (0..cat.morphism_count())
            .map(|f| {
                let (a, b) = (cat.src(f), cat.tgt(f));
                self.maps[f].direct_sum(
                    &other.maps[f],
                    (&self.values[a], &other.values[a]),
                    (&self.values[b], &other.values[b]),
                )
            })
            .collect();
        let values = self.values.iter().zip(&other.values).map(|(x, y)| x.direct_sum(y)).collect();
        CatDiagram { shape: self.shape.clone(), values, maps }
    }

    /// Whether `comps` (one map per object) is a natural transformation `self → other`.
    pub fn is_natural(&self, other: &CatDiagram, comps: &[ChainMap]) -> bool {
        let cat = self.shape.category();
        (0..cat.morphism_count()).all(|f| {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let left = self.maps[f].then(&comps[b], &self.values[a], &self.values[b], &other.values[b]);
            let right = comps[a].then(&other.maps[f], &self.values[a], &other.values[a], &other.values[b]);
            same_map(&left, &right, &self.values[a], &other.values[b])
        })
    }

    pub fn total_dim(&self) -> usize {
        self.values.iter().map(ChainComplex::total_dim).sum()
    }
}

/// Equality of chain maps, treating absent components as zero.
pub fn same_map(f: &ChainMap, g: &ChainMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
    src.degrees().into_iter().all(|n| f.at(n, src, tgt) == g.at(n, src, tgt))
}

/// A diagram of vector spaces over a poset, placed in a single degree.
pub fn from_vector_diagram(d: &PosetDiagram, degree: i32) -> Result<CatDiagram, HochError> {
    let shape = Shape::from_poset(d.shape());
    let values: Vec<ChainComplex> = (0..d.len()).map(|a| ChainComplex::concentrated(degree, d.dim(a))).collect();
    CatDiagram::from_covers(shape, values.clone(), |a, b| {
        let m = d.map(a, b).clone();
        ChainMap::from_fn(&values[a], &values[b], |_| m.clone())
    })
}

/// An objectwise quasi-isomorphic replacement of a poset diagram: each value gets
/// a random acyclic summand (with zero maps to and from it) and is then conjugated
/// by random invertible matrices. Returns the new diagram and the natural
/// quasi-isomorphism from the old one.
pub fn perturb(d: &CatDiagram, rng: &mut impl Rng) -> Result<(CatDiagram, Vec<ChainMap>), HochError> {
    let n = d.shape().len();
    let padding: Vec<ChainComplex> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.6) {
                ChainComplex::contractible(rng.gen_range(-2..=1), rng.gen_range(1..=2))
            } else {
                ChainComplex::zero()
            }
        })
        .collect();
    let padded: Vec<ChainComplex> = (0..n).map(|c| d.value(c).direct_sum(&padding[c])).collect();
    let changes: Vec<BTreeMap<i32, (Mat, Mat)>> = padded
        .iter()
        .map(|c| {
            c.degrees()
                .into_iter()
                .map(|k| {
                    let p = kan_vect::random::random_invertible(rng, c.dim(k), 2);
                    let inverse = p.inverse().expect("invertible");
                    (k, (p, inverse))
                })
                .collect()
        })
        .collect();
    let values: Vec<ChainComplex> = padded
        .iter()
        .zip(&changes)
        .map(|(c, ch)| {
            let d = c
                .degrees()
                .into_iter()
                .filter(|&k| c.dim(k - 1) > 0)
                .map(|k| (k, ch[&(k - 1)].0.mul(&c.d(k)).mul(&ch[&k].1)))
                .collect();
            ChainComplex::new(c.dims().clone(), d).expect("conjugation preserves d∘d = 0")
        })
        .collect();
    let bases: Vec<ChainMap> =
        (0..n).map(|c| ChainMap::from_fn(&padded[c], &values[c], |k| changes[c][&k].0.clone())).collect();
    let inverses: Vec<ChainMap> =
        (0..n).map(|c| ChainMap::from_fn(&values[c], &padded[c], |k| changes[c][&k].1.clone())).collect();
    let cat = d.shape().category();
    let maps = (0..cat.morphism_count())
        .map(|f| {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let extra = if f == cat.identity(a) { ChainMap::identity(&padding[a]) } else { ChainMap::zero() };
            let inner = d.map(f).direct_sum(&extra, (d.value(a), &padding[a]), (d.value(b), &padding[b]));
            inverses[a]
                .then(&inner, &values[a], &padded[a], &padded[b])
                .then(&bases[b], &values[a], &padded[b], &values[b])
        })
        .collect();
    let perturbed = CatDiagram::new(d.shape().clone(), values.clone(), maps)?;
    let eta = (0..n)
        .map(|c| {
            let include = ChainMap::identity(d.value(c)).direct_sum(
                &ChainMap::zero(),
                (d.value(c), &ChainComplex::zero()),
                (d.value(c), &padding[c]),
            );
            include.then(&bases[c], d.value(c), &padded[c], &values[c])
        })
        .collect();
    Ok((perturbed, eta))
}

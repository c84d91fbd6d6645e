//! Indexed coproducts and products of coefficient systems along `w: W → V`, the
//! norm map between them, and the α/β cubes assembling them orbit by orbit.
//!
//! Both Kan extensions are computed from their comma categories. For a level
//! `b` of the slice over `V`, the lower comma has objects `(a, β)` with `a` a
//! level over `W` and `β: b → a` a map over `V`; the upper comma has objects
//! `(c, α)` with `α: c → b`. Each object carries the orbit of `b ×_V W` it
//! lands in, and the two commas split as disjoint unions over these orbits.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use kan_vect::Mat;
use orbital_base::{FinCategory, GMap, Slice};
use serde::Serialize;

use crate::coefficient::{CoefficientSystem, SliceContext, SystemMap};
use crate::complex::{quasi_iso, ChainComplex, ChainMap};
use crate::diagram::CatDiagram;
use crate::error::HochError;
use crate::hocolim::{Hocolim, Holim};
use crate::shape::Shape;
use crate::suspension::CubeContext;

/// The slices over `V` and over `W` with the functor `a ↦ w∘a` between them.
#[derive(Debug)]
pub struct NormContext {
    cc: Arc<CubeContext>,
    over_w: Arc<Slice>,
    /// Level over `V` of each level over `W`.
    level_image: Vec<usize>,
    /// Morphism over `V` of each morphism over `W`.
    morphism_image: Vec<usize>,
}

impl NormContext {
    pub fn new(ctx: Arc<SliceContext>, w: &GMap) -> Result<Self, HochError> {
        let cc = CubeContext::new(ctx.clone(), w)?;
        let over_w = Arc::new(ctx.orbits().slice(w.source().clone()));
        let over_v = ctx.slice();
        let level_image = over_w
            .levels()
            .iter()
            .map(|a| {
                let composite = a.map.then(w).expect("levels over W compose with w");
                (0..over_v.len())
                    .find(|&l| {
                        over_v.level(l).object == a.object && over_v.level(l).map.as_slice() == composite.as_slice()
                    })
                    .ok_or_else(|| HochError::Shape("level over W has no image over V".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let wcat = over_w.category();
        let morphism_image = (0..wcat.morphism_count())
            .map(|m| {
                over_v
                    .find_morphism(level_image[wcat.src(m)], level_image[wcat.tgt(m)], over_w.underlying(m).as_slice())
                    .ok_or_else(|| HochError::Shape("morphism over W has no image over V".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NormContext { cc, over_w, level_image, morphism_image })
    }

    pub fn context(&self) -> &Arc<SliceContext> {
        self.cc.context()
    }

    pub fn cube_context(&self) -> &Arc<CubeContext> {
        &self.cc
    }

    /// Map over `W` with the given endpoints whose image over `V` is `m`, if any.
    fn lift(&self, from: usize, to: usize, m: usize) -> Option<usize> {
        let v = self.context().slice();
        self.over_w.find_morphism(from, to, v.underlying(m).as_slice())
    }

    /// The orbit of `b ×_V W` hit by `(x ↦ (p(x), q(x)))` at the basepoint.
    fn orbit(&self, b: usize, p: usize, q: usize) -> usize {
        self.cc.cube().orbit_of_pair(b, p, q).expect("pair lies in the pullback")
    }
}

/// Which Kan extension a comma category computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug)]
struct KanObject {
    /// Level over `W`.
    level: usize,
    /// Morphism over `V`: `b → level` on the lower side, `level → b` on the upper side.
    leg: usize,
    orbit: usize,
}

/// Comma category for one Kan extension at one level, with its diagram.
#[derive(Debug)]
struct KanComma {
    objects: Vec<KanObject>,
    /// Underlying morphism over `W` of each comma morphism.
    underlying: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
    shape: Arc<Shape>,
}

impl KanComma {
    fn new(nc: &NormContext, b: usize, side: Side) -> Result<Self, HochError> {
        let v = nc.context().slice().category();
        let wslice = &nc.over_w;
        let wcat = wslice.category();
        let mut objects = Vec::new();
        for level in 0..wslice.len() {
            let image = nc.level_image[level];
            let legs = match side {
                Side::Lower => v.hom(b, image),
                Side::Upper => v.hom(image, b),
            };
            for &leg in legs {
                let under = nc.context().slice().underlying(leg);
                let w_of = &wslice.level(level).map;
                let orbit = match side {
                    // The section `b → W` through `level`, evaluated at the basepoint of `b`.
                    Side::Lower => nc.orbit(b, 0, w_of.apply(under.apply(0))),
                    Side::Upper => nc.orbit(b, under.apply(0), w_of.apply(0)),
                };
                objects.push(KanObject { level, leg, orbit });
            }
        }
        let index = objects.iter().enumerate().map(|(i, o)| ((o.level, o.leg), i)).collect();
        let mut morphisms = Vec::new();
        let mut underlying = Vec::new();
        let mut lookup = HashMap::new();
        for (i, o1) in objects.iter().enumerate() {
            for (k, o2) in objects.iter().enumerate() {
                for &g in wcat.hom(o2.level, o1.level) {
                    let jg = nc.morphism_image[g];
                    let commutes = match side {
                        Side::Lower => v.compose(jg, o2.leg) == o1.leg,
                        Side::Upper => v.compose(o1.leg, jg) == o2.leg,
                    };
                    if commutes {
                        lookup.insert((i, k, g), morphisms.len());
                        morphisms.push((i, k, wcat.morphism_label(g).to_string()));
                        underlying.push(g);
                    }
                }
            }
        }
        let identities = objects.iter().enumerate().map(|(i, o)| lookup[&(i, i, wcat.identity(o.level))]).collect();
        let labels =
            objects.iter().map(|o| format!("{}|{}", wslice.level_name(o.level), v.morphism_label(o.leg))).collect();
        let cat = FinCategory::new(labels, morphisms.clone(), identities, |g, f| {
            lookup[&(morphisms[f].0, morphisms[g].1, wcat.compose(underlying[f], underlying[g]))]
        })?;
        Ok(KanComma { objects, underlying, index, shape: Shape::new(cat)? })
    }

    /// `X(w∘a)` at each object, with restrictions along the underlying maps.
    fn diagram(&self, nc: &NormContext, x: &CoefficientSystem) -> Result<CatDiagram, HochError> {
        let cat = self.shape.category();
        let values = self.objects.iter().map(|o| x.value(nc.level_image[o.level]).clone()).collect();
        let maps =
            (0..cat.morphism_count()).map(|m| x.restriction(nc.morphism_image[self.underlying[m]]).clone()).collect();
        CatDiagram::new(self.shape.clone(), values, maps)
    }

    /// Objects whose orbit is outside `mask`.
    fn outside(&self, mask: u64) -> Vec<usize> {
        (0..self.objects.len()).filter(|&o| mask >> self.objects[o].orbit & 1 == 0).collect()
    }
}

/// A homotopy colimit or limit over a union of components of a comma category.
#[derive(Debug)]
enum Piece<T> {
    Empty,
    Built { members: Vec<usize>, value: T },
}

impl<T> Piece<T> {
    fn members(&self) -> &[usize] {
        match self {
            Piece::Empty => &[],
            Piece::Built { members, .. } => members,
        }
    }
}

fn lower_piece(full: &CatDiagram, members: Vec<usize>) -> Result<Piece<Hocolim>, HochError> {
    if members.is_empty() {
        return Ok(Piece::Empty);
    }
    let value = Hocolim::new(&full.restrict(&members))?;
    Ok(Piece::Built { members, value })
}

fn upper_piece(full: &CatDiagram, members: Vec<usize>) -> Result<Piece<Holim>, HochError> {
    if members.is_empty() {
        return Ok(Piece::Empty);
    }
    let value = Holim::new(&full.restrict(&members))?;
    Ok(Piece::Built { members, value })
}

fn lower_complex(p: &Piece<Hocolim>) -> ChainComplex {
    match p {
        Piece::Empty => ChainComplex::zero(),
        Piece::Built { value, .. } => value.complex().clone(),
    }
}

fn upper_complex(p: &Piece<Holim>) -> ChainComplex {
    match p {
        Piece::Empty => ChainComplex::zero(),
        Piece::Built { value, .. } => value.complex().clone(),
    }
}

/// Morphism indices of a full subcategory, keyed by ambient morphism.
fn embedding(shape: &Arc<Shape>, members: &[usize]) -> HashMap<usize, usize> {
    let (_, embed) = shape.full_subcategory(members);
    embed.iter().enumerate().map(|(i, &m)| (m, i)).collect()
}

/// Inclusion `hocolim(small) → hocolim(large)` for `small ⊆ large` unions of components.
fn lower_inclusion(
    shape: &Arc<Shape>,
    small: &Piece<Hocolim>,
    large: &Piece<Hocolim>,
    values: &[ChainComplex],
) -> ChainMap {
    let (Piece::Built { members: sm, value: sv }, Piece::Built { members: lm, value: lv }) = (small, large) else {
        return ChainMap::zero();
    };
    let pos: HashMap<usize, usize> = lm.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let (_, small_embed) = shape.full_subcategory(sm);
    let large_embed = embedding(shape, lm);
    let eta: Vec<ChainMap> = sm.iter().map(|&o| ChainMap::identity(&values[o])).collect();
    sv.induced_along(lv, &|i| pos[&sm[i]], &|m| large_embed[&small_embed[m]], &eta)
}

/// Restriction `holim(large) → holim(small)` for `small ⊆ large` unions of components.
fn upper_restriction(
    shape: &Arc<Shape>,
    large: &Piece<Holim>,
    small: &Piece<Holim>,
    values: &[ChainComplex],
) -> ChainMap {
    let (Piece::Built { members: lm, value: lv }, Piece::Built { members: sm, value: sv }) = (large, small) else {
        return ChainMap::zero();
    };
    let pos: HashMap<usize, usize> = lm.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let (_, small_embed) = shape.full_subcategory(sm);
    let large_embed = embedding(shape, lm);
    let eta: Vec<ChainMap> = sm.iter().map(|&o| ChainMap::identity(&values[o])).collect();
    sv.induced_from(lv, &|i| pos[&sm[i]], &|m| large_embed[&small_embed[m]], &eta)
}

/// Projection onto a summand, given the inclusions of it and of its complement.
fn projection(
    first: &ChainMap,
    second: &ChainMap,
    parts: (&ChainComplex, &ChainComplex),
    whole: &ChainComplex,
) -> ChainMap {
    let (a, c) = parts;
    ChainMap::from_fn(whole, a, |n| {
        let block = Mat::hstack(&[&first.at(n, a, whole), &second.at(n, c, whole)], whole.dim(n));
        let inverse = block.inverse().expect("a summand and its complement span the whole");
        inverse.block(0, 0, a.dim(n), whole.dim(n))
    })
}

/// The norm `hocolim(lower) → holim(upper)`: on `X(w∘a) → X(w∘c)` it is the
/// restriction along `β∘α` when that composite lies over `W`, and zero otherwise.
fn norm_between(
    nc: &NormContext,
    x: &CoefficientSystem,
    lower: (&KanComma, &Piece<Hocolim>),
    upper: (&KanComma, &Piece<Holim>),
) -> ChainMap {
    let (lc, lp) = lower;
    let (uc, up) = upper;
    let (Piece::Built { members: lm, value: lv }, Piece::Built { members: um, value: uv }) = (lp, up) else {
        return ChainMap::zero();
    };
    let v = nc.context().slice().category();
    let source = lv.complex();
    let legs: Vec<ChainMap> = um
        .iter()
        .map(|&u| {
            let upper_obj = uc.objects[u];
            let target = x.value(nc.level_image[upper_obj.level]);
            let cocone: Vec<ChainMap> = lm
                .iter()
                .map(|&l| {
                    let lower_obj = lc.objects[l];
                    let composite = v.compose(lower_obj.leg, upper_obj.leg);
                    match nc.lift(upper_obj.level, lower_obj.level, composite) {
                        Some(_) => x.restriction(composite).clone(),
                        None => ChainMap::zero(),
                    }
                })
                .collect();
            lv.factor_cocone(target, &cocone)
        })
        .collect();
    uv.factor_cone(source, &legs)
}

/// One level of the norm report.
#[derive(Clone, Debug, Serialize)]
pub struct NormLevel {
    pub level: String,
    pub lower_homology: BTreeMap<i32, usize>,
    pub upper_homology: BTreeMap<i32, usize>,
    pub quasi_iso: bool,
    /// Homology rank of the lower extension agrees with sections × rank of `X(b)`.
    pub lower_matches_sections: bool,
    /// Homology rank of the upper extension agrees with the sum over orbits of the pullback.
    pub upper_matches_orbits: bool,
}

/// The indexed coproduct and product of the restriction of `X` along `w`, and the norm.
#[derive(Debug)]
pub struct NormMap {
    pub w_lower: CoefficientSystem,
    pub w_upper: CoefficientSystem,
    pub norm: SystemMap,
    pub levels: Vec<NormLevel>,
}

impl NormMap {
    pub fn all_quasi_iso(&self) -> bool {
        self.levels.iter().all(|l| l.quasi_iso)
    }

    /// Whether the norm is a natural map of coefficient systems.
    pub fn is_natural(&self) -> bool {
        self.w_lower.is_natural(&self.w_upper, &self.norm)
    }
}

fn total_rank(h: &BTreeMap<i32, usize>) -> usize {
    h.values().sum()
}

/// Builds `w_! w^* X`, `w_* w^* X` and the norm between them.
pub fn norm_map(nc: &NormContext, x: &CoefficientSystem) -> Result<NormMap, HochError> {
    let ctx = nc.context();
    let v = ctx.slice().category();
    let n = ctx.len();
    let lowers: Vec<KanComma> = (0..n).map(|b| KanComma::new(nc, b, Side::Lower)).collect::<Result<_, _>>()?;
    let uppers: Vec<KanComma> = (0..n).map(|b| KanComma::new(nc, b, Side::Upper)).collect::<Result<_, _>>()?;
    let lower_diagrams: Vec<CatDiagram> = lowers.iter().map(|c| c.diagram(nc, x)).collect::<Result<_, _>>()?;
    let upper_diagrams: Vec<CatDiagram> = uppers.iter().map(|c| c.diagram(nc, x)).collect::<Result<_, _>>()?;
    let lower_pieces: Vec<Piece<Hocolim>> = lower_diagrams
        .iter()
        .zip(&lowers)
        .map(|(d, c)| lower_piece(d, (0..c.objects.len()).collect()))
        .collect::<Result<_, _>>()?;
    let upper_pieces: Vec<Piece<Holim>> = upper_diagrams
        .iter()
        .zip(&uppers)
        .map(|(d, c)| upper_piece(d, (0..c.objects.len()).collect()))
        .collect::<Result<_, _>>()?;
    let lower_values: Vec<ChainComplex> = lower_pieces.iter().map(lower_complex).collect();
    let upper_values: Vec<ChainComplex> = upper_pieces.iter().map(upper_complex).collect();

    // Restriction along g: b → c precomposes the lower legs and postcomposes the upper ones.
    let mut lower_maps = Vec::with_capacity(v.morphism_count());
    let mut upper_maps = Vec::with_capacity(v.morphism_count());
    for g in 0..v.morphism_count() {
        let (b, c) = (v.src(g), v.tgt(g));
        lower_maps.push(match (&lower_pieces[c], &lower_pieces[b]) {
            (Piece::Built { value: from, .. }, Piece::Built { value: to, .. }) => {
                let (src, tgt) = (&lowers[c], &lowers[b]);
                let on_objects = |o: usize| tgt.index[&(src.objects[o].level, v.compose(src.objects[o].leg, g))];
                let scat = src.shape.category();
                let tcat = tgt.shape.category();
                let on_morphisms = |m: usize| {
                    *tcat
                        .hom(on_objects(scat.src(m)), on_objects(scat.tgt(m)))
                        .iter()
                        .find(|&&k| tgt.underlying[k] == src.underlying[m])
                        .expect("precomposition is a functor")
                };
                let eta: Vec<ChainMap> = lower_diagrams[c].values().iter().map(ChainMap::identity).collect();
                from.induced_along(to, &on_objects, &on_morphisms, &eta)
            }
            _ => ChainMap::zero(),
        });
        upper_maps.push(match (&upper_pieces[c], &upper_pieces[b]) {
            (Piece::Built { value: from, .. }, Piece::Built { value: to, .. }) => {
                let (src, tgt) = (&uppers[b], &uppers[c]);
                let on_objects = |o: usize| tgt.index[&(src.objects[o].level, v.compose(g, src.objects[o].leg))];
                let scat = src.shape.category();
                let tcat = tgt.shape.category();
                let on_morphisms = |m: usize| {
                    *tcat
                        .hom(on_objects(scat.src(m)), on_objects(scat.tgt(m)))
                        .iter()
                        .find(|&&k| tgt.underlying[k] == src.underlying[m])
                        .expect("postcomposition is a functor")
                };
                let eta: Vec<ChainMap> = upper_diagrams[b].values().iter().map(ChainMap::identity).collect();
                to.induced_from(from, &on_objects, &on_morphisms, &eta)
            }
            _ => ChainMap::zero(),
        });
    }
    let w_lower = CoefficientSystem::new(ctx.clone(), lower_values.clone(), lower_maps)?;
    let w_upper = CoefficientSystem::new(ctx.clone(), upper_values.clone(), upper_maps)?;

    let cube = nc.cc.cube();
    let mut norm = Vec::with_capacity(n);
    let mut levels = Vec::with_capacity(n);
    for b in 0..n {
        let map = norm_between(nc, x, (&lowers[b], &lower_pieces[b]), (&uppers[b], &upper_pieces[b]));
        let verdict = quasi_iso(&map, &lower_values[b], &upper_values[b]);
        let sections = cube.sections(b).len();
        let lower_matches_sections =
            total_rank(&verdict.source_homology) == sections * total_rank(&x.value(b).homology());
        let pullback = cube.level_pullback(b);
        let expected_upper: usize = pullback
            .object
            .orbits()
            .iter()
            .enumerate()
            .map(|(i, orbit)| {
                let generator = uppers[b]
                    .objects
                    .iter()
                    .find(|o| {
                        o.orbit == i && ctx.orbits().object(nc.over_w.level(o.level).object).len() == orbit.points.len()
                    })
                    .expect("each orbit of the pullback is hit by an orbit of its own size");
                total_rank(&x.value(nc.level_image[generator.level]).homology())
            })
            .sum();
        let upper_matches_orbits = total_rank(&verdict.target_homology) == expected_upper;
        levels.push(NormLevel {
            level: ctx.level_name(b).to_string(),
            lower_homology: verdict.source_homology,
            upper_homology: verdict.target_homology,
            quasi_iso: verdict.quasi_iso,
            lower_matches_sections,
            upper_matches_orbits,
        });
        norm.push(map);
    }
    Ok(NormMap { w_lower, w_upper, norm, levels })
}

/// Cubes over the fibre at each level of a slice, indexed by orbit masks.
#[derive(Clone, Debug)]
pub struct FibreCubes {
    pub levels: Vec<String>,
    /// At each level, a diagram over the powerset of orbits; object `m` is mask `m`.
    pub cubes: Vec<CatDiagram>,
}

/// Per-level outcome of the α/β checks.
#[derive(Clone, Debug, Serialize)]
pub struct AlphaBetaLevel {
    pub level: String,
    pub orbits: usize,
    pub alpha_singleton_cocartesian: bool,
    pub beta_singleton_cartesian: bool,
    pub aleph_natural: bool,
    /// Whether ℵ is a quasi-isomorphism at the empty mask, where it is the norm.
    pub aleph_quasi_iso_at_bottom: bool,
}

/// The α and β cubes with the componentwise norm ℵ between them.
#[derive(Debug)]
pub struct AlphaBeta {
    pub alpha: FibreCubes,
    pub beta: FibreCubes,
    /// `aleph[b][m]`: α at mask `m` → β at mask `m`.
    pub aleph: Vec<Vec<ChainMap>>,
    pub levels: Vec<AlphaBetaLevel>,
}

impl AlphaBeta {
    pub fn checks_pass(&self) -> bool {
        self.levels.iter().all(|l| l.alpha_singleton_cocartesian && l.beta_singleton_cartesian && l.aleph_natural)
    }
}

/// Whether the cube is left Kan extended from the empty mask and the singletons:
/// for every mask, the colimit over the generators below it maps quasi-isomorphically.
pub fn singleton_cocartesian(cube: &CatDiagram, orbits: usize) -> Result<bool, HochError> {
    for s in 0..(1u64 << orbits) {
        let below: Vec<usize> =
            (0..(1u64 << orbits)).filter(|&t| t.count_ones() <= 1 && t & !s == 0).map(|t| t as usize).collect();
        let restricted = cube.restrict(&below);
        let h = Hocolim::new(&restricted)?;
        let target = cube.value(s as usize);
        let legs: Vec<ChainMap> =
            below.iter().map(|&t| cube.arrow_map(t, s as usize).expect("t ⊆ s").clone()).collect();
        let map = h.factor_cocone(target, &legs);
        if !quasi_iso(&map, h.complex(), target).quasi_iso {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the cube is right Kan extended from the full mask and the coatoms.
pub fn singleton_cartesian(cube: &CatDiagram, orbits: usize) -> Result<bool, HochError> {
    let full = (1u64 << orbits) - 1;
    for s in 0..=full {
        let above: Vec<usize> =
            (0..=full).filter(|&t| (full & !t).count_ones() <= 1 && s & !t == 0).map(|t| t as usize).collect();
        let h = Holim::new(&cube.restrict(&above))?;
        let source = cube.value(s as usize);
        let legs: Vec<ChainMap> =
            above.iter().map(|&t| cube.arrow_map(s as usize, t).expect("s ⊆ t").clone()).collect();
        let map = h.factor_cone(source, &legs);
        if !quasi_iso(&map, source, h.complex()).quasi_iso {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the α cube (indexed coproducts over the orbits outside each mask, with
/// projections) and the β cube (indexed products, with restrictions), the
/// componentwise norm ℵ, and checks α singleton cocartesian and β singleton cartesian
/// at every level.
pub fn alpha_beta_cubes(nc: &NormContext, x: &CoefficientSystem) -> Result<AlphaBeta, HochError> {
    let ctx = nc.context();
    let mut alpha = Vec::with_capacity(ctx.len());
    let mut beta = Vec::with_capacity(ctx.len());
    let mut aleph = Vec::with_capacity(ctx.len());
    let mut levels = Vec::with_capacity(ctx.len());
    for b in 0..ctx.len() {
        let orbits = nc.cc.orbits(b);
        if orbits > crate::suspension::BAR_MAX_ORBITS {
            return Err(HochError::TooLarge { dim: orbits, cap: crate::suspension::BAR_MAX_ORBITS });
        }
        let fibre_shape = Shape::from_poset(&nc.cc.cube().poset().fibre(b).to_fin_poset()?);
        let lower = KanComma::new(nc, b, Side::Lower)?;
        let upper = KanComma::new(nc, b, Side::Upper)?;
        let ld = lower.diagram(nc, x)?;
        let ud = upper.diagram(nc, x)?;
        let masks = 1u64 << orbits;
        let lower_pieces: Vec<Piece<Hocolim>> =
            (0..masks).map(|m| lower_piece(&ld, lower.outside(m))).collect::<Result<_, _>>()?;
        let upper_pieces: Vec<Piece<Holim>> =
            (0..masks).map(|m| upper_piece(&ud, upper.outside(m))).collect::<Result<_, _>>()?;
        let alpha_values: Vec<ChainComplex> = lower_pieces.iter().map(lower_complex).collect();
        let beta_values: Vec<ChainComplex> = upper_pieces.iter().map(upper_complex).collect();

        let alpha_cube = CatDiagram::from_covers(fibre_shape.clone(), alpha_values.clone(), |s, t| {
            let (whole, part) = (&lower_pieces[s], &lower_pieces[t]);
            let rest_members: Vec<usize> =
                whole.members().iter().copied().filter(|o| !part.members().contains(o)).collect();
            let rest = lower_piece(&ld, rest_members).expect("a union of components has a colimit");
            let whole_value = &alpha_values[s];
            let first = lower_inclusion(&lower.shape, part, whole, ld.values());
            let second = lower_inclusion(&lower.shape, &rest, whole, ld.values());
            projection(&first, &second, (&alpha_values[t], &lower_complex(&rest)), whole_value)
        })?;
        let beta_cube = CatDiagram::from_covers(fibre_shape.clone(), beta_values.clone(), |s, t| {
            upper_restriction(&upper.shape, &upper_pieces[s], &upper_pieces[t], ud.values())
        })?;
        let components: Vec<ChainMap> = (0..masks as usize)
            .map(|m| norm_between(nc, x, (&lower, &lower_pieces[m]), (&upper, &upper_pieces[m])))
            .collect();
        let aleph_natural = alpha_cube.is_natural(&beta_cube, &components);
        let aleph_quasi_iso_at_bottom = quasi_iso(&components[0], &alpha_values[0], &beta_values[0]).quasi_iso;
        levels.push(AlphaBetaLevel {
            level: ctx.level_name(b).to_string(),
            orbits,
            alpha_singleton_cocartesian: singleton_cocartesian(&alpha_cube, orbits)?,
            beta_singleton_cartesian: singleton_cartesian(&beta_cube, orbits)?,
            aleph_natural,
            aleph_quasi_iso_at_bottom,
        });
        alpha.push(alpha_cube);
        beta.push(beta_cube);
        aleph.push(components);
    }
    let names = ctx.level_names();
    Ok(AlphaBeta {
        alpha: FibreCubes { levels: names.clone(), cubes: alpha },
        beta: FibreCubes { levels: names, cubes: beta },
        aleph,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use param_cubes::orbit_to_point;

    fn free(group: &str) -> NormContext {
        let ctx = SliceContext::for_group(group).unwrap();
        let w = orbit_to_point(ctx.orbits(), "free").unwrap();
        NormContext::new(ctx, &w).unwrap()
    }

    #[test]
    fn free_orbit_norm_fails_at_the_fixed_level() {
        let nc = free("C2");
        let unit = CoefficientSystem::unit(nc.context().clone());
        let norm = norm_map(&nc, &unit).unwrap();
        assert!(norm.is_natural());
        let fixed = norm.levels.iter().find(|l| l.level == "C2/C2").unwrap();
        assert!(fixed.lower_homology.is_empty());
        assert_eq!(fixed.upper_homology, BTreeMap::from([(0, 1)]));
        assert!(!fixed.quasi_iso);
        assert!(norm.levels.iter().all(|l| l.lower_matches_sections && l.upper_matches_orbits));
    }

    #[test]
    fn alpha_and_beta_have_their_kan_properties() {
        let nc = free("C2");
        let unit = CoefficientSystem::unit(nc.context().clone());
        let ab = alpha_beta_cubes(&nc, &unit).unwrap();
        assert!(ab.checks_pass(), "{:?}", ab.levels);
    }
}

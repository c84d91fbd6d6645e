//! Parametrised suspension and loops of coefficient systems along a cube.
//!
//! `Σ^w X(b)` is the homotopy colimit over the top-punctured fibre at `b` of the
//! diagram with `X(b)` at the empty mask and zero elsewhere. `Ω^w` is its right
//! adjoint, computed at `b` as a homotopy limit over the comma category of pairs
//! `(f: b' → b, j)` with `j` a nonempty mask at `b'`, of the diagram that is
//! `Y(b')` at full masks and zero elsewhere.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use orbital_base::FinCategory;
use param_cubes::ParamCube;
use serde::Serialize;

use crate::coefficient::{CoefficientSystem, SliceContext};
use crate::complex::{quasi_iso, ChainComplex, ChainMap};
use crate::diagram::CatDiagram;
use crate::error::HochError;
use crate::hocolim::{Hocolim, Holim};
use crate::shape::Shape;

/// Widest fibre for which suspensions are built from the bar construction.
/// Wider fibres only get their values, from the cubical model.
pub const BAR_MAX_ORBITS: usize = 5;

/// The top-punctured fibre at one level, as a poset shape.
#[derive(Debug)]
pub(crate) struct PuncturedFibre {
    pub orbits: usize,
    pub masks: Vec<u64>,
    pub index: HashMap<u64, usize>,
    pub shape: Arc<Shape>,
}

impl PuncturedFibre {
    fn new(cube: &ParamCube, level: usize) -> Result<Self, HochError> {
        let fibre = cube.poset().fibre(level).without_top();
        let masks = fibre.elements()?;
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let shape = Shape::from_poset(&fibre.to_fin_poset()?);
        Ok(PuncturedFibre { orbits: cube.poset().fibre(level).orbits(), masks, index, shape })
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.orbits) - 1
    }

    /// Positions of the masks below `j`.
    fn below(&self, j: u64) -> Vec<usize> {
        self.masks.iter().enumerate().filter(|&(_, &m)| m & !j == 0).map(|(i, _)| i).collect()
    }
}

/// Diagram over a poset shape with `value` at object 0 (the empty mask) and zero elsewhere.
fn concentrated_at_bottom(shape: &Arc<Shape>, value: &ChainComplex) -> Result<CatDiagram, HochError> {
    let values = (0..shape.len()).map(|i| if i == 0 { value.clone() } else { ChainComplex::zero() }).collect();
    CatDiagram::from_covers(shape.clone(), values, |_, _| ChainMap::zero())
}

/// Map from a sub-poset of masks to another, induced by a mask map, with `at_bottom`
/// as the component at the empty mask.
fn induced_between(
    source: (&Hocolim, &[u64]),
    target: (&Hocolim, &HashMap<u64, usize>),
    mask_map: &dyn Fn(u64) -> u64,
    at_bottom: &ChainMap,
) -> ChainMap {
    let (src, masks) = source;
    let (tgt, index) = target;
    let scat = src.diagram().shape().category();
    let tshape = tgt.diagram().shape();
    let on_objects = |i: usize| index[&mask_map(masks[i])];
    let on_morphisms =
        |f: usize| tshape.arrow(on_objects(scat.src(f)), on_objects(scat.tgt(f))).expect("mask maps are monotone");
    let eta: Vec<ChainMap> =
        (0..masks.len()).map(|i| if masks[i] == 0 { at_bottom.clone() } else { ChainMap::zero() }).collect();
    src.induced_along(tgt, &on_objects, &on_morphisms, &eta)
}

/// Fibre data of a cube over a coefficient-system context.
#[derive(Debug)]
pub struct CubeContext {
    ctx: Arc<SliceContext>,
    cube: Arc<ParamCube>,
    fibres: Vec<Option<PuncturedFibre>>,
}

impl CubeContext {
    /// Builds the cube of `w` over the slice of `ctx`.
    pub fn new(ctx: Arc<SliceContext>, w: &orbital_base::GMap) -> Result<Arc<Self>, HochError> {
        let cube = Arc::new(param_cubes::build_cube_over(ctx.slice().clone(), w)?);
        let fibres = (0..ctx.len())
            .map(|l| {
                if cube.poset().fibre(l).orbits() <= BAR_MAX_ORBITS {
                    PuncturedFibre::new(&cube, l).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_, HochError>>()?;
        Ok(Arc::new(CubeContext { ctx, cube, fibres }))
    }

    pub fn context(&self) -> &Arc<SliceContext> {
        &self.ctx
    }

    pub fn cube(&self) -> &Arc<ParamCube> {
        &self.cube
    }

    /// Orbit count of the fibre at a level.
    pub fn orbits(&self, level: usize) -> usize {
        self.cube.poset().fibre(level).orbits()
    }

    fn fibre(&self, level: usize) -> Result<&PuncturedFibre, HochError> {
        self.fibres[level].as_ref().ok_or(HochError::TooLarge { dim: self.orbits(level), cap: BAR_MAX_ORBITS })
    }

    fn restrict(&self, f: usize, m: u64) -> u64 {
        self.cube.poset().restrict(f, m)
    }
}

/// Values of `Σ^w X`, using the bar construction on narrow fibres and the
/// cubical model (a shift by one less than the orbit count) on wide ones.
pub fn suspension_values(x: &CoefficientSystem, cc: &CubeContext) -> Result<Vec<ChainComplex>, HochError> {
    (0..cc.ctx.len())
        .map(|b| match &cc.fibres[b] {
            Some(fibre) if fibre.masks.is_empty() => Ok(ChainComplex::zero()),
            Some(fibre) => Ok(Hocolim::new(&concentrated_at_bottom(&fibre.shape, x.value(b))?)?.complex().clone()),
            None => Ok(x.value(b).shift(cc.orbits(b) as i32 - 1)),
        })
        .collect()
}

/// `Σ^w X` with its structure maps and the homotopy colimits computing it.
#[derive(Debug)]
pub struct Suspension {
    hocolims: Vec<Option<Hocolim>>,
    system: CoefficientSystem,
}

impl Suspension {
    pub fn new(x: &CoefficientSystem, cc: &CubeContext) -> Result<Self, HochError> {
        let ctx = &cc.ctx;
        let mut hocolims = Vec::with_capacity(ctx.len());
        for b in 0..ctx.len() {
            let fibre = cc.fibre(b)?;
            hocolims.push(if fibre.masks.is_empty() {
                None
            } else {
                Some(Hocolim::new(&concentrated_at_bottom(&fibre.shape, x.value(b))?)?)
            });
        }
        let values: Vec<ChainComplex> =
            hocolims.iter().map(|h| h.as_ref().map_or_else(ChainComplex::zero, |h| h.complex().clone())).collect();
        let cat = ctx.slice().category();
        let maps = (0..cat.morphism_count())
            .map(|f| {
                let (a, b) = (cat.src(f), cat.tgt(f));
                match (&hocolims[b], &hocolims[a]) {
                    (Some(hb), Some(ha)) => induced_between(
                        (hb, &cc.fibre(b).expect("built").masks),
                        (ha, &cc.fibre(a).expect("built").index),
                        &|m| cc.restrict(f, m),
                        x.restriction(f),
                    ),
                    _ => ChainMap::zero(),
                }
            })
            .collect();
        let system = CoefficientSystem::new(ctx.clone(), values, maps)?;
        Ok(Suspension { hocolims, system })
    }

    pub fn system(&self) -> &CoefficientSystem {
        &self.system
    }

    /// The structure map `X(b) → Σ^w X(b)` from the empty mask.
    pub fn bottom_leg(&self, b: usize) -> ChainMap {
        self.hocolims[b].as_ref().map_or_else(ChainMap::zero, |h| h.leg(0))
    }
}

/// `Σ^w X` as a coefficient system; restrictions are induced by the preimage maps on fibres.
pub fn suspension_w(x: &CoefficientSystem, cc: &CubeContext) -> Result<CoefficientSystem, HochError> {
    Ok(Suspension::new(x, cc)?.system)
}

/// Object `(f: b' → b, j)` of the comma category at `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct CommaObject {
    pub over: usize,
    pub level: usize,
    pub mask: u64,
}

/// Comma category at a level `b`: pairs `(f: b' → b, j)` with `j` a nonempty mask
/// at `b'`; a morphism `(f1, j1) → (f2, j2)` is a slice morphism `h: b2 → b1` with
/// `f1∘h = f2` whose preimage carries `j1` into `j2`.
#[derive(Debug)]
pub(crate) struct Comma {
    pub objects: Vec<CommaObject>,
    pub index: HashMap<(usize, u64), usize>,
    /// Underlying slice morphism of each comma morphism.
    pub underlying: Vec<usize>,
    pub shape: Arc<Shape>,
}

impl Comma {
    pub fn new(cc: &CubeContext, b: usize) -> Result<Self, HochError> {
        let slice = cc.ctx.slice().category();
        let mut objects = Vec::new();
        for level in 0..slice.len() {
            let masks = cc.cube.poset().fibre(level).elements()?;
            for &f in slice.hom(level, b) {
                objects.extend(masks.iter().filter(|&&m| m != 0).map(|&mask| CommaObject { over: f, level, mask }));
            }
        }
        let index: HashMap<(usize, u64), usize> =
            objects.iter().enumerate().map(|(i, o)| ((o.over, o.mask), i)).collect();
        let mut morphisms = Vec::new();
        let mut underlying = Vec::new();
        let mut lookup = HashMap::new();
        for (i, o1) in objects.iter().enumerate() {
            for (k, o2) in objects.iter().enumerate() {
                for &h in slice.hom(o2.level, o1.level) {
                    if slice.compose(o1.over, h) == o2.over && cc.restrict(h, o1.mask) & !o2.mask == 0 {
                        lookup.insert((i, k, h), morphisms.len());
                        morphisms.push((i, k, slice.morphism_label(h).to_string()));
                        underlying.push(h);
                    }
                }
            }
        }
        let identities = objects.iter().enumerate().map(|(i, o)| lookup[&(i, i, slice.identity(o.level))]).collect();
        let labels = objects
            .iter()
            .map(|o| format!("{}:{}", slice.morphism_label(o.over), param_cubes_mask_label(o.mask)))
            .collect();
        let cat = FinCategory::new(labels, morphisms.clone(), identities, |g, f| {
            let h = slice.compose(underlying[f], underlying[g]);
            lookup[&(morphisms[f].0, morphisms[g].1, h)]
        })?;
        Ok(Comma { objects, index, underlying, shape: Shape::new(cat)? })
    }

    fn is_full(&self, cc: &CubeContext, o: usize) -> bool {
        let obj = self.objects[o];
        obj.mask == cc.cube.poset().fibre(obj.level).full()
    }

    /// The diagram that is `Y(b')` at full masks and zero elsewhere.
    fn top_diagram(&self, cc: &CubeContext, y: &CoefficientSystem) -> Result<CatDiagram, HochError> {
        let cat = self.shape.category();
        let values = (0..self.objects.len())
            .map(|o| if self.is_full(cc, o) { y.value(self.objects[o].level).clone() } else { ChainComplex::zero() })
            .collect();
        let maps = (0..cat.morphism_count())
            .map(|m| {
                if self.is_full(cc, cat.src(m)) && self.is_full(cc, cat.tgt(m)) {
                    y.restriction(self.underlying[m]).clone()
                } else {
                    ChainMap::zero()
                }
            })
            .collect();
        CatDiagram::new(self.shape.clone(), values, maps)
    }
}

fn param_cubes_mask_label(m: u64) -> String {
    lattice_core::subset_label(m as usize)
}

/// `Ω^w Y` as a coefficient system; restriction along `g: b → c` is induced by
/// postcomposition `(f, j) ↦ (g∘f, j)` of comma categories.
pub fn loop_w(y: &CoefficientSystem, cc: &CubeContext) -> Result<CoefficientSystem, HochError> {
    let ctx = &cc.ctx;
    let commas: Vec<Comma> = (0..ctx.len()).map(|b| Comma::new(cc, b)).collect::<Result<_, _>>()?;
    let tops: Vec<CatDiagram> = commas.iter().map(|c| c.top_diagram(cc, y)).collect::<Result<_, _>>()?;
    let holims: Vec<Holim> = tops.iter().map(Holim::new).collect::<Result<_, _>>()?;
    let slice = ctx.slice().category();
    let maps = (0..slice.morphism_count())
        .map(|g| {
            let (b, c) = (slice.src(g), slice.tgt(g));
            let (from, to) = (&commas[b], &commas[c]);
            let on_objects = |o: usize| {
                let obj = from.objects[o];
                to.index[&(slice.compose(g, obj.over), obj.mask)]
            };
            let tcat = to.shape.category();
            let fcat = from.shape.category();
            let on_morphisms = |m: usize| {
                let (s, t) = (on_objects(fcat.src(m)), on_objects(fcat.tgt(m)));
                *tcat
                    .hom(s, t)
                    .iter()
                    .find(|&&k| to.underlying[k] == from.underlying[m])
                    .expect("postcomposition is a functor")
            };
            let eta: Vec<ChainMap> = (0..from.objects.len()).map(|o| ChainMap::identity(tops[b].value(o))).collect();
            holims[b].induced_from(&holims[c], &on_objects, &on_morphisms, &eta)
        })
        .collect();
    let values = holims.iter().map(|h| h.complex().clone()).collect();
    CoefficientSystem::new(ctx.clone(), values, maps)
}

/// Outcome of the unit `X → Ω^w Σ^w X` at one level.
#[derive(Clone, Debug, Serialize)]
pub struct UnitLevel {
    pub level: String,
    pub source_homology: BTreeMap<i32, usize>,
    pub target_homology: BTreeMap<i32, usize>,
    pub quasi_iso: bool,
    /// Whether the comparison from `Ω^w Σ^w X(b)` to the auxiliary limit used to
    /// receive the unit is a quasi-isomorphism (it always should be).
    pub consistent: bool,
}

/// Per-level report on the unit of the suspension-loop adjunction.
#[derive(Clone, Debug, Serialize)]
pub struct UnitReport {
    pub levels: Vec<UnitLevel>,
}

impl UnitReport {
    pub fn all_quasi_iso(&self) -> bool {
        self.levels.iter().all(|l| l.quasi_iso)
    }

    pub fn failing_level(&self) -> Option<&UnitLevel> {
        self.levels.iter().find(|l| !l.quasi_iso)
    }
}

/// Masks of a punctured fibre, their positions, and the colimit over them.
type LocalColimit = (Vec<u64>, HashMap<u64, usize>, Hocolim);

/// Computes the unit `X → Ω^w Σ^w X` levelwise.
///
/// At `b` the unit is realized as a zig-zag `X(b) → holim K ← Ω^w Σ^w X(b)`, where
/// `K(f, b', j)` is the colimit over the punctured fibre at `b'` below `j` of `X(b')`
/// at the empty mask. `K` agrees with `Σ^w X` at full masks and is contractible
/// elsewhere, so the second map is a quasi-isomorphism, and `X(b)` maps strictly
/// into `holim K` through `X(f)` followed by the bottom leg.
pub fn unit_check(x: &CoefficientSystem, cc: &CubeContext) -> Result<UnitReport, HochError> {
    let ctx = &cc.ctx;
    let mut levels = Vec::with_capacity(ctx.len());
    for b in 0..ctx.len() {
        let comma = Comma::new(cc, b)?;
        let cat = comma.shape.category();
        let mut local: HashMap<(usize, u64), LocalColimit> = HashMap::new();
        for o in &comma.objects {
            if local.contains_key(&(o.level, o.mask)) {
                continue;
            }
            let fibre = cc.fibre(o.level)?;
            let members = fibre.below(o.mask);
            let (shape, _) = fibre.shape.full_subcategory(&members);
            let masks: Vec<u64> = members.iter().map(|&i| fibre.masks[i]).collect();
            let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let h = Hocolim::new(&concentrated_at_bottom(&shape, x.value(o.level))?)?;
            local.insert((o.level, o.mask), (masks, index, h));
        }
        let k_of = |o: usize| &local[&(comma.objects[o].level, comma.objects[o].mask)];
        let values: Vec<ChainComplex> = (0..comma.objects.len()).map(|o| k_of(o).2.complex().clone()).collect();
        let maps: Vec<ChainMap> = (0..cat.morphism_count())
            .map(|m| {
                let h = comma.underlying[m];
                let (s, t) = (k_of(cat.src(m)), k_of(cat.tgt(m)));
                induced_between((&s.2, &s.0), (&t.2, &t.1), &|mask| cc.restrict(h, mask), x.restriction(h))
            })
            .collect();
        let k = CatDiagram::new(comma.shape.clone(), values.clone(), maps.clone())?;
        let holim_k = Holim::new(&k)?;
        let legs: Vec<ChainMap> = comma
            .objects
            .iter()
            .enumerate()
            .map(|(o, obj)| {
                let restricted = ctx.slice().category().src(obj.over);
                x.restriction(obj.over).then(&k_of(o).2.leg(0), x.value(b), x.value(restricted), &values[o])
            })
            .collect();
        let unit = holim_k.factor_cone(x.value(b), &legs);
        let verdict = quasi_iso(&unit, x.value(b), holim_k.complex());

        let full: Vec<bool> = (0..comma.objects.len()).map(|o| comma.is_full(cc, o)).collect();
        let z_values: Vec<ChainComplex> =
            values.iter().zip(&full).map(|(v, &f)| if f { v.clone() } else { ChainComplex::zero() }).collect();
        let z_maps: Vec<ChainMap> = (0..cat.morphism_count())
            .map(|m| if full[cat.src(m)] && full[cat.tgt(m)] { maps[m].clone() } else { ChainMap::zero() })
            .collect();
        let z = CatDiagram::new(comma.shape.clone(), z_values.clone(), z_maps)?;
        let holim_z = Holim::new(&z)?;
        let eta: Vec<ChainMap> = z_values
            .iter()
            .zip(&full)
            .map(|(v, &f)| if f { ChainMap::identity(v) } else { ChainMap::zero() })
            .collect();
        let comparison = holim_k.induced(&holim_z, &eta);
        let consistent = quasi_iso(&comparison, holim_z.complex(), holim_k.complex()).quasi_iso;

        levels.push(UnitLevel {
            level: ctx.level_name(b).to_string(),
            source_homology: verdict.source_homology,
            target_homology: holim_z.complex().homology(),
            quasi_iso: verdict.quasi_iso,
            consistent,
        });
    }
    Ok(UnitReport { levels })
}

/// Outcome of the counit `Σ^w Ω^w Y → Y` at one level.
#[derive(Clone, Debug, Serialize)]
pub struct CounitLevel {
    pub level: String,
    pub source_homology: BTreeMap<i32, usize>,
    pub target_homology: BTreeMap<i32, usize>,
    pub quasi_iso: bool,
    /// Whether the auxiliary colimit receiving the counit maps quasi-isomorphically
    /// onto `Σ^w Ω^w Y(b)`.
    pub consistent: bool,
}

/// Per-level report on the counit of the suspension-loop adjunction.
#[derive(Clone, Debug, Serialize)]
pub struct CounitReport {
    pub levels: Vec<CounitLevel>,
}

impl CounitReport {
    pub fn all_quasi_iso(&self) -> bool {
        self.levels.iter().all(|l| l.quasi_iso)
    }
}

/// Computes the counit `Σ^w Ω^w Y → Y` levelwise.
///
/// At `b`, `M(p)` is the limit over the comma objects `(f, j)` whose mask `j`
/// contains the preimage of `p`; `M(∅) = Ω^w Y(b)` and `M(𝟙) ≃ Y(b)`. The counit is
/// the zig-zag `Σ^w Ω^w Y(b) ← hocolim M → M(𝟙) → Y(b)` over the top-punctured fibre.
pub fn counit_check(y: &CoefficientSystem, cc: &CubeContext) -> Result<CounitReport, HochError> {
    let ctx = &cc.ctx;
    let slice = ctx.slice().category();
    let mut levels = Vec::with_capacity(ctx.len());
    for b in 0..ctx.len() {
        let fibre = cc.fibre(b)?;
        let comma = Comma::new(cc, b)?;
        let top = comma.top_diagram(cc, y)?;
        let full_mask = fibre.full();
        let mut masks = fibre.masks.clone();
        masks.push(full_mask);
        // Limits over the full subcategories cut out by each mask.
        let mut parts: Vec<(Vec<usize>, Vec<usize>, Holim)> = Vec::with_capacity(masks.len());
        for &p in &masks {
            let members: Vec<usize> = (0..comma.objects.len())
                .filter(|&o| {
                    let obj = comma.objects[o];
                    cc.restrict(obj.over, p) & !obj.mask == 0
                })
                .collect();
            let (_, embed) = comma.shape.full_subcategory(&members);
            let h = Holim::new(&top.restrict(&members))?;
            parts.push((members, embed, h));
        }
        let restriction_map = |from: usize, to: usize| -> ChainMap {
            let (src_members, src_embed, src) = &parts[from];
            let (tgt_members, _, tgt) = &parts[to];
            let position: HashMap<usize, usize> = src_members.iter().enumerate().map(|(i, &o)| (o, i)).collect();
            let embed_pos: HashMap<usize, usize> = src_embed.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let (_, tgt_embed) = comma.shape.full_subcategory(tgt_members);
            let eta: Vec<ChainMap> = tgt_members.iter().map(|&o| ChainMap::identity(top.value(o))).collect();
            tgt.induced_from(src, &|i| position[&tgt_members[i]], &|m| embed_pos[&tgt_embed[m]], &eta)
        };
        let top_index = masks.len() - 1;
        let m_values: Vec<ChainComplex> =
            fibre.masks.iter().enumerate().map(|(i, _)| parts[i].2.complex().clone()).collect();
        let m_diagram = CatDiagram::from_covers(fibre.shape.clone(), m_values.clone(), restriction_map)?;
        let colim_m = Hocolim::new(&m_diagram)?;
        let top_value = parts[top_index].2.complex().clone();
        let cocone: Vec<ChainMap> = (0..fibre.masks.len()).map(|i| restriction_map(i, top_index)).collect();
        let to_top = colim_m.factor_cocone(&top_value, &cocone);
        let identity_object = comma.index[&(slice.identity(b), full_mask)];
        let top_members = &parts[top_index].0;
        let leg_position =
            top_members.iter().position(|&o| o == identity_object).expect("identity object has a full mask");
        let leg = parts[top_index].2.leg(leg_position);
        let counit = to_top.then(&leg, colim_m.complex(), &top_value, y.value(b));
        let verdict = quasi_iso(&counit, colim_m.complex(), y.value(b));

        let loops = &m_values[0];
        let susp = Hocolim::new(&concentrated_at_bottom(&fibre.shape, loops)?)?;
        let eta: Vec<ChainMap> = m_values
            .iter()
            .enumerate()
            .map(|(i, v)| if i == 0 { ChainMap::identity(v) } else { ChainMap::zero() })
            .collect();
        let comparison = colim_m.induced(&susp, &eta);
        let consistent = quasi_iso(&comparison, colim_m.complex(), susp.complex()).quasi_iso;

        levels.push(CounitLevel {
            level: ctx.level_name(b).to_string(),
            source_homology: susp.complex().homology(),
            target_homology: verdict.target_homology,
            quasi_iso: verdict.quasi_iso,
            consistent,
        });
    }
    Ok(CounitReport { levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use param_cubes::orbit_to_point;

    fn c2_free() -> Arc<CubeContext> {
        let ctx = SliceContext::for_group("C2").unwrap();
        let w = orbit_to_point(ctx.orbits(), "free").unwrap();
        CubeContext::new(ctx, &w).unwrap()
    }

    #[test]
    fn suspension_of_the_unit_is_the_sign_sphere() {
        let cc = c2_free();
        let unit = CoefficientSystem::unit(cc.context().clone());
        let s = suspension_w(&unit, &cc).unwrap();
        let names = cc.context().level_names();
        let e = names.iter().position(|n| n == "C2/e").unwrap();
        let pt = names.iter().position(|n| n == "C2/C2").unwrap();
        assert_eq!(s.value(e).homology(), BTreeMap::from([(1, 1)]));
        assert_eq!(s.value(pt).homology(), BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn loops_of_a_suspension_match_the_unit_zig_zag() {
        let cc = c2_free();
        let unit = CoefficientSystem::unit(cc.context().clone());
        let report = unit_check(&unit, &cc).unwrap();
        let omega_sigma = loop_w(&suspension_w(&unit, &cc).unwrap(), &cc).unwrap();
        for (l, level) in report.levels.iter().enumerate() {
            assert!(level.consistent);
            assert_eq!(level.target_homology, omega_sigma.value(l).homology());
        }
    }
}

use std::sync::Arc;

use lattice_core::{DecompositionTriple, FinLattice};
use orbital_base::{equivariant_maps, pullback, GMap, GSet, OrbitCat, Pullback, Slice};

use crate::error::CubeError;
use crate::mask::{MaskPoset, MAX_ORBITS};
use crate::param::ParamPoset;

/// The parametrised cube of `w: W → V`: at a level `b: U → V` the fibre is the
/// powerset of orbits of `U ×_V W`, and restriction is preimage on orbits.
#[derive(Clone, Debug)]
pub struct ParamCube {
    w: GMap,
    poset: ParamPoset,
    pullbacks: Vec<Pullback>,
    /// Per level, the orbit index of every point of the level pullback.
    orbit_of: Vec<Vec<usize>>,
    /// Per level, a basepoint of each orbit of the level pullback.
    basepoints: Vec<Vec<usize>>,
}

pub fn build_cube(orbits: &OrbitCat, w: &GMap) -> Result<ParamCube, CubeError> {
    let slice = Arc::new(orbits.slice(w.target().clone()));
    build_cube_over(slice, w)
}

/// Builds the cube over an already constructed slice of `w`'s target.
pub fn build_cube_over(slice: Arc<Slice>, w: &GMap) -> Result<ParamCube, CubeError> {
    if !slice.base().same_action(w.target()) {
        return Err(CubeError::Shape("slice base differs from the target of w".into()));
    }
    let mut pullbacks = Vec::with_capacity(slice.len());
    let mut orbit_of = Vec::with_capacity(slice.len());
    let mut basepoints: Vec<Vec<usize>> = Vec::with_capacity(slice.len());
    let mut fibres = Vec::with_capacity(slice.len());
    for level in slice.levels() {
        let pb = pullback(&level.map, w)?;
        let orbits = pb.object.orbits();
        if orbits.len() > MAX_ORBITS {
            return Err(CubeError::FibreOverflow { orbits: orbits.len() });
        }
        fibres.push(MaskPoset::powerset(orbits.len())?);
        orbit_of.push(pb.object.orbit_index());
        basepoints.push(orbits.iter().map(|o| o.basepoint).collect());
        pullbacks.push(pb);
    }
    let cat = slice.category();
    let orbit_maps: Vec<Vec<usize>> = (0..cat.morphism_count())
        .map(|f| {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let h = slice.underlying(f);
            basepoints[a]
                .iter()
                .map(|&p| {
                    let (x, y) = pullbacks[a].pairs[p];
                    let q = pullbacks[b].index_of(h.apply(x), y).expect("image pair lies in the pullback");
                    orbit_of[b][q]
                })
                .collect()
        })
        .collect();
    let poset = ParamPoset::new(slice, fibres, Arc::new(orbit_maps))?;
    Ok(ParamCube { w: w.clone(), poset, pullbacks, orbit_of, basepoints })
}

/// The singleton subposet as a cone on sections, with its inclusion into the cube.
#[derive(Clone, Debug)]
pub struct SingletonInclusion {
    /// Per level, the sections `s: U → W` with `w∘s = b`.
    pub sections: Vec<Vec<GMap>>,
    /// Per level, the image of each cone element: index 0 is the cone point `⊥`,
    /// index `k + 1` is section `k`.
    pub images: Vec<Vec<u64>>,
    /// The image as a parametrised subposet of the cube.
    pub subposet: ParamPoset,
}

/// Per-level verdicts for the singleton inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonChecks {
    pub fully_faithful: bool,
    pub natural: bool,
    pub down_closed: bool,
    /// Whether the image misses the top at every level.
    pub inside_top_puncture: bool,
}

impl SingletonChecks {
    pub fn all_hold(&self) -> bool {
        self.fully_faithful && self.natural && self.down_closed
    }
}

impl ParamCube {
    pub fn w(&self) -> &GMap {
        &self.w
    }

    pub fn poset(&self) -> &ParamPoset {
        &self.poset
    }

    pub fn slice(&self) -> &Arc<Slice> {
        self.poset.slice()
    }

    pub fn level_pullback(&self, level: usize) -> &Pullback {
        &self.pullbacks[level]
    }

    pub fn orbit_count(&self, level: usize) -> usize {
        self.basepoints[level].len()
    }

    /// Orbit of the level pullback containing the pair `(x, y)`.
    pub fn orbit_of_pair(&self, level: usize, x: usize, y: usize) -> Option<usize> {
        self.pullbacks[level].index_of(x, y).map(|q| self.orbit_of[level][q])
    }

    /// Fibre sizes per level.
    pub fn fibre_sizes(&self) -> Vec<u128> {
        (0..self.slice().len()).map(|l| 1u128 << self.orbit_count(l)).collect()
    }

    /// Index of the terminal level (structure map an isomorphism).
    pub fn terminal_level(&self) -> Result<usize, CubeError> {
        let t = self.slice().terminal_levels();
        t.iter()
            .copied()
            .find(|&l| self.slice().level(l).map.as_slice().iter().enumerate().all(|(i, &j)| i == j))
            .or_else(|| t.first().copied())
            .ok_or(CubeError::NoTerminalLevel)
    }

    /// The unique slice morphism from `level` to the terminal level.
    pub fn to_terminal(&self, level: usize) -> Result<usize, CubeError> {
        let t = self.terminal_level()?;
        match self.slice().category().hom(level, t) {
            [m] => Ok(*m),
            _ => Err(CubeError::NoTerminalLevel),
        }
    }

    /// Elements of the fibre at the terminal level.
    pub fn global_points(&self) -> Result<Vec<u64>, CubeError> {
        self.poset.fibre(self.terminal_level()?).elements()
    }

    /// Every `(level, element)` pair.
    pub fn enumerate_points(&self) -> Result<Vec<(usize, u64)>, CubeError> {
        let mut out = Vec::new();
        for l in 0..self.slice().len() {
            out.extend(self.poset.fibre(l).elements()?.into_iter().map(|m| (l, m)));
        }
        Ok(out)
    }

    /// Sections of `w` over a level.
    pub fn sections(&self, level: usize) -> Vec<GMap> {
        let b = &self.slice().level(level).map;
        equivariant_maps(b.source(), self.w.source())
            .into_iter()
            .filter(|s| (0..b.source().len()).all(|x| self.w.apply(s.apply(x)) == b.apply(x)))
            .collect()
    }

    /// Orbit of the graph of a section at a level.
    pub fn graph_orbit(&self, level: usize, section: &GMap) -> usize {
        self.orbit_of_pair(level, 0, section.apply(0)).expect("graph lies in the pullback")
    }

    pub fn singleton_inclusion(&self) -> Result<SingletonInclusion, CubeError> {
        let mut sections = Vec::new();
        let mut images = Vec::new();
        let mut fibres = Vec::new();
        for l in 0..self.slice().len() {
            let secs = self.sections(l);
            let mut img = vec![0u64];
            img.extend(secs.iter().map(|s| 1u64 << self.graph_orbit(l, s)));
            fibres.push(MaskPoset::explicit(self.orbit_count(l), img.clone())?);
            sections.push(secs);
            images.push(img);
        }
        let subposet = self.poset.with_fibres(fibres)?;
        Ok(SingletonInclusion { sections, images, subposet })
    }

    /// Exhaustive checks of the singleton inclusion: per-level full faithfulness,
    /// naturality along every slice morphism, and down-closure of the image.
    pub fn check_singletons(&self, inc: &SingletonInclusion) -> Result<SingletonChecks, CubeError> {
        let cat = self.slice().category();
        let cone_leq = |i: usize, j: usize| i == 0 || i == j;
        let fully_faithful = inc
            .images
            .iter()
            .all(|img| (0..img.len()).all(|i| (0..img.len()).all(|j| cone_leq(i, j) == (img[i] & !img[j] == 0))));
        let mut natural = true;
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let h = self.slice().underlying(f);
            natural &= self.poset.restrict(f, 0) == 0;
            for (k, s) in inc.sections[b].iter().enumerate() {
                let pulled = h.then(s)?;
                let Some(k2) = inc.sections[a].iter().position(|t| t.as_slice() == pulled.as_slice()) else {
                    natural = false;
                    continue;
                };
                natural &= self.poset.restrict(f, inc.images[b][k + 1]) == inc.images[a][k2 + 1];
            }
        }
        let down_closed = inc.subposet.is_down_closed_in(&self.poset)?;
        let inside_top_puncture =
            (0..self.slice().len()).all(|l| inc.images[l].iter().all(|&m| m != self.poset.fibre(l).full()));
        Ok(SingletonChecks { fully_faithful, natural, down_closed, inside_top_puncture })
    }

    /// Checks each fibre is a Boolean lattice and each restriction a Boolean homomorphism.
    /// Fibres of at most 2^8 elements are validated through `lattice_core`; wider fibres
    /// are checked structurally on atoms.
    pub fn check_boolean(&self) -> Result<bool, CubeError> {
        for l in 0..self.slice().len() {
            let fibre = self.poset.fibre(l);
            if fibre.orbits() <= 8 {
                let lat = fibre.to_lattice()?;
                if !lat.is_distributive() || lat.complementation().is_err() || lat.atom_map_isomorphism().is_none() {
                    return Ok(false);
                }
            }
        }
        let cat = self.slice().category();
        for f in 0..cat.morphism_count() {
            let (a, b) = (cat.src(f), cat.tgt(f));
            let (full_a, full_b) = (self.poset.fibre(a).full(), self.poset.fibre(b).full());
            let r = |m: u64| self.poset.restrict(f, m);
            if r(0) != 0 || r(full_b) != full_a {
                return Ok(false);
            }
            let n = self.orbit_count(b);
            let atoms: Vec<u64> = (0..n).map(|i| r(1 << i)).collect();
            let disjoint = (0..n).all(|i| (0..n).all(|j| i == j || atoms[i] & atoms[j] == 0));
            if !disjoint || atoms.iter().fold(0, |acc, m| acc | m) != full_a {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A partition of the terminal orbits transported to every level.
#[derive(Clone, Debug)]
pub struct CubeDecomposition {
    /// Per level, the masks `(a, d, z)`.
    pub triples: Vec<(u64, u64, u64)>,
    /// The cube of `w` restricted to the orbits in `a`.
    pub face_cube: ParamCube,
    /// Per level, the orbit of the full cube matching each orbit of the face cube.
    pub identification: Vec<Vec<usize>>,
}

impl CubeDecomposition {
    /// Each level triple is pairwise disjoint with union the top; small fibres are
    /// additionally checked through `lattice_core`.
    pub fn triples_valid(&self, cube: &ParamCube) -> Result<bool, CubeError> {
        for (l, &(a, d, z)) in self.triples.iter().enumerate() {
            let full = cube.poset().fibre(l).full();
            if a & d != 0 || a & z != 0 || d & z != 0 || a | d | z != full {
                return Ok(false);
            }
            if cube.orbit_count(l) <= 5 {
                let lat = FinLattice::powerset(cube.orbit_count(l))?;
                let comp = lat.complementation()?;
                let t = DecompositionTriple::complete(&lat, &comp, a as usize, d as usize)?;
                if t.z != z as usize || !t.is_valid(&lat) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The identification is a bijection onto the `a` part at every level and
    /// commutes with restriction.
    pub fn identification_valid(&self, cube: &ParamCube) -> bool {
        let cat = cube.slice().category();
        let bijective = self.identification.iter().zip(&self.triples).all(|(ident, &(a, _, _))| {
            let image = ident.iter().fold(0u64, |acc, &i| acc | 1 << i);
            image == a && image.count_ones() as usize == ident.len()
        });
        let natural = (0..cat.morphism_count()).all(|f| {
            let (s, t) = (cat.src(f), cat.tgt(f));
            let face_map = self.face_cube.poset().orbit_map(f);
            let full_map = cube.poset().orbit_map(f);
            (0..face_map.len()).all(|i| self.identification[t][face_map[i]] == full_map[self.identification[s][i]])
        });
        bijective && natural
    }
}

/// Splits the terminal orbits of a cube into `(a, d, z)` and transports the split
/// to every level along the unique map to the terminal level.
pub fn decomposition_from_orbit_partition(
    cube: &ParamCube,
    a: u64,
    d: u64,
    z: u64,
) -> Result<CubeDecomposition, CubeError> {
    let t = cube.terminal_level()?;
    let full = cube.poset().fibre(t).full();
    if a & d != 0 || a & z != 0 || d & z != 0 || a | d | z != full {
        return Err(CubeError::NotAPartition);
    }
    let mut triples = Vec::new();
    for l in 0..cube.slice().len() {
        let m = cube.to_terminal(l)?;
        let r = |x| cube.poset().restrict(m, x);
        triples.push((r(a), r(d), r(z)));
    }
    // Points of W lying in the chosen terminal orbits.
    let terminal_pb = cube.level_pullback(t);
    let w = cube.w();
    let mut members: Vec<usize> = (0..w.source().len())
        .filter(|&y| {
            let v =
                (0..terminal_pb.pairs.len()).find(|&q| terminal_pb.pairs[q].1 == y).expect("every point of W appears");
            a >> cube.orbit_of[t][v] & 1 == 1
        })
        .collect();
    members.sort_unstable();
    let w_a = w.restrict_to(&members)?;
    let face_cube = build_cube_over(cube.slice().clone(), &w_a)?;
    let identification = (0..cube.slice().len())
        .map(|l| {
            face_cube.basepoints[l]
                .iter()
                .map(|&p| {
                    let (x, y) = face_cube.pullbacks[l].pairs[p];
                    cube.orbit_of_pair(l, x, members[y]).expect("sub-pair lies in the full pullback")
                })
                .collect()
        })
        .collect();
    Ok(CubeDecomposition { triples, face_cube, identification })
}

/// Result of restricting a cube along `b: B → V`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    /// The cube's parametrised poset pulled back to the slice over `B`.
    pub restricted: ParamPoset,
    /// Level of the original slice under each level of the slice over `B`.
    pub level_map: Vec<usize>,
    /// Original slice morphism under each morphism of the slice over `B`.
    pub morphism_map: Vec<usize>,
    /// The cube of the pulled-back map `B ×_V W → B`.
    pub pulled_cube: ParamCube,
    /// Per level, the orbit of the original cube matching each orbit of the pulled cube.
    pub fibre_bijections: Vec<Vec<usize>>,
    /// `B ×_V W` with its projections.
    pub pullback: Pullback,
}

pub fn basechange(orbits: &OrbitCat, cube: &ParamCube, b: &GMap) -> Result<BaseChange, CubeError> {
    let v_slice = cube.slice();
    if !b.target().same_action(v_slice.base()) {
        return Err(CubeError::Shape("basechange map must land in the cube's base".into()));
    }
    let b_slice = Arc::new(orbits.slice(b.source().clone()));
    let level_map: Vec<usize> = b_slice
        .levels()
        .iter()
        .map(|lvl| {
            let composite = lvl.map.then(b)?;
            (0..v_slice.len())
                .find(|&i| {
                    v_slice.level(i).object == lvl.object && v_slice.level(i).map.as_slice() == composite.as_slice()
                })
                .ok_or_else(|| CubeError::Shape("level missing from the original slice".into()))
        })
        .collect::<Result<_, CubeError>>()?;
    let bcat = b_slice.category();
    let morphism_map: Vec<usize> = (0..bcat.morphism_count())
        .map(|f| {
            v_slice
                .find_morphism(level_map[bcat.src(f)], level_map[bcat.tgt(f)], b_slice.underlying(f).as_slice())
                .ok_or_else(|| CubeError::Shape("morphism missing from the original slice".into()))
        })
        .collect::<Result<_, CubeError>>()?;
    let fibres = level_map.iter().map(|&l| cube.poset().fibre(l).clone()).collect();
    let maps = morphism_map.iter().map(|&f| cube.poset().orbit_map(f).to_vec()).collect();
    let restricted = ParamPoset::new(b_slice.clone(), fibres, Arc::new(maps))?;
    let bw = pullback(b, cube.w())?;
    let pulled_cube = build_cube_over(b_slice.clone(), &bw.proj1)?;
    let fibre_bijections = (0..b_slice.len())
        .map(|l| {
            pulled_cube.basepoints[l]
                .iter()
                .map(|&p| {
                    let (x, k) = pulled_cube.pullbacks[l].pairs[p];
                    cube.orbit_of_pair(level_map[l], x, bw.pairs[k].1).expect("pair lies in the original pullback")
                })
                .collect()
        })
        .collect();
    Ok(BaseChange { restricted, level_map, morphism_map, pulled_cube, fibre_bijections, pullback: bw })
}

impl BaseChange {
    /// Fibre bijections are bijections and intertwine the restriction maps.
    pub fn cube_compatible(&self) -> bool {
        let cat = self.restricted.category();
        let bijective = self.fibre_bijections.iter().enumerate().all(|(l, bij)| {
            let mut seen = vec![false; self.restricted.fibre(l).orbits()];
            bij.len() == seen.len() && bij.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
        });
        bijective
            && (0..cat.morphism_count()).all(|f| {
                let (s, t) = (cat.src(f), cat.tgt(f));
                let pulled = self.pulled_cube.poset().orbit_map(f);
                let original = self.restricted.orbit_map(f);
                (0..pulled.len()).all(|i| self.fibre_bijections[t][pulled[i]] == original[self.fibre_bijections[s][i]])
            })
    }

    /// The singleton inclusion of the pulled-back map matches the restricted
    /// singleton inclusion of the original, section by section.
    pub fn singletons_compatible(&self, cube: &ParamCube) -> Result<bool, CubeError> {
        let pulled = self.pulled_cube.singleton_inclusion()?;
        let original = cube.singleton_inclusion()?;
        for l in 0..self.level_map.len() {
            let ol = self.level_map[l];
            if pulled.sections[l].len() != original.sections[ol].len() {
                return Ok(false);
            }
            for s in &pulled.sections[l] {
                let down = s.then(&self.pullback.proj2)?;
                let Some(k) = original.sections[ol].iter().position(|t| t.as_slice() == down.as_slice()) else {
                    return Ok(false);
                };
                let mapped = self.fibre_bijections[l][self.pulled_cube.graph_orbit(l, s)];
                if original.images[ol][k + 1] != 1 << mapped {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The one-point `G`-set as a shared handle.
pub fn point_of(orbits: &OrbitCat) -> Arc<GSet> {
    orbits.object(orbits.point_index()).clone()
}

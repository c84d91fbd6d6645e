use std::sync::Arc;

use orbital_base::{pullback, GMap, OrbitCat};

use crate::cube::build_cube_over;
use crate::error::CubeError;

/// Where `θ` sends one section of `a∘w`: the orbit `O` of `U ×_A V` containing its
/// image, and the section of `w` over `O` (recorded as a map `U → W`).
#[derive(Clone, Debug)]
pub struct ThetaEntry {
    pub orbit: usize,
    pub section: GMap,
}

/// Per-level data of the pushforward comparison at a level `b: U → A`.
#[derive(Clone, Debug)]
pub struct PushforwardLevel {
    pub level_name: String,
    /// Orbits of `U ×_A V`.
    pub outer_orbits: usize,
    /// For each orbit of `U ×_A W`, its image `(O, orbit of O ×_V W)`.
    pub orbit_bijection: Vec<(usize, usize)>,
    pub bijective: bool,
    /// `θ` on each section of `a∘w` over the level; `⊥` goes to `⊥` everywhere.
    pub theta: Vec<ThetaEntry>,
    /// Whether `θ` followed by the product of singleton inclusions equals the
    /// singleton inclusion of `a∘w` under the orbit bijection.
    pub compatible: bool,
}

/// Compares `(a∘w)`-singletons with the pushforward of `w`-singletons along `a`.
pub fn pushforward_singletons(orbits: &OrbitCat, a: &GMap, w: &GMap) -> Result<Vec<PushforwardLevel>, CubeError> {
    let aw = w.then(a)?;
    let slice = Arc::new(orbits.slice(a.target().clone()));
    let composite = build_cube_over(slice.clone(), &aw)?;
    let mut out = Vec::new();
    for (l, level) in slice.levels().iter().enumerate() {
        let b = &level.map;
        let outer = pullback(b, a)?;
        let outer_orbits = outer.object.orbits();
        let outer_index = outer.object.orbit_index();
        // For each outer orbit O, the pullback O ×_V W along the projection O → V.
        let mut inner = Vec::new();
        for o in &outer_orbits {
            let to_v = outer.proj2.restrict_to(&o.points)?;
            let pb = pullback(&to_v, w)?;
            let idx = pb.object.orbit_index();
            inner.push((o.points.clone(), pb, idx));
        }
        let composite_pb = composite.level_pullback(l);
        let composite_orbits = composite_pb.object.orbits();
        let locate = |x: usize, y: usize| -> (usize, usize) {
            let p = outer.index_of(x, w.apply(y)).expect("pair over A");
            let o = outer_index[p];
            let (pts, pb, idx) = &inner[o];
            let local = pts.binary_search(&p).expect("point in orbit");
            (o, idx[pb.index_of(local, y).expect("pair over V")])
        };
        let orbit_bijection: Vec<(usize, usize)> = composite_orbits
            .iter()
            .map(|orb| {
                let (x, y) = composite_pb.pairs[orb.basepoint];
                locate(x, y)
            })
            .collect();
        let target_size: usize = inner.iter().map(|(_, pb, _)| pb.object.orbits().len()).sum();
        let mut sorted = orbit_bijection.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let bijective = sorted.len() == orbit_bijection.len() && sorted.len() == target_size;
        let mut theta = Vec::new();
        let mut compatible = true;
        for s in composite.sections(l) {
            let p = outer.index_of(0, w.apply(s.apply(0))).expect("image pair over A");
            let orbit = outer_index[p];
            let singleton = composite.graph_orbit(l, &s);
            // The graph of s over O_s, read in O_s ×_V W.
            let (pts, pb, idx) = &inner[orbit];
            let local = pts.binary_search(&p).expect("point in orbit");
            let graph_inner = idx[pb.index_of(local, s.apply(0)).expect("graph pair over V")];
            compatible &= orbit_bijection[singleton] == (orbit, graph_inner);
            theta.push(ThetaEntry { orbit, section: s });
        }
        out.push(PushforwardLevel {
            level_name: slice.level_name(l).to_string(),
            outer_orbits: outer_orbits.len(),
            orbit_bijection,
            bijective,
            theta,
            compatible,
        });
    }
    Ok(out)
}

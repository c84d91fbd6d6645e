use std::sync::Arc;

use orbital_base::{GMap, GSet, OrbitCat};

/// A named map `w: W → V` used as a test input.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: String,
    pub w: GMap,
    pub summands: usize,
}

/// `⊔ᵢ Uᵢ → V` from a list of orbit maps with common target.
pub fn coproduct_map(parts: &[&GMap]) -> GMap {
    let target = parts[0].target().clone();
    let group = target.group().clone();
    let mut source = GSet::empty(group);
    let mut map = Vec::new();
    for p in parts {
        source = source.disjoint_union(p.source());
        map.extend_from_slice(p.as_slice());
    }
    GMap::new(Arc::new(source), target, map).expect("coproduct of equivariant maps is equivariant")
}

fn multisets(options: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(options, size - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for i in start..options {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// All maps `W → V` with `V` an orbit and `W` a coproduct of `1..=max_summands`
/// orbits, each summand carrying one of the equivariant maps into `V`.
pub fn catalogue(orbits: &OrbitCat, max_summands: usize) -> Vec<CatalogueEntry> {
    let mut out = Vec::new();
    for v in 0..orbits.len() {
        let options: Vec<(usize, usize, &GMap)> =
            (0..orbits.len()).flat_map(|u| orbits.hom(u, v).iter().enumerate().map(move |(k, f)| (u, k, f))).collect();
        for size in 1..=max_summands {
            for pick in multisets(options.len(), size) {
                let parts: Vec<&GMap> = pick.iter().map(|&i| options[i].2).collect();
                let label: Vec<String> = pick
                    .iter()
                    .map(|&i| {
                        let (u, k, _) = options[i];
                        if orbits.hom(u, v).len() == 1 {
                            orbits.object_name(u)
                        } else {
                            format!("{}#{}", orbits.object_name(u), k)
                        }
                    })
                    .collect();
                out.push(CatalogueEntry {
                    name: format!("{} -> {}", label.join("+"), orbits.object_name(v)),
                    w: coproduct_map(&parts),
                    summands: size,
                });
            }
        }
    }
    out
}

/// `W → pt` for the named orbit (or `free` for `G/e`).
pub fn orbit_to_point(orbits: &OrbitCat, name: &str) -> Option<GMap> {
    let i = if name == "free" { Some(orbits.free_index()) } else { orbits.index_by_name(name) }?;
    Some(orbits.hom(i, orbits.point_index())[0].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbital_base::FiniteGroup;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(4, 3).len(), 20);
        assert_eq!(multisets(3, 2).len(), 6);
    }

    #[test]
    fn c2_catalogue_over_point() {
        let o = OrbitCat::new(Arc::new(FiniteGroup::cyclic(2)));
        let all = catalogue(&o, 2);
        let over_pt = all.iter().filter(|e| e.name.ends_with("-> C2/C2")).count();
        assert_eq!(over_pt, 2 + 3);
    }
}

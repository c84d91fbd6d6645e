use std::sync::Arc;

use orbital_base::{
    check_homs_against_brute_force, diagonal_complement, find_isomorphism, pullback, FiniteGroup, GMap, GSet, OrbitCat,
    TEST_GROUPS,
};
use proptest::prelude::*;

fn orbit_cat(name: &str) -> OrbitCat {
    OrbitCat::new(Arc::new(FiniteGroup::by_name(name).unwrap()))
}

#[test]
fn hom_sets_match_brute_force_for_all_test_groups() {
    for name in TEST_GROUPS {
        assert!(check_homs_against_brute_force(&orbit_cat(name)).unwrap(), "{name}");
    }
}

#[test]
fn diagonal_complement_sizes_for_all_orbit_maps() {
    for name in TEST_GROUPS {
        let o = orbit_cat(name);
        for i in 0..o.len() {
            for j in 0..o.len() {
                for w in o.hom(i, j) {
                    let dc = diagonal_complement(w).unwrap();
                    let fibre = w.source().len() / w.target().len();
                    assert_eq!(w.source().len() + dc.complement.len(), w.target().len() * fibre * fibre);
                    assert!(dc.splitting.is_iso());
                }
            }
        }
    }
}

#[test]
fn pullback_is_universal_on_orbit_cones() {
    let o = orbit_cat("S3");
    let pt = o.object(o.point_index()).clone();
    let f = GMap::to_point(o.object(1).clone());
    let g = GMap::to_point(o.object(2).clone());
    let pb = pullback(&f, &g).unwrap();
    for c in 0..o.len() {
        for p in o.hom(c, 1) {
            for q in o.hom(c, 2) {
                assert!(p.then(&f).unwrap().as_slice() == q.then(&g).unwrap().as_slice());
                let u = pb.induced(p, q).expect("cone factors");
                assert_eq!(u.then(&pb.proj1).unwrap(), *p);
                assert_eq!(u.then(&pb.proj2).unwrap(), *q);
            }
        }
    }
    assert_eq!(pt.len(), 1);
}

proptest! {
    #[test]
    fn pullback_is_symmetric(gi in 0usize..4, a in 0usize..4, b in 0usize..4) {
        let o = orbit_cat(TEST_GROUPS[gi]);
        let (a, b) = (a % o.len(), b % o.len());
        let f = GMap::to_point(o.object(a).clone());
        let g = GMap::to_point(o.object(b).clone());
        let fg = pullback(&f, &g).unwrap();
        let gf = pullback(&g, &f).unwrap();
        let swap: Vec<usize> = fg.pairs.iter().map(|&(x, y)| gf.index_of(y, x).unwrap()).collect();
        let iso = GMap::new(fg.object.clone(), gf.object.clone(), swap).unwrap();
        prop_assert!(iso.is_iso());
    }

    #[test]
    fn diagonal_is_a_copy_of_the_source(gi in 0usize..4, a in 0usize..4, b in 0usize..4) {
        let o = orbit_cat(TEST_GROUPS[gi]);
        let (a, b) = (a % o.len(), b % o.len());
        for w in o.hom(a, b) {
            let pb = pullback(w, w).unwrap();
            let diag: Vec<usize> = (0..pb.pairs.len()).filter(|&i| pb.pairs[i].0 == pb.pairs[i].1).collect();
            let (d, _) = pb.object.sub_on(&diag).unwrap();
            prop_assert!(find_isomorphism(&Arc::new(d), w.source()).is_some());
        }
    }

    #[test]
    fn slice_lengths_drop_along_noninvertible_maps(gi in 0usize..4) {
        let o = orbit_cat(TEST_GROUPS[gi]);
        let pt = Arc::new(GSet::point(o.group().clone()));
        let s = o.slice(pt);
        let lengths: Vec<usize> = (0..o.len()).map(|i| o.slice(o.object(i).clone()).length()).collect();
        let cat = s.category();
        for f in 0..cat.morphism_count() {
            if !cat.is_iso(f) {
                let (u, w) = (s.level(cat.src(f)).object, s.level(cat.tgt(f)).object);
                prop_assert!(lengths[u] < lengths[w]);
            }
        }
    }
}

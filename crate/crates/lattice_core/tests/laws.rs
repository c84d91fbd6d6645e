use std::sync::Arc;

use lattice_core::{
    all_faces, check_galois, complement_decomposition, induced_excisable, lattice_from_json, lattice_to_json,
    meet_join_pair, smash_localization, ExcisableStructure, FinLattice, LatticeError,
};
use proptest::prelude::*;

fn cube_and_elements() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..=5).prop_flat_map(|n| (Just(n), 0..(1usize << n), 0..(1usize << n)))
}

proptest! {
    #[test]
    fn idempotence_and_absorption((n, x, a) in cube_and_elements()) {
        let l = FinLattice::powerset(n).unwrap();
        prop_assert_eq!(l.meet(x, x), x);
        prop_assert_eq!(l.join(x, x), x);
        prop_assert_eq!(l.join(x, l.meet(x, a)), x);
        prop_assert_eq!(l.meet(x, l.join(x, a)), x);
    }

    #[test]
    fn smash_adjunctions_hold((n, x, _a) in cube_and_elements()) {
        let l = FinLattice::powerset(n).unwrap();
        let c = l.complementation().unwrap();
        let s = smash_localization(&l, &c, x).unwrap();
        prop_assert!(s.check_adjunctions().unwrap().all_hold());
        let (f, g) = meet_join_pair(&l, &c, x).unwrap();
        prop_assert!(check_galois(&f, &g).unwrap().holds);
        prop_assert!(complement_decomposition(&l, &c, x).unwrap().round_trips());
    }

    #[test]
    fn faces_are_colocalisations((n, a, _b) in cube_and_elements()) {
        let l = FinLattice::powerset(n).unwrap();
        let c = l.complementation().unwrap();
        for face in all_faces(&l, &c, a).unwrap() {
            prop_assert!(face.triple.is_valid(&l));
            prop_assert!(face.is_fully_faithful());
            prop_assert!(face.colocalisation(&l).unwrap().holds);
        }
    }

    #[test]
    fn induced_structures_stay_down_closed((n, x, g) in cube_and_elements()) {
        let l = FinLattice::powerset(n).unwrap();
        let c = l.complementation().unwrap();
        let sigma = ExcisableStructure::generated_by(&l, &[g]);
        let (induced, local, _) = induced_excisable(&l, &c, &sigma, x).unwrap();
        prop_assert!(local.poset().is_down_closed(induced.mask()));
    }

    #[test]
    fn complementable_cubes_match_atom_powersets(n in 0usize..=5) {
        let l = FinLattice::powerset(n).unwrap();
        let iso = l.atom_map_isomorphism().expect("Boolean lattices are powersets of their atoms");
        prop_assert_eq!(iso.len(), l.len());
    }
}

#[test]
fn non_boolean_distributive_lattice_lacks_complements() {
    let chain = FinLattice::chain(3).unwrap();
    let square = FinLattice::from_poset(Arc::new(chain.poset().product(chain.poset()).unwrap())).unwrap();
    assert!(square.is_distributive());
    assert!(matches!(square.complementation(), Err(LatticeError::NoComplement(_))));
}

#[test]
fn modular_and_pentagon_are_not_distributive() {
    assert!(FinLattice::diamond().distributivity_witness().is_some());
    assert!(FinLattice::pentagon().distributivity_witness().is_some());
    assert!(FinLattice::diamond().complementation().is_err());
}

#[test]
fn json_round_trip_of_pentagon() {
    let l = FinLattice::pentagon();
    let text = lattice_to_json(&l);
    assert_eq!(lattice_to_json(&lattice_from_json(&text).unwrap()), text);
}

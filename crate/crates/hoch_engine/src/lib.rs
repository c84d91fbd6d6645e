//! Homotopical engine over bounded rational chain complexes: homotopy
//! (co)limits over finite EI categories, coefficient systems over orbit
//! categories, parametrised suspension and loops, spheres, indexed
//! (co)products and the norm, and the faithfulness probe.

pub mod coefficient;
pub mod complex;
pub mod diagram;
pub mod error;
pub mod hocolim;
pub mod norm;
pub mod probe;
pub mod shape;
pub mod spheres;
pub mod stable;
pub mod suspension;

pub use coefficient::{random_system, CoefficientSystem, SliceContext, SystemFile, SystemMap};
pub use complex::{
    complex_from_json, complex_to_json, mapping_cone, quasi_iso, random_complex, ChainComplex, ChainMap, ComplexFile,
    QiVerdict,
};
pub use diagram::{from_vector_diagram, perturb, same_map, CatDiagram};
pub use error::HochError;
pub use hocolim::{hocolim_poset, holim_poset, Hocolim, Holim};
pub use norm::{
    alpha_beta_cubes, norm_map, singleton_cartesian, singleton_cocartesian, AlphaBeta, AlphaBetaLevel, FibreCubes,
    NormContext, NormLevel, NormMap,
};
pub use probe::{faithfulness_probe, replay_witness, ProbeOutcome, Witness, PROBE_MAX_TOTAL_DIM};
pub use shape::{Chain, Chains, Shape};
pub use spheres::{
    certify_sphere_dims, sphere_calculus_check, sphere_calculus_check_over, sphere_dims, sphere_dims_over,
    CalculusLevel, CalculusReport, SphereCertificate, SphereDims,
};
pub use stable::{
    constant_cube, cube_shape, gluing_check, mutate_cube, pad_with_acyclic, projection_cube, stable_cube_check,
    CubeReport, CubeWitness, GluingReport, Mutation, MAX_CUBE_DIM,
};
pub use suspension::{
    counit_check, loop_w, suspension_values, suspension_w, unit_check, CounitLevel, CounitReport, CubeContext,
    Suspension, UnitLevel, UnitReport, BAR_MAX_ORBITS,
};

//! Command-line workbench: lattice and cube inspection plus the seeded verification suite.

pub mod cache;
pub mod commands;
pub mod config;
pub mod report;
pub mod suite;

pub use config::SuiteConfig;
pub use report::{CheckLine, Fingerprint, PropertyReport, Recorder, Status, SuiteReport};
pub use suite::{property_seed, replay, run_property, run_suite, Replay, RunOptions, WitnessFile, PROPERTIES};

//! Suite configuration and its validation.

use serde::{Deserialize, Serialize};

use crate::suite::PROPERTIES;

/// Groups the suite knows how to test.
pub const SUPPORTED_GROUPS: [&str; 4] = ["C2", "C3", "C4", "S3"];
/// Largest cube dimension any property will build.
pub const MAX_CUBE_DIM: usize = 4;
/// Largest dimension of a sampled vector space.
pub const MAX_VECTOR_DIM: usize = 4;
/// Largest total dimension of a sampled chain complex or coefficient system.
pub const MAX_COMPLEX_DIM: usize = 6;
/// Largest stage cap accepted for the excisive tower.
pub const MAX_STAGE_CAP: usize = 16;

/// Everything that determines a suite run; recorded verbatim in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub groups: Vec<String>,
    pub seed: u64,
    pub max_cube_dim: usize,
    pub max_vector_dim: usize,
    pub max_complex_dim: usize,
    pub stage_cap: usize,
    /// Properties to run; empty means all of them.
    pub only: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: SUPPORTED_GROUPS.iter().map(|g| g.to_string()).collect(),
            seed: 0,
            max_cube_dim: MAX_CUBE_DIM,
            max_vector_dim: 2,
            max_complex_dim: MAX_COMPLEX_DIM,
            stage_cap: 8,
            only: Vec::new(),
        }
    }
}

impl SuiteConfig {
    /// Rejects caps beyond the engine limits, unknown groups and unknown property names.
    pub fn validate(&self) -> Result<(), String> {
        if let Some(g) = self.groups.iter().find(|g| !SUPPORTED_GROUPS.contains(&g.as_str())) {
            return Err(format!("unsupported group {g}; expected one of {}", SUPPORTED_GROUPS.join(", ")));
        }
        if self.max_cube_dim > MAX_CUBE_DIM {
            return Err(format!("--max-cube-dim {} exceeds the cap {MAX_CUBE_DIM}", self.max_cube_dim));
        }
        if self.max_vector_dim == 0 || self.max_vector_dim > MAX_VECTOR_DIM {
            return Err(format!("vector dimension cap must lie in 1..={MAX_VECTOR_DIM}"));
        }
        if self.max_complex_dim == 0 || self.max_complex_dim > MAX_COMPLEX_DIM {
            return Err(format!("complex dimension cap must lie in 1..={MAX_COMPLEX_DIM}"));
        }
        if self.stage_cap == 0 || self.stage_cap > MAX_STAGE_CAP {
            return Err(format!("--stage-cap must lie in 1..={MAX_STAGE_CAP}"));
        }
        if let Some(p) = self.only.iter().find(|p| !PROPERTIES.contains(&p.as_str())) {
            return Err(format!("unknown property {p}; expected one of {}", PROPERTIES.join(", ")));
        }
        Ok(())
    }

    /// Whether a property is selected.
    pub fn selects(&self, property: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|p| p == property)
    }

    /// Whether a group is selected.
    pub fn has_group(&self, group: &str) -> bool {
        self.groups.iter().any(|g| g == group)
    }

    /// Highest powerset rank used for lattice laws: one past the cube cap, so the
    /// default configuration covers every Boolean lattice up to 2^5 elements.
    pub fn lattice_rank(&self) -> usize {
        self.max_cube_dim + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert!(SuiteConfig::default().validate().is_ok());
    }

    #[test]
    fn caps_are_enforced() {
        let cfg = SuiteConfig { max_cube_dim: 5, ..SuiteConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = SuiteConfig { groups: vec!["A5".into()], ..SuiteConfig::default() };
        assert!(cfg.validate().is_err());
        let cfg = SuiteConfig { only: vec!["nonsense".into()], ..SuiteConfig::default() };
        assert!(cfg.validate().is_err());
    }
}

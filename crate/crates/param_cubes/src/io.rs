use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use lattice_core::{lattice_to_json, subset_label};

use crate::cube::ParamCube;
use crate::error::CubeError;
use crate::param::ParamPoset;

/// Serialised parametrised poset: fibres by level name, restrictions by morphism label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamPosetFile {
    pub base: String,
    pub fibres: BTreeMap<String, serde_json::Value>,
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<usize>>,
}

impl ParamPosetFile {
    pub fn from_poset(p: &ParamPoset, base: &str) -> Result<Self, CubeError> {
        let slice = p.slice();
        let mut fibres = BTreeMap::new();
        for l in 0..slice.len() {
            let lat = p.fibre(l).to_lattice()?;
            let value = serde_json::from_str(&lattice_to_json(&lat)).expect("lattice json is valid");
            fibres.insert(slice.level_name(l).to_string(), value);
        }
        let cat = p.category();
        let mut restrictions = BTreeMap::new();
        for f in 0..cat.morphism_count() {
            let b = cat.tgt(f);
            let table = p
                .fibre(b)
                .elements()?
                .into_iter()
                .map(|m| (subset_label(m as usize), subset_label(p.restrict(f, m) as usize)))
                .collect();
            restrictions.insert(format!("{}#{f}", cat.morphism_label(f)), table);
        }
        Ok(ParamPosetFile { base: base.into(), fibres, restrictions, w: None })
    }

    pub fn from_cube(cube: &ParamCube, base: &str) -> Result<Self, CubeError> {
        let mut file = Self::from_poset(cube.poset(), base)?;
        file.w = Some(cube.w().as_slice().to_vec());
        Ok(file)
    }
}

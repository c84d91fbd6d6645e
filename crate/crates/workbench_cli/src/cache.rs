//! Memoized orbit-category tables, stored under the directory named by `WORKBENCH_CACHE`.

use std::path::PathBuf;
use std::sync::Arc;

use orbital_base::{FiniteGroup, OrbitCat};
use serde::{Deserialize, Serialize};

use crate::commands::InputError;

/// Environment variable naming the cache directory; unset disables the cache.
pub const CACHE_ENV: &str = "WORKBENCH_CACHE";

/// One object of an orbit category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    pub name: String,
    pub size: usize,
}

/// Objects of an orbit category and the equivariant maps between them, as point tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub group: String,
    pub objects: Vec<OrbitEntry>,
    /// `homs[i][j]` lists every map `object i → object j` as its image table.
    pub homs: Vec<Vec<Vec<Vec<usize>>>>,
}

impl OrbitTable {
    pub fn from_orbits(o: &OrbitCat) -> Self {
        let n = o.len();
        OrbitTable {
            group: o.group().name().to_string(),
            objects: (0..n).map(|i| OrbitEntry { name: o.object_name(i), size: o.object(i).len() }).collect(),
            homs: (0..n)
                .map(|i| (0..n).map(|j| o.hom(i, j).iter().map(|f| f.as_slice().to_vec()).collect()).collect())
                .collect(),
        }
    }
}

fn cache_path(group: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("orbits-{group}.json")))
}

/// The table for a group, read from the cache when present and written to it otherwise.
/// A cached table that no longer parses is rebuilt.
pub fn orbit_table(group: &str) -> Result<OrbitTable, InputError> {
    let path = cache_path(group);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(table) = serde_json::from_str::<OrbitTable>(&text) {
                return Ok(table);
            }
        }
    }
    let g = FiniteGroup::by_name(group).map_err(|e| InputError(e.to_string()))?;
    let table = OrbitTable::from_orbits(&OrbitCat::new(Arc::new(g)));
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
        }
        let text = serde_json::to_string_pretty(&table).expect("tables serialize");
        std::fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_table_lists_both_orbits() {
        let o = OrbitCat::new(Arc::new(FiniteGroup::by_name("C2").unwrap()));
        let t = OrbitTable::from_orbits(&o);
        assert_eq!(t.objects.iter().map(|e| e.size).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(t.homs[0][0].len(), 2);
    }
}

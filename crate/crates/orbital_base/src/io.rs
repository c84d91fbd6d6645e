use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::OrbitalError;
use crate::gmap::GMap;
use crate::group::FiniteGroup;
use crate::gset::GSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
}

/// `act[g][p]` with the group referenced by name or path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetFile {
    pub group: String,
    pub points: Vec<usize>,
    pub act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMapFile {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
}

fn json_err(e: serde_json::Error) -> OrbitalError {
    OrbitalError::Json(e.to_string())
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile { order: g.order(), mult: g.table().to_vec() }
    }

    pub fn to_group(&self, name: &str) -> Result<FiniteGroup, OrbitalError> {
        if self.mult.len() != self.order {
            return Err(OrbitalError::GroupTable("order disagrees with table".into()));
        }
        FiniteGroup::from_table(name, self.mult.clone())
    }
}

impl GSetFile {
    pub fn from_gset(group_ref: &str, x: &GSet) -> Self {
        GSetFile { group: group_ref.into(), points: (0..x.len()).collect(), act: x.table().to_vec() }
    }

    pub fn to_gset(&self, group: Arc<FiniteGroup>) -> Result<GSet, OrbitalError> {
        if self.points.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(OrbitalError::Action("points must be 0..n in order".into()));
        }
        GSet::new(group, self.points.len(), self.act.clone())
    }
}

impl GMapFile {
    pub fn from_gmap(source_ref: &str, target_ref: &str, f: &GMap) -> Self {
        GMapFile { source: source_ref.into(), target: target_ref.into(), map: f.as_slice().to_vec() }
    }

    pub fn to_gmap(&self, source: Arc<GSet>, target: Arc<GSet>) -> Result<GMap, OrbitalError> {
        GMap::new(source, target, self.map.clone())
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, OrbitalError> {
    serde_json::from_str(text).map_err(json_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_round_trip_is_exact() {
        let g = FiniteGroup::symmetric3();
        let text = to_json(&GroupFile::from_group(&g));
        let back: GroupFile = from_json(&text).unwrap();
        assert_eq!(back.to_group("S3").unwrap(), g);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn gset_and_gmap_round_trip() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let x = Arc::new(GSet::cosets(g.clone(), &[0]));
        let text = to_json(&GSetFile::from_gset("C2", &x));
        let back = from_json::<GSetFile>(&text).unwrap().to_gset(g.clone()).unwrap();
        assert_eq!(&back, x.as_ref());
        let f = GMap::to_point(x.clone());
        let ftext = to_json(&GMapFile::from_gmap("free", "pt", &f));
        let fback = from_json::<GMapFile>(&ftext).unwrap().to_gmap(x, f.target().clone()).unwrap();
        assert_eq!(fback, f);
    }
}

//! Lattice and cube inspection commands.

use std::path::Path;
use std::sync::Arc;

use lattice_core::{
    all_faces, check_galois, complement_decomposition, induced_excisable, lattice_from_json, meet_join_pair,
    smash_localization, ExcisableStructure, FinLattice,
};
use orbital_base::{FiniteGroup, GMap, OrbitCat};
use param_cubes::{basechange, build_cube, coproduct_map, orbit_to_point, ParamCube, Puncture};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::orbit_table;

/// Failure to run a command at all, as opposed to a property being violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn input(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

/// Result of a command: a JSON value, its text rendering and whether a property was violated.
#[derive(Debug, Clone, Serialize)]
pub struct Output {
    pub value: Value,
    #[serde(skip)]
    pub text: String,
    pub violated: bool,
}

pub fn load_lattice(path: &Path) -> Result<FinLattice, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    lattice_from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Resolves an element by its label, also accepting a bare member list such as `1,2`
/// for the powerset label `{1,2}`.
pub fn parse_element(l: &FinLattice, spec: &str) -> Result<usize, InputError> {
    let candidates = [spec.to_string(), format!("{{{spec}}}")];
    l.elements()
        .find(|&x| candidates.iter().any(|c| c == l.label(x)))
        .ok_or_else(|| InputError(format!("no element labelled {spec}")))
}

fn labels(l: &FinLattice, xs: impl IntoIterator<Item = usize>) -> Vec<String> {
    xs.into_iter().map(|x| l.label(x).to_string()).collect()
}

/// Checks distributivity, complements and the lattice laws on a lattice file.
pub fn lattice_verify(l: &FinLattice) -> Result<Output, InputError> {
    if let Some([a, b, c]) = l.distributivity_witness() {
        let triple = labels(l, [a, b, c]);
        return Ok(Output {
            text: format!("distributivity failed at ({}, {}, {})\n", triple[0], triple[1], triple[2]),
            value: json!({ "distributive": false, "witness": triple }),
            violated: true,
        });
    }
    let comp = match l.complementation() {
        Ok(c) => c,
        Err(e) => {
            return Ok(Output {
                text: format!("complementation failed: {e}\n"),
                value: json!({ "distributive": true, "complementable": false, "reason": e.to_string() }),
                violated: true,
            })
        }
    };
    let mut failures = Vec::new();
    for x in l.elements() {
        for a in l.elements() {
            if l.meet(x, x) != x || l.join(x, x) != x || l.join(x, l.meet(x, a)) != x || l.meet(x, l.join(x, a)) != x {
                failures.push(format!("absorption at ({}, {})", l.label(x), l.label(a)));
            }
        }
        let (left, right) = meet_join_pair(l, &comp, x).map_err(input)?;
        if !check_galois(&left, &right).map_err(input)?.holds {
            failures.push(format!("Galois pair at {}", l.label(x)));
        }
        if !smash_localization(l, &comp, x).map_err(input)?.check_adjunctions().map_err(input)?.all_hold() {
            failures.push(format!("smash adjunctions at {}", l.label(x)));
        }
        if !complement_decomposition(l, &comp, x).map_err(input)?.round_trips() {
            failures.push(format!("decomposition at {}", l.label(x)));
        }
    }
    let text = if failures.is_empty() {
        format!("{} elements: distributive, complementable, all laws hold\n", l.len())
    } else {
        format!("laws failed: {}\n", failures.join("; "))
    };
    Ok(Output {
        value: json!({ "elements": l.len(), "distributive": true, "complementable": true, "failures": failures }),
        violated: !failures.is_empty(),
        text,
    })
}

/// The product decomposition `L ≅ L_x × L_{x^c}`.
pub fn lattice_decompose(l: &FinLattice, x: usize) -> Result<Output, InputError> {
    let comp = l.complementation().map_err(input)?;
    let d = complement_decomposition(l, &comp, x).map_err(input)?;
    let left = labels(l, d.left_embed.iter().copied());
    let right = labels(l, d.right_embed.iter().copied());
    let ok = d.round_trips();
    let text = format!(
        "x = {}, complement {}\nL_x = [{}]\nL_complement = [{}]\n{} = {} x {}, round trip {}\n",
        l.label(x),
        l.label(comp.comp[x]),
        left.join(", "),
        right.join(", "),
        l.len(),
        left.len(),
        right.len(),
        if ok { "holds" } else { "FAILS" }
    );
    Ok(Output {
        value: json!({ "element": l.label(x), "complement": l.label(comp.comp[x]), "left": left, "right": right, "round_trip": ok }),
        text,
        violated: !ok,
    })
}

/// Every face through an element, with full faithfulness and the colocalisation check.
pub fn lattice_faces(l: &FinLattice, a: usize) -> Result<Output, InputError> {
    let comp = l.complementation().map_err(input)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut violated = false;
    for face in all_faces(l, &comp, a).map_err(input)? {
        let t = &face.triple;
        let ff = face.is_fully_faithful();
        let coloc = face.colocalisation(l).map_err(input)?.holds;
        violated |= !(ff && coloc && t.is_valid(l));
        let image = labels(l, face.map.as_slice().iter().copied());
        text.push_str(&format!(
            "(a, d, z) = ({}, {}, {}): image [{}], fully faithful {ff}, colocalisation {coloc}\n",
            l.label(t.a),
            l.label(t.d),
            l.label(t.z),
            image.join(", ")
        ));
        rows.push(json!({ "a": l.label(t.a), "d": l.label(t.d), "z": l.label(t.z), "image": image, "fully_faithful": ff, "colocalisation": coloc }));
    }
    Ok(Output { value: json!({ "element": l.label(a), "faces": rows }), text, violated })
}

/// Named excisable structures on a lattice.
pub fn excisable_structure(l: &FinLattice, name: &str) -> Result<ExcisableStructure, InputError> {
    match name {
        "singletons" => Ok(ExcisableStructure::singletons(l)),
        "spherical" => ExcisableStructure::spherical(l).map_err(input),
        "bottom" => Ok(ExcisableStructure::bottom_only(l)),
        "whole" => Ok(ExcisableStructure::whole(l)),
        other => Err(InputError(format!("unknown structure {other}; expected singletons, spherical, bottom or whole"))),
    }
}

/// The structure induced on `L_x` by a structure on `L`.
pub fn lattice_excisable(l: &FinLattice, x: usize, sigma_name: &str) -> Result<Output, InputError> {
    let comp = l.complementation().map_err(input)?;
    let sigma = excisable_structure(l, sigma_name)?;
    let (induced, local, embed) = induced_excisable(l, &comp, &sigma, x).map_err(input)?;
    let members: Vec<String> = induced.elements().into_iter().map(|y| l.label(embed[y]).to_string()).collect();
    let down = local.poset().is_down_closed(induced.mask());
    let text = format!(
        "{sigma_name} on L restricts along {} to [{}] in L_x ({} elements), down-closed {down}\n",
        l.label(x),
        members.join(", "),
        local.len()
    );
    Ok(Output {
        value: json!({ "element": l.label(x), "structure": sigma_name, "induced": members, "local_size": local.len(), "down_closed": down }),
        text,
        violated: !down,
    })
}

fn orbit_cat(group: &str) -> Result<OrbitCat, InputError> {
    Ok(OrbitCat::new(Arc::new(FiniteGroup::by_name(group).map_err(input)?)))
}

/// Parses `a+b+…` where each part names an orbit (or `free`) mapped to the point.
pub fn parse_w(o: &OrbitCat, spec: &str) -> Result<GMap, InputError> {
    let parts: Vec<GMap> = spec
        .split('+')
        .map(|s| orbit_to_point(o, s.trim()).ok_or_else(|| InputError(format!("unknown orbit {s}"))))
        .collect::<Result<_, _>>()?;
    Ok(coproduct_map(&parts.iter().collect::<Vec<_>>()))
}

/// Renders a fibre element: `∅`, `𝟙` for the full set, else the orbit indices.
fn mask_label(m: u64, full: u64) -> String {
    if m == 0 {
        "∅".into()
    } else if m == full {
        "𝟙".into()
    } else {
        let members: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
        format!("{{{}}}", members.join(","))
    }
}

fn cube_for(group: &str, w: &str) -> Result<(OrbitCat, ParamCube), InputError> {
    let o = orbit_cat(group)?;
    let map = parse_w(&o, w)?;
    let cube = build_cube(&o, &map).map_err(input)?;
    Ok((o, cube))
}

/// Fibre sizes and orbit counts of `w_*Δ¹` per level.
pub fn cube_build(group: &str, w: &str) -> Result<Output, InputError> {
    let (o, cube) = cube_for(group, w)?;
    let table = orbit_table(o.group().name())?;
    let terminal = cube.terminal_level().ok();
    let mut rows = Vec::new();
    let mut text = format!("w = {w} over {group}; orbit category has {} objects\n", table.objects.len());
    for l in 0..cube.slice().len() {
        let name = cube.slice().level_name(l).to_string();
        let fibre = cube.poset().fibre(l);
        let alias = if Some(l) == terminal { " (pt)" } else { "" };
        text.push_str(&format!("{name}{alias}: {} orbits, fibre of {} elements\n", fibre.orbits(), fibre.len()));
        rows.push(json!({ "level": name, "terminal": Some(l) == terminal, "orbits": fibre.orbits(), "fibre_size": fibre.len() }));
    }
    let functorial = cube.poset().check_functoriality().is_ok() && cube.check_boolean().map_err(input)?;
    text.push_str(&format!("functorial Boolean fibres: {functorial}\n"));
    Ok(Output {
        value: json!({ "group": group, "w": w, "levels": rows, "boolean": functorial }),
        text,
        violated: !functorial,
    })
}

/// Global points at the terminal level and point counts per level.
pub fn cube_points(group: &str, w: &str) -> Result<Output, InputError> {
    let (_, cube) = cube_for(group, w)?;
    let terminal = cube.terminal_level().map_err(input)?;
    let full = cube.poset().fibre(terminal).full();
    let global: Vec<String> = cube.global_points().map_err(input)?.into_iter().map(|m| mask_label(m, full)).collect();
    let all = cube.enumerate_points().map_err(input)?;
    let per_level: Vec<Value> = (0..cube.slice().len())
        .map(|l| json!({ "level": cube.slice().level_name(l), "points": all.iter().filter(|p| p.0 == l).count() }))
        .collect();
    let mut text = format!("global points: {}\n", global.join(", "));
    for row in &per_level {
        text.push_str(&format!("{}: {} points\n", row["level"].as_str().unwrap_or_default(), row["points"]));
    }
    Ok(Output { value: json!({ "global_points": global, "levels": per_level }), text, violated: false })
}

/// The singleton inclusion per level, with its structural checks.
pub fn cube_singletons(group: &str, w: &str) -> Result<Output, InputError> {
    let (_, cube) = cube_for(group, w)?;
    let inc = cube.singleton_inclusion().map_err(input)?;
    let checks = cube.check_singletons(&inc).map_err(input)?;
    let top = cube.poset().puncture(Puncture::Top).map_err(input)?.is_down_closed_in(cube.poset()).map_err(input)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for l in 0..cube.slice().len() {
        let full = cube.poset().fibre(l).full();
        let images: Vec<String> = inc.images[l].iter().map(|&m| mask_label(m, full)).collect();
        text.push_str(&format!(
            "{}: ⊥ and {} sections -> [{}]\n",
            cube.slice().level_name(l),
            inc.sections[l].len(),
            images.join(", ")
        ));
        rows.push(json!({ "level": cube.slice().level_name(l), "sections": inc.sections[l].len(), "images": images }));
    }
    text.push_str(&format!(
        "fully faithful {}, natural {}, singletons down-closed {}, top puncture down-closed {}\n",
        checks.fully_faithful, checks.natural, checks.down_closed, top
    ));
    let ok = checks.all_hold() && top;
    Ok(Output {
        value: json!({ "levels": rows, "fully_faithful": checks.fully_faithful, "natural": checks.natural, "singletons_down_closed": checks.down_closed, "top_puncture_down_closed": top, "inside_top_puncture": checks.inside_top_puncture }),
        text,
        violated: !ok,
    })
}

/// Restricts the cube along `along → pt` and compares with the cube of the pulled-back map.
pub fn cube_basechange(group: &str, w: &str, along: &str) -> Result<Output, InputError> {
    let (o, cube) = cube_for(group, w)?;
    let b = orbit_to_point(&o, along).ok_or_else(|| InputError(format!("unknown orbit {along}")))?;
    let bc = basechange(&o, &cube, &b).map_err(input)?;
    let cube_ok = bc.cube_compatible();
    let singletons_ok = bc.singletons_compatible(&cube).map_err(input)?;
    let levels: Vec<Value> = bc
        .level_map
        .iter()
        .enumerate()
        .map(|(l, &ol)| json!({ "level": bc.pulled_cube.slice().level_name(l), "over": cube.slice().level_name(ol), "orbits": bc.restricted.fibre(l).orbits() }))
        .collect();
    let mut text = String::new();
    for row in &levels {
        text.push_str(&format!(
            "{} -> {}: {} orbits\n",
            row["level"].as_str().unwrap_or_default(),
            row["over"].as_str().unwrap_or_default(),
            row["orbits"]
        ));
    }
    text.push_str(&format!("cube compatible {cube_ok}, singletons compatible {singletons_ok}\n"));
    Ok(Output {
        value: json!({ "along": along, "levels": levels, "cube_compatible": cube_ok, "singletons_compatible": singletons_ok }),
        text,
        violated: !(cube_ok && singletons_ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_labels_accept_bare_members() {
        let l = FinLattice::powerset(3).unwrap();
        let x = parse_element(&l, "1,2").unwrap();
        assert_eq!(l.label(x), "{1,2}");
        assert!(parse_element(&l, "9").is_err());
    }

    #[test]
    fn diamond_fails_verification() {
        let out = lattice_verify(&FinLattice::diamond()).unwrap();
        assert!(out.violated);
        assert_eq!(out.value["witness"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn c2_free_cube_table() {
        let out = cube_build("C2", "free").unwrap();
        let sizes: Vec<u64> =
            out.value["levels"].as_array().unwrap().iter().map(|r| r["fibre_size"].as_u64().unwrap()).collect();
        assert_eq!(sizes, vec![4, 2]);
        let points = cube_points("C2", "free").unwrap();
        assert_eq!(points.value["global_points"], json!(["∅", "𝟙"]));
    }
}

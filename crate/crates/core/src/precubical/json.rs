use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CellRef, PrecubicalError, PrecubicalSet};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetJson {
    name: String,
    cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    faces: BTreeMap<String, FacesJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacesJson {
    d0: Vec<String>,
    d1: Vec<String>,
}

pub(super) fn from_json(text: &str) -> Result<PrecubicalSet, PrecubicalError> {
    let raw: SetJson = serde_json::from_str(text).map_err(|e| PrecubicalError::Json(e.to_string()))?;
    let mut dims = Vec::with_capacity(raw.cells.len());
    for key in raw.cells.keys() {
        let d: usize = key
            .parse()
            .map_err(|_| PrecubicalError::Json(format!("cell dimension key '{key}' is not a number")))?;
        dims.push(d);
    }
    dims.sort_unstable();
    for (expect, &d) in dims.iter().enumerate() {
        if d != expect {
            return Err(PrecubicalError::NonConsecutiveDims(expect));
        }
    }
    let mut by_dim = Vec::with_capacity(dims.len());
    let mut used = 0usize;
    for d in dims {
        let list = &raw.cells[&d.to_string()];
        let mut named = Vec::with_capacity(list.len());
        for id in list {
            let (lower, upper) = match raw.faces.get(id) {
                Some(f) => {
                    used += 1;
                    (f.d0.clone(), f.d1.clone())
                }
                None if d == 0 => (vec![], vec![]),
                None => return Err(PrecubicalError::MissingFaces(id.clone())),
            };
            named.push((id.clone(), lower, upper));
        }
        by_dim.push(named);
    }
    if used != raw.faces.len() {
        let known: std::collections::HashSet<&String> = raw.cells.values().flatten().collect();
        let stray = raw.faces.keys().find(|k| !known.contains(k)).expect("a face entry is unused");
        return Err(PrecubicalError::UnknownCell(stray.clone()));
    }
    PrecubicalSet::from_named(raw.name, by_dim)
}

/// Cells are listed per dimension in their stored order; faces appear for every
/// cell of positive dimension, keyed by id.
pub(super) fn to_json(x: &PrecubicalSet) -> String {
    let mut cells = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for d in 0..x.dim().map_or(0, |d| d + 1) {
        cells.insert(d.to_string(), x.cells(d).to_vec());
        if d == 0 {
            continue;
        }
        for i in 0..x.count(d) {
            let c = CellRef::new(d, i);
            let f = x.faces(c);
            let names = |v: &Vec<usize>| v.iter().map(|&g| x.cells(d - 1)[g].clone()).collect();
            faces.insert(x.cell_name(c).to_string(), FacesJson { d0: names(&f.lower), d1: names(&f.upper) });
        }
    }
    let doc = SetJson { name: x.name().to_string(), cells, faces };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

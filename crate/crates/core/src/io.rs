//! JSON file formats.
//!
//! * lattice: `{"elements": [...], "covers": [[lower, upper], ...]}`
//! * aggregation spec: `{"lattice": <path or inline lattice>, "arity": n,
//!   "slots": [{"closure": [...], "interior": [...], "iso": {...}}, ...]}`
//! * value-map family: `{"lattice": ..., "maps": {token: {label: label}}}`
//!   or `{"builtin": "godel_chain", "k": k}`
//!
//! Lattice paths are resolved relative to the file that mentions them.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::aggregation::{AggSlot, SupAggSpec};
use crate::closure::{ClosureSystem, InteriorSystem, SystemIso};
use crate::error::{Error, Result};
use crate::fca::{residuated_chain_family, ValueMapFamily};
use crate::lattice::FiniteLattice;
use crate::map::LatticeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl LatticeFile {
    pub fn build(&self) -> Result<FiniteLattice> {
        FiniteLattice::from_covers(&self.elements, &self.covers)
    }

    pub fn of(l: &FiniteLattice) -> Self {
        LatticeFile {
            elements: l.labels(),
            covers: l
                .covers()
                .into_iter()
                .map(|(x, y)| (l.label(x).into_owned(), l.label(y).into_owned()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum LatticeRef {
    Path(String),
    Inline(LatticeFile),
}

impl LatticeRef {
    fn resolve(&self, base: &Path) -> Result<FiniteLattice> {
        match self {
            LatticeRef::Path(p) => load_lattice(base.join(p)),
            LatticeRef::Inline(file) => file.build(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SlotFile {
    pub closure: Vec<String>,
    pub interior: Vec<String>,
    pub iso: Map<String, Value>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    lattice: LatticeRef,
    arity: usize,
    slots: Vec<SlotFile>,
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn label_pairs(map: &Map<String, Value>, what: &str) -> Result<Vec<(String, String)>> {
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => Ok((k.clone(), s.clone())),
            _ => Err(Error::Parse(format!("{what}: value for `{k}` must be a label string"))),
        })
        .collect()
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    serde_json::from_str::<LatticeFile>(text)?.build()
}

pub fn load_lattice(path: impl AsRef<Path>) -> Result<FiniteLattice> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_lattice(&text)
}

impl SlotFile {
    pub fn build(&self, host: &Arc<FiniteLattice>) -> Result<AggSlot> {
        let closure = ClosureSystem::from_labels(host.clone(), &self.closure)?;
        let interior = InteriorSystem::from_labels(host.clone(), &self.interior)?;
        let iso = SystemIso::from_labels(&closure, &interior, &label_pairs(&self.iso, "iso")?)?;
        Ok(AggSlot {
            closure,
            interior,
            iso,
        })
    }
}

/// Parses a spec whose lattice path is relative to `base`.
pub fn parse_agg_spec(text: &str, base: &Path) -> Result<SupAggSpec> {
    let file: SpecFile = serde_json::from_str(text)?;
    if file.arity != file.slots.len() {
        return Err(Error::ArityMismatch {
            expected: file.arity,
            actual: file.slots.len(),
        });
    }
    let host = Arc::new(file.lattice.resolve(base)?);
    let slots = file.slots.iter().map(|s| s.build(&host)).collect::<Result<_>>()?;
    Ok(SupAggSpec::new(host, slots))
}

pub fn load_agg_spec(path: impl AsRef<Path>) -> Result<SupAggSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_agg_spec(&text, &base_dir(path))
}

pub fn slot_to_json(slot: &AggSlot) -> Value {
    let members = |labels: Vec<String>| Value::Array(labels.into_iter().map(Value::String).collect());
    use crate::closure::System;
    serde_json::json!({
        "closure": members(slot.closure.member_labels()),
        "interior": members(slot.interior.member_labels()),
        "iso": Value::Object(
            slot.iso
                .label_pairs()
                .into_iter()
                .map(|(k, v)| (k, Value::String(v)))
                .collect()
        ),
    })
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum FamilyFile {
    Builtin {
        builtin: String,
        k: usize,
    },
    Tables {
        lattice: LatticeRef,
        maps: Map<String, Value>,
    },
}

pub fn parse_family(text: &str, base: &Path) -> Result<ValueMapFamily> {
    match serde_json::from_str::<FamilyFile>(text)? {
        FamilyFile::Builtin { builtin, k } => match builtin.as_str() {
            "godel_chain" => residuated_chain_family(k),
            other => Err(Error::Parse(format!("unknown builtin family `{other}`"))),
        },
        FamilyFile::Tables { lattice, maps } => {
            let l = Arc::new(lattice.resolve(base)?);
            let mut family = Vec::with_capacity(maps.len());
            for (token, table) in &maps {
                let Value::Object(table) = table else {
                    return Err(Error::Parse(format!("map for `{token}` must be an object")));
                };
                let pairs = label_pairs(table, token)?;
                family.push((token.clone(), LatticeMap::from_labels(&l, &l, &pairs)?));
            }
            ValueMapFamily::new(l, family)
        }
    }
}

pub fn load_family(path: impl AsRef<Path>) -> Result<ValueMapFamily> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_family(&text, &base_dir(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregation::build;
    use crate::fixtures;

    const L6: &str = r#"{"elements": ["0","a","b","c","d","1"],
        "covers": [["0","a"],["0","c"],["a","b"],["a","d"],["c","d"],["b","1"],["d","1"]]}"#;

    #[test]
    fn lattice_roundtrip() {
        let l = parse_lattice(L6).unwrap();
        assert_eq!(l, fixtures::l6());
        let back = serde_json::to_string(&LatticeFile::of(&l)).unwrap();
        assert_eq!(parse_lattice(&back).unwrap(), l);
        assert_eq!(parse_lattice("{").unwrap_err().kind(), "ParseError");
        assert_eq!(parse_lattice(r#"{"elements": ["0"]}"#).unwrap_err().kind(), "ParseError");
    }

    #[test]
    fn inline_spec() {
        let text = format!(
            r#"{{"lattice": {L6}, "arity": 2, "slots": [
                {{"closure": ["1","b","c","0"], "interior": ["d","a","c","0"],
                  "iso": {{"1":"d","b":"c","c":"a","0":"0"}}}},
                {{"closure": ["1","a"], "interior": ["b","0"], "iso": {{"a":"0","1":"b"}}}}]}}"#
        );
        let spec = parse_agg_spec(&text, Path::new(".")).unwrap();
        let f = build(spec).unwrap();
        assert_eq!(f.evaluate_labels(&["c", "d"]).unwrap(), "b");
        assert_eq!(
            f.full_table().unwrap(),
            build(fixtures::example1_spec()).unwrap().full_table().unwrap()
        );
        let json = slot_to_json(&f.spec().slots()[1]);
        assert_eq!(json["iso"]["a"], "0");

        let wrong_arity = text.replace("\"arity\": 2", "\"arity\": 3");
        assert_eq!(
            parse_agg_spec(&wrong_arity, Path::new(".")).unwrap_err().kind(),
            "ArityMismatch"
        );
        let missing = parse_agg_spec(r#"{"lattice": "nope.json", "arity": 0, "slots": []}"#, Path::new("/nonexistent"));
        assert_eq!(missing.unwrap_err().kind(), "IoError");
    }

    #[test]
    fn families() {
        let fam = parse_family(r#"{"builtin": "godel_chain", "k": 4}"#, Path::new(".")).unwrap();
        assert_eq!(fam.tokens(), ["0", "1", "2", "3"]);
        let fam = parse_family(
            &format!(r#"{{"lattice": {L6}, "maps": {{"id": {{"0":"0","a":"a","b":"b","c":"c","d":"d","1":"1"}}}}}}"#),
            Path::new("."),
        )
        .unwrap();
        assert_eq!(fam.tokens(), ["id"]);
        let bad = parse_family(
            &format!(r#"{{"lattice": {L6}, "maps": {{"t": {{"0":"1","a":"1","b":"1","c":"1","d":"1","1":"1"}}}}}}"#),
            Path::new("."),
        );
        assert_eq!(bad.unwrap_err().kind(), "NotSupPreserving");
        let unknown = parse_family(r#"{"builtin": "lukasiewicz", "k": 3}"#, Path::new("."));
        assert_eq!(unknown.unwrap_err().kind(), "ParseError");
    }
}

//! TOML algebra spec files.
//!
//! ```toml
//! p = 2
//! dim = 2
//! labels = ["1", "x"]
//! unit = [1, 0]
//! commutative = true
//! structure = [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]  # (i, j, k, coeff)
//! mult_bound = 2
//!
//! [[seeds]]
//! name = "S"
//! action = [[[1]], [[0]]]   # one matrix per basis element
//! ```
//!
//! Alternatively `preset = "xquot:2,3"` supplies the algebra and seeds.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gf::Mat;
use crate::rep::algebra::{Algebra, AlgebraSpec};
use crate::rep::module::Module;
use crate::rep::presets::{PresetData, PresetRegistry};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    preset: Option<String>,
    p: Option<u32>,
    dim: Option<usize>,
    labels: Option<Vec<String>>,
    unit: Option<Vec<i64>>,
    structure: Option<Vec<Vec<i64>>>,
    commutative: Option<bool>,
    mult_bound: Option<usize>,
    seeds: Option<Vec<RawSeed>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeed {
    name: String,
    action: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct SpecFile {
    pub data: PresetData,
    pub mult_bound: Option<usize>,
}

fn line_of(text: &str, byte: usize) -> usize {
    text[..byte.min(text.len())].matches('\n').count() + 1
}

/// Line of the `k`-th inner array of the top-level key `key`.
fn entry_line(text: &str, key: &str, k: usize) -> Option<usize> {
    let start = text
        .match_indices(key)
        .find(|(i, _)| *i == 0 || text.as_bytes()[i - 1] == b'\n')?
        .0;
    let mut depth = 0;
    let mut seen = 0;
    for (i, ch) in text[start..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if seen == k {
                        return Some(line_of(text, start + i));
                    }
                    seen += 1;
                }
            }
            ']' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    None
}

fn spec_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Spec {
        location: location.into(),
        message: message.into(),
    }
}

fn missing(field: &str) -> Error {
    spec_err(format!("field '{field}'"), "required when no preset is given")
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let raw: RawSpec = toml::from_str(text).map_err(|e| {
        let loc = match e.span() {
            Some(s) => format!("line {}", line_of(text, s.start)),
            None => "input".into(),
        };
        spec_err(loc, e.message().to_string())
    })?;
    let algebra = match &raw.preset {
        Some(name) => Some(PresetRegistry::default().build(name)?),
        None => None,
    };
    let (name, alg, preset_seeds) = match algebra {
        Some(d) => (d.name, d.algebra, d.seeds),
        None => {
            let p = raw.p.ok_or_else(|| missing("p"))?;
            let dim = raw.dim.ok_or_else(|| missing("dim"))?;
            let unit = raw.unit.clone().ok_or_else(|| missing("unit"))?;
            let triples = raw.structure.clone().ok_or_else(|| missing("structure"))?;
            let mut structure = Vec::with_capacity(triples.len());
            for (k, t) in triples.iter().enumerate() {
                let loc = || match entry_line(text, "structure", k) {
                    Some(l) => format!("line {l}, structure[{k}]"),
                    None => format!("structure[{k}]"),
                };
                if t.len() != 4 {
                    return Err(spec_err(loc(), format!("expected (i, j, k, coeff), got {} entries", t.len())));
                }
                if t[..3].iter().any(|&x| x < 0 || x as usize >= dim) {
                    return Err(spec_err(loc(), format!("basis index out of range 0..{dim}")));
                }
                structure.push((t[0] as usize, t[1] as usize, t[2] as usize, t[3]));
            }
            if unit.len() != dim {
                return Err(spec_err("field 'unit'", format!("expected {dim} coordinates")));
            }
            let labels = raw
                .labels
                .clone()
                .unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
            if labels.len() != dim {
                return Err(spec_err("field 'labels'", format!("expected {dim} labels")));
            }
            let spec = AlgebraSpec {
                p,
                dim,
                labels,
                unit,
                structure,
                commutative: raw.commutative.unwrap_or(false),
            };
            (format!("spec:p={p},dim={dim}"), Algebra::from_spec(&spec)?, Vec::new())
        }
    };
    let seeds = match raw.seeds {
        Some(list) => {
            let mut out = Vec::with_capacity(list.len());
            for (si, s) in list.into_iter().enumerate() {
                let loc = format!("seeds[{si}] ({})", s.name);
                if s.action.len() != alg.dim() {
                    return Err(spec_err(loc, format!("expected {} action matrices", alg.dim())));
                }
                let mut mats = Vec::with_capacity(s.action.len());
                for rows in &s.action {
                    mats.push(Mat::from_rows(alg.field(), rows).map_err(|e| spec_err(loc.clone(), e.to_string()))?);
                }
                let m = Module::new(&alg, mats).map_err(|e| spec_err(loc.clone(), e.to_string()))?;
                out.push((s.name, m));
            }
            out
        }
        None if raw.preset.is_some() => preset_seeds,
        None => return Err(missing("seeds")),
    };
    Ok(SpecFile {
        data: PresetData {
            name,
            algebra: alg,
            seeds,
        },
        mult_bound: raw.mult_bound,
    })
}

pub fn load_spec(path: &Path) -> Result<SpecFile> {
    let text = std::fs::read_to_string(path)?;
    parse_spec(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"
p = 2
dim = 2
labels = ["1", "x"]
unit = [1, 0]
commutative = true
structure = [
  [0, 0, 0, 1],
  [0, 1, 1, 1],
  [1, 0, 1, 1],
]
mult_bound = 2

[[seeds]]
name = "S"
action = [[[1]], [[0]]]

[[seeds]]
name = "P"
action = [[[1, 0], [0, 1]], [[0, 0], [1, 0]]]
"#;

    #[test]
    fn parses_explicit_spec() {
        let s = parse_spec(DUAL).unwrap();
        assert_eq!(s.mult_bound, Some(2));
        assert_eq!(s.data.seeds.len(), 2);
        assert_eq!(s.data.universe(2, 1 << 16).unwrap().len(), 9);
    }

    #[test]
    fn malformed_triple_cites_line() {
        let bad = DUAL.replace("[0, 1, 1, 1],", "[0, 1, 1],");
        let e = parse_spec(&bad).unwrap_err().to_string();
        assert!(e.contains("line 9"), "{e}");
        assert!(e.contains("structure[1]"), "{e}");
    }

    #[test]
    fn non_prime_rejected() {
        let bad = DUAL.replace("p = 2", "p = 4");
        assert!(matches!(parse_spec(&bad), Err(Error::NotPrime(4))));
    }

    #[test]
    fn syntax_error_has_line() {
        let e = parse_spec("p = 2\ndim = \n").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
    }

    #[test]
    fn preset_spec() {
        let s = parse_spec("preset = \"xquot:2,3\"\nmult_bound = 1\n").unwrap();
        assert_eq!(s.data.seeds.len(), 3);
    }
}

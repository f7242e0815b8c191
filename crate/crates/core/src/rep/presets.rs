//! Built-in algebras with their seed indecomposables, looked up by name.

use crate::error::{Error, Result};
use crate::gf::Mat;
use crate::rep::algebra::Algebra;
use crate::rep::module::Module;
use crate::rep::universe::Universe;

/// An algebra together with a named list of seed modules.
#[derive(Clone, Debug)]
pub struct PresetData {
    pub name: String,
    pub algebra: Algebra,
    pub seeds: Vec<(String, Module)>,
}

impl PresetData {
    pub fn universe(&self, bound: usize, cap: u128) -> Result<Universe> {
        Universe::new(self.algebra.clone(), self.seeds.clone(), bound, cap)
    }
}

pub trait Preset: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, params: &[u32]) -> Result<PresetData>;
}

fn arity(name: &str, params: &[u32], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::Contract(format!(
            "preset {name} takes {n} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

/// Jordan block of size `n` with `e_k -> e_{k+1}`.
pub fn jordan_block(alg: &Algebra, n: usize) -> Mat {
    let mut j = Mat::zeros(alg.field(), n, n);
    for k in 0..n.saturating_sub(1) {
        j[(k + 1, k)] = 1;
    }
    j
}

/// GF(p)[x]/(x^n) with its indecomposables `M_i = k[x]/(x^i)`, `i = 1..n`.
pub fn truncated_poly(p: u32, n: usize) -> Result<PresetData> {
    let alg = Algebra::truncated_poly(p, n)?;
    let mut seeds = Vec::with_capacity(n);
    for i in 1..=n {
        let j = jordan_block(&alg, i);
        let action = (0..n).map(|k| j.pow(k)).collect();
        seeds.push((format!("M{i}"), Module::new(&alg, action)?));
    }
    Ok(PresetData {
        name: format!("xquot:{p},{n}"),
        algebra: alg,
        seeds,
    })
}

struct TruncatedPoly;

impl Preset for TruncatedPoly {
    fn name(&self) -> &'static str {
        "xquot"
    }
    fn describe(&self) -> &'static str {
        "xquot:p,n  GF(p)[x]/(x^n), seeds M1..Mn"
    }
    fn build(&self, params: &[u32]) -> Result<PresetData> {
        arity(self.name(), params, 2)?;
        truncated_poly(params[0], params[1] as usize)
    }
}

struct SquareZeroPlane;

impl Preset for SquareZeroPlane {
    fn name(&self) -> &'static str {
        "xy2"
    }
    fn describe(&self) -> &'static str {
        "xy2:p  GF(p)[x,y]/(x,y)^2, seeds k and R"
    }
    fn build(&self, params: &[u32]) -> Result<PresetData> {
        arity(self.name(), params, 1)?;
        let alg = Algebra::square_zero_plane(params[0])?;
        let f = alg.field();
        let k = Module::new(&alg, vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1), Mat::zeros(f, 1, 1)])?;
        Ok(PresetData {
            name: format!("xy2:{}", params[0]),
            seeds: vec![("k".into(), k), ("R".into(), Module::regular(&alg))],
            algebra: alg,
        })
    }
}

struct SplitPair;

impl Preset for SplitPair {
    fn name(&self) -> &'static str {
        "pair"
    }
    fn describe(&self) -> &'static str {
        "pair:p  GF(p) x GF(p), seeds E1 and E2"
    }
    fn build(&self, params: &[u32]) -> Result<PresetData> {
        arity(self.name(), params, 1)?;
        let alg = Algebra::split_pair(params[0])?;
        let f = alg.field();
        let (one, zero) = (Mat::identity(f, 1), Mat::zeros(f, 1, 1));
        let e1 = Module::new(&alg, vec![one.clone(), zero.clone()])?;
        let e2 = Module::new(&alg, vec![zero, one])?;
        Ok(PresetData {
            name: format!("pair:{}", params[0]),
            seeds: vec![("E1".into(), e1), ("E2".into(), e2)],
            algebra: alg,
        })
    }
}

pub struct PresetRegistry {
    entries: Vec<Box<dyn Preset>>,
}

impl Default for PresetRegistry {
    fn default() -> Self {
        let mut r = PresetRegistry { entries: Vec::new() };
        r.register(Box::new(TruncatedPoly));
        r.register(Box::new(SquareZeroPlane));
        r.register(Box::new(SplitPair));
        r
    }
}

impl PresetRegistry {
    pub fn register(&mut self, p: Box<dyn Preset>) {
        self.entries.retain(|e| e.name() != p.name());
        self.entries.push(p);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Preset> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn describe(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.describe()).collect()
    }

    /// Builds a preset from `name:param,param,...`.
    pub fn build(&self, spec: &str) -> Result<PresetData> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let preset = self.get(name).ok_or_else(|| Error::Unknown {
            kind: "preset",
            name: name.to_string(),
        })?;
        let params = rest
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Contract(format!("bad preset parameter '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        preset.build(&params)
    }
}

/// Shorthand for `PresetRegistry::default().build(spec)`.
pub fn preset(spec: &str) -> Result<PresetData> {
    PresetRegistry::default().build(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_poly_examples() {
        let p = truncated_poly(2, 2).unwrap();
        assert_eq!(p.algebra.dim(), 2);
        let dims: Vec<usize> = p.seeds.iter().map(|s| s.1.dim()).collect();
        assert_eq!(dims, vec![1, 2]);
        let p = truncated_poly(2, 4).unwrap();
        let dims: Vec<usize> = p.seeds.iter().map(|s| s.1.dim()).collect();
        assert_eq!(dims, vec![1, 2, 3, 4]);
        let p = truncated_poly(3, 1).unwrap();
        assert_eq!(p.algebra.dim(), 1);
        assert_eq!(p.seeds.len(), 1);
        assert!(p.universe(2, 1 << 16).is_ok());
    }

    #[test]
    fn registry_lookup() {
        let r = PresetRegistry::default();
        assert_eq!(r.names(), vec!["xquot", "xy2", "pair"]);
        assert!(r.build("xy2:2").is_ok());
        assert!(r.build("pair:3").unwrap().universe(1, 16).is_ok());
        assert!(matches!(r.build("nope:2"), Err(Error::Unknown { .. })));
        assert!(r.build("xquot:4,2").is_err());
        assert!(r.build("xquot:2").is_err());
    }

    #[test]
    fn xy2_seeds_are_valid() {
        let p = preset("xy2:2").unwrap();
        let u = p.universe(2, 1 << 16).unwrap();
        assert_eq!(u.len(), 9);
        assert!(u.algebra().monogenic_generator().is_none());
    }
}

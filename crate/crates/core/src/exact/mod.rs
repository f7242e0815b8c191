//! Kernel-cokernel pairs and exact structures on the bounded universe.
//!
//! An exact structure is a membership predicate on kernel-cokernel pairs plus
//! an enumerator of representatives with given end terms. Built-in kinds are
//! registered by name in [`StructureRegistry`].

pub mod axioms;
pub mod ext;
pub mod frobenius;
pub mod table;

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::rep::module::{cokernel, kernel};
use crate::rep::universe::{MultVec, ObjId, Universe};

pub use ext::ExtData;
pub use table::ConflationTable;

/// A kernel-cokernel pair `x ↣ y ↠ z` between canonical modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflation {
    pub x: MultVec,
    pub y: MultVec,
    pub z: MultVec,
    pub f: Mat,
    pub g: Mat,
}

/// `g ∘ f = 0`, `f` injective, `g` surjective and `im f = ker g`.
pub fn is_kernel_cokernel_pair(f: &Mat, g: &Mat) -> bool {
    if f.rows() != g.cols() {
        return false;
    }
    if !g.mul(f).is_zero() {
        return false;
    }
    let rf = f.rank();
    let rg = g.rank();
    rf == f.cols() && rg == g.rows() && rf + rg == f.rows()
}

/// Universe plus the extension data every structure enumerates from.
#[derive(Debug)]
pub struct Context {
    pub universe: Universe,
    pub ext: ExtData,
    /// extensions skipped because a middle term has a summand outside the seeds
    foreign: AtomicUsize,
}

impl Context {
    pub fn new(universe: Universe) -> Result<Context> {
        let ext = ExtData::new(&universe)?;
        Ok(Context {
            universe,
            ext,
            foreign: AtomicUsize::new(0),
        })
    }

    pub(crate) fn note_foreign(&self) {
        self.foreign.fetch_add(1, Ordering::Relaxed);
    }

    pub fn foreign_count(&self) -> usize {
        self.foreign.load(Ordering::Relaxed)
    }

    pub fn cap(&self) -> u128 {
        self.universe.cap()
    }

    /// Largest module dimension among universe objects.
    pub fn max_dim(&self) -> usize {
        let u = &self.universe;
        u.objects().iter().map(|m| u.dim_of(m)).max().unwrap_or(0)
    }
}

pub trait ExactStructure: Send + Sync {
    fn name(&self) -> String;

    /// Objects of the category the structure lives on.
    fn in_category(&self, _u: &Universe, _m: &[usize]) -> bool {
        true
    }

    /// Membership of a kernel-cokernel pair.
    fn admits(&self, ctx: &Context, c: &Conflation) -> Result<bool>;

    fn is_admissible_epi(&self, ctx: &Context, b: &[usize], c: &[usize], g: &Mat) -> Result<bool> {
        if g.rank() != g.rows() {
            return Ok(false);
        }
        let u = &ctx.universe;
        let (k, incl) = kernel(&u.module_of(b), g)?;
        let (km, t) = u.normalize(&k)?;
        let f = incl.mul(&t.inverse().expect("normalize returns an isomorphism"));
        self.admits(ctx, &Conflation {
            x: km,
            y: b.to_vec(),
            z: c.to_vec(),
            f,
            g: g.clone(),
        })
    }

    fn is_admissible_mono(&self, ctx: &Context, a: &[usize], b: &[usize], f: &Mat) -> Result<bool> {
        if f.rank() != f.cols() {
            return Ok(false);
        }
        let u = &ctx.universe;
        let (c, proj) = cokernel(&u.module_of(b), f)?;
        let (cm, t) = u.normalize(&c)?;
        self.admits(ctx, &Conflation {
            x: a.to_vec(),
            y: b.to_vec(),
            z: cm,
            f: f.clone(),
            g: t.mul(&proj),
        })
    }

    /// The member list of an extensionally given structure.
    fn listed(&self) -> Option<&[Conflation]> {
        None
    }

    /// Visits representatives of every conflation with ends `x`, `z`: at least
    /// one per equivalence class (same ends, isomorphic sequences).
    fn for_each_conflation(
        &self,
        ctx: &Context,
        x: &[usize],
        z: &[usize],
        visit: &mut dyn FnMut(Conflation) -> Result<bool>,
    ) -> Result<bool> {
        let u = &ctx.universe;
        if !self.in_category(u, x) || !self.in_category(u, z) {
            return Ok(true);
        }
        ctx.ext.for_each_extension(ctx, x, z, |c| {
            if self.admits(ctx, &c)? {
                visit(c)
            } else {
                Ok(true)
            }
        })
    }
}

/// Split sequences only.
pub struct Split;

impl ExactStructure for Split {
    fn name(&self) -> String {
        "split".into()
    }

    fn admits(&self, ctx: &Context, c: &Conflation) -> Result<bool> {
        if !is_kernel_cokernel_pair(&c.f, &c.g) {
            return Ok(false);
        }
        has_section(&ctx.universe, &c.y, &c.z, &c.g)
    }

    fn for_each_conflation(
        &self,
        ctx: &Context,
        x: &[usize],
        z: &[usize],
        visit: &mut dyn FnMut(Conflation) -> Result<bool>,
    ) -> Result<bool> {
        let u = &ctx.universe;
        let (ix, _, _, pz) = u.sum_maps(x, z);
        visit(Conflation {
            x: x.to_vec(),
            y: u.add(x, z),
            z: z.to_vec(),
            f: ix,
            g: pz,
        })
    }
}

/// True if `g: y -> z` has a right inverse among homomorphisms.
pub fn has_section(u: &Universe, y: &[usize], z: &[usize], g: &Mat) -> Result<bool> {
    let basis = u.hom_basis(z, y);
    let f = u.algebra().field();
    let dz = u.dim_of(z);
    // Σ c_k g s_k = id
    let cols: Vec<Vec<u32>> = basis.iter().map(|s| g.mul(s).to_vec()).collect();
    let a = Mat::from_cols(f, dz * dz, &cols);
    let id = Mat::identity(f, dz).to_vec();
    Ok(a.solve(&id)?.is_some())
}

/// Every kernel-cokernel pair of the module category.
pub struct Abelian;

impl ExactStructure for Abelian {
    fn name(&self) -> String {
        "abelian".into()
    }

    fn admits(&self, _ctx: &Context, c: &Conflation) -> Result<bool> {
        Ok(is_kernel_cokernel_pair(&c.f, &c.g))
    }

    fn is_admissible_epi(&self, _ctx: &Context, _b: &[usize], _c: &[usize], g: &Mat) -> Result<bool> {
        Ok(g.rank() == g.rows())
    }

    fn is_admissible_mono(&self, _ctx: &Context, _a: &[usize], _b: &[usize], f: &Mat) -> Result<bool> {
        Ok(f.rank() == f.cols())
    }
}

/// Restriction of an ambient structure to conflations with all three terms
/// in an extension-closed subcategory.
pub struct Induced {
    ambient: Box<dyn ExactStructure>,
    members: BTreeSet<MultVec>,
    label: String,
    /// set when `members` is exactly add(these seeds) within the bound; then
    /// membership extends past the bound by support
    additive_seeds: Option<Vec<bool>>,
}

impl Induced {
    pub fn members(&self) -> &BTreeSet<MultVec> {
        &self.members
    }

    pub fn is_additive(&self) -> bool {
        self.additive_seeds.is_some()
    }

    fn contains(&self, u: &Universe, m: &[usize]) -> Result<bool> {
        if u.in_bound(m) {
            return Ok(self.members.contains(m));
        }
        match &self.additive_seeds {
            Some(s) => Ok(m.iter().zip(s).all(|(&k, &ok)| k == 0 || ok)),
            None => Err(Error::OutOfUniverse(m.to_vec())),
        }
    }
}

impl ExactStructure for Induced {
    fn name(&self) -> String {
        format!("induced:{}", self.label)
    }

    fn in_category(&self, u: &Universe, m: &[usize]) -> bool {
        self.contains(u, m).unwrap_or(false)
    }

    fn admits(&self, ctx: &Context, c: &Conflation) -> Result<bool> {
        let u = &ctx.universe;
        for t in [&c.x, &c.y, &c.z] {
            if !self.contains(u, t)? {
                return Ok(false);
            }
        }
        self.ambient.admits(ctx, c)
    }

    fn for_each_conflation(
        &self,
        ctx: &Context,
        x: &[usize],
        z: &[usize],
        visit: &mut dyn FnMut(Conflation) -> Result<bool>,
    ) -> Result<bool> {
        let u = &ctx.universe;
        if !self.contains(u, x)? || !self.contains(u, z)? {
            return Ok(true);
        }
        self.ambient.for_each_conflation(ctx, x, z, &mut |c| {
            if self.contains(u, &c.y).unwrap_or(false) {
                visit(c)
            } else {
                Ok(true)
            }
        })
    }
}

/// Builds the induced structure on `members`, after checking that it contains
/// 0 and is extension-closed with respect to `ambient` (within the universe).
pub fn induced_structure(
    ctx: &Context,
    ambient: Box<dyn ExactStructure>,
    members: BTreeSet<MultVec>,
    label: &str,
) -> Result<Induced> {
    let u = &ctx.universe;
    if !members.contains(&u.zero_vec()) {
        return Err(Error::Precondition("subcategory does not contain 0".into()));
    }
    for x in &members {
        for z in &members {
            let mut witness = None;
            ambient.for_each_conflation(ctx, x, z, &mut |c| {
                if u.in_bound(&c.y) && !members.contains(&c.y) {
                    witness = Some(c.y.clone());
                    return Ok(false);
                }
                Ok(true)
            })?;
            if let Some(y) = witness {
                return Err(Error::NotExtensionClosed(format!(
                    "{} ↣ {} ↠ {} has middle term outside the subcategory",
                    u.name(x),
                    u.name(&y),
                    u.name(z)
                )));
            }
        }
    }
    let seeds: Vec<bool> = (0..u.num_seeds()).map(|j| members.contains(&u.unit_vec(j))).collect();
    let additive = u
        .objects()
        .iter()
        .all(|m| members.contains(m) == m.iter().zip(&seeds).all(|(&k, &ok)| k == 0 || ok));
    Ok(Induced {
        ambient,
        members,
        label: label.to_string(),
        additive_seeds: additive.then_some(seeds),
    })
}

/// A conflation as stored in an explicit structure file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawConflation {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub f: Vec<Vec<i64>>,
    pub g: Vec<Vec<i64>>,
}

/// An explicit list of sequences, closed under isomorphism of sequences.
pub struct Explicit {
    list: Vec<Conflation>,
}

impl Explicit {
    pub fn new(list: Vec<Conflation>) -> Explicit {
        Explicit { list }
    }

    pub fn from_raw(u: &Universe, raw: &[RawConflation]) -> Result<Explicit> {
        let f = u.algebra().field();
        let mut list = Vec::new();
        for (k, r) in raw.iter().enumerate() {
            let mat = |rows: &Vec<Vec<i64>>, nr: usize, nc: usize| -> Result<Mat> {
                if rows.is_empty() {
                    return Ok(Mat::zeros(f, nr, nc));
                }
                let m = Mat::from_rows(f, rows)?;
                if m.rows() != nr || m.cols() != nc {
                    return Err(Error::Spec {
                        location: format!("conflation[{k}]"),
                        message: format!("expected a {nr} x {nc} matrix"),
                    });
                }
                Ok(m)
            };
            let (dx, dy, dz) = (u.dim_of(&r.x), u.dim_of(&r.y), u.dim_of(&r.z));
            list.push(Conflation {
                x: r.x.clone(),
                y: r.y.clone(),
                z: r.z.clone(),
                f: mat(&r.f, dy, dx)?,
                g: mat(&r.g, dz, dy)?,
            });
        }
        Ok(Explicit { list })
    }

    pub fn list(&self) -> &[Conflation] {
        &self.list
    }

    /// Listed members that are not kernel-cokernel pairs of homomorphisms.
    pub fn non_kc_members(&self, u: &Universe) -> Vec<usize> {
        self.list
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                !is_kernel_cokernel_pair(&c.f, &c.g)
                    || u.hom_coords(&c.x, &c.y, &c.f).is_none()
                    || u.hom_coords(&c.y, &c.z, &c.g).is_none()
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Searches automorphisms `b` of the middle term for an isomorphism of
/// sequences `(a, b, c)` from `c1` to `c2` (ends must agree).
pub fn sequences_isomorphic(u: &Universe, c1: &Conflation, c2: &Conflation, cap: u128) -> Result<bool> {
    if c1.x != c2.x || c1.y != c2.y || c1.z != c2.z {
        return Ok(false);
    }
    let f = u.algebra().field();
    let basis = u.hom_basis(&c1.y, &c1.y);
    if crate::gf::space_size(f, basis.len()) > cap {
        return Err(Error::CapExceeded(format!("|End({})| exceeds cap", u.name(&c1.y))));
    }
    let mut found = false;
    crate::gf::for_each_vector(f, basis.len(), |co| {
        let mut b = Mat::zeros(f, basis.first().map_or(0, |m| m.rows()), basis.first().map_or(0, |m| m.cols()));
        for (x, m) in co.iter().zip(&basis) {
            b.axpy(*x, m);
        }
        if !b.is_invertible() {
            return true;
        }
        // a with c2.f a = b c1.f ; c with c c1.g = c2.g b
        let a = c2.f.solve_matrix(&b.mul(&c1.f));
        let c = c1.g.transpose().solve_matrix(&c2.g.mul(&b).transpose()).map(|m| m.transpose());
        match (a, c) {
            (Some(a), Some(c)) => {
                if a.is_invertible() && c.is_invertible() && c.mul(&c1.g) == c2.g.mul(&b) {
                    found = true;
                    return false;
                }
                true
            }
            _ => true,
        }
    });
    Ok(found)
}

impl ExactStructure for Explicit {
    fn name(&self) -> String {
        format!("explicit({})", self.list.len())
    }

    fn listed(&self) -> Option<&[Conflation]> {
        Some(&self.list)
    }

    fn admits(&self, ctx: &Context, c: &Conflation) -> Result<bool> {
        if !is_kernel_cokernel_pair(&c.f, &c.g) {
            return Ok(false);
        }
        for m in &self.list {
            if sequences_isomorphic(&ctx.universe, c, m, ctx.cap())? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn for_each_conflation(
        &self,
        _ctx: &Context,
        x: &[usize],
        z: &[usize],
        visit: &mut dyn FnMut(Conflation) -> Result<bool>,
    ) -> Result<bool> {
        for m in &self.list {
            if m.x == x && m.z == z && !visit(m.clone())? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Middle terms of conflations with fixed ends, deduplicated, each with a
/// witness.
#[derive(Clone, Debug)]
pub struct MiddleSet {
    pub middles: Vec<(ObjId, Conflation)>,
    /// middle terms outside the multiplicity bound
    pub escaped: Vec<MultVec>,
}

pub fn enumerate_conflations(ctx: &Context, s: &dyn ExactStructure, x: &[usize], z: &[usize]) -> Result<MiddleSet> {
    let u = &ctx.universe;
    let mut middles: Vec<(ObjId, Conflation)> = Vec::new();
    let mut escaped: Vec<MultVec> = Vec::new();
    s.for_each_conflation(ctx, x, z, &mut |c| {
        match u.id_of(&c.y) {
            Some(id) => {
                if !middles.iter().any(|(m, _)| *m == id) {
                    middles.push((id, c));
                }
            }
            None => {
                if !escaped.contains(&c.y) {
                    escaped.push(c.y.clone());
                }
            }
        }
        Ok(true)
    })?;
    middles.sort_by_key(|(id, _)| *id);
    escaped.sort();
    Ok(MiddleSet { middles, escaped })
}

/// Parses an object-set selector.
///
/// * `add:M1,M3` – all universe objects supported on the named seeds
/// * `objs:M1^2+M3;0` – an explicit list of objects
/// * `file:<path>` – JSON list of multiplicity vectors
pub fn parse_object_set(u: &Universe, sel: &str) -> Result<BTreeSet<MultVec>> {
    let unknown = |n: &str| Error::Unknown {
        kind: "seed",
        name: n.to_string(),
    };
    let seed_index = |n: &str| -> Result<usize> {
        u.seed_names().iter().position(|s| s == n).ok_or_else(|| unknown(n))
    };
    if let Some(rest) = sel.strip_prefix("add:") {
        let mut allowed = vec![false; u.num_seeds()];
        for n in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            allowed[seed_index(n)?] = true;
        }
        return Ok(u
            .objects()
            .iter()
            .filter(|m| m.iter().enumerate().all(|(i, &k)| k == 0 || allowed[i]))
            .cloned()
            .collect());
    }
    if let Some(rest) = sel.strip_prefix("objs:") {
        let mut out = BTreeSet::new();
        for obj in rest.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let mut v = u.zero_vec();
            if obj != "0" {
                for part in obj.split('+') {
                    let (n, k) = match part.split_once('^') {
                        Some((n, k)) => (n, k.parse::<usize>().map_err(|_| Error::Contract(format!("bad multiplicity in '{part}'")))?),
                        None => (part, 1),
                    };
                    v[seed_index(n.trim())?] += k;
                }
            }
            out.insert(v);
        }
        return Ok(out);
    }
    if let Some(path) = sel.strip_prefix("file:") {
        let text = std::fs::read_to_string(Path::new(path))?;
        let list: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(|e| Error::Spec {
            location: format!("{path}: line {}", e.line()),
            message: e.to_string(),
        })?;
        for v in &list {
            if v.len() != u.num_seeds() {
                return Err(Error::Spec {
                    location: path.to_string(),
                    message: format!("multiplicity vector of length {} (expected {})", v.len(), u.num_seeds()),
                });
            }
        }
        return Ok(list.into_iter().collect());
    }
    Err(Error::Unknown {
        kind: "object selector",
        name: sel.to_string(),
    })
}

type Factory = fn(&Context, &str) -> Result<Box<dyn ExactStructure>>;

/// Exact structure kinds, selectable by name (`split`, `abelian`,
/// `induced:<selector>`, `file:<path>`).
pub struct StructureRegistry {
    entries: Vec<(&'static str, &'static str, Factory)>,
}

fn make_split(_: &Context, _: &str) -> Result<Box<dyn ExactStructure>> {
    Ok(Box::new(Split))
}

fn make_abelian(_: &Context, _: &str) -> Result<Box<dyn ExactStructure>> {
    Ok(Box::new(Abelian))
}

fn make_induced(ctx: &Context, arg: &str) -> Result<Box<dyn ExactStructure>> {
    let members = parse_object_set(&ctx.universe, arg)?;
    Ok(Box::new(induced_structure(ctx, Box::new(Abelian), members, arg)?))
}

fn make_explicit(ctx: &Context, arg: &str) -> Result<Box<dyn ExactStructure>> {
    let text = std::fs::read_to_string(arg)?;
    let raw: Vec<RawConflation> = serde_json::from_str(&text).map_err(|e| Error::Spec {
        location: format!("{arg}: line {}", e.line()),
        message: e.to_string(),
    })?;
    Ok(Box::new(Explicit::from_raw(&ctx.universe, &raw)?))
}

impl Default for StructureRegistry {
    fn default() -> Self {
        StructureRegistry {
            entries: vec![
                ("split", "split sequences only", make_split as Factory),
                ("abelian", "all kernel-cokernel pairs", make_abelian),
                ("induced", "induced:<selector>, abelian restricted to a subcategory", make_induced),
                ("file", "file:<path>, explicit JSON list of conflations", make_explicit),
            ],
        }
    }
}

impl StructureRegistry {
    pub fn register(&mut self, name: &'static str, help: &'static str, f: Factory) {
        self.entries.retain(|e| e.0 != name);
        self.entries.push((name, help, f));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn help(&self) -> Vec<(&'static str, &'static str)> {
        self.entries.iter().map(|e| (e.0, e.1)).collect()
    }

    pub fn build(&self, ctx: &Context, spec: &str) -> Result<Box<dyn ExactStructure>> {
        let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
        let (_, _, f) = self.entries.iter().find(|e| e.0 == name).ok_or_else(|| Error::Unknown {
            kind: "exact structure",
            name: name.to_string(),
        })?;
        f(ctx, arg)
    }
}

/// Rank of the map `Hom(y, t) -> Hom(x, t)`, `h -> h f`, against dim Hom(x, t).
pub fn restriction_surjective(u: &Universe, x: &[usize], y: &[usize], t: &[usize], f: &Mat) -> bool {
    let target = u.hom_dim(x, t);
    if target == 0 {
        return true;
    }
    let fld = u.algebra().field();
    let vecs: Vec<Vec<u32>> = u
        .hom_basis(y, t)
        .iter()
        .map(|h| u.hom_coords(x, t, &h.mul(f)).expect("composite of homs"))
        .collect();
    Subspace::span(fld, target, &vecs).dim() == target
}

/// Rank of the map `Hom(t, y) -> Hom(t, z)`, `h -> g h`, against dim Hom(t, z).
pub fn corestriction_surjective(u: &Universe, y: &[usize], z: &[usize], t: &[usize], g: &Mat) -> bool {
    let target = u.hom_dim(t, z);
    if target == 0 {
        return true;
    }
    let fld = u.algebra().field();
    let vecs: Vec<Vec<u32>> = u
        .hom_basis(t, y)
        .iter()
        .map(|h| u.hom_coords(t, z, &g.mul(h)).expect("composite of homs"))
        .collect();
    Subspace::span(fld, target, &vecs).dim() == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    fn ctx(name: &str, bound: usize) -> Context {
        Context::new(preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn kc_pair_examples() {
        let c = ctx("xquot:2,2", 2);
        let u = &c.universe;
        let f = u.algebra().field();
        let (s, p) = (vec![1, 0], vec![0, 1]);
        let i = u.hom_basis(&s, &p)[0].clone();
        let q = u.hom_basis(&p, &s)[0].clone();
        assert!(is_kernel_cokernel_pair(&i, &q));
        // (id_M, 0: M -> 0)
        assert!(is_kernel_cokernel_pair(&Mat::identity(f, 2), &Mat::zeros(f, 0, 2)));
        // (0: 0 -> M, 0: M -> M)
        assert!(!is_kernel_cokernel_pair(&Mat::zeros(f, 2, 0), &Mat::zeros(f, 2, 2)));
    }

    #[test]
    fn middle_sets() {
        let c = ctx("xquot:2,2", 2);
        let s = vec![1, 0];
        let m = enumerate_conflations(&c, &Abelian, &s, &s).unwrap();
        let names: Vec<String> = m.middles.iter().map(|(id, _)| c.universe.name_of(*id)).collect();
        assert_eq!(names, vec!["M2", "M1^2"]);
        let m = enumerate_conflations(&c, &Split, &s, &s).unwrap();
        assert_eq!(m.middles.len(), 1);
        assert_eq!(c.universe.object(m.middles[0].0), &vec![2, 0]);
        let m = enumerate_conflations(&c, &Abelian, &[0, 0], &s).unwrap();
        assert_eq!(m.middles.len(), 1);
        assert_eq!(c.universe.object(m.middles[0].0), &s);
    }

    #[test]
    fn induced_examples() {
        let c = ctx("xquot:2,2", 2);
        let u = &c.universe;
        let all: BTreeSet<MultVec> = u.objects().iter().cloned().collect();
        let whole = induced_structure(&c, Box::new(Abelian), all, "all").unwrap();
        let s = vec![1, 0];
        assert_eq!(
            enumerate_conflations(&c, &whole, &s, &s).unwrap().middles.len(),
            enumerate_conflations(&c, &Abelian, &s, &s).unwrap().middles.len()
        );
        let simples = parse_object_set(u, "objs:0;M1;M1^2").unwrap();
        let e = induced_structure(&c, Box::new(Abelian), simples, "S");
        match e {
            Err(Error::NotExtensionClosed(w)) => assert!(w.contains("M2"), "{w}"),
            other => panic!("expected extension-closure failure, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn induced_on_projectives_is_split() {
        let c = ctx("xquot:2,3", 2);
        let members = parse_object_set(&c.universe, "add:M3").unwrap();
        let d = induced_structure(&c, Box::new(Abelian), members.clone(), "add:M3").unwrap();
        for x in &members {
            for z in &members {
                d.for_each_conflation(&c, x, z, &mut |cf| {
                    assert!(has_section(&c.universe, &cf.y, &cf.z, &cf.g).unwrap());
                    Ok(true)
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn explicit_structure_membership() {
        let c = ctx("xquot:2,2", 1);
        let u = &c.universe;
        let (s, p) = (vec![1, 0], vec![0, 1]);
        let i = u.hom_basis(&s, &p)[0].clone();
        let q = u.hom_basis(&p, &s)[0].clone();
        let conf = Conflation {
            x: s.clone(),
            y: p.clone(),
            z: s.clone(),
            f: i,
            g: q,
        };
        let e = Explicit::new(vec![conf.clone()]);
        assert!(e.admits(&c, &conf).unwrap());
        assert!(e.non_kc_members(u).is_empty());
        let bad = Explicit::new(vec![Conflation {
            f: Mat::zeros(u.algebra().field(), 2, 1),
            ..conf
        }]);
        assert_eq!(bad.non_kc_members(u), vec![0]);
    }

    #[test]
    fn object_selectors() {
        let c = ctx("xquot:2,3", 1);
        let u = &c.universe;
        assert_eq!(parse_object_set(u, "add:M3").unwrap().len(), 2);
        let o = parse_object_set(u, "objs:0;M1+M3").unwrap();
        assert!(o.contains(&vec![1, 0, 1]));
        assert!(parse_object_set(u, "add:Q").is_err());
        assert!(parse_object_set(u, "weird").is_err());
    }

    #[test]
    fn registry_builds_by_name() {
        let c = ctx("xquot:2,2", 1);
        let r = StructureRegistry::default();
        assert_eq!(r.build(&c, "split").unwrap().name(), "split");
        assert_eq!(r.build(&c, "abelian").unwrap().name(), "abelian");
        assert!(r.build(&c, "induced:add:M2").is_ok());
        assert!(r.build(&c, "nope").is_err());
    }
}

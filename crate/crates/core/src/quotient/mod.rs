//! The quotient category E/N: the ideal of morphisms factoring through N,
//! stable hom-spaces and stable isomorphisms.
//!
//! N is given by a sum-closed set of universe objects. Its ideal is generated
//! by the seeds occurring as summands of N-objects, so it is computed once per
//! pair of seeds and assembled blockwise.

pub mod admissible;
pub mod sn;
pub mod triangles;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Context, ExactStructure};
use crate::gf::{for_each_vector, space_size, Mat, Subspace};
use crate::rep::universe::MultVec;

/// A morphism of E/N, held by a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableMorphism {
    pub src: MultVec,
    pub dst: MultVec,
    pub rep: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroLemma {
    pub object: String,
    pub is_zero: bool,
    pub summand_of_n: bool,
    /// stably zero implies summand of an N-object
    pub lemma_holds: bool,
    pub converse_holds: bool,
}

pub struct QuotientContext<'a> {
    pub ctx: &'a Context,
    pub structure: &'a dyn ExactStructure,
    members: BTreeSet<MultVec>,
    label: String,
    /// seeds that are summands of N-objects
    gens: Vec<bool>,
    /// N contains every universe object supported on `gens`
    add_closed: bool,
    /// ideal inside Hom(S_i, S_j), in hom-block coordinates
    blocks: Vec<Vec<Subspace>>,
    spaces: RefCell<HashMap<(MultVec, MultVec), Rc<Subspace>>>,
}

impl<'a> QuotientContext<'a> {
    pub fn new(
        ctx: &'a Context,
        structure: &'a dyn ExactStructure,
        members: BTreeSet<MultVec>,
        label: &str,
    ) -> Result<QuotientContext<'a>> {
        let u = &ctx.universe;
        if !members.contains(&u.zero_vec()) {
            return Err(Error::Precondition(format!("N = {label} does not contain 0")));
        }
        for m in &members {
            if !u.in_bound(m) {
                return Err(Error::OutOfUniverse(m.clone()));
            }
            if !structure.in_category(u, m) {
                return Err(Error::Precondition(format!("{} is not in the category", u.name(m))));
            }
        }
        for a in &members {
            for b in &members {
                let s = u.add(a, b);
                if u.in_bound(&s) && !members.contains(&s) {
                    return Err(Error::Precondition(format!(
                        "N = {label} is not closed under sums: {} + {} = {} is missing",
                        u.name(a),
                        u.name(b),
                        u.name(&s)
                    )));
                }
            }
        }
        let r = u.num_seeds();
        let mut gens = vec![false; r];
        for m in &members {
            for (i, &k) in m.iter().enumerate() {
                if k > 0 {
                    gens[i] = true;
                }
            }
        }
        let add_closed = u
            .objects()
            .iter()
            .filter(|m| m.iter().enumerate().all(|(i, &k)| k == 0 || gens[i]))
            .all(|m| members.contains(m));
        let f = u.algebra().field();
        let mut blocks = Vec::with_capacity(r);
        for i in 0..r {
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let target = u.seed_hom(i, j);
                let mut vecs = Vec::new();
                for g in (0..r).filter(|&g| gens[g]) {
                    for a in &u.seed_hom(i, g).basis {
                        for b in &u.seed_hom(g, j).basis {
                            vecs.push(target.coordinates(&b.mul(a)).expect("composite of homs"));
                        }
                    }
                }
                row.push(Subspace::span(f, target.dim(), &vecs));
            }
            blocks.push(row);
        }
        Ok(QuotientContext {
            ctx,
            structure,
            members,
            label: label.to_string(),
            gens,
            add_closed,
            blocks,
            spaces: RefCell::new(HashMap::new()),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn members(&self) -> &BTreeSet<MultVec> {
        &self.members
    }

    pub fn generators(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.gens[i]).collect()
    }

    pub fn is_add_closed(&self) -> bool {
        self.add_closed
    }

    /// Membership in N; beyond the bound, objects supported on the generating
    /// seeds count as members when N is all of add(generators).
    pub fn in_n(&self, m: &[usize]) -> bool {
        if self.ctx.universe.in_bound(m) {
            self.members.contains(m)
        } else {
            self.add_closed && m.iter().enumerate().all(|(i, &k)| k == 0 || self.gens[i])
        }
    }

    /// I(a, b) inside the hom coordinates of (a, b).
    pub fn ideal_space(&self, a: &[usize], b: &[usize]) -> Rc<Subspace> {
        let key = (a.to_vec(), b.to_vec());
        if let Some(s) = self.spaces.borrow().get(&key) {
            return s.clone();
        }
        let u = &self.ctx.universe;
        let (cells, n) = u.hom_cells(a, b);
        let mut vecs = Vec::new();
        for cell in cells {
            for v in self.blocks[cell.src_seed][cell.dst_seed].basis() {
                let mut w = vec![0u32; n];
                w[cell.coord_offset..cell.coord_offset + v.len()].copy_from_slice(v);
                vecs.push(w);
            }
        }
        let s = Rc::new(Subspace::span(u.algebra().field(), n, &vecs));
        self.spaces.borrow_mut().insert(key, s.clone());
        s
    }

    /// Canonical basis of I(a, b).
    pub fn ideal_basis(&self, a: &[usize], b: &[usize]) -> Vec<Mat> {
        let u = &self.ctx.universe;
        self.ideal_space(a, b).basis().iter().map(|c| u.hom_from_coords(a, b, c)).collect()
    }

    pub fn in_ideal(&self, a: &[usize], b: &[usize], m: &Mat) -> bool {
        match self.ctx.universe.hom_coords(a, b, m) {
            Some(c) => self.ideal_space(a, b).contains(&c),
            None => false,
        }
    }

    pub fn stable_dim(&self, a: &[usize], b: &[usize]) -> usize {
        self.ctx.universe.hom_dim(a, b) - self.ideal_space(a, b).dim()
    }

    /// Coordinates of the class of `m` in stable Hom(a, b).
    pub fn stable_coords(&self, a: &[usize], b: &[usize], m: &Mat) -> Vec<u32> {
        let c = self.ctx.universe.hom_coords(a, b, m).expect("stable_coords of a non-homomorphism");
        let s = self.ideal_space(a, b);
        let r = s.reduce(&c);
        s.free_columns().into_iter().map(|i| r[i]).collect()
    }

    /// Representatives of a basis of stable Hom(a, b).
    pub fn stable_basis(&self, a: &[usize], b: &[usize]) -> Vec<Mat> {
        let u = &self.ctx.universe;
        self.ideal_space(a, b)
            .complement_reps()
            .iter()
            .map(|c| u.hom_from_coords(a, b, c))
            .collect()
    }

    pub fn stable_from_coords(&self, a: &[usize], b: &[usize], c: &[u32]) -> Mat {
        let u = &self.ctx.universe;
        let s = self.ideal_space(a, b);
        let mut full = vec![0u32; s.ambient()];
        for (k, i) in s.free_columns().into_iter().enumerate() {
            full[i] = c[k];
        }
        u.hom_from_coords(a, b, &full)
    }

    pub fn stable_eq(&self, a: &[usize], b: &[usize], m1: &Mat, m2: &Mat) -> bool {
        self.in_ideal(a, b, &m1.sub(m2))
    }

    pub fn is_stably_zero_map(&self, a: &[usize], b: &[usize], m: &Mat) -> bool {
        self.in_ideal(a, b, m)
    }

    /// Visits a representative of every element of stable Hom(a, b).
    pub fn for_each_stable(&self, a: &[usize], b: &[usize], mut visit: impl FnMut(Mat) -> Result<bool>) -> Result<bool> {
        let u = &self.ctx.universe;
        let f = u.algebra().field();
        let d = self.stable_dim(a, b);
        if space_size(f, d) > u.cap() {
            return Err(Error::CapExceeded(format!(
                "stable Hom({}, {}) has {}^{d} elements",
                u.name(a),
                u.name(b),
                f.p()
            )));
        }
        let mut out = Ok(true);
        for_each_vector(f, d, |c| match visit(self.stable_from_coords(a, b, c)) {
            Ok(true) => true,
            Ok(false) => {
                out = Ok(false);
                false
            }
            Err(e) => {
                out = Err(e);
                false
            }
        });
        out
    }

    /// Solves `lin(φ) = target` for `φ` in Hom(a, b) modulo the ideal, where
    /// `lin` is linear and maps the ideal into the zero vector. Returns a
    /// particular solution and representatives of a kernel basis.
    pub fn solve_stable(
        &self,
        a: &[usize],
        b: &[usize],
        lin: impl Fn(&Mat) -> Vec<u32>,
        target: &[u32],
    ) -> Result<Option<(Mat, Vec<Mat>)>> {
        let f = self.ctx.universe.algebra().field();
        let basis = self.stable_basis(a, b);
        let u = &self.ctx.universe;
        let combine = |c: &[u32]| {
            let mut m = Mat::zeros(f, u.dim_of(b), u.dim_of(a));
            for (x, bm) in c.iter().zip(&basis) {
                if *x != 0 {
                    m.axpy(*x, bm);
                }
            }
            m
        };
        if basis.is_empty() {
            return Ok(if target.iter().all(|&x| x == 0) {
                Some((combine(&[]), Vec::new()))
            } else {
                None
            });
        }
        let cols: Vec<Vec<u32>> = basis.iter().map(&lin).collect();
        let m = Mat::from_cols(f, target.len(), &cols);
        Ok(m.solve(target)?.map(|(x0, null)| (combine(&x0), null.iter().map(|v| combine(v)).collect())))
    }

    /// `f: a -> b` is invertible in E/N: the equations `g f ≡ 1`, `f g ≡ 1`
    /// are linear in `g`.
    pub fn stable_is_iso(&self, a: &[usize], b: &[usize], f: &Mat) -> Result<bool> {
        let u = &self.ctx.universe;
        let fld = u.algebra().field();
        let (da, db) = (u.dim_of(a), u.dim_of(b));
        let mut target = self.stable_coords(a, a, &Mat::identity(fld, da));
        target.extend(self.stable_coords(b, b, &Mat::identity(fld, db)));
        let lin = |g: &Mat| {
            let mut v = self.stable_coords(a, a, &g.mul(f));
            v.extend(self.stable_coords(b, b, &f.mul(g)));
            v
        };
        Ok(self.solve_stable(b, a, lin, &target)?.is_some())
    }

    /// Searches `particular + span(kernel)` for a stable isomorphism.
    pub fn find_iso(&self, a: &[usize], b: &[usize], particular: &Mat, kernel: &[Mat]) -> Result<Option<Mat>> {
        let u = &self.ctx.universe;
        let f = u.algebra().field();
        if space_size(f, kernel.len()) > u.cap() {
            return Err(Error::CapExceeded(format!(
                "affine family of {}^{} maps {} -> {}",
                f.p(),
                kernel.len(),
                u.name(a),
                u.name(b)
            )));
        }
        let mut found = None;
        let mut err = None;
        for_each_vector(f, kernel.len(), |c| {
            let mut m = particular.clone();
            for (x, k) in c.iter().zip(kernel) {
                if *x != 0 {
                    m.axpy(*x, k);
                }
            }
            match self.stable_is_iso(a, b, &m) {
                Ok(true) => {
                    found = Some(m);
                    false
                }
                Ok(false) => true,
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }

    /// Representatives of all stable automorphisms of `a`.
    pub fn stable_automorphisms(&self, a: &[usize]) -> Result<Vec<Mat>> {
        let mut out = Vec::new();
        self.for_each_stable(a, a, |m| {
            if self.stable_is_iso(a, a, &m)? {
                out.push(m);
            }
            Ok(true)
        })?;
        Ok(out)
    }

    /// `id_m` lies in the ideal.
    pub fn is_stably_zero(&self, m: &[usize]) -> bool {
        let f = self.ctx.universe.algebra().field();
        self.in_ideal(m, m, &Mat::identity(f, self.ctx.universe.dim_of(m)))
    }

    /// The object with all generating-seed summands removed; stably
    /// isomorphic to `m`.
    pub fn reduce(&self, m: &[usize]) -> MultVec {
        m.iter().enumerate().map(|(i, &k)| if self.gens[i] { 0 } else { k }).collect()
    }

    /// `(r, ι: r -> m, π: m -> r)` with `π ι = 1` and `ι π ≡ 1` modulo the ideal.
    pub fn reduction(&self, m: &[usize]) -> (MultVec, Mat, Mat) {
        let u = &self.ctx.universe;
        let f = u.algebra().field();
        let r = self.reduce(m);
        let (dm, dr) = (u.dim_of(m), u.dim_of(&r));
        let mut iota = Mat::zeros(f, dm, dr);
        let mut ro = 0;
        for (seed, off) in u.blocks(m) {
            if !self.gens[seed] {
                let d = u.seeds()[seed].dim();
                iota.set_block(off, ro, &Mat::identity(f, d));
                ro += d;
            }
        }
        let pi = iota.transpose();
        (r, iota, pi)
    }

    pub fn stable_zero_lemma(&self, m: &[usize]) -> ZeroLemma {
        let u = &self.ctx.universe;
        let is_zero = self.is_stably_zero(m);
        let summand = self.members.iter().any(|n| u.is_summand(m, n))
            || (self.add_closed && m.iter().enumerate().all(|(i, &k)| k == 0 || self.gens[i]));
        ZeroLemma {
            object: u.name(m),
            is_zero,
            summand_of_n: summand,
            lemma_holds: !is_zero || summand,
            converse_holds: !summand || is_zero,
        }
    }

    /// N is closed under direct summands within the universe.
    pub fn is_summand_closed(&self) -> bool {
        let u = &self.ctx.universe;
        self.members.iter().all(|m| {
            u.objects().iter().filter(|a| u.is_summand(a, m)).all(|a| self.members.contains(a))
        })
    }

    /// Reduced objects of the category: one per stable iso-class within the
    /// universe.
    pub fn stable_classes(&self) -> Vec<MultVec> {
        let u = &self.ctx.universe;
        let mut seen = BTreeSet::new();
        for m in u.objects() {
            if self.structure.in_category(u, m) {
                let r = self.reduce(m);
                if u.in_bound(&r) && self.structure.in_category(u, &r) {
                    seen.insert(r);
                }
            }
        }
        let mut out: Vec<MultVec> = seen.into_iter().collect();
        out.sort_by_key(|m| u.id_of(m));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_object_set, Abelian};
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    fn ctx(name: &str, bound: usize) -> Context {
        Context::new(preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn ideal_examples() {
        let c = ctx("xquot:2,2", 2);
        let u = &c.universe;
        let (s, p) = (vec![1, 0], vec![0, 1]);
        let n = parse_object_set(u, "add:M2").unwrap();
        let q = QuotientContext::new(&c, &Abelian, n, "add:M2").unwrap();
        assert_eq!(q.ideal_basis(&s, &s).len(), 0);
        assert_eq!(q.stable_dim(&s, &s), 1);
        for x in u.objects() {
            assert_eq!(q.stable_dim(&p, x), 0);
        }
        let id = Mat::identity(u.algebra().field(), 1);
        assert!(q.stable_is_iso(&s, &s, &id).unwrap());
        assert!(!q.stable_is_iso(&s, &p, &u.hom_basis(&s, &p)[0]).unwrap());
        assert!(q.is_stably_zero(&p) && !q.is_stably_zero(&s));

        let zero = QuotientContext::new(&c, &Abelian, parse_object_set(u, "objs:0").unwrap(), "0").unwrap();
        let whole = QuotientContext::new(&c, &Abelian, u.objects().iter().cloned().collect(), "all").unwrap();
        for a in u.objects() {
            for b in u.objects() {
                assert_eq!(zero.stable_dim(a, b), u.hom_dim(a, b));
                assert_eq!(whole.stable_dim(a, b), 0);
            }
        }
    }

    #[test]
    fn rejects_non_sum_closed() {
        let c = ctx("xquot:2,2", 2);
        let n = parse_object_set(&c.universe, "objs:0;M1").unwrap();
        assert!(matches!(QuotientContext::new(&c, &Abelian, n, "x"), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduction_is_stable_iso() {
        let c = ctx("xquot:2,3", 2);
        let u = &c.universe;
        let q = QuotientContext::new(&c, &Abelian, parse_object_set(u, "add:M3").unwrap(), "add:M3").unwrap();
        for m in u.objects() {
            let (r, iota, pi) = q.reduction(m);
            assert_eq!(pi.mul(&iota), Mat::identity(u.algebra().field(), u.dim_of(&r)));
            assert!(q.stable_is_iso(m, &r, &pi).unwrap());
            assert!(q.stable_is_iso(&r, m, &iota).unwrap());
        }
        assert_eq!(q.stable_classes().len(), 9);
    }
}

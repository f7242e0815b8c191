//! The bounded object universe: every direct sum of seed indecomposables with
//! multiplicities up to a bound, in canonical block form.
//!
//! All morphisms between canonical objects are assembled blockwise from the
//! seed-to-seed hom bases, and arbitrary modules (kernels, pushouts, middle
//! terms) are brought into canonical form by [`Universe::normalize`], which
//! also returns the isomorphism it used.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{Mat, Subspace};
use crate::rep::algebra::Algebra;
use crate::rep::decompose::{are_isomorphic, is_indecomposable};
use crate::rep::module::{hom_space, Module};

pub type MultVec = Vec<usize>;
pub type ObjId = usize;

pub const DEFAULT_CAP: u128 = 1 << 16;

/// Canonical basis of Hom(S_i, S_j), both as matrices and as a subspace of
/// vectorized matrices (so coordinates can be read off).
#[derive(Clone, Debug)]
pub struct HomBlock {
    pub basis: Vec<Mat>,
    space: Subspace,
}

impl HomBlock {
    fn new(basis: Vec<Mat>, rows: usize, cols: usize) -> HomBlock {
        let f = basis.first().map(|m| m.field());
        let vecs: Vec<Vec<u32>> = basis.iter().map(|m| m.to_vec()).collect();
        let space = match f {
            Some(f) => Subspace::span(f, rows * cols, &vecs),
            None => Subspace::zero(crate::gf::PrimeField::new(2).unwrap(), rows * cols),
        };
        HomBlock { basis, space }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, m: &Mat) -> Option<Vec<u32>> {
        if self.basis.is_empty() {
            return if m.is_zero() { Some(Vec::new()) } else { None };
        }
        self.space.coordinates(&m.to_vec())
    }
}

#[derive(Clone, Debug)]
struct JordanData {
    generator: usize,
    /// block size -> seed index
    by_size: HashMap<usize, usize>,
    /// per seed: iso from the standard Jordan block to the seed
    chain: Vec<Mat>,
}

/// One block of a hom-space coordinate layout.
#[derive(Clone, Copy, Debug)]
pub struct HomCell {
    pub src_seed: usize,
    pub dst_seed: usize,
    pub src_offset: usize,
    pub dst_offset: usize,
    pub coord_offset: usize,
}

#[derive(Clone, Debug)]
pub struct Universe {
    algebra: Algebra,
    names: Vec<String>,
    seeds: Vec<Module>,
    bound: usize,
    cap: u128,
    objects: Vec<MultVec>,
    index: HashMap<MultVec, ObjId>,
    homs: Vec<Vec<HomBlock>>,
    jordan: Option<JordanData>,
}

/// Jordan chains of a nilpotent matrix.
///
/// Returns the chain lengths (longest first, canonical within a length) and a
/// matrix whose columns are `v, Nv, ..., N^{l-1}v` for each chain top `v`.
pub fn jordan_chains(n: &Mat) -> Result<(Vec<usize>, Mat)> {
    let f = n.field();
    let d = n.rows();
    let mut kernels = vec![Subspace::zero(f, d)];
    let mut power = Mat::identity(f, d);
    while kernels.last().unwrap().dim() < d {
        power = power.mul(n);
        let k = Subspace::span(f, d, &power.nullspace());
        if k.dim() == kernels.last().unwrap().dim() {
            return Err(Error::Contract("matrix is not nilpotent".into()));
        }
        kernels.push(k);
    }
    let height = kernels.len() - 1;
    let mut tops: Vec<(Vec<u32>, usize)> = Vec::new();
    for j in (1..=height).rev() {
        let mut w = kernels[j - 1].clone();
        let lifted: Vec<Vec<u32>> = tops
            .iter()
            .map(|(v, l)| {
                let mut x = v.clone();
                for _ in 0..(l - j) {
                    x = n.mul_vec(&x);
                }
                x
            })
            .collect();
        w = w.sum(&Subspace::span(f, d, &lifted));
        for c in kernels[j].basis().to_vec() {
            if !w.contains(&c) {
                w = w.sum(&Subspace::span(f, d, &[c.clone()]));
                tops.push((c, j));
            }
        }
    }
    let mut cols = Vec::with_capacity(d);
    let mut sizes = Vec::with_capacity(tops.len());
    for (v, l) in &tops {
        let mut x = v.clone();
        for _ in 0..*l {
            cols.push(x.clone());
            x = n.mul_vec(&x);
        }
        sizes.push(*l);
    }
    Ok((sizes, Mat::from_cols(f, d, &cols)))
}

impl Universe {
    /// Validates the seeds (indecomposable, pairwise non-isomorphic) and lists
    /// every object with multiplicities `0..=bound`.
    pub fn new(algebra: Algebra, seeds: Vec<(String, Module)>, bound: usize, cap: u128) -> Result<Universe> {
        for (i, (_, s)) in seeds.iter().enumerate() {
            if s.dim() == 0 || !is_indecomposable(&algebra, s, cap)? {
                return Err(Error::DecomposableSeed(i));
            }
        }
        for i in 0..seeds.len() {
            for j in i + 1..seeds.len() {
                if are_isomorphic(&algebra, &seeds[i].1, &seeds[j].1, cap)?.is_some() {
                    return Err(Error::DuplicateSeed(i, j));
                }
            }
        }
        let (names, seeds): (Vec<String>, Vec<Module>) = seeds.into_iter().unzip();
        let homs = seeds
            .iter()
            .map(|a| {
                seeds
                    .iter()
                    .map(|b| HomBlock::new(hom_space(&algebra, a, b), b.dim(), a.dim()))
                    .collect()
            })
            .collect();
        let jordan = match algebra.monogenic_generator() {
            Some(g) => {
                let mut by_size = HashMap::new();
                let mut chain = Vec::new();
                for (i, s) in seeds.iter().enumerate() {
                    let (sizes, b) = jordan_chains(s.action(g))?;
                    if sizes.len() != 1 {
                        return Err(Error::DecomposableSeed(i));
                    }
                    by_size.insert(sizes[0], i);
                    chain.push(b);
                }
                Some(JordanData {
                    generator: g,
                    by_size,
                    chain,
                })
            }
            None => None,
        };
        let r = seeds.len();
        // lexicographic order, first seed most significant
        let total = (bound + 1).pow(r as u32);
        let objects: Vec<MultVec> = (0..total)
            .map(|mut k| {
                let mut v = vec![0usize; r];
                for x in v.iter_mut().rev() {
                    *x = k % (bound + 1);
                    k /= bound + 1;
                }
                v
            })
            .collect();
        let index = objects.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(Universe {
            algebra,
            names,
            seeds,
            bound,
            cap,
            objects,
            index,
            homs,
            jordan,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
    pub fn bound(&self) -> usize {
        self.bound
    }
    pub fn cap(&self) -> u128 {
        self.cap
    }
    pub fn seeds(&self) -> &[Module] {
        &self.seeds
    }
    pub fn seed_names(&self) -> &[String] {
        &self.names
    }
    pub fn num_seeds(&self) -> usize {
        self.seeds.len()
    }
    pub fn objects(&self) -> &[MultVec] {
        &self.objects
    }
    pub fn len(&self) -> usize {
        self.objects.len()
    }
    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }
    pub fn object(&self, id: ObjId) -> &MultVec {
        &self.objects[id]
    }
    pub fn id_of(&self, m: &[usize]) -> Option<ObjId> {
        self.index.get(m).copied()
    }
    pub fn zero_id(&self) -> ObjId {
        0
    }
    pub fn zero_vec(&self) -> MultVec {
        vec![0; self.seeds.len()]
    }
    pub fn unit_vec(&self, i: usize) -> MultVec {
        let mut v = self.zero_vec();
        v[i] = 1;
        v
    }
    pub fn seed_hom(&self, i: usize, j: usize) -> &HomBlock {
        &self.homs[i][j]
    }

    /// Ids of the indecomposable objects (one copy of a single seed).
    pub fn indecomposable_ids(&self) -> Vec<ObjId> {
        (0..self.num_seeds())
            .filter_map(|i| self.id_of(&self.unit_vec(i)))
            .collect()
    }

    pub fn in_bound(&self, m: &[usize]) -> bool {
        m.iter().all(|&x| x <= self.bound)
    }

    pub fn name(&self, m: &[usize]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], k)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn name_of(&self, id: ObjId) -> String {
        self.name(&self.objects[id])
    }

    /// `(seed, offset)` for each block of the canonical module of `m`.
    pub fn blocks(&self, m: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for (i, &k) in m.iter().enumerate() {
            for _ in 0..k {
                out.push((i, off));
                off += self.seeds[i].dim();
            }
        }
        out
    }

    pub fn dim_of(&self, m: &[usize]) -> usize {
        m.iter().zip(&self.seeds).map(|(&k, s)| k * s.dim()).sum()
    }

    pub fn module_of(&self, m: &[usize]) -> Module {
        let f = self.algebra.field();
        let d = self.dim_of(m);
        let mut action = vec![Mat::zeros(f, d, d); self.algebra.dim()];
        for (seed, off) in self.blocks(m) {
            for (a, s) in action.iter_mut().zip(self.seeds[seed].actions()) {
                a.set_block(off, off, s);
            }
        }
        Module::from_action_unchecked(f, d, action)
    }

    pub fn add(&self, a: &[usize], b: &[usize]) -> MultVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// True if `a` is a direct summand of `b`.
    pub fn is_summand(&self, a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    /// Coordinate layout of Hom(a, b): one cell per (source block, target block).
    pub fn hom_cells(&self, a: &[usize], b: &[usize]) -> (Vec<HomCell>, usize) {
        let mut cells = Vec::new();
        let mut off = 0;
        for (si, so) in self.blocks(a) {
            for (dj, dof) in self.blocks(b) {
                let h = self.homs[si][dj].dim();
                if h > 0 {
                    cells.push(HomCell {
                        src_seed: si,
                        dst_seed: dj,
                        src_offset: so,
                        dst_offset: dof,
                        coord_offset: off,
                    });
                    off += h;
                }
            }
        }
        (cells, off)
    }

    pub fn hom_dim(&self, a: &[usize], b: &[usize]) -> usize {
        let mut d = 0;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                d += x * y * self.homs[i][j].dim();
            }
        }
        d
    }

    pub fn hom_from_coords(&self, a: &[usize], b: &[usize], c: &[u32]) -> Mat {
        let f = self.algebra.field();
        let mut m = Mat::zeros(f, self.dim_of(b), self.dim_of(a));
        let (cells, _) = self.hom_cells(a, b);
        for cell in cells {
            let hb = &self.homs[cell.src_seed][cell.dst_seed];
            let mut blk = Mat::zeros(f, self.seeds[cell.dst_seed].dim(), self.seeds[cell.src_seed].dim());
            for (k, bm) in hb.basis.iter().enumerate() {
                let x = c[cell.coord_offset + k];
                if x != 0 {
                    blk.axpy(x, bm);
                }
            }
            m.set_block(cell.dst_offset, cell.src_offset, &blk);
        }
        m
    }

    /// Canonical basis of Hom(a, b) between canonical modules.
    pub fn hom_basis(&self, a: &[usize], b: &[usize]) -> Vec<Mat> {
        let n = self.hom_dim(a, b);
        (0..n)
            .map(|k| {
                let mut c = vec![0u32; n];
                c[k] = 1;
                self.hom_from_coords(a, b, &c)
            })
            .collect()
    }

    /// Coordinates of `m` in the canonical basis of Hom(a, b); `None` if `m`
    /// is not a homomorphism.
    pub fn hom_coords(&self, a: &[usize], b: &[usize], m: &Mat) -> Option<Vec<u32>> {
        let (cells, n) = self.hom_cells(a, b);
        let mut c = vec![0u32; n];
        let mut covered = Mat::zeros(m.field(), m.rows(), m.cols());
        for cell in cells {
            let (ds, dd) = (self.seeds[cell.src_seed].dim(), self.seeds[cell.dst_seed].dim());
            let blk = m.block(cell.dst_offset, cell.src_offset, dd, ds);
            let x = self.homs[cell.src_seed][cell.dst_seed].coordinates(&blk)?;
            c[cell.coord_offset..cell.coord_offset + x.len()].copy_from_slice(&x);
            covered.set_block(cell.dst_offset, cell.src_offset, &blk);
        }
        // blocks between seeds with no homs must vanish
        if &covered != m {
            return None;
        }
        Some(c)
    }

    /// Canonical inclusions and projections for `a ⊕ b` (interleaved by seed).
    pub fn sum_maps(&self, a: &[usize], b: &[usize]) -> (Mat, Mat, Mat, Mat) {
        let f = self.algebra.field();
        let s = self.add(a, b);
        let (da, db, ds) = (self.dim_of(a), self.dim_of(b), self.dim_of(&s));
        let mut ia = Mat::zeros(f, ds, da);
        let mut ib = Mat::zeros(f, ds, db);
        let (mut oa, mut ob, mut os) = (0, 0, 0);
        for i in 0..self.num_seeds() {
            let d = self.seeds[i].dim();
            for _ in 0..a[i] {
                for t in 0..d {
                    ia[(os + t, oa + t)] = 1;
                }
                oa += d;
                os += d;
            }
            for _ in 0..b[i] {
                for t in 0..d {
                    ib[(os + t, ob + t)] = 1;
                }
                ob += d;
                os += d;
            }
        }
        let pa = ia.transpose();
        let pb = ib.transpose();
        (ia, ib, pa, pb)
    }

    /// Brings `m` into canonical block form: its multiplicity vector (possibly
    /// beyond the bound) and an isomorphism `m -> module_of(mult)`.
    pub fn normalize(&self, m: &Module) -> Result<(MultVec, Mat)> {
        if m.dim() == 0 {
            return Ok((self.zero_vec(), Mat::zeros(self.algebra.field(), 0, 0)));
        }
        match &self.jordan {
            Some(j) => self.normalize_jordan(m, j),
            None => self.normalize_generic(m),
        }
    }

    fn normalize_jordan(&self, m: &Module, j: &JordanData) -> Result<(MultVec, Mat)> {
        let f = self.algebra.field();
        let (sizes, chains) = jordan_chains(m.action(j.generator))?;
        let mut mult = self.zero_vec();
        let mut seed_of = Vec::with_capacity(sizes.len());
        for &l in &sizes {
            let s = *j
                .by_size
                .get(&l)
                .ok_or_else(|| Error::ForeignSummand(format!("Jordan block of size {l}")))?;
            mult[s] += 1;
            seed_of.push(s);
        }
        // reorder chains seed-major, keeping discovery order within a seed
        let mut starts = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &l in &sizes {
            starts.push(acc);
            acc += l;
        }
        let mut order: Vec<usize> = (0..sizes.len()).collect();
        order.sort_by_key(|&c| seed_of[c]);
        let d = m.dim();
        // b: canonical Jordan form -> m
        let mut b = Mat::zeros(f, d, d);
        let mut c_all = Mat::zeros(f, d, d);
        let mut off = 0;
        for &c in &order {
            let l = sizes[c];
            let blk = chains.block(0, starts[c], d, l);
            b.set_block(0, off, &blk);
            c_all.set_block(off, off, &j.chain[seed_of[c]]);
            off += l;
        }
        let binv = b
            .inverse()
            .ok_or_else(|| Error::Contract("Jordan chains are not a basis".into()))?;
        Ok((mult, c_all.mul(&binv)))
    }

    fn normalize_generic(&self, m: &Module) -> Result<(MultVec, Mat)> {
        let pieces = self.split_off(m)?;
        let f = self.algebra.field();
        let mut mult = self.zero_vec();
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        order.sort_by_key(|&k| pieces[k].0);
        let mut t = Mat::zeros(f, 0, m.dim());
        for k in order {
            mult[pieces[k].0] += 1;
            t = t.vstack(&pieces[k].1);
        }
        Ok((mult, t))
    }

    /// Peels off seed summands one at a time: if `a ∘ b` is invertible for
    /// basis homs `b: S -> M`, `a: M -> S`, then M = im b ⊕ ker a.
    fn split_off(&self, m: &Module) -> Result<Vec<(usize, Mat)>> {
        if m.dim() == 0 {
            return Ok(Vec::new());
        }
        let alg = &self.algebra;
        for (i, s) in self.seeds.iter().enumerate() {
            if s.dim() > m.dim() {
                continue;
            }
            let into = hom_space(alg, s, m);
            if into.is_empty() {
                continue;
            }
            let out = hom_space(alg, m, s);
            for a in &out {
                for b in &into {
                    let Some(inv) = a.mul(b).inverse() else { continue };
                    let piece = inv.mul(a);
                    let ker = Subspace::span(m.field(), m.dim(), &a.nullspace());
                    let (k, incl) = m.submodule(&ker)?;
                    let comp = m.identity().sub(&b.mul(&piece));
                    let to_k = incl
                        .solve_matrix(&comp)
                        .ok_or_else(|| Error::Contract("complement projection failed".into()))?;
                    let mut rest = self.split_off(&k)?;
                    for r in rest.iter_mut() {
                        r.1 = r.1.mul(&to_k);
                    }
                    let mut outv = vec![(i, piece)];
                    outv.append(&mut rest);
                    return Ok(outv);
                }
            }
        }
        Err(Error::ForeignSummand(format!(
            "no seed splits off a module of dimension {}",
            m.dim()
        )))
    }

    /// Visits every homomorphism `a -> b` (zero first); `CapExceeded` if there
    /// are more than `cap` of them.
    pub fn for_each_hom(
        &self,
        a: &[usize],
        b: &[usize],
        mut visit: impl FnMut(Mat) -> Result<bool>,
    ) -> Result<bool> {
        let f = self.algebra.field();
        let n = self.hom_dim(a, b);
        if crate::gf::space_size(f, n) > self.cap {
            return Err(Error::CapExceeded(format!(
                "Hom({}, {}) has {}^{} elements, cap {}",
                self.name(a),
                self.name(b),
                f.p(),
                n,
                self.cap
            )));
        }
        let mut out = Ok(true);
        crate::gf::for_each_vector(f, n, |c| match visit(self.hom_from_coords(a, b, c)) {
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

    /// Universe id of a module, or an out-of-universe diagnostic.
    pub fn identify(&self, m: &Module) -> Result<(ObjId, Mat)> {
        let (mult, t) = self.normalize(m)?;
        match self.id_of(&mult) {
            Some(id) => Ok((id, t)),
            None => Err(Error::OutOfUniverse(mult)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::module::is_homomorphism;
    use crate::rep::presets::preset;

    #[test]
    fn object_counts() {
        let u = preset("xquot:2,2").unwrap().universe(1, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 4);
        assert_eq!(u.object(0), &vec![0, 0]);
        let u = preset("xquot:2,2").unwrap().universe(2, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 9);
        let u = preset("xquot:2,4").unwrap().universe(1, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 16);
    }

    #[test]
    fn duplicate_seed_rejected() {
        let p = preset("xquot:2,2").unwrap();
        let s = p.seeds[0].1.clone();
        let e = Universe::new(p.algebra.clone(), vec![("S".into(), s.clone()), ("T".into(), s)], 1, DEFAULT_CAP);
        assert!(matches!(e, Err(Error::DuplicateSeed(0, 1))));
        let e = e.unwrap_err().to_string();
        assert!(e.contains("duplicate iso-class"));
    }

    #[test]
    fn decomposable_seed_rejected() {
        let p = preset("xquot:2,2").unwrap();
        let s = p.seeds[0].1.clone();
        let e = Universe::new(p.algebra.clone(), vec![("SS".into(), s.direct_sum(&s))], 1, DEFAULT_CAP);
        assert!(matches!(e, Err(Error::DecomposableSeed(0))));
    }

    #[test]
    fn blockwise_homs_match_direct_solve() {
        let u = preset("xquot:2,3").unwrap().universe(1, DEFAULT_CAP).unwrap();
        let alg = u.algebra();
        for a in u.objects() {
            for b in u.objects() {
                let ma = u.module_of(a);
                let mb = u.module_of(b);
                let direct = hom_space(alg, &ma, &mb);
                let blocks = u.hom_basis(a, b);
                assert_eq!(direct.len(), blocks.len());
                let sd = Subspace::span(alg.field(), ma.dim() * mb.dim(), &direct.iter().map(|m| m.to_vec()).collect::<Vec<_>>());
                for x in &blocks {
                    assert!(sd.contains(&x.to_vec()));
                    assert!(is_homomorphism(alg, &ma, &mb, x));
                }
                for (k, x) in blocks.iter().enumerate() {
                    let c = u.hom_coords(a, b, x).unwrap();
                    assert_eq!(c.iter().filter(|&&v| v != 0).count(), 1);
                    assert_eq!(c[k], 1);
                }
            }
        }
    }

    #[test]
    fn normalize_scrambled_module_both_routes() {
        for name in ["xquot:2,3", "xquot:3,3"] {
            let p = preset(name).unwrap();
            let u = p.universe(2, DEFAULT_CAP).unwrap();
            let f = u.algebra().field();
            let target = vec![1, 2, 1];
            let canon = u.module_of(&target);
            let d = canon.dim();
            // conjugate by a fixed unipotent change of basis
            let mut q = Mat::identity(f, d);
            for r in 0..d {
                for c in r + 1..d {
                    if (r * 7 + c * 3) % 4 == 0 {
                        q[(r, c)] = 1;
                    }
                }
            }
            let qi = q.inverse().unwrap();
            let scr = Module::from_action_unchecked(
                f,
                d,
                canon.actions().iter().map(|a| q.mul(a).mul(&qi)).collect(),
            );
            let (mult, t) = u.normalize(&scr).unwrap();
            assert_eq!(mult, target);
            assert!(is_homomorphism(u.algebra(), &scr, &canon, &t));
            assert!(t.is_invertible());
            let (mult2, t2) = u.normalize_generic(&scr).unwrap();
            assert_eq!(mult2, target);
            assert!(is_homomorphism(u.algebra(), &scr, &canon, &t2));
        }
    }

    #[test]
    fn sum_maps_are_split() {
        let u = preset("xquot:2,3").unwrap().universe(2, DEFAULT_CAP).unwrap();
        let a = vec![1, 0, 1];
        let b = vec![0, 2, 1];
        let (ia, ib, pa, pb) = u.sum_maps(&a, &b);
        let f = u.algebra().field();
        assert_eq!(pa.mul(&ia), Mat::identity(f, u.dim_of(&a)));
        assert_eq!(pb.mul(&ib), Mat::identity(f, u.dim_of(&b)));
        assert!(pa.mul(&ib).is_zero());
        let s = u.add(&a, &b);
        assert!(u.hom_coords(&a, &s, &ia).is_some());
        assert!(u.hom_coords(&s, &b, &pb).is_some());
    }

    #[test]
    fn foreign_summand_detected() {
        let p = preset("xquot:2,3").unwrap();
        let seeds = vec![p.seeds[0].clone()];
        let u = Universe::new(p.algebra.clone(), seeds, 2, DEFAULT_CAP).unwrap();
        let m = preset("xquot:2,3").unwrap().seeds[2].1.clone();
        assert!(matches!(u.normalize(&m), Err(Error::ForeignSummand(_))));
    }
}

//! Duals, biduality, minimal free resolutions and bounded Ext-vanishing over
//! commutative algebras, and the checks on G(R) built from them.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::frobenius::{is_frobenius, FrobeniusReport};
use crate::exact::{induced_structure, Abelian, ConflationTable, Context, ExactStructure};
use crate::gf::{Mat, Subspace};
use crate::quotient::sn::SnIndex;
use crate::quotient::QuotientContext;
use crate::rep::decompose::are_isomorphic;
use crate::rep::module::kernel;
use crate::rep::{Algebra, Module, MultVec};
use crate::subcat::{verify_correspondence, Kind, SubcatContext, TheoremReport, TheoremStatus};

/// Free modules in a resolution larger than this (as vector spaces) abort it.
pub const RESOLUTION_DIM_LIMIT: usize = 2048;

fn require_commutative(alg: &Algebra, what: &str) -> Result<()> {
    if alg.is_commutative() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{what} needs a commutative algebra")))
    }
}

fn power(alg: &Algebra, a: &[u32], e: u32) -> Vec<u32> {
    let mut acc = alg.unit().to_vec();
    for _ in 0..e {
        acc = alg.mul(&acc, a);
    }
    acc
}

/// The Frobenius map `a ↦ a^p`, linear on a commutative algebra over GF(p).
pub fn frobenius_map(alg: &Algebra) -> Mat {
    let f = alg.field();
    let n = alg.dim();
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut b = vec![0u32; n];
            b[j] = 1;
            power(alg, &b, f.p())
        })
        .collect();
    Mat::from_cols(f, n, &cols)
}

/// Nilradical, which is the Jacobson radical for these finite-dimensional
/// commutative algebras: the kernel of a high enough Frobenius power.
pub fn radical(alg: &Algebra) -> Result<Subspace> {
    require_commutative(alg, "the radical")?;
    let f = alg.field();
    let n = alg.dim();
    let mut e = 1usize;
    let mut reach = f.p() as usize;
    while reach < n {
        reach *= f.p() as usize;
        e += 1;
    }
    let fr = frobenius_map(alg).pow(e);
    Ok(Subspace::span(f, n, &fr.nullspace()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RingInfo {
    pub commutative: bool,
    pub dim: usize,
    pub radical_dim: usize,
    /// number of simple factors of R/rad
    pub residue_factors: usize,
    pub local: bool,
    pub socle_dim: usize,
    /// artinian local with one-dimensional socle, i.e. self-injective
    pub gorenstein: bool,
}

pub fn ring_info(alg: &Algebra) -> Result<RingInfo> {
    require_commutative(alg, "ring_info")?;
    let f = alg.field();
    let n = alg.dim();
    let rad = radical(alg)?;
    // R/rad is a product of finite fields; Frobenius fixes one GF(p) in each.
    let (_, proj) = Module::regular(alg).quotient(&rad)?;
    let shifted = frobenius_map(alg).sub(&Mat::identity(f, n));
    let fixed = proj.mul(&shifted).nullspace().len();
    let residue_factors = fixed - rad.dim();
    let socle_dim = if rad.dim() == 0 {
        n
    } else {
        let stacked = rad
            .basis()
            .iter()
            .map(|r| alg.left_mult_by(r))
            .reduce(|a, b| a.vstack(&b))
            .expect("nonzero radical");
        stacked.nullspace().len()
    };
    let local = residue_factors == 1;
    Ok(RingInfo {
        commutative: true,
        dim: n,
        radical_dim: rad.dim(),
        residue_factors,
        local,
        socle_dim,
        gorenstein: local && socle_dim == 1,
    })
}

/// `M* = Hom(M, R)` with its canonical hom basis.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: Module,
    /// dim R x dim M matrices
    pub basis: Vec<Mat>,
    space: Subspace,
}

impl Dual {
    pub fn coords(&self, phi: &Mat) -> Option<Vec<u32>> {
        self.space.coordinates(&phi.to_vec())
    }
}

pub fn dual_module(alg: &Algebra, m: &Module) -> Result<Dual> {
    require_commutative(alg, "the dual module")?;
    let f = alg.field();
    let r = Module::regular(alg);
    let basis = crate::rep::module::hom_space(alg, m, &r);
    let vecs: Vec<Vec<u32>> = basis.iter().map(Mat::to_vec).collect();
    let space = Subspace::span(f, alg.dim() * m.dim(), &vecs);
    let k = basis.len();
    let mut action = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        // (b_i · φ)(m) = φ(b_i m)
        let cols: Vec<Vec<u32>> = basis
            .iter()
            .map(|phi| {
                space
                    .coordinates(&phi.mul(m.action(i)).to_vec())
                    .ok_or_else(|| Error::Contract("dual action leaves Hom(M, R)".into()))
            })
            .collect::<Result<_>>()?;
        action.push(Mat::from_cols(f, k, &cols));
    }
    Ok(Dual { module: Module::new(alg, action)?, basis, space })
}

/// `f*: N* -> M*` for `f: M -> N`, in the dual bases.
pub fn dual_map(dm: &Dual, dn: &Dual, f: &Mat) -> Result<Mat> {
    let cols: Vec<Vec<u32>> = dn
        .basis
        .iter()
        .map(|phi| dm.coords(&phi.mul(f)).ok_or_else(|| Error::Contract("f is not a homomorphism".into())))
        .collect::<Result<_>>()?;
    Ok(Mat::from_cols(f.field(), dm.basis.len(), &cols))
}

#[derive(Clone, Debug)]
pub struct Biduality {
    pub dual: Dual,
    pub double_dual: Dual,
    /// evaluation `M -> M**`
    pub map: Mat,
    pub is_iso: bool,
}

pub fn biduality(alg: &Algebra, m: &Module) -> Result<Biduality> {
    let dual = dual_module(alg, m)?;
    let double_dual = dual_module(alg, &dual.module)?;
    let f = alg.field();
    let n = alg.dim();
    let mut cols = Vec::with_capacity(m.dim());
    for c in 0..m.dim() {
        let ev: Vec<Vec<u32>> = dual.basis.iter().map(|phi| phi.col(c)).collect();
        let ev = Mat::from_cols(f, n, &ev);
        cols.push(
            double_dual
                .coords(&ev)
                .ok_or_else(|| Error::Contract("evaluation is not R-linear".into()))?,
        );
    }
    let map = Mat::from_cols(f, double_dual.basis.len(), &cols);
    let is_iso = map.is_invertible();
    Ok(Biduality { dual, double_dual, map, is_iso })
}

/// A window `F_L -> ... -> F_0 -> M` of the minimal free resolution.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub ranks: Vec<usize>,
    /// `F_0 -> M`
    pub augmentation: Mat,
    /// `d_k: F_k -> F_{k-1}` for `k = 1..=L`
    pub differentials: Vec<Mat>,
    /// `Ω^0 = M, ..., Ω^{L+1}`
    pub syzygies: Vec<Module>,
    /// `Ω^{k+1} -> F_k`
    inclusions: Vec<Mat>,
    /// the first `(i, j)` with `Ω^i ≅ Ω^j`
    pub period: Option<(usize, usize)>,
    /// syzygy pairs whose isomorphism test hit the cap
    pub undecided: Vec<(usize, usize)>,
}

struct Resolver<'a> {
    alg: &'a Algebra,
    rad: Subspace,
    cap: u128,
}

impl Resolver<'_> {
    fn cover(&self, m: &Module) -> (usize, Mat) {
        let alg = self.alg;
        let mut vecs = Vec::new();
        for r in self.rad.basis() {
            let a = m.act_by(r);
            for c in 0..m.dim() {
                vecs.push(a.col(c));
            }
        }
        let gens = Subspace::span(alg.field(), m.dim(), &vecs).complement_reps();
        let mut cols = Vec::with_capacity(gens.len() * alg.dim());
        for g in &gens {
            for j in 0..alg.dim() {
                cols.push(m.action(j).mul_vec(g));
            }
        }
        (gens.len(), Mat::from_cols(alg.field(), m.dim(), &cols))
    }

    fn start(&self, m: &Module) -> FreeResolution {
        FreeResolution {
            ranks: Vec::new(),
            augmentation: Mat::zeros(self.alg.field(), m.dim(), 0),
            differentials: Vec::new(),
            syzygies: vec![m.clone()],
            inclusions: Vec::new(),
            period: None,
            undecided: Vec::new(),
        }
    }

    /// Extends until `F_0..=F_depth` exist.
    fn extend(&self, res: &mut FreeResolution, depth: usize) -> Result<()> {
        while res.ranks.len() <= depth {
            let k = res.ranks.len();
            let omega = &res.syzygies[k];
            let (rank, pi) = self.cover(omega);
            if rank * self.alg.dim() > RESOLUTION_DIM_LIMIT {
                return Err(Error::CapExceeded(format!(
                    "free module of rank {rank} in degree {k} exceeds dimension {RESOLUTION_DIM_LIMIT}"
                )));
            }
            let free = Module::free(self.alg, rank);
            let (next, incl) = kernel(&free, &pi)?;
            if k == 0 {
                res.augmentation = pi;
            } else {
                res.differentials.push(res.inclusions[k - 1].mul(&pi));
            }
            res.ranks.push(rank);
            res.inclusions.push(incl);
            res.syzygies.push(next);
            if res.period.is_none() {
                self.detect_period(res)?;
            }
        }
        Ok(())
    }

    fn detect_period(&self, res: &mut FreeResolution) -> Result<()> {
        let j = res.syzygies.len() - 1;
        let last = &res.syzygies[j];
        for i in 0..j {
            if res.syzygies[i].dim() != last.dim() {
                continue;
            }
            match are_isomorphic(self.alg, &res.syzygies[i], last, self.cap) {
                Ok(Some(_)) => {
                    res.period = Some((i, j));
                    return Ok(());
                }
                Ok(None) => {}
                Err(e) if e.is_inconclusive() => res.undecided.push((i, j)),
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }
}

impl FreeResolution {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// Minimal free resolution of `m` with `F_0..=F_depth`.
pub fn resolve(alg: &Algebra, m: &Module, depth: usize, cap: u128) -> Result<FreeResolution> {
    require_commutative(alg, "resolve")?;
    let r = Resolver { alg, rad: radical(alg)?, cap };
    let mut res = r.start(m);
    r.extend(&mut res, depth)?;
    Ok(res)
}

/// `Hom(d_k, R)` for `d_k: F_k -> F_{k-1}`, using `Hom(R^r, R) = R^r`.
fn dual_differential(alg: &Algebra, d: &Mat, r_src: usize, r_tgt: usize) -> Mat {
    let f = alg.field();
    let n = alg.dim();
    let mut out = Mat::zeros(f, r_src * n, r_tgt * n);
    for c in 0..r_src {
        // image of the c-th generator, split into its R-coefficients
        let mut gen = vec![0u32; r_src * n];
        gen[c * n..(c + 1) * n].copy_from_slice(alg.unit());
        let img = d.mul_vec(&gen);
        for l in 0..r_tgt {
            let a = &img[l * n..(l + 1) * n];
            if a.iter().any(|&x| x != 0) {
                out.set_block(c * n, l * n, &alg.left_mult_by(a));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtVerdict {
    /// `dims[d - 1] = dim Ext^d(M, R)`
    pub dims: Vec<usize>,
    pub vanishes_through: usize,
    pub failure: Option<usize>,
    pub periodic: Option<(usize, usize)>,
    /// the computed degrees beyond the first period agree with it
    pub period_consistent: bool,
    pub certified: bool,
    pub ranks: Vec<usize>,
}

/// Dimensions of `Ext^d(M, R)` for `d = 1..=top` from a resolution with
/// `F_0..=F_{top+1}`.
pub fn ext_dims(alg: &Algebra, res: &FreeResolution, top: usize) -> Vec<usize> {
    let n = alg.dim();
    let ranks = &res.ranks;
    let duals: Vec<Mat> = (1..=top + 1)
        .map(|k| dual_differential(alg, &res.differentials[k - 1], ranks[k], ranks[k - 1]))
        .collect();
    (1..=top)
        .map(|d| {
            let kernel = ranks[d] * n - duals[d].rank();
            kernel - duals[d - 1].rank()
        })
        .collect()
}

/// Resolves to the bound, and past it far enough to confirm a period twice.
pub fn ext_vanishing(alg: &Algebra, m: &Module, bound: usize, cap: u128) -> Result<ExtVerdict> {
    require_commutative(alg, "ext_vanishing")?;
    if bound == 0 {
        return Err(Error::Contract("ext_vanishing needs bound >= 1".into()));
    }
    let r = Resolver { alg, rad: radical(alg)?, cap };
    let mut res = r.start(m);
    let mut top = bound;
    loop {
        r.extend(&mut res, top + 1)?;
        match res.period {
            Some((_, j)) if j + 2 > top => top = j + 2,
            _ => break,
        }
    }
    let dims = ext_dims(alg, &res, top);
    let failure = dims.iter().position(|&d| d != 0).map(|i| i + 1);
    let vanishes_through = failure.map_or(top, |d| d - 1);
    let period_consistent = match res.period {
        Some((i, j)) => {
            let s = j - i;
            (i + 1..=top.saturating_sub(s)).all(|d| dims[d - 1] == dims[d + s - 1])
        }
        None => false,
    };
    Ok(ExtVerdict {
        certified: failure.is_none() && res.period.is_some() && period_consistent,
        dims,
        vanishes_through,
        failure,
        periodic: res.period,
        period_consistent,
        ranks: res.ranks.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TotalReflexivityVerdict {
    pub biduality_iso: bool,
    pub ext_m: ExtVerdict,
    pub ext_mstar: ExtVerdict,
    /// all three conditions hold in the checked degrees
    pub totally_reflexive: bool,
    /// ... and both Ext windows are closed by a period
    pub certified: bool,
}

pub fn is_totally_reflexive(alg: &Algebra, m: &Module, bound: usize, cap: u128) -> Result<TotalReflexivityVerdict> {
    let bi = biduality(alg, m)?;
    let ext_m = ext_vanishing(alg, m, bound, cap)?;
    let ext_mstar = ext_vanishing(alg, &bi.dual.module, bound, cap)?;
    let totally_reflexive = bi.is_iso && ext_m.failure.is_none() && ext_mstar.failure.is_none();
    Ok(TotalReflexivityVerdict {
        biduality_iso: bi.is_iso,
        certified: totally_reflexive && ext_m.certified && ext_mstar.certified,
        totally_reflexive,
        ext_m,
        ext_mstar,
    })
}

/// Over an artinian local ring every module has depth 0 = dim R, so every
/// module is maximal Cohen-Macaulay. Anything else is refused.
pub fn is_mcm_artinian(alg: &Algebra, _m: &Module) -> Result<bool> {
    let info = ring_info(alg)?;
    if !info.local {
        return Err(Error::Precondition(format!(
            "ring is not local: R/rad has {} simple factors",
            info.residue_factors
        )));
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectVerdict {
    pub object: String,
    pub mcm: bool,
    pub totally_reflexive: bool,
    pub certified: bool,
    pub ext_failure: Option<usize>,
    pub biduality_iso: bool,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainsRCheck {
    pub subcategories: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrReport {
    pub ring: RingInfo,
    pub bound: usize,
    pub r_object: String,
    pub verdicts: Vec<ObjectVerdict>,
    /// certified totally reflexive objects
    pub gr: Vec<String>,
    /// G(R) is add of its seeds within the universe
    pub additive: bool,
    pub cm_equals_gr: bool,
    pub frobenius: FrobeniusReport,
    pub proj_inj_is_add_r: bool,
    pub contains_r: ContainsRCheck,
    pub thick: TheoremReport,
    pub complete: TheoremReport,
}

impl GrReport {
    pub fn passes(&self) -> bool {
        self.ring.local
            && self.additive
            && (!self.ring.gorenstein || self.cm_equals_gr)
            && self.frobenius.frobenius
            && self.proj_inj_is_add_r
            && self.contains_r.failures.is_empty()
            && self.thick.status == TheoremStatus::Verified
            && self.complete.status == TheoremStatus::Verified
    }
}

/// Seed index of R, which must be a single seed.
fn regular_seed(ctx: &Context) -> Result<usize> {
    let u = &ctx.universe;
    let (v, _) = u.normalize(&Module::regular(u.algebra()))?;
    match v.iter().position(|&k| k > 0) {
        Some(i) if v.iter().sum::<usize>() == 1 => Ok(i),
        _ => Err(Error::Precondition(format!("R = {} is not one of the seeds", u.name(&v)))),
    }
}

pub fn verify_gr_theorems(ctx: &Context, bound: usize, limit: usize) -> Result<GrReport> {
    let u = &ctx.universe;
    let alg = u.algebra();
    let ring = ring_info(alg)?;
    let rs = regular_seed(ctx)?;
    let r_vec = u.unit_vec(rs);
    let mut verdicts = Vec::with_capacity(u.len());
    let mut members: BTreeSet<MultVec> = BTreeSet::new();
    for id in 0..u.len() {
        let x = u.object(id);
        let m = u.module_of(x);
        let mcm = is_mcm_artinian(alg, &m)?;
        let v = match is_totally_reflexive(alg, &m, bound, u.cap()) {
            Ok(t) => {
                if t.certified {
                    members.insert(x.clone());
                }
                ObjectVerdict {
                    object: u.name(x),
                    mcm,
                    totally_reflexive: t.totally_reflexive,
                    certified: t.certified,
                    ext_failure: t.ext_m.failure.or(t.ext_mstar.failure),
                    biduality_iso: t.biduality_iso,
                    diagnostic: None,
                }
            }
            Err(e) if e.is_inconclusive() => ObjectVerdict {
                object: u.name(x),
                mcm,
                totally_reflexive: false,
                certified: false,
                ext_failure: None,
                biduality_iso: false,
                diagnostic: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        };
        verdicts.push(v);
    }
    let good_seeds: Vec<usize> = (0..u.num_seeds()).filter(|&j| members.contains(&u.unit_vec(j))).collect();
    let supported = |x: &[usize], s: &[usize]| x.iter().enumerate().all(|(j, &k)| k == 0 || s.contains(&j));
    let additive = u.objects().iter().all(|x| members.contains(x) == supported(x, &good_seeds));
    let cm_equals_gr = members.len() == u.len();

    let induced = induced_structure(ctx, Box::new(Abelian), members.clone(), "G(R)")?;
    let table = ConflationTable::build(ctx, &induced)?;
    let frobenius = is_frobenius(ctx, &induced, &table)?;
    let r_name = u.seed_names()[rs].clone();
    let proj_inj_is_add_r = frobenius.projective_seeds == [r_name.clone()] && frobenius.injective_seeds == [r_name];

    let projectives: BTreeSet<MultVec> = table
        .category
        .iter()
        .map(|&i| u.object(i).clone())
        .filter(|x| table.is_projective(x))
        .collect();
    let mut contains_r = ContainsRCheck { subcategories: 0, failures: Vec::new() };
    for mask in 0u64..(1 << good_seeds.len()) {
        let s: Vec<usize> = good_seeds.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &j)| j).collect();
        let has_r = s.contains(&rs);
        let has_proj = projectives.iter().all(|x| supported(x, &s));
        contains_r.subcategories += 1;
        if has_r != has_proj {
            let names: Vec<&str> = s.iter().map(|&j| u.seed_names()[j].as_str()).collect();
            contains_r.failures.push(format!("add{{{}}}", names.join(",")));
        }
    }

    let q = QuotientContext::new(ctx, &induced as &dyn ExactStructure, projectives, "add R")?;
    let index = SnIndex::build(&q)?;
    let sc = SubcatContext::new(&q, &table, &index);
    let thick = verify_correspondence(&sc, Kind::Thick, limit)?;
    let complete = verify_correspondence(&sc, Kind::Complete, limit)?;
    Ok(GrReport {
        ring,
        bound,
        r_object: u.name(&r_vec),
        verdicts,
        gr: members.iter().map(|x| u.name(x)).collect(),
        additive,
        cm_equals_gr,
        frobenius,
        proj_inj_is_add_r,
        contains_r,
        thick,
        complete,
    })
}

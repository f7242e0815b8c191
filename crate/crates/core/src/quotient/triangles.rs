//! Suspension, standard triangles and distinguished triangles of the stable
//! category of a Frobenius structure, and the S_N / triangle comparison.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::axioms::{mat_rows, AxiomVerdict, Counterexample, Status};
use crate::exact::frobenius::{approximate, good_seeds, Side};
use crate::exact::{Conflation, ConflationTable};
use crate::gf::{space_size, Mat};
use crate::quotient::sn::SnIndex;
use crate::quotient::QuotientContext;
use crate::rep::module::{cokernel, pushout};
use crate::rep::universe::MultVec;

/// The chosen conflation `x ↣ i ↠ tx` with `i` injective.
#[derive(Clone, Debug)]
pub struct Suspension {
    pub x: MultVec,
    pub i: MultVec,
    pub tx: MultVec,
    pub mu: Mat,
    pub pi: Mat,
}

/// `x -u-> y -v-> z -w-> tx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub x: MultVec,
    pub y: MultVec,
    pub z: MultVec,
    pub tx: MultVec,
    pub u: Mat,
    pub v: Mat,
    pub w: Mat,
}

impl Triangle {
    pub fn counterexample(&self, q: &QuotientContext) -> Counterexample {
        let un = &q.ctx.universe;
        Counterexample {
            objects: [&self.x, &self.y, &self.z, &self.tx].iter().map(|m| un.name(m)).collect(),
            matrices: vec![mat_rows(&self.u), mat_rows(&self.v), mat_rows(&self.w)],
        }
    }
}

/// Coefficients `c` with `Σ c_k lin(basis_k) = target`, combined back into
/// `Σ c_k basis_k`.
fn solve_in_span(basis: &[Mat], lin: impl Fn(&Mat) -> Mat, target: &Mat, zero: Mat) -> Result<Option<Mat>> {
    let f = target.field();
    if basis.is_empty() {
        return Ok(target.is_zero().then_some(zero));
    }
    let cols: Vec<Vec<u32>> = basis.iter().map(|b| lin(b).to_vec()).collect();
    let a = Mat::from_cols(f, target.rows() * target.cols(), &cols);
    Ok(a.solve(&target.to_vec())?.map(|(c, _)| {
        let mut m = zero;
        for (x, b) in c.iter().zip(basis) {
            if *x != 0 {
                m.axpy(*x, b);
            }
        }
        m
    }))
}

/// The unique `h` with `h e = m` for a surjection `e`.
fn factor_through_epi(e: &Mat, m: &Mat) -> Option<Mat> {
    e.transpose().solve_matrix(&m.transpose()).map(|t| t.transpose())
}

/// E/N for N = the injectives of a Frobenius structure.
pub struct Stable<'q, 'a> {
    pub q: &'q QuotientContext<'a>,
    injective_seeds: Vec<usize>,
    cache: RefCell<HashMap<MultVec, Rc<Suspension>>>,
}

impl<'q, 'a> Stable<'q, 'a> {
    pub fn new(q: &'q QuotientContext<'a>, table: &ConflationTable) -> Result<Stable<'q, 'a>> {
        let injective_seeds = good_seeds(q.ctx, q.structure, table, Side::Inj);
        if q.generators() != injective_seeds || !q.is_add_closed() {
            return Err(Error::Precondition(format!(
                "N = {} is not the subcategory of injectives",
                q.label()
            )));
        }
        Ok(Stable {
            q,
            injective_seeds,
            cache: RefCell::new(HashMap::new()),
        })
    }

    pub fn suspension(&self, x: &[usize]) -> Result<Rc<Suspension>> {
        if let Some(s) = self.cache.borrow().get(x) {
            return Ok(s.clone());
        }
        let q = self.q;
        let u = &q.ctx.universe;
        let (i, mu) = approximate(q.ctx, q.structure, &self.injective_seeds, x, Side::Inj)?.ok_or_else(|| {
            Error::Precondition(format!("{} has no admissible mono into an injective", u.name(x)))
        })?;
        let (c, proj) = cokernel(&u.module_of(&i), &mu)?;
        let (tx, t) = u.normalize(&c)?;
        let s = Rc::new(Suspension {
            x: x.to_vec(),
            i,
            tx,
            mu,
            pi: t.mul(&proj),
        });
        self.cache.borrow_mut().insert(x.to_vec(), s.clone());
        Ok(s)
    }

    /// `T f: TX -> TY`, via an extension `j: I_X -> I_Y` of `μ_Y f`.
    pub fn suspend_morphism(&self, x: &[usize], y: &[usize], f: &Mat) -> Result<Mat> {
        let u = &self.q.ctx.universe;
        let fld = u.algebra().field();
        let (sx, sy) = (self.suspension(x)?, self.suspension(y)?);
        let target = sy.mu.mul(f);
        let zero = Mat::zeros(fld, u.dim_of(&sy.i), u.dim_of(&sx.i));
        let j = solve_in_span(&u.hom_basis(&sx.i, &sy.i), |b| b.mul(&sx.mu), &target, zero)?
            .ok_or_else(|| Error::Precondition(format!("{} is not injective", u.name(&sy.i))))?;
        factor_through_epi(&sx.pi, &sy.pi.mul(&j))
            .ok_or_else(|| Error::Contract("suspended map does not descend to the cokernel".into()))
    }

    /// `x -f-> y -> C_f -> TX` with `C_f` the pushout of `μ_X` along `f`.
    pub fn standard_triangle(&self, x: &[usize], y: &[usize], f: &Mat) -> Result<Triangle> {
        let u = &self.q.ctx.universe;
        let fld = u.algebra().field();
        let s = self.suspension(x)?;
        let (c, g, fbar) = pushout(&u.module_of(&s.i), &u.module_of(y), &s.mu, f)?;
        let (z, t) = u.normalize(&c)?;
        let g = t.mul(&g);
        let fbar = t.mul(&fbar);
        // h fbar = π and h g = 0
        let both = fbar.hstack(&g);
        let rhs = s.pi.hstack(&Mat::zeros(fld, u.dim_of(&s.tx), u.dim_of(y)));
        let w = factor_through_epi(&both, &rhs)
            .ok_or_else(|| Error::Contract("standard triangle: no connecting map".into()))?;
        Ok(Triangle {
            x: x.to_vec(),
            y: y.to_vec(),
            z,
            tx: s.tx.clone(),
            u: f.clone(),
            v: g,
            w,
        })
    }

    /// Completes a conflation `x ↣ y ↠ z` to a triangle: `j: y -> I_X` with
    /// `j f = μ`, then `h` with `h g = π j`.
    pub fn completion(&self, c: &Conflation) -> Result<Triangle> {
        let u = &self.q.ctx.universe;
        let fld = u.algebra().field();
        let s = self.suspension(&c.x)?;
        let zero = Mat::zeros(fld, u.dim_of(&s.i), u.dim_of(&c.y));
        let j = solve_in_span(&u.hom_basis(&c.y, &s.i), |b| b.mul(&c.f), &s.mu, zero)?
            .ok_or_else(|| Error::Precondition(format!("{} is not injective", u.name(&s.i))))?;
        let w = factor_through_epi(&c.g, &s.pi.mul(&j))
            .ok_or_else(|| Error::Contract("completion: deflation is not surjective".into()))?;
        Ok(Triangle {
            x: c.x.clone(),
            y: c.y.clone(),
            z: c.z.clone(),
            tx: s.tx.clone(),
            u: c.f.clone(),
            v: c.g.clone(),
            w,
        })
    }

    /// Whether the pushout conflation `x ↣ I ⊕ y ↠ z` behind a standard
    /// triangle is admitted and maps to `x -u-> y -v-> z` by `(-1, p_y, 1)`,
    /// with every square and isomorphism checked in E/N.
    pub fn pushout_witness(&self, t: &Triangle) -> Result<bool> {
        let q = self.q;
        let u = &q.ctx.universe;
        let s = self.suspension(&t.x)?;
        let (c, g, fbar) = pushout(&u.module_of(&s.i), &u.module_of(&t.y), &s.mu, &t.u)?;
        let Some(iso) = u.normalize(&c).ok().filter(|(z, _)| *z == t.z).map(|(_, iso)| iso) else {
            return Ok(false);
        };
        let mid = u.add(&s.i, &t.y);
        let (ii, iy, pi, py) = u.sum_maps(&s.i, &t.y);
        let f = ii.mul(&s.mu).sub(&iy.mul(&t.u));
        let g = iso.mul(&fbar).mul(&pi).add(&iso.mul(&g).mul(&py));
        let conflation = Conflation {
            x: t.x.clone(),
            y: mid.clone(),
            z: t.z.clone(),
            f,
            g,
        };
        if !q.structure.admits(q.ctx, &conflation)? {
            return Ok(false);
        }
        let first = py.mul(&conflation.f) == t.u.neg();
        let second = q.is_stably_zero_map(&mid, &t.z, &conflation.g.sub(&t.v.mul(&py)));
        Ok(first && second && q.stable_is_iso(&mid, &t.y, &py)?)
    }

    /// Isomorphic to the standard triangle on `u`. A morphism of triangles
    /// with identities on the first two terms is an isomorphism whenever both
    /// triangles are distinguished, so it suffices to solve for the third
    /// component linearly and test one solution.
    pub fn is_distinguished(&self, t: &Triangle) -> Result<bool> {
        let q = self.q;
        let s = self.suspension(&t.x)?;
        if s.tx != t.tx {
            return Ok(false);
        }
        if !q.is_stably_zero_map(&t.x, &t.z, &t.v.mul(&t.u)) || !q.is_stably_zero_map(&t.y, &t.tx, &t.w.mul(&t.v)) {
            return Ok(false);
        }
        let std = self.standard_triangle(&t.x, &t.y, &t.u)?;
        let (z, c) = (&t.z, &std.z);
        // φ v ≡ g_std in Hom(y, C) and h_std φ ≡ w in Hom(z, TX)
        let mut target = q.stable_coords(&t.y, c, &std.v);
        target.extend(q.stable_coords(z, &t.tx, &t.w));
        let lin = |phi: &Mat| {
            let mut v = q.stable_coords(&t.y, c, &phi.mul(&t.v));
            v.extend(q.stable_coords(z, &t.tx, &std.w.mul(phi)));
            v
        };
        match q.solve_stable(z, c, lin, &target)? {
            Some((phi, _)) => q.stable_is_iso(z, c, &phi),
            None => Ok(false),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SnTriangleReport {
    pub n: String,
    /// images of conflations complete to distinguished triangles
    pub sn_to_triangle: AxiomVerdict,
    /// standard triangles restrict to S_N sequences
    pub triangle_to_sn: AxiomVerdict,
    /// standard triangles certified by their own pushout conflation
    pub witnessed: usize,
    /// standard triangles whose reduced ends exceed the enumerated conflations
    pub skipped: usize,
}

impl SnTriangleReport {
    pub fn passes(&self) -> bool {
        self.sn_to_triangle.status == Status::Pass && self.triangle_to_sn.status == Status::Pass
    }
}

fn verdict(name: &str, checked: usize, inconclusive: &[String], counterexample: Option<Counterexample>) -> AxiomVerdict {
    let status = if counterexample.is_some() {
        Status::Fail
    } else if inconclusive.is_empty() {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    AxiomVerdict {
        axiom: name.to_string(),
        status,
        checked,
        inconclusive: inconclusive.len(),
        counterexample,
        note: inconclusive.first().cloned(),
    }
}

/// Both directions of: `X -> Y -> Z` lies in S_N iff it extends to a
/// distinguished triangle. Conflations are taken up to stable equality of
/// their reduced images; triangles are the standard triangles on all stable
/// morphisms between stable classes.
pub fn verify_sn_iff_triangle(st: &Stable, index: &SnIndex) -> Result<SnTriangleReport> {
    let q = st.q;
    let u = &q.ctx.universe;

    let mut checked = 0;
    let mut inconclusive = index.inconclusive.clone();
    let mut counterexample = None;
    'fwd: for shape in index.shapes() {
        for img in index.images(shape) {
            checked += 1;
            let r = st.completion(&img.source).and_then(|t| Ok((st.is_distinguished(&t)?, t)));
            match r {
                Ok((true, _)) => {}
                Ok((false, t)) => {
                    counterexample = Some(t.counterexample(q));
                    break 'fwd;
                }
                Err(e) if e.is_inconclusive() => inconclusive.push(e.to_string()),
                Err(e) => return Err(e),
            }
        }
    }
    let forward = verdict("S_N => triangle", checked, &inconclusive, counterexample);

    let fld = u.algebra().field();
    let classes = q.stable_classes();
    let mut checked = 0;
    let mut witnessed = 0;
    let mut skipped = 0;
    let mut inconclusive = Vec::new();
    let mut counterexample = None;
    'bwd: for x in &classes {
        for y in &classes {
            let mut found = None;
            let work = space_size(fld, q.stable_dim(x, y));
            if work > u.cap() {
                inconclusive.push(format!("{} -> {}: {work} triangles exceed cap {}", u.name(x), u.name(y), u.cap()));
                continue;
            }
            // the index search runs over the stable automorphisms of y
            let autos_work = space_size(fld, q.stable_dim(y, y));
            let mut autos_noted = false;
            let r = q.for_each_stable(x, y, |f| {
                let t = st.standard_triangle(x, y, &f)?;
                if st.pushout_witness(&t)? {
                    checked += 1;
                    witnessed += 1;
                    return Ok(true);
                }
                // no conflation image of this shape fits the enumeration
                let zr = q.reduce(&t.z);
                if !u.in_bound(&zr) || u.dim_of(x) + u.dim_of(&zr) > q.ctx.max_dim() {
                    skipped += 1;
                    return Ok(true);
                }
                if autos_work > u.cap() {
                    if !autos_noted {
                        autos_noted = true;
                        inconclusive.push(format!(
                            "{} -> {}: {autos_work} automorphisms exceed cap {}",
                            u.name(x),
                            u.name(y),
                            u.cap()
                        ));
                    }
                    return Ok(true);
                }
                checked += 1;
                if index.contains(q, &t.x, &t.y, &t.z, &t.u, &t.v)? {
                    Ok(true)
                } else {
                    found = Some(t);
                    Ok(false)
                }
            });
            match r {
                Ok(_) => {}
                Err(e) if e.is_inconclusive() => inconclusive.push(format!("{} -> {}: {e}", u.name(x), u.name(y))),
                Err(e) => return Err(e),
            }
            if let Some(t) = found {
                counterexample = Some(t.counterexample(q));
                break 'bwd;
            }
        }
    }
    let backward = verdict("triangle => S_N", checked, &inconclusive, counterexample);
    Ok(SnTriangleReport {
        n: q.label().to_string(),
        sn_to_triangle: forward,
        triangle_to_sn: backward,
        witnessed,
        skipped,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SuspensionReport {
    /// per stable class: (X, TX)
    pub table: Vec<(String, String)>,
    /// T kills the ideal
    pub well_defined: bool,
    pub dims_preserved: bool,
    pub injective_on_classes: bool,
    pub failures: Vec<String>,
}

impl SuspensionReport {
    pub fn passes(&self) -> bool {
        self.well_defined && self.dims_preserved && self.injective_on_classes
    }
}

/// T is well defined on stable morphisms, preserves stable hom dimensions and
/// is injective on the stable classes of the universe.
pub fn check_suspension(st: &Stable) -> Result<SuspensionReport> {
    let q = st.q;
    let u = &q.ctx.universe;
    let objs: Vec<MultVec> = u.objects().iter().filter(|m| q.structure.in_category(u, m)).cloned().collect();
    let mut failures = Vec::new();
    let mut well_defined = true;
    for x in &objs {
        for y in &objs {
            let (tx, ty) = (st.suspension(x)?.tx.clone(), st.suspension(y)?.tx.clone());
            for b in q.ideal_basis(x, y) {
                let tb = st.suspend_morphism(x, y, &b)?;
                if !q.is_stably_zero_map(&tx, &ty, &tb) {
                    well_defined = false;
                    failures.push(format!("T does not kill an ideal map {} -> {}", u.name(x), u.name(y)));
                }
            }
        }
    }
    let classes = q.stable_classes();
    let mut table = Vec::new();
    let mut dims_preserved = true;
    let mut images = BTreeSet::new();
    let mut injective_on_classes = true;
    for x in &classes {
        let tx = st.suspension(x)?.tx.clone();
        table.push((u.name(x), u.name(&tx)));
        if !images.insert(q.reduce(&tx)) {
            injective_on_classes = false;
            failures.push(format!("T identifies {} with another class", u.name(x)));
        }
        for y in &classes {
            let ty = st.suspension(y)?.tx.clone();
            if q.stable_dim(x, y) != q.stable_dim(&tx, &ty) {
                dims_preserved = false;
                failures.push(format!("dim stable Hom({}, {}) changes under T", u.name(x), u.name(y)));
            }
        }
    }
    Ok(SuspensionReport {
        table,
        well_defined,
        dims_preserved,
        injective_on_classes,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_object_set, Abelian, Context};
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    fn ctx(name: &str, bound: usize) -> Context {
        Context::new(preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()).unwrap()
    }

    fn inj<'a>(c: &'a Context, sel: &str) -> QuotientContext<'a> {
        QuotientContext::new(c, &Abelian, parse_object_set(&c.universe, sel).unwrap(), "inj").unwrap()
    }

    #[test]
    fn suspension_examples() {
        let c = ctx("xquot:2,3", 1);
        let q = inj(&c, "add:M3");
        let t = ConflationTable::build(&c, &Abelian).unwrap();
        let st = Stable::new(&q, &t).unwrap();
        assert_eq!(st.suspension(&[1, 0, 0]).unwrap().tx, vec![0, 1, 0]);
        assert_eq!(st.suspension(&[0, 0, 0]).unwrap().tx, vec![0, 0, 0]);
        let r = check_suspension(&st).unwrap();
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn standard_triangles_are_distinguished() {
        let c = ctx("xquot:2,2", 2);
        let q = inj(&c, "add:M2");
        let t = ConflationTable::build(&c, &Abelian).unwrap();
        let st = Stable::new(&q, &t).unwrap();
        let u = &c.universe;
        let f = u.algebra().field();
        let s = vec![1, 0];
        let id = st.standard_triangle(&s, &s, &Mat::identity(f, 1)).unwrap();
        assert!(q.is_stably_zero(&id.z));
        assert!(st.is_distinguished(&id).unwrap());
        let zero = st.standard_triangle(&s, &u.zero_vec(), &Mat::zeros(f, 0, 1)).unwrap();
        assert_eq!(q.reduce(&zero.z), s);
        // S -1-> S -0-> S -0-> S has v u = 0 but is not distinguished
        let bad = Triangle {
            x: s.clone(),
            y: s.clone(),
            z: s.clone(),
            tx: s.clone(),
            u: Mat::identity(f, 1),
            v: Mat::zeros(f, 1, 1),
            w: Mat::zeros(f, 1, 1),
        };
        assert!(!st.is_distinguished(&bad).unwrap());
    }

    #[test]
    fn sn_iff_triangle_dual_numbers() {
        let c = ctx("xquot:2,2", 2);
        let q = inj(&c, "add:M2");
        let t = ConflationTable::build(&c, &Abelian).unwrap();
        let st = Stable::new(&q, &t).unwrap();
        let idx = SnIndex::build(&q).unwrap();
        let r = verify_sn_iff_triangle(&st, &idx).unwrap();
        assert!(r.passes(), "{r:?}");
    }
}

//! S_N: sequences of E/N isomorphic to images of conflations, and the Weak
//! Five Lemma.
//!
//! Every object is stably isomorphic to its reduction (generator summands
//! removed), and two objects are stably isomorphic iff their reductions agree.
//! So a sequence is in S_N iff its reduced form matches the reduced form of
//! some conflation up to stable automorphisms of the three reduced terms.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::Result;
use crate::exact::axioms::{mat_rows, AxiomVerdict, Counterexample, Status};
use crate::exact::table::for_each_category_conflation;
use crate::exact::Conflation;
use crate::gf::Mat;
use crate::quotient::QuotientContext;
use crate::rep::universe::MultVec;

/// Reduced shape of a conflation: its three reduced terms.
pub type Shape = (MultVec, MultVec, MultVec);

/// A reduced conflation image `xr -> yr -> zr` with its source conflation.
#[derive(Clone, Debug)]
pub struct ReducedImage {
    pub f: Mat,
    pub g: Mat,
    pub source: Conflation,
}

/// All conflation images of a structure, grouped by reduced shape and
/// deduplicated up to equality in E/N.
pub struct SnIndex {
    images: BTreeMap<Shape, Vec<ReducedImage>>,
    pub conflations: usize,
    pub inconclusive: Vec<String>,
    autos: RefCell<HashMap<MultVec, Rc<Vec<Mat>>>>,
}

/// Reduces `x -f-> y -g-> z` to maps between the reduced terms.
pub fn reduce_sequence(q: &QuotientContext, x: &[usize], y: &[usize], z: &[usize], f: &Mat, g: &Mat) -> (Shape, Mat, Mat) {
    let (xr, ix, _) = q.reduction(x);
    let (yr, iy, py) = q.reduction(y);
    let (zr, _, pz) = q.reduction(z);
    let fr = py.mul(f).mul(&ix);
    let gr = pz.mul(g).mul(&iy);
    ((xr, yr, zr), fr, gr)
}

impl SnIndex {
    pub fn build(q: &QuotientContext) -> Result<SnIndex> {
        let mut images: BTreeMap<Shape, Vec<ReducedImage>> = BTreeMap::new();
        let mut seen: BTreeSet<(Shape, Vec<u32>, Vec<u32>)> = BTreeSet::new();
        let mut conflations = 0;
        let inconclusive = for_each_category_conflation(q.ctx, q.structure, |c| {
            conflations += 1;
            let (shape, fr, gr) = reduce_sequence(q, &c.x, &c.y, &c.z, &c.f, &c.g);
            let kf = q.stable_coords(&shape.0, &shape.1, &fr);
            let kg = q.stable_coords(&shape.1, &shape.2, &gr);
            if seen.insert((shape.clone(), kf, kg)) {
                images.entry(shape).or_default().push(ReducedImage {
                    f: fr,
                    g: gr,
                    source: c.clone(),
                });
            }
            Ok(true)
        })?;
        Ok(SnIndex {
            images,
            conflations,
            inconclusive,
            autos: RefCell::new(HashMap::new()),
        })
    }

    pub fn shapes(&self) -> impl Iterator<Item = &Shape> {
        self.images.keys()
    }

    pub fn images(&self, shape: &Shape) -> &[ReducedImage] {
        self.images.get(shape).map_or(&[], |v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.images.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    fn automorphisms(&self, q: &QuotientContext, m: &[usize]) -> Result<Rc<Vec<Mat>>> {
        if let Some(a) = self.autos.borrow().get(m) {
            return Ok(a.clone());
        }
        let a = Rc::new(q.stable_automorphisms(m)?);
        self.autos.borrow_mut().insert(m.to_vec(), a.clone());
        Ok(a)
    }

    /// Decides whether `x -f-> y -g-> z` lies in S_N.
    pub fn contains(&self, q: &QuotientContext, x: &[usize], y: &[usize], z: &[usize], f: &Mat, g: &Mat) -> Result<bool> {
        let (shape, fr, gr) = reduce_sequence(q, x, y, z, f, g);
        self.contains_reduced(q, &shape, &fr, &gr)
    }

    /// Same as [`SnIndex::contains`] for an already reduced sequence.
    pub fn contains_reduced(&self, q: &QuotientContext, shape: &Shape, fr: &Mat, gr: &Mat) -> Result<bool> {
        let cands = self.images(shape);
        if cands.is_empty() {
            return Ok(false);
        }
        let (xr, yr, zr) = shape;
        let autos = self.automorphisms(q, yr)?;
        for c in cands {
            for phi2 in autos.iter() {
                // φ2 fr ≡ f' φ1 and φ3 gr ≡ g' φ2 with φ1, φ3 stable isos
                let t1 = q.stable_coords(xr, yr, &phi2.mul(fr));
                let Some((p1, k1)) = q.solve_stable(xr, xr, |m| q.stable_coords(xr, yr, &c.f.mul(m)), &t1)? else {
                    continue;
                };
                if q.find_iso(xr, xr, &p1, &k1)?.is_none() {
                    continue;
                }
                let t3 = q.stable_coords(yr, zr, &c.g.mul(phi2));
                let Some((p3, k3)) = q.solve_stable(zr, zr, |m| q.stable_coords(yr, zr, &m.mul(gr)), &t3)? else {
                    continue;
                };
                if q.find_iso(zr, zr, &p3, &k3)?.is_some() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Which exact-category axioms S_N happens to satisfy on E/N. Only the
/// axioms checkable on stable classes are tested; nothing is asserted.
#[derive(Clone, Debug, Serialize)]
pub struct SnAxiomProbe {
    pub n: String,
    /// `x = x -> 0` and `0 -> x = x` lie in S_N
    pub ex0: AxiomVerdict,
    /// `x -> x ⊕ z -> z` lies in S_N
    pub split: AxiomVerdict,
    pub not_checked: Vec<String>,
}

fn probe_verdict(name: &str, checked: usize, inconclusive: Vec<String>, counterexample: Option<Counterexample>) -> AxiomVerdict {
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
        note: inconclusive.into_iter().next(),
    }
}

pub fn probe_sn_axioms(q: &QuotientContext, index: &SnIndex) -> Result<SnAxiomProbe> {
    let u = &q.ctx.universe;
    let fld = u.algebra().field();
    let zero = u.zero_vec();
    let classes = q.stable_classes();
    let ce = |objs: [&MultVec; 3], f: &Mat, g: &Mat| Counterexample {
        objects: objs.iter().map(|m| u.name(m)).collect(),
        matrices: vec![mat_rows(f), mat_rows(g)],
    };

    let (mut checked, mut inconclusive, mut counterexample) = (0, Vec::new(), None);
    'ex0: for x in &classes {
        let (id, d) = (Mat::identity(fld, u.dim_of(x)), u.dim_of(x));
        let cases = [
            ((x.clone(), x.clone(), zero.clone()), id.clone(), Mat::zeros(fld, 0, d)),
            ((zero.clone(), x.clone(), x.clone()), Mat::zeros(fld, d, 0), id),
        ];
        for (shape, f, g) in cases {
            checked += 1;
            match index.contains_reduced(q, &shape, &f, &g) {
                Ok(true) => {}
                Ok(false) => {
                    counterexample = Some(ce([&shape.0, &shape.1, &shape.2], &f, &g));
                    break 'ex0;
                }
                Err(e) if e.is_inconclusive() => inconclusive.push(format!("{}: {e}", u.name(x))),
                Err(e) => return Err(e),
            }
        }
    }
    let ex0 = probe_verdict("Ex0", checked, inconclusive, counterexample);

    let (mut checked, mut inconclusive, mut counterexample) = (0, Vec::new(), None);
    'split: for x in &classes {
        for z in &classes {
            let y = u.add(x, z);
            if !u.in_bound(&y) {
                continue;
            }
            let (ix, _, _, pz) = u.sum_maps(x, z);
            checked += 1;
            match index.contains(q, x, &y, z, &ix, &pz) {
                Ok(true) => {}
                Ok(false) => {
                    counterexample = Some(ce([x, &y, z], &ix, &pz));
                    break 'split;
                }
                Err(e) if e.is_inconclusive() => inconclusive.push(format!("{} + {}: {e}", u.name(x), u.name(z))),
                Err(e) => return Err(e),
            }
        }
    }
    let split = probe_verdict("split", checked, inconclusive, counterexample);
    Ok(SnAxiomProbe {
        n: q.label().to_string(),
        ex0,
        split,
        not_checked: vec!["Ex1".into(), "Ex1op".into(), "Ex2".into(), "Ex2op".into()],
    })
}

/// Builds the index and decides membership of one sequence.
pub fn sn_membership(q: &QuotientContext, x: &[usize], y: &[usize], z: &[usize], f: &Mat, g: &Mat) -> Result<bool> {
    SnIndex::build(q)?.contains(q, x, y, z, f, g)
}

#[derive(Clone, Debug, Serialize)]
pub struct W5lReport {
    pub n: String,
    pub conflations: usize,
    pub clause_i: AxiomVerdict,
    pub clause_ii: AxiomVerdict,
}

impl W5lReport {
    pub fn passes(&self) -> bool {
        self.clause_i.status == Status::Pass && self.clause_ii.status == Status::Pass
    }
}

/// Clause (i): a morphism from an S_N sequence `X -> Y -> Z` to one ending in
/// 0 with isomorphisms on the first two terms exists iff `X -u-> Y -> 0` lies
/// in S_N, which must force `Z ≅ 0`. Clause (ii) is dual. Both sides are
/// invariant under isomorphism of sequences, so images of conflations suffice.
///
/// `X -u-> Y -> 0` lies in S_N when `u` is stably invertible, and only then
/// unless some conflation with stably zero end has a non-invertible first
/// map; in that case membership is searched directly.
pub fn check_weak_five_lemma(q: &QuotientContext) -> Result<W5lReport> {
    let index = SnIndex::build(q)?;
    let clause_i = check_clause(q, &index, true)?;
    let clause_ii = check_clause(q, &index, false)?;
    Ok(W5lReport {
        n: q.label().to_string(),
        conflations: index.conflations,
        clause_i,
        clause_ii,
    })
}

fn check_clause(q: &QuotientContext, index: &SnIndex, first: bool) -> Result<AxiomVerdict> {
    let u = &q.ctx.universe;
    let fld = u.algebra().field();
    let zero = u.zero_vec();
    // the map kept by the degenerate sequence, its ends and the dropped term
    let parts = |shape: &Shape, img: &ReducedImage| -> (MultVec, MultVec, Mat, MultVec) {
        let (xr, yr, zr) = shape.clone();
        if first {
            (xr, yr, img.f.clone(), zr)
        } else {
            (yr, zr, img.g.clone(), xr)
        }
    };
    let mut anomalies = 0;
    for (shape, images) in &index.images {
        for img in images {
            let (a, b, m, dropped) = parts(shape, img);
            if q.is_stably_zero(&dropped) && !q.stable_is_iso(&a, &b, &m)? {
                anomalies += 1;
            }
        }
    }
    let member = |a: &MultVec, b: &MultVec, m: &Mat| -> Result<bool> {
        if first {
            let z0 = Mat::zeros(fld, 0, u.dim_of(b));
            index.contains_reduced(q, &(a.clone(), b.clone(), zero.clone()), m, &z0)
        } else {
            let z0 = Mat::zeros(fld, u.dim_of(a), 0);
            index.contains_reduced(q, &(zero.clone(), a.clone(), b.clone()), &z0, m)
        }
    };
    let mut checked = 0;
    let mut inconclusive: Vec<String> = index.inconclusive.clone();
    let mut counterexample = None;
    let mut memo: BTreeSet<(MultVec, MultVec, Vec<u32>)> = BTreeSet::new();
    'outer: for (shape, images) in &index.images {
        for img in images {
            let (a, b, m, dropped) = parts(shape, img);
            if q.is_stably_zero(&dropped) {
                continue;
            }
            checked += 1;
            let violated = if q.stable_is_iso(&a, &b, &m)? {
                member(&a, &b, &m)
            } else if anomalies > 0 {
                let key = (a.clone(), b.clone(), q.stable_coords(&a, &b, &m));
                if memo.contains(&key) {
                    continue;
                }
                let r = member(&a, &b, &m);
                if let Ok(false) = r {
                    memo.insert(key);
                }
                r
            } else {
                Ok(false)
            };
            match violated {
                Ok(false) => {}
                Ok(true) => {
                    let s = &img.source;
                    counterexample = Some(Counterexample {
                        objects: vec![u.name(&s.x), u.name(&s.y), u.name(&s.z)],
                        matrices: vec![mat_rows(&s.f), mat_rows(&s.g)],
                    });
                    break 'outer;
                }
                Err(e) if e.is_inconclusive() => {
                    inconclusive.push(format!("{} -> {} -> {}: {e}", u.name(&shape.0), u.name(&shape.1), u.name(&shape.2)))
                }
                Err(e) => return Err(e),
            }
        }
    }
    let status = if counterexample.is_some() {
        Status::Fail
    } else if inconclusive.is_empty() {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    Ok(AxiomVerdict {
        axiom: if first { "W5L(i)" } else { "W5L(ii)" }.to_string(),
        status,
        checked,
        inconclusive: inconclusive.len(),
        counterexample,
        note: (anomalies > 0).then(|| format!("{anomalies} degenerate images with a non-invertible map; searched directly")),
    })
}

//! Checks of the exact-category axioms on the bounded universe.
//!
//! Morphisms are enumerated between test objects: 0 and the indecomposables
//! of the category (all category objects when it is not closed under
//! summands). Admissible maps on the other side of a composite or a base
//! change range over conflation representatives with arbitrary universe ends.

use serde::Serialize;

use crate::error::Result;
use crate::exact::{Context, ExactStructure, Conflation};
use crate::gf::Mat;
use crate::rep::module::{pullback, pushout};
use crate::rep::universe::{MultVec, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub objects: Vec<String>,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub status: Status,
    pub checked: usize,
    pub inconclusive: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub structure: String,
    pub test_objects: Vec<String>,
    pub verdicts: Vec<AxiomVerdict>,
}

impl AxiomReport {
    pub fn get(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status == Status::Pass)
    }
}

pub fn mat_rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

fn example(u: &Universe, objs: &[&[usize]], mats: &[&Mat]) -> Counterexample {
    Counterexample {
        objects: objs.iter().map(|o| u.name(o)).collect(),
        matrices: mats.iter().map(|m| mat_rows(m)).collect(),
    }
}

struct Tally {
    axiom: &'static str,
    checked: usize,
    inconclusive: usize,
    note: Option<String>,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(axiom: &'static str) -> Tally {
        Tally {
            axiom,
            checked: 0,
            inconclusive: 0,
            note: None,
            counterexample: None,
        }
    }

    /// Records one check; returns false once a counterexample is known.
    fn record(&mut self, r: Result<bool>, ce: impl FnOnce() -> Counterexample) -> Result<bool> {
        match r {
            Ok(true) => self.checked += 1,
            Ok(false) => {
                self.checked += 1;
                self.counterexample = Some(ce());
                return Ok(false);
            }
            Err(e) if e.is_inconclusive() => {
                self.inconclusive += 1;
                if self.note.is_none() {
                    self.note = Some(e.to_string());
                }
            }
            Err(e) => return Err(e),
        }
        Ok(true)
    }

    /// Enumeration failures (cap) make the whole verdict inconclusive.
    fn absorb(&mut self, r: Result<bool>) -> Result<()> {
        match r {
            Err(e) if e.is_inconclusive() => {
                self.inconclusive += 1;
                if self.note.is_none() {
                    self.note = Some(e.to_string());
                }
                Ok(())
            }
            Err(e) => Err(e),
            Ok(_) => Ok(()),
        }
    }

    fn finish(self) -> AxiomVerdict {
        let status = if self.counterexample.is_some() {
            Status::Fail
        } else if self.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        AxiomVerdict {
            axiom: self.axiom.to_string(),
            status,
            checked: self.checked,
            inconclusive: self.inconclusive,
            counterexample: self.counterexample,
            note: self.note,
        }
    }
}

/// 0 plus the indecomposable objects of the category, or every category
/// object if the category is not closed under summands.
pub fn test_objects(u: &Universe, s: &dyn ExactStructure) -> Vec<MultVec> {
    let cat: Vec<&MultVec> = u.objects().iter().filter(|m| s.in_category(u, m)).collect();
    let closed = cat.iter().all(|m| {
        (0..m.len()).all(|i| {
            if m[i] == 0 {
                return true;
            }
            let mut v = (*m).clone();
            v[i] -= 1;
            s.in_category(u, &v)
        })
    });
    if closed {
        cat.into_iter().filter(|m| m.iter().sum::<usize>() <= 1).cloned().collect()
    } else {
        cat.into_iter().cloned().collect()
    }
}

fn category(u: &Universe, s: &dyn ExactStructure) -> Vec<MultVec> {
    u.objects().iter().filter(|m| s.in_category(u, m)).cloned().collect()
}

fn admissible_epis(ctx: &Context, s: &dyn ExactStructure, b: &[usize], c: &[usize]) -> Result<Vec<Mat>> {
    let mut out = Vec::new();
    ctx.universe.for_each_hom(b, c, |g| {
        if g.rank() == g.rows() && s.is_admissible_epi(ctx, b, c, &g)? {
            out.push(g);
        }
        Ok(true)
    })?;
    Ok(out)
}

fn admissible_monos(ctx: &Context, s: &dyn ExactStructure, a: &[usize], b: &[usize]) -> Result<Vec<Mat>> {
    let mut out = Vec::new();
    ctx.universe.for_each_hom(a, b, |f| {
        if f.rank() == f.cols() && s.is_admissible_mono(ctx, a, b, &f)? {
            out.push(f);
        }
        Ok(true)
    })?;
    Ok(out)
}

/// Conflation representatives with fixed first or last term.
fn reps_ending_at(ctx: &Context, s: &dyn ExactStructure, cat: &[MultVec], z: &[usize]) -> Result<Vec<Conflation>> {
    let mut out = Vec::new();
    for x in cat {
        s.for_each_conflation(ctx, x, z, &mut |c| {
            out.push(c);
            Ok(true)
        })?;
    }
    Ok(out)
}

fn reps_starting_at(ctx: &Context, s: &dyn ExactStructure, cat: &[MultVec], x: &[usize]) -> Result<Vec<Conflation>> {
    let mut out = Vec::new();
    for z in cat {
        s.for_each_conflation(ctx, x, z, &mut |c| {
            out.push(c);
            Ok(true)
        })?;
    }
    Ok(out)
}

fn check_ex0(ctx: &Context, s: &dyn ExactStructure) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let f = u.algebra().field();
    let z = u.zero_vec();
    let c = Conflation {
        x: z.clone(),
        y: z.clone(),
        z: z.clone(),
        f: Mat::zeros(f, 0, 0),
        g: Mat::zeros(f, 0, 0),
    };
    let mut t = Tally::new("Ex0");
    t.record(s.admits(ctx, &c), || example(u, &[&z, &z, &z], &[&c.f, &c.g]))?;
    Ok(t.finish())
}

fn check_ex1(ctx: &Context, s: &dyn ExactStructure, tests: &[MultVec], cat: &[MultVec]) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let mut t = Tally::new("Ex1");
    'outer: for b in tests {
        let reps = match reps_ending_at(ctx, s, cat, b) {
            Ok(r) => r,
            Err(e) => {
                t.absorb(Err(e))?;
                continue;
            }
        };
        for c in tests {
            let epis = match admissible_epis(ctx, s, b, c) {
                Ok(e) => e,
                Err(e) => {
                    t.absorb(Err(e))?;
                    continue;
                }
            };
            for g2 in &reps {
                for g1 in &epis {
                    let comp = g1.mul(&g2.g);
                    let r = s.is_admissible_epi(ctx, &g2.y, c, &comp);
                    if !t.record(r, || example(u, &[&g2.y, b, c], &[&g2.g, g1]))? {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

fn check_ex1op(ctx: &Context, s: &dyn ExactStructure, tests: &[MultVec], cat: &[MultVec]) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let mut t = Tally::new("Ex1op");
    'outer: for b in tests {
        let reps = match reps_starting_at(ctx, s, cat, b) {
            Ok(r) => r,
            Err(e) => {
                t.absorb(Err(e))?;
                continue;
            }
        };
        for a in tests {
            let monos = match admissible_monos(ctx, s, a, b) {
                Ok(m) => m,
                Err(e) => {
                    t.absorb(Err(e))?;
                    continue;
                }
            };
            for f2 in &reps {
                for f1 in &monos {
                    let comp = f2.f.mul(f1);
                    let r = s.is_admissible_mono(ctx, a, &f2.y, &comp);
                    if !t.record(r, || example(u, &[a, b, &f2.y], &[f1, &f2.f]))? {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

fn check_ex2(ctx: &Context, s: &dyn ExactStructure, tests: &[MultVec], cat: &[MultVec]) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let mut t = Tally::new("Ex2");
    'outer: for c in tests {
        let reps = match reps_ending_at(ctx, s, cat, c) {
            Ok(r) => r,
            Err(e) => {
                t.absorb(Err(e))?;
                continue;
            }
        };
        for c2 in tests {
            for conf in &reps {
                let bmod = u.module_of(&conf.y);
                let c2mod = u.module_of(c2);
                let mut stop = false;
                let r = u.for_each_hom(c2, c, |h| {
                    let r = (|| -> Result<bool> {
                        let (pb, g2, _) = pullback(&bmod, &c2mod, &conf.g, &h)?;
                        let (pv, tm) = u.normalize(&pb)?;
                        let g2 = g2.mul(&tm.inverse().expect("normalize returns an isomorphism"));
                        s.is_admissible_epi(ctx, &pv, c2, &g2)
                    })();
                    if !t.record(r, || example(u, &[&conf.y, c, c2], &[&conf.g, &h]))? {
                        stop = true;
                        return Ok(false);
                    }
                    Ok(true)
                });
                t.absorb(r)?;
                if stop {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

fn check_ex2op(ctx: &Context, s: &dyn ExactStructure, tests: &[MultVec], cat: &[MultVec]) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let mut t = Tally::new("Ex2op");
    'outer: for a in tests {
        let reps = match reps_starting_at(ctx, s, cat, a) {
            Ok(r) => r,
            Err(e) => {
                t.absorb(Err(e))?;
                continue;
            }
        };
        for a2 in tests {
            for conf in &reps {
                let bmod = u.module_of(&conf.y);
                let a2mod = u.module_of(a2);
                let mut stop = false;
                let r = u.for_each_hom(a, a2, |h| {
                    let r = (|| -> Result<bool> {
                        let (po, f2, _) = pushout(&bmod, &a2mod, &conf.f, &h)?;
                        let (qv, tm) = u.normalize(&po)?;
                        s.is_admissible_mono(ctx, a2, &qv, &tm.mul(&f2))
                    })();
                    if !t.record(r, || example(u, &[a, &conf.y, a2], &[&conf.f, &h]))? {
                        stop = true;
                        return Ok(false);
                    }
                    Ok(true)
                });
                t.absorb(r)?;
                if stop {
                    break 'outer;
                }
            }
        }
    }
    Ok(t.finish())
}

fn check_split(ctx: &Context, s: &dyn ExactStructure, cat: &[MultVec]) -> Result<AxiomVerdict> {
    let u = &ctx.universe;
    let mut t = Tally::new("split");
    'outer: for a in cat {
        for c in cat {
            let y = u.add(a, c);
            if !u.in_bound(&y) || !s.in_category(u, &y) {
                continue;
            }
            let (ia, _, _, pc) = u.sum_maps(a, c);
            let conf = Conflation {
                x: a.clone(),
                y: y.clone(),
                z: c.clone(),
                f: ia,
                g: pc,
            };
            if !t.record(s.admits(ctx, &conf), || example(u, &[a, &y, c], &[&conf.f, &conf.g]))? {
                break 'outer;
            }
        }
    }
    Ok(t.finish())
}

fn check_listed(ctx: &Context, list: &[Conflation]) -> AxiomVerdict {
    let u = &ctx.universe;
    let mut t = Tally::new("kernel-cokernel");
    for c in list {
        let ok = crate::exact::is_kernel_cokernel_pair(&c.f, &c.g)
            && u.hom_coords(&c.x, &c.y, &c.f).is_some()
            && u.hom_coords(&c.y, &c.z, &c.g).is_some();
        t.checked += 1;
        if !ok {
            t.counterexample = Some(example(u, &[&c.x, &c.y, &c.z], &[&c.f, &c.g]));
            break;
        }
    }
    t.finish()
}

/// Runs every axiom check. A listed structure whose members are not all
/// kernel-cokernel pairs reports that failure and skips the rest.
pub fn verify_exact_axioms(ctx: &Context, s: &dyn ExactStructure) -> Result<AxiomReport> {
    let u = &ctx.universe;
    let tests = test_objects(u, s);
    let cat = category(u, s);
    let mut verdicts = Vec::new();
    if let Some(list) = s.listed() {
        let v = check_listed(ctx, list);
        let failed = v.status == Status::Fail;
        verdicts.push(v);
        if failed {
            return Ok(AxiomReport {
                structure: s.name(),
                test_objects: tests.iter().map(|m| u.name(m)).collect(),
                verdicts,
            });
        }
    }
    verdicts.push(check_ex0(ctx, s)?);
    verdicts.push(check_ex1(ctx, s, &tests, &cat)?);
    verdicts.push(check_ex1op(ctx, s, &tests, &cat)?);
    verdicts.push(check_ex2(ctx, s, &tests, &cat)?);
    verdicts.push(check_ex2op(ctx, s, &tests, &cat)?);
    verdicts.push(check_split(ctx, s, &cat)?);
    Ok(AxiomReport {
        structure: s.name(),
        test_objects: tests.iter().map(|m| u.name(m)).collect(),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Abelian, Explicit, Split};
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    fn ctx(name: &str, bound: usize) -> Context {
        Context::new(preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn abelian_and_split_pass_on_dual_numbers() {
        let c = ctx("xquot:2,2", 2);
        for s in [&Abelian as &dyn ExactStructure, &Split] {
            let r = verify_exact_axioms(&c, s).unwrap();
            assert!(r.all_pass(), "{}: {:?}", s.name(), r.verdicts);
            assert!(r.get("Ex2").unwrap().checked > 0);
        }
    }

    #[test]
    fn non_kc_member_is_named() {
        let c = ctx("xquot:2,2", 1);
        let u = &c.universe;
        let f = u.algebra().field();
        let m = vec![0, 1];
        let bad = Explicit::new(vec![Conflation {
            x: u.zero_vec(),
            y: m.clone(),
            z: m.clone(),
            f: Mat::zeros(f, 2, 0),
            g: Mat::zeros(f, 2, 2),
        }]);
        let r = verify_exact_axioms(&c, &bad).unwrap();
        let v = r.get("kernel-cokernel").unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.counterexample.as_ref().unwrap().objects, vec!["0", "M2", "M2"]);
    }

    #[test]
    fn zero_only_list_fails_split_membership() {
        let c = ctx("xquot:2,2", 1);
        let f = c.universe.algebra().field();
        let z = c.universe.zero_vec();
        let only_zero = Explicit::new(vec![Conflation {
            x: z.clone(),
            y: z.clone(),
            z,
            f: Mat::zeros(f, 0, 0),
            g: Mat::zeros(f, 0, 0),
        }]);
        let r = verify_exact_axioms(&c, &only_zero).unwrap();
        assert_eq!(r.get("Ex0").unwrap().status, Status::Pass);
        assert_eq!(r.get("split").unwrap().status, Status::Fail);
    }
}

//! Complete and thick subcategories on both sides of E -> E/N, their
//! lattices, the maps F and G, and the correspondence checks.
//!
//! Ambient subcategories are sets of category objects containing N, closed
//! under 2-out-of-3 along conflations with all terms in the universe.
//! Quotient subcategories are unions of stable classes, closed under
//! 2-out-of-3 along S_N sequences. Both are closure systems given by Horn
//! rules over a finite element set.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ConflationTable;
use crate::quotient::admissible::is_factorization_admissible;
use crate::quotient::sn::{check_weak_five_lemma, SnIndex};
use crate::quotient::QuotientContext;
use crate::rep::universe::{MultVec, ObjId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Ambient,
    Quotient,
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "ambient" => Ok(Side::Ambient),
            "stable" | "quotient" => Ok(Side::Quotient),
            _ => Err(Error::Unknown {
                kind: "side",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Complete,
    Thick,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "complete" => Ok(Kind::Complete),
            "thick" => Ok(Kind::Thick),
            _ => Err(Error::Unknown {
                kind: "kind",
                name: s.to_string(),
            }),
        }
    }
}

/// Horn rules `premises -> conclusion` over elements `0..n`.
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    n: usize,
    base: Vec<usize>,
    rules: Vec<(Vec<usize>, usize)>,
    by_premise: Vec<Vec<usize>>,
}

impl ClosureSystem {
    pub fn new(n: usize, base: Vec<usize>) -> ClosureSystem {
        ClosureSystem {
            n,
            base,
            rules: Vec::new(),
            by_premise: vec![Vec::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_rule(&mut self, premises: Vec<usize>, conclusion: usize) {
        let k = self.rules.len();
        for &p in &premises {
            self.by_premise[p].push(k);
        }
        self.rules.push((premises, conclusion));
    }

    /// Least closed superset of `gens` and the base.
    pub fn close(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &g in self.base.iter().chain(gens) {
            if !inside[g] {
                inside[g] = true;
                queue.push_back(g);
            }
        }
        while let Some(e) = queue.pop_front() {
            for &k in &self.by_premise[e] {
                let (prem, c) = &self.rules[k];
                if !inside[*c] && prem.iter().all(|&p| inside[p]) {
                    inside[*c] = true;
                    queue.push_back(*c);
                }
            }
        }
        inside
    }

    /// The first violated rule of `set`, if any.
    pub fn violation(&self, set: &[bool]) -> Option<&(Vec<usize>, usize)> {
        self.rules.iter().find(|(p, c)| !set[*c] && p.iter().all(|&x| set[x]))
    }

    pub fn is_closed(&self, set: &[bool]) -> bool {
        self.base.iter().all(|&b| set[b]) && self.violation(set).is_none()
    }

    /// All closed sets, smallest first: start from the closure of the base
    /// and repeatedly add one element and close. Stops after `limit` sets.
    pub fn enumerate(&self, limit: usize) -> (Vec<Vec<bool>>, bool) {
        let start = self.close(&[]);
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut complete = true;
        while let Some(s) = queue.pop_front() {
            for e in 0..self.n {
                if s[e] {
                    continue;
                }
                let mut gens: Vec<usize> = (0..self.n).filter(|&i| s[i]).collect();
                gens.push(e);
                let t = self.close(&gens);
                if !seen.contains(&t) {
                    if seen.len() >= limit {
                        complete = false;
                        continue;
                    }
                    seen.insert(t.clone());
                    queue.push_back(t);
                }
            }
        }
        let mut out: Vec<Vec<bool>> = seen.into_iter().collect();
        out.sort_by(|a, b| {
            let ka: Vec<usize> = (0..a.len()).filter(|&i| a[i]).collect();
            let kb: Vec<usize> = (0..b.len()).filter(|&i| b[i]).collect();
            (ka.len(), ka).cmp(&(kb.len(), kb))
        });
        (out, complete)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subcategory {
    pub side: Side,
    /// universe object ids, sorted
    pub members: Vec<ObjId>,
    pub complete: bool,
    pub thick: bool,
    pub contains_n: bool,
    pub extension_closed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Lattice {
    pub side: Side,
    pub kind: Kind,
    pub elements: Vec<Subcategory>,
    /// covering pairs `(smaller, larger)` as indices into `elements`
    pub edges: Vec<(usize, usize)>,
    /// false if the set-count limit cut the enumeration short
    pub exhaustive: bool,
}

/// A failed 2-out-of-3 or summand condition.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub rule: String,
    pub present: Vec<String>,
    pub missing: String,
}

/// Everything needed to close and compare subcategories on both sides.
pub struct SubcatContext<'q, 'a> {
    pub q: &'q QuotientContext<'a>,
    /// category objects in universe order; ambient elements index this
    pub objects: Vec<ObjId>,
    /// stable classes (reduced objects); quotient elements index this
    pub classes: Vec<MultVec>,
    /// per object index: its class index
    class_of: Vec<usize>,
    /// conflation triples with all terms in the universe, as object indices
    pub ambient_triples: Vec<[usize; 3]>,
    /// S_N shapes with all terms stable classes, as class indices
    pub quotient_triples: Vec<[usize; 3]>,
    n_elems: Vec<usize>,
    pub inconclusive: Vec<String>,
}

impl<'q, 'a> SubcatContext<'q, 'a> {
    pub fn new(q: &'q QuotientContext<'a>, table: &ConflationTable, index: &SnIndex) -> SubcatContext<'q, 'a> {
        let u = &q.ctx.universe;
        let objects = table.category.clone();
        let pos: BTreeMap<ObjId, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let classes: Vec<MultVec> = {
            let set: BTreeSet<MultVec> = objects.iter().map(|&o| q.reduce(u.object(o))).collect();
            let mut v: Vec<MultVec> = set.into_iter().collect();
            v.sort_by_key(|m| u.id_of(m));
            v
        };
        let cpos: BTreeMap<&MultVec, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let class_of = objects.iter().map(|&o| cpos[&q.reduce(u.object(o))]).collect();
        let ambient_triples = table.triples().into_iter().map(|(x, y, z)| [pos[&x], pos[&y], pos[&z]]).collect();
        let quotient_triples = index
            .shapes()
            .filter_map(|(x, y, z)| Some([*cpos.get(x)?, *cpos.get(y)?, *cpos.get(z)?]))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n_elems = objects
            .iter()
            .enumerate()
            .filter(|(_, &o)| q.members().contains(u.object(o)))
            .map(|(i, _)| i)
            .collect();
        let mut inconclusive: Vec<String> = table
            .inconclusive_cells()
            .into_iter()
            .map(|(x, z, m)| format!("({}, {}): {m}", u.name_of(x), u.name_of(z)))
            .collect();
        inconclusive.extend(index.inconclusive.iter().cloned());
        SubcatContext {
            q,
            objects,
            classes,
            class_of,
            ambient_triples,
            quotient_triples,
            n_elems,
            inconclusive,
        }
    }

    fn elements(&self, side: Side) -> usize {
        match side {
            Side::Ambient => self.objects.len(),
            Side::Quotient => self.classes.len(),
        }
    }

    fn elem_name(&self, side: Side, e: usize) -> String {
        let u = &self.q.ctx.universe;
        match side {
            Side::Ambient => u.name_of(self.objects[e]),
            Side::Quotient => u.name(&self.classes[e]),
        }
    }

    /// Rules for `kind` on `side`; `extension` keeps only the rule putting
    /// middle terms in.
    fn system(&self, side: Side, kind: Kind, extension: bool) -> ClosureSystem {
        let u = &self.q.ctx.universe;
        let n = self.elements(side);
        let zero = match side {
            Side::Ambient => self.objects.iter().position(|&o| o == u.zero_id()),
            Side::Quotient => self.classes.iter().position(|c| c.iter().all(|&k| k == 0)),
        };
        let mut base: Vec<usize> = zero.into_iter().collect();
        if side == Side::Ambient {
            base.extend(self.n_elems.iter().copied());
        }
        base.sort_unstable();
        base.dedup();
        let mut sys = ClosureSystem::new(n, base);
        let triples = match side {
            Side::Ambient => &self.ambient_triples,
            Side::Quotient => &self.quotient_triples,
        };
        for &[x, y, z] in triples {
            sys.add_rule(vec![x, z], y);
            if !extension {
                sys.add_rule(vec![x, y], z);
                sys.add_rule(vec![y, z], x);
            }
        }
        if kind == Kind::Thick && !extension {
            for m in 0..n {
                for s in 0..n {
                    if s == m {
                        continue;
                    }
                    let summand = match side {
                        Side::Ambient => u.is_summand(u.object(self.objects[s]), u.object(self.objects[m])),
                        Side::Quotient => u.is_summand(&self.classes[s], &self.classes[m]),
                    };
                    if summand {
                        sys.add_rule(vec![m], s);
                    }
                }
            }
        }
        sys
    }

    /// Element set of a member list; `None` on the quotient side if the
    /// members are not a union of stable classes.
    fn to_elems(&self, side: Side, members: &[ObjId]) -> Option<Vec<bool>> {
        let pos: BTreeMap<ObjId, usize> = self.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let idx: Vec<usize> = members.iter().filter_map(|o| pos.get(o).copied()).collect();
        if idx.len() != members.len() {
            return None;
        }
        match side {
            Side::Ambient => {
                let mut s = vec![false; self.objects.len()];
                for i in idx {
                    s[i] = true;
                }
                Some(s)
            }
            Side::Quotient => {
                let mut s = vec![false; self.classes.len()];
                for &i in &idx {
                    s[self.class_of[i]] = true;
                }
                let expanded = self.expand(side, &s);
                (expanded == members).then_some(s)
            }
        }
    }

    fn expand(&self, side: Side, set: &[bool]) -> Vec<ObjId> {
        match side {
            Side::Ambient => (0..self.objects.len()).filter(|&i| set[i]).map(|i| self.objects[i]).collect(),
            Side::Quotient => (0..self.objects.len())
                .filter(|&i| set[self.class_of[i]])
                .map(|i| self.objects[i])
                .collect(),
        }
    }

    fn make(&self, side: Side, set: &[bool]) -> Subcategory {
        let complete = self.system(side, Kind::Complete, false).is_closed(set);
        let thick = complete && self.system(side, Kind::Thick, false).is_closed(set);
        let extension_closed = self.system(side, Kind::Complete, true).is_closed(set);
        let members = self.expand(side, set);
        let u = &self.q.ctx.universe;
        let contains_n = self.q.members().iter().all(|m| u.id_of(m).map_or(false, |id| members.contains(&id)));
        Subcategory {
            side,
            members,
            complete,
            thick,
            contains_n,
            extension_closed,
        }
    }

    /// Subcategory with the given members, flags recomputed. On the
    /// quotient side the members must form a union of stable classes.
    pub fn subcategory(&self, side: Side, members: &[ObjId]) -> Result<Subcategory> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        let set = self.to_elems(side, &m).ok_or_else(|| {
            Error::Precondition("members are not a union of stable classes of category objects".into())
        })?;
        Ok(self.make(side, &set))
    }

    /// Least closed subcategory containing `gens` (and N on the ambient side).
    pub fn closure(&self, gens: &[ObjId], kind: Kind, side: Side) -> Result<Subcategory> {
        let pos: BTreeMap<ObjId, usize> = self.objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut elems = Vec::new();
        for g in gens {
            let i = *pos.get(g).ok_or_else(|| Error::Precondition(format!("object {g} is not in the category")))?;
            elems.push(match side {
                Side::Ambient => i,
                Side::Quotient => self.class_of[i],
            });
        }
        let set = self.system(side, kind, false).close(&elems);
        Ok(self.make(side, &set))
    }

    /// The first violated condition of `kind`, if any.
    pub fn check(&self, d: &Subcategory, kind: Kind) -> Result<Option<Violation>> {
        let set = self
            .to_elems(d.side, &d.members)
            .ok_or_else(|| Error::Precondition("members are not a union of stable classes".into()))?;
        let sys = self.system(d.side, kind, false);
        if let Some(&b) = sys.base.iter().find(|&&b| !set[b]) {
            return Ok(Some(Violation {
                rule: "base".into(),
                present: Vec::new(),
                missing: self.elem_name(d.side, b),
            }));
        }
        Ok(sys.violation(&set).map(|(p, c)| Violation {
            rule: if p.len() == 1 { "summand" } else { "2-out-of-3" }.into(),
            present: p.iter().map(|&e| self.elem_name(d.side, e)).collect(),
            missing: self.elem_name(d.side, *c),
        }))
    }

    pub fn is_complete(&self, d: &Subcategory) -> Result<Option<Violation>> {
        self.check(d, Kind::Complete)
    }

    pub fn is_thick(&self, d: &Subcategory) -> Result<Option<Violation>> {
        self.check(d, Kind::Thick)
    }

    pub fn enumerate_closed(&self, kind: Kind, side: Side, limit: usize) -> Lattice {
        let sys = self.system(side, kind, false);
        let (sets, exhaustive) = sys.enumerate(limit);
        let elements: Vec<Subcategory> = sets.iter().map(|s| self.make(side, s)).collect();
        let subset = |a: &[bool], b: &[bool]| a.iter().zip(b).all(|(x, y)| !x || *y);
        let mut edges = Vec::new();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i == j || !subset(&sets[i], &sets[j]) {
                    continue;
                }
                let covered = (0..sets.len())
                    .any(|k| k != i && k != j && subset(&sets[i], &sets[k]) && subset(&sets[k], &sets[j]));
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        Lattice {
            side,
            kind,
            elements,
            edges,
            exhaustive,
        }
    }

    /// F D: the same objects, viewed in E/N.
    pub fn map_f(&self, d: &Subcategory) -> Result<Subcategory> {
        if d.side != Side::Ambient {
            return Err(Error::Precondition("F takes an ambient subcategory".into()));
        }
        if !d.contains_n {
            return Err(Error::Precondition("F needs a subcategory containing N".into()));
        }
        self.subcategory(Side::Quotient, &d.members)
    }

    /// G E': the objects of E' together with N.
    pub fn map_g(&self, e: &Subcategory) -> Result<Subcategory> {
        if e.side != Side::Quotient {
            return Err(Error::Precondition("G takes a quotient subcategory".into()));
        }
        let u = &self.q.ctx.universe;
        let mut m: BTreeSet<ObjId> = e.members.iter().copied().collect();
        m.extend(self.q.members().iter().filter_map(|x| u.id_of(x)));
        self.subcategory(Side::Ambient, &m.into_iter().collect::<Vec<_>>())
    }

    pub fn label(&self, d: &Subcategory) -> String {
        let u = &self.q.ctx.universe;
        let ind: Vec<String> = d
            .members
            .iter()
            .filter(|&&o| u.object(o).iter().sum::<usize>() == 1)
            .map(|&o| u.name_of(o))
            .collect();
        format!("{{{}}} |{}|", ind.join(","), d.members.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremStatus {
    Verified,
    VerifiedModuloFlagged,
    Failed,
    Refused,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchedPair {
    pub ambient: String,
    pub quotient: String,
    pub ambient_members: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub kind: Kind,
    pub n: String,
    pub status: TheoremStatus,
    pub hypotheses: Vec<Hypothesis>,
    pub ambient_count: usize,
    pub quotient_count: usize,
    pub pairs: Vec<MatchedPair>,
    pub failures: Vec<String>,
    pub inconclusive: Vec<String>,
}

/// Hypotheses of the complete-subcategory correspondence.
pub fn complete_hypotheses(q: &QuotientContext) -> Result<Vec<Hypothesis>> {
    let fa = is_factorization_admissible(q)?;
    let w5l = check_weak_five_lemma(q)?;
    Ok(vec![
        Hypothesis {
            name: "factorization admissible".into(),
            holds: fa.admissible,
        },
        Hypothesis {
            name: "weak five lemma".into(),
            holds: w5l.passes(),
        },
    ])
}

/// Enumerates both lattices and checks that F and G land in them and are
/// mutually inverse.
pub fn verify_correspondence(sc: &SubcatContext, kind: Kind, limit: usize) -> Result<TheoremReport> {
    let q = sc.q;
    let u = &q.ctx.universe;
    let hypotheses = match kind {
        Kind::Thick => vec![Hypothesis {
            name: "N closed under sums".into(),
            holds: true,
        }],
        Kind::Complete => complete_hypotheses(q)?,
    };
    let mut report = TheoremReport {
        kind,
        n: q.label().to_string(),
        status: TheoremStatus::Refused,
        hypotheses,
        ambient_count: 0,
        quotient_count: 0,
        pairs: Vec::new(),
        failures: Vec::new(),
        inconclusive: sc.inconclusive.clone(),
    };
    if report.hypotheses.iter().any(|h| !h.holds) {
        return Ok(report);
    }
    let amb = sc.enumerate_closed(kind, Side::Ambient, limit);
    let quo = sc.enumerate_closed(kind, Side::Quotient, limit);
    if !amb.exhaustive || !quo.exhaustive {
        report.inconclusive.push(format!("lattice enumeration stopped at {limit} sets"));
    }
    report.ambient_count = amb.elements.len();
    report.quotient_count = quo.elements.len();
    let quo_index: BTreeMap<&Vec<ObjId>, usize> = quo.elements.iter().enumerate().map(|(i, e)| (&e.members, i)).collect();
    let amb_index: BTreeMap<&Vec<ObjId>, usize> = amb.elements.iter().enumerate().map(|(i, e)| (&e.members, i)).collect();
    let mut hit = vec![false; quo.elements.len()];
    for d in &amb.elements {
        let fd = match sc.map_f(d) {
            Ok(fd) => fd,
            Err(Error::Precondition(m)) => {
                report.failures.push(format!("F {}: {m}", sc.label(d)));
                continue;
            }
            Err(e) => return Err(e),
        };
        let Some(&j) = quo_index.get(&fd.members) else {
            report.failures.push(format!("F {} is not in the quotient lattice", sc.label(d)));
            continue;
        };
        hit[j] = true;
        let gfd = sc.map_g(&fd)?;
        if gfd.members != d.members {
            report.failures.push(format!("G F {} = {}", sc.label(d), sc.label(&gfd)));
        }
        report.pairs.push(MatchedPair {
            ambient: sc.label(d),
            quotient: sc.label(&fd),
            ambient_members: d.members.iter().map(|&o| u.name_of(o)).collect(),
        });
    }
    for (j, e) in quo.elements.iter().enumerate() {
        let ge = sc.map_g(e)?;
        if !amb_index.contains_key(&ge.members) {
            report.failures.push(format!("G {} is not in the ambient lattice", sc.label(e)));
            continue;
        }
        let fge = sc.map_f(&ge)?;
        if fge.members != e.members {
            report.failures.push(format!("F G {} = {}", sc.label(e), sc.label(&fge)));
        }
        if !hit[j] {
            report.failures.push(format!("{} is not F of an ambient subcategory", sc.label(e)));
        }
    }
    report.status = if !report.failures.is_empty() {
        TheoremStatus::Failed
    } else if report.inconclusive.is_empty() {
        TheoremStatus::Verified
    } else {
        TheoremStatus::VerifiedModuloFlagged
    };
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportReport {
    pub n: String,
    pub thick_checked: usize,
    pub complete_checked: usize,
    /// complete subcategories were skipped because a hypothesis fails
    pub complete_skipped: bool,
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Thick subcategories containing N are closed under isomorphisms and
/// summands in E/N; complete ones under isomorphisms when the complete
/// hypotheses hold.
pub fn check_supporting_props(sc: &SubcatContext, limit: usize) -> Result<SupportReport> {
    let q = sc.q;
    let mut failures = Vec::new();
    let thick = sc.enumerate_closed(Kind::Thick, Side::Ambient, limit);
    for d in &thick.elements {
        match sc.to_elems(Side::Quotient, &d.members) {
            None => failures.push(format!("thick {} is not closed under stable isomorphism", sc.label(d))),
            Some(set) => {
                let summands = sc.system(Side::Quotient, Kind::Thick, false);
                let only_summands: Vec<&(Vec<usize>, usize)> =
                    summands.rules.iter().filter(|(p, _)| p.len() == 1).collect();
                if only_summands.iter().any(|(p, c)| set[p[0]] && !set[*c]) {
                    failures.push(format!("thick {} is not closed under summands in E/N", sc.label(d)));
                }
            }
        }
    }
    let holds = complete_hypotheses(q)?.iter().all(|h| h.holds);
    let mut complete_checked = 0;
    if holds {
        let complete = sc.enumerate_closed(Kind::Complete, Side::Ambient, limit);
        for d in &complete.elements {
            complete_checked += 1;
            if sc.to_elems(Side::Quotient, &d.members).is_none() {
                failures.push(format!("complete {} is not closed under stable isomorphism", sc.label(d)));
            }
        }
    }
    Ok(SupportReport {
        n: q.label().to_string(),
        thick_checked: thick.elements.len(),
        complete_checked,
        complete_skipped: !holds,
        ok: failures.is_empty(),
        failures,
    })
}

/// DOT digraph of a lattice, one node per subcategory.
pub fn lattice_dot(sc: &SubcatContext, lat: &Lattice) -> String {
    let side = match lat.side {
        Side::Ambient => "ambient",
        Side::Quotient => "stable",
    };
    let kind = match lat.kind {
        Kind::Complete => "complete",
        Kind::Thick => "thick",
    };
    let mut s = format!("digraph \"{kind}_{side}\" {{\n  rankdir=BT;\n");
    for (i, d) in lat.elements.iter().enumerate() {
        s.push_str(&format!("  n{i} [label=\"{}\"];\n", sc.label(d)));
    }
    for (a, b) in &lat.edges {
        s.push_str(&format!("  n{a} -> n{b};\n"));
    }
    s.push_str("}\n");
    s
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

    #[test]
    fn closure_system_basics() {
        let mut s = ClosureSystem::new(3, vec![0]);
        s.add_rule(vec![0, 1], 2);
        assert_eq!(s.close(&[]), vec![true, false, false]);
        assert_eq!(s.close(&[1]), vec![true, true, true]);
        let (sets, all) = s.enumerate(100);
        assert!(all);
        assert_eq!(sets.len(), 3);
        assert!(sets.iter().all(|x| s.is_closed(x)));
    }

    #[test]
    fn dual_numbers_lattices() {
        let c = ctx("xquot:2,2", 2);
        let u = &c.universe;
        let t = ConflationTable::build(&c, &Abelian).unwrap();
        let q = QuotientContext::new(&c, &Abelian, parse_object_set(u, "add:M2").unwrap(), "inj").unwrap();
        let idx = SnIndex::build(&q).unwrap();
        let sc = SubcatContext::new(&q, &t, &idx);
        for side in [Side::Ambient, Side::Quotient] {
            let lat = sc.enumerate_closed(Kind::Thick, side, 1000);
            assert_eq!(lat.elements.len(), 2, "{side:?}");
            assert_eq!(lat.edges, vec![(0, 1)]);
        }
        let s = u.id_of(&[1, 0]).unwrap();
        let p = u.id_of(&[0, 1]).unwrap();
        assert_eq!(sc.closure(&[s], Kind::Thick, Side::Ambient).unwrap().members.len(), u.len());
        assert_eq!(sc.closure(&[p], Kind::Thick, Side::Ambient).unwrap().members.len(), 3);
        let ss = sc.subcategory(Side::Ambient, &[u.zero_id(), s, u.id_of(&[2, 0]).unwrap()]).unwrap();
        let v = sc.is_complete(&ss).unwrap().unwrap();
        assert_eq!(v.missing, "M2");
        let r = verify_correspondence(&sc, Kind::Thick, 1000).unwrap();
        assert_eq!(r.status, TheoremStatus::Verified, "{r:?}");
        assert_eq!((r.ambient_count, r.quotient_count), (2, 2));
        let r = verify_correspondence(&sc, Kind::Complete, 1000).unwrap();
        assert_eq!(r.status, TheoremStatus::Verified, "{r:?}");
        assert!(check_supporting_props(&sc, 1000).unwrap().ok);
    }
}

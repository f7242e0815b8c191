//! Brute-force oracles. Each one recomputes a quantity along a route that
//! shares no shortcut with the engine: spans over every N-object instead of
//! generators, full hom enumeration instead of linear solves, subset search
//! instead of closure.

#![allow(dead_code)]

use std::collections::BTreeSet;

use exquo::exact::table::for_each_category_conflation;
use exquo::exact::{Abelian, ConflationTable, Context, ExactStructure};
use exquo::gf::{for_each_vector, space_size, Mat, Subspace};
use exquo::quotient::sn::SnIndex;
use exquo::quotient::triangles::Triangle;
use exquo::quotient::QuotientContext;
use exquo::rep::{preset, MultVec, Universe, DEFAULT_CAP};
use exquo::report::resolve_n;
use exquo::subcat::{Lattice, Side};

pub fn ctx(name: &str, bound: usize) -> Context {
    ctx_with_cap(name, bound, DEFAULT_CAP)
}

pub fn ctx_with_cap(name: &str, bound: usize, cap: u128) -> Context {
    Context::new(preset(name).unwrap().universe(bound, cap).unwrap()).unwrap()
}

/// Span, in hom coordinates, of every composite `x -> w -> y` with `w` an
/// N-object of the universe.
pub fn brute_ideal(q: &QuotientContext, x: &[usize], y: &[usize]) -> Subspace {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    let mut vecs = Vec::new();
    for w in q.members() {
        for a in u.hom_basis(x, w) {
            for b in u.hom_basis(w, y) {
                vecs.push(u.hom_coords(x, y, &b.mul(&a)).unwrap());
            }
        }
    }
    Subspace::span(f, u.hom_dim(x, y), &vecs)
}

/// Every composite through an N-object, enumerated map by map where the
/// spaces are small; `None` when they are not.
pub fn composites_inside(q: &QuotientContext, x: &[usize], y: &[usize], ideal: &Subspace, limit: u128) -> Option<bool> {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    for w in q.members() {
        let (ha, hb) = (u.hom_dim(x, w), u.hom_dim(w, y));
        if space_size(f, ha + hb) > limit {
            return None;
        }
        let mut ok = true;
        for_each_vector(f, ha, |ca| {
            let a = u.hom_from_coords(x, w, ca);
            for_each_vector(f, hb, |cb| {
                let b = u.hom_from_coords(w, y, cb);
                ok = ideal.contains(&u.hom_coords(x, y, &b.mul(&a)).unwrap());
                ok
            });
            ok
        });
        if !ok {
            return Some(false);
        }
    }
    Some(true)
}

fn identity_coords(u: &Universe, x: &[usize]) -> Vec<u32> {
    let f = u.algebra().field();
    u.hom_coords(x, x, &Mat::identity(f, u.dim_of(x))).unwrap()
}

/// Searches all of Hom(y, x) for a two-sided inverse of `f` modulo the ideal.
pub fn stable_iso_exhaustive(q: &QuotientContext, x: &[usize], y: &[usize], f: &Mat, limit: u128) -> Option<bool> {
    let u = &q.ctx.universe;
    let fld = u.algebra().field();
    let n = u.hom_dim(y, x);
    if space_size(fld, n) > limit {
        return None;
    }
    let (ix, iy) = (brute_ideal(q, x, x), brute_ideal(q, y, y));
    let (idx, idy) = (identity_coords(u, x), identity_coords(u, y));
    let mut found = false;
    for_each_vector(fld, n, |c| {
        let g = u.hom_from_coords(y, x, c);
        let gf = u.hom_coords(x, x, &g.mul(f)).unwrap();
        let fg = u.hom_coords(y, y, &f.mul(&g)).unwrap();
        let d1: Vec<u32> = gf.iter().zip(&idx).map(|(&a, &b)| fld.sub(a, b)).collect();
        let d2: Vec<u32> = fg.iter().zip(&idy).map(|(&a, &b)| fld.sub(a, b)).collect();
        found = ix.contains(&d1) && iy.contains(&d2);
        !found
    });
    Some(found)
}

/// Drops every N-generator summand. Valid when N = add(generators).
pub fn strip(q: &QuotientContext, m: &[usize]) -> MultVec {
    let gens = q.generators();
    m.iter().enumerate().map(|(i, &k)| if gens.contains(&i) { 0 } else { k }).collect()
}

pub struct Naive {
    pub elems: Vec<MultVec>,
    pub forced: Vec<bool>,
    pub triples: Vec<[usize; 3]>,
    pub thick: bool,
}

impl Naive {
    /// Ambient side: category objects, N and 0 forced, conflation triples
    /// with all terms in the universe.
    pub fn ambient(ctx: &Context, s: &dyn ExactStructure, q: &QuotientContext, thick: bool) -> Naive {
        let u = &ctx.universe;
        let elems: Vec<MultVec> = u.objects().iter().filter(|m| s.in_category(u, m)).cloned().collect();
        let forced = elems.iter().map(|m| q.members().contains(m) || m.iter().all(|&k| k == 0)).collect();
        let mut triples = BTreeSet::new();
        for_each_category_conflation(ctx, s, |c| {
            let pos = |m: &MultVec| elems.iter().position(|e| e == m);
            if let (Some(a), Some(b), Some(d)) = (pos(&c.x), pos(&c.y), pos(&c.z)) {
                triples.insert([a, b, d]);
            }
            Ok(true)
        })
        .unwrap();
        Naive {
            elems,
            forced,
            triples: triples.into_iter().collect(),
            thick,
        }
    }

    /// Quotient side: stripped category objects, 0 forced, stripped triples
    /// of every enumerated conflation.
    pub fn quotient(ctx: &Context, s: &dyn ExactStructure, q: &QuotientContext, thick: bool) -> Naive {
        let u = &ctx.universe;
        let set: BTreeSet<MultVec> = u
            .objects()
            .iter()
            .filter(|m| s.in_category(u, m))
            .map(|m| strip(q, m))
            .filter(|m| u.in_bound(m) && s.in_category(u, m))
            .collect();
        let elems: Vec<MultVec> = set.into_iter().collect();
        let forced = elems.iter().map(|m| m.iter().all(|&k| k == 0)).collect();
        let mut triples = BTreeSet::new();
        for_each_category_conflation(ctx, s, |c| {
            let pos = |m: &MultVec| elems.iter().position(|e| *e == strip(q, m));
            if let (Some(a), Some(b), Some(d)) = (pos(&c.x), pos(&c.y), pos(&c.z)) {
                triples.insert([a, b, d]);
            }
            Ok(true)
        })
        .unwrap();
        Naive {
            elems,
            forced,
            triples: triples.into_iter().collect(),
            thick,
        }
    }

    fn is_summand(a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    /// Every subset satisfying the rules, by depth-first assignment; each
    /// rule is checked as soon as all its elements are decided.
    pub fn enumerate(&self) -> BTreeSet<BTreeSet<MultVec>> {
        let n = self.elems.len();
        let mut by_last: Vec<Vec<[usize; 3]>> = vec![Vec::new(); n];
        for t in &self.triples {
            by_last[*t.iter().max().unwrap()].push(*t);
        }
        let mut out = BTreeSet::new();
        let mut set = vec![false; n];
        self.dfs(0, &mut set, &by_last, &mut out);
        out
    }

    fn consistent(&self, k: usize, set: &[bool], by_last: &[Vec<[usize; 3]>]) -> bool {
        for t in &by_last[k] {
            if t.iter().filter(|&&i| set[i]).count() == 2 {
                return false;
            }
        }
        if self.thick {
            for j in 0..=k {
                let (a, b) = (&self.elems[j], &self.elems[k]);
                if set[k] && !set[j] && Naive::is_summand(a, b) {
                    return false;
                }
                if set[j] && !set[k] && Naive::is_summand(b, a) {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&self, k: usize, set: &mut Vec<bool>, by_last: &[Vec<[usize; 3]>], out: &mut BTreeSet<BTreeSet<MultVec>>) {
        if k == set.len() {
            out.insert((0..k).filter(|&i| set[i]).map(|i| self.elems[i].clone()).collect());
            return;
        }
        let choices: &[bool] = if self.forced[k] { &[true] } else { &[false, true] };
        for &c in choices {
            set[k] = c;
            if self.consistent(k, set, by_last) {
                self.dfs(k + 1, set, by_last, out);
            }
        }
        set[k] = false;
    }
}

fn congruent(ideal: &Subspace, u: &Universe, a: &[usize], b: &[usize], m1: &Mat, m2: &Mat) -> bool {
    ideal.contains(&u.hom_coords(a, b, &m1.sub(m2)).unwrap())
}

/// Whether `t` is isomorphic to `std` (same first map) through some
/// `(1, 1, φ)`, searching every φ and every candidate inverse.
pub fn triangle_iso_exhaustive(q: &QuotientContext, t: &Triangle, std: &Triangle, limit: u128) -> Option<bool> {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    let (z, c) = (&t.z, &std.z);
    let n = u.hom_dim(z, c);
    if space_size(f, n) > limit {
        return None;
    }
    let (iyc, izt) = (brute_ideal(q, &t.y, c), brute_ideal(q, z, &t.tx));
    let mut found = Some(false);
    for_each_vector(f, n, |coords| {
        let phi = u.hom_from_coords(z, c, coords);
        if congruent(&iyc, u, &t.y, c, &phi.mul(&t.v), &std.v) && congruent(&izt, u, z, &t.tx, &std.w.mul(&phi), &t.w) {
            match stable_iso_exhaustive(q, z, c, &phi, limit) {
                Some(true) => found = Some(true),
                Some(false) => {}
                None => found = None,
            }
        }
        found == Some(false)
    });
    found
}

pub fn with_quotient<R>(name: &str, bound: usize, f: impl FnOnce(&QuotientContext, &ConflationTable, &SnIndex) -> R) -> R {
    with_quotient_cap(name, bound, DEFAULT_CAP, f)
}

pub fn with_quotient_cap<R>(
    name: &str,
    bound: usize,
    cap: u128,
    f: impl FnOnce(&QuotientContext, &ConflationTable, &SnIndex) -> R,
) -> R {
    let ctx = ctx_with_cap(name, bound, cap);
    let s = Abelian;
    let table = ConflationTable::build(&ctx, &s).unwrap();
    let n = resolve_n(&ctx, &s, &table, "inj").unwrap();
    let q = QuotientContext::new(&ctx, &s, n, "inj").unwrap();
    let index = SnIndex::build(&q).unwrap();
    f(&q, &table, &index)
}

/// An engine lattice as sets of objects (ambient) or stripped classes
/// (quotient), comparable with the naive enumeration.
pub fn engine_sets(q: &QuotientContext, lat: &Lattice) -> BTreeSet<BTreeSet<MultVec>> {
    let u = &q.ctx.universe;
    lat.elements
        .iter()
        .map(|d| {
            d.members
                .iter()
                .map(|&o| match lat.side {
                    Side::Ambient => u.object(o).clone(),
                    Side::Quotient => strip(q, u.object(o)),
                })
                .collect()
        })
        .collect()
}

/// F and G computed on the naive sets: F strips N-summands, G takes every
/// object whose stripped form lies in the set. Returns the first mismatch.
pub fn check_bijection(
    q: &QuotientContext,
    ambient: &Naive,
    amb: &BTreeSet<BTreeSet<MultVec>>,
    quo: &BTreeSet<BTreeSet<MultVec>>,
) -> Result<(), String> {
    let u = &q.ctx.universe;
    let f = |d: &BTreeSet<MultVec>| -> BTreeSet<MultVec> { d.iter().map(|m| strip(q, m)).collect() };
    let g = |e: &BTreeSet<MultVec>| -> BTreeSet<MultVec> {
        ambient.elems.iter().filter(|m| e.contains(&strip(q, m))).cloned().collect()
    };
    let names = |s: &BTreeSet<MultVec>| s.iter().map(|m| u.name(m)).collect::<Vec<_>>().join(",");
    for d in amb {
        let fd = f(d);
        if !quo.contains(&fd) {
            return Err(format!("F{{{}}} = {{{}}} is not closed", names(d), names(&fd)));
        }
        if g(&fd) != *d {
            return Err(format!("GF{{{}}} differs", names(d)));
        }
    }
    for e in quo {
        let ge = g(e);
        if !amb.contains(&ge) {
            return Err(format!("G{{{}}} is not closed", names(e)));
        }
        if f(&ge) != *e {
            return Err(format!("FG{{{}}} differs", names(e)));
        }
    }
    Ok(())
}

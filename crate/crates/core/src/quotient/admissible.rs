//! Factorization admissibility of N.
//!
//! A minimal left add(N)-approximation `α: X -> N_X` lets every ideal map out
//! of `X` factor through it, so one admissible `α` settles all pairs `(X, -)`;
//! dually for right approximations. Remaining pairs are searched map by map.
//! Zero morphisms are exempt.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::axioms::{mat_rows, Counterexample};
use crate::gf::{for_each_vector, space_size, Mat, Subspace};
use crate::quotient::QuotientContext;
use crate::rep::universe::MultVec;

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub n: String,
    pub sum_closed: bool,
    pub summand_closed: bool,
    pub admissible: bool,
    /// pairs settled by an admissible left approximation of the source
    pub via_mono: usize,
    /// pairs settled by an admissible right approximation of the target
    pub via_epi: usize,
    /// pairs settled by searching single maps
    pub via_search: usize,
    /// per object: the N-object of its admissible left approximation
    pub left_witnesses: Vec<(String, String)>,
    pub right_witnesses: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub inconclusive: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Minimal approximation of `x` by sums of generating seeds: every map from
/// `x` to (or into `x` from) a generator factors through it.
fn approximation(q: &QuotientContext, x: &[usize], side: Side) -> (MultVec, Mat) {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    let dx = u.dim_of(x);
    let mut target = u.zero_vec();
    let mut chosen: Vec<(usize, Mat)> = Vec::new();
    let assemble = |target: &MultVec, chosen: &[(usize, Mat)]| -> Mat {
        let blocks = u.blocks(target);
        let dt = u.dim_of(target);
        let mut map = match side {
            Side::Left => Mat::zeros(f, dt, dx),
            Side::Right => Mat::zeros(f, dx, dt),
        };
        let mut used = vec![false; blocks.len()];
        for (j, h) in chosen {
            let k = (0..blocks.len()).find(|&k| !used[k] && blocks[k].0 == *j).expect("block per map");
            used[k] = true;
            match side {
                Side::Left => map.set_block(blocks[k].1, 0, h),
                Side::Right => map.set_block(0, blocks[k].1, h),
            }
        }
        map
    };
    for g in q.generators() {
        let e = u.unit_vec(g);
        let basis = match side {
            Side::Left => u.hom_basis(x, &e),
            Side::Right => u.hom_basis(&e, x),
        };
        for h in basis {
            let cur = assemble(&target, &chosen);
            // maps x -> e (or e -> x) that already factor through cur
            let through: Vec<Vec<u32>> = match side {
                Side::Left => u
                    .hom_basis(&target, &e)
                    .iter()
                    .map(|t| u.hom_coords(x, &e, &t.mul(&cur)).expect("composite"))
                    .collect(),
                Side::Right => u
                    .hom_basis(&e, &target)
                    .iter()
                    .map(|t| u.hom_coords(&e, x, &cur.mul(t)).expect("composite"))
                    .collect(),
            };
            let hc = match side {
                Side::Left => u.hom_coords(x, &e, &h),
                Side::Right => u.hom_coords(&e, x, &h),
            }
            .expect("basis map");
            let span = Subspace::span(f, hc.len(), &through);
            if !span.contains(&hc) {
                target[g] += 1;
                chosen.push((g, h));
                // keep blocks grouped by seed: re-sort chosen by seed index
                chosen.sort_by_key(|(j, _)| *j);
            }
        }
    }
    let map = assemble(&target, &chosen);
    (target, map)
}

/// `Some(n_object)` if the approximation is admissible and lies in N.
fn admissible_approximation(q: &QuotientContext, x: &[usize], side: Side) -> Result<Option<MultVec>> {
    let (t, map) = approximation(q, x, side);
    if !q.in_n(&t) {
        return Ok(None);
    }
    let s = q.structure;
    let ok = match side {
        Side::Left => s.is_admissible_mono(q.ctx, x, &t, &map)?,
        Side::Right => s.is_admissible_epi(q.ctx, &t, x, &map)?,
    };
    Ok(if ok { Some(t) } else { None })
}

/// Subspaces of Hom(x, y) of maps factoring through one admissible mono out of
/// `x` (or admissible epi onto `y`) with N-object middle term in the universe.
fn factoring_spaces(q: &QuotientContext, x: &[usize], y: &[usize]) -> Result<Vec<Subspace>> {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    let hd = u.hom_dim(x, y);
    let mut out: Vec<Subspace> = Vec::new();
    for n in q.members() {
        u.for_each_hom(x, n, |a| {
            if a.rank() == a.cols() && q.structure.is_admissible_mono(q.ctx, x, n, &a)? {
                let vecs: Vec<Vec<u32>> = u
                    .hom_basis(n, y)
                    .iter()
                    .map(|b| u.hom_coords(x, y, &b.mul(&a)).expect("composite"))
                    .collect();
                let s = Subspace::span(f, hd, &vecs);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            Ok(true)
        })?;
        u.for_each_hom(n, y, |b| {
            if b.rank() == b.rows() && q.structure.is_admissible_epi(q.ctx, n, y, &b)? {
                let vecs: Vec<Vec<u32>> = u
                    .hom_basis(x, n)
                    .iter()
                    .map(|a| u.hom_coords(x, y, &b.mul(a)).expect("composite"))
                    .collect();
                let s = Subspace::span(f, hd, &vecs);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
            Ok(true)
        })?;
    }
    Ok(out)
}

fn search_pair(q: &QuotientContext, x: &[usize], y: &[usize]) -> Result<Option<Mat>> {
    let u = &q.ctx.universe;
    let f = u.algebra().field();
    let ideal = q.ideal_space(x, y);
    if space_size(f, ideal.dim()) > u.cap() {
        return Err(Error::CapExceeded(format!(
            "I({}, {}) has {}^{} elements",
            u.name(x),
            u.name(y),
            f.p(),
            ideal.dim()
        )));
    }
    let spaces = factoring_spaces(q, x, y)?;
    let mut bad = None;
    for_each_vector(f, ideal.dim(), |c| {
        if c.iter().all(|&v| v == 0) {
            return true;
        }
        let v = ideal.combine(c);
        if spaces.iter().any(|s| s.contains(&v)) {
            true
        } else {
            bad = Some(u.hom_from_coords(x, y, &v));
            false
        }
    });
    Ok(bad)
}

pub fn is_factorization_admissible(q: &QuotientContext) -> Result<FactorizationReport> {
    let u = &q.ctx.universe;
    let objs: Vec<MultVec> = u
        .objects()
        .iter()
        .filter(|m| q.structure.in_category(u, m))
        .cloned()
        .collect();
    let mut left = Vec::with_capacity(objs.len());
    let mut right = Vec::with_capacity(objs.len());
    let mut inconclusive = Vec::new();
    let mut settle = |r: Result<Option<MultVec>>, what: &str, m: &MultVec| -> Result<Option<MultVec>> {
        match r {
            Ok(v) => Ok(v),
            Err(e) if e.is_inconclusive() => {
                inconclusive.push(format!("{what} of {}: {e}", u.name(m)));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    for m in &objs {
        left.push(settle(admissible_approximation(q, m, Side::Left), "left approximation", m)?);
        right.push(settle(admissible_approximation(q, m, Side::Right), "right approximation", m)?);
    }
    let (mut via_mono, mut via_epi, mut via_search) = (0, 0, 0);
    let mut counterexample = None;
    'pairs: for (i, x) in objs.iter().enumerate() {
        for (j, y) in objs.iter().enumerate() {
            if q.ideal_space(x, y).dim() == 0 {
                continue;
            }
            if left[i].is_some() {
                via_mono += 1;
            } else if right[j].is_some() {
                via_epi += 1;
            } else {
                match search_pair(q, x, y) {
                    Ok(None) => via_search += 1,
                    Ok(Some(f)) => {
                        counterexample = Some(Counterexample {
                            objects: vec![u.name(x), u.name(y)],
                            matrices: vec![mat_rows(&f)],
                        });
                        break 'pairs;
                    }
                    Err(e) if e.is_inconclusive() => {
                        inconclusive.push(format!("{} -> {}: {e}", u.name(x), u.name(y)));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let summand_closed = q.is_summand_closed();
    let witnesses = |v: &[Option<MultVec>]| -> Vec<(String, String)> {
        objs.iter()
            .zip(v)
            .filter_map(|(m, t)| t.as_ref().map(|t| (u.name(m), u.name(t))))
            .collect()
    };
    Ok(FactorizationReport {
        n: q.label().to_string(),
        sum_closed: true,
        summand_closed,
        admissible: summand_closed && counterexample.is_none() && inconclusive.is_empty(),
        via_mono,
        via_epi,
        via_search,
        left_witnesses: witnesses(&left),
        right_witnesses: witnesses(&right),
        counterexample,
        inconclusive,
    })
}

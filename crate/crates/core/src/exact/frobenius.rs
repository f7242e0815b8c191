//! S-projectives, S-injectives, approximations by them, and Frobenius
//! detection.

use serde::Serialize;

use crate::error::Result;
use crate::exact::axioms::mat_rows;
use crate::exact::{Context, ConflationTable, ExactStructure};
use crate::gf::Mat;
use crate::rep::universe::{MultVec, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Proj,
    Inj,
}

impl std::str::FromStr for Side {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Side> {
        match s {
            "proj" => Ok(Side::Proj),
            "inj" => Ok(Side::Inj),
            _ => Err(crate::error::Error::Unknown {
                kind: "side",
                name: s.to_string(),
            }),
        }
    }
}

/// An admissible mono `object ↣ approx` into an injective (or admissible
/// epi `approx ↠ object` from a projective).
#[derive(Clone, Debug, Serialize)]
pub struct Approximation {
    pub object: String,
    pub approx: String,
    #[serde(skip)]
    pub object_vec: MultVec,
    #[serde(skip)]
    pub approx_vec: MultVec,
    pub map: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnoughReport {
    pub side: Side,
    pub ok: bool,
    pub witnesses: Vec<Approximation>,
    pub failures: Vec<String>,
    pub inconclusive: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub structure: String,
    pub frobenius: bool,
    pub projective_seeds: Vec<String>,
    pub injective_seeds: Vec<String>,
    pub projectives: Vec<String>,
    pub injectives: Vec<String>,
    pub enough_projectives: EnoughReport,
    pub enough_injectives: EnoughReport,
}

pub fn is_s_injective(table: &ConflationTable, m: &[usize]) -> bool {
    table.is_injective(m)
}

pub fn is_s_projective(table: &ConflationTable, m: &[usize]) -> bool {
    table.is_projective(m)
}

/// Chooses maps to injective seeds (or from projective seeds) until the
/// stacked map is injective (surjective). With `all`, takes every basis map.
fn approximation(u: &Universe, x: &[usize], seeds: &[usize], side: Side, all: bool) -> Option<(MultVec, Mat)> {
    let f = u.algebra().field();
    let dx = u.dim_of(x);
    let mut chosen: Vec<(usize, Mat)> = Vec::new();
    let mut acc = match side {
        Side::Inj => Mat::zeros(f, 0, dx),
        Side::Proj => Mat::zeros(f, dx, 0),
    };
    let mut rank = 0;
    for &j in seeds {
        let e = u.unit_vec(j);
        let basis = match side {
            Side::Inj => u.hom_basis(x, &e),
            Side::Proj => u.hom_basis(&e, x),
        };
        for h in basis {
            if rank == dx && !all {
                break;
            }
            let next = match side {
                Side::Inj => acc.vstack(&h),
                Side::Proj => acc.hstack(&h),
            };
            let r = next.rank();
            if all || r > rank {
                acc = next;
                rank = r;
                chosen.push((j, h));
            }
        }
    }
    if rank != dx {
        return None;
    }
    let mut target = u.zero_vec();
    for (j, _) in &chosen {
        target[*j] += 1;
    }
    // place the chosen maps in the canonical block layout of the target
    let blocks = u.blocks(&target);
    let dt = u.dim_of(&target);
    let mut map = match side {
        Side::Inj => Mat::zeros(f, dt, dx),
        Side::Proj => Mat::zeros(f, dx, dt),
    };
    let mut used = vec![false; blocks.len()];
    for (j, h) in &chosen {
        let k = (0..blocks.len()).find(|&k| !used[k] && blocks[k].0 == *j).expect("one block per chosen map");
        used[k] = true;
        match side {
            Side::Inj => map.set_block(blocks[k].1, 0, h),
            Side::Proj => map.set_block(0, blocks[k].1, h),
        }
    }
    Some((target, map))
}

/// An admissible mono from `x` into a sum of `seeds` (`Inj`), or an
/// admissible epi onto `x` from one (`Proj`): the greedy minimal map first,
/// then the map through every basis morphism. The approximating object may
/// lie beyond the multiplicity bound.
pub fn approximate(
    ctx: &Context,
    s: &dyn ExactStructure,
    seeds: &[usize],
    x: &[usize],
    side: Side,
) -> Result<Option<(MultVec, Mat)>> {
    for all in [false, true] {
        let Some((t, map)) = approximation(&ctx.universe, x, seeds, side, all) else {
            return Ok(None);
        };
        let ok = match side {
            Side::Inj => s.is_admissible_mono(ctx, x, &t, &map)?,
            Side::Proj => s.is_admissible_epi(ctx, &t, x, &map)?,
        };
        if ok {
            return Ok(Some((t, map)));
        }
    }
    Ok(None)
}

/// Category seeds that are S-injective (`Inj`) or S-projective (`Proj`).
pub fn good_seeds(ctx: &Context, s: &dyn ExactStructure, table: &ConflationTable, side: Side) -> Vec<usize> {
    let u = &ctx.universe;
    (0..u.num_seeds())
        .filter(|&j| match side {
            Side::Inj => table.seed_injective(j),
            Side::Proj => table.seed_projective(j),
        })
        .filter(|&j| s.in_category(u, &u.unit_vec(j)))
        .collect()
}

/// For every category object, an admissible approximation by S-injectives
/// (`Inj`) or S-projectives (`Proj`).
pub fn has_enough(ctx: &Context, s: &dyn ExactStructure, table: &ConflationTable, side: Side) -> Result<EnoughReport> {
    let u = &ctx.universe;
    let good = good_seeds(ctx, s, table, side);
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let mut inconclusive = Vec::new();
    for &xi in &table.category {
        let x = u.object(xi);
        match approximate(ctx, s, &good, x, side) {
            Ok(Some((t, map))) => witnesses.push(Approximation {
                object: u.name(x),
                approx: u.name(&t),
                object_vec: x.clone(),
                approx_vec: t,
                map: mat_rows(&map),
            }),
            Ok(None) => failures.push(u.name(x)),
            Err(e) if e.is_inconclusive() => inconclusive.push(format!("{}: {e}", u.name(x))),
            Err(e) => return Err(e),
        }
    }
    Ok(EnoughReport {
        side,
        ok: failures.is_empty() && inconclusive.is_empty(),
        witnesses,
        failures,
        inconclusive,
    })
}

/// Enough projectives and injectives, and the two classes agree on the
/// category objects.
pub fn is_frobenius(ctx: &Context, s: &dyn ExactStructure, table: &ConflationTable) -> Result<FrobeniusReport> {
    let u = &ctx.universe;
    let enough_proj = has_enough(ctx, s, table, Side::Proj)?;
    let enough_inj = has_enough(ctx, s, table, Side::Inj)?;
    let projectives: Vec<usize> = table.category.iter().copied().filter(|&i| table.is_projective(u.object(i))).collect();
    let injectives: Vec<usize> = table.category.iter().copied().filter(|&i| table.is_injective(u.object(i))).collect();
    let names = |ids: &[usize]| ids.iter().map(|&i| u.name_of(i)).collect::<Vec<_>>();
    let seeds = |pred: &dyn Fn(usize) -> bool| {
        (0..u.num_seeds())
            .filter(|&j| pred(j) && s.in_category(u, &u.unit_vec(j)))
            .map(|j| u.seed_names()[j].clone())
            .collect::<Vec<_>>()
    };
    Ok(FrobeniusReport {
        structure: s.name(),
        frobenius: enough_proj.ok && enough_inj.ok && projectives == injectives,
        projective_seeds: seeds(&|j| table.seed_projective(j)),
        injective_seeds: seeds(&|j| table.seed_injective(j)),
        projectives: names(&projectives),
        injectives: names(&injectives),
        enough_projectives: enough_proj,
        enough_injectives: enough_inj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Abelian, Conflation, Explicit, Split};
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    fn ctx(name: &str, bound: usize) -> Context {
        Context::new(preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()).unwrap()
    }

    #[test]
    fn truncated_poly_is_frobenius() {
        for n in [2, 3] {
            let c = ctx(&format!("xquot:2,{n}"), 2);
            let t = ConflationTable::build(&c, &Abelian).unwrap();
            let r = is_frobenius(&c, &Abelian, &t).unwrap();
            assert!(r.frobenius);
            assert_eq!(r.projective_seeds, vec![format!("M{n}")]);
            assert_eq!(r.injective_seeds, r.projective_seeds);
        }
    }

    #[test]
    fn split_structure_everything_proj_inj() {
        let c = ctx("xquot:2,2", 2);
        let t = ConflationTable::build(&c, &Split).unwrap();
        let r = is_frobenius(&c, &Split, &t).unwrap();
        assert!(r.frobenius);
        assert_eq!(r.projectives.len(), c.universe.len());
    }

    #[test]
    fn zero_only_structure_lacks_approximations() {
        let c = ctx("xquot:2,2", 1);
        let f = c.universe.algebra().field();
        let z = c.universe.zero_vec();
        let s = Explicit::new(vec![Conflation {
            x: z.clone(),
            y: z.clone(),
            z,
            f: Mat::zeros(f, 0, 0),
            g: Mat::zeros(f, 0, 0),
        }]);
        let t = ConflationTable::build(&c, &s).unwrap();
        let r = has_enough(&c, &s, &t, Side::Inj).unwrap();
        assert!(!r.ok);
        assert_eq!(r.failures, vec!["M2", "M1", "M1+M2"]);
    }

    #[test]
    fn simple_is_not_injective() {
        let c = ctx("xquot:2,2", 1);
        let t = ConflationTable::build(&c, &Abelian).unwrap();
        assert!(is_s_injective(&t, &[0, 0]));
        assert!(is_s_injective(&t, &[0, 1]) && is_s_projective(&t, &[0, 1]));
        assert!(!is_s_injective(&t, &[1, 0]));
    }
}

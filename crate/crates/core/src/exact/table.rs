//! One pass over all end pairs of a structure: middle terms per cell and
//! per-seed injectivity/projectivity witnesses.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::{corestriction_surjective, restriction_surjective, Conflation, Context, ExactStructure};
use crate::rep::universe::{MultVec, ObjId};

#[derive(Clone, Debug, Default)]
pub struct Cell {
    /// middle terms in the universe, sorted and deduplicated
    pub middles: Vec<ObjId>,
    /// middle terms beyond the multiplicity bound
    pub escaped: Vec<MultVec>,
    /// extensions whose middle has a summand outside the seeds
    pub foreign: usize,
    /// number of conflation representatives visited
    pub reps: usize,
    pub inconclusive: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ConflationTable {
    pub structure: String,
    /// universe objects in the structure's category
    pub category: Vec<ObjId>,
    pub cells: BTreeMap<(ObjId, ObjId), Cell>,
    /// pairs skipped because no middle term can fit in the universe
    pub skipped_pairs: usize,
    /// per seed: a conflation along whose inflation restriction fails
    pub inj_witness: Vec<Option<Conflation>>,
    /// per seed: a conflation along whose deflation corestriction fails
    pub proj_witness: Vec<Option<Conflation>>,
}

impl ConflationTable {
    pub fn build(ctx: &Context, s: &dyn ExactStructure) -> Result<ConflationTable> {
        let u = &ctx.universe;
        let max_dim = ctx.max_dim();
        let category: Vec<ObjId> = (0..u.len()).filter(|&i| s.in_category(u, u.object(i))).collect();
        let r = u.num_seeds();
        let seeds: Vec<MultVec> = (0..r).map(|i| u.unit_vec(i)).collect();
        let mut inj_witness: Vec<Option<Conflation>> = vec![None; r];
        let mut proj_witness: Vec<Option<Conflation>> = vec![None; r];
        let mut cells = BTreeMap::new();
        let mut skipped_pairs = 0;
        for &xi in &category {
            for &zi in &category {
                let (x, z) = (u.object(xi), u.object(zi));
                if u.dim_of(x) + u.dim_of(z) > max_dim {
                    skipped_pairs += 1;
                    continue;
                }
                let mut cell = Cell::default();
                let before = ctx.foreign_count();
                let res = s.for_each_conflation(ctx, x, z, &mut |c| {
                    cell.reps += 1;
                    match u.id_of(&c.y) {
                        Some(id) => {
                            if !cell.middles.contains(&id) {
                                cell.middles.push(id);
                            }
                            for k in 0..r {
                                if inj_witness[k].is_none() && !restriction_surjective(u, &c.x, &c.y, &seeds[k], &c.f) {
                                    inj_witness[k] = Some(c.clone());
                                }
                                if proj_witness[k].is_none()
                                    && !corestriction_surjective(u, &c.y, &c.z, &seeds[k], &c.g)
                                {
                                    proj_witness[k] = Some(c.clone());
                                }
                            }
                        }
                        None => {
                            if !cell.escaped.contains(&c.y) {
                                cell.escaped.push(c.y.clone());
                            }
                        }
                    }
                    Ok(true)
                });
                if let Err(e) = res {
                    if e.is_inconclusive() {
                        cell.inconclusive = Some(e.to_string());
                    } else {
                        return Err(e);
                    }
                }
                cell.foreign = ctx.foreign_count() - before;
                cell.middles.sort_unstable();
                cell.escaped.sort();
                cells.insert((xi, zi), cell);
            }
        }
        Ok(ConflationTable {
            structure: s.name(),
            category,
            cells,
            skipped_pairs,
            inj_witness,
            proj_witness,
        })
    }

    pub fn cell(&self, x: ObjId, z: ObjId) -> Option<&Cell> {
        self.cells.get(&(x, z))
    }

    /// Middle terms in the universe of conflations `x ↣ ? ↠ z`.
    pub fn middles(&self, x: ObjId, z: ObjId) -> &[ObjId] {
        self.cells.get(&(x, z)).map_or(&[], |c| &c.middles)
    }

    /// All triples `(x, y, z)` with a conflation `x ↣ y ↠ z` inside the universe.
    pub fn triples(&self) -> Vec<(ObjId, ObjId, ObjId)> {
        let mut out = Vec::new();
        for (&(x, z), c) in &self.cells {
            for &y in &c.middles {
                out.push((x, y, z));
            }
        }
        out
    }

    pub fn inconclusive_cells(&self) -> Vec<(ObjId, ObjId, &str)> {
        self.cells
            .iter()
            .filter_map(|(&(x, z), c)| c.inconclusive.as_deref().map(|m| (x, z, m)))
            .collect()
    }

    pub fn seed_injective(&self, i: usize) -> bool {
        self.inj_witness[i].is_none()
    }

    pub fn seed_projective(&self, i: usize) -> bool {
        self.proj_witness[i].is_none()
    }

    /// S-injectivity is additive, so it is decided seedwise.
    pub fn is_injective(&self, m: &[usize]) -> bool {
        m.iter().enumerate().all(|(i, &k)| k == 0 || self.seed_injective(i))
    }

    pub fn is_projective(&self, m: &[usize]) -> bool {
        m.iter().enumerate().all(|(i, &k)| k == 0 || self.seed_projective(i))
    }

    pub fn total_reps(&self) -> usize {
        self.cells.values().map(|c| c.reps).sum()
    }
}

/// Streams every conflation representative with both ends in the category
/// and a middle term of admissible dimension. Cells whose enumeration is
/// inconclusive are skipped and listed in the result.
pub fn for_each_category_conflation(
    ctx: &Context,
    s: &dyn ExactStructure,
    mut visit: impl FnMut(&Conflation) -> Result<bool>,
) -> Result<Vec<String>> {
    let u = &ctx.universe;
    let max_dim = ctx.max_dim();
    let category: Vec<ObjId> = (0..u.len()).filter(|&i| s.in_category(u, u.object(i))).collect();
    let mut inconclusive = Vec::new();
    for &xi in &category {
        for &zi in &category {
            let (x, z) = (u.object(xi), u.object(zi));
            if u.dim_of(x) + u.dim_of(z) > max_dim {
                continue;
            }
            let mut stop = false;
            let r = s.for_each_conflation(ctx, x, z, &mut |c| {
                if visit(&c)? {
                    Ok(true)
                } else {
                    stop = true;
                    Ok(false)
                }
            });
            match r {
                Ok(_) => {}
                Err(e) if e.is_inconclusive() => inconclusive.push(format!("({}, {}): {e}", u.name(x), u.name(z))),
                Err(e) => return Err(e),
            }
            if stop {
                return Ok(inconclusive);
            }
        }
    }
    Ok(inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Abelian, Split};
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    #[test]
    fn dual_numbers_table() {
        let ctx = Context::new(preset("xquot:2,2").unwrap().universe(2, DEFAULT_CAP).unwrap()).unwrap();
        let u = &ctx.universe;
        let t = ConflationTable::build(&ctx, &Abelian).unwrap();
        let s = u.id_of(&[1, 0]).unwrap();
        let mids: Vec<String> = t.middles(s, s).iter().map(|&y| u.name_of(y)).collect();
        assert_eq!(mids, vec!["M2", "M1^2"]);
        assert!(!t.seed_injective(0) && !t.seed_projective(0));
        assert!(t.seed_injective(1) && t.seed_projective(1));
        assert!(t.inconclusive_cells().is_empty());
        let sp = ConflationTable::build(&ctx, &Split).unwrap();
        assert!(sp.seed_injective(0) && sp.seed_projective(0));
        assert_eq!(sp.middles(s, s).len(), 1);
    }
}

//! Enumeration of all extensions `X ↣ Y ↠ Z` with fixed ends, one per Ext¹
//! class, computed from projective presentations of the seeds.

use crate::error::{Error, Result};
use crate::exact::{Conflation, Context};
use crate::gf::{for_each_vector, space_size, Mat, Subspace};
use crate::rep::module::{hom_space, kernel, pushout, Module};
use crate::rep::universe::{MultVec, Universe};

/// Projective presentation `0 -> Ω -> P -> S -> 0` of one seed.
#[derive(Clone, Debug)]
struct Presentation {
    rank: usize,
    cover: Mat,
    omega_incl: Mat,
    omega_dim: usize,
}

/// Per-universe data for extension enumeration.
#[derive(Clone, Debug)]
pub struct ExtData {
    pres: Vec<Presentation>,
    /// reps[j][i]: maps Ω_j -> S_i spanning a complement of the restrictions
    /// of Hom(P_j, S_i), i.e. a basis of Ext¹(S_j, S_i)
    reps: Vec<Vec<Vec<Mat>>>,
}

fn module_generators(u: &Universe, s: &Module) -> Vec<Vec<u32>> {
    let alg = u.algebra();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut span = s.generated_submodule(alg, &[]);
    for c in 0..s.dim() {
        let mut e = vec![0u32; s.dim()];
        e[c] = 1;
        if !span.contains(&e) {
            gens.push(e);
            span = s.generated_submodule(alg, &gens);
        }
    }
    gens
}

impl ExtData {
    pub fn new(u: &Universe) -> Result<ExtData> {
        let alg = u.algebra();
        let f = alg.field();
        let n = alg.dim();
        let mut pres = Vec::new();
        for s in u.seeds() {
            let gens = module_generators(u, s);
            let t = gens.len();
            let mut cover = Mat::zeros(f, s.dim(), n * t);
            for (l, m) in gens.iter().enumerate() {
                for k in 0..n {
                    let v = s.action(k).mul_vec(m);
                    for (r, x) in v.into_iter().enumerate() {
                        cover[(r, l * n + k)] = x;
                    }
                }
            }
            let p = Module::free(alg, t);
            let (omega, incl) = kernel(&p, &cover)?;
            pres.push((p, omega, Presentation {
                rank: t,
                cover,
                omega_dim: incl.cols(),
                omega_incl: incl,
            }));
        }
        let mut reps = Vec::new();
        for (p, omega, pr) in &pres {
            let mut row = Vec::new();
            for si in u.seeds() {
                let h = hom_space(alg, omega, si);
                let vecs: Vec<Vec<u32>> = h.iter().map(|m| m.to_vec()).collect();
                let amb = si.dim() * omega.dim();
                let hs = Subspace::span(f, amb, &vecs);
                // coordinates of restrictions in the basis of Hom(Ω, S_i)
                let restricted: Vec<Vec<u32>> = hom_space(alg, p, si)
                    .iter()
                    .map(|m| {
                        hs.coordinates(&m.mul(&pr.omega_incl).to_vec())
                            .expect("restriction of a hom is a hom")
                    })
                    .collect();
                let r = Subspace::span(f, h.len(), &restricted);
                let classes = r
                    .complement_reps()
                    .into_iter()
                    .map(|c| {
                        let v = hs.combine(&c);
                        Mat::from_vec(f, si.dim(), omega.dim(), v)
                    })
                    .collect();
                row.push(classes);
            }
            reps.push(row);
        }
        Ok(ExtData {
            pres: pres.into_iter().map(|t| t.2).collect(),
            reps,
        })
    }

    /// dim Ext¹(S_j, S_i).
    pub fn seed_ext_dim(&self, j: usize, i: usize) -> usize {
        self.reps[j][i].len()
    }

    pub fn ext_dim(&self, z: &[usize], x: &[usize]) -> usize {
        let mut d = 0;
        for (j, &b) in z.iter().enumerate() {
            for (i, &a) in x.iter().enumerate() {
                d += a * b * self.reps[j][i].len();
            }
        }
        d
    }

    /// Calls `visit` on one conflation `x ↣ y ↠ z` per Ext¹(z, x) class; the
    /// zero class comes first and is the canonical split sequence. Returns
    /// `false` if `visit` stopped early.
    /// Extensions whose middle term has a summand outside the seed list are
    /// skipped and counted on the context.
    pub fn for_each_extension(
        &self,
        ctx: &Context,
        x: &[usize],
        z: &[usize],
        mut visit: impl FnMut(Conflation) -> Result<bool>,
    ) -> Result<bool> {
        let u = &ctx.universe;
        let cap = ctx.cap();
        let alg = u.algebra();
        let f = alg.field();
        let e = self.ext_dim(z, x);
        if space_size(f, e) > cap {
            return Err(Error::CapExceeded(format!(
                "Ext^1({}, {}) has {}^{} classes, cap {}",
                u.name(z),
                u.name(x),
                f.p(),
                e,
                cap
            )));
        }
        let y_split = u.add(x, z);
        let (ix, _, _, pz) = u.sum_maps(x, z);
        let split = Conflation {
            x: x.to_vec(),
            y: y_split,
            z: z.to_vec(),
            f: ix,
            g: pz,
        };
        if !visit(split)? {
            return Ok(false);
        }
        if e == 0 {
            return Ok(true);
        }
        // presentation of Z, blockwise
        let zb = u.blocks(z);
        let xb = u.blocks(x);
        let t: usize = zb.iter().map(|(j, _)| self.pres[*j].rank).sum();
        let dz = u.dim_of(z);
        let dx = u.dim_of(x);
        let domega: usize = zb.iter().map(|(j, _)| self.pres[*j].omega_dim).sum();
        let n = alg.dim();
        let pmod = Module::free(alg, t);
        let mut cover = Mat::zeros(f, dz, n * t);
        let mut iota = Mat::zeros(f, n * t, domega);
        let mut omega_off = Vec::with_capacity(zb.len());
        let (mut po, mut oo) = (0, 0);
        for &(j, zoff) in &zb {
            let pr = &self.pres[j];
            cover.set_block(zoff, po, &pr.cover);
            iota.set_block(po, oo, &pr.omega_incl);
            omega_off.push(oo);
            po += n * pr.rank;
            oo += pr.omega_dim;
        }
        let xmod = u.module_of(x);
        // coordinate layout: (z block, x block, class index)
        let mut layout = Vec::new();
        for (zi, &(j, _)) in zb.iter().enumerate() {
            for &(i, xoff) in &xb {
                for r in &self.reps[j][i] {
                    layout.push((omega_off[zi], xoff, r));
                }
            }
        }
        let mut first = true;
        let mut result = Ok(true);
        for_each_vector(f, e, |c| {
            if first {
                first = false;
                return true;
            }
            let mut xi = Mat::zeros(f, dx, domega);
            for (k, &(oo, xo, r)) in layout.iter().enumerate() {
                if c[k] != 0 {
                    let mut blk = xi.block(xo, oo, r.rows(), r.cols());
                    blk.axpy(c[k], r);
                    xi.set_block(xo, oo, &blk);
                }
            }
            let step = (|| -> Result<bool> {
                let (ymod, fx, hp) = pushout(&pmod, &xmod, &iota, &xi)?;
                let q = hp.hstack(&fx);
                let target = cover.hstack(&Mat::zeros(f, dz, dx));
                let g = q
                    .transpose()
                    .solve_matrix(&target.transpose())
                    .ok_or_else(|| Error::Contract("pushout does not map onto the end term".into()))?
                    .transpose();
                let (ym, tmat) = match u.normalize(&ymod) {
                    Err(Error::ForeignSummand(_)) => {
                        ctx.note_foreign();
                        return Ok(true);
                    }
                    other => other?,
                };
                let tinv = tmat.inverse().expect("normalize returns an isomorphism");
                visit(Conflation {
                    x: x.to_vec(),
                    y: ym,
                    z: z.to_vec(),
                    f: tmat.mul(&fx),
                    g: g.mul(&tinv),
                })
            })();
            match step {
                Ok(true) => true,
                Ok(false) => {
                    result = Ok(false);
                    false
                }
                Err(err) => {
                    result = Err(err);
                    false
                }
            }
        });
        result
    }
}

/// Middle terms of all extensions of `z` by `x` (with repetitions).
pub fn middle_terms(ctx: &Context, x: &[usize], z: &[usize]) -> Result<Vec<MultVec>> {
    let mut out = Vec::new();
    ctx.ext.for_each_extension(ctx, x, z, |c| {
        out.push(c.y);
        Ok(true)
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::is_kernel_cokernel_pair;
    use crate::rep::presets::preset;
    use crate::rep::DEFAULT_CAP;

    #[test]
    fn self_extensions_of_simple_over_dual_numbers() {
        let u = preset("xquot:2,2").unwrap().universe(2, DEFAULT_CAP).unwrap();
        let ctx = Context::new(u).unwrap();
        assert_eq!(ctx.ext.seed_ext_dim(0, 0), 1);
        assert_eq!(ctx.ext.seed_ext_dim(1, 0), 0);
        let mut mids = middle_terms(&ctx, &[1, 0], &[1, 0]).unwrap();
        mids.sort();
        assert_eq!(mids, vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(middle_terms(&ctx, &[0, 0], &[1, 0]).unwrap(), vec![vec![1, 0]]);
    }

    #[test]
    fn ext_dims_truncated_poly() {
        // dim Ext¹(M_j, M_i) = min(i, j, n - i, n - j) over k[x]/(x^n)
        let n = 4;
        let u = preset("xquot:2,4").unwrap().universe(1, DEFAULT_CAP).unwrap();
        let ext = ExtData::new(&u).unwrap();
        for j in 0..n {
            for i in 0..n {
                let (a, b) = (i + 1, j + 1);
                let want = a.min(b).min(n - a).min(n - b);
                assert_eq!(ext.seed_ext_dim(j, i), want, "Ext(M{b}, M{a})");
            }
        }
    }

    #[test]
    fn every_extension_is_a_kc_pair_of_homs() {
        let ctx = Context::new(preset("xquot:3,3").unwrap().universe(1, DEFAULT_CAP).unwrap()).unwrap();
        let u = &ctx.universe;
        for x in u.objects() {
            for z in u.objects() {
                ctx.ext.for_each_extension(&ctx, x, z, |c| {
                    assert!(is_kernel_cokernel_pair(&c.f, &c.g));
                    assert!(u.hom_coords(&c.x, &c.y, &c.f).is_some());
                    assert!(u.hom_coords(&c.y, &c.z, &c.g).is_some());
                    assert_eq!(u.dim_of(&c.y), u.dim_of(x) + u.dim_of(z));
                    Ok(true)
                })
                .unwrap();
            }
        }
    }
}

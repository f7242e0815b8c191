//! Krull–Schmidt decomposition without reference to a seed list, via Fitting's
//! lemma, and module isomorphism testing.

use crate::error::{Error, Result};
use crate::gf::{for_each_vector, space_size, Mat, Subspace};
use crate::rep::algebra::Algebra;
use crate::rep::module::{find_isomorphism, hom_space, image_space, Module};

/// One indecomposable summand of a module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    /// summand -> M
    pub inclusion: Mat,
    /// M -> summand
    pub projection: Mat,
    /// `inclusion * projection`, an idempotent endomorphism of M
    pub idempotent: Mat,
}

/// If `e^d` (d = dim M) is neither zero nor invertible, M = im e^d ⊕ ker e^d.
fn fitting_split(m: &Module, e: &Mat) -> Option<(Subspace, Subspace)> {
    let ed = e.pow(m.dim());
    if ed.is_zero() || ed.is_invertible() {
        return None;
    }
    let im = image_space(&ed);
    let ker = Subspace::span(m.field(), m.dim(), &ed.nullspace());
    Some((im, ker))
}

fn find_split(m: &Module, end: &[Mat], cap: u128) -> Result<Option<(Subspace, Subspace)>> {
    let f = m.field();
    if space_size(f, end.len()) <= cap {
        let mut found = None;
        for_each_vector(f, end.len(), |c| {
            let mut e = Mat::zeros(f, m.dim(), m.dim());
            for (ci, b) in c.iter().zip(end) {
                e.axpy(*ci, b);
            }
            found = fitting_split(m, &e);
            found.is_none()
        });
        return Ok(found);
    }
    // basis-generated search: basis elements, shifts by scalars, pairwise sums
    let id = m.identity();
    for b in end {
        for lam in 0..f.p() {
            let mut e = b.clone();
            e.axpy(lam, &id);
            if let Some(s) = fitting_split(m, &e) {
                return Ok(Some(s));
            }
        }
    }
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            if let Some(s) = fitting_split(m, &end[i].add(&end[j])) {
                return Ok(Some(s));
            }
        }
    }
    Err(Error::Undecidable(format!(
        "|End| = {}^{} exceeds cap {} and no splitting endomorphism was found",
        f.p(),
        end.len(),
        cap
    )))
}

fn collect(alg: &Algebra, m: &Module, incl: &Mat, cap: u128, out: &mut Vec<(Module, Mat)>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    let end = hom_space(alg, m, m);
    match find_split(m, &end, cap)? {
        None => out.push((m.clone(), incl.clone())),
        Some((a, b)) => {
            for sub in [a, b] {
                let (sm, si) = m.submodule(&sub)?;
                collect(alg, &sm, &incl.mul(&si), cap, out)?;
            }
        }
    }
    Ok(())
}

/// Decomposes `m` into indecomposables.
///
/// A module is declared indecomposable only when every endomorphism is
/// nilpotent or invertible; if End(M) is too large to enumerate and the
/// basis-generated search finds no split, the result is `Undecidable`.
pub fn indecompose(alg: &Algebra, m: &Module, cap: u128) -> Result<Vec<Summand>> {
    let mut parts = Vec::new();
    collect(alg, m, &m.identity(), cap, &mut parts)?;
    if parts.is_empty() {
        return Ok(Vec::new());
    }
    let f = m.field();
    let mut q = Mat::zeros(f, m.dim(), 0);
    for (_, i) in &parts {
        q = q.hstack(i);
    }
    let qinv = q
        .inverse()
        .ok_or_else(|| Error::Contract("summand inclusions do not span".into()))?;
    let mut out = Vec::with_capacity(parts.len());
    let mut row = 0;
    for (module, inclusion) in parts {
        let projection = qinv.block(row, 0, module.dim(), m.dim());
        row += module.dim();
        let idempotent = inclusion.mul(&projection);
        out.push(Summand {
            module,
            inclusion,
            projection,
            idempotent,
        });
    }
    Ok(out)
}

pub fn is_indecomposable(alg: &Algebra, m: &Module, cap: u128) -> Result<bool> {
    Ok(indecompose(alg, m, cap)?.len() == 1)
}

/// An explicit isomorphism `m -> n`, if one exists.
///
/// Searches Hom(m, n) directly when it fits under `cap`; otherwise matches
/// Krull–Schmidt summands pairwise.
pub fn are_isomorphic(alg: &Algebra, m: &Module, n: &Module, cap: u128) -> Result<Option<Mat>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    match find_isomorphism(alg, m, n, cap) {
        Err(Error::CapExceeded(_)) => {}
        other => return other,
    }
    let sm = indecompose(alg, m, cap)?;
    let sn = indecompose(alg, n, cap)?;
    if sm.len() != sn.len() {
        return Ok(None);
    }
    let mut used = vec![false; sn.len()];
    let mut iso = Mat::zeros(alg.field(), n.dim(), m.dim());
    for a in &sm {
        let mut matched = false;
        for (j, b) in sn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = are_isomorphic(alg, &a.module, &b.module, cap)? {
                iso = iso.add(&b.inclusion.mul(&phi).mul(&a.projection));
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    Ok(Some(iso))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Algebra, Module, Module) {
        let alg = Algebra::truncated_poly(2, 2).unwrap();
        let f = alg.field();
        let s = Module::new(&alg, vec![Mat::identity(f, 1), Mat::zeros(f, 1, 1)]).unwrap();
        (alg.clone(), s, Module::regular(&alg))
    }

    #[test]
    fn sum_splits_into_known_pieces() {
        let (alg, s, p) = setup();
        let parts = indecompose(&alg, &s.direct_sum(&p), 1 << 16).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|x| x.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        for x in &parts {
            assert_eq!(x.idempotent.mul(&x.idempotent), x.idempotent);
            assert_eq!(x.projection.mul(&x.inclusion), x.module.identity());
        }
    }

    #[test]
    fn regular_is_indecomposable_zero_is_empty() {
        let (alg, _, p) = setup();
        assert!(is_indecomposable(&alg, &p, 1 << 16).unwrap());
        assert!(indecompose(&alg, &Module::zero(&alg), 16).unwrap().is_empty());
    }

    #[test]
    fn iso_via_summand_matching_when_cap_is_tiny() {
        let (alg, s, p) = setup();
        let a = s.direct_sum(&p);
        let b = p.direct_sum(&s);
        // cap 2 forbids the direct search over the 2^5 hom space
        let iso = are_isomorphic(&alg, &a, &b, 4).unwrap().unwrap();
        assert!(iso.is_invertible());
        assert!(crate::rep::module::is_homomorphism(&alg, &a, &b, &iso));
        assert!(are_isomorphic(&alg, &p, &s.direct_sum(&s), 4).unwrap().is_none());
    }

    #[test]
    fn undecidable_is_reported() {
        // over a field every module is semisimple; End(k^3) = M_3(k) has a
        // nilpotent-or-invertible basis, so the cheap search fails loudly
        let alg = Algebra::truncated_poly(2, 1).unwrap();
        let f = alg.field();
        let m = Module::new(&alg, vec![Mat::identity(f, 3)]).unwrap();
        let r = indecompose(&alg, &m, 2);
        match r {
            Err(e) => assert!(e.is_inconclusive()),
            Ok(parts) => assert_eq!(parts.len(), 3),
        }
        assert_eq!(indecompose(&alg, &m, 1 << 10).unwrap().len(), 3);
    }
}

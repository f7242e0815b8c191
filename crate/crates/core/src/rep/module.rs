//! Modules as matrix representations, and the basic constructions on them:
//! hom-spaces, sums, submodules, quotients, kernels, cokernels, pullbacks and
//! pushouts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{for_each_vector, space_size, Mat, PrimeField, Subspace};
use crate::rep::algebra::Algebra;

/// A finite-dimensional left module: one action matrix per algebra basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Module {
    dim: usize,
    field: PrimeField,
    action: Vec<Mat>,
}

impl Module {
    /// Validates the module axioms against the algebra's structure constants.
    pub fn new(alg: &Algebra, action: Vec<Mat>) -> Result<Module> {
        let f = alg.field();
        if action.len() != alg.dim() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                alg.dim()
            )));
        }
        let d = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::InvalidModule("action matrices are not all d x d".into()));
        }
        let m = Module { dim: d, field: f, action };
        m.check(alg)?;
        Ok(m)
    }

    fn check(&self, alg: &Algebra) -> Result<()> {
        let n = alg.dim();
        let unit = self.act_by(alg.unit());
        if unit != Mat::identity(self.field, self.dim) {
            return Err(Error::InvalidModule("unit does not act as the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.act_by(alg.structure_coeff(i, j));
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action violates structure constants at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(alg: &Algebra) -> Module {
        Module {
            dim: 0,
            field: alg.field(),
            action: vec![Mat::zeros(alg.field(), 0, 0); alg.dim()],
        }
    }

    /// The regular module A acting on itself by left multiplication.
    pub fn regular(alg: &Algebra) -> Module {
        Module {
            dim: alg.dim(),
            field: alg.field(),
            action: (0..alg.dim()).map(|i| alg.left_mult(i).clone()).collect(),
        }
    }

    pub fn free(alg: &Algebra, rank: usize) -> Module {
        let r = Module::regular(alg);
        (0..rank).fold(Module::zero(alg), |acc, _| acc.direct_sum(&r))
    }

    /// Builds a module without validation; callers guarantee the axioms.
    pub(crate) fn from_action_unchecked(field: PrimeField, dim: usize, action: Vec<Mat>) -> Module {
        Module { dim, field, action }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn action(&self, i: usize) -> &Mat {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action of an arbitrary algebra element given in coordinates.
    pub fn act_by(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            m.axpy(c, &self.action[i]);
        }
        m
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        Module {
            dim: self.dim + other.dim,
            field: self.field,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.block_diag(b))
                .collect(),
        }
    }

    /// Submodule on an invariant subspace, with its inclusion map.
    pub fn submodule(&self, sub: &Subspace) -> Result<(Module, Mat)> {
        let f = self.field;
        let k = sub.dim();
        let incl = Mat::from_cols(f, self.dim, sub.basis());
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let mut m = Mat::zeros(f, k, k);
            for (c, v) in sub.basis().iter().enumerate() {
                let w = a.mul_vec(v);
                let coords = sub
                    .coordinates(&w)
                    .ok_or_else(|| Error::Contract("subspace is not a submodule".into()))?;
                for (r, x) in coords.into_iter().enumerate() {
                    m[(r, c)] = x;
                }
            }
            action.push(m);
        }
        Ok((Module { dim: k, field: f, action }, incl))
    }

    /// Quotient by an invariant subspace, with the projection map.
    pub fn quotient(&self, sub: &Subspace) -> Result<(Module, Mat)> {
        let f = self.field;
        let free = sub.free_columns();
        let q = free.len();
        let proj = self.quotient_projection(sub, &free);
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            for v in sub.basis() {
                if !sub.contains(&a.mul_vec(v)) {
                    return Err(Error::Contract("subspace is not a submodule".into()));
                }
            }
            // image of e_c for each free column c, then projected
            let lifted = a.select_cols(&free);
            action.push(proj.mul(&lifted));
        }
        let _ = q;
        Ok((Module { dim: free.len(), field: f, action }, proj))
    }

    fn quotient_projection(&self, sub: &Subspace, free: &[usize]) -> Mat {
        let f = self.field;
        let mut proj = Mat::zeros(f, free.len(), self.dim);
        for c in 0..self.dim {
            let mut e = vec![0u32; self.dim];
            e[c] = 1 % f.p();
            let r = sub.reduce(&e);
            for (i, &fc) in free.iter().enumerate() {
                proj[(i, c)] = r[fc];
            }
        }
        proj
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated_submodule(&self, alg: &Algebra, vectors: &[Vec<u32>]) -> Subspace {
        let mut v = Subspace::span(self.field, self.dim, vectors);
        loop {
            let mut vecs = v.basis().to_vec();
            for b in v.basis() {
                for &g in alg.generators() {
                    vecs.push(self.action[g].mul_vec(b));
                }
            }
            let next = Subspace::span(self.field, self.dim, &vecs);
            if next.dim() == v.dim() {
                return next;
            }
            v = next;
        }
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.field, self.dim)
    }
}

/// True if `f: m -> n` commutes with the action of every algebra generator.
pub fn is_homomorphism(alg: &Algebra, m: &Module, n: &Module, f: &Mat) -> bool {
    if f.rows() != n.dim() || f.cols() != m.dim() {
        return false;
    }
    alg.generators()
        .iter()
        .all(|&g| f.mul(m.action(g)) == n.action(g).mul(f))
}

/// Canonical basis of Hom_A(m, n) as dim(n) x dim(m) matrices.
pub fn hom_space(alg: &Algebra, m: &Module, n: &Module) -> Vec<Mat> {
    let f = alg.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Vec::new();
    }
    let gens = alg.generators();
    if gens.is_empty() {
        // semisimple field case: every linear map intertwines
        return (0..unknowns)
            .map(|k| {
                let mut v = vec![0u32; unknowns];
                v[k] = 1;
                Mat::from_vec(f, dn, dm, v)
            })
            .collect();
    }
    // X is dn x dm, row-major unknown x[r*dm + c].
    // (X ρm(g) - ρn(g) X)[r, c] = Σ_k X[r,k] ρm[k,c] - Σ_k ρn[r,k] X[k,c]
    let mut eq = Mat::zeros(f, gens.len() * unknowns, unknowns);
    for (gi, &g) in gens.iter().enumerate() {
        let am = m.action(g);
        let an = n.action(g);
        for r in 0..dn {
            for c in 0..dm {
                let row = gi * unknowns + r * dm + c;
                for k in 0..dm {
                    let v = am[(k, c)];
                    if v != 0 {
                        let col = r * dm + k;
                        eq[(row, col)] = f.add(eq[(row, col)], v);
                    }
                }
                for k in 0..dn {
                    let v = an[(r, k)];
                    if v != 0 {
                        let col = k * dm + c;
                        eq[(row, col)] = f.sub(eq[(row, col)], v);
                    }
                }
            }
        }
    }
    // canonical: rref the nullspace so the basis only depends on the space
    let ns = eq.nullspace();
    let sp = Subspace::span(f, unknowns, &ns);
    sp.basis()
        .iter()
        .map(|v| Mat::from_vec(f, dn, dm, v.clone()))
        .collect()
}

/// Composition `g ∘ f`, checking that the inner dimensions agree.
pub fn compose(g: &Mat, f: &Mat) -> Result<Mat> {
    if g.cols() != f.rows() {
        return Err(Error::Contract(format!(
            "cannot compose: target of f has dim {}, source of g has dim {}",
            f.rows(),
            g.cols()
        )));
    }
    Ok(g.mul(f))
}

/// A morphism is an isomorphism iff its matrix is square and invertible.
pub fn is_isomorphism(f: &Mat) -> bool {
    f.is_invertible()
}

/// Searches Hom(m, n) for an invertible element; `cap` bounds the enumeration.
pub fn find_isomorphism(alg: &Algebra, m: &Module, n: &Module, cap: u128) -> Result<Option<Mat>> {
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(Mat::zeros(alg.field(), 0, 0)));
    }
    let basis = hom_space(alg, m, n);
    let f = alg.field();
    if space_size(f, basis.len()) > cap {
        return Err(Error::CapExceeded(format!(
            "|Hom| = {}^{} exceeds cap {}",
            f.p(),
            basis.len(),
            cap
        )));
    }
    let mut found = None;
    for_each_vector(f, basis.len(), |c| {
        let mut x = Mat::zeros(f, n.dim(), m.dim());
        for (ci, b) in c.iter().zip(&basis) {
            x.axpy(*ci, b);
        }
        if x.is_invertible() {
            found = Some(x);
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// Kernel of `g: m -> n` as a submodule with its inclusion.
pub fn kernel(m: &Module, g: &Mat) -> Result<(Module, Mat)> {
    let sub = Subspace::span(m.field(), m.dim(), &g.nullspace());
    m.submodule(&sub)
}

pub fn image_space(f: &Mat) -> Subspace {
    let cols: Vec<Vec<u32>> = (0..f.cols()).map(|c| f.col(c)).collect();
    Subspace::span(f.field(), f.rows(), &cols)
}

/// Cokernel of `f: m -> n` as a quotient module with its projection.
pub fn cokernel(n: &Module, f: &Mat) -> Result<(Module, Mat)> {
    n.quotient(&image_space(f))
}

/// Pullback of `g: b -> c` along `h: c2 -> c`.
///
/// Returns `(B', g', h')` with `g': B' -> c2` and `h': B' -> b`.
pub fn pullback(b: &Module, c2: &Module, g: &Mat, h: &Mat) -> Result<(Module, Mat, Mat)> {
    if g.rows() != h.rows() {
        return Err(Error::Contract("pullback: g and h have different targets".into()));
    }
    let sum = b.direct_sum(c2);
    let gh = g.hstack(&h.neg());
    let (bp, incl) = kernel(&sum, &gh)?;
    let db = b.dim();
    let h_prime = incl.block(0, 0, db, incl.cols());
    let g_prime = incl.block(db, 0, c2.dim(), incl.cols());
    Ok((bp, g_prime, h_prime))
}

/// Pushout of `f: a -> b` along `h: a -> a2`.
///
/// Returns `(B', f', h')` with `f': a2 -> B'` and `h': b -> B'`.
pub fn pushout(b: &Module, a2: &Module, f: &Mat, h: &Mat) -> Result<(Module, Mat, Mat)> {
    if f.cols() != h.cols() {
        return Err(Error::Contract("pushout: f and h have different sources".into()));
    }
    let sum = b.direct_sum(a2);
    let fh = f.vstack(&h.neg());
    let (bp, proj) = cokernel(&sum, &fh)?;
    let db = b.dim();
    let h_prime = proj.block(0, 0, proj.rows(), db);
    let f_prime = proj.block(0, db, proj.rows(), a2.dim());
    Ok((bp, f_prime, h_prime))
}

/// Block matrix helpers for maps between direct sums.
pub fn inclusion(field: PrimeField, dims: &[usize], which: usize) -> Mat {
    let total: usize = dims.iter().sum();
    let off: usize = dims[..which].iter().sum();
    let mut m = Mat::zeros(field, total, dims[which]);
    for i in 0..dims[which] {
        m[(off + i, i)] = 1;
    }
    m
}

pub fn projection(field: PrimeField, dims: &[usize], which: usize) -> Mat {
    inclusion(field, dims, which).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Algebra, Module, Module) {
        let alg = Algebra::truncated_poly(2, 2).unwrap();
        let s = Module::new(&alg, vec![Mat::identity(alg.field(), 1), Mat::zeros(alg.field(), 1, 1)]).unwrap();
        let p = Module::regular(&alg);
        (alg, s, p)
    }

    #[test]
    fn hom_dimensions() {
        let (alg, s, p) = setup();
        assert_eq!(hom_space(&alg, &s, &s).len(), 1);
        assert_eq!(hom_space(&alg, &p, &p).len(), 2);
        assert_eq!(hom_space(&alg, &s, &p).len(), 1);
        assert_eq!(hom_space(&alg, &p, &s).len(), 1);
    }

    #[test]
    fn socle_top_composite_vanishes() {
        let (alg, s, p) = setup();
        let i = &hom_space(&alg, &s, &p)[0];
        let q = &hom_space(&alg, &p, &s)[0];
        assert!(!i.is_zero() && !q.is_zero());
        assert!(compose(q, i).unwrap().is_zero());
        assert!(compose(i, i).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let (alg, s, p) = setup();
        assert!(find_isomorphism(&alg, &p, &p, 1 << 16).unwrap().is_some());
        assert!(find_isomorphism(&alg, &s, &p, 1 << 16).unwrap().is_none());
        let ss = s.direct_sum(&s);
        // exhaustive over the 4-element hom space: no invertible intertwiner
        assert_eq!(hom_space(&alg, &p, &ss).len(), 2);
        assert!(find_isomorphism(&alg, &p, &ss, 1 << 16).unwrap().is_none());
        assert!(!is_isomorphism(&Mat::zeros(alg.field(), 2, 2)));
        assert!(!is_isomorphism(&hom_space(&alg, &s, &p)[0]));
    }

    #[test]
    fn kernel_cokernel_examples() {
        let (alg, s, p) = setup();
        let q = hom_space(&alg, &p, &s)[0].clone();
        let (k, incl) = kernel(&p, &q).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(is_homomorphism(&alg, &k, &p, &incl));
        assert!(find_isomorphism(&alg, &k, &s, 16).unwrap().is_some());
        let (c, proj) = cokernel(&p, &incl).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(is_homomorphism(&alg, &p, &c, &proj));
        let (k0, _) = kernel(&p, &p.identity()).unwrap();
        assert_eq!(k0.dim(), 0);
        let (c0, _) = cokernel(&p, &p.identity()).unwrap();
        assert_eq!(c0.dim(), 0);
        let zero = Mat::zeros(alg.field(), 1, 2);
        assert_eq!(kernel(&p, &zero).unwrap().0.dim(), 2);
    }

    #[test]
    fn pullback_of_top_along_iso_is_regular() {
        let (alg, s, p) = setup();
        let q = hom_space(&alg, &p, &s)[0].clone();
        let (bp, gp, hp) = pullback(&p, &s, &q, &s.identity()).unwrap();
        assert_eq!(bp.dim(), 2);
        assert!(find_isomorphism(&alg, &bp, &p, 16).unwrap().is_some());
        assert!(is_homomorphism(&alg, &bp, &s, &gp));
        assert!(is_homomorphism(&alg, &bp, &p, &hp));
        assert_eq!(q.mul(&hp), gp);
    }

    #[test]
    fn pushout_of_socle_along_iso_is_regular() {
        let (alg, s, p) = setup();
        let i = hom_space(&alg, &s, &p)[0].clone();
        let (bp, fp, hp) = pushout(&p, &s, &i, &s.identity()).unwrap();
        assert!(find_isomorphism(&alg, &bp, &p, 16).unwrap().is_some());
        assert_eq!(hp.mul(&i), fp);
    }

    #[test]
    fn direct_sum_projections() {
        let (alg, s, p) = setup();
        let sp = s.direct_sum(&p);
        assert_eq!(sp.dim(), 3);
        let dims = [1, 2];
        let i = inclusion(alg.field(), &dims, 1);
        let q = projection(alg.field(), &dims, 1);
        assert_eq!(q.mul(&i), Mat::identity(alg.field(), 2));
        assert!(is_homomorphism(&alg, &p, &sp, &i));
        let z = Module::zero(&alg);
        assert_eq!(s.direct_sum(&z), s);
    }
}

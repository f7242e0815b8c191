//! Finite-dimensional algebras given by structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Mat, PrimeField, Subspace};

/// Raw, unvalidated description of an algebra.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraSpec {
    pub p: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    /// Coordinates of the unit element.
    pub unit: Vec<i64>,
    /// `(i, j, k, c)`: the coefficient of `b_k` in `b_i * b_j` is `c`.
    pub structure: Vec<(usize, usize, usize, i64)>,
    pub commutative: bool,
}

/// A validated associative unital algebra over GF(p).
#[derive(Clone, Debug)]
pub struct Algebra {
    field: PrimeField,
    dim: usize,
    labels: Vec<String>,
    /// c[i][j] = coordinates of b_i * b_j
    table: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
    commutative: bool,
    /// left multiplication by each basis element
    left: Vec<Mat>,
    /// basis indices generating the algebra
    generators: Vec<usize>,
    /// basis index of a nilpotent element whose powers span the algebra
    monogenic: Option<usize>,
}

impl Algebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Algebra> {
        let field = PrimeField::new(spec.p)?;
        let n = spec.dim;
        let mut problems = Vec::new();
        if spec.labels.len() != n {
            problems.push(format!("{} labels given for dimension {}", spec.labels.len(), n));
        }
        if spec.unit.len() != n {
            problems.push(format!("unit has {} coordinates, expected {}", spec.unit.len(), n));
        }
        let mut table = vec![vec![vec![0u32; n]; n]; n];
        for (idx, &(i, j, k, c)) in spec.structure.iter().enumerate() {
            if i >= n || j >= n || k >= n {
                problems.push(format!("structure triple #{idx} ({i}, {j}, {k}) out of range"));
                continue;
            }
            table[i][j][k] = field.add(table[i][j][k], field.reduce(c));
        }
        if !problems.is_empty() {
            return Err(Error::InvalidAlgebra(problems));
        }
        let unit: Vec<u32> = spec.unit.iter().map(|&u| field.reduce(u)).collect();
        Algebra::from_table(field, spec.labels.clone(), table, unit, spec.commutative)
    }

    pub fn from_table(
        field: PrimeField,
        labels: Vec<String>,
        table: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
        commutative: bool,
    ) -> Result<Algebra> {
        let n = table.len();
        let mut left = Vec::with_capacity(n);
        for row in table.iter() {
            let mut l = Mat::zeros(field, n, n);
            for (j, prod) in row.iter().enumerate() {
                for (k, &c) in prod.iter().enumerate() {
                    l[(k, j)] = c;
                }
            }
            left.push(l);
        }
        let mut alg = Algebra {
            field,
            dim: n,
            labels,
            table,
            unit,
            commutative,
            left,
            generators: Vec::new(),
            monogenic: None,
        };
        alg.check_axioms()?;
        alg.generators = alg.find_generators();
        alg.monogenic = alg.find_monogenic();
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        let f = self.field;
        let mut problems = Vec::new();
        let basis = |i: usize| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        };
        for i in 0..n {
            let bi = basis(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                problems.push(format!("unit violated at basis {i} ({})", self.labels[i]));
            }
        }
        'assoc: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&basis(i), &basis(j));
                for k in 0..n {
                    let lhs = self.mul(&ij, &basis(k));
                    let rhs = self.mul(&basis(i), &self.mul(&basis(j), &basis(k)));
                    if lhs != rhs {
                        problems.push(format!("associativity violated at ({i}, {j}, {k})"));
                        break 'assoc;
                    }
                }
            }
        }
        if self.commutative {
            'comm: for i in 0..n {
                for j in 0..i {
                    if self.table[i][j] != self.table[j][i] {
                        problems.push(format!("commutativity violated at ({j}, {i})"));
                        break 'comm;
                    }
                }
            }
        }
        let _ = f;
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra(problems))
        }
    }

    /// Greedy generating set: scan the basis, keeping every element not already
    /// in the subalgebra generated by the ones kept so far.
    fn find_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generated_subalgebra(&gens);
        for i in 0..self.dim {
            let mut e = vec![0u32; self.dim];
            e[i] = 1;
            if !span.contains(&e) {
                gens.push(i);
                span = self.generated_subalgebra(&gens);
            }
        }
        gens
    }

    fn generated_subalgebra(&self, gens: &[usize]) -> Subspace {
        let n = self.dim;
        let mut v = Subspace::span(self.field, n, &[self.unit.clone()]);
        loop {
            let mut vecs = v.basis().to_vec();
            for b in v.basis() {
                for &g in gens {
                    vecs.push(self.left[g].mul_vec(b));
                }
            }
            let next = Subspace::span(self.field, n, &vecs);
            if next.dim() == v.dim() {
                return next;
            }
            v = next;
        }
    }

    fn find_monogenic(&self) -> Option<usize> {
        if self.generators.len() != 1 || !self.commutative {
            return None;
        }
        let g = self.generators[0];
        let l = &self.left[g];
        if l.pow(self.dim).is_zero() {
            Some(g)
        } else {
            None
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[u32] {
        &self.unit
    }
    pub fn is_commutative(&self) -> bool {
        self.commutative
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    /// Basis index of a nilpotent generator, when the algebra is k[t]/(t^n).
    pub fn monogenic_generator(&self) -> Option<usize> {
        self.monogenic
    }

    /// Left multiplication by basis element `i`, as a matrix on coordinates.
    pub fn left_mult(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mult_by(&self, a: &[u32]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            m.axpy(c, &self.left[i]);
        }
        m
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let s = f.mul(ai, bj);
                for (o, &c) in out.iter_mut().zip(&self.table[i][j]) {
                    if c != 0 {
                        *o = f.add(*o, f.mul(s, c));
                    }
                }
            }
        }
        out
    }

    pub fn structure_coeff(&self, i: usize, j: usize) -> &[u32] {
        &self.table[i][j]
    }

    /// k[x]/(x^n) with basis 1, x, ..., x^{n-1}.
    pub fn truncated_poly(p: u32, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(Error::Contract("truncated polynomial ring needs n >= 1".into()));
        }
        let field = PrimeField::new(p)?;
        let mut table = vec![vec![vec![0u32; n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, prod) in row.iter_mut().enumerate() {
                if i + j < n {
                    prod[i + j] = 1;
                }
            }
        }
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut unit = vec![0u32; n];
        unit[0] = 1;
        Algebra::from_table(field, labels, table, unit, true)
    }

    /// k[x, y]/(x, y)^2 with basis 1, x, y.
    pub fn square_zero_plane(p: u32) -> Result<Algebra> {
        let field = PrimeField::new(p)?;
        let mut table = vec![vec![vec![0u32; 3]; 3]; 3];
        for i in 0..3 {
            table[0][i][i] = 1;
            table[i][0][i] = 1;
        }
        Algebra::from_table(
            field,
            vec!["1".into(), "x".into(), "y".into()],
            table,
            vec![1, 0, 0],
            true,
        )
    }

    /// k × k with basis of the two orthogonal idempotents.
    pub fn split_pair(p: u32) -> Result<Algebra> {
        let field = PrimeField::new(p)?;
        let mut table = vec![vec![vec![0u32; 2]; 2]; 2];
        table[0][0][0] = 1;
        table[1][1][1] = 1;
        Algebra::from_table(field, vec!["e1".into(), "e2".into()], table, vec![1, 1], true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual_numbers_spec() -> AlgebraSpec {
        AlgebraSpec {
            p: 2,
            dim: 2,
            labels: vec!["1".into(), "x".into()],
            unit: vec![1, 0],
            structure: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
            commutative: true,
        }
    }

    #[test]
    fn dual_numbers_valid() {
        let a = Algebra::from_spec(&dual_numbers_spec()).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_commutative());
        assert_eq!(a.generators(), &[1]);
        assert_eq!(a.monogenic_generator(), Some(1));
    }

    #[test]
    fn unit_violation_reported() {
        let mut s = dual_numbers_spec();
        s.structure.retain(|&(i, j, _, _)| !(i == 1 && j == 0));
        s.commutative = false;
        let err = Algebra::from_spec(&s).unwrap_err().to_string();
        assert!(err.contains("unit violated at basis 1"), "{err}");
    }

    #[test]
    fn commutativity_violation_reported() {
        // free algebra truncated: basis 1, a, b, ab with ba = 0
        let s = AlgebraSpec {
            p: 2,
            dim: 4,
            labels: vec!["1".into(), "a".into(), "b".into(), "ab".into()],
            unit: vec![1, 0, 0, 0],
            structure: vec![
                (0, 0, 0, 1),
                (0, 1, 1, 1),
                (1, 0, 1, 1),
                (0, 2, 2, 1),
                (2, 0, 2, 1),
                (0, 3, 3, 1),
                (3, 0, 3, 1),
                (1, 2, 3, 1),
            ],
            commutative: true,
        };
        let err = Algebra::from_spec(&s).unwrap_err().to_string();
        assert!(err.contains("commutativity violated"), "{err}");
        let mut s2 = s.clone();
        s2.commutative = false;
        assert!(Algebra::from_spec(&s2).is_ok());
    }

    #[test]
    fn non_associative_rejected() {
        // 1, a with a*a = 1 + a is fine (associative); break it with a bogus unit row
        let s = AlgebraSpec {
            p: 3,
            dim: 2,
            labels: vec!["1".into(), "a".into()],
            unit: vec![1, 0],
            structure: vec![(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (0, 0, 1, 1)],
            commutative: false,
        };
        assert!(Algebra::from_spec(&s).is_err());
    }

    #[test]
    fn presets() {
        let a = Algebra::truncated_poly(2, 4).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.monogenic_generator(), Some(1));
        let f = Algebra::truncated_poly(3, 1).unwrap();
        assert_eq!(f.dim(), 1);
        assert!(f.generators().is_empty());
        let q = Algebra::square_zero_plane(2).unwrap();
        assert_eq!(q.generators(), &[1, 2]);
        assert_eq!(q.monogenic_generator(), None);
        assert!(Algebra::split_pair(2).is_ok());
    }
}

use exquo::gf::{Mat, PrimeField, Subspace};
use exquo::rep::decompose::are_isomorphic;
use exquo::rep::module::{hom_space, is_homomorphism};
use exquo::rep::{Module, Universe, DEFAULT_CAP};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRESETS: [(&str, usize); 4] = [("xquot:2,3", 2), ("xquot:3,2", 2), ("xy2:2", 2), ("xquot:2,4", 1)];

fn universe(i: usize) -> Universe {
    let (name, bound) = PRESETS[i];
    exquo::rep::preset(name).unwrap().universe(bound, DEFAULT_CAP).unwrap()
}

fn random_invertible(f: PrimeField, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_data(f, n, n, (0..n * n).map(|_| rng.gen_range(0..f.p())).collect()).unwrap();
        if m.is_invertible() {
            return m;
        }
    }
}

fn conjugate(u: &Universe, m: &Module, t: &Mat) -> Module {
    let ti = t.inverse().unwrap();
    let actions = m.actions().iter().map(|a| t.mul(a).mul(&ti)).collect();
    Module::new(u.algebra(), actions).unwrap()
}

fn random_vecs(f: PrimeField, n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..f.p())).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalize_is_invariant_under_conjugation(p in 0..PRESETS.len(), obj in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let u = universe(p);
        let m = u.object(obj.index(u.len())).clone();
        let module = u.module_of(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_invertible(u.algebra().field(), module.dim(), &mut rng);
        let conj = conjugate(&u, &module, &t);
        let (v, iso) = u.normalize(&conj).unwrap();
        prop_assert_eq!(&v, &m);
        prop_assert!(is_homomorphism(u.algebra(), &conj, &u.module_of(&v), &iso));
        prop_assert!(iso.is_invertible());
    }

    #[test]
    fn isomorphism_is_an_equivalence(p in 0..PRESETS.len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let u = universe(p);
        let alg = u.algebra();
        let (ma, mb) = (u.module_of(u.object(a.index(u.len()))), u.module_of(u.object(b.index(u.len()))));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ca = conjugate(&u, &ma, &random_invertible(alg.field(), ma.dim(), &mut rng));
        // reflexive, through a disguised copy
        let iso = are_isomorphic(alg, &ma, &ca, DEFAULT_CAP).unwrap().expect("conjugate is isomorphic");
        prop_assert!(is_homomorphism(alg, &ma, &ca, &iso) && iso.is_invertible());
        // symmetric
        let ab = are_isomorphic(alg, &ma, &mb, DEFAULT_CAP).unwrap().is_some();
        let ba = are_isomorphic(alg, &mb, &ma, DEFAULT_CAP).unwrap().is_some();
        prop_assert_eq!(ab, ba);
        // distinct canonical objects are never isomorphic
        prop_assert_eq!(ab, a.index(u.len()) == b.index(u.len()));
        // transitive through the conjugate
        prop_assert_eq!(are_isomorphic(alg, &ca, &mb, DEFAULT_CAP).unwrap().is_some(), ab);
    }

    #[test]
    fn hom_dims_agree_with_generic_solver(p in 0..PRESETS.len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let u = universe(p);
        let (x, y) = (u.object(a.index(u.len())).clone(), u.object(b.index(u.len())).clone());
        let generic = hom_space(u.algebra(), &u.module_of(&x), &u.module_of(&y));
        prop_assert_eq!(u.hom_dim(&x, &y), generic.len());
        for h in u.hom_basis(&x, &y) {
            prop_assert!(is_homomorphism(u.algebra(), &u.module_of(&x), &u.module_of(&y), &h));
        }
        // additivity in the first argument
        let s = u.add(&x, &x);
        prop_assert_eq!(u.hom_dim(&s, &y), 2 * u.hom_dim(&x, &y));
    }

    #[test]
    fn subspace_dimension_formula(p in prop::sample::select(vec![2u32, 3, 5]), n in 1usize..8, k1 in 0usize..6, k2 in 0usize..6, seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Subspace::span(f, n, &random_vecs(f, n, k1, &mut rng));
        let b = Subspace::span(f, n, &random_vecs(f, n, k2, &mut rng));
        let (s, i) = (a.sum(&b), a.intersection(&b));
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains_space(&a) && s.contains_space(&b));
        prop_assert!(a.contains_space(&i) && b.contains_space(&i));
        for v in i.basis() {
            prop_assert!(a.contains(v) && b.contains(v));
            prop_assert!(a.reduce(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_returns_solutions(p in prop::sample::select(vec![2u32, 3, 5]), r in 1usize..7, c in 1usize..7, seed in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = Mat::from_data(f, r, c, random_vecs(f, r * c, 1, &mut rng).remove(0)).unwrap();
        let x0 = random_vecs(f, c, 1, &mut rng).remove(0);
        let b = m.mul_vec(&x0);
        let (x, kernel) = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&x), b);
        prop_assert_eq!(kernel.len(), c - m.rank());
        for k in &kernel {
            prop_assert!(m.mul_vec(k).iter().all(|&v| v == 0));
        }
    }
}

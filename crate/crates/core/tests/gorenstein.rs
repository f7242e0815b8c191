mod common;

use exquo::gf::Mat;
use exquo::gorenstein::{biduality, dual_map, ext_dims, is_totally_reflexive, resolve, ring_info};
use exquo::rep::decompose::are_isomorphic;
use exquo::rep::module::{hom_space, is_homomorphism};
use exquo::rep::{Algebra, Module, DEFAULT_CAP};
use proptest::prelude::*;

/// dim Ext^d(M, R) from the short exact sequences of syzygies:
/// 0 -> Hom(Ω^{d-1}, R) -> Hom(F_{d-1}, R) -> Hom(Ω^d, R) -> Ext^d(M, R) -> 0.
fn ext_by_hom_counting(alg: &Algebra, syz: &[Module], ranks: &[usize], d: usize) -> usize {
    let r = Module::regular(alg);
    let hom = |m: &Module| hom_space(alg, m, &r).len();
    hom(&syz[d]) + hom(&syz[d - 1]) - ranks[d - 1] * alg.dim()
}

#[test]
fn ext_dims_match_hom_counting() {
    for (name, bound) in [("xquot:2,3", 2), ("xquot:3,2", 2), ("xy2:2", 2)] {
        let c = common::ctx(name, bound);
        let u = &c.universe;
        let alg = u.algebra();
        for m in u.objects() {
            let res = resolve(alg, &u.module_of(m), 4, DEFAULT_CAP).unwrap();
            let dims = ext_dims(alg, &res, 3);
            for d in 1..=3 {
                assert_eq!(dims[d - 1], ext_by_hom_counting(alg, &res.syzygies, &res.ranks, d), "{name} {} Ext^{d}", u.name(m));
            }
        }
    }
}

#[test]
fn resolutions_are_exact_and_minimal() {
    for (name, bound) in [("xquot:2,3", 2), ("xy2:2", 1), ("xquot:5,2", 1)] {
        let c = common::ctx(name, bound);
        let u = &c.universe;
        let alg = u.algebra();
        for m in u.objects() {
            let module = u.module_of(m);
            let res = resolve(alg, &module, 3, DEFAULT_CAP).unwrap();
            let aug = &res.augmentation;
            assert_eq!(aug.rank(), module.dim(), "augmentation onto {}", u.name(m));
            let mut prev = aug.clone();
            for (k, d) in res.differentials.iter().enumerate() {
                assert!(prev.mul(d).is_zero(), "d∘d at degree {}", k + 1);
                // ker(prev) = im(d)
                assert_eq!(d.rank(), prev.cols() - prev.rank(), "exactness at F_{k}");
                prev = d.clone();
            }
            // minimal: ranks equal the number of generators of each syzygy
            for (k, &r) in res.ranks.iter().enumerate() {
                let omega = &res.syzygies[k];
                let top = omega.dim() - rad_times(alg, omega);
                assert_eq!(r, top, "rank of F_{k}");
            }
        }
    }
}

/// dim(rad · M).
fn rad_times(alg: &Algebra, m: &Module) -> usize {
    let f = alg.field();
    let rad = exquo::gorenstein::radical(alg).unwrap();
    let mut vecs = Vec::new();
    for r in rad.basis() {
        let a = m.act_by(r);
        for c in 0..m.dim() {
            vecs.push(a.col(c));
        }
    }
    exquo::gf::Subspace::span(f, m.dim(), &vecs).dim()
}

#[test]
fn detected_periods_are_isomorphisms() {
    for (name, bound) in [("xquot:2,3", 2), ("xquot:3,3", 1), ("xy2:2", 1)] {
        let c = common::ctx(name, bound);
        let u = &c.universe;
        let alg = u.algebra();
        for m in u.objects() {
            let res = resolve(alg, &u.module_of(m), 4, DEFAULT_CAP).unwrap();
            if let Some((i, j)) = res.period {
                assert!(are_isomorphic(alg, &res.syzygies[i], &res.syzygies[j], DEFAULT_CAP).unwrap().is_some());
                // the ranks repeat with the same period further out
                let deeper = resolve(alg, &u.module_of(m), j + 3, DEFAULT_CAP).unwrap();
                for k in i..=deeper.ranks.len() - 1 - (j - i) {
                    assert_eq!(deeper.ranks[k], deeper.ranks[k + j - i], "{} rank {k}", u.name(m));
                }
            }
        }
    }
}

#[test]
fn every_module_over_truncated_polynomials_is_totally_reflexive() {
    for (name, bound) in [("xquot:2,2", 2), ("xquot:2,3", 2), ("xquot:3,3", 1)] {
        let c = common::ctx(name, bound);
        let u = &c.universe;
        assert!(ring_info(u.algebra()).unwrap().gorenstein);
        for m in u.objects() {
            let v = is_totally_reflexive(u.algebra(), &u.module_of(m), 3, DEFAULT_CAP).unwrap();
            assert!(v.certified, "{name} {}", u.name(m));
        }
    }
}

#[test]
fn plane_modules_outside_add_r_fail() {
    let c = common::ctx("xy2:2", 2);
    let u = &c.universe;
    let info = ring_info(u.algebra()).unwrap();
    assert!(info.local && !info.gorenstein && info.socle_dim == 2);
    for m in u.objects() {
        let v = is_totally_reflexive(u.algebra(), &u.module_of(m), 3, DEFAULT_CAP).unwrap();
        // seeds are k then R
        assert_eq!(v.totally_reflexive, m[0] == 0, "{}", u.name(m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// ev_N ∘ f = f** ∘ ev_M.
    #[test]
    fn evaluation_is_natural(p in 0usize..3, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), coeffs in prop::collection::vec(0u32..5, 64)) {
        let (name, bound) = [("xquot:2,3", 2), ("xy2:2", 2), ("xquot:3,2", 2)][p];
        let c = common::ctx(name, bound);
        let u = &c.universe;
        let alg = u.algebra();
        let fld = alg.field();
        let (x, y) = (u.object(a.index(u.len())).clone(), u.object(b.index(u.len())).clone());
        let basis = u.hom_basis(&x, &y);
        let mut f = Mat::zeros(fld, u.dim_of(&y), u.dim_of(&x));
        for (k, h) in basis.iter().enumerate() {
            f.axpy(coeffs[k % coeffs.len()] % fld.p(), h);
        }
        let (mx, my) = (u.module_of(&x), u.module_of(&y));
        let (bx, by) = (biduality(alg, &mx).unwrap(), biduality(alg, &my).unwrap());
        let fstar = dual_map(&bx.dual, &by.dual, &f).unwrap();
        prop_assert!(is_homomorphism(alg, &by.dual.module, &bx.dual.module, &fstar));
        let fss = dual_map(&by.double_dual, &bx.double_dual, &fstar).unwrap();
        prop_assert_eq!(by.map.mul(&f), fss.mul(&bx.map));
    }
}

mod common;

use common::{engine_sets, stable_iso_exhaustive, with_quotient, Naive};
use exquo::subcat::{Kind, Side, SubcatContext};

const LIMIT: u128 = 1 << 10;

#[test]
fn stable_isomorphism_matches_inverse_search() {
    for (name, bound) in [("xquot:2,3", 1), ("xquot:3,2", 1), ("xquot:2,2", 2)] {
        with_quotient(name, bound, |q, _, _| {
            let u = &q.ctx.universe;
            let mut compared = 0;
            for x in u.objects() {
                for y in u.objects() {
                    if exquo::gf::space_size(u.algebra().field(), u.hom_dim(x, y)) > LIMIT {
                        continue;
                    }
                    u.for_each_hom(x, y, |f| {
                        if let Some(oracle) = stable_iso_exhaustive(q, x, y, &f, LIMIT) {
                            assert_eq!(q.stable_is_iso(x, y, &f).unwrap(), oracle, "{name} {} -> {}", u.name(x), u.name(y));
                            compared += 1;
                        }
                        Ok(true)
                    })
                    .unwrap();
                }
            }
            assert!(compared > 0);
        });
    }
}

#[test]
fn lattices_match_naive_enumeration_over_gf3() {
    with_quotient("xquot:3,3", 1, |q, table, index| {
        let sc = SubcatContext::new(q, table, index);
        for kind in [Kind::Thick, Kind::Complete] {
            let thick = kind == Kind::Thick;
            let amb = Naive::ambient(q.ctx, q.structure, q, thick).enumerate();
            let quo = Naive::quotient(q.ctx, q.structure, q, thick).enumerate();
            assert_eq!(engine_sets(q, &sc.enumerate_closed(kind, Side::Ambient, 10_000)), amb, "{kind:?}");
            assert_eq!(engine_sets(q, &sc.enumerate_closed(kind, Side::Quotient, 10_000)), quo, "{kind:?}");
            assert_eq!(amb.len(), quo.len());
        }
    });
}

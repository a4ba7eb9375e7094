use std::collections::HashSet;

use skewdual::codes::{CodeParameters, InseparableContext, TwistSpec};
use skewdual::ore::{self, CentralModulus, SkewRing};

#[test]
fn twisted_and_untwisted_are_disjoint() {
    let c = InseparableContext::new(&CodeParameters::cyclic(3, 2, 3)).unwrap();
    let (k, ring) = (c.space().field(), c.space().ring());
    let untwisted: HashSet<Vec<u64>> = c.untwisted().iter().cloned().collect();
    let mut checked = 0;
    for xi in 1..k.size() {
        if ring.theta(&xi, 1) == xi {
            continue;
        }
        let tw = TwistSpec { xi, t: 0 };
        for g in c.twisted_enumerate(&tw).unwrap() {
            let g = g.unwrap();
            assert!(c.is_twisted_selforthogonal(&g, &tw));
            assert!(!untwisted.contains(&g), "xi={xi}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn symplectic_count() {
    let c = InseparableContext::new(&CodeParameters::cyclic(3, 6, 3)).unwrap();
    let (k, ring) = (c.space().field(), c.space().ring());
    let xi = (2..k.size())
        .find(|&x| ring.theta(&x, 3) == k.neg(x))
        .unwrap();
    let tw = TwistSpec { xi, t: 3 };
    let gs: Vec<_> = c
        .twisted_enumerate(&tw)
        .unwrap()
        .map(Result::unwrap)
        .collect();
    assert_eq!(gs.len(), 1120);
    assert!(gs
        .iter()
        .take(50)
        .all(|g| c.is_twisted_selforthogonal(g, &tw)));
}

#[test]
fn products_reduce_to_selforthogonal_codes() {
    for (q, r, k) in [(3, 2, 3), (3, 2, 9), (7, 2, 7), (5, 2, 5)] {
        let c = InseparableContext::new(&CodeParameters::cyclic(q, r, k)).unwrap();
        let ring = c.space().ring();
        let unit = CentralModulus::cyclic(ring, r);
        let full = CentralModulus::cyclic(ring, r * k);
        let mut it = c.enumerate_dedup();
        let mut n = 0;
        for code in it.by_ref() {
            let f = code.generator();
            assert_eq!(ore::degree(f), Some(r * k / 2));
            assert!(full.is_selforthogonal(ring, f));
            let fbar = unit.normalize(ring, f).unwrap();
            assert!(unit.is_selforthogonal(ring, &fbar));
            assert!(c
                .untwisted()
                .iter()
                .any(|g| ore::right_divmod(ring, &fbar, g).unwrap().1.is_empty()));
            n += 1;
        }
        let expect_codes = q % 4 == 3;
        assert_eq!(n > 0, expect_codes, "q={q} k={k}");
        assert!(it.inner().raw_count() >= n);
    }
}

#[test]
fn rejects_other_moduli() {
    assert!(InseparableContext::new(&CodeParameters::cyclic(3, 2, 1)).is_err());
    assert!(InseparableContext::new(&CodeParameters::cyclic(3, 2, 6)).is_err());
    assert!(InseparableContext::new(&CodeParameters::cyclic(3, 3, 3)).is_err());
}

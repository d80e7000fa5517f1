mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use sl3::PreFoam;

use common::{flag_trace, relation_suite, RELATIONS};

#[test]
fn every_relation_holds_on_generated_closures() {
    let stats = relation_suite(7, 300);
    assert_eq!(stats.len(), RELATIONS.len());
    for s in stats {
        assert!(s.passed(300), "{s:?}");
    }
}

#[test]
fn oracle_trace_matches_known_values() {
    assert_eq!(flag_trace(1, 2, 0), 1);
    assert_eq!(flag_trace(2, 1, 0), -1);
    assert_eq!(flag_trace(0, 1, 2), 1);
    assert_eq!(flag_trace(1, 1, 1), 0);
    assert_eq!(flag_trace(3, 0, 0), 0);
}

fn prefoam() -> impl Strategy<Value = PreFoam> {
    (1usize..5)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((0u32..2, 0u32..3), n),
                proptest::collection::vec(proptest::array::uniform3(0..n), 0..4),
            )
        })
        .prop_map(|(facets, circles)| PreFoam::new(&facets, circles).unwrap())
}

proptest! {
    #[test]
    fn theta_is_cyclically_symmetric(a in 0u32..4, b in 0u32..4, c in 0u32..4) {
        let v = PreFoam::theta(a, b, c).evaluate();
        prop_assert_eq!(&v, &PreFoam::theta(b, c, a).evaluate());
        prop_assert_eq!(&v, &-PreFoam::theta(b, a, c).evaluate());
        prop_assert_eq!(v, BigInt::from(flag_trace(a, b, c)));
    }

    #[test]
    fn reversing_every_circle(p in prefoam()) {
        let mut q = p.clone();
        for k in 0..p.circles.len() {
            q = q.reverse_circle(k);
        }
        let sign = if p.circles.len() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(q.evaluate(), BigInt::from(sign) * p.evaluate());
    }

    #[test]
    fn nonzero_value_needs_zero_euler_characteristic(p in prefoam()) {
        if p.euler() != 0 {
            prop_assert_eq!(p.evaluate(), BigInt::from(0));
        }
    }

    #[test]
    fn union_is_multiplicative(p in prefoam(), q in prefoam()) {
        prop_assert_eq!(p.disjoint_union(&q).evaluate(), p.evaluate() * q.evaluate());
    }
}

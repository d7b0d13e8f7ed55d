use num_bigint::BigUint;
use proptest::prelude::*;

use kronecker_core::bounds::{
    ceil_log2, degree_budget, height_budget, prime_budget, sample_bounds, BoundSet,
};

fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

#[test]
fn degree_budget_examples() {
    assert_eq!(degree_budget(3, 2, &b(4)), b(1536));
    for (n, r) in [(1, 1), (2, 1), (3, 3), (5, 2)] {
        assert_eq!(degree_budget(n, r, &b(1)), b((2 * n - r + 4) * r * 3));
    }
}

#[test]
fn sample_bound_examples() {
    assert_eq!(sample_bounds(&b(100)), (b(800), b(900)));
    assert_eq!(sample_bounds(&b(1)), (b(8), b(9)));
    assert_eq!(sample_bounds(&b(1536)), (b(12288), b(13824)));
}

#[test]
fn height_budget_regression() {
    assert_eq!(height_budget(2, 2, 5, 2, 2, 16), b(5184));
}

#[test]
fn ceil_log2_values() {
    let expected = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (1024, 10), (1025, 11)];
    for (x, l) in expected {
        assert_eq!(ceil_log2(x), l, "x = {x}");
    }
}

#[test]
fn bound_set_is_consistent() {
    let set = BoundSet::new(3, &[2, 3, 2], 4, 16, 1);
    assert_eq!(set.bezout, vec![b(2), b(6), b(12)]);
    assert_eq!(set.degree_budget, degree_budget(3, 3, &b(12)));
    assert_eq!((set.a.clone(), set.b.clone()), sample_bounds(&set.degree_budget));
    assert_eq!(set.prime_bound, &set.prime_budget * 12u32);
    assert!(set.heights.windows(2).all(|w| w[0] <= w[1]));
}

proptest! {
    #[test]
    fn budgets_are_monotone(
        r in 1u64..4,
        extra in 0u64..3,
        d in 1u64..5,
        h in 0u64..40,
        c in 1u64..20,
        delta in 1u64..100,
    ) {
        let n = r + extra;
        prop_assert!(degree_budget(n, r, &b(delta)) <= degree_budget(n, r, &b(delta + 1)));
        prop_assert!(degree_budget(n, r, &b(delta)) <= degree_budget(n + 1, r, &b(delta)));
        for s in 1..=r {
            let base = height_budget(n, d, h, r, s, c);
            prop_assert!(base <= height_budget(n + 1, d, h, r, s, c));
            prop_assert!(base <= height_budget(n, d + 1, h, r, s, c));
            prop_assert!(base <= height_budget(n, d, h + 1, r, s, c));
            prop_assert!(base <= height_budget(n, d, h, r, s, c + 1));
        }
        let (main, bound) = prime_budget(n, d, h, r, c);
        prop_assert_eq!(&bound, &(&main * 12u32));
        prop_assert!(main <= prime_budget(n + 1, d, h, r, c).0);
        prop_assert!(main <= prime_budget(n, d + 1, h, r, c).0);
        prop_assert!(main <= prime_budget(n, d, h + 1, r, c).0);
    }

    #[test]
    fn prime_budget_dominates_the_bezout_floor(r in 1u64..4, extra in 0u64..3, d in 1u64..6, h in 0u64..40) {
        let n = r + extra;
        let bezout = num_traits::pow(b(d), r as usize);
        let floor = b(60 * n * n * d) * num_traits::pow(bezout, 4);
        prop_assert!(prime_budget(n, d, h, r, 1).0 >= floor);
    }
}

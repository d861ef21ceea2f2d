//! Laws of the mu/lambda calculus on random elements of `Z[G_n]`.

use mtsym::{GroupRingElement, Rational, Val2};
use num_rational::Ratio;
use proptest::prelude::*;

fn element(level: u32) -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec(-8i64..=8, 1usize << level)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |c| GroupRingElement::from_ints(level, &c))
}

fn leveled() -> impl Strategy<Value = (u32, GroupRingElement, GroupRingElement)> {
    (1u32..=6).prop_flat_map(|n| (Just(n), element(n), element(n)))
}

proptest! {
    #[test]
    fn projection_after_lift_doubles(f in (0u32..=5).prop_flat_map(element)) {
        let two = Rational::from_integer(2.into());
        prop_assert_eq!(f.norm_lift().project().unwrap(), f.scale(&two));
    }

    #[test]
    fn lift_after_projection_multiplies_by_d((n, g, _) in leveled()) {
        let d = GroupRingElement::d_element(n).unwrap();
        prop_assert_eq!(g.project().unwrap().norm_lift(), d.multiply(&g).unwrap());
    }

    #[test]
    fn projection_preserves_invariants_when_mu_is_kept((_n, g, _) in leveled()) {
        let p = g.project().unwrap();
        prop_assume!(!p.is_zero());
        let (mu_g, mu_p) = (g.mu_invariant().unwrap(), p.mu_invariant().unwrap());
        prop_assert!(mu_p >= mu_g);
        if mu_p == mu_g {
            prop_assert_eq!(p.lambda_invariant().unwrap(), g.lambda_invariant().unwrap());
        }
    }

    #[test]
    fn lift_shifts_lambda(f in (0u32..=5).prop_flat_map(element)) {
        let n = f.level() + 1;
        let lifted = f.norm_lift();
        prop_assert_eq!(lifted.mu_invariant().unwrap(), f.mu_invariant().unwrap());
        prop_assert_eq!(
            lifted.lambda_invariant().unwrap(),
            (1u64 << (n - 1)) + f.lambda_invariant().unwrap()
        );
    }

    #[test]
    fn products_add_invariants((_n, f, g) in leveled()) {
        let fg = f.multiply(&g).unwrap();
        prop_assume!(!fg.is_zero());
        let mu = fg.mu_invariant().unwrap();
        prop_assert!(mu >= f.mu_invariant().unwrap() + g.mu_invariant().unwrap());
        if mu == 0 {
            prop_assert_eq!(
                fg.lambda_invariant().unwrap(),
                f.lambda_invariant().unwrap() + g.lambda_invariant().unwrap()
            );
        }
    }

    #[test]
    fn specialization_valuation_from_invariants((n, g, _) in leveled()) {
        let lambda = g.lambda_invariant().unwrap();
        prop_assume!(lambda < 1 << (n - 1));
        let want = Ratio::from_integer(g.mu_invariant().unwrap() as i64)
            + Ratio::new(lambda as i64, 1 << (n - 1));
        prop_assert_eq!(g.specialize(n).unwrap().val2(), Val2::Finite(want));
    }

    #[test]
    fn multiplication_is_commutative((_n, f, g) in leveled()) {
        prop_assert_eq!(f.multiply(&g).unwrap(), g.multiply(&f).unwrap());
    }
}

//! Property-based invariants of the polynomial ring and its operators,
//! plus a deterministic check of the closed form for a divided difference
//! of a product of linear factors.

use flagg::poly::{
    divided_difference, linear_factor, swap_x, Monomial, Polynomial, TruncationOrder,
};
use flagg::render::{from_json, to_json};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Random sparse polynomials: up to six terms, x-variables 1..=6,
/// b-variables 1..=4, exponents small enough for fast operator algebra.
fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (
            0u32..=2,
            prop::collection::btree_map(1u32..=6, 1u32..=2, 0..=3),
            prop::collection::btree_map(1u32..=4, 1u32..=2, 0..=2),
            -5i64..=5,
        ),
        0..=6,
    )
    .prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (beta_exp, x, b, c) in terms {
            p.add_term(Monomial::from_parts(beta_exp, x, b), BigInt::from(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Leibniz rule of the operator:
    /// pi_i(fg) = pi_i(f) g + s_i(f) pi_i(g) + beta s_i(f) g.
    #[test]
    fn divided_difference_satisfies_the_leibniz_rule(
        f in arb_poly(),
        g in arb_poly(),
        i in 1u32..=5,
    ) {
        let lhs = divided_difference(&(&f * &g), i).unwrap();
        let sf = swap_x(&f, i).unwrap();
        let rhs = &(&divided_difference(&f, i).unwrap() * &g)
            + &(&(&sf * &divided_difference(&g, i).unwrap())
                + &(&Polynomial::beta() * &(&sf * &g)));
        prop_assert_eq!(lhs, rhs);
    }

    /// Truncation is a quotient-ring map: dropping high-degree terms before
    /// or after a product gives the same truncated result.
    #[test]
    fn truncation_commutes_with_products(
        f in arb_poly(),
        g in arb_poly(),
        d in 0u32..=6,
    ) {
        let order = TruncationOrder::new(d);
        let full = flagg::poly::truncate(&(&f * &g), order);
        let quotient = flagg::poly::truncate(&f, order).mul_truncated(
            &flagg::poly::truncate(&g, order),
            order,
        );
        prop_assert_eq!(full, quotient);
    }

    /// The canonical JSON rendering is lossless.
    #[test]
    fn json_rendering_round_trips(f in arb_poly()) {
        prop_assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }
}

/// Closed form for the divided difference of a product of linear factors
/// in a single x-variable:
///
/// pi_t(prod_{i=1..n} (x_t + b_{t_i} + beta x_t b_{t_i}))
///   = sum_{v=0..n-1} prod_{i<=v} lf(t, t_i) prod_{i>=v+2} lf(t+1, t_i)
///   + beta sum_{v=1..n-1} prod_{i<=v} lf(t, t_i) prod_{i>=v+1} lf(t+1, t_i).
#[test]
fn divided_difference_of_linear_factor_products_has_the_two_sum_form() {
    let combos: &[(u32, &[u32])] = &[
        (1, &[1]),
        (1, &[1, 2]),
        (1, &[2, 2]),
        (1, &[1, 2, 3]),
        (2, &[1, 3]),
        (2, &[4, 1, 2]),
        (3, &[2, 2, 5, 1]),
    ];
    for &(t, indices) in combos {
        let n = indices.len();
        let product = indices
            .iter()
            .map(|&j| linear_factor(t, j).unwrap())
            .fold(Polynomial::one(), |acc, f| &acc * &f);
        let lhs = divided_difference(&product, t).unwrap();

        let partial = |row: u32, lo: usize, hi: usize| {
            indices[lo..hi]
                .iter()
                .map(|&j| linear_factor(row, j).unwrap())
                .fold(Polynomial::one(), |acc, f| &acc * &f)
        };
        let mut rhs = Polynomial::zero();
        for v in 0..n {
            rhs = &rhs + &(&partial(t, 0, v) * &partial(t + 1, v + 1, n));
        }
        for v in 1..n {
            rhs = &rhs
                + &(&Polynomial::beta() * &(&partial(t, 0, v) * &partial(t + 1, v, n)));
        }
        assert_eq!(lhs, rhs, "t={t}, indices={indices:?}");

        // The result is symmetric in x_t, x_{t+1}, hence killed to -beta
        // times itself by a second application.
        assert_eq!(swap_x(&lhs, t).unwrap(), lhs);
        assert_eq!(
            divided_difference(&lhs, t).unwrap(),
            &Polynomial::constant(-1) * &(&Polynomial::beta() * &lhs)
        );
    }
}

use oslab_core::ring::{power_product, rat, Factor, Subst};
use oslab_core::{Caps, MonomialKey, Rat, Series, Var};
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::A, Var::Q, Var::T, Var::U];

fn caps_of(c: &[i64; 4]) -> Caps {
    VARS.iter().zip(c).fold(Caps::none(), |acc, (&v, &c)| acc.with(v, c))
}

/// Small series with nonnegative exponents inside `caps`.
fn series_in(c: [i64; 4], zero_constant: bool) -> impl Strategy<Value = Series> {
    let term = (0..=c[0], 0..=c[1], 0..=c[2], 0..=c[3], -6i64..=6, 1i64..=3);
    prop::collection::vec(term, 0..6).prop_map(move |ts| {
        let terms = ts.into_iter().filter_map(|(a, q, t, u, n, d)| {
            if zero_constant && a + q + t + u == 0 {
                return None;
            }
            let key = MonomialKey::from_pairs(&[(Var::A, a), (Var::Q, q), (Var::T, t), (Var::U, u)]);
            Some((key, Rat::new(n.into(), d.into())))
        });
        Series::from_terms(caps_of(&c), terms)
    })
}

fn caps_strategy() -> impl Strategy<Value = [i64; 4]> {
    [1i64..=4, 1i64..=4, 1i64..=4, 1i64..=4]
}

fn triple() -> impl Strategy<Value = (Series, Series, Series)> {
    caps_strategy().prop_flat_map(|c| (series_in(c, false), series_in(c, false), series_in(c, false)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Series::one(), x.clone());
    }

    #[test]
    fn exp_log_inverse(s in [1i64..=10, 1i64..=3, 1i64..=3, 1i64..=3].prop_flat_map(|c| series_in(c, true))) {
        let e = s.exp().unwrap();
        prop_assert_eq!(e.constant_term(), rat(1));
        prop_assert_eq!(e.log().unwrap(), s.clone());
        let one_plus = &Series::one() + &s;
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn substitution_is_multiplicative((x, y, _) in triple(), neg_t in any::<bool>()) {
        let cap = |v| x.caps().get(v).unwrap();
        let subst = Subst::new()
            .rule(Var::T, neg_t, MonomialKey::var(Var::A, 2))
            .rule(Var::U, false, MonomialKey::var(Var::Q, 2));
        // images of dropped source terms must fall outside the target window
        let target = Caps::none()
            .with(Var::A, cap(Var::A).min(2 * cap(Var::T) + 1))
            .with(Var::Q, cap(Var::Q).min(2 * cap(Var::U) + 1));
        let lhs = (&x * &y).substitute(&subst, &target).unwrap();
        let rhs = &x.substitute(&subst, &target).unwrap() * &y.substitute(&subst, &target).unwrap();
        prop_assert!(lhs.agrees_with(&rhs), "{} vs {}", lhs, rhs);
        let sum = (&x + &y).substitute(&subst, &target).unwrap();
        let split = &x.substitute(&subst, &target).unwrap() + &y.substitute(&subst, &target).unwrap();
        prop_assert!(sum.agrees_with(&split));
    }

    #[test]
    fn power_product_matches_exp_log(tmax in 1i64..=4, umax in 1i64..=10) {
        let caps = Caps::none().with(Var::T, tmax).with(Var::U, umax);
        let factors: Vec<Factor> = (1..=umax)
            .map(|k| Factor::plus(MonomialKey::from_pairs(&[(Var::T, 1), (Var::U, k)]), k))
            .collect();
        let product = power_product(&factors, &caps).unwrap();
        let mut log = Series::zero().truncate(&caps);
        for k in 1..=umax {
            let one_plus = Series::from_terms(
                caps,
                [(MonomialKey::default(), rat(1)), (MonomialKey::from_pairs(&[(Var::T, 1), (Var::U, k)]), rat(1))],
            );
            log = &log + &one_plus.log().unwrap().scale(&rat(k));
        }
        prop_assert_eq!(product, log.exp().unwrap());
    }
}

#[test]
fn laurent_truncation_respects_cap_rule() {
    let caps = Caps::none().with(Var::Q, 4);
    let x = Series::from_terms(caps, [(MonomialKey::var(Var::Q, -2), rat(1)), (MonomialKey::var(Var::Q, 4), rat(1))]);
    let y = Series::from_terms(caps, [(MonomialKey::var(Var::Q, 1), rat(1))]);
    let p = &x * &y;
    // q^{-2} * (terms of y beyond q^4 are unknown) leaves q^2 as the last known power
    assert_eq!(p.caps().get(Var::Q), Some(2));
    assert_eq!(p.coeff_of(&[(Var::Q, -1)]), rat(1));
}

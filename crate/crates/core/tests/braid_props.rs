use oslab_core::braid::{homfly, homfly_skein_tree, skein_triple, torus_braid};
use oslab_core::ring::rat;
use oslab_core::{BraidWord, HomflyValue, MonomialKey, Series, Var};
use proptest::prelude::*;

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |ls| BraidWord::new(n, ls).unwrap())
    })
}

fn z() -> Series {
    &Series::var(Var::Q) - &Series::term(1, &[(Var::Q, -1)])
}

/// `a P(L+) - a^{-1} P(L-) - z P(L0)` over a common denominator.
fn skein_defect(plus: &HomflyValue, minus: &HomflyValue, zero: &HomflyValue) -> Series {
    let d = plus.den_power().max(minus.den_power()).max(zero.den_power());
    let a = Series::var(Var::A);
    let ainv = Series::term(1, &[(Var::A, -1)]);
    let lhs = &(&a * &plus.lift(d)) - &(&ainv * &minus.lift(d));
    &lhs - &(&z() * &zero.lift(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn skein_relation(b in braid(4, 8).prop_filter("nonempty", |b| !b.is_empty()), pos in any::<prop::sample::Index>()) {
        let (p, m, z) = skein_triple(&b, pos.index(b.len())).unwrap();
        let d = skein_defect(&homfly(&p).unwrap(), &homfly(&m).unwrap(), &homfly(&z).unwrap());
        prop_assert!(d.is_zero(), "{}", d);
    }

    #[test]
    fn markov_moves(b in braid(4, 7), g in 1i32..4, inv in any::<bool>()) {
        let v = homfly(&b).unwrap();
        let g = (g - 1) % (b.strands() as i32 - 1) + 1;
        let g = if inv { -g } else { g };
        prop_assert_eq!(&homfly(&b.conjugate(g).unwrap()).unwrap(), &v);
        prop_assert_eq!(&homfly(&b.stabilize(true)).unwrap(), &v);
        prop_assert_eq!(&homfly(&b.stabilize(false)).unwrap(), &v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_union_multiplies(b1 in braid(3, 5), b2 in braid(3, 5)) {
        let joint = homfly(&b1.split_union(&b2)).unwrap();
        let prod = homfly(&b1).unwrap().mul(&homfly(&b2).unwrap());
        prop_assert_eq!(joint, prod);
    }

    #[test]
    fn mirror_inverts_variables(b in braid(4, 7)) {
        prop_assert_eq!(homfly(&b.mirror()).unwrap(), homfly(&b).unwrap().mirror_image());
    }

    #[test]
    fn engines_agree(b in braid(3, 7)) {
        prop_assert_eq!(homfly(&b).unwrap(), homfly_skein_tree(&b).unwrap());
    }
}

#[test]
fn trefoil_fixture() {
    // reduced right trefoil: (q^2 + q^{-2}) a^{-2} - a^{-4}, times the unknot
    let t = homfly(&torus_braid(3, 2).unwrap()).unwrap();
    let reduced = Series::from_terms(
        Default::default(),
        [
            (MonomialKey::from_pairs(&[(Var::A, -2), (Var::Q, 2)]), rat(1)),
            (MonomialKey::from_pairs(&[(Var::A, -2), (Var::Q, -2)]), rat(1)),
            (MonomialKey::var(Var::A, -4), rat(-1)),
        ],
    );
    let unknot = HomflyValue::unknot();
    let expect = &reduced * unknot.numerator();
    assert_eq!(t.den_power(), 1);
    assert_eq!(t.numerator(), &expect);

    let left = homfly(&torus_braid(3, 2).unwrap().mirror()).unwrap();
    assert_ne!(left, t);
    assert_eq!(left, t.mirror_image());
}

#[test]
fn unknot_diagrams() {
    let u = HomflyValue::unknot();
    for w in ["", "1", "-1", "1,2", "-1,2,-3"] {
        let strands = w.split(',').filter(|s| !s.is_empty()).count() + 1;
        assert_eq!(homfly(&BraidWord::parse(strands, w).unwrap()).unwrap(), u, "{w}");
    }
}

use std::collections::BTreeMap;

use oslab_core::hilbseries::{
    fibration_check, local_top_series, os_verify, refined_local_series, smooth_closed_form_check,
    symmetric_product_series, HodgeEntry,
};
use oslab_core::quiver::{dims, motivic_smallb_assemble, oracle_quot_motives, QuiverPresentation};
use oslab_core::ring::{power_product, rat, ratio, Factor, Subst};
use oslab_core::semimodule::CountPolynomial;
use oslab_core::wallcross::{
    critical_values, dt_invariant, factorization_check, resummed_jump, small_b_table, wall_by_wall, TableRole,
};
use oslab_core::{
    Backend, Caps, CompactCurveData, CurveGerm, DimVector, HodgeData, InvariantTable, MonomialKey, Rat, Series, Var,
};
use proptest::prelude::*;

const GERMS: [(u32, u32); 6] = [(1, 4), (2, 3), (2, 5), (2, 7), (3, 4), (3, 5)];

fn germ(i: usize) -> CurveGerm {
    CurveGerm::new(GERMS[i].0, GERMS[i].1).unwrap()
}

fn at_y_minus_one(s: &Series, qmax: i64) -> Series {
    let sub = Subst::new().rule(Var::Y, true, MonomialKey::var(Var::Y, 0));
    s.substitute(&sub, &Caps::none().with(Var::Q, qmax)).unwrap()
}

fn hodge() -> impl Strategy<Value = HodgeData> {
    prop::collection::btree_map((0u32..=2, 0u32..=4), 1u32..=3, 1..5).prop_map(|m: BTreeMap<(u32, u32), u32>| {
        HodgeData::new(m.into_iter().map(|((k, w), h)| HodgeEntry { k, w, h }).collect()).unwrap()
    })
}

fn table(rmax: i64, nmin: i64, nmax: i64) -> impl Strategy<Value = InvariantTable> {
    let cells = ((rmax + 1) * (nmax - nmin + 1)) as usize;
    prop::collection::vec(-4i64..=4, cells).prop_map(move |vals| {
        let mut t = InvariantTable::new(TableRole::PZeroPlus, rmax, nmin, nmax);
        let mut it = vals.into_iter();
        for r in 0..=rmax {
            for n in nmin..=nmax {
                t.set(r, n, rat(it.next().unwrap()));
            }
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn refined_specializes_at_minus_one(g in 0..GERMS.len(), nmax in 1u32..=4) {
        let top = local_top_series(germ(g), nmax);
        let euler = refined_local_series(germ(g), nmax, Backend::Euler).unwrap();
        prop_assert_eq!(&euler, &top);
        let refined = refined_local_series(germ(g), nmax, Backend::Pointcount).unwrap();
        prop_assert!(at_y_minus_one(&refined, 2 * nmax as i64).agrees_with(&top));
    }

    #[test]
    fn symmetric_product_at_minus_one(h in hodge(), qmax in 2i64..=12) {
        let chi = h.euler_characteristic();
        let caps = Caps::none().with(Var::Q, qmax);
        let expect = power_product(&[Factor::minus(MonomialKey::var(Var::Q, 2), -chi)], &caps).unwrap();
        let got = at_y_minus_one(&symmetric_product_series(&h, qmax), qmax);
        prop_assert!(got.agrees_with(&expect), "{} vs {}", got, expect);
    }

    #[test]
    fn fibration_two_paths(g in 0..GERMS.len(), nmax in 1u32..=8, r in 0u32..=3) {
        let report = fibration_check(germ(g), nmax, r);
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn smooth_germ_is_unknot(k in 1u32..=30, order in 1i64..=24) {
        let report = os_verify(1, k, order).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn dt_invariant_pattern(r in 1i64..=12, n in -40i64..=40) {
        let v = dt_invariant(r, n).unwrap();
        if n % r == 0 {
            let sign = if r % 2 == 1 { 1 } else { -1 };
            prop_assert_eq!(&v * rat(r * r), rat(sign));
        } else {
            prop_assert_eq!(v, rat(0));
        }
    }

    #[test]
    fn walls_are_finite_and_small_chamber_is_empty(r in 1i64..=6, n in 0i64..=20, lo in 1i64..=30) {
        let b_lo = ratio(-lo, 2);
        let found = critical_values(r, n, &b_lo, &rat(0));
        prop_assert!(found.walls.len() as i64 <= r * (lo * r + 1));
        for w in &found.walls {
            prop_assert!(w > &b_lo && w < &rat(0));
            prop_assert!((1..=r).any(|rp| (w * rat(2 * rp)).is_integer()));
        }
        prop_assert!(critical_values(r, n, &ratio(-1, 2 * r), &rat(0)).walls.is_empty());
    }

    #[test]
    fn resummation_is_linear(a in table(2, -1, 6), b in table(2, -1, 6)) {
        let ja = resummed_jump(&a, 2, 6).unwrap();
        let jb = resummed_jump(&b, 2, 6).unwrap();
        let jab = resummed_jump(&(&a + &b), 2, 6).unwrap();
        prop_assert_eq!(jab.to_series(), (&ja + &jb).to_series());
        prop_assert_eq!(wall_by_wall(&a, 2, 6).unwrap(), ja);
    }

    #[test]
    fn quiver_dims_are_quadratic(v in prop::array::uniform4(0i64..=5), w in prop::array::uniform4(0i64..=5)) {
        let p = QuiverPresentation::local_p2();
        let d = |x: [i64; 4]| dims(&DimVector::new(x).unwrap());
        let sum = [v[0] + w[0], v[1] + w[1], v[2] + w[2], v[3] + w[3]];
        let (dv, dw, ds) = (d(v), d(w), d(sum));
        prop_assert_eq!(dv.dim_a, dv.dim_ar + dv.dim_al);
        // pairing read straight off the arrow list
        let pairing: i64 = p.arrows.iter()
            .map(|a| v[a.source - 1] * w[a.target - 1] + w[a.source - 1] * v[a.target - 1])
            .sum();
        prop_assert_eq!(ds.dim_a - dv.dim_a - dw.dim_a, pairing);
        let g_pair: i64 = (0..4).map(|i| 2 * v[i] * w[i]).sum();
        prop_assert_eq!(ds.dim_g - dv.dim_g - dw.dim_g, g_pair);
    }

    #[test]
    fn substitution_cancellation_is_structural(coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..4), 9)) {
        let g = CurveGerm::new(2, 3).unwrap();
        let c = CompactCurveData::cuspidal_cubic();
        let mut motives = BTreeMap::new();
        for (i, cs) in coeffs.into_iter().enumerate() {
            let key = ((i / 3) as u32, (i % 3) as u32);
            motives.insert(key, CountPolynomial::new(cs.into_iter().map(rat).collect()));
        }
        let report = motivic_smallb_assemble(g, &c, 2, 2, &motives).unwrap();
        prop_assert!(report.mismatches.iter().all(|m| !m.monomial.starts_with("substitution-cancellation")));
    }
}

#[test]
fn smooth_closed_form() {
    assert!(smooth_closed_form_check().passed());
}

#[test]
fn zero_table_resums_to_zero() {
    let zero = InvariantTable::new(TableRole::PZeroPlus, 3, 0, 10);
    let out = resummed_jump(&zero, 3, 10).unwrap();
    assert!(out.nonzero().next().is_none());
    assert!(wall_by_wall(&zero, 3, 10).unwrap().nonzero().next().is_none());
}

#[test]
fn potential_is_cyclic_only_with_b3_into_node_four() {
    assert!(QuiverPresentation::local_p2().validate().is_ok());
    assert!(QuiverPresentation::b3_to_node3().validate().is_err());
}

#[test]
fn factorization_on_several_caps() {
    let g = CurveGerm::new(2, 3).unwrap();
    for (rmax, nmax) in [(1, 6), (2, 9), (3, 12)] {
        let report = factorization_check(g, rmax, nmax).unwrap();
        assert!(report.passed(), "{report}");
        let curve = CompactCurveData::rational_model(g).unwrap();
        resummed_jump(&small_b_table(&curve, g, rmax, nmax), rmax, nmax)
            .unwrap()
            .assert_integral()
            .unwrap();
    }
}

#[test]
fn oracle_motives_pass_and_perturbations_fail() {
    let g = CurveGerm::new(2, 3).unwrap();
    let c = CompactCurveData::cuspidal_cubic();
    let m = oracle_quot_motives(g, &c, 2, 2).unwrap();
    assert!(motivic_smallb_assemble(g, &c, 2, 2, &m).unwrap().passed());
    for key in m.keys() {
        let mut bumped = m.clone();
        let mut cs = bumped[key].coeffs().to_vec();
        if cs.is_empty() {
            cs.push(Rat::from_integer(0.into()));
        }
        cs[0] += Rat::from_integer(1.into());
        bumped.insert(*key, CountPolynomial::new(cs));
        assert!(!motivic_smallb_assemble(g, &c, 2, 2, &bumped).unwrap().passed(), "{key:?}");
    }
}

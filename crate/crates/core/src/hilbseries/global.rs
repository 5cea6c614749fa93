use std::collections::BTreeMap;

use super::{local_top_series, refined_local_series, Backend, CompactCurveData, HilbError, HodgeData};
use crate::ring::{power_product, rat, Caps, Factor, MonomialKey, Series, Subst, Var};
use crate::semimodule::{enumerate_modules, module_invariants, CurveGerm};

/// `sum_n q^{2n} P_y(S^n X)` for the punctured curve `X` with Hodge data `h`,
/// through `q^{qmax}`. Each entry `(k, w, h)` contributes
/// `(1 - (-1)^w y^w q^2)^{-(-1)^k h}`.
pub fn symmetric_product_series(h: &HodgeData, qmax: i64) -> Series {
    let caps = Caps::none().with(Var::Q, qmax);
    let factors: Vec<Factor> = h
        .entries()
        .iter()
        .map(|e| {
            let base = MonomialKey::from_pairs(&[(Var::Y, e.w as i64), (Var::Q, 2)]);
            let exponent = if e.k % 2 == 0 { -(e.h as i64) } else { e.h as i64 };
            Factor::new(base, e.w % 2 == 0, rat(exponent))
        })
        .collect();
    power_product(&factors, &caps).expect("q has positive degree in every factor")
}

/// `(1 - q^2)^{1 - chi} * local_top_series`, with `chi` the Euler
/// characteristic of the curve (1 for the affine germ curve `x^p = y^q`).
pub fn global_top_series(germ: CurveGerm, chi: i64, nmax: u32) -> Series {
    let local = local_top_series(germ, nmax);
    let factor = power_product(&[Factor::minus(MonomialKey::var(Var::Q, 2), 1 - chi)], local.caps())
        .expect("q has positive degree");
    &factor * &local
}

/// Motivic series of the compact curve, `sum q^{2n} a^{2r} L^{r^2/2} [H^{[n,r]}(C)]`,
/// as the symmetric-product factor of `C \ p` times the refined local series,
/// with `y` sent to `L^{1/2}`.
pub fn motivic_compact_series(
    curve: &CompactCurveData,
    germ: CurveGerm,
    nmax: u32,
    backend: Backend,
) -> Result<Series, HilbError> {
    if backend != Backend::Pointcount {
        return Err(HilbError::BackendLimit(
            "motive classes need the pointcount backend; euler data only fixes y = -1".into(),
        ));
    }
    let qmax = 2 * nmax as i64;
    let local = refined_local_series(germ, nmax, backend)?;
    let sym = symmetric_product_series(&curve.hodge_punctured, qmax);
    let to_l = Subst::new().rule(Var::Y, false, MonomialKey::var(Var::Lhalf, 1));
    Ok((&sym * &local).substitute(&to_l, &Caps::none().with(Var::Q, qmax))?)
}

/// Topological small-`b` series
/// `u^{chi(O_C)} (1-u)^{-chi(C \ p)} sum_D u^{n(D)} (1+T)^{m(D)}`
/// through `T^{rmax} u^{umax}`.
pub fn small_b_top_series(curve: &CompactCurveData, germ: CurveGerm, rmax: u32, umax: i64) -> Series {
    let caps = Caps::none().with(Var::T, rmax as i64).with(Var::U, umax);
    let inner_u = umax - curve.chi_oc;
    if inner_u < 0 {
        return Series::zero().truncate(&caps);
    }
    let inner = Caps::none().with(Var::T, rmax as i64).with(Var::U, inner_u);
    let mut strata: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    for d in enumerate_modules(germ, inner_u as u32) {
        *strata.entry(module_invariants(&d)).or_insert(0) += 1;
    }
    let mut local = Series::zero().truncate(&inner);
    for ((n, m), c) in strata {
        let f = power_product(&[Factor::plus(MonomialKey::var(Var::T, 1), m as i64)], &inner)
            .expect("finite exponent");
        local = &local + &f.shift(&MonomialKey::var(Var::U, n as i64)).scale(&rat(c));
    }
    let chi_punct = curve.hodge_punctured.euler_characteristic();
    let sym = power_product(&[Factor::minus(MonomialKey::var(Var::U, 1), -chi_punct)], &inner)
        .expect("u has positive degree");
    (&sym * &local).shift(&MonomialKey::var(Var::U, curve.chi_oc))
}

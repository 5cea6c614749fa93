use std::collections::BTreeMap;

use num_traits::Zero;

use super::QuiverError;
use crate::hilbseries::{motivic_compact_series, symmetric_product_series, Backend, CompactCurveData};
use crate::report::CheckReport;
use crate::ring::{Caps, MonomialKey, Rat, Series, Subst, Var};
use crate::semimodule::{fit_polynomial, nested_pair_count, CountPolynomial, CurveGerm};

/// `[Q^{[l,r]}(C)]` as polynomials in `L`, keyed by `(l, r)`.
pub type QuotMotives = BTreeMap<(u32, u32), CountPolynomial>;

const FIT_PRIMES: [u32; 4] = [2, 3, 5, 7];

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(acc: &mut Vec<Rat>, b: &[Rat]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), Rat::zero());
    }
    for (i, y) in b.iter().enumerate() {
        acc[i] += y;
    }
}

/// Motives of `S^j(C \ p)` for `j <= lmax`, read off the symmetric-product
/// series at `y^2 = L`.
fn punctured_symmetric_motives(curve: &CompactCurveData, lmax: u32) -> Result<Vec<Vec<Rat>>, QuiverError> {
    let sym = symmetric_product_series(&curve.hodge_punctured, 2 * lmax as i64);
    let mut out = vec![Vec::new(); lmax as usize + 1];
    for (k, c) in sym.terms() {
        let (j, e) = (k.exp(Var::Q) / 2, k.exp(Var::Y));
        if e % 2 != 0 || e < 0 {
            return Err(QuiverError::NotPolynomial(format!("y^{e} in S^{j} of the punctured curve")));
        }
        let slot = &mut out[j as usize];
        let d = (e / 2) as usize;
        if slot.len() <= d {
            slot.resize(d + 1, Rat::zero());
        }
        slot[d] += c;
    }
    Ok(out)
}

/// Quot scheme motives assembled from finite-field counts of nested ideals at
/// the singular point and the symmetric products of the smooth part.
pub fn oracle_quot_motives(
    germ: CurveGerm,
    curve: &CompactCurveData,
    lmax: u32,
    rmax: u32,
) -> Result<QuotMotives, QuiverError> {
    let sym = punctured_symmetric_motives(curve, lmax)?;
    let mut local: BTreeMap<(u32, u32), CountPolynomial> = BTreeMap::new();
    for j in 0..=lmax {
        for r in 0..=rmax {
            let pts: Vec<(i64, i64)> = FIT_PRIMES
                .iter()
                .map(|&p| nested_pair_count(germ, j, r, p).map(|c| (p as i64, c as i64)))
                .collect::<Result<_, _>>()?;
            let poly = fit_polynomial(&pts)?;
            if !poly.is_integral() {
                return Err(QuiverError::NotPolynomial(format!("nested counts (j={j}, r={r}): {poly}")));
            }
            local.insert((j, r), poly);
        }
    }
    let mut out = QuotMotives::new();
    for l in 0..=lmax {
        for r in 0..=rmax {
            let mut acc = Vec::new();
            for j in 0..=l {
                poly_add(&mut acc, &poly_mul(&sym[(l - j) as usize], local[&(j, r)].coeffs()));
            }
            out.insert((l, r), CountPolynomial::new(acc));
        }
    }
    Ok(out)
}

fn lhalf(e: i64) -> MonomialKey {
    MonomialKey::var(Var::Lhalf, e)
}

/// Builds the small-`b` motivic series from Quot motives, substitutes
/// `u -> q^2 L^{1/2}`, `T -> a^2`, and compares with `L^{(1-k^2)/2} q^{2 chi(O_C)}`
/// times the motivic Hilbert series of the compact curve.
pub fn motivic_smallb_assemble(
    germ: CurveGerm,
    curve: &CompactCurveData,
    rmax: u32,
    lmax: u32,
    motives: &QuotMotives,
) -> Result<CheckReport, QuiverError> {
    let k = curve.degree as i64;
    let chi = curve.chi_oc;
    let (rmax_i, lmax_i) = (rmax as i64, lmax as i64);

    let mut z0 = Series::zero().truncate(&Caps::none().with(Var::T, rmax_i).with(Var::U, chi + lmax_i));
    let mut direct = Series::zero();
    for l in 0..=lmax {
        for r in 0..=rmax {
            let m = motives.get(&(l, r)).ok_or(QuiverError::MissingMotive { l, r })?;
            let (li, ri) = (l as i64, r as i64);
            for (i, c) in m.coeffs().iter().enumerate() {
                let e = 2 * i as i64;
                let w = MonomialKey::from_pairs(&[(Var::U, chi + li), (Var::T, ri)])
                    .mul(&lhalf(1 - k * k - chi + ri * ri - li + e));
                z0.add_term(w, c.clone());
                let h = MonomialKey::from_pairs(&[(Var::Q, 2 * (chi + li)), (Var::A, 2 * ri)])
                    .mul(&lhalf(1 - k * k + ri * ri + e));
                direct.add_term(h, c.clone());
            }
        }
    }

    let subst = Subst::new()
        .rule(Var::U, false, MonomialKey::from_pairs(&[(Var::Q, 2), (Var::Lhalf, 1)]))
        .rule(Var::T, false, MonomialKey::var(Var::A, 2));
    let target = Caps::none().with(Var::Q, 2 * (chi + lmax_i)).with(Var::A, 2 * rmax_i);
    let lhs = z0.substitute(&subst, &target)?;

    let hilb = motivic_compact_series(curve, germ, lmax, Backend::Pointcount)?
        .shift(&MonomialKey::var(Var::Q, 2 * chi).mul(&lhalf(1 - k * k)))
        .truncate(&target);

    let mut report = CheckReport::compare("motivic-small-b-identity", &lhs, &hilb);
    let cancel = CheckReport::compare("substitution-cancellation", &lhs, &direct.truncate(&target));
    report.note(format!("substitution-cancellation: {} coefficients, {} mismatches", cancel.checked, cancel.mismatches.len()));
    for mut m in cancel.mismatches {
        m.monomial = format!("substitution-cancellation: {}", m.monomial);
        report.mismatches.push(m);
    }
    report.checked += cancel.checked;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn affine_line_motives() {
        let c = CompactCurveData::cuspidal_cubic();
        let s = punctured_symmetric_motives(&c, 3).unwrap();
        for (j, p) in s.iter().enumerate() {
            let mut expect = vec![Rat::zero(); j + 1];
            expect[j] = rat(1);
            assert_eq!(p, &expect);
        }
    }

    #[test]
    fn cusp_assembly() {
        let g = CurveGerm::new(2, 3).unwrap();
        let c = CompactCurveData::cuspidal_cubic();
        let m = oracle_quot_motives(g, &c, 2, 2).unwrap();
        // Q^{[0,0]} is a point; Q^{[1,0]} is C itself, [C] = L + 1
        assert_eq!(m[&(0, 0)].coeffs(), &[rat(1)]);
        assert_eq!(m[&(1, 0)].coeffs(), &[rat(1), rat(1)]);
        let report = motivic_smallb_assemble(g, &c, 2, 2, &m).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checked > 5);

        let mut broken = m.clone();
        broken.insert((1, 1), CountPolynomial::new(vec![rat(7)]));
        assert!(!motivic_smallb_assemble(g, &c, 2, 2, &broken).unwrap().passed());
        broken.remove(&(2, 1));
        assert!(matches!(
            motivic_smallb_assemble(g, &c, 2, 2, &broken),
            Err(QuiverError::MissingMotive { l: 2, r: 1 })
        ));
    }
}

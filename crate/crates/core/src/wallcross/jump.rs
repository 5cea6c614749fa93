use num_traits::{One, Zero};

use super::{conifold_series, critical_values, InvariantTable, SignConvention, TableRole, WallError};
use crate::hilbseries::{global_top_series, small_b_top_series, CompactCurveData};
use crate::report::CheckReport;
use crate::ring::{Caps, MonomialKey, Rat, Subst, Var};
use crate::semimodule::CurveGerm;

fn factorial(k: usize) -> Rat {
    (1..=k as i64).fold(Rat::one(), |acc, i| acc * Rat::from_integer(i.into()))
}

/// `P_{b-}(r,n) - P_{b+}(r,n)` at the wall `b_c`, from the `P_{b+}` table
/// `before` and the DT table `dt`.
pub fn wall_jump(before: &InvariantTable, b_c: &Rat, dt: &InvariantTable, r: i64, n: i64) -> Result<Rat, WallError> {
    if r < 0 || r > before.rmax || n > before.nmax {
        return Err(WallError::OutOfRange { r, n });
    }
    let slope = -(b_c * Rat::from_integer(2.into()));
    let mut total = Rat::zero();
    // parts (r_i, slope * r_i), i < l; the remainder goes to P_{b+}
    #[allow(clippy::too_many_arguments)]
    fn walk(
        before: &InvariantTable,
        dt: &InvariantTable,
        slope: &Rat,
        rem_r: i64,
        rem_n: i64,
        depth: usize,
        weight: Rat,
        total: &mut Rat,
    ) -> Result<(), WallError> {
        if depth > 0 {
            *total += before.get(rem_r, rem_n)? * &weight / factorial(depth);
        }
        for ri in 1..=rem_r {
            let ni = slope * Rat::from_integer(ri.into());
            if !ni.is_integer() {
                continue;
            }
            let ni: i64 = ni.to_integer().try_into().map_err(|_| WallError::OutOfRange { r: ri, n: i64::MAX })?;
            if ni > 0 && rem_n - ni < before.nmin && before.role != TableRole::NDt {
                // everything further down sits below the vanishing floor
                break;
            }
            let f = dt.get(ri, ni)? * Rat::from_integer(ni.into());
            if f.is_zero() {
                continue;
            }
            walk(before, dt, slope, rem_r - ri, rem_n - ni, depth + 1, &weight * f, total)?;
        }
        Ok(())
    }
    walk(before, dt, &slope, r, n, 0, Rat::one(), &mut total)?;
    Ok(total)
}

fn check_range(p: &InvariantTable, rmax: i64, nmax: i64) -> Result<(), WallError> {
    if p.rmax < rmax || p.nmax < nmax {
        return Err(WallError::OutOfRange { r: rmax, n: nmax });
    }
    Ok(())
}

/// Crosses every wall below zero one at a time, starting from `P_{0-}`.
pub fn wall_by_wall(p0minus: &InvariantTable, rmax: i64, nmax: i64) -> Result<InvariantTable, WallError> {
    check_range(p0minus, rmax, nmax)?;
    let nmin = p0minus.nmin;
    let span = (nmax - nmin).max(1);
    let dt = InvariantTable::dt(rmax.max(1), 1, span);
    // walls below -span/2 cannot move weight inside the grid
    let floor = Rat::new((-span - 1).into(), 2.into());
    let walls = critical_values(rmax, nmax, &floor, &Rat::zero()).walls;

    let mut table = InvariantTable::new(TableRole::PMinusInfinity, rmax, nmin, nmax);
    for r in 0..=rmax {
        for n in nmin..=nmax {
            table.set(r, n, p0minus.get(r, n)?);
        }
    }
    for b_c in walls.iter().rev() {
        let mut next = table.clone();
        for r in 1..=rmax {
            for n in nmin..=nmax {
                let j = wall_jump(&table, b_c, &dt, r, n)?;
                next.set(r, n, table.get(r, n)? + j);
            }
        }
        table = next;
    }
    table.assert_integral()?;
    Ok(table)
}

pub fn resummed_jump(p0minus: &InvariantTable, rmax: i64, nmax: i64) -> Result<InvariantTable, WallError> {
    resummed_jump_with(p0minus, rmax, nmax, SignConvention::Plain)
}

/// `P_{-inf}(r,n) = sum_l 1/l! sum P_{0-}(r',n') prod w(n_i) N(r_i,n_i)` over
/// ordered tuples with `r_i >= 1`, `n_i > 0`.
pub fn resummed_jump_with(
    p0minus: &InvariantTable,
    rmax: i64,
    nmax: i64,
    convention: SignConvention,
) -> Result<InvariantTable, WallError> {
    check_range(p0minus, rmax, nmax)?;
    let nmin = p0minus.nmin;

    #[allow(clippy::too_many_arguments)]
    fn walk(
        p: &InvariantTable,
        convention: SignConvention,
        rem_r: i64,
        rem_n: i64,
        depth: usize,
        weight: Rat,
        total: &mut Rat,
    ) -> Result<(), WallError> {
        if rem_n < p.nmin {
            return Ok(());
        }
        *total += p.get(rem_r, rem_n)? * &weight / factorial(depth);
        for ri in 1..=rem_r {
            let mut ni = ri;
            while rem_n - ni >= p.nmin {
                let f = super::dt_invariant(ri, ni)? * convention.weight(ni);
                walk(p, convention, rem_r - ri, rem_n - ni, depth + 1, &weight * f, total)?;
                ni += ri;
            }
        }
        Ok(())
    }

    let mut out = InvariantTable::new(TableRole::PMinusInfinity, rmax, nmin, nmax);
    for r in 0..=rmax {
        for n in nmin..=nmax {
            let mut total = Rat::zero();
            walk(p0minus, convention, r, n, 0, Rat::one(), &mut total)?;
            out.set(r, n, total);
        }
    }
    out.assert_integral()?;
    Ok(out)
}

/// `P_{0+}(r, n)` of the compact curve: the small-`b` Hilbert series read as a
/// table with vanishing floor `chi(O_C)`.
pub fn small_b_table(curve: &CompactCurveData, germ: CurveGerm, rmax: i64, nmax: i64) -> InvariantTable {
    let z0 = small_b_top_series(curve, germ, rmax.max(0) as u32, nmax);
    InvariantTable::from_series(TableRole::PZeroPlus, &z0, rmax, curve.chi_oc, nmax)
}

pub fn factorization_check(germ: CurveGerm, rmax: i64, nmax: i64) -> Result<CheckReport, WallError> {
    factorization_check_with(&CompactCurveData::rational_model(germ)?, germ, rmax, nmax, SignConvention::Plain)
}

/// Resums the small-`b` table across all negative walls and compares with the
/// conifold product, then specializes `T -> -a^2`, `u -> q^2` and compares
/// with the Hilbert scheme series of the compact curve.
pub fn factorization_check_with(
    curve: &CompactCurveData,
    germ: CurveGerm,
    rmax: i64,
    nmax: i64,
    convention: SignConvention,
) -> Result<CheckReport, WallError> {
    let chi = curve.chi_oc;
    let p0 = small_b_table(curve, germ, rmax, nmax);
    let z0 = p0.to_series();
    let pinf = resummed_jump_with(&p0, rmax, nmax, convention)?;
    let zinf = pinf.to_series();
    let conifold = conifold_series(rmax, nmax);

    let to_hilb = Subst::new()
        .rule(Var::T, true, MonomialKey::var(Var::A, 2))
        .rule(Var::U, false, MonomialKey::var(Var::Q, 2));
    let target = Caps::none().with(Var::A, 2 * rmax).with(Var::Q, 2 * nmax);
    let hilb = global_top_series(germ, curve.chi_top, (nmax - chi).max(0) as u32)
        .shift(&MonomialKey::var(Var::Q, 2 * chi))
        .truncate(&target);

    let parts = [
        CheckReport::compare("stable-pair-factorization", &zinf, &(&conifold * &z0)),
        CheckReport::compare("small-b-hilbert", &z0.substitute(&to_hilb, &target)?, &hilb),
        CheckReport::compare(
            "framed-hilbert-factorization",
            &zinf.substitute(&to_hilb, &target)?,
            &(&conifold.substitute(&to_hilb, &target)? * &hilb),
        ),
    ];
    let mut report = CheckReport::new("wallcrossing-factorization");
    for mut part in parts {
        report.note(part.to_string().lines().next().unwrap_or_default().to_string());
        for m in &mut part.mismatches {
            m.monomial = format!("{}: {}", part.identity, m.monomial);
        }
        part.notes.clear();
        report.merge(part);
    }
    if convention == SignConvention::Alternating {
        report.note("alternating (-1)^n weights in the resummation");
    }
    Ok(report)
}

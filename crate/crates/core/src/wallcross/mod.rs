//! Stable-pair wallcrossing for curves in a threefold containing a rigid
//! `(-1,-1)` line `C_0`.
//!
//! Tables are indexed by `(r, n)`: `r` is the multiplicity of `C_0` and `n`
//! the holomorphic Euler characteristic. Walls sit at `b = -n'/(2r')`.
//! Crossing a wall downward adds the multinomial terms of [`wall_jump`]; all
//! walls below zero together give the conifold factor of [`resummed_jump`].

mod jump;

pub use jump::{
    factorization_check, factorization_check_with, resummed_jump, resummed_jump_with, small_b_table, wall_by_wall,
    wall_jump,
};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::hilbseries::HilbError;
use crate::report::CheckReport;
use crate::ring::{power_product, ratio, Caps, Factor, MonomialKey, Rat, RingError, Series, Var};

#[derive(Debug, thiserror::Error)]
pub enum WallError {
    #[error("r must be positive, got {0}")]
    NonPositive(i64),
    #[error("table entry ({r}, {n}) is outside the populated range")]
    OutOfRange { r: i64, n: i64 },
    #[error("entry ({r}, {n}) = {value} is not an integer")]
    NonIntegral { r: i64, n: i64, value: String },
    #[error(transparent)]
    Hilb(#[from] HilbError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Which exponential resums the DT invariants. `Plain` is
/// `exp(sum n N T^r u^n)`, `Alternating` inserts `(-1)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    Plain,
    Alternating,
}

impl SignConvention {
    fn weight(self, n: i64) -> Rat {
        match self {
            SignConvention::Alternating if n.is_odd() => -Rat::from_integer(n.into()),
            _ => Rat::from_integer(n.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSpec {
    pub r: i64,
    pub n: i64,
    #[serde(serialize_with = "ser_rats")]
    pub walls: Vec<Rat>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// All `-n'/(2r')` with `1 <= r' <= r` strictly inside `(b_lo, b_hi)`.
pub fn critical_values(r: i64, n: i64, b_lo: &Rat, b_hi: &Rat) -> WallSpec {
    let mut walls = Vec::new();
    if r >= 1 && b_lo < b_hi {
        for rp in 1..=r {
            let two_r = Rat::from_integer((2 * rp).into());
            // b_lo < -n'/(2r') < b_hi  <=>  -2r' b_hi < n' < -2r' b_lo
            let lo = (-(b_hi * &two_r)).floor().to_integer();
            let hi = (-(b_lo * &two_r)).ceil().to_integer();
            let mut np = lo;
            while np <= hi {
                let b = Rat::new(-np.clone(), (2 * rp).into());
                if &b > b_lo && &b < b_hi {
                    walls.push(b);
                }
                np += 1;
            }
        }
    }
    walls.sort();
    walls.dedup();
    WallSpec { r, n, walls }
}

/// `(-1)^{r-1}/r^2` when `r | n`, zero otherwise.
pub fn dt_invariant(r: i64, n: i64) -> Result<Rat, WallError> {
    if r <= 0 {
        return Err(WallError::NonPositive(r));
    }
    if n.mod_floor(&r) != 0 {
        return Ok(Rat::zero());
    }
    let sign = if r % 2 == 1 { 1 } else { -1 };
    Ok(ratio(sign, r * r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRole {
    PMinusInfinity,
    PZeroPlus,
    NDt,
}

/// Values on `0 <= r <= rmax`, `nmin <= n <= nmax`. For the `P` roles, `nmin`
/// is the vanishing floor: entries below it are zero, not missing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTable {
    pub role: TableRole,
    pub rmax: i64,
    pub nmin: i64,
    pub nmax: i64,
    values: BTreeMap<(i64, i64), Rat>,
}

#[derive(Serialize)]
struct EntryJson {
    r: i64,
    n: i64,
    value: String,
}

impl InvariantTable {
    pub fn new(role: TableRole, rmax: i64, nmin: i64, nmax: i64) -> Self {
        InvariantTable { role, rmax, nmin, nmax, values: BTreeMap::new() }
    }

    /// The DT table on `1 <= r <= rmax`, `nmin <= n <= nmax`.
    pub fn dt(rmax: i64, nmin: i64, nmax: i64) -> Self {
        let mut t = InvariantTable::new(TableRole::NDt, rmax, nmin, nmax);
        for r in 1..=rmax {
            for n in nmin..=nmax {
                t.set(r, n, dt_invariant(r, n).expect("r >= 1"));
            }
        }
        t
    }

    /// Reads `T^r u^n` coefficients of `z` into a table.
    pub fn from_series(role: TableRole, z: &Series, rmax: i64, nmin: i64, nmax: i64) -> Self {
        let mut t = InvariantTable::new(role, rmax, nmin, nmax);
        for (k, c) in z.terms() {
            let (r, n) = (k.exp(Var::T), k.exp(Var::U));
            if (0..=rmax).contains(&r) && (nmin..=nmax).contains(&n) {
                t.set(r, n, c.clone());
            }
        }
        t
    }

    pub fn set(&mut self, r: i64, n: i64, v: Rat) {
        if v.is_zero() {
            self.values.remove(&(r, n));
        } else {
            self.values.insert((r, n), v);
        }
    }

    pub fn get(&self, r: i64, n: i64) -> Result<Rat, WallError> {
        let floor = self.role != TableRole::NDt && n < self.nmin;
        if r < 0 || r > self.rmax || n > self.nmax || (n < self.nmin && !floor) {
            return Err(WallError::OutOfRange { r, n });
        }
        Ok(self.values.get(&(r, n)).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.values.iter()
    }

    pub fn to_series(&self) -> Series {
        let caps = Caps::none().with(Var::T, self.rmax).with(Var::U, self.nmax);
        Series::from_terms(
            caps,
            self.values.iter().map(|(&(r, n), v)| (MonomialKey::from_pairs(&[(Var::T, r), (Var::U, n)]), v.clone())),
        )
    }

    pub fn assert_integral(&self) -> Result<(), WallError> {
        match self.values.iter().find(|(_, v)| !v.is_integer()) {
            Some((&(r, n), v)) => Err(WallError::NonIntegral { r, n, value: v.to_string() }),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryJson> = self
            .values
            .iter()
            .map(|(&(r, n), v)| EntryJson { r, n, value: v.to_string() })
            .collect();
        serde_json::json!({
            "role": self.role,
            "rmax": self.rmax,
            "nmin": self.nmin,
            "nmax": self.nmax,
            "entries": entries,
        })
    }
}

impl std::ops::Add for &InvariantTable {
    type Output = InvariantTable;
    fn add(self, other: &InvariantTable) -> InvariantTable {
        let mut out = self.clone();
        for (&(r, n), v) in &other.values {
            let cur = out.values.get(&(r, n)).cloned().unwrap_or_else(Rat::zero);
            out.set(r, n, cur + v);
        }
        out
    }
}

/// `prod_{k >= 1} (1 + T u^k)^k` through `T^{tmax} u^{umax}`.
pub fn conifold_series(tmax: i64, umax: i64) -> Series {
    let caps = Caps::none().with(Var::T, tmax).with(Var::U, umax);
    let factors: Vec<Factor> = (1..=umax.max(0))
        .map(|k| Factor::plus(MonomialKey::from_pairs(&[(Var::T, 1), (Var::U, k)]), k))
        .collect();
    power_product(&factors, &caps).expect("finite exponents")
}

/// `sum_{r,n > 0} w(n) N(r, n) T^r u^n` with `w` fixed by the convention.
pub fn dt_log_series(tmax: i64, umax: i64, convention: SignConvention) -> Series {
    let caps = Caps::none().with(Var::T, tmax).with(Var::U, umax);
    let mut terms = Vec::new();
    for r in 1..=tmax {
        for n in 1..=umax {
            let v = dt_invariant(r, n).expect("r >= 1") * convention.weight(n);
            terms.push((MonomialKey::from_pairs(&[(Var::T, r), (Var::U, n)]), v));
        }
    }
    Series::from_terms(caps, terms)
}

pub fn exp_identity_check(tmax: i64, umax: i64) -> CheckReport {
    exp_identity_check_with(tmax, umax, SignConvention::Plain)
}

/// Compares `exp` of the DT log series against the conifold product.
pub fn exp_identity_check_with(tmax: i64, umax: i64, convention: SignConvention) -> CheckReport {
    let lhs = dt_log_series(tmax, umax, convention).exp().expect("no constant term, finite caps");
    let mut r = CheckReport::compare("conifold-exp-resummation", &lhs, &conifold_series(tmax, umax));
    if convention == SignConvention::Alternating {
        r.note("alternating (-1)^n weights");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn q(n: i64, d: i64) -> Rat {
        ratio(n, d)
    }

    #[test]
    fn walls() {
        let w = critical_values(1, 0, &rat(-2), &rat(0));
        assert_eq!(w.walls, vec![q(-3, 2), rat(-1), q(-1, 2)]);
        assert!(critical_values(2, 5, &rat(0), &q(1, 4)).walls.is_empty());
        assert!(critical_values(0, 5, &rat(-5), &rat(5)).walls.is_empty());
        let w = critical_values(3, 0, &rat(-1), &rat(1));
        assert!(w.walls.windows(2).all(|p| p[0] < p[1]));
        assert!(w.walls.contains(&q(-1, 3)) && w.walls.contains(&q(1, 6)));
    }

    #[test]
    fn dt_values() {
        for n in -3..6 {
            assert_eq!(dt_invariant(1, n).unwrap(), rat(1));
        }
        assert_eq!(dt_invariant(2, 3).unwrap(), rat(0));
        assert_eq!(dt_invariant(2, 4).unwrap(), q(-1, 4));
        assert_eq!(dt_invariant(3, -3).unwrap(), q(1, 9));
        assert!(dt_invariant(0, 1).is_err());
    }

    #[test]
    fn conifold_low_terms() {
        let c = conifold_series(3, 8);
        assert_eq!(c.constant_term(), rat(1));
        for k in 1..=8 {
            assert_eq!(c.coeff_of(&[(Var::T, 1), (Var::U, k)]), rat(k));
        }
        // log of the product, factor by factor
        let mut log = Series::zero().truncate(c.caps());
        for k in 1..=8 {
            let f = &Series::one() + &Series::term(1, &[(Var::T, 1), (Var::U, k)]);
            log = &log + &f.truncate(c.caps()).log().unwrap().scale(&rat(k));
        }
        assert_eq!(log.exp().unwrap(), c);
    }

    #[test]
    fn exp_identity() {
        assert!(exp_identity_check(3, 12).passed());
        assert!(exp_identity_check(1, 5).passed());
        assert!(exp_identity_check(0, 0).passed());
        assert!(!exp_identity_check_with(2, 6, SignConvention::Alternating).passed());
    }

    #[test]
    fn table_access() {
        let mut t = InvariantTable::new(TableRole::PZeroPlus, 2, 0, 4);
        t.set(1, 2, rat(3));
        assert_eq!(t.get(1, 2).unwrap(), rat(3));
        assert_eq!(t.get(1, -5).unwrap(), rat(0));
        assert!(t.get(3, 0).is_err());
        assert!(t.get(0, 5).is_err());
        let n = InvariantTable::dt(2, 1, 4);
        assert!(n.get(1, 0).is_err());
        assert_eq!(n.get(2, 4).unwrap(), q(-1, 4));
        assert!(n.nonzero().all(|(&(r, n), _)| n % r == 0));
    }
}

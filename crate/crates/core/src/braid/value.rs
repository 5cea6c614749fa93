use serde::Serialize;

use super::poly::{self, Poly};
use crate::ring::{power_product, rat, Caps, Factor, MonomialKey, Rat, Series, SeriesJson, Subst, Var};

/// `numerator / (q - q^{-1})^den_power` with a Laurent numerator in `(a, q)`
/// that is not divisible by `q - q^{-1}` unless `den_power = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomflyValue {
    numerator: Series,
    den_power: u32,
}

#[derive(Serialize)]
struct HomflyJson {
    numerator: SeriesJson,
    den_power: u32,
}

fn z_series() -> Series {
    &Series::var(Var::Q) - &Series::term(1, &[(Var::Q, -1)])
}

impl HomflyValue {
    pub fn zero() -> Self {
        HomflyValue { numerator: Series::zero(), den_power: 0 }
    }

    /// `(a - a^{-1}) / (q - q^{-1})`.
    pub fn unknot() -> Self {
        HomflyValue {
            numerator: &Series::var(Var::A) - &Series::term(1, &[(Var::A, -1)]),
            den_power: 1,
        }
    }

    pub fn numerator(&self) -> &Series {
        &self.numerator
    }

    pub fn den_power(&self) -> u32 {
        self.den_power
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Converts a trace value in `(a, z, delta)` to canonical `(a, q)` form.
    pub(crate) fn from_poly(p: &Poly) -> Self {
        if p.is_zero() {
            return HomflyValue::zero();
        }
        let dmax = p.max_exp(poly::D).unwrap_or(0).max(0);
        let unknot_num = Poly::var(poly::A, 1).sub(&Poly::var(poly::A, -1));
        let mut num = Poly::zero();
        for (e, c) in p.terms() {
            let mut term = Poly::zero();
            term.add_term([e[0], e[1] + dmax - e[2], 0], c.clone());
            num.add_assign(&term.mul(&unknot_num.pow(e[2] as u32)));
        }
        let mut d = dmax;
        let zmin = num.min_exp(poly::Z).unwrap_or(0);
        if zmin < 0 {
            num = num.shift(poly::Z, -zmin);
            d -= zmin;
        }
        let shrink = num.min_exp(poly::Z).unwrap_or(0).min(d);
        num = num.shift(poly::Z, -shrink);
        d -= shrink;

        let zmax = num.max_exp(poly::Z).unwrap_or(0);
        let z = z_series();
        let mut zpow = vec![Series::one()];
        for j in 1..=zmax as usize {
            zpow.push(&zpow[j - 1] * &z);
        }
        let mut numerator = Series::zero();
        for (e, c) in num.terms() {
            let a = Series::monomial(MonomialKey::var(Var::A, e[0] as i64), Rat::from_integer(c.clone()));
            numerator = &numerator + &(&a * &zpow[e[1] as usize]);
        }
        HomflyValue { numerator, den_power: d as u32 }
    }

    /// Numerator over the common denominator `(q - q^{-1})^d` for `d >= den_power`.
    pub fn lift(&self, d: u32) -> Series {
        assert!(d >= self.den_power, "lift below the value's own denominator");
        &self.numerator * &z_series().pow(d - self.den_power)
    }

    /// Product of values, i.e. the invariant of a split union.
    pub fn mul(&self, other: &HomflyValue) -> HomflyValue {
        if self.is_zero() || other.is_zero() {
            return HomflyValue::zero();
        }
        HomflyValue {
            numerator: &self.numerator * &other.numerator,
            den_power: self.den_power + other.den_power,
        }
    }

    /// Image under `(a, q) -> (a^{-1}, q^{-1})`.
    pub fn mirror_image(&self) -> HomflyValue {
        let sub = Subst::new()
            .rule(Var::A, false, MonomialKey::var(Var::A, -1))
            .rule(Var::Q, false, MonomialKey::var(Var::Q, -1));
        let n = self.numerator.substitute(&sub, &Caps::none()).expect("small exponents");
        let sign = if self.den_power % 2 == 1 { rat(-1) } else { rat(1) };
        HomflyValue { numerator: n.scale(&sign), den_power: self.den_power }
    }

    /// Expansion around `q = 0` through `q^order`, using
    /// `(q - q^{-1})^{-d} = (-q)^d (1 - q^2)^{-d}`.
    pub fn q_expansion(&self, order: i64) -> Series {
        let caps = Caps::none().with(Var::Q, order);
        if self.is_zero() {
            return Series::zero().truncate(&caps);
        }
        let d = self.den_power as i64;
        let lo = self.numerator.min_exp(Var::Q).unwrap_or(0);
        let inner = Caps::none().with(Var::Q, order - d - lo);
        let geom = power_product(&[Factor::minus(MonomialKey::var(Var::Q, 2), -d)], &inner)
            .expect("q has positive degree")
            .with_caps(Caps::none());
        // the dropped tail of `geom` only reaches beyond q^order
        let sign = if d % 2 == 1 { rat(-1) } else { rat(1) };
        let shifted = self.numerator.shift(&MonomialKey::var(Var::Q, d)).scale(&sign);
        (&shifted * &geom).truncate(&caps).with_caps(caps)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HomflyJson { numerator: self.numerator.to_json(), den_power: self.den_power })
            .expect("homfly json is always serializable")
    }
}

impl std::fmt::Display for HomflyValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.den_power {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / (q - q^-1)", self.numerator),
            d => write!(f, "({}) / (q - q^-1)^{d}", self.numerator),
        }
    }
}

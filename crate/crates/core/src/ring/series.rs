use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat, MonomialKey, Rat, RingError, Var, NVARS};

/// Per-variable inclusive degree caps. `None` means the variable is untruncated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Caps([Option<i64>; NVARS]);

impl Caps {
    pub fn none() -> Self {
        Caps([None; NVARS])
    }

    pub fn with(mut self, v: Var, cap: i64) -> Self {
        self.0[v.index()] = Some(cap);
        self
    }

    pub fn without(mut self, v: Var) -> Self {
        self.0[v.index()] = None;
        self
    }

    pub fn get(&self, v: Var) -> Option<i64> {
        self.0[v.index()]
    }

    pub fn is_exact(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        Var::ALL.into_iter().filter_map(|v| self.get(v).map(|c| (v, c)))
    }

    pub fn intersect(&self, other: &Caps) -> Caps {
        let mut out = *self;
        for (i, slot) in out.0.iter_mut().enumerate() {
            *slot = match (*slot, other.0[i]) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        out
    }

    pub fn admits(&self, key: &MonomialKey) -> bool {
        self.iter().all(|(v, c)| key.exp(v) <= c)
    }
}

/// A finite set of terms plus the caps below which those terms are complete.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<MonomialKey, Rat>,
    caps: Caps,
}

/// A monomial substitution rule `v -> ±key`.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    rules: BTreeMap<Var, (bool, MonomialKey)>,
}

impl Subst {
    pub fn new() -> Self {
        Subst::default()
    }

    /// `v -> key` (or `-key` when `negate`).
    pub fn rule(mut self, v: Var, negate: bool, key: MonomialKey) -> Self {
        self.rules.insert(v, (negate, key));
        self
    }

    fn image(&self, v: Var) -> (bool, MonomialKey) {
        self.rules
            .get(&v)
            .copied()
            .unwrap_or((false, MonomialKey::var(v, 1)))
    }
}

impl Series {
    pub fn zero() -> Self {
        Series::default()
    }

    pub fn one() -> Self {
        Series::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Series::monomial(MonomialKey::ONE, c)
    }

    pub fn monomial(key: MonomialKey, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Series { terms, caps: Caps::none() }
    }

    /// `c * v1^e1 * v2^e2 ...` with an integer coefficient.
    pub fn term(c: i64, pairs: &[(Var, i64)]) -> Self {
        Series::monomial(MonomialKey::from_pairs(pairs), rat(c))
    }

    pub fn var(v: Var) -> Self {
        Series::term(1, &[(v, 1)])
    }

    /// Sums duplicate keys, drops zeros and anything outside `caps`.
    pub fn from_terms<I>(caps: Caps, terms: I) -> Self
    where
        I: IntoIterator<Item = (MonomialKey, Rat)>,
    {
        let mut out = Series { terms: BTreeMap::new(), caps };
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn is_exact(&self) -> bool {
        self.caps.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonomialKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MonomialKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_of(&self, pairs: &[(Var, i64)]) -> Rat {
        self.coeff(&MonomialKey::from_pairs(pairs))
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&MonomialKey::ONE)
    }

    pub fn min_exp(&self, v: Var) -> Option<i64> {
        self.terms.keys().map(|k| k.exp(v)).min()
    }

    pub fn max_exp(&self, v: Var) -> Option<i64> {
        self.terms.keys().map(|k| k.exp(v)).max()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Adds `c * key` in place, respecting caps.
    pub fn add_term(&mut self, key: MonomialKey, c: Rat) {
        if c.is_zero() || !self.caps.admits(&key) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Intersects caps with `caps` and drops terms that no longer fit.
    pub fn truncate(&self, caps: &Caps) -> Series {
        let caps = self.caps.intersect(caps);
        Series {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| caps.admits(k))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
            caps,
        }
    }

    /// Replaces the caps outright. Only sound when the caller knows the terms
    /// are complete under the new caps.
    pub fn with_caps(&self, caps: Caps) -> Series {
        Series::from_terms(caps, self.terms.iter().map(|(k, c)| (*k, c.clone())))
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series { terms: BTreeMap::new(), caps: self.caps };
        }
        Series {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            caps: self.caps,
        }
    }

    /// Multiplies by a monomial. Caps shift with the exponent.
    pub fn shift(&self, key: &MonomialKey) -> Series {
        let mut caps = self.caps;
        for (v, c) in self.caps.iter() {
            caps = caps.with(v, c + key.exp(v));
        }
        Series {
            terms: self.terms.iter().map(|(k, v)| (k.mul(key), v.clone())).collect(),
            caps,
        }
    }

    fn product_caps(&self, other: &Series) -> Caps {
        let mut caps = Caps::none();
        for v in Var::ALL {
            let lo1 = self.min_exp(v).unwrap_or(0).min(0);
            let lo2 = other.min_exp(v).unwrap_or(0).min(0);
            let c = match (self.caps.get(v), other.caps.get(v)) {
                (None, None) => None,
                (Some(c1), None) => Some(c1 + lo2),
                (None, Some(c2)) => Some(c2 + lo1),
                (Some(c1), Some(c2)) => Some((c1 + lo2).min(c2 + lo1)),
            };
            if let Some(c) = c {
                caps = caps.with(v, c);
            }
        }
        caps
    }

    pub fn mul_series(&self, other: &Series) -> Series {
        let caps = self.product_caps(other);
        let mut out = Series { terms: BTreeMap::new(), caps };
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let k = k1.mul(k2);
                if caps.admits(&k) {
                    out.add_term(k, c1 * c2);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_series(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_series(&base);
            }
        }
        acc
    }

    /// Largest `j` with a nonzero `s^j`, assuming every term has positive
    /// total degree in the capped variables.
    fn nilpotency_bound(&self) -> Result<u32, RingError> {
        if self.caps.is_exact() {
            return Err(RingError::MissingCap);
        }
        let mut bound: i64 = 0;
        for (_, c) in self.caps.iter() {
            bound += c.max(0);
        }
        for k in self.terms.keys() {
            let mut deg = 0;
            for (v, _) in self.caps.iter() {
                if k.exp(v) < 0 {
                    return Err(RingError::NonTerminating(k.to_string()));
                }
                deg += k.exp(v);
            }
            if deg <= 0 {
                return Err(RingError::NonTerminating(k.to_string()));
            }
        }
        Ok(bound as u32)
    }

    /// Applies `sum_j coeffs(j) x^j` for `x = self` (zero constant term).
    fn compose(&self, coeff: impl Fn(u32) -> Rat) -> Result<Series, RingError> {
        let jmax = self.nilpotency_bound()?;
        let mut out = Series::constant(coeff(0)).truncate(&self.caps);
        let mut power = Series::one().truncate(&self.caps);
        for j in 1..=jmax {
            power = power.mul_series(self);
            if power.is_zero() {
                break;
            }
            out = &out + &power.scale(&coeff(j));
        }
        Ok(out)
    }

    pub fn exp(&self) -> Result<Series, RingError> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(RingError::ConstantTerm { expected: 0, found: c0.to_string() });
        }
        let mut fact = vec![rat(1)];
        let jmax = self.nilpotency_bound()?;
        for j in 1..=jmax {
            let prev = fact[(j - 1) as usize].clone();
            fact.push(prev * rat(j as i64));
        }
        self.compose(|j| fact[j as usize].recip())
    }

    pub fn log(&self) -> Result<Series, RingError> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(RingError::ConstantTerm { expected: 1, found: c0.to_string() });
        }
        let x = self - &Series::one();
        x.compose(|j| match j {
            0 => Rat::zero(),
            j if j % 2 == 1 => rat(j as i64).recip(),
            j => -rat(j as i64).recip(),
        })
    }

    /// Multiplicative inverse of a series whose constant term is a nonzero
    /// rational and whose other terms have positive capped degree.
    pub fn inverse(&self) -> Result<Series, RingError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(RingError::ConstantTerm { expected: 1, found: c0.to_string() });
        }
        let inv0 = c0.recip();
        let x = (self - &Series::constant(c0)).scale(&inv0);
        let series = x.compose(|j| if j % 2 == 0 { rat(1) } else { rat(-1) })?;
        Ok(series.scale(&inv0))
    }

    /// Exact monomial substitution, truncated to `target` caps. The caller
    /// chooses `target` so that the image of any dropped source term lies
    /// outside it.
    pub fn substitute(&self, subst: &Subst, target: &Caps) -> Result<Series, RingError> {
        let images: Vec<(bool, MonomialKey)> = Var::ALL.iter().map(|&v| subst.image(v)).collect();
        let mut out = Series { terms: BTreeMap::new(), caps: *target };
        for (k, c) in &self.terms {
            let mut key = MonomialKey::ONE;
            let mut negative = false;
            for (i, v) in Var::ALL.into_iter().enumerate() {
                let e = k.exp(v);
                if e == 0 {
                    continue;
                }
                let (neg, img) = &images[i];
                let p = img.checked_pow(e).ok_or(RingError::ExponentOverflow)?;
                key = key.checked_mul(&p).ok_or(RingError::ExponentOverflow)?;
                if *neg && e.rem_euclid(2) == 1 {
                    negative = !negative;
                }
            }
            out.add_term(key, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Terms with `v`-exponent exactly `e`, with that exponent cleared.
    pub fn coefficient_in(&self, v: Var, e: i64) -> Series {
        let caps = self.caps.without(v);
        Series::from_terms(
            caps,
            self.terms
                .iter()
                .filter(|(k, _)| k.exp(v) == e)
                .map(|(k, c)| (k.with(v, 0), c.clone())),
        )
    }

    /// Coefficient-wise differences inside the joint caps of both series.
    pub fn mismatches(&self, other: &Series) -> Vec<(MonomialKey, Rat, Rat)> {
        let caps = self.caps.intersect(&other.caps);
        let a = self.truncate(&caps);
        let b = other.truncate(&caps);
        let mut keys: Vec<MonomialKey> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (x, y) = (a.coeff(&k), b.coeff(&k));
                (x != y).then_some((k, x, y))
            })
            .collect()
    }

    pub fn agrees_with(&self, other: &Series) -> bool {
        self.mismatches(other).is_empty()
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let caps = self.caps.intersect(&rhs.caps);
        let mut out = self.truncate(&caps);
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let caps = self.caps.intersect(&rhs.caps);
        let mut out = self.truncate(&caps);
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&rat(-1))
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if k.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{abs}*{k}")?;
            }
        }
        let caps: Vec<String> = self.caps.iter().map(|(v, c)| format!("{v}^{c}")).collect();
        if !caps.is_empty() {
            write!(f, " + O({})", caps.join(", "))?;
        }
        Ok(())
    }
}

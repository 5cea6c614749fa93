use num_traits::{Signed, Zero};

use super::{rat, Caps, MonomialKey, Rat, RingError, Series};

/// One factor `(1 + sign*m)^e` of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub base: MonomialKey,
    pub negate: bool,
    pub exponent: Rat,
}

impl Factor {
    pub fn new(base: MonomialKey, negate: bool, exponent: Rat) -> Self {
        Factor { base, negate, exponent }
    }

    /// `(1 + m)^e`.
    pub fn plus(base: MonomialKey, exponent: i64) -> Self {
        Factor::new(base, false, rat(exponent))
    }

    /// `(1 - m)^e`.
    pub fn minus(base: MonomialKey, exponent: i64) -> Self {
        Factor::new(base, true, rat(exponent))
    }

    fn finite_degree(&self) -> Option<u64> {
        let e = &self.exponent;
        (e.is_integer() && !e.is_negative()).then(|| e.to_integer().try_into().unwrap_or(u64::MAX))
    }

    /// Truncated binomial expansion under `caps`.
    pub fn expand(&self, caps: &Caps) -> Result<Series, RingError> {
        let mut out = Series::one().truncate(caps);
        if self.exponent.is_zero() {
            return Ok(out);
        }
        let mut jmax: Option<u64> = None;
        for (v, c) in caps.iter() {
            let d = self.base.exp(v);
            if d > 0 {
                let j = if c < 0 { 0 } else { (c / d) as u64 };
                jmax = Some(jmax.map_or(j, |m| m.min(j)));
            }
        }
        let jmax = match (jmax, self.finite_degree()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => return Err(RingError::NonTerminating(self.base.to_string())),
        };
        let mut binom = rat(1);
        for j in 1..=jmax {
            let jr = rat(j as i64);
            binom = binom * (&self.exponent - &jr + rat(1)) / jr;
            if binom.is_zero() {
                break;
            }
            let key = self
                .base
                .checked_pow(j as i64)
                .ok_or(RingError::ExponentOverflow)?;
            let c = if self.negate && j % 2 == 1 { -binom.clone() } else { binom.clone() };
            out.add_term(key, c);
        }
        Ok(out)
    }
}

/// Exact truncated product of `(1 ± m_k)^{e_k}` under `caps`.
pub fn power_product(factors: &[Factor], caps: &Caps) -> Result<Series, RingError> {
    let mut acc = Series::one().truncate(caps);
    for f in factors {
        acc = &acc * &f.expand(caps)?;
    }
    Ok(acc)
}

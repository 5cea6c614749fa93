//! Exact multivariate Laurent polynomials and truncated power series.
//!
//! Every generating function in the crate lives in a [`Series`] over the fixed
//! ordered variable set `(a, q, T, u, y, Lhalf)`. The `Lhalf` slot counts
//! half-units of the Lefschetz motive, so `L^{r^2/2}` is stored as
//! `Lhalf^{r^2}`.
//!
//! A series may carry a per-variable degree cap. Terms whose exponent exceeds a
//! cap are never stored, and binary operations reconcile caps so that no
//! reported coefficient depends on data that was dropped.

mod json;
mod power;
mod series;

pub use json::{SeriesJson, TermJson};
pub use power::{power_product, Factor};
pub use series::{Caps, Series, Subst};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Coefficient ring.
pub type Rat = BigRational;

pub const NVARS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    A,
    Q,
    T,
    U,
    Y,
    Lhalf,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::A, Var::Q, Var::T, Var::U, Var::Y, Var::Lhalf];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::Q => "q",
            Var::T => "T",
            Var::U => "u",
            Var::Y => "y",
            Var::Lhalf => "Lhalf",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Var::ALL`]. Ordering is lexicographic in that order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialKey([i64; NVARS]);

impl MonomialKey {
    pub const ONE: MonomialKey = MonomialKey([0; NVARS]);

    pub fn new(exps: [i64; NVARS]) -> Self {
        MonomialKey(exps)
    }

    pub fn var(v: Var, e: i64) -> Self {
        MonomialKey::ONE.with(v, e)
    }

    /// Builds a key from `(variable, exponent)` pairs; repeated variables add up.
    pub fn from_pairs(pairs: &[(Var, i64)]) -> Self {
        let mut k = MonomialKey::ONE;
        for &(v, e) in pairs {
            k.0[v.index()] += e;
        }
        k
    }

    pub fn with(mut self, v: Var, e: i64) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn exp(&self, v: Var) -> i64 {
        self.0[v.index()]
    }

    pub fn exps(&self) -> &[i64; NVARS] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; NVARS]
    }

    pub fn mul(&self, other: &MonomialKey) -> MonomialKey {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += e;
        }
        MonomialKey(out)
    }

    pub fn checked_mul(&self, other: &MonomialKey) -> Option<MonomialKey> {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o = o.checked_add(e)?;
        }
        Some(MonomialKey(out))
    }

    pub fn checked_pow(&self, n: i64) -> Option<MonomialKey> {
        let mut out = self.0;
        for o in out.iter_mut() {
            *o = o.checked_mul(n)?;
        }
        Some(MonomialKey(out))
    }

    pub fn inverse(&self) -> MonomialKey {
        MonomialKey(self.0.map(|e| -e))
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("operation needs a truncation cap but the series is exact")]
    MissingCap,
    #[error("constant term must be {expected}, found {found}")]
    ConstantTerm { expected: i64, found: String },
    #[error("term {0} has no positive degree in any capped variable; expansion does not terminate")]
    NonTerminating(String),
    #[error("exponent overflow during substitution")]
    ExponentOverflow,
    #[error("malformed series json: {0}")]
    Json(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

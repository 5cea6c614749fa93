//! Generating functions of Hilbert schemes of points on the germ `x^p = y^q`
//! and on compact curves with one such singular point.
//!
//! Integrals against the constructible function `(1 - a^2)^m` are evaluated
//! over monomial ideals, i.e. `m` is taken to be constant on the cell of each
//! torus-fixed ideal. Refined data comes either from Euler characteristics
//! (`y = -1` only) or from finite-field counts of each generator stratum.

mod global;
mod gv;
mod local;

pub use global::{
    global_top_series, motivic_compact_series, small_b_top_series, symmetric_product_series,
};
pub use gv::{gv_expand, GvTable};
pub use local::{
    fibration_check, gaussian, local_series_from_histogram, local_top_series, os_verify, os_verify_with_mu, refined_local_series,
    smooth_closed_form_check, MAX_POINTCOUNT_NMAX,
};

use std::str::FromStr;

use serde::Serialize;

use crate::braid::BraidError;
use crate::ring::RingError;
use crate::semimodule::{CurveGerm, SemimoduleError};

#[derive(Debug, thiserror::Error)]
pub enum HilbError {
    #[error(transparent)]
    Semimodule(#[from] SemimoduleError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("backend limit: {0}")]
    BackendLimit(String),
    #[error("invalid hodge data: {0}")]
    Hodge(String),
    #[error("invalid curve data: {0}")]
    Curve(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Euler,
    Pointcount,
}

impl FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euler" => Ok(Backend::Euler),
            "pointcount" => Ok(Backend::Pointcount),
            other => Err(format!("unknown backend {other:?} (expected euler or pointcount)")),
        }
    }
}

/// One compactly supported cohomology group: degree `k`, weight `w`, rank `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HodgeEntry {
    pub k: u32,
    pub w: u32,
    pub h: u32,
}

/// Weighted compactly supported Betti numbers of a punctured curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeData {
    entries: Vec<HodgeEntry>,
}

impl HodgeData {
    pub fn new(entries: Vec<HodgeEntry>) -> Result<Self, HilbError> {
        let mut entries = entries;
        entries.sort();
        for pair in entries.windows(2) {
            if (pair[0].k, pair[0].w) == (pair[1].k, pair[1].w) {
                return Err(HilbError::Hodge(format!("duplicate entry (k={}, w={})", pair[0].k, pair[0].w)));
            }
        }
        if let Some(e) = entries.iter().find(|e| e.h == 0) {
            return Err(HilbError::Hodge(format!("zero rank at (k={}, w={})", e.k, e.w)));
        }
        Ok(HodgeData { entries })
    }

    fn of(list: &[(u32, u32, u32)]) -> Self {
        HodgeData::new(list.iter().map(|&(k, w, h)| HodgeEntry { k, w, h }).collect()).expect("static data")
    }

    pub fn point() -> Self {
        HodgeData::of(&[(0, 0, 1)])
    }

    pub fn c_star() -> Self {
        HodgeData::of(&[(1, 0, 1), (2, 2, 1)])
    }

    pub fn affine_line() -> Self {
        HodgeData::of(&[(2, 2, 1)])
    }

    pub fn entries(&self) -> &[HodgeEntry] {
        &self.entries
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries.iter().map(|e| if e.k % 2 == 0 { e.h as i64 } else { -(e.h as i64) }).sum()
    }
}

/// A reduced irreducible plane curve of degree `k` with one singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactCurveData {
    pub degree: u32,
    pub chi_oc: i64,
    pub chi_top: i64,
    pub hodge_punctured: HodgeData,
}

impl CompactCurveData {
    /// A rational curve of degree `k` whose only singularity is a unibranch
    /// germ with `delta = (k-1)(k-2)/2`, so the normalization is `P^1` and the
    /// complement of the singular point is an affine line.
    pub fn rational_unibranch(k: u32, germ: CurveGerm) -> Result<Self, HilbError> {
        let genus = if k >= 2 { (k - 1) * (k - 2) / 2 } else { 0 };
        if k == 0 || germ.delta() != genus {
            return Err(HilbError::Curve(format!(
                "a rational degree-{k} curve needs delta = {genus}, germ ({},{}) has {}",
                germ.p(),
                germ.q(),
                germ.delta()
            )));
        }
        Ok(CompactCurveData {
            degree: k,
            chi_oc: 1 - genus as i64,
            chi_top: 2,
            hodge_punctured: HodgeData::affine_line(),
        })
    }

    /// The lowest-degree rational unibranch model for `germ`: the smallest `k`
    /// with `(k-1)(k-2)/2 = delta`.
    pub fn rational_model(germ: CurveGerm) -> Result<Self, HilbError> {
        let delta = germ.delta();
        let mut k = 1;
        loop {
            let genus = if k >= 2 { (k - 1) * (k - 2) / 2 } else { 0 };
            if genus == delta {
                return CompactCurveData::rational_unibranch(k, germ);
            }
            if genus > delta {
                return Err(HilbError::Curve(format!(
                    "delta = {delta} is not (k-1)(k-2)/2 for any degree k; supply curve data"
                )));
            }
            k += 1;
        }
    }

    /// The cuspidal cubic `y^2 z = x^3`.
    pub fn cuspidal_cubic() -> Self {
        CompactCurveData::rational_unibranch(3, CurveGerm::new(2, 3).expect("coprime")).expect("delta = 1")
    }

    /// `chi(C) = chi(C \ p) + 1`.
    pub fn is_consistent(&self) -> bool {
        self.chi_top == self.hodge_punctured.euler_characteristic() + 1
    }
}

//! Monomial ideals of the germ `x^p = y^q` as cofinite modules over the value
//! semigroup `<p, q>`, plus a finite-field count of all ideals.
//!
//! A module `D` is stored through its complement `G = Gamma \ D`, which is an
//! order ideal: `x in G` and `x - p in Gamma` imply `x - p in G` (same for `q`).
//! Enumeration adds elements to `G` in increasing order, so modules come out
//! in lexicographic order of their gap sets.

mod fit;
mod oracle;

pub use fit::{fit_polynomial, CountPolynomial};
pub use oracle::{
    nested_pair_count, pointcount_oracle, pointcount_by_generators, stratum_polynomials, PointCount,
    MAX_ORACLE_COLENGTH, MAX_ORACLE_PRIME,
};

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SemimoduleError {
    #[error("gcd(p,q) must be 1, got ({0}, {1})")]
    NotCoprime(u32, u32),
    #[error("p and q must be positive, got ({0}, {1})")]
    NonPositive(u32, u32),
    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("polynomial fit needs at least one point")]
    EmptyFit,
}

/// The unibranch germ `x^p = y^q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveGerm {
    p: u32,
    q: u32,
}

impl CurveGerm {
    pub fn new(p: u32, q: u32) -> Result<Self, SemimoduleError> {
        if p == 0 || q == 0 {
            return Err(SemimoduleError::NonPositive(p, q));
        }
        if p.gcd(&q) != 1 {
            return Err(SemimoduleError::NotCoprime(p, q));
        }
        Ok(CurveGerm { p, q })
    }

    pub fn smooth() -> Self {
        CurveGerm { p: 1, q: 1 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn mu(&self) -> u32 {
        (self.p - 1) * (self.q - 1)
    }

    pub fn conductor(&self) -> u32 {
        self.mu()
    }

    pub fn delta(&self) -> u32 {
        self.mu() / 2
    }

    pub fn min_pq(&self) -> u32 {
        self.p.min(self.q)
    }

    pub fn in_semigroup(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        if x >= self.conductor() as i64 {
            return true;
        }
        let (p, q) = (self.p as i64, self.q as i64);
        (0..=x / p).any(|i| (x - i * p) % q == 0)
    }

    /// Nonnegative integers outside the semigroup.
    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor()).filter(|&x| !self.in_semigroup(x as i64)).collect()
    }

    /// Semigroup elements in `[0, bound)`.
    pub fn elements_below(&self, bound: u32) -> Vec<u32> {
        (0..bound).filter(|&x| self.in_semigroup(x as i64)).collect()
    }
}

/// A cofinite `Gamma`-module `D`, stored via its finite complement in `Gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaModule {
    germ: CurveGerm,
    missing: Vec<u32>,
}

impl GammaModule {
    /// Builds the module `Gamma \ missing`, checking the closure property.
    pub fn from_missing(germ: CurveGerm, mut missing: Vec<u32>) -> Option<Self> {
        missing.sort_unstable();
        missing.dedup();
        let m = GammaModule { germ, missing };
        m.is_valid().then_some(m)
    }

    /// The principal module `d + Gamma`.
    pub fn principal(germ: CurveGerm, d: u32) -> Self {
        let missing = (0..d + germ.conductor())
            .filter(|&x| germ.in_semigroup(x as i64) && !germ.in_semigroup(x as i64 - d as i64))
            .collect();
        GammaModule { germ, missing }
    }

    pub fn germ(&self) -> CurveGerm {
        self.germ
    }

    /// `Gamma \ D`, sorted.
    pub fn missing(&self) -> &[u32] {
        &self.missing
    }

    pub fn contains(&self, x: i64) -> bool {
        self.germ.in_semigroup(x) && self.missing.binary_search(&(x as u32)).is_err()
    }

    pub fn colength(&self) -> u32 {
        self.missing.len() as u32
    }

    /// Everything at or above this bound lies in `D`.
    pub fn stable_bound(&self) -> u32 {
        self.missing.last().map_or(0, |g| g + 1).max(self.germ.conductor())
    }

    /// Membership over `[0, bound)`.
    pub fn membership(&self, bound: u32) -> Vec<bool> {
        (0..bound).map(|x| self.contains(x as i64)).collect()
    }

    /// Elements `d` with neither `d - p` nor `d - q` in `D`.
    pub fn generators(&self) -> Vec<u32> {
        let (p, q) = (self.germ.p as i64, self.germ.q as i64);
        let top = self.stable_bound() + self.germ.p.max(self.germ.q);
        (0..top)
            .filter(|&d| {
                let d = d as i64;
                self.contains(d) && !self.contains(d - p) && !self.contains(d - q)
            })
            .collect()
    }

    pub fn mingens(&self) -> u32 {
        self.generators().len() as u32
    }

    fn is_valid(&self) -> bool {
        let (p, q) = (self.germ.p as i64, self.germ.q as i64);
        self.missing.iter().all(|&x| {
            let x = x as i64;
            self.germ.in_semigroup(x)
                && (!self.germ.in_semigroup(x - p) || !self.contains(x - p))
                && (!self.germ.in_semigroup(x - q) || !self.contains(x - q))
        })
    }
}

/// `(n, m)`: colength and number of minimal generators.
pub fn module_invariants(d: &GammaModule) -> (u32, u32) {
    (d.colength(), d.mingens())
}

/// Depth-first enumeration of all modules with colength at most `nmax`.
pub struct ModuleIter {
    germ: CurveGerm,
    nmax: u32,
    candidates: Vec<u32>,
    /// (gap set, index of next candidate to try)
    stack: Vec<(Vec<u32>, usize)>,
    pending_root: Option<Vec<u32>>,
}

impl ModuleIter {
    fn new(germ: CurveGerm, nmax: u32, root: Vec<u32>) -> Self {
        let candidates = germ.elements_below(germ.conductor() + nmax);
        ModuleIter { germ, nmax, candidates, stack: Vec::new(), pending_root: Some(root) }
    }

    fn extendable(&self, gaps: &[u32], x: u32) -> bool {
        let g = self.germ;
        [g.p, g.q].into_iter().all(|s| {
            let y = x as i64 - s as i64;
            !g.in_semigroup(y) || gaps.binary_search(&(y as u32)).is_ok()
        })
    }
}

impl Iterator for ModuleIter {
    type Item = GammaModule;

    fn next(&mut self) -> Option<GammaModule> {
        if let Some(root) = self.pending_root.take() {
            let start = root.last().map_or(0, |&l| {
                self.candidates.iter().position(|&c| c > l).unwrap_or(self.candidates.len())
            });
            self.stack.push((root.clone(), start));
            return Some(GammaModule { germ: self.germ, missing: root });
        }
        while let Some((gaps, idx)) = self.stack.last_mut() {
            if gaps.len() as u32 >= self.nmax || *idx >= self.candidates.len() {
                self.stack.pop();
                continue;
            }
            let i = *idx;
            *idx += 1;
            let x = self.candidates[i];
            let gaps_now = gaps.clone();
            if !self.extendable(&gaps_now, x) {
                continue;
            }
            let mut child = gaps_now;
            child.push(x);
            self.stack.push((child.clone(), i + 1));
            return Some(GammaModule { germ: self.germ, missing: child });
        }
        None
    }
}

/// All cofinite modules of colength `<= nmax`, each once, lexicographic in
/// the gap set. Starts with `Gamma` itself.
pub fn enumerate_modules(germ: CurveGerm, nmax: u32) -> ModuleIter {
    ModuleIter::new(germ, nmax, Vec::new())
}

/// Disjoint pieces of the enumeration whose concatenation, in order, equals
/// [`enumerate_modules`]: first `Gamma` and the maximal ideal, then one
/// subtree per admissible second gap. Every nonempty order ideal contains 0.
pub fn enumeration_subtrees(germ: CurveGerm, nmax: u32) -> Vec<ModuleIter> {
    let mut parts = vec![ModuleIter::new(germ, nmax.min(1), Vec::new())];
    if nmax >= 2 {
        let probe = ModuleIter::new(germ, nmax, vec![0]);
        let seconds: Vec<u32> = probe
            .candidates
            .iter()
            .copied()
            .filter(|&x| x > 0 && probe.extendable(&[0], x))
            .collect();
        parts.extend(seconds.into_iter().map(|x| ModuleIter::new(germ, nmax, vec![0, x])));
    }
    parts
}

/// Histogram `(n, m) -> count` of the enumerated modules.
pub fn histogram(germ: CurveGerm, nmax: u32) -> BTreeMap<(u32, u32), u64> {
    let mut h = BTreeMap::new();
    for d in enumerate_modules(germ, nmax) {
        *h.entry(module_invariants(&d)).or_insert(0) += 1;
    }
    h
}

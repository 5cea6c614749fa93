//! The four-node quiver with potential attached to local `P^2`, dimension
//! bookkeeping for its representation spaces, and the motivic weight
//! exponent audit.
//!
//! Nodes are numbered 1..4 left to right. Arrows `r, s1, s2` point backwards
//! and span the "left" part `A^l(v)` of the representation space; the others
//! span `A^r(v)`.

mod motivic;

pub use motivic::{motivic_smallb_assemble, oracle_quot_motives, QuotMotives};

use serde::Serialize;

use crate::hilbseries::HilbError;
use crate::ring::{ratio, Rat, RingError};
use crate::semimodule::SemimoduleError;

#[derive(Debug, thiserror::Error)]
pub enum QuiverError {
    #[error("dimension vector slot {slot} is negative ({value})")]
    Negative { slot: usize, value: i64 },
    #[error("no motive supplied for (l={l}, r={r})")]
    MissingMotive { l: u32, r: u32 },
    #[error("motive is not polynomial in L: {0}")]
    NotPolynomial(String),
    #[error("malformed quiver: {0}")]
    Structure(String),
    #[error(transparent)]
    Hilb(#[from] HilbError),
    #[error(transparent)]
    Semimodule(#[from] SemimoduleError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: &'static str,
    pub source: usize,
    pub target: usize,
    pub orientation: Orientation,
}

/// One signed term of the potential. `path` is written in composition order:
/// the rightmost arrow is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PotentialTerm {
    pub sign: i8,
    pub path: Vec<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverPresentation {
    pub nodes: usize,
    pub arrows: Vec<Arrow>,
    pub potential_text: &'static str,
    pub potential: Vec<PotentialTerm>,
}

const POTENTIAL: &str = "W = r(b1 a2 - b2 a1) + s1(c b1 a3 - b3 a1) + s2(c b2 a3 - b3 a2)";

fn arrow(name: &'static str, source: usize, target: usize, orientation: Orientation) -> Arrow {
    Arrow { name, source, target, orientation }
}

fn term(sign: i8, path: &[&'static str]) -> PotentialTerm {
    PotentialTerm { sign, path: path.to_vec() }
}

impl QuiverPresentation {
    pub fn local_p2() -> Self {
        QuiverPresentation::build(4)
    }

    /// The same quiver with `b3` ending at node 3 instead of node 4. Only
    /// used to contrast dimension counts; its potential is not cyclic.
    pub fn b3_to_node3() -> Self {
        QuiverPresentation::build(3)
    }

    fn build(b3_target: usize) -> Self {
        use Orientation::*;
        let arrows = vec![
            arrow("a1", 1, 2, Right),
            arrow("a2", 1, 2, Right),
            arrow("a3", 1, 2, Right),
            arrow("b1", 2, 3, Right),
            arrow("b2", 2, 3, Right),
            arrow("b3", 2, b3_target, Right),
            arrow("c", 3, 4, Right),
            arrow("r", 3, 1, Left),
            arrow("s1", 4, 1, Left),
            arrow("s2", 4, 1, Left),
        ];
        let potential = vec![
            term(1, &["r", "b1", "a2"]),
            term(-1, &["r", "b2", "a1"]),
            term(1, &["s1", "c", "b1", "a3"]),
            term(-1, &["s1", "b3", "a1"]),
            term(1, &["s2", "c", "b2", "a3"]),
            term(-1, &["s2", "b3", "a2"]),
        ];
        QuiverPresentation { nodes: 4, arrows, potential_text: POTENTIAL, potential }
    }

    pub fn arrow(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name == name)
    }

    pub fn left_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| a.orientation == Orientation::Left)
    }

    /// Whether the term is a closed path: each arrow starts where the one to
    /// its right ends, and the leftmost returns to the start.
    pub fn is_cyclic(&self, t: &PotentialTerm) -> Result<bool, QuiverError> {
        let arrows: Vec<&Arrow> = t
            .path
            .iter()
            .map(|n| self.arrow(n).ok_or_else(|| QuiverError::Structure(format!("unknown arrow {n}"))))
            .collect::<Result<_, _>>()?;
        let len = arrows.len();
        Ok(len > 0 && (0..len).all(|i| arrows[i].source == arrows[(i + 1) % len].target))
    }

    pub fn validate(&self) -> Result<(), QuiverError> {
        let left = self.left_arrows().count();
        if left != 3 {
            return Err(QuiverError::Structure(format!("{left} left arrows, expected 3")));
        }
        for t in &self.potential {
            if !self.is_cyclic(t)? {
                return Err(QuiverError::Structure(format!("potential term {} is not cyclic", t.path.join(" "))));
            }
        }
        Ok(())
    }

    pub fn dims(&self, v: &DimVector) -> QuiverDims {
        let (mut ar, mut al) = (0, 0);
        for a in &self.arrows {
            let d = v.0[a.source - 1] * v.0[a.target - 1];
            match a.orientation {
                Orientation::Right => ar += d,
                Orientation::Left => al += d,
            }
        }
        QuiverDims { dim_a: ar + al, dim_ar: ar, dim_al: al, dim_g: v.0.iter().map(|x| x * x).sum() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DimVector(pub [i64; 4]);

impl DimVector {
    pub fn new(v: [i64; 4]) -> Result<Self, QuiverError> {
        match v.iter().position(|&x| x < 0) {
            Some(i) => Err(QuiverError::Negative { slot: i + 1, value: v[i] }),
            None => Ok(DimVector(v)),
        }
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverDims {
    pub dim_a: i64,
    pub dim_ar: i64,
    pub dim_al: i64,
    pub dim_g: i64,
}

pub fn dims(v: &DimVector) -> QuiverDims {
    QuiverPresentation::local_p2().dims(v)
}

/// Dimension vector of a sheaf of degree `k` and Euler characteristic `chi`.
pub fn v_of_sheaf(k: i64, chi: i64) -> Result<DimVector, QuiverError> {
    DimVector::new([2 * k - chi, k - chi, -chi, -chi])
}

/// Dimension vector of the framed extension, twisted by `N`.
pub fn v_framed(k: i64, n: i64, twist: i64, r: i64) -> Result<DimVector, QuiverError> {
    let m = twist * k - n;
    DimVector::new([m + 2 * k, m + k, m + r, m])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Reading {
    /// `(G - A)/2 + Al/2`
    HalfLeft,
    /// `(G - A)/2 + Al`
    FullLeft,
    /// `(G - Ar)/2`
    RightOnly,
}

impl Reading {
    pub const ALL: [Reading; 3] = [Reading::HalfLeft, Reading::FullLeft, Reading::RightOnly];

    pub fn formula(self) -> &'static str {
        match self {
            Reading::HalfLeft => "(G - A)/2 + Al/2",
            Reading::FullLeft => "(G - A)/2 + Al",
            Reading::RightOnly => "(G - Ar)/2",
        }
    }

    pub fn eval(self, d: &QuiverDims) -> Rat {
        let half = |x: i64| ratio(x, 2);
        match self {
            Reading::HalfLeft => half(d.dim_g - d.dim_a) + half(d.dim_al),
            Reading::FullLeft => half(d.dim_g - d.dim_a) + Rat::from_integer(d.dim_al.into()),
            Reading::RightOnly => half(d.dim_g - d.dim_ar),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingValue {
    pub reading: Reading,
    pub formula: &'static str,
    pub value: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub k: i64,
    pub r: i64,
    pub n: i64,
    pub twist: i64,
    pub v: DimVector,
    pub dims: QuiverDims,
    pub target: String,
    pub readings: Vec<ReadingValue>,
}

impl AuditReport {
    pub fn matching(&self) -> Vec<Reading> {
        self.readings.iter().filter(|r| r.matches).map(|r| r.reading).collect()
    }
}

/// Evaluates every reading of the weight exponent at `v_framed(k, n, N, r)`
/// against `(r^2 - k^2)/2`.
pub fn exponent_audit(k: i64, r: i64, n: i64, twist: i64) -> Result<AuditReport, QuiverError> {
    let v = v_framed(k, n, twist, r)?;
    Ok(audit_at(k, r, n, twist, v))
}

fn audit_at(k: i64, r: i64, n: i64, twist: i64, v: DimVector) -> AuditReport {
    let d = dims(&v);
    let target = ratio(r * r - k * k, 2);
    let readings = Reading::ALL
        .iter()
        .map(|&reading| {
            let value = reading.eval(&d);
            ReadingValue { reading, formula: reading.formula(), matches: value == target, value: value.to_string() }
        })
        .collect();
    AuditReport { k, r, n, twist, v, dims: d, target: target.to_string(), readings }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingTally {
    pub reading: Reading,
    pub formula: &'static str,
    pub matched: usize,
    /// It failed somewhere, and every point where it matched has
    /// `dim A^l(v) = 0`.
    pub matched_only_where_al_vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridAudit {
    pub kmax: i64,
    pub rmax: i64,
    pub nmax: i64,
    pub twist_max: i64,
    pub points: usize,
    pub split_holds: bool,
    pub tallies: Vec<ReadingTally>,
    pub first_failures: Vec<AuditReport>,
}

/// Audits `1 <= k <= kmax`, `0 <= r <= rmax`, `0 <= N <= twist_max` and
/// `-nmax <= n <= nmax`, keeping only points where `v_framed` is a valid
/// dimension vector.
pub fn audit_grid(kmax: i64, rmax: i64, nmax: i64, twist_max: i64) -> GridAudit {
    let mut points = Vec::new();
    for k in 1..=kmax {
        for r in 0..=rmax {
            for twist in 0..=twist_max {
                for n in -nmax..=nmax {
                    if let Ok(a) = exponent_audit(k, r, n, twist) {
                        points.push(a);
                    }
                }
            }
        }
    }
    let split_holds = points.iter().all(|p| p.dims.dim_a == p.dims.dim_ar + p.dims.dim_al);
    let tallies = Reading::ALL
        .iter()
        .map(|&reading| {
            let hits: Vec<&AuditReport> = points.iter().filter(|p| p.matching().contains(&reading)).collect();
            ReadingTally {
                reading,
                formula: reading.formula(),
                matched: hits.len(),
                matched_only_where_al_vanishes: hits.len() < points.len() && hits.iter().all(|p| p.dims.dim_al == 0),
            }
        })
        .collect();
    let mut first_failures = Vec::new();
    for &reading in &Reading::ALL {
        if let Some(p) = points.iter().find(|p| !p.matching().contains(&reading)) {
            if !first_failures.contains(p) {
                first_failures.push(p.clone());
            }
        }
    }
    GridAudit { kmax, rmax, nmax, twist_max, points: points.len(), split_holds, tallies, first_failures }
}

impl GridAudit {
    pub fn identically_matching(&self) -> Vec<Reading> {
        self.tallies.iter().filter(|t| t.matched == self.points).map(|t| t.reading).collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str("# Motivic weight exponent audit\n\n");
        s.push_str(&format!(
            "Grid: 1 <= k <= {}, 0 <= r <= {}, 0 <= N <= {}, |n| <= {}; {} admissible points \
             (all slots of v_framed nonnegative).\n\n",
            self.kmax, self.rmax, self.twist_max, self.nmax, self.points
        ));
        s.push_str(&format!(
            "dim A = dim A^r + dim A^l at every point: {}\n\n",
            if self.split_holds { "yes" } else { "no" }
        ));
        s.push_str("| reading | matches (r^2 - k^2)/2 | comment |\n|---|---|---|\n");
        for t in &self.tallies {
            let comment = if t.matched == self.points {
                "holds on the whole grid".to_string()
            } else if t.matched_only_where_al_vanishes {
                "holds only where dim A^l(v) = 0".to_string()
            } else {
                "fails".to_string()
            };
            s.push_str(&format!("| `{}` | {}/{} | {} |\n", t.formula, t.matched, self.points, comment));
        }
        if !self.first_failures.is_empty() {
            s.push_str("\nSample points:\n\n");
            s.push_str("| k | r | n | N | v | G | A | A^r | A^l | target | readings |\n");
            s.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
            for p in &self.first_failures {
                let vals: Vec<String> = p.readings.iter().map(|r| r.value.clone()).collect();
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                    p.k,
                    p.r,
                    p.n,
                    p.twist,
                    p.v,
                    p.dims.dim_g,
                    p.dims.dim_a,
                    p.dims.dim_ar,
                    p.dims.dim_al,
                    p.target,
                    vals.join(", ")
                ));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn presentation() {
        let q = QuiverPresentation::local_p2();
        assert_eq!(q.arrows.len(), 10);
        assert_eq!(q.left_arrows().map(|a| a.name).collect::<Vec<_>>(), vec!["r", "s1", "s2"]);
        q.validate().unwrap();
        assert!(QuiverPresentation::b3_to_node3().validate().is_err());
    }

    #[test]
    fn dims_examples() {
        let d = dims(&DimVector([1, 1, 1, 1]));
        assert_eq!((d.dim_ar, d.dim_al, d.dim_a, d.dim_g), (7, 3, 10, 4));
        let d = dims(&DimVector([1, 0, 0, 0]));
        assert_eq!((d.dim_a, d.dim_g), (0, 1));
        assert_eq!(dims(&DimVector([0; 4])), QuiverDims { dim_a: 0, dim_ar: 0, dim_al: 0, dim_g: 0 });
        let d = dims(&DimVector([2, 3, 5, 7]));
        assert_eq!(d.dim_ar, 3 * 2 * 3 + 2 * 3 * 5 + 3 * 7 + 5 * 7);
        assert_eq!(d.dim_al, 5 * 2 + 2 * 7 * 2);
    }

    #[test]
    fn vectors() {
        assert_eq!(v_of_sheaf(1, 0).unwrap().0, [2, 1, 0, 0]);
        assert_eq!(v_of_sheaf(3, -2).unwrap().0, [8, 5, 2, 2]);
        assert!(v_of_sheaf(1, 1).is_err());
        assert_eq!(v_framed(1, 0, 1, 1).unwrap().0, [3, 2, 2, 1]);
        assert_eq!(v_framed(2, 2, 1, 0).unwrap().0, [4, 2, 0, 0]);
        assert!(v_framed(1, 3, 1, 0).is_err());
        // r = 0 and N k - n = -chi recovers the sheaf vector
        assert_eq!(v_framed(3, 1, 1, 0).unwrap(), v_of_sheaf(3, -2).unwrap());
    }

    #[test]
    fn zero_vector_anchor() {
        for (k, r) in [(2, 2), (2, 1)] {
            let a = audit_at(k, r, 0, 0, DimVector([0; 4]));
            for rv in &a.readings {
                assert_eq!(rv.value, "0");
                assert_eq!(rv.matches, r == k);
            }
        }
    }

    #[test]
    fn grid() {
        let g = audit_grid(3, 3, 12, 4);
        assert!(g.points > 100);
        assert!(g.split_holds);
        assert_eq!(g.identically_matching(), vec![Reading::FullLeft]);
        assert!(g.tallies.iter().filter(|t| t.reading != Reading::FullLeft).all(|t| t.matched_only_where_al_vanishes));
        let a = exponent_audit(1, 1, 0, 1).unwrap();
        assert_eq!(Reading::FullLeft.eval(&a.dims), rat(0));
    }
}

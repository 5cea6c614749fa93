//! Coefficient-by-coefficient comparison reports.

use serde::Serialize;

use crate::ring::Series;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Short name of the identity being checked.
    pub identity: String,
    /// Number of distinct monomials compared.
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckReport { identity: identity.into(), checked: 0, mismatches: Vec::new(), notes: Vec::new() }
    }

    /// Compares two series inside their joint caps.
    pub fn compare(identity: impl Into<String>, lhs: &Series, rhs: &Series) -> Self {
        let mut r = CheckReport::new(identity);
        r.absorb(lhs, rhs);
        r
    }

    pub fn absorb(&mut self, lhs: &Series, rhs: &Series) {
        let caps = lhs.caps().intersect(rhs.caps());
        let (l, r) = (lhs.truncate(&caps), rhs.truncate(&caps));
        let mut keys: Vec<_> = l.terms().map(|(k, _)| *k).chain(r.terms().map(|(k, _)| *k)).collect();
        keys.sort();
        keys.dedup();
        self.checked += keys.len();
        for (k, a, b) in lhs.mismatches(rhs) {
            self.mismatches.push(Mismatch { monomial: k.to_string(), lhs: a.to_string(), rhs: b.to_string() });
        }
    }

    pub fn fail(&mut self, what: impl Into<String>, lhs: impl ToString, rhs: impl ToString) {
        self.checked += 1;
        self.mismatches.push(Mismatch { monomial: what.into(), lhs: lhs.to_string(), rhs: rhs.to_string() });
    }

    pub fn pass_one(&mut self) {
        self.checked += 1;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.mismatches.extend(other.mismatches);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} coefficients, {} mismatches", self.identity, self.checked, self.mismatches.len())?;
        for m in self.mismatches.iter().take(10) {
            write!(f, "\n  {}: {} != {}", m.monomial, m.lhs, m.rhs)?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

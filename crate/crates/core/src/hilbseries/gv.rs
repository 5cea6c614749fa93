use std::collections::BTreeMap;

use serde::Serialize;

use crate::ring::{Rat, Series, Var};

/// Coefficients `N_r^p` of `(1-u)^2 Z` grouped by the power `r` of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvTable {
    /// Inclusive `u` cap the table was extracted under, if any.
    pub u_cap: Option<i64>,
    pub columns: BTreeMap<i64, GvColumn>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvColumn {
    /// `p -> N_r^p`, nonzero entries only.
    #[serde(serialize_with = "ser_rat_map")]
    pub coeffs: BTreeMap<i64, Rat>,
    /// The nonzero entries stop in the lower half of the `u` window, so the
    /// column looks like a polynomial rather than a truncated tail.
    pub polynomial: bool,
}

fn ser_rat_map<S: serde::Serializer>(m: &BTreeMap<i64, Rat>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(&k.to_string(), &v.to_string())?;
    }
    out.end()
}

impl GvTable {
    pub fn get(&self, r: i64, p: i64) -> Rat {
        self.columns
            .get(&r)
            .and_then(|c| c.coeffs.get(&p).cloned())
            .unwrap_or_else(|| Rat::from_integer(0.into()))
    }

    pub fn all_polynomial(&self) -> bool {
        self.columns.values().all(|c| c.polynomial)
    }
}

impl std::fmt::Display for GvTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (r, col) in &self.columns {
            let body: Vec<String> = col.coeffs.iter().map(|(p, c)| format!("{c}*u^{p}")).collect();
            let tag = if col.polynomial { "" } else { "  (tail reaches the cap)" };
            writeln!(f, "T^{r}: {}{tag}", if body.is_empty() { "0".into() } else { body.join(" + ") })?;
        }
        Ok(())
    }
}

/// Multiplies by `(1-u)^2` and reads off the coefficient table.
pub fn gv_expand(z: &Series) -> GvTable {
    let u_cap = z.caps().get(Var::U);
    let one_minus_u = &Series::one() - &Series::var(Var::U);
    let numer = &(&one_minus_u * &one_minus_u) * z;
    let mut columns: BTreeMap<i64, GvColumn> = BTreeMap::new();
    for (k, c) in numer.terms() {
        let col = columns
            .entry(k.exp(Var::T))
            .or_insert_with(|| GvColumn { coeffs: BTreeMap::new(), polynomial: true });
        col.coeffs.insert(k.exp(Var::U), c.clone());
    }
    if let Some(cap) = u_cap {
        let lo = numer.min_exp(Var::U).unwrap_or(0);
        let half = lo + (cap - lo) / 2;
        for col in columns.values_mut() {
            col.polynomial = col.coeffs.keys().next_back().is_none_or(|&p| p <= half);
        }
    }
    GvTable { u_cap, columns }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbseries::{small_b_top_series, CompactCurveData};
    use crate::ring::{power_product, rat, Caps, Factor, MonomialKey};
    use crate::semimodule::CurveGerm;

    fn inv_sq(cap: i64) -> Series {
        let caps = Caps::none().with(Var::U, cap);
        power_product(&[Factor::minus(MonomialKey::var(Var::U, 1), -2)], &caps).unwrap()
    }

    #[test]
    fn trivial_tables() {
        let t = gv_expand(&inv_sq(10));
        assert_eq!(t.get(0, 0), rat(1));
        assert_eq!(t.columns[&0].coeffs.len(), 1);
        assert!(t.all_polynomial());

        let t = gv_expand(&inv_sq(10).shift(&MonomialKey::var(Var::U, 1)));
        assert_eq!(t.get(0, 1), rat(1));
        assert_eq!(t.get(0, 0), rat(0));
    }

    #[test]
    fn tail_flagged() {
        let caps = Caps::none().with(Var::U, 8);
        let z = power_product(&[Factor::minus(MonomialKey::var(Var::U, 1), -3)], &caps).unwrap();
        assert!(!gv_expand(&z).all_polynomial());
    }

    #[test]
    fn cusp_small_b_runs() {
        let c = CompactCurveData::cuspidal_cubic();
        let z = small_b_top_series(&c, CurveGerm::new(2, 3).unwrap(), 2, 8);
        let t = gv_expand(&z);
        assert!(t.columns.contains_key(&0));
    }
}

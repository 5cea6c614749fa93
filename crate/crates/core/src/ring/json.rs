use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Caps, MonomialKey, Rat, RingError, Series, Var, NVARS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<i64>,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    pub caps: BTreeMap<String, i64>,
    pub exact: bool,
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> Self {
        SeriesJson {
            vars: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
            terms: s
                .terms()
                .map(|(k, c)| TermJson {
                    exps: k.exps().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
            caps: s.caps().iter().map(|(v, c)| (v.name().to_string(), c)).collect(),
            exact: s.is_exact(),
        }
    }
}

impl TryFrom<&SeriesJson> for Series {
    type Error = RingError;

    fn try_from(j: &SeriesJson) -> Result<Series, RingError> {
        let bad = |m: String| RingError::Json(m);
        let order: Vec<Var> = j
            .vars
            .iter()
            .map(|n| Var::from_name(n).ok_or_else(|| bad(format!("unknown variable {n}"))))
            .collect::<Result<_, _>>()?;
        let mut caps = Caps::none();
        for (n, c) in &j.caps {
            let v = Var::from_name(n).ok_or_else(|| bad(format!("unknown variable {n}")))?;
            caps = caps.with(v, *c);
        }
        if j.exact != caps.is_exact() {
            return Err(bad("exact flag disagrees with caps".into()));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exps.len() != order.len() {
                return Err(bad(format!("term has {} exponents, expected {}", t.exps.len(), order.len())));
            }
            let mut exps = [0i64; NVARS];
            for (v, e) in order.iter().zip(&t.exps) {
                exps[v.index()] = *e;
            }
            let num: BigInt = t.num.parse().map_err(|_| bad(format!("bad numerator {}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| bad(format!("bad denominator {}", t.den)))?;
            if den.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            terms.push((MonomialKey::new(exps), Rat::new(num, den)));
        }
        Ok(Series::from_terms(caps, terms))
    }
}

impl Series {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson::from(self)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series json is always serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Series, RingError> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| RingError::Json(e.to_string()))?;
        Series::try_from(&j)
    }
}

use num_traits::Zero;
use serde::Serialize;

use super::SemimoduleError;
use crate::ring::{rat, Rat};

/// Polynomial in the field size, `coeffs[k]` multiplies `Q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountPolynomial {
    coeffs: Vec<Rat>,
}

#[derive(Serialize)]
struct CountPolynomialJson {
    coeffs: Vec<String>,
}

impl CountPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CountPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: i64) -> Rat {
        let x = rat(x);
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * &x + c)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CountPolynomialJson { coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() })
            .expect("plain strings")
    }
}

impl std::fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*Q"),
                k => format!("{c}*Q^{k}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Interpolating polynomial of degree below the number of points.
pub fn fit_polynomial(points: &[(i64, i64)]) -> Result<CountPolynomial, SemimoduleError> {
    if points.is_empty() {
        return Err(SemimoduleError::EmptyFit);
    }
    let n = points.len();
    let mut out = vec![Rat::zero(); n];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // Lagrange basis polynomial for node i, built in the monomial basis
        let mut basis = vec![rat(1)];
        let mut denom = rat(1);
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * rat(xj);
            }
            basis = next;
            denom *= rat(xi - xj);
        }
        let scale = rat(yi) / denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * &scale;
        }
    }
    Ok(CountPolynomial::new(out))
}

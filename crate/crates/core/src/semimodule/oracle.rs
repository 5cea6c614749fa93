//! Brute-force count of ideals in `F_p[t^p, t^q] / (t^M)`.
//!
//! Subspaces are walked in reduced echelon form: positions of the semigroup
//! below `M` are visited from the top, each either a pivot (leading exponent of
//! a basis vector) or not. A pivot vector carries free coefficients on the
//! non-pivot positions above it, and survives only if its products with `t^p`
//! and `t^q` reduce to zero against the basis built so far.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{fit_polynomial, CountPolynomial, CurveGerm, SemimoduleError};

pub const MAX_ORACLE_COLENGTH: u32 = 5;
pub const MAX_ORACLE_PRIME: u32 = 7;

const FIT_PRIMES: [u32; 4] = [2, 3, 5, 7];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCount {
    pub prime: u32,
    pub colength: u32,
    pub total: u64,
    /// number of ideals by minimal generator count
    pub by_generators: BTreeMap<u32, u64>,
}

type Vector = Vec<u8>;

struct Algebra {
    germ: CurveGerm,
    prime: u32,
    size: usize,
    positions: Vec<usize>,
}

/// Reduced echelon basis: `rows[e]` is the vector with leading exponent `e`.
#[derive(Clone)]
struct Ideal {
    rows: Vec<Option<Vector>>,
}

impl Algebra {
    fn new(germ: CurveGerm, size: usize, prime: u32) -> Self {
        let positions = germ.elements_below(size as u32).into_iter().map(|x| x as usize).collect();
        Algebra { germ, prime, size, positions }
    }

    fn shift(&self, v: &[u8], s: usize) -> Vector {
        let mut out = vec![0u8; self.size];
        let n = self.size.saturating_sub(s);
        out[s.min(self.size)..].copy_from_slice(&v[..n]);
        out
    }

    fn member(&self, ideal: &Ideal, v: &[u8]) -> bool {
        let p = self.prime;
        let mut v = v.to_vec();
        for e in 0..self.size {
            let c = v[e] as u32;
            if c == 0 {
                continue;
            }
            let Some(row) = &ideal.rows[e] else {
                return false;
            };
            let neg = p - c;
            for (x, r) in v.iter_mut().zip(row).skip(e) {
                *x = ((*x as u32 + neg * *r as u32) % p) as u8;
            }
        }
        true
    }

    fn closed_under_m(&self, ideal: &Ideal, v: &[u8]) -> bool {
        let (p, q) = (self.germ.p() as usize, self.germ.q() as usize);
        self.member(ideal, &self.shift(v, p)) && self.member(ideal, &self.shift(v, q))
    }

    /// Calls `visit` on every ideal of codimension `l`.
    fn for_each_ideal(&self, l: usize, visit: &mut dyn FnMut(&Ideal)) {
        let mut ideal = Ideal { rows: vec![None; self.size] };
        let mut nonpivots = Vec::new();
        self.walk(self.positions.len(), l, &mut ideal, &mut nonpivots, visit);
    }

    fn walk(
        &self,
        remaining: usize,
        l: usize,
        ideal: &mut Ideal,
        nonpivots: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Ideal),
    ) {
        if nonpivots.len() + remaining < l {
            return;
        }
        if remaining == 0 {
            visit(ideal);
            return;
        }
        let e = self.positions[remaining - 1];
        if nonpivots.len() < l {
            nonpivots.push(e);
            self.walk(remaining - 1, l, ideal, nonpivots, visit);
            nonpivots.pop();
        }
        let free = nonpivots.len();
        let total = (self.prime as u64).pow(free as u32);
        for code in 0..total {
            let mut v = vec![0u8; self.size];
            v[e] = 1;
            let mut c = code;
            for &np in nonpivots.iter() {
                v[np] = (c % self.prime as u64) as u8;
                c /= self.prime as u64;
            }
            if !self.closed_under_m(ideal, &v) {
                continue;
            }
            ideal.rows[e] = Some(v);
            self.walk(remaining - 1, l, ideal, nonpivots, visit);
            ideal.rows[e] = None;
        }
    }

    /// `dim I / mI`, computed in a larger truncation where `mI` contains
    /// every monomial at or above the cut.
    fn generator_count(&self, ideal: &Ideal) -> u32 {
        let (p, q) = (self.germ.p() as usize, self.germ.q() as usize);
        let big = self.size + p.min(q);
        let mut gens: Vec<Vector> = Vec::new();
        for row in ideal.rows.iter().flatten() {
            let mut v = row.clone();
            v.resize(big, 0);
            gens.push(v);
        }
        for e in self.size..big {
            if self.germ.in_semigroup(e as i64) {
                let mut v = vec![0u8; big];
                v[e] = 1;
                gens.push(v);
            }
        }
        let shift = |v: &Vector, s: usize| {
            let mut out = vec![0u8; big];
            let n = big.saturating_sub(s);
            out[s.min(big)..].copy_from_slice(&v[..n]);
            out
        };
        let products: Vec<Vector> = gens.iter().flat_map(|g| [shift(g, p), shift(g, q)]).collect();
        (gens.len() - rank(products, self.prime)) as u32
    }
}

fn rank(mut rows: Vec<Vector>, p: u32) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = mod_inv(rows[r][col] as u32, p);
        for x in rows[r].iter_mut() {
            *x = ((*x as u32 * inv) % p) as u8;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = p - row[col] as u32;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u32 + f * *y as u32) % p) as u8;
            }
        }
        r += 1;
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| (a * x) % p == 1).expect("p is prime and a is nonzero")
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn check_limits(l: u32, prime: u32) -> Result<(), SemimoduleError> {
    if !is_prime(prime) {
        return Err(SemimoduleError::NotPrime(prime));
    }
    if prime > MAX_ORACLE_PRIME {
        return Err(SemimoduleError::OracleLimit(format!("prime {prime} > {MAX_ORACLE_PRIME}")));
    }
    if l > MAX_ORACLE_COLENGTH {
        return Err(SemimoduleError::OracleLimit(format!("colength {l} > {MAX_ORACLE_COLENGTH}")));
    }
    Ok(())
}

/// Ideals of colength `l` over `F_prime`, split by minimal generator count.
pub fn pointcount_by_generators(germ: CurveGerm, l: u32, prime: u32) -> Result<PointCount, SemimoduleError> {
    check_limits(l, prime)?;
    let alg = Algebra::new(germ, (germ.conductor() + l) as usize, prime);
    let mut by_generators = BTreeMap::new();
    let mut total = 0;
    alg.for_each_ideal(l as usize, &mut |ideal| {
        total += 1;
        *by_generators.entry(alg.generator_count(ideal)).or_insert(0) += 1;
    });
    Ok(PointCount { prime, colength: l, total, by_generators })
}

/// Number of ideals of colength `l` in `F_prime[t^p, t^q]/(t^M)`, `M = c + l`.
pub fn pointcount_oracle(germ: CurveGerm, l: u32, prime: u32) -> Result<u64, SemimoduleError> {
    check_limits(l, prime)?;
    let alg = Algebra::new(germ, (germ.conductor() + l) as usize, prime);
    let mut total = 0;
    alg.for_each_ideal(l as usize, &mut |_| total += 1);
    Ok(total)
}

/// Pairs `m J ⊆ I ⊆ J` with `J` of colength `l` and `I` of colength `l + r`,
/// found by testing containment between all ideals of the two colengths.
pub fn nested_pair_count(germ: CurveGerm, l: u32, r: u32, prime: u32) -> Result<u64, SemimoduleError> {
    check_limits(l + r, prime)?;
    let alg = Algebra::new(germ, (germ.conductor() + l + r) as usize, prime);
    let mut big = Vec::new();
    alg.for_each_ideal(l as usize, &mut |i| big.push(i.clone()));
    let mut small = Vec::new();
    alg.for_each_ideal((l + r) as usize, &mut |i| small.push(i.clone()));
    let mut count = 0;
    for j in &big {
        let j_rows: Vec<&Vector> = j.rows.iter().flatten().collect();
        for i in &small {
            let inside = i.rows.iter().flatten().all(|v| alg.member(j, v));
            if inside && j_rows.iter().all(|v| alg.closed_under_m(i, v)) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Count polynomials of the strata `{I : colength l, s generators}`, fitted on
/// `F_2, F_3, F_5, F_7`. Fails if any fitted coefficient is not integral.
pub fn stratum_polynomials(germ: CurveGerm, l: u32) -> Result<BTreeMap<u32, CountPolynomial>, SemimoduleError> {
    let counts: Vec<PointCount> = FIT_PRIMES
        .iter()
        .map(|&p| pointcount_by_generators(germ, l, p))
        .collect::<Result<_, _>>()?;
    let mut strata: Vec<u32> = counts.iter().flat_map(|c| c.by_generators.keys().copied()).collect();
    strata.sort_unstable();
    strata.dedup();
    let mut out = BTreeMap::new();
    for s in strata {
        let pts: Vec<(i64, i64)> = counts
            .iter()
            .map(|c| (c.prime as i64, *c.by_generators.get(&s).unwrap_or(&0) as i64))
            .collect();
        let poly = fit_polynomial(&pts)?;
        if !poly.is_integral() {
            return Err(SemimoduleError::OracleLimit(format!(
                "stratum (l={l}, s={s}) counts are not an integral cubic in the field size"
            )));
        }
        out.insert(s, poly);
    }
    Ok(out)
}

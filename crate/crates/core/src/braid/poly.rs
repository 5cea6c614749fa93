//! Integer Laurent polynomials in `(a, z, delta)`, the native ring of the
//! Hecke trace before `delta = (a - a^{-1})/z` is eliminated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) const A: usize = 0;
pub(crate) const Z: usize = 1;
pub(crate) const D: usize = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Poly(BTreeMap<[i32; 3], BigInt>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::mono(1, [0, 0, 0])
    }

    pub fn mono(c: i64, e: [i32; 3]) -> Self {
        let mut p = Poly::zero();
        p.add_term(e, BigInt::from(c));
        p
    }

    pub fn var(slot: usize, e: i32) -> Self {
        let mut k = [0; 3];
        k[slot] = e;
        Poly::mono(1, k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &BigInt)> {
        self.0.iter()
    }

    pub fn add_term(&mut self, e: [i32; 3], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.0 {
            self.add_term(*e, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, by: &Poly) {
        for (e1, c1) in &other.0 {
            for (e2, c2) in &by.0 {
                self.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, other);
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(&other.neg());
        out
    }

    pub fn min_exp(&self, slot: usize) -> Option<i32> {
        self.0.keys().map(|e| e[slot]).min()
    }

    pub fn max_exp(&self, slot: usize) -> Option<i32> {
        self.0.keys().map(|e| e[slot]).max()
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, slot: usize, k: i32) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[slot] += k;
                    (e, c.clone())
                })
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let x = Poly::var(A, 1);
        let y = x.sub(&x);
        assert!(y.is_zero());
        let sq = Poly::var(A, 1).sub(&Poly::var(A, -1)).pow(2);
        assert_eq!(sq.terms().count(), 3);
    }
}

use std::collections::HashMap;

use super::poly::{self, Poly};
use super::{BraidError, BraidWord, HomflyValue, MAX_STRANDS};

pub const DEFAULT_CROSSING_LIMIT: usize = 64;

/// Permutation in one-line notation, values `1..=m`.
type Perm = Vec<u8>;

/// Element of the Hecke algebra in the positive permutation braid basis.
type Element = HashMap<Perm, Poly>;

fn z() -> Poly {
    Poly::var(poly::Z, 1)
}

fn push(out: &mut Element, w: Perm, c: &Poly) {
    out.entry(w).or_default().add_assign(c);
}

/// `x * g_i^{±1}` (generator index `i` is 1-based).
fn right_mul(x: &Element, i: usize, positive: bool) -> Element {
    let mut out = Element::with_capacity(x.len() * 2);
    let zp = z();
    for (w, c) in x {
        let mut ws = w.clone();
        ws.swap(i - 1, i);
        let ascent = w[i - 1] < w[i];
        match (ascent, positive) {
            (true, true) => push(&mut out, ws, c),
            (false, true) => {
                push(&mut out, ws, c);
                push(&mut out, w.clone(), &c.mul(&zp));
            }
            // g^{-1} = g - z
            (true, false) => {
                push(&mut out, ws, c);
                push(&mut out, w.clone(), &c.mul(&zp).neg());
            }
            (false, false) => push(&mut out, ws, c),
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `g_i * x`.
fn left_mul(x: &Element, i: usize) -> Element {
    let mut out = Element::with_capacity(x.len() * 2);
    let zp = z();
    for (w, c) in x {
        let pi = w.iter().position(|&v| v as usize == i).expect("value present");
        let pj = w.iter().position(|&v| v as usize == i + 1).expect("value present");
        let mut sw = w.clone();
        sw.swap(pi, pj);
        push(&mut out, sw, c);
        if pi > pj {
            push(&mut out, w.clone(), &c.mul(&zp));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[derive(Default)]
struct Trace {
    memo: HashMap<Perm, Poly>,
}

impl Trace {
    /// Trace of the basis element `g_w`, `w` in `S_m` with `m = w.len()`.
    fn of(&mut self, w: &[u8]) -> Poly {
        if w.is_empty() {
            return Poly::one();
        }
        if let Some(v) = self.memo.get(w) {
            return v.clone();
        }
        let m = w.len();
        // w = w' * (s_{m-1} ... s_k), k = position of m
        let k = w.iter().position(|&v| v as usize == m).expect("m present") + 1;
        let wp: Perm = w.iter().copied().filter(|&v| v as usize != m).collect();
        let value = if k == m {
            self.of(&wp).mul(&Poly::var(poly::D, 1))
        } else {
            // tr(g_w' g_{m-1} y) = a tr(y g_w') with y = g_{m-2} ... g_k
            let mut y: Element = HashMap::from([(wp, Poly::one())]);
            for i in k..m - 1 {
                y = left_mul(&y, i);
            }
            let mut acc = Poly::zero();
            for (v, c) in &y {
                acc.add_scaled(&self.of(v), c);
            }
            acc.shift(poly::A, 1)
        };
        self.memo.insert(w.to_vec(), value.clone());
        value
    }
}

pub(crate) fn hecke_trace(b: &BraidWord) -> Poly {
    let n = b.strands();
    let id: Perm = (1..=n as u8).collect();
    let mut x: Element = HashMap::from([(id, Poly::one())]);
    for &l in b.letters() {
        x = right_mul(&x, l.unsigned_abs() as usize, l > 0);
    }
    let mut tr = Trace::default();
    let mut acc = Poly::zero();
    let mut keys: Vec<&Perm> = x.keys().collect();
    keys.sort();
    for w in keys {
        acc.add_scaled(&tr.of(w), &x[w]);
    }
    acc.shift(poly::A, -(b.writhe() as i32))
}

pub fn homfly_with_limit(b: &BraidWord, limit: usize) -> Result<HomflyValue, BraidError> {
    if b.len() > limit {
        return Err(BraidError::CrossingLimit { found: b.len(), limit });
    }
    if b.strands() > MAX_STRANDS {
        return Err(BraidError::TooManyStrands(b.strands()));
    }
    Ok(HomflyValue::from_poly(&hecke_trace(b)))
}

/// HOMFLY polynomial of the braid closure with the default crossing limit.
pub fn homfly(b: &BraidWord) -> Result<HomflyValue, BraidError> {
    homfly_with_limit(b, DEFAULT_CROSSING_LIMIT)
}

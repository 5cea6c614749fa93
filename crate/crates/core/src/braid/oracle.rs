//! Naive skein-tree evaluation on the closed braid diagram.
//!
//! Components are walked from base points in a fixed order. The first crossing
//! met from below is switched (and smoothed, via the skein relation) until the
//! diagram is descending, at which point it is an unlink. Exponential, so only
//! used as a cross-check on small words.

use super::poly::{self, Poly};
use super::{BraidError, BraidWord, HomflyValue};

pub const ORACLE_CROSSING_LIMIT: usize = 12;

/// Index of the first crossing reached as the under-strand, or the number of
/// components if the diagram is descending.
fn first_ascending(strands: usize, letters: &[i32]) -> Result<usize, usize> {
    let mut seen = vec![false; letters.len()];
    let mut started = vec![false; strands];
    let mut components = 0;
    for s in 0..strands {
        if started[s] {
            continue;
        }
        components += 1;
        let mut pos = s;
        loop {
            started[pos] = true;
            for (t, &l) in letters.iter().enumerate() {
                let i = l.unsigned_abs() as usize;
                // positive letters carry the left strand over
                let over = if pos + 1 == i {
                    pos = i;
                    l > 0
                } else if pos == i {
                    pos = i - 1;
                    l < 0
                } else {
                    continue;
                };
                if !seen[t] {
                    seen[t] = true;
                    if !over {
                        return Err(t);
                    }
                }
            }
            if pos == s {
                break;
            }
        }
    }
    Ok(components)
}

fn resolve(strands: usize, letters: &mut Vec<i32>) -> Poly {
    match first_ascending(strands, letters) {
        Ok(c) => Poly::var(poly::D, c as i32),
        Err(t) => {
            let l = letters[t];
            letters[t] = -l;
            let switched = resolve(strands, letters);
            letters[t] = l;
            let mut smoothed_word = letters.clone();
            smoothed_word.remove(t);
            let smoothed = resolve(strands, &mut smoothed_word);
            // a P+ - a^{-1} P- = z P0
            let (sw, sm) = if l > 0 {
                (Poly::var(poly::A, -2), Poly::mono(1, [-1, 1, 0]))
            } else {
                (Poly::var(poly::A, 2), Poly::mono(-1, [1, 1, 0]))
            };
            let mut out = switched.mul(&sw);
            out.add_scaled(&smoothed, &sm);
            out
        }
    }
}

/// HOMFLY polynomial by exhaustive skein resolution.
pub fn homfly_skein_tree(b: &BraidWord) -> Result<HomflyValue, BraidError> {
    if b.len() > ORACLE_CROSSING_LIMIT {
        return Err(BraidError::CrossingLimit { found: b.len(), limit: ORACLE_CROSSING_LIMIT });
    }
    let mut letters = b.letters().to_vec();
    Ok(HomflyValue::from_poly(&resolve(b.strands(), &mut letters)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::homfly;

    #[test]
    fn descending_detection() {
        assert_eq!(first_ascending(2, &[1]), Ok(1));
        assert_eq!(first_ascending(2, &[-1]), Err(0));
        assert_eq!(first_ascending(3, &[]), Ok(3));
    }

    #[test]
    fn matches_engine_on_small_words() {
        for w in [vec![1i32, 1, 1], vec![1, -2, 1, -2], vec![1, 1, 2, -1, 2], vec![-1, -1, -1, -1]] {
            let strands = w.iter().map(|l| l.unsigned_abs() as usize).max().unwrap() + 1;
            let b = BraidWord::new(strands, w).unwrap();
            assert_eq!(homfly_skein_tree(&b).unwrap(), homfly(&b).unwrap(), "{b}");
        }
    }
}

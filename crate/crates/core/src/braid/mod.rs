//! Braid words and the HOMFLY polynomial of their closures.
//!
//! Normalization: `a P(L+) - a^{-1} P(L-) = (q - q^{-1}) P(L0)` and the unknot
//! evaluates to `(a - a^{-1})/(q - q^{-1})`.
//!
//! The engine works in the Hecke algebra with `g^2 = z g + 1`, `z = q - q^{-1}`,
//! and the trace determined by `tr(1_n) = delta^n`, `tr(x g_n) = a tr(x)`. The
//! link invariant is `P(closure of b) = a^{-writhe(b)} tr(b)`. With these
//! constants the trefoil `s1^3` in `B_2` evaluates to
//! `delta (a^{-2} q^2 + a^{-2} q^{-2} - a^{-4})`, and positive and negative
//! stabilization both leave the value unchanged.
//!
//! A second evaluator resolves crossings of the closed braid diagram until
//! every diagram is descending; it shares nothing with the Hecke engine except
//! the final change of variables.

mod hecke;
mod oracle;
pub(crate) mod poly;
mod value;

pub use hecke::{homfly, homfly_with_limit, DEFAULT_CROSSING_LIMIT};
pub use oracle::{homfly_skein_tree, ORACLE_CROSSING_LIMIT};
pub use value::HomflyValue;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

/// Largest strand count the Hecke engine accepts (its basis has `n!` elements).
pub const MAX_STRANDS: usize = 9;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("strand count must be positive")]
    NoStrands,
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("braid has {found} crossings, limit is {limit}")]
    CrossingLimit { found: usize, limit: usize },
    #[error("braid has {0} strands, limit is {MAX_STRANDS}")]
    TooManyStrands(usize),
    #[error("position {position} out of range for a word of length {len}")]
    Position { position: usize, len: usize },
    #[error("p and q must be positive, got ({0}, {1})")]
    NonPositive(i64, i64),
    #[error("gcd(p,q) must be 1, got ({0}, {1})")]
    NotCoprime(i64, i64),
    #[error("cannot parse braid letter {0:?}")]
    Parse(String),
}

/// A word in the braid group `B_n`. Letter `i` is `sigma_|i|^sign(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses `"1,-2,1"`; an empty string is the trivial word.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BraidError> {
        let letters = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| i32::from_str(s).map_err(|_| BraidError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Underlying permutation as images of strand positions `0..n`.
    pub fn permutation(&self) -> Vec<usize> {
        // perm[start] = end position of the strand starting at `start`
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &start) in at.iter().enumerate() {
            perm[start] = pos;
        }
        perm
    }

    pub fn component_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
        count
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// `g^{-1} b g` for the generator letter `g`.
    pub fn conjugate(&self, g: i32) -> Result<BraidWord, BraidError> {
        let mut letters = Vec::with_capacity(self.letters.len() + 2);
        letters.push(-g);
        letters.extend_from_slice(&self.letters);
        letters.push(g);
        BraidWord::new(self.strands, letters)
    }

    /// Markov stabilization `b sigma_n^{±1}` in `B_{n+1}`.
    pub fn stabilize(&self, positive: bool) -> BraidWord {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// Juxtaposition with `other` placed on strands to the right.
    pub fn split_union(&self, other: &BraidWord) -> BraidWord {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&l| l + l.signum() * shift));
        BraidWord { strands: self.strands + other.strands, letters }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        let strands = self.strands.max(other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "B{}[{}]", self.strands, body.join(","))
    }
}

/// `(L+, L-, L0)` differing from `b` only at `position`.
pub fn skein_triple(
    b: &BraidWord,
    position: usize,
) -> Result<(BraidWord, BraidWord, BraidWord), BraidError> {
    let l = *b
        .letters
        .get(position)
        .ok_or(BraidError::Position { position, len: b.len() })?;
    let i = l.abs();
    let with = |x: Option<i32>| {
        let mut letters = b.letters.clone();
        match x {
            Some(x) => letters[position] = x,
            None => {
                letters.remove(position);
            }
        }
        BraidWord { strands: b.strands, letters }
    };
    Ok((with(Some(i)), with(Some(-i)), with(None)))
}

/// `(s1 s2 ... s_{q-1})^p` in `B_q`.
pub fn torus_braid(p: i64, q: i64) -> Result<BraidWord, BraidError> {
    if p < 1 || q < 1 {
        return Err(BraidError::NonPositive(p, q));
    }
    let cycle: Vec<i32> = (1..q as i32).collect();
    let letters = cycle.repeat(p as usize);
    BraidWord::new(q as usize, letters)
}

pub fn milnor_number(p: i64, q: i64) -> Result<i64, BraidError> {
    if p < 1 || q < 1 {
        return Err(BraidError::NonPositive(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(BraidError::NotCoprime(p, q));
    }
    Ok((p - 1) * (q - 1))
}

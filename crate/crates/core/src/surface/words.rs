//! Cyclic words in the free generators A, B of Gamma(2).
//!
//! A cyclically reduced word is stored as its alternating exponent sequence
//! `[e1, f1, e2, f2, ...]` meaning A^e1 B^f1 A^e2 B^f2 ..., all exponents
//! nonzero. Conjugacy classes of hyperbolic elements are such sequences up to
//! rotation by an even number of places.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::moebius::Moebius;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicWord(pub Vec<i64>);

fn div_round(p: i128, q: i128) -> i128 {
    // nearest integer to p/q; callers guarantee no ties
    let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
    (2 * p + q).div_euclid(2 * q)
}

impl CyclicWord {
    /// Parses letters A, B with optional integer exponents, e.g. `AB^-1A^2`.
    /// Lowercase a, b denote inverses. The result is cyclically reduced.
    pub fn parse(text: &str) -> Result<CyclicWord> {
        let mut syl: Vec<(u8, i64)> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let (letter, sign) = match bytes[i] {
                b'A' => (0u8, 1i64),
                b'B' => (1, 1),
                b'a' => (0, -1),
                b'b' => (1, -1),
                b' ' => {
                    i += 1;
                    continue;
                }
                other => {
                    return Err(Error::domain(format!(
                        "unexpected character {:?} in word",
                        other as char
                    )))
                }
            };
            i += 1;
            let mut e = 1i64;
            if i < bytes.len() && bytes[i] == b'^' {
                let start = i + 1;
                let mut j = start;
                if j < bytes.len() && bytes[j] == b'-' {
                    j += 1;
                }
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                e = text[start..j]
                    .parse()
                    .map_err(|_| Error::domain(format!("bad exponent in {text:?}")))?;
                i = j;
            }
            syl.push((letter, sign * e));
        }
        Ok(Self::from_syllables(syl))
    }

    /// Free and cyclic reduction of a syllable list, rotated to start with A.
    fn from_syllables(input: Vec<(u8, i64)>) -> CyclicWord {
        let mut syl: Vec<(u8, i64)> = Vec::with_capacity(input.len());
        for (l, e) in input {
            if e == 0 {
                continue;
            }
            match syl.last_mut() {
                Some(last) if last.0 == l => {
                    last.1 += e;
                    if last.1 == 0 {
                        syl.pop();
                    }
                }
                _ => syl.push((l, e)),
            }
        }
        while syl.len() > 1 && syl[0].0 == syl[syl.len() - 1].0 {
            let (_, e) = syl.pop().unwrap_or((0, 0));
            syl[0].1 += e;
            if syl[0].1 == 0 {
                syl.remove(0);
            }
        }
        if syl.first().map(|s| s.0) == Some(1) {
            syl.rotate_left(1);
        }
        if syl.len() == 1 {
            // a pure power of one generator; keep the letter explicit
            let (l, e) = syl[0];
            return if l == 0 {
                CyclicWord(vec![e])
            } else {
                CyclicWord(vec![0, e])
            };
        }
        CyclicWord(syl.into_iter().map(|s| s.1).collect())
    }

    /// Word of a Gamma(2) element, via a Euclid-type descent that strips
    /// powers of A (row operations) and B until the lower-left entry vanishes.
    pub fn from_matrix(m: &Moebius) -> Result<CyclicWord> {
        if !m.in_gamma2() {
            return Err(Error::domain(format!("{m} is not in Gamma(2)")));
        }
        let (mut a, mut b, mut c, mut d) = (m.a, m.b, m.c, m.d);
        let mut syl: Vec<(u8, i64)> = Vec::new();
        let mut guard = 0;
        while c != 0 {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::Budget(
                    "matrix decomposition did not terminate".into(),
                ));
            }
            if a.abs() > c.abs() {
                let n = div_round(a, 2 * c);
                a -= 2 * n * c;
                b -= 2 * n * d;
                syl.push((0, n as i64));
            } else {
                let k = div_round(c, 2 * a);
                c -= 2 * k * a;
                d -= 2 * k * b;
                syl.push((1, k as i64));
            }
        }
        if a.abs() != 1 {
            return Err(Error::domain(format!("{m} is not in Gamma(2)")));
        }
        let k = (b * a) / 2;
        if k != 0 {
            syl.push((0, k as i64));
        }
        Ok(Self::from_syllables(syl))
    }

    pub fn syllables(&self) -> usize {
        self.0.len()
    }

    /// Sum of |exponents|, the word length in letters.
    pub fn letter_length(&self) -> u64 {
        self.0.iter().map(|e| e.unsigned_abs()).sum()
    }

    pub fn to_matrix(&self) -> Result<Moebius> {
        let mut m = Moebius::IDENTITY;
        for (i, &e) in self.0.iter().enumerate() {
            let g = if i % 2 == 0 { Moebius::A } else { Moebius::B };
            m = m.mul(&g.pow(e)?)?;
        }
        Ok(m)
    }

    /// Smallest even rotation in lexicographic order.
    pub fn canonical(&self) -> CyclicWord {
        let n = self.0.len();
        if n < 2 {
            return self.clone();
        }
        let mut best: Option<Vec<i64>> = None;
        for r in (0..n).step_by(2) {
            let mut v = self.0.clone();
            v.rotate_left(r);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        CyclicWord(best.unwrap_or_default())
    }

    /// All even rotations.
    pub fn rotations(&self) -> Vec<CyclicWord> {
        (0..self.0.len().max(1))
            .step_by(2)
            .map(|r| {
                let mut v = self.0.clone();
                v.rotate_left(r);
                CyclicWord(v)
            })
            .collect()
    }

    /// Not a k-fold repetition (k >= 2) of a shorter cyclic word.
    pub fn is_primitive(&self) -> bool {
        let n = self.0.len();
        let pairs = n / 2;
        for p in 1..pairs {
            if pairs.is_multiple_of(p) && (0..n).all(|i| self.0[i] == self.0[i % (2 * p)]) {
                return false;
            }
        }
        true
    }

    /// Word of the inverse element, in canonical form.
    pub fn inverse(&self) -> CyclicWord {
        let syl: Vec<(u8, i64)> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .map(|(i, &e)| ((i % 2) as u8, -e))
            .collect();
        Self::from_syllables(syl).canonical()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let l = if i % 2 == 0 { 'A' } else { 'B' };
            if e == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = CyclicWord::parse("AB^-1A^2").unwrap();
        // cyclic reduction merges the outer A syllables
        assert_eq!(w.0, vec![3, -1]);
        assert_eq!(w.to_string(), "A^3B^-1");
        assert_eq!(CyclicWord::parse("ab").unwrap().0, vec![-1, -1]);
        assert!(CyclicWord::parse("AC").is_err());
    }

    #[test]
    fn decomposition_round_trip() {
        for text in ["AB", "A^2B^-3", "AbAB^2", "A^-1B^5A^3B^-2A^7B^1"] {
            let w = CyclicWord::parse(text).unwrap();
            let m = w.to_matrix().unwrap();
            let back = CyclicWord::from_matrix(&m).unwrap();
            assert_eq!(back.canonical(), w.canonical(), "{text}");
        }
    }

    #[test]
    fn primitivity() {
        assert!(CyclicWord::parse("AB").unwrap().is_primitive());
        assert!(!CyclicWord::parse("ABAB").unwrap().is_primitive());
        assert!(!CyclicWord::parse("AB^2AB^2AB^2").unwrap().is_primitive());
        assert!(CyclicWord::parse("AB^2AB").unwrap().is_primitive());
    }

    #[test]
    fn trace_is_rotation_invariant() {
        let w = CyclicWord::parse("A^2B^-1AB^3").unwrap();
        let t = w.to_matrix().unwrap().trace();
        for r in w.rotations() {
            assert_eq!(r.to_matrix().unwrap().trace(), t);
        }
        let inv = w.inverse();
        assert_eq!(inv.to_matrix().unwrap().trace(), t);
    }
}

//! Fibonacci words over `{u, v}` and position arithmetic on the infinite word.
//!
//! Positions are 1-based. `W_n` is a prefix of `W_{n+1}`, so every query on
//! the infinite word also answers the same query on any `W_n` long enough to
//! contain the position.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::wythoff::u;

/// Default cap on materialized word levels (`|W_30| = F_32 ≈ 2.2M`).
pub const DEFAULT_LEVEL_CAP: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    U,
    V,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::U => 'u',
            Letter::V => 'v',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite Fibonacci word `W_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub level: u32,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|k| self.letters.get(k).copied())
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

/// `W_n`, built by `W_n = W_{n-1} W_{n-2}`, with the default level cap.
pub fn word(n: u32) -> Result<Word> {
    word_capped(n, DEFAULT_LEVEL_CAP)
}

pub fn word_capped(n: u32, cap: u32) -> Result<Word> {
    if n > cap {
        return Err(Error::LevelCap { requested: n, cap });
    }
    let mut prev = vec![Letter::U];
    if n == 0 {
        return Ok(Word {
            level: 0,
            letters: prev,
        });
    }
    let mut cur = vec![Letter::U, Letter::V];
    for _ in 1..n {
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Word {
        level: n,
        letters: cur,
    })
}

/// One pass of `u → uv`, `v → u`.
pub fn substitute(w: &Word) -> Word {
    let mut letters = Vec::with_capacity(w.len() * 2);
    for &l in &w.letters {
        match l {
            Letter::U => letters.extend([Letter::U, Letter::V]),
            Letter::V => letters.push(Letter::U),
        }
    }
    Word {
        level: w.level + 1,
        letters,
    }
}

fn check_position(i: &BigInt) -> Result<()> {
    if i.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("position {i} must be >= 1")))
    }
}

/// Number of `u` letters at positions `1..=i` of the infinite word:
/// `⌊(i+1)/φ⌋ = u(i+1) - (i+1)`.
pub fn u_count(i: &BigInt) -> Result<BigInt> {
    check_position(i)?;
    Ok(u_count_unchecked(i))
}

pub(crate) fn u_count_unchecked(i: &BigInt) -> BigInt {
    let i1 = i + BigInt::one();
    u(&i1) - i1
}

/// Number of `v` letters at positions `1..=i`.
pub fn v_count(i: &BigInt) -> Result<BigInt> {
    Ok(i - u_count(i)?)
}

/// Letter at position `i` of the infinite Fibonacci word.
pub fn letter_at(i: &BigInt) -> Result<Letter> {
    check_position(i)?;
    Ok(letter_at_unchecked(i))
}

pub(crate) fn letter_at_unchecked(i: &BigInt) -> Letter {
    let k = u_count_unchecked(i);
    if &u(&k) == i {
        Letter::U
    } else {
        Letter::V
    }
}

/// Position in `W_{n-1}` of the letter generating position `i` of `W_n`.
/// Counts the letter itself when it is a `u`.
pub fn parent_position(i: &BigInt) -> Result<BigInt> {
    u_count(i)
}

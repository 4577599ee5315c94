//! Wythoff sequences `u`, `v` on all of ℤ and bidirectional Fibonacci sequences.
//!
//! For `n > 0`, `u(n) = ⌊nφ⌋` and `v(n) = u(n) + n`. The extension to ℤ sets
//! `u(0) = v(0) = -1` and `u(-n) = -u(n) - 1`, `v(-n) = -v(n) - 1`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fib;
use crate::goldring::GoldInt;

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `⌊nφ⌋` for `n > 0`, as `⌊(n + isqrt(5n²)) / 2⌋`.
fn beatty_positive(n: &BigInt) -> BigInt {
    // 5n² < 2^127 keeps the u128 path exact
    if let Some(small) = n.to_u64().filter(|&x| x < (1 << 61)) {
        let m = small as u128;
        let r = isqrt_u128(5 * m * m);
        return BigInt::from((m + r) / 2);
    }
    let root = (n * n * 5u32).sqrt();
    (n + root) / 2u32
}

/// The lower Wythoff sequence extended to ℤ.
pub fn u(n: &BigInt) -> BigInt {
    if n.is_positive() {
        beatty_positive(n)
    } else if n.is_zero() {
        BigInt::from(-1)
    } else {
        -beatty_positive(&-n) - 1
    }
}

/// The upper Wythoff sequence extended to ℤ.
pub fn v(n: &BigInt) -> BigInt {
    u(n) + n
}

pub fn u_i64(n: i64) -> BigInt {
    u(&BigInt::from(n))
}

pub fn v_i64(n: i64) -> BigInt {
    v(&BigInt::from(n))
}

/// The rank `j` with `u(j) = k`, if `k` is a value of `u`.
pub fn u_rank(k: &BigInt) -> Option<BigInt> {
    if k.is_positive() {
        // ⌊(k+1)/φ⌋ = u(k+1) - (k+1)
        let k1 = k + 1;
        let cand = u(&k1) - &k1;
        (cand.is_positive() && &u(&cand) == k).then_some(cand)
    } else if k == &BigInt::from(-1) {
        Some(BigInt::zero())
    } else if k.is_zero() {
        None
    } else {
        u_rank(&(-k - 1)).map(|m| -m)
    }
}

/// The rank `j` with `v(j) = k`, if `k` is a value of `v`.
pub fn v_rank(k: &BigInt) -> Option<BigInt> {
    if k.is_positive() {
        // ⌊(k+1)/φ²⌋ = 2k + 1 - u(k+1)
        let cand: BigInt = k * 2 + 1 - u(&(k + 1));
        (cand.is_positive() && &v(&cand) == k).then_some(cand)
    } else if k == &BigInt::from(-1) {
        Some(BigInt::zero())
    } else if k.is_zero() {
        None
    } else {
        v_rank(&(-k - 1)).map(|m| -m)
    }
}

/// A Wythoff pair `(u(n), v(n))` with its rank `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WythoffPair {
    pub rank: BigInt,
    pub u_val: BigInt,
    pub v_val: BigInt,
}

impl WythoffPair {
    pub fn at(rank: BigInt) -> Self {
        WythoffPair {
            u_val: u(&rank),
            v_val: v(&rank),
            rank,
        }
    }

    /// Recognizes `(p, q)` as a Wythoff pair.
    pub fn recognize(p: &BigInt, q: &BigInt) -> Option<Self> {
        let rank = u_rank(p)?;
        (&v(&rank) == q).then(|| WythoffPair {
            rank,
            u_val: p.clone(),
            v_val: q.clone(),
        })
    }
}

/// The `j ∈ ℤ*` with `(p, q) = (u(u(j)), v(u(j)))`, if the pair is primitive.
///
/// `(-2, -3)` sits at rank `-1 = u(0)` and is rejected because `0 ∉ ℤ*`.
pub fn primitive_rank(p: &BigInt, q: &BigInt) -> Option<BigInt> {
    let pair = WythoffPair::recognize(p, q)?;
    let j = u_rank(&pair.rank)?;
    (!j.is_zero()).then_some(j)
}

/// The primitive Wythoff pair `(u(u(j)), v(u(j)))`.
pub fn primitive_pair(j: &BigInt) -> (BigInt, BigInt) {
    let uj = u(j);
    (u(&uj), v(&uj))
}

/// The Fibonacci sequence with terms `c` and `d` at indices 0 and 1, extended to ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FibSeq {
    pub c: BigInt,
    pub d: BigInt,
}

impl FibSeq {
    pub fn new(c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        FibSeq {
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn zero() -> Self {
        FibSeq::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn term(&self, n: i64) -> BigInt {
        fib::seeded(&self.c, &self.d, n)
    }

    /// The same sequence re-indexed so that old index `k` becomes index 0.
    pub fn shifted(&self, k: i64) -> FibSeq {
        FibSeq {
            c: self.term(k),
            d: self.term(k + 1),
        }
    }

    pub fn terms(&self, from: i64, count: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(count);
        let (mut x, mut y) = (self.term(from), self.term(from + 1));
        for _ in 0..count {
            let next = &x + &y;
            out.push(std::mem::replace(&mut x, std::mem::replace(&mut y, next)));
        }
        out
    }

    /// Eventual sign of the terms: the sign of `c + dφ`.
    pub fn eventual_sign(&self) -> i8 {
        GoldInt::new(self.c.clone(), self.d.clone()).sign()
    }

    /// The reference index ν: `G_{ν-1} > G_ν ≥ 0` for positive sequences,
    /// `G_{ν-1} < G_ν ≤ 0` for negative ones.
    pub fn reference_index(&self) -> Result<i64> {
        match self.eventual_sign() {
            0 => Err(Error::ZeroSequence),
            1 => Ok(positive_reference_index(&self.c, &self.d)),
            _ => Ok(positive_reference_index(&-&self.c, &-&self.d)),
        }
    }

    /// Canonical representative of the equivalence class under index shifts:
    /// the pair of terms at the reference index.
    pub fn canonical(&self) -> (BigInt, BigInt) {
        match self.reference_index() {
            Ok(nu) => (self.term(nu), self.term(nu + 1)),
            Err(_) => (BigInt::zero(), BigInt::zero()),
        }
    }

    pub fn is_equivalent(&self, other: &FibSeq) -> bool {
        self.canonical() == other.canonical()
    }

    /// The index `m` with `term(m) = p` and `term(m + 1) = q`, if any.
    /// The zero sequence matches `(0, 0)` at index 0.
    pub fn index_of_pair(&self, p: &BigInt, q: &BigInt) -> Option<i64> {
        let other = FibSeq::new(p.clone(), q.clone());
        if self.is_zero() || other.is_zero() {
            return (self.is_zero() && other.is_zero()).then_some(0);
        }
        let (nu_self, nu_other) = (self.reference_index().ok()?, other.reference_index().ok()?);
        let m = nu_self - nu_other;
        (&self.term(m) == p && &self.term(m + 1) == q).then_some(m)
    }
}

/// Reference index of a sequence whose eventual sign is positive.
fn positive_reference_index(c: &BigInt, d: &BigInt) -> i64 {
    let (mut n, mut x, mut y) = (0i64, c.clone(), d.clone());
    // move right into the monotone part: 0 <= x < y
    while !(!x.is_negative() && x < y) {
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
        n += 1;
    }
    // walk left until G_{n-1} > G_n >= 0; here (x, y) = (G_n, G_{n+1})
    loop {
        let prev = &y - &x;
        if prev > x && !x.is_negative() {
            return n;
        }
        y = std::mem::replace(&mut x, prev);
        n -= 1;
    }
}

/// Walks a nonzero sequence forward from its reference index until a primitive
/// Wythoff pair appears. Returns the index of the pair and its rank `j`, or
/// `None` for the class of `-1, -1, -2, -3, …`, which reaches `(-2, -3)` at
/// rank `u(0)` and never meets a primitive pair.
pub fn primitive_pair_index(s: &FibSeq, max_steps: usize) -> Result<Option<(i64, BigInt)>> {
    let nu = s.reference_index()?;
    let (mut x, mut y) = (s.term(nu), s.term(nu + 1));
    let minus_two = BigInt::from(-2);
    let minus_three = BigInt::from(-3);
    for step in 0..max_steps {
        if let Some(j) = primitive_rank(&x, &y) {
            return Ok(Some((nu + step as i64, j)));
        }
        if x == minus_two && y == minus_three {
            return Ok(None);
        }
        let next = &x + &y;
        x = std::mem::replace(&mut y, next);
    }
    Err(Error::CrossCheck(format!(
        "no primitive Wythoff pair within {max_steps} steps of F^{{{},{}}}",
        s.c, s.d
    )))
}

/// `u(i + G_n) - G_{n+1}`, the quantity the shift lemma compares with `u(i)`.
pub fn shift_defect(s: &FibSeq, i: &BigInt, n: i64) -> BigInt {
    u(&(i + s.term(n))) - s.term(n + 1) - u(i)
}

/// The smallest `n₁ ≤ n_max` such that `u(i + G_n) = u(i) + G_{n+1}` for every
/// `n₁ ≤ n ≤ n_max`.
pub fn verify_lemma_shift(s: &FibSeq, i: &BigInt, n_max: u32) -> Result<u32> {
    if i.is_zero() {
        return Err(Error::InvalidArgument("the shift lemma needs i ≠ 0".into()));
    }
    let holds = |n: u32| shift_defect(s, i, n as i64).is_zero();
    if !holds(n_max) {
        return Err(Error::LemmaWitness {
            i: i.clone(),
            n_max,
        });
    }
    let mut n1 = n_max;
    while n1 > 0 && holds(n1 - 1) {
        n1 -= 1;
    }
    Ok(n1)
}

/// `F_n` as a convenience re-export for callers working with ranks.
pub fn fibonacci(n: i64) -> BigInt {
    fib::fib(n)
}

/// `true` when `m` (positive) is a value of `u` on ℕ*.
pub fn is_lower(m: &BigInt) -> bool {
    m.is_positive() && u_rank(m).is_some()
}

/// `true` when `m` (positive) is a value of `v` on ℕ*.
pub fn is_upper(m: &BigInt) -> bool {
    m.is_positive() && v_rank(m).is_some()
}

/// `(n, u(n), v(n))` for `-6 ≤ n ≤ 8`.
pub const SMALL_TABLE: [(i64, i64, i64); 15] = [
    (-6, -10, -16),
    (-5, -9, -14),
    (-4, -7, -11),
    (-3, -5, -8),
    (-2, -4, -6),
    (-1, -2, -3),
    (0, -1, -1),
    (1, 1, 2),
    (2, 3, 5),
    (3, 4, 7),
    (4, 6, 10),
    (5, 8, 13),
    (6, 9, 15),
    (7, 11, 18),
    (8, 12, 20),
];

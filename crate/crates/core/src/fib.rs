//! Fibonacci numbers over all of ℤ.
//!
//! `F_0 = 0`, `F_1 = 1`, extended to negative indices by `F_{-n} = (-1)^{n+1} F_n`.
//! Small indices come from a lazily built shared table; larger ones use fast doubling.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

const TABLE_LEN: usize = 512;

fn table() -> &'static [BigInt] {
    static TABLE: OnceLock<Vec<BigInt>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(TABLE_LEN);
        t.push(BigInt::zero());
        t.push(BigInt::one());
        for i in 2..TABLE_LEN {
            let next = &t[i - 1] + &t[i - 2];
            t.push(next);
        }
        t
    })
}

/// Returns `(F_n, F_{n+1})` for `n >= 0`.
fn doubling(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (f, g) = doubling(n / 2);
    // F_{2k} = F_k (2F_{k+1} - F_k), F_{2k+1} = F_k^2 + F_{k+1}^2
    let two_g = &g + &g;
    let even = &f * (&two_g - &f);
    let odd = &f * &f + &g * &g;
    if n.is_multiple_of(2) {
        (even, odd)
    } else {
        let next = &even + &odd;
        (odd, next)
    }
}

fn fib_nonneg(n: u64) -> BigInt {
    match table().get(n as usize) {
        Some(f) if n < TABLE_LEN as u64 => f.clone(),
        _ => doubling(n).0,
    }
}

/// The Fibonacci number `F_n` for any `n ∈ ℤ`.
pub fn fib(n: i64) -> BigInt {
    if n >= 0 {
        fib_nonneg(n as u64)
    } else {
        let m = n.unsigned_abs();
        let f = fib_nonneg(m);
        if m.is_multiple_of(2) {
            -f
        } else {
            f
        }
    }
}

/// The `n`-th term `c·F_{n-1} + d·F_n` of the Fibonacci sequence seeded by `(c, d)` at indices 0 and 1.
pub fn seeded(c: &BigInt, d: &BigInt, n: i64) -> BigInt {
    c * fib(n - 1) + d * fib(n)
}

/// Smallest `n >= 0` with `F_n >= x`.
pub fn index_at_least(x: &BigInt) -> u32 {
    let mut n = 0u32;
    while &fib(n as i64) < x {
        n += 1;
    }
    n
}

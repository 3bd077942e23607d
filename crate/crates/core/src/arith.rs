//! Integer helpers: primality, factoring and modular inverses.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut k = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        k += 1;
    }
    Some((p, k))
}

/// Bezout pair `(a, b)` with `a*s + b*r = 1`, normalized so that `0 <= a < r`
/// (and `a = 0` when `r = 1`).
pub fn bezout(r: i64, s: i64) -> Result<(i64, i64)> {
    if r < 1 || s < 1 {
        return Err(Error::NoBezout(r, s));
    }
    let eg = s.extended_gcd(&r);
    if eg.gcd != 1 {
        return Err(Error::NoBezout(r, s));
    }
    // eg.x * s + eg.y * r = 1; shift a into [0, r).
    let a = eg.x.rem_euclid(r);
    let b = (1 - a * s) / r;
    debug_assert_eq!(a * s + b * r, 1);
    Ok((a, b))
}

/// Least positive `x` with `a*x = 1 (mod m)`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    let eg = (a as i64).extended_gcd(&(m as i64));
    if eg.gcd != 1 {
        return None;
    }
    let x = eg.x.rem_euclid(m as i64) as u64;
    Some(if x == 0 { m } else { x })
}

//! Small integer helpers shared by the counting code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Prime factorization as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

/// Least `s >= 1` with `q^s = 1 mod n`.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if q.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a: q, b: n });
    }
    let q = q % n;
    let mut x = q;
    let mut s = 1;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        s += 1;
    }
    Ok(s)
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r = 1 % m;
    let mut b = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

pub fn big_pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `a / b`, failing unless the division is exact.
pub fn exact_div(a: &BigInt, b: &BigInt, what: &str) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::InexactDivision(format!("{what}: division by zero")));
    }
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(format!("{what}: {a} / {b}")))
    }
}

pub fn exact_div_u64(a: u64, b: u64, what: &str) -> Result<u64> {
    if b == 0 || !a.is_multiple_of(b) {
        return Err(Error::InexactDivision(format!("{what}: {a} / {b}")));
    }
    Ok(a / b)
}

pub fn checked_pow(base: u64, e: u64) -> Result<u64> {
    let e32 = u32::try_from(e).map_err(|_| Error::Overflow(format!("{base}^{e}")))?;
    base.checked_pow(e32)
        .ok_or_else(|| Error::Overflow(format!("{base}^{e}")))
}
